//! Numerical continuation of the local z-sheets of `f(a, y, z) = t` along
//! paths in the `(a, y)` plane.

use num_complex::Complex64 as C;
use std::f64::consts::PI;

use crate::algebra::numeric::{aberth_roots, eval_with_derivative};
use crate::algebra::{MultiPoly, Var};
use crate::error::{Error, Result};
use crate::puiseux::Permutation;

/// One piece of a path, parametrized by `s ∈ [0, 1]`.
#[derive(Clone, Copy, Debug)]
pub enum Piece {
    /// Straight segment in y at fixed a.
    Segment { a: C, from: C, to: C },
    /// `y = center + radius·e^(i(start + 2π turns s))` at fixed a.
    Circle { a: C, center: C, radius: f64, start: f64, turns: f64 },
    /// `a = alpha·e^(2πi turns s)` while `y = y0·e^(2πi y_turns s)`.
    XLoop { alpha: f64, y0: C, turns: f64, y_turns: f64 },
}

impl Piece {
    pub fn at(&self, s: f64) -> (C, C) {
        match *self {
            Piece::Segment { a, from, to } => (a, from + (to - from) * s),
            Piece::Circle { a, center, radius, start, turns } => {
                (a, center + C::from_polar(radius, start + 2.0 * PI * turns * s))
            }
            Piece::XLoop { alpha, y0, turns, y_turns } => (
                C::from_polar(alpha, 2.0 * PI * turns * s),
                y0 * C::from_polar(1.0, 2.0 * PI * y_turns * s),
            ),
        }
    }
}

/// The `n_loc` sheets of `f(a, y, z) = t` closest to `z = 0`.
pub struct SheetField {
    coeffs: Vec<MultiPoly>,
    n_loc: usize,
    t: C,
}

fn min_separation(z: &[C]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            m = m.min((z[i] - z[j]).norm());
        }
    }
    m
}

impl SheetField {
    pub fn new(f: &MultiPoly, n_loc: usize, t: C) -> Self {
        SheetField { coeffs: f.as_univariate(Var::Z), n_loc, t }
    }

    pub fn n_loc(&self) -> usize {
        self.n_loc
    }

    fn poly_at(&self, a: C, y: C) -> Vec<C> {
        let zero = C::new(0.0, 0.0);
        let mut c: Vec<C> = self.coeffs.iter().map(|p| p.eval_c64([a, y, zero, zero])).collect();
        c[0] -= self.t;
        c
    }

    /// Local sheets at `(a, y)`, ordered by modulus then argument.
    pub fn sheets_at(&self, a: C, y: C) -> Result<Vec<C>> {
        let p = self.poly_at(a, y);
        let mut roots = aberth_roots(&p);
        if roots.len() < self.n_loc {
            return Err(Error::ClusteringError("fewer z-roots than local sheets".into()));
        }
        roots.sort_by(|u, v| u.norm().partial_cmp(&v.norm()).unwrap());
        if roots.len() > self.n_loc && roots[self.n_loc - 1].norm() > 0.2 * roots[self.n_loc].norm() {
            return Err(Error::ClusteringError("local sheets are not separated from the others".into()));
        }
        roots.truncate(self.n_loc);
        // polish
        for r in roots.iter_mut() {
            for _ in 0..4 {
                let (v, dv) = eval_with_derivative(&p, *r);
                if dv.norm() == 0.0 {
                    break;
                }
                *r -= v / dv;
            }
        }
        if min_separation(&roots) == 0.0 {
            return Err(Error::ClusteringError("coincident sheets at a base point".into()));
        }
        roots.sort_by(|u, v| {
            let k = |w: &C| ((w.norm() * 1e9).round(), (w.arg() * 1e6).round());
            k(u).partial_cmp(&k(v)).unwrap()
        });
        Ok(roots)
    }

    fn newton(p: &[C], z0: C) -> Option<C> {
        let mut z = z0;
        for _ in 0..30 {
            let (v, dv) = eval_with_derivative(p, z);
            if dv.norm() == 0.0 {
                return None;
            }
            let step = v / dv;
            z -= step;
            if step.norm() <= 1e-13 * z.norm().max(1e-300) {
                return Some(z);
            }
        }
        None
    }

    /// Continue `start` along one piece.
    pub fn track_piece(&self, piece: &Piece, start: &[C]) -> Result<Vec<C>> {
        let mut z = start.to_vec();
        let mut s = 0.0f64;
        let mut h = 1.0f64 / 64.0;
        while s < 1.0 {
            let s1 = (s + h).min(1.0);
            let (a, y) = piece.at(s1);
            let p = self.poly_at(a, y);
            let limit = 0.25 * min_separation(&z);
            let next: Option<Vec<C>> = z
                .iter()
                .map(|&w| Self::newton(&p, w).filter(|v| (v - w).norm() < limit))
                .collect();
            match next {
                Some(v) => {
                    z = v;
                    s = s1;
                    h = (h * 1.5).min(1.0 / 32.0);
                }
                None => {
                    h /= 2.0;
                    if h < 1e-12 {
                        return Err(Error::ClusteringError("sheet tracking stalled near a branch point".into()));
                    }
                }
            }
        }
        Ok(z)
    }

    pub fn track(&self, path: &[Piece], start: &[C]) -> Result<Vec<C>> {
        let mut z = start.to_vec();
        for p in path {
            z = self.track_piece(p, &z)?;
        }
        Ok(z)
    }

    /// Match tracked endpoints against the labelled sheets at the end point.
    pub fn relabel(end: &[C], labels: &[C]) -> Result<Vec<usize>> {
        let delta = min_separation(labels);
        let mut out = Vec::with_capacity(end.len());
        for w in end {
            let (j, d) = labels
                .iter()
                .enumerate()
                .map(|(j, l)| (j, (l - w).norm()))
                .min_by(|u, v| u.1.partial_cmp(&v.1).unwrap())
                .ok_or_else(|| Error::ClusteringError("no sheets to match".into()))?;
            if d > 0.1 * delta.min(labels[j].norm().max(1e-300)) {
                return Err(Error::ClusteringError("tracked sheet does not return to a labelled sheet".into()));
            }
            out.push(j);
        }
        let mut seen = out.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != out.len() {
            return Err(Error::ClusteringError("two sheets tracked onto one".into()));
        }
        Ok(out)
    }

    /// Label map along an open path: sheet `i` at the start goes to `map[i]` at the end.
    pub fn transport(&self, path: &[Piece], start: &[C], end_labels: &[C]) -> Result<Vec<usize>> {
        let end = self.track(path, start)?;
        Self::relabel(&end, end_labels)
    }

    /// Permutation of the sheets at a base point induced by a closed path.
    pub fn monodromy(&self, path: &[Piece], base: &[C]) -> Result<Permutation> {
        Ok(Permutation { images: self.transport(path, base, base)? })
    }
}

/// Orbits of the group generated by `gens` on `0..n`, each sorted, ordered by minimum.
pub fn orbits(n: usize, gens: &[&Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut j = i;
        while p[j] != r {
            let k = p[j];
            p[j] = r;
            j = k;
        }
        r
    }
    for g in gens {
        for (i, &j) in g.images.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    #[test]
    fn square_root_swaps_around_its_branch_point() {
        // z^2 = y + t: one branch point at y = -t
        let f = v(Var::Z).pow(2).sub(&v(Var::Y));
        let t = C::new(1e-3, 0.0);
        let sf = SheetField::new(&f, 2, t);
        let a = C::new(0.5, 0.0);
        let y0 = C::new(0.01, 0.0);
        let base = sf.sheets_at(a, y0).unwrap();
        let around = Piece::Circle { a, center: C::new(0.0, 0.0), radius: 0.01, start: 0.0, turns: 1.0 };
        assert_eq!(sf.monodromy(&[around], &base).unwrap().cycle_type(), vec![2]);
        let small = Piece::Circle { a, center: y0 + C::new(0.001, 0.0), radius: 0.001, start: PI, turns: 1.0 };
        assert_eq!(sf.monodromy(&[small], &base).unwrap().cycle_type(), vec![1, 1]);
    }

    #[test]
    fn x_loop_on_whitney_sheets() {
        // z^2 = x y^2 + t far from the branch points: z ≈ ±√x y
        let f = v(Var::Z).pow(2).sub(&v(Var::X).mul(&v(Var::Y).pow(2)));
        let sf = SheetField::new(&f, 2, C::new(1e-8, 0.0));
        let y0 = C::new(0.01, 0.0);
        let base = sf.sheets_at(C::new(0.5, 0.0), y0).unwrap();
        let h = Piece::XLoop { alpha: 0.5, y0, turns: 1.0, y_turns: 0.0 };
        assert_eq!(sf.monodromy(&[h], &base).unwrap().cycle_type(), vec![2]);
        let fiber = Piece::XLoop { alpha: 0.5, y0, turns: 2.0, y_turns: -1.0 };
        assert_eq!(sf.monodromy(&[fiber], &base).unwrap().cycle_type(), vec![1, 1]);
    }

    #[test]
    fn orbit_union() {
        let a = Permutation { images: vec![1, 0, 2, 3] };
        let b = Permutation { images: vec![0, 1, 3, 2] };
        assert_eq!(orbits(4, &[&a]), vec![vec![0, 1], vec![2], vec![3]]);
        assert_eq!(orbits(4, &[&a, &b]), vec![vec![0, 1], vec![2, 3]]);
    }
}
