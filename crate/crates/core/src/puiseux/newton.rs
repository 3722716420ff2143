//! Newton polygons and the generic Newton-Puiseux root driver.

use serde::{Deserialize, Serialize};

use super::series::{Coeff, Exp, Order, PuiseuxSeries};
use crate::algebra::{MultiPoly, Var};
use crate::error::{Error, Result};

/// One edge of a Newton polygon.
///
/// `t_exponent` is the order of the roots attached to the edge (the
/// parameter-degree drop per unit of main-variable degree); edges are listed
/// left to right, so `t_exponent` strictly decreases.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonPolygonEdge {
    #[serde(with = "crate::puiseux::exp_serde")]
    pub t_exponent: Exp,
    pub lattice_length: u32,
    /// `(from, to)` main-variable degrees of the edge ends.
    pub span: (u32, u32),
    /// Entry `k` multiplies `c^k`; coefficients live in the remaining variables.
    #[serde(skip)]
    pub characteristic_poly: Vec<MultiPoly>,
}

/// Lower convex hull of `(k, v)` points sorted by `k`; returns vertex indices.
pub(crate) fn lower_hull(pts: &[(usize, Exp)]) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::new();
    for i in 0..pts.len() {
        while hull.len() >= 2 {
            let a = pts[hull[hull.len() - 2]];
            let b = pts[hull[hull.len() - 1]];
            let c = pts[i];
            // keep b only if it lies strictly below segment a-c
            let lhs = (b.1 - a.1) * Exp::from((c.0 - a.0) as i64);
            let rhs = (c.1 - a.1) * Exp::from((b.0 - a.0) as i64);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    hull
}

fn slope(a: (usize, Exp), b: (usize, Exp)) -> Exp {
    (a.1 - b.1) / Exp::from((b.0 - a.0) as i64)
}

/// Newton polygon of `f` in `(main, param)`.
pub fn newton_polygon(f: &MultiPoly, main: Var, param: Var) -> Result<Vec<NewtonPolygonEdge>> {
    if f.is_zero() {
        return Err(Error::EmptyInput("Newton polygon of the zero polynomial".into()));
    }
    let by_main = f.as_univariate(main);
    let mut pts = Vec::new();
    for (k, c) in by_main.iter().enumerate() {
        if let Some(v) = c.min_degree(param) {
            if !c.is_zero() {
                pts.push((k, Exp::from(v as i64)));
            }
        }
    }
    let hull = lower_hull(&pts);
    let mut edges = Vec::new();
    for w in hull.windows(2) {
        let (a, b) = (pts[w[0]], pts[w[1]]);
        let g = slope(a, b);
        let mut chp = vec![MultiPoly::zero(); b.0 - a.0 + 1];
        for (k, v) in &pts[w[0]..=w[1]] {
            if *v + g * Exp::from(*k as i64) == a.1 + g * Exp::from(a.0 as i64) {
                let vv = v.to_integer() as usize;
                chp[k - a.0] = by_main[*k].as_univariate(param)[vv].clone();
            }
        }
        edges.push(NewtonPolygonEdge {
            t_exponent: g,
            lattice_length: (b.0 - a.0) as u32,
            span: (a.0 as u32, b.0 as u32),
            characteristic_poly: chp,
        });
    }
    Ok(edges)
}

/// Precision goal for a root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Compute every root modulo `v^R`.
    Absolute(Exp),
    /// Compute each root modulo `v^(γ + r)` where `γ` is its leading exponent.
    Relative(Exp),
}

/// One root (or an unresolved cluster of roots) of a polynomial over series.
#[derive(Clone, Debug, PartialEq)]
pub struct NpRoot<C: Coeff> {
    pub series: PuiseuxSeries<C>,
    pub multiplicity: usize,
    /// The series is an exact root (no truncation anywhere).
    pub exact: bool,
}

#[derive(Clone, Copy)]
enum Pt {
    Absent,
    Known(Exp),
    Lower(Exp),
}

fn classify<C: Coeff>(s: &PuiseuxSeries<C>) -> Pt {
    match s.order() {
        Order::Zero => Pt::Absent,
        Order::At(e) => Pt::Known(e),
        Order::AtLeast(e) => Pt::Lower(e),
    }
}

/// `sum_k poly[k] (s + Y)^k` as a polynomial in `Y`, with `s = c v^g`.
fn taylor_shift<C: Coeff>(poly: &[PuiseuxSeries<C>], g: Exp, c: &C) -> Vec<PuiseuxSeries<C>> {
    let var = poly[0].var;
    let n = poly.len();
    let mut res: Vec<PuiseuxSeries<C>> = vec![poly[n - 1].clone()];
    for k in (0..n - 1).rev() {
        let mut next = vec![PuiseuxSeries::zero(var); res.len() + 1];
        for (j, r) in res.iter().enumerate() {
            next[j] = next[j].add(&r.mul_monomial(g, c));
            next[j + 1] = next[j + 1].add(r);
        }
        next[0] = next[0].add(&poly[k]);
        res = next;
    }
    res
}

struct Ctx {
    lenient: bool,
    prec: Exp,
}

/// Roots of `sum poly[k] Y^k` with order strictly above `min_order`.
///
/// Each root is returned individually with its multiplicity; unresolved
/// clusters (roots agreeing up to the target) come back as one entry with the
/// cluster size. With `lenient`, roots whose coefficients run out of precision
/// before the target are returned truncated early instead of failing.
pub fn np_roots<C: Coeff>(
    poly: &[PuiseuxSeries<C>],
    min_order: Option<Exp>,
    target: Target,
    prec: Exp,
) -> Result<Vec<NpRoot<C>>> {
    np_roots_opts(poly, min_order, target, prec, false)
}

pub fn np_roots_opts<C: Coeff>(
    poly: &[PuiseuxSeries<C>],
    min_order: Option<Exp>,
    target: Target,
    prec: Exp,
    lenient: bool,
) -> Result<Vec<NpRoot<C>>> {
    let mut p: Vec<PuiseuxSeries<C>> = poly.to_vec();
    while p.last().map(|s| matches!(classify(s), Pt::Absent)).unwrap_or(false) {
        p.pop();
    }
    if p.is_empty() {
        return Err(Error::EmptyInput("zero polynomial has no isolated roots".into()));
    }
    let var = p[0].var;
    let ctx = Ctx { lenient, prec };
    let mut out = Vec::new();
    let p = pre_truncate(&p, min_order, target);
    solve(&p, &PuiseuxSeries::zero(var), min_order, target, &ctx, &mut out)?;
    Ok(out)
}

/// Drop coefficient terms that cannot influence roots of the requested
/// precision, keeping series sizes bounded through the recursion.
fn pre_truncate<C: Coeff>(p: &[PuiseuxSeries<C>], min_order: Option<Exp>, target: Target) -> Vec<PuiseuxSeries<C>> {
    let pts: Vec<(usize, Pt)> = p.iter().enumerate().map(|(k, s)| (k, classify(s))).collect();
    if pts.iter().any(|(_, q)| matches!(q, Pt::Lower(_))) {
        return p.to_vec();
    }
    let known: Vec<(usize, Exp)> = pts
        .iter()
        .filter_map(|(k, q)| match q {
            Pt::Known(v) => Some((*k, *v)),
            _ => None,
        })
        .collect();
    if known.len() < 2 || known[0].0 != 0 {
        return p.to_vec();
    }
    let hull = lower_hull(&known);
    let mut relevant = Vec::new();
    for w in hull.windows(2) {
        let g = slope(known[w[0]], known[w[1]]);
        if min_order.map(|m| g > m).unwrap_or(true) {
            relevant.push((g, known[w[1]]));
        }
    }
    let Some(&(g_low, (m, v_m))) = relevant.last() else {
        return p.to_vec();
    };
    let g_high = relevant[0].0;
    let r = match target {
        Target::Absolute(r) => r,
        Target::Relative(r) => g_high + r,
    };
    if r <= g_low {
        return p.to_vec();
    }
    let base = v_m + r * Exp::from(m as i64);
    p.iter()
        .enumerate()
        .map(|(k, s)| {
            let bound = base - g_low * Exp::from(k as i64);
            match s.max_exponent() {
                Some(e) if e >= bound => s.truncate(bound),
                _ => s.clone(),
            }
        })
        .collect()
}

fn emit<C: Coeff>(out: &mut Vec<NpRoot<C>>, prefix: &PuiseuxSeries<C>, trunc: Option<Exp>, mult: usize) {
    let mut s = prefix.clone();
    let exact = trunc.is_none() && s.is_exact();
    if let Some(t) = trunc {
        s = s.truncate(t);
    }
    out.push(NpRoot { series: s, multiplicity: mult, exact });
}

fn solve<C: Coeff>(
    poly: &[PuiseuxSeries<C>],
    prefix: &PuiseuxSeries<C>,
    min_order: Option<Exp>,
    target: Target,
    ctx: &Ctx,
    out: &mut Vec<NpRoot<C>>,
) -> Result<()> {
    // exactly-zero low coefficients give the root Y = 0
    let zeros = poly.iter().take_while(|s| matches!(classify(*s), Pt::Absent)).count();
    if zeros > 0 {
        emit(out, prefix, None, zeros);
    }
    let p = &poly[zeros..];
    if p.len() <= 1 {
        return Ok(());
    }
    let abs_target = |g: Exp| -> Exp {
        match target {
            Target::Absolute(r) => r,
            Target::Relative(r) => g + r,
        }
    };
    let pts: Vec<(usize, Pt)> = p.iter().enumerate().map(|(k, s)| (k, classify(s))).collect();
    let known: Vec<(usize, Exp)> = pts
        .iter()
        .filter_map(|(k, q)| match q {
            Pt::Known(v) => Some((*k, *v)),
            _ => None,
        })
        .collect();
    let all: Vec<(usize, Exp)> = pts
        .iter()
        .filter_map(|(k, q)| match q {
            Pt::Known(v) | Pt::Lower(v) => Some((*k, *v)),
            Pt::Absent => None,
        })
        .collect();
    let n = p.len() - 1;
    if !matches!(pts[n].1, Pt::Known(_)) {
        return Err(Error::TruncationTooShort(
            "leading coefficient of the polynomial is not certified nonzero".into(),
        ));
    }
    // Harmful uncertain points: on or below the hull of the certified points.
    let khull = lower_hull(&known);
    let below_known_hull = |k: usize, v: Exp| -> bool {
        if k < known[0].0 {
            return true;
        }
        for w in khull.windows(2) {
            let (a, b) = (known[w[0]], known[w[1]]);
            if k >= a.0 && k <= b.0 {
                let line = a.1 - slope(a, b) * Exp::from((k - a.0) as i64);
                return v <= line;
            }
        }
        false
    };
    let harmful_max = pts
        .iter()
        .filter_map(|(k, q)| match q {
            Pt::Lower(v) if below_known_hull(*k, *v) => Some(*k),
            _ => None,
        })
        .max();
    let hull = lower_hull(&all);
    let verts: Vec<(usize, Exp)> = hull.iter().map(|&i| all[i]).collect();
    // first certified vertex to the right of every harmful point
    let start = match harmful_max {
        None => 0,
        Some(u) => match verts.iter().position(|(k, _)| *k > u) {
            Some(i) => i,
            None => {
                return Err(Error::TruncationTooShort(
                    "no certified Newton polygon vertex at this precision".into(),
                ))
            }
        },
    };
    if start > 0 {
        let (kc, _) = verts[start];
        let g_lb = slope(verts[start - 1], verts[start]);
        if min_order.map(|m| g_lb <= m).unwrap_or(false) {
            return Err(Error::TruncationTooShort(
                "cannot separate roots from the excluded range at this precision".into(),
            ));
        }
        let r = prefix_target(prefix, target);
        match r {
            Some(r) if g_lb >= r => emit(out, prefix, Some(r), kc),
            _ if ctx.lenient && !prefix.terms().is_empty() => emit(out, prefix, Some(g_lb), kc),
            _ => {
                return Err(Error::TruncationTooShort(format!(
                    "coefficients known only to order {} near the root cluster",
                    g_lb
                )))
            }
        }
    }
    for w in verts[start..].windows(2) {
        let (a, b) = (w[0], w[1]);
        let g = slope(a, b);
        if let Some(m) = min_order {
            if g <= m {
                break;
            }
        }
        let r = prefix_target(prefix, target).unwrap_or_else(|| abs_target(g));
        if g >= r {
            emit(out, prefix, Some(r), b.0 - a.0);
            continue;
        }
        let base = a.1 + g * Exp::from(a.0 as i64);
        let mut chp: Vec<C> = Vec::with_capacity(b.0 - a.0 + 1);
        for k in a.0..=b.0 {
            let c = match pts[k].1 {
                Pt::Known(v) if v + g * Exp::from(k as i64) == base => {
                    p[k].coeff_at(v).cloned().unwrap_or_else(C::zero)
                }
                Pt::Lower(v) if v + g * Exp::from(k as i64) <= base => {
                    return Err(Error::TruncationTooShort(
                        "uncertain coefficient on a Newton polygon edge".into(),
                    ))
                }
                _ => C::zero(),
            };
            chp.push(c);
        }
        let roots = C::roots(&chp, ctx.prec)?;
        let total: usize = roots.iter().map(|(_, m)| *m).sum();
        if total != b.0 - a.0 {
            return Err(Error::InconsistentBranchSet(format!(
                "characteristic roots account for {} of {} roots on an edge",
                total,
                b.0 - a.0
            )));
        }
        for (c, _) in roots {
            if c.zero_status() != Some(false) {
                return Err(Error::TruncationTooShort(
                    "characteristic root is not certified nonzero".into(),
                ));
            }
            let shifted = taylor_shift(p, g, &c);
            let next_prefix = prefix.add(&PuiseuxSeries::monomial(prefix.var, g, c.clone()));
            let tgt = match target {
                Target::Absolute(_) => target,
                Target::Relative(_) => Target::Absolute(r),
            };
            solve(&shifted, &next_prefix, Some(g), tgt, ctx, out)?;
        }
    }
    Ok(())
}

/// Absolute target once the leading exponent of the prefix is fixed.
fn prefix_target<C: Coeff>(prefix: &PuiseuxSeries<C>, target: Target) -> Option<Exp> {
    match target {
        Target::Absolute(r) => Some(r),
        Target::Relative(r) => prefix.terms().first().map(|(e, _)| *e + r),
    }
}

/// Total number of roots with positive order of a polynomial in `main`
/// whose coefficients are polynomials in `param` (and other variables).
pub fn positive_order_root_count(f: &MultiPoly, main: Var, param: Var) -> usize {
    let at_zero = f.eval_var(param, &crate::algebra::Scalar::zero());
    at_zero.min_degree(main).unwrap_or(0) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;
    use crate::puiseux::series::{exp, XSeries};

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    #[test]
    fn polygon_of_square_root() {
        let f = v(Var::Y).pow(2).sub(&v(Var::T));
        let e = newton_polygon(&f, Var::Y, Var::T).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].t_exponent, exp(1, 2));
        assert_eq!(e[0].lattice_length, 2);
        assert_eq!(e[0].characteristic_poly[0], MultiPoly::constant(Scalar::from_int(-1)));
        assert_eq!(e[0].characteristic_poly[2], MultiPoly::one());
    }

    #[test]
    fn polygon_with_two_edges() {
        let f = v(Var::Y).pow(2).sub(&v(Var::T)).mul(&v(Var::Y).sub(&v(Var::T)));
        let e = newton_polygon(&f, Var::Y, Var::T).unwrap();
        let g: Vec<Exp> = e.iter().map(|x| x.t_exponent).collect();
        assert_eq!(g, vec![exp(1, 1), exp(1, 2)]);
    }

    #[test]
    fn polygon_with_symbolic_coefficient() {
        let f = v(Var::X).mul(&v(Var::Y).pow(2)).add(&v(Var::T));
        let e = newton_polygon(&f, Var::Y, Var::T).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].t_exponent, exp(1, 2));
        assert_eq!(e[0].characteristic_poly[2], v(Var::X));
        assert_eq!(e[0].characteristic_poly[0], MultiPoly::one());
    }

    #[test]
    fn zero_polygon_is_rejected() {
        assert!(newton_polygon(&MultiPoly::zero(), Var::Y, Var::T).is_err());
    }

    #[test]
    fn geometric_series_root() {
        // (1 - x) c - 1 = 0  =>  c = 1 + x + x^2 + ...
        let p: Vec<XSeries> = vec![
            PuiseuxSeries::constant(Var::X, Scalar::from_int(-1)),
            PuiseuxSeries::from_terms(
                Var::X,
                vec![(exp(0, 1), Scalar::one()), (exp(1, 1), Scalar::from_int(-1))],
                None,
            ),
        ];
        let r = np_roots(&p, None, Target::Absolute(exp(3, 1)), exp(3, 1)).unwrap();
        assert_eq!(r.len(), 1);
        let s = &r[0].series;
        assert_eq!(s.terms().len(), 3);
        assert_eq!(s.trunc(), Some(exp(3, 1)));
        assert!(!r[0].exact);
    }

    #[test]
    fn exact_root_detected() {
        // x c^2 + 1 = 0 has the exact roots ±i x^(-1/2)
        let p: Vec<XSeries> = vec![
            PuiseuxSeries::one(Var::X),
            PuiseuxSeries::zero(Var::X),
            PuiseuxSeries::monomial(Var::X, exp(1, 1), Scalar::one()),
        ];
        let r = np_roots(&p, None, Target::Relative(exp(4, 1)), exp(4, 1)).unwrap();
        assert_eq!(r.len(), 2);
        for root in &r {
            assert!(root.exact);
            assert_eq!(root.series.terms().len(), 1);
            assert_eq!(root.series.terms()[0].0, exp(-1, 2));
        }
    }
}
