//! Elimination: resultants, gcds and squarefree parts of multivariate polynomials.

use super::multipoly::{MultiPoly, Var};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Sylvester resultant of `p` and `q` with respect to `var`.
///
/// Rows of `p` sit above rows of `q`; the determinant is computed by
/// fraction-free (Bareiss) elimination. With this layout
/// `resultant(z - a, z - b, z) = a - b`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: Var) -> Result<MultiPoly> {
    let n = p.degree(var).unwrap_or(0) as usize;
    let m = q.degree(var).unwrap_or(0) as usize;
    if n == 0 || m == 0 {
        return Err(Error::InvalidElimination(format!(
            "both operands must involve {} with positive degree",
            var
        )));
    }
    let pc = p.as_univariate(var);
    let qc = q.as_univariate(var);
    let size = n + m;
    let mut mat = vec![vec![MultiPoly::zero(); size]; size];
    for i in 0..m {
        for k in 0..=n {
            mat[i][i + k] = pc[n - k].clone();
        }
    }
    for i in 0..n {
        for k in 0..=m {
            mat[m + i][i + k] = qc[m - k].clone();
        }
    }
    Ok(bareiss_det(mat))
}

/// Determinant of a square matrix over the polynomial ring.
pub fn bareiss_det(mut a: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut sign_neg = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
            match swap {
                Some(i) => {
                    a.swap(k, i);
                    sign_neg = !sign_neg;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step must divide exactly");
            }
            a[i][k] = MultiPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_neg {
        det.neg()
    } else {
        det
    }
}

fn vars_present(p: &MultiPoly) -> Vec<Var> {
    Var::ALL.iter().copied().filter(|v| p.involves(*v)).collect()
}

/// Pseudo-remainder of `a` by `b` in `v`.
fn prem(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let db = b.degree(v).unwrap_or(0);
    let lb = b.as_univariate(v).pop().unwrap();
    let mut r = a.clone();
    let xv = MultiPoly::var(v);
    while !r.is_zero() && r.degree(v).unwrap_or(0) >= db {
        let dr = r.degree(v).unwrap();
        let lr = r.as_univariate(v).pop().unwrap();
        let t = lr.mul(&xv.pow(dr - db));
        r = r.mul(&lb).sub(&t.mul(b));
    }
    r
}

fn content(p: &MultiPoly, v: Var) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in p.as_univariate(v) {
        if !c.is_zero() {
            g = gcd(&g, &c);
            if g.as_constant().is_some() {
                return MultiPoly::one();
            }
        }
    }
    g
}

fn primitive_part(p: &MultiPoly, v: Var) -> MultiPoly {
    if p.is_zero() {
        return MultiPoly::zero();
    }
    let c = content(p, v);
    p.div_exact(&c).expect("content divides")
}

/// Greatest common divisor, normalized to leading coefficient one.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return MultiPoly::one();
    }
    let mut vs = vars_present(a);
    for v in vars_present(b) {
        if !vs.contains(&v) {
            vs.push(v);
        }
    }
    vs.sort();
    let v = *vs.last().unwrap();
    match (a.involves(v), b.involves(v)) {
        (true, false) => return gcd(&content(a, v), b),
        (false, true) => return gcd(a, &content(b, v)),
        _ => {}
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd(&ca, &cb);
    let mut r0 = primitive_part(a, v);
    let mut r1 = primitive_part(b, v);
    if r0.degree(v) < r1.degree(v) {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        let r = prem(&r0, &r1, v);
        if r.is_zero() {
            break;
        }
        if !r.involves(v) {
            r1 = MultiPoly::one();
            break;
        }
        r0 = r1;
        r1 = primitive_part(&r, v);
    }
    c.mul(&primitive_part(&r1, v)).normalized()
}

/// Squarefree part: removes every repeated factor, including factors that do
/// not involve any particular variable.
pub fn squarefree(p: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return MultiPoly::zero();
    }
    let mut g = p.clone();
    for v in Var::ALL {
        if p.involves(v) {
            g = gcd(&g, &p.derivative(v));
        }
    }
    p.div_exact(&g).expect("gcd divides").normalized()
}

/// `(gcd(p, q), squarefree part of p)`; the squarefree part is taken with
/// respect to every variable, so it has no repeated factor in `var` either.
pub fn squarefree_and_gcd(p: &MultiPoly, q: &MultiPoly, _var: Var) -> (MultiPoly, MultiPoly) {
    (gcd(p, q), squarefree(p))
}

/// Squarefree factorization `p = c * prod f_k^k` (Yun), factors normalized.
pub fn squarefree_decomposition(p: &MultiPoly) -> Vec<(MultiPoly, u32)> {
    let mut out = Vec::new();
    if p.is_zero() || p.as_constant().is_some() {
        return out;
    }
    // Repeatedly peel the squarefree part.
    let mut rest = p.normalized();
    let mut layers: Vec<MultiPoly> = Vec::new();
    while rest.as_constant().is_none() {
        let s = squarefree(&rest);
        layers.push(s.clone());
        rest = rest.div_exact(&s).expect("squarefree part divides");
    }
    // layers[k] = product of factors with multiplicity > k
    for k in 0..layers.len() {
        let f = if k + 1 < layers.len() {
            layers[k].div_exact(&layers[k + 1]).expect("nested layers")
        } else {
            layers[k].clone()
        };
        if f.as_constant().is_none() {
            out.push((f.normalized(), k as u32 + 1));
        }
    }
    out
}

/// Whether `p` is squarefree.
pub fn is_squarefree(p: &MultiPoly) -> bool {
    let s = squarefree(p);
    s.total_degree() == p.total_degree() && s.num_terms() > 0
}

/// Scalar helper used in tests and examples.
pub fn c(v: i64) -> MultiPoly {
    MultiPoly::constant(Scalar::from_int(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    #[test]
    fn resultant_quadratic_with_derivative() {
        // res(z^2 - c, 2z, z) = -4c with c = x y^2 + t
        let cc = v(Var::X).mul(&v(Var::Y).pow(2)).add(&v(Var::T));
        let p = v(Var::Z).pow(2).sub(&cc);
        let q = v(Var::Z).scale(&Scalar::from_int(2));
        let r = resultant(&p, &q, Var::Z).unwrap();
        assert_eq!(r, cc.scale(&Scalar::from_int(-4)));
    }

    #[test]
    fn resultant_linear_case() {
        let p = v(Var::Z).sub(&v(Var::X));
        let q = v(Var::Z).sub(&v(Var::Y));
        assert_eq!(resultant(&p, &q, Var::Z).unwrap(), v(Var::X).sub(&v(Var::Y)));
    }

    #[test]
    fn resultant_rejects_constant() {
        assert!(resultant(&v(Var::X), &v(Var::Z), Var::Z).is_err());
    }

    #[test]
    fn gcd_shared_linear_factor() {
        let p = v(Var::X).pow(2).sub(&c(1));
        let q = v(Var::X).pow(2).add(&v(Var::X).scale(&Scalar::from_int(2))).add(&c(1));
        assert_eq!(gcd(&p, &q), v(Var::X).add(&c(1)));
    }

    #[test]
    fn squarefree_of_square() {
        let b = v(Var::X).mul(&v(Var::Y).pow(2)).add(&v(Var::T));
        assert_eq!(squarefree(&b.pow(2)), b);
        assert_eq!(squarefree(&b), b);
    }

    #[test]
    fn decomposition_multiplicities() {
        let a = v(Var::Y).sub(&v(Var::T));
        let b = v(Var::Y).pow(2).sub(&v(Var::T));
        let p = a.pow(3).mul(&b);
        let d = squarefree_decomposition(&p);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], (b.normalized(), 1));
        assert_eq!(d[1], (a.normalized(), 3));
    }
}
