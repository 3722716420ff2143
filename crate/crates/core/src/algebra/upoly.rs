//! Dense univariate polynomials over [`Scalar`], ascending coefficients.
//!
//! The zero polynomial is the empty vector; nonzero polynomials carry no
//! trailing zero coefficients.

use super::scalar::Scalar;

pub type UPoly = Vec<Scalar>;

pub fn trim(p: &mut UPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

pub fn trimmed(mut p: UPoly) -> UPoly {
    trim(&mut p);
    p
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(p: &[Scalar]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = match (a.get(i), b.get(i)) {
            (Some(u), Some(v)) => u.add(v),
            (Some(u), None) => u.clone(),
            (None, Some(v)) => v.clone(),
            (None, None) => Scalar::zero(),
        };
        out.push(x);
    }
    trimmed(out)
}

pub fn neg(a: &[Scalar]) -> UPoly {
    a.iter().map(|c| c.neg()).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> UPoly {
    add(a, &neg(b))
}

pub fn mul(a: &[Scalar], b: &[Scalar]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, u) in a.iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        for (j, v) in b.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&u.mul(v));
        }
    }
    trimmed(out)
}

pub fn scale(a: &[Scalar], c: &Scalar) -> UPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|u| u.mul(c)).collect()
}

/// Division with remainder; `b` must be nonzero.
pub fn divrem(a: &[Scalar], b: &[Scalar]) -> (UPoly, UPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let lc_inv = b[db].inv();
    let mut r: UPoly = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Scalar::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1].mul(&lc_inv);
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[k + j] = r[k + j].sub(&c.mul(bj));
            }
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    (trimmed(q), r)
}

pub fn rem(a: &[Scalar], b: &[Scalar]) -> UPoly {
    divrem(a, b).1
}

pub fn monic(a: &[Scalar]) -> UPoly {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = lc.inv();
            a.iter().map(|c| c.mul(&inv)).collect()
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &[Scalar], b: &[Scalar]) -> UPoly {
    let mut x = trimmed(a.to_vec());
    let mut y = trimmed(b.to_vec());
    while !y.is_empty() {
        let r = monic(&rem(&x, &y));
        x = y;
        y = r;
    }
    monic(&x)
}

/// Extended Euclid: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn ext_gcd(a: &[Scalar], b: &[Scalar]) -> (UPoly, UPoly, UPoly) {
    let mut r0 = trimmed(a.to_vec());
    let mut r1 = trimmed(b.to_vec());
    let mut s0 = vec![Scalar::one()];
    let mut s1: UPoly = Vec::new();
    let mut t0: UPoly = Vec::new();
    let mut t1 = vec![Scalar::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let inv = r0.last().unwrap().inv();
    (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
}

pub fn derivative(a: &[Scalar]) -> UPoly {
    trimmed(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&Scalar::from_int(i as i64)))
            .collect(),
    )
}

pub fn eval(a: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in a.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// `a(v + s)`.
pub fn shift(a: &[Scalar], s: &Scalar) -> UPoly {
    let mut out: UPoly = Vec::new();
    let lin = vec![s.clone(), Scalar::one()];
    for c in a.iter().rev() {
        out = add(&mul(&out, &lin), std::slice::from_ref(c));
    }
    out
}

/// Squarefree decomposition by Yun's algorithm: returns `(factor, multiplicity)`
/// with monic nonconstant factors.
pub fn squarefree_decomposition(a: &[Scalar]) -> Vec<(UPoly, usize)> {
    let a = monic(&trimmed(a.to_vec()));
    if a.len() <= 1 {
        return Vec::new();
    }
    let da = derivative(&a);
    let mut out = Vec::new();
    let g = gcd(&a, &da);
    let mut b = divrem(&a, &g).0;
    let mut c = divrem(&da, &g).0;
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1;
    loop {
        let h = gcd(&b, &d);
        if h.len() > 1 {
            out.push((h.clone(), i));
        }
        b = divrem(&b, &h).0;
        if b.len() <= 1 {
            break;
        }
        c = divrem(&d, &h).0;
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

/// Squarefree part (monic).
pub fn squarefree_part(a: &[Scalar]) -> UPoly {
    let a = trimmed(a.to_vec());
    if a.len() <= 1 {
        return monic(&a);
    }
    let g = gcd(&a, &derivative(&a));
    monic(&divrem(&a, &g).0)
}

/// Resultant over the coefficient field by the Euclidean recurrence.
pub fn resultant(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let a = trimmed(a.to_vec());
    let b = trimmed(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return Scalar::zero();
    }
    let n = a.len() - 1;
    let m = b.len() - 1;
    if m == 0 {
        return b[0].pow(n as u32);
    }
    if n == 0 {
        return a[0].pow(m as u32);
    }
    let r = rem(&a, &b);
    if r.is_empty() {
        return Scalar::zero();
    }
    let dr = r.len() - 1;
    let sign = if (n * m) % 2 == 1 {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    };
    sign.mul(&b[m].pow((n - dr) as u32)).mul(&resultant(&b, &r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> UPoly {
        v.iter().map(|&c| Scalar::from_int(c)).collect()
    }

    #[test]
    fn gcd_of_shared_root() {
        // x^2 - 1 and x^2 + 2x + 1 share x + 1.
        assert_eq!(gcd(&p(&[-1, 0, 1]), &p(&[1, 2, 1])), p(&[1, 1]));
    }

    #[test]
    fn resultant_linear() {
        // res(v - a, v - b) = a - b
        let r = resultant(&p(&[-2, 1]), &p(&[-5, 1]));
        assert_eq!(r, Scalar::from_int(-3));
    }

    #[test]
    fn yun_separates_powers() {
        // (v-1)^2 (v+2)
        let a = mul(&mul(&p(&[-1, 1]), &p(&[-1, 1])), &p(&[2, 1]));
        let dec = squarefree_decomposition(&a);
        assert_eq!(dec, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
    }
}
