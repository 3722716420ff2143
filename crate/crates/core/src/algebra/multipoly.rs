//! Sparse polynomials in the fixed variables x, y, z, t.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;

/// Variables in their fixed order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
    T = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::T => "t",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "z" => Some(Var::Z),
            "t" => Some(Var::T),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Exps = [u32; 4];

/// Sparse polynomial; terms are kept in lexicographic exponent order and no
/// stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exps, Scalar>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn monomial_string(e: &Exps) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match e[v.index()] {
            0 => {}
            1 => parts.push(v.name().to_string()),
            k => parts.push(format!("{}^{}", v.name(), k)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono = monomial_string(e);
            let (neg, body) = match c.as_rational() {
                Some(q) => {
                    let neg = q < &num_traits::Zero::zero();
                    let a = if neg { -q.clone() } else { q.clone() };
                    let s = if num_traits::One::is_one(&a) && !mono.is_empty() {
                        String::new()
                    } else {
                        a.to_string()
                    };
                    (neg, s)
                }
                None => (false, format!("{}", c)),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (body.is_empty(), mono.is_empty()) {
                (true, _) => write!(f, "{}", mono)?,
                (false, true) => write!(f, "{}", body)?,
                (false, false) => write!(f, "{}*{}", body, mono)?,
            }
        }
        Ok(())
    }
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term([0; 4], c);
        p
    }

    pub fn one() -> Self {
        MultiPoly::constant(Scalar::one())
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        MultiPoly::monomial(e, Scalar::one())
    }

    pub fn monomial(e: Exps, c: Scalar) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(e, c);
        p
    }

    /// Build from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Exps, Scalar)>>(it: I) -> Self {
        let mut p = MultiPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exps, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.remove(&e);
        let nc = match entry {
            Some(old) => old.add(&c),
            None => c,
        };
        if !nc.is_zero() {
            self.terms.insert(e, nc);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exps) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v.index()]).max()
    }

    pub fn min_degree(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v.index()]).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.degree(v).map(|d| d > 0).unwrap_or(false)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a.mul(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Self {
        let i = v.index();
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ne = *e;
                ne[i] -= 1;
                out.add_term(ne, c.mul(&Scalar::from_int(e[i] as i64)));
            }
        }
        out
    }

    /// Coefficients with respect to `v`: entry `k` multiplies `v^k`.
    pub fn as_univariate(&self, v: Var) -> Vec<MultiPoly> {
        let i = v.index();
        let d = self.degree(v).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(); if self.is_zero() { 0 } else { d + 1 }];
        for (e, c) in &self.terms {
            let mut ne = *e;
            ne[i] = 0;
            out[e[i] as usize].add_term(ne, c.clone());
        }
        out
    }

    pub fn from_univariate(coeffs: &[MultiPoly], v: Var) -> Self {
        let i = v.index();
        let mut out = MultiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut ne = *e;
                ne[i] += k as u32;
                out.add_term(ne, a.clone());
            }
        }
        out
    }

    /// Substitute a polynomial for a variable.
    pub fn substitute(&self, v: Var, val: &MultiPoly) -> Self {
        let coeffs = self.as_univariate(v);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(val).add(c);
        }
        acc
    }

    /// Substitute a scalar for a variable.
    pub fn eval_var(&self, v: Var, val: &Scalar) -> Self {
        self.substitute(v, &MultiPoly::constant(val.clone()))
    }

    /// Map every monomial through an exponent transformation.
    pub fn map_exponents<F: Fn(&Exps) -> Exps>(&self, f: F) -> Self {
        MultiPoly::from_terms(self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    /// Lexicographically leading term.
    pub fn leading(&self) -> Option<(&Exps, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Scale so the leading coefficient is one.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            None => MultiPoly::zero(),
            Some((_, c)) => {
                let inv = c.inv();
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (ld, lc) = d.leading()?;
        let lc_inv = lc.inv();
        let mut r = self.clone();
        let mut q = MultiPoly::zero();
        while let Some((lr, cr)) = r.leading() {
            if (0..4).any(|i| lr[i] < ld[i]) {
                return None;
            }
            let e = [lr[0] - ld[0], lr[1] - ld[1], lr[2] - ld[2], lr[3] - ld[3]];
            let c = cr.mul(&lc_inv);
            let t = MultiPoly::monomial(e, c);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Evaluate numerically at complex values of (x, y, z, t).
    pub fn eval_c64(&self, vals: [num_complex::Complex64; 4]) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = c.to_c64();
            for i in 0..4 {
                if e[i] > 0 {
                    m *= vals[i].powu(e[i]);
                }
            }
            acc += m;
        }
        acc
    }

    /// Whether every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.is_rational())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(Var::Y)
    }

    #[test]
    fn display_is_lex_descending() {
        let p = MultiPoly::var(Var::Z).pow(2).sub(&x().mul(&y().pow(2)));
        assert_eq!(p.to_string(), "-x*y^2 + z^2");
    }

    #[test]
    fn exact_division() {
        let a = x().add(&y());
        let b = x().sub(&y());
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b));
        assert_eq!(p.div_exact(&x()), None);
    }

    #[test]
    fn univariate_roundtrip_and_substitution() {
        let p = x().mul(&y().pow(2)).add(&MultiPoly::var(Var::T));
        let c = p.as_univariate(Var::Y);
        assert_eq!(MultiPoly::from_univariate(&c, Var::Y), p);
        let q = p.substitute(Var::Y, &y().add(&x()));
        assert_eq!(q.degree(Var::X), Some(3));
    }
}
