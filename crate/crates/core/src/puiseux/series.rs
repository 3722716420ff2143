//! Truncated Puiseux series with rational exponents.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::scalar::{self, Scalar};
use crate::algebra::Var;
use crate::error::{Error, Result};

/// Exponent type.
pub type Exp = Rational64;

pub fn exp(n: i64, d: i64) -> Exp {
    Rational64::new(n, d)
}

/// Coefficient domains for series and for the Newton-Puiseux driver.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_scalar(s: Scalar) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `Some(true)` if certainly zero, `Some(false)` if certainly nonzero,
    /// `None` if undecided at the available precision.
    fn zero_status(&self) -> Option<bool>;
    /// Multiplicative inverse of a certified nonzero element.
    fn inv(&self, prec: Exp) -> Result<Self>;
    /// All roots of `p` (ascending coefficients) with multiplicities.
    fn roots(p: &[Self], prec: Exp) -> Result<Vec<(Self, usize)>>;
    /// Action of `k` turns of the inner loop (identity for constants).
    fn inner_loop(&self, k: i64) -> Result<Self>;
    /// Numeric value with the inner variable set to `x` (principal branches).
    fn eval_c64(&self, x: Complex64) -> Complex64;
    /// Whether the element is known exactly.
    fn is_exact(&self) -> bool;
    /// Common denominator of inner exponents (1 for constants).
    fn inner_denominator(&self) -> i64;
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn add(&self, o: &Self) -> Self {
        Scalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Scalar::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Scalar::mul(self, o)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn zero_status(&self) -> Option<bool> {
        Some(self.is_zero())
    }
    fn inv(&self, _prec: Exp) -> Result<Self> {
        self.try_inv()
    }
    fn roots(p: &[Self], _prec: Exp) -> Result<Vec<(Self, usize)>> {
        scalar::roots(p)
    }
    fn inner_loop(&self, _k: i64) -> Result<Self> {
        Ok(self.clone())
    }
    fn eval_c64(&self, _x: Complex64) -> Complex64 {
        self.to_c64()
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn inner_denominator(&self) -> i64 {
        1
    }
}

/// What is known about the order of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// The series is exactly zero.
    Zero,
    /// The first term is at this exponent and is certainly nonzero.
    At(Exp),
    /// All terms below this exponent vanish; nothing is known beyond.
    AtLeast(Exp),
}

/// Series `sum c_e v^e` with exponents strictly increasing; terms at or
/// beyond `trunc` are unknown (`trunc == None` means the series is exact).
#[derive(Clone, PartialEq)]
pub struct PuiseuxSeries<C: Coeff> {
    pub var: Var,
    terms: Vec<(Exp, C)>,
    trunc: Option<Exp>,
}

pub type XSeries = PuiseuxSeries<Scalar>;

impl<C: Coeff> fmt::Debug for PuiseuxSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn exp_string(e: &Exp) -> String {
    if e.is_integer() {
        format!("{}", e.numer())
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

impl<C: Coeff> fmt::Display for PuiseuxSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "[{}]", c)?;
            } else {
                write!(f, "[{}]*{}^{}", c, self.var, exp_string(e))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(t) = self.trunc {
            write!(f, " + O({}^{})", self.var, exp_string(&t))?;
        }
        Ok(())
    }
}

impl<C: Coeff> PuiseuxSeries<C> {
    pub fn zero(var: Var) -> Self {
        PuiseuxSeries { var, terms: Vec::new(), trunc: None }
    }

    pub fn constant(var: Var, c: C) -> Self {
        Self::monomial(var, Exp::zero(), c)
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, C::one())
    }

    pub fn monomial(var: Var, e: Exp, c: C) -> Self {
        let mut s = Self::zero(var);
        if c.zero_status() != Some(true) {
            s.terms.push((e, c));
        }
        s
    }

    /// Series known to be zero below `order` and unknown beyond.
    pub fn unknown(var: Var, order: Exp) -> Self {
        PuiseuxSeries { var, terms: Vec::new(), trunc: Some(order) }
    }

    /// Build from arbitrary terms, merging and dropping certified zeros.
    pub fn from_terms(var: Var, mut terms: Vec<(Exp, C)>, trunc: Option<Exp>) -> Self {
        terms.sort_by_key(|a| a.0);
        let mut out: Vec<(Exp, C)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if let Some(t) = trunc {
                if e >= t {
                    continue;
                }
            }
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.add(&c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| c.zero_status() != Some(true));
        PuiseuxSeries { var, terms: out, trunc }
    }

    pub fn terms(&self) -> &[(Exp, C)] {
        &self.terms
    }

    pub fn trunc(&self) -> Option<Exp> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none() && self.terms.iter().all(|(_, c)| c.is_exact())
    }

    /// Certified order information.
    pub fn order(&self) -> Order {
        for (e, c) in &self.terms {
            match c.zero_status() {
                Some(false) => return Order::At(*e),
                Some(true) => continue,
                None => return Order::AtLeast(*e),
            }
        }
        match self.trunc {
            None => Order::Zero,
            Some(t) => Order::AtLeast(t),
        }
    }

    /// Lower bound for the order (first stored exponent or the truncation).
    pub fn order_lower_bound(&self) -> Option<Exp> {
        self.terms.first().map(|(e, _)| *e).or(self.trunc)
    }

    /// Certified leading term, if known.
    pub fn leading(&self) -> Option<(Exp, &C)> {
        match self.order() {
            Order::At(e) => self.terms.iter().find(|(f, _)| *f == e).map(|(e, c)| (*e, c)),
            _ => None,
        }
    }

    pub fn coeff_at(&self, e: Exp) -> Option<&C> {
        self.terms.iter().find(|(f, _)| *f == e).map(|(_, c)| c)
    }

    /// Least common denominator of the stored exponents.
    pub fn denominator(&self) -> i64 {
        self.terms.iter().fold(1i64, |acc, (e, _)| acc.lcm(e.denom()))
    }

    /// Largest stored exponent.
    pub fn max_exponent(&self) -> Option<Exp> {
        self.terms.last().map(|(e, _)| *e)
    }

    fn min_trunc(a: Option<Exp>, b: Option<Exp>) -> Option<Exp> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => Some(x.min(y)),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let trunc = Self::min_trunc(self.trunc, o.trunc);
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Self::from_terms(self.var, terms, trunc)
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let va = self.order_lower_bound();
        let vb = o.order_lower_bound();
        let t1 = match (self.trunc, vb) {
            (Some(t), Some(v)) => Some(t + v),
            (Some(_), None) => None,
            (None, _) => None,
        };
        let t2 = match (o.trunc, va) {
            (Some(t), Some(v)) => Some(t + v),
            _ => None,
        };
        // An exactly-zero factor makes the product exactly zero.
        if (self.terms.is_empty() && self.trunc.is_none()) || (o.terms.is_empty() && o.trunc.is_none()) {
            return Self::zero(self.var);
        }
        let trunc = Self::min_trunc(t1, t2);
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                terms.push((ea + eb, ca.mul(cb)));
            }
        }
        Self::from_terms(self.var, terms, trunc)
    }

    /// Multiply by `c * v^e`.
    pub fn mul_monomial(&self, e: Exp, c: &C) -> Self {
        if c.zero_status() == Some(true) {
            return Self::zero(self.var);
        }
        let terms = self.terms.iter().map(|(f, d)| (f + e, d.mul(c))).collect();
        Self::from_terms(self.var, terms, self.trunc.map(|t| t + e))
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_monomial(Exp::zero(), c)
    }

    /// Drop everything at or beyond `order`.
    pub fn truncate(&self, order: Exp) -> Self {
        let trunc = Self::min_trunc(self.trunc, Some(order));
        Self::from_terms(self.var, self.terms.clone(), trunc)
    }

    /// Inverse of a series with certified leading term, with `prec` relative
    /// precision when the inverse is an infinite series.
    pub fn inv(&self, prec: Exp) -> Result<Self> {
        let (v, lc) = match self.leading() {
            Some((v, c)) => (v, c.clone()),
            None => {
                return Err(Error::TruncationTooShort(
                    "cannot invert a series without a certified leading term".into(),
                ))
            }
        };
        let lc_inv = lc.inv(prec)?;
        // self = lc v^e (1 + u)
        let u = self.mul_monomial(-v, &lc_inv).sub(&Self::one(self.var));
        let rel = match u.trunc {
            Some(t) => t.min(prec),
            None => {
                if u.terms.is_empty() {
                    return Ok(Self::monomial(self.var, -v, lc_inv));
                }
                prec
            }
        };
        let u = u.truncate(rel);
        let mut acc = Self::one(self.var).truncate(rel);
        let mut pw = Self::one(self.var);
        let neg_u = u.neg();
        loop {
            pw = pw.mul(&neg_u).truncate(rel);
            if pw.terms.is_empty() {
                break;
            }
            acc = acc.add(&pw);
        }
        Ok(acc.mul_monomial(-v, &lc_inv))
    }

    /// Apply `k` turns of the loop around this series' variable, combined with
    /// `k_inner` turns of the inner variable on coefficients.
    pub fn loop_action(&self, k: i64, k_inner: i64) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut c2 = if k_inner != 0 { c.inner_loop(k_inner)? } else { c.clone() };
            if k != 0 {
                let num = e.numer() * k;
                let den = *e.denom() as u64;
                let z = scalar::root_of_unity(num, den)?;
                c2 = c2.mul(&C::from_scalar(z));
            }
            terms.push((*e, c2));
        }
        Ok(Self::from_terms(self.var, terms, self.trunc))
    }

    /// Numeric value at `v` (principal branch of `v^e`), inner variable at `x`.
    pub fn eval_c64(&self, v: Complex64, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let lv = v.ln();
        for (e, c) in &self.terms {
            let ef = e.to_f64().unwrap();
            acc += c.eval_c64(x) * (lv * ef).exp();
        }
        acc
    }

    /// Map the coefficients through `f`.
    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> PuiseuxSeries<D> {
        PuiseuxSeries::from_terms(self.var, self.terms.iter().map(|(e, c)| (*e, f(c))).collect(), self.trunc)
    }

    /// Whether two series agree on all terms below both truncations.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let t = Self::min_trunc(self.trunc, o.trunc);
        let a = self.truncate_opt(t);
        let b = o.truncate_opt(t);
        a.terms == b.terms
    }

    fn truncate_opt(&self, t: Option<Exp>) -> Self {
        match t {
            Some(t) => self.truncate(t),
            None => self.clone(),
        }
    }

    pub fn is_negative_exp_free(&self) -> bool {
        self.terms.iter().all(|(e, _)| !e.is_negative())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1 == C::one()
    }

}

impl Coeff for XSeries {
    fn zero() -> Self {
        PuiseuxSeries::zero(Var::X)
    }
    fn one() -> Self {
        PuiseuxSeries::one(Var::X)
    }
    fn from_scalar(s: Scalar) -> Self {
        PuiseuxSeries::constant(Var::X, s)
    }
    fn add(&self, o: &Self) -> Self {
        PuiseuxSeries::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        PuiseuxSeries::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        PuiseuxSeries::mul(self, o)
    }
    fn neg(&self) -> Self {
        PuiseuxSeries::neg(self)
    }
    fn zero_status(&self) -> Option<bool> {
        match self.order() {
            Order::Zero => Some(true),
            Order::At(_) => Some(false),
            Order::AtLeast(_) => None,
        }
    }
    fn inv(&self, prec: Exp) -> Result<Self> {
        PuiseuxSeries::inv(self, prec)
    }
    fn roots(p: &[Self], prec: Exp) -> Result<Vec<(Self, usize)>> {
        let rs = super::newton::np_roots(p, None, super::newton::Target::Relative(prec), prec)?;
        Ok(rs.into_iter().map(|r| (r.series, r.multiplicity)).collect())
    }
    fn inner_loop(&self, k: i64) -> Result<Self> {
        self.loop_action(k, 0)
    }
    fn eval_c64(&self, x: Complex64) -> Complex64 {
        PuiseuxSeries::eval_c64(self, x, Complex64::new(0.0, 0.0))
    }
    fn is_exact(&self) -> bool {
        PuiseuxSeries::is_exact(self)
    }
    fn inner_denominator(&self) -> i64 {
        self.denominator()
    }
}

/// Series in an outer variable whose coefficients are series in x.
pub type NestedSeries = PuiseuxSeries<XSeries>;

/// Whether a rational exponent is positive.
pub fn is_pos(e: &Exp) -> bool {
    e.is_positive()
}

/// `1` as an exponent.
pub fn exp_one() -> Exp {
    Exp::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xs(terms: &[(i64, i64, i64)], trunc: Option<Exp>) -> XSeries {
        PuiseuxSeries::from_terms(
            Var::X,
            terms.iter().map(|&(n, d, c)| (exp(n, d), Scalar::from_int(c))).collect(),
            trunc,
        )
    }

    #[test]
    fn geometric_inverse() {
        // 1/(1 - x) = 1 + x + x^2 + ... to relative precision 4
        let s = xs(&[(0, 1, 1), (1, 1, -1)], None);
        let inv = s.inv(exp(4, 1)).unwrap();
        assert_eq!(inv, xs(&[(0, 1, 1), (1, 1, 1), (2, 1, 1), (3, 1, 1)], Some(exp(4, 1))));
    }

    #[test]
    fn monomial_inverse_is_exact() {
        let s = xs(&[(-1, 2, 2)], None);
        let inv = s.inv(exp(3, 1)).unwrap();
        assert_eq!(inv, PuiseuxSeries::monomial(Var::X, exp(1, 2), Scalar::frac(1, 2)));
    }

    #[test]
    fn truncation_propagates_through_product() {
        let a = xs(&[(1, 1, 1)], Some(exp(3, 1)));
        let b = xs(&[(0, 1, 1), (1, 2, 1)], None);
        let p = a.mul(&b);
        assert_eq!(p.trunc(), Some(exp(3, 1)));
        assert_eq!(p.order(), Order::At(exp(1, 1)));
    }

    #[test]
    fn unknown_series_order() {
        let u: XSeries = PuiseuxSeries::unknown(Var::X, exp(2, 1));
        assert_eq!(u.order(), Order::AtLeast(exp(2, 1)));
        assert_eq!(Coeff::zero_status(&u), None);
    }

    #[test]
    fn loop_action_on_half_power() {
        let s = xs(&[(1, 2, 1)], None);
        assert_eq!(s.loop_action(1, 0).unwrap(), xs(&[(1, 2, -1)], None));
        assert_eq!(s.loop_action(2, 0).unwrap(), s);
    }
}
