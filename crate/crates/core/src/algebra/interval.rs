//! Complex rectangles with rational endpoints and outward rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const PREC_BITS: u32 = 192;

fn scale() -> BigInt {
    BigInt::one() << PREC_BITS
}

fn round_down(q: &BigRational) -> BigRational {
    if q.denom() <= &scale() {
        return q.clone();
    }
    let s = scale();
    let num = q.numer() * &s;
    let f = num.div_floor(q.denom());
    BigRational::new(f, s)
}

fn round_up(q: &BigRational) -> BigRational {
    if q.denom() <= &scale() {
        return q.clone();
    }
    let s = scale();
    let num = q.numer() * &s;
    let f = num.div_ceil(q.denom());
    BigRational::new(f, s)
}

/// Closed real interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval {
            lo: round_down(&lo),
            hi: round_up(&hi),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    /// Largest absolute value attained.
    pub fn mag(&self) -> BigRational {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    /// Smallest absolute value attained.
    pub fn mig(&self) -> BigRational {
        if self.lo.is_positive() {
            self.lo.clone()
        } else if self.hi.is_negative() {
            -self.hi.clone()
        } else {
            BigRational::zero()
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Axis-parallel complex rectangle.
#[derive(Clone, Debug, PartialEq)]
pub struct CRect {
    pub re: Interval,
    pub im: Interval,
}

impl CRect {
    pub fn point(re: BigRational, im: BigRational) -> Self {
        CRect {
            re: Interval::point(re),
            im: Interval::point(im),
        }
    }

    pub fn real(q: BigRational) -> Self {
        CRect::point(q, BigRational::zero())
    }

    /// Square of side `2r` centered at `(cr, ci)`.
    pub fn around(cr: &BigRational, ci: &BigRational, r: &BigRational) -> Self {
        CRect {
            re: Interval::new(cr - r, cr + r),
            im: Interval::new(ci - r, ci + r),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        CRect {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CRect {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn neg(&self) -> Self {
        CRect {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        CRect {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    /// Upper bound on the squared modulus.
    pub fn mag2(&self) -> BigRational {
        let a = self.re.mag();
        let b = self.im.mag();
        &a * &a + &b * &b
    }

    /// Lower bound on the squared modulus.
    pub fn mig2(&self) -> BigRational {
        let a = self.re.mig();
        let b = self.im.mig();
        &a * &a + &b * &b
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn center_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let two = BigRational::from_integer(BigInt::from(2));
        let cr = (&self.re.lo + &self.re.hi) / &two;
        let ci = (&self.im.lo + &self.im.hi) / &two;
        (cr.to_f64().unwrap_or(f64::NAN), ci.to_f64().unwrap_or(f64::NAN))
    }

    pub fn max_width(&self) -> BigRational {
        let a = self.re.width();
        let b = self.im.width();
        if a > b {
            a
        } else {
            b
        }
    }
}

/// Smallest rational `r` (coarsely) with `r >= sqrt(q)` for `q >= 0`.
pub fn sqrt_upper(q: &BigRational) -> BigRational {
    use num_traits::{FromPrimitive, ToPrimitive};
    if q.is_zero() {
        return BigRational::zero();
    }
    let approx = q.to_f64().unwrap_or(f64::MAX).sqrt();
    let mut r = BigRational::from_f64(approx * (1.0 + 1e-12) + f64::MIN_POSITIVE)
        .unwrap_or_else(|| q.clone() + BigRational::one());
    let two = BigRational::from_integer(BigInt::from(2));
    while &(&r * &r) < q {
        r = &r * &two;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rect_product_encloses() {
        let a = CRect::around(&q(1, 1), &q(1, 1), &q(1, 100));
        let b = CRect::around(&q(1, 1), &q(-1, 1), &q(1, 100));
        let c = a.mul(&b);
        // (1+i)(1-i) = 2
        assert!(c.re.lo < q(2, 1) && c.re.hi > q(2, 1));
        assert!(c.im.contains_zero());
    }

    #[test]
    fn sqrt_upper_bounds() {
        let r = sqrt_upper(&q(2, 1));
        assert!(&r * &r >= q(2, 1));
        assert!(r < q(142, 100));
    }
}
