//! Expansions of curve and surface branches, conjugacy classes, loop actions
//! and resubstitution checks.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::newton::{self, NpRoot, Target};
use super::series::{Coeff, Exp, NestedSeries, Order, PuiseuxSeries, XSeries};
use crate::algebra::{MultiPoly, Scalar, Var};
use crate::error::{Error, Result};

/// Convert `f` into a polynomial in `main` whose coefficients are series in
/// `param` with x-series coefficients. Variables other than `main`, `param`
/// and x must not occur.
pub fn to_nested_poly(f: &MultiPoly, main: Var, param: Var) -> Result<Vec<NestedSeries>> {
    for v in Var::ALL {
        if v != main && v != param && v != Var::X && f.involves(v) {
            return Err(Error::InvalidElimination(format!(
                "unexpected variable {} when expanding {} in {}",
                v, main, param
            )));
        }
    }
    let by_main = f.as_univariate(main);
    let mut out = Vec::with_capacity(by_main.len());
    for c in by_main {
        let mut tterms: Vec<(Exp, XSeries)> = Vec::new();
        for (j, cj) in c.as_univariate(param).into_iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let xs = if param == Var::X {
                PuiseuxSeries::constant(Var::X, cj.as_constant().unwrap_or_else(Scalar::zero))
            } else {
                let xt: Vec<(Exp, Scalar)> = cj
                    .as_univariate(Var::X)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(i, a)| (Exp::from(i as i64), a.as_constant().unwrap_or_else(Scalar::zero)))
                    .collect();
                PuiseuxSeries::from_terms(Var::X, xt, None)
            };
            tterms.push((Exp::from(j as i64), xs));
        }
        out.push(PuiseuxSeries::from_terms(param, tterms, None));
    }
    Ok(out)
}

/// One conjugacy class of roots of a polynomial in `main` over `param`.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxClass {
    pub representative: NestedSeries,
    /// Number of conjugates under the `param` loop.
    pub class_size: usize,
    /// Multiplicity of each member (greater than one only for unresolved clusters).
    pub multiplicity: usize,
    pub exact: bool,
}

impl PuiseuxClass {
    /// Common denominator of the exponents in the loop variable.
    pub fn denominator(&self) -> i64 {
        self.representative.denominator()
    }

    /// Common denominator of the x-exponents of all coefficients.
    pub fn x_denominator(&self) -> i64 {
        self.representative
            .terms()
            .iter()
            .fold(1i64, |acc, (_, c)| acc.lcm(&c.denominator()))
    }

    /// All conjugates under the loop of the series variable.
    pub fn conjugates(&self) -> Result<Vec<NestedSeries>> {
        let mut out = vec![self.representative.clone()];
        for k in 1..self.class_size as i64 {
            out.push(self.representative.loop_action(k, 0)?);
        }
        Ok(out)
    }
}

/// Default relative precision for x-series coefficients.
pub fn default_x_prec(order: Exp) -> Exp {
    order.max(Exp::from(4))
}

/// Roots of `f` (as a polynomial in `main`) that tend to zero with `param`,
/// computed modulo `param^order`, grouped into conjugacy classes under the
/// `param` loop. Coefficients may involve x; they are expanded as Puiseux
/// series in x to relative precision `x_prec`.
pub fn puiseux_expand_with(f: &MultiPoly, main: Var, param: Var, order: Exp, x_prec: Exp) -> Result<Vec<PuiseuxClass>> {
    // branches inside {param = 0} are not roots in main
    let pm = f.min_degree(param).unwrap_or(0);
    let mut e = [0u32; 4];
    e[param.index()] = pm;
    let f = &f
        .div_exact(&MultiPoly::monomial(e, Scalar::one()))
        .ok_or_else(|| Error::Internal("monomial division".into()))?;
    let poly = to_nested_poly(f, main, param)?;
    let roots = newton::np_roots(&poly, Some(Exp::zero()), Target::Absolute(order), x_prec)?;
    let expected = newton::positive_order_root_count(f, main, param);
    let total: usize = roots.iter().map(|r| r.multiplicity).sum();
    if total != expected {
        return Err(Error::InconsistentBranchSet(format!(
            "found {} roots through the origin, Newton polygon predicts {}",
            total, expected
        )));
    }
    group_classes(roots)
}

/// [`puiseux_expand_with`] at the default x precision.
pub fn puiseux_expand(f: &MultiPoly, main: Var, param: Var, order: Exp) -> Result<Vec<PuiseuxClass>> {
    puiseux_expand_with(f, main, param, order, default_x_prec(order))
}

/// Index of the unique series in `pool` matching `s` up to common precision.
fn find_match(pool: &[NestedSeries], s: &NestedSeries) -> Option<usize> {
    if let Some(i) = pool.iter().position(|p| p == s) {
        return Some(i);
    }
    let cands: Vec<usize> = (0..pool.len()).filter(|&i| series_agree(&pool[i], s)).collect();
    if cands.len() == 1 {
        Some(cands[0])
    } else {
        None
    }
}

/// Agreement of nested series on all terms both determine.
fn series_agree(a: &NestedSeries, b: &NestedSeries) -> bool {
    let t = match (a.trunc(), b.trunc()) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    };
    let (a, b) = match t {
        Some(t) => (a.truncate(t), b.truncate(t)),
        None => (a.clone(), b.clone()),
    };
    let ea: Vec<Exp> = a.terms().iter().map(|(e, _)| *e).collect();
    let eb: Vec<Exp> = b.terms().iter().map(|(e, _)| *e).collect();
    if ea != eb {
        return false;
    }
    a.terms().iter().zip(b.terms()).all(|((_, x), (_, y))| x.agrees_with(y))
}

fn group_classes(roots: Vec<NpRoot<XSeries>>) -> Result<Vec<PuiseuxClass>> {
    let pool: Vec<NestedSeries> = roots.iter().map(|r| r.series.clone()).collect();
    let mut used = vec![false; pool.len()];
    let mut out = Vec::new();
    for i in 0..pool.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut size = 1;
        let mut cur = pool[i].clone();
        loop {
            cur = cur.loop_action(1, 0)?;
            let j = find_match(&pool, &cur).ok_or_else(|| {
                Error::InconsistentBranchSet("a conjugate of a root is missing from the root set".into())
            })?;
            if j == i {
                break;
            }
            if used[j] {
                return Err(Error::InconsistentBranchSet("conjugacy orbits overlap".into()));
            }
            used[j] = true;
            size += 1;
        }
        out.push(PuiseuxClass {
            representative: pool[i].clone(),
            class_size: size,
            multiplicity: roots[i].multiplicity,
            exact: roots[i].exact,
        });
    }
    Ok(out)
}

/// A term `b_m(x^(1/n')) t^(r_m)` of the tail of a branch expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct TailTerm {
    pub r: Exp,
    pub m: i64,
    pub b_m: XSeries,
}

/// One branch of the discriminant in normal form
/// `y = b w(x^(1/d)) x^(e/d') t^(q/p) + sum_m b_m(x^(1/n')) t^(r_m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchExpansion {
    pub q_over_p: Exp,
    pub e_over_dprime: Exp,
    pub b: Scalar,
    pub w: XSeries,
    pub tail: Vec<TailTerm>,
    pub d: i64,
    pub n: i64,
    pub p: i64,
    pub p_prime: i64,
    pub n_prime: i64,
    /// Representative of the conjugacy class under the t loop.
    pub series: NestedSeries,
    pub class_size: usize,
    pub multiplicity: usize,
    pub exact: bool,
}

impl BranchExpansion {
    /// Build the normal form from a class representative.
    pub fn from_class(c: &PuiseuxClass) -> Result<BranchExpansion> {
        let s = &c.representative;
        let (qp, c0) = match s.leading() {
            Some((e, c0)) => (e, c0.clone()),
            None => {
                return Err(Error::TruncationTooShort(
                    "branch leading term not determined at this truncation".into(),
                ))
            }
        };
        if !qp.is_positive() {
            return Err(Error::InconsistentBranchSet("branch with non-positive t-exponent".into()));
        }
        let (ed, b) = match c0.leading() {
            Some((e, b)) => (e, b.clone()),
            None => {
                return Err(Error::TruncationTooShort(
                    "leading coefficient not certified nonzero at this x precision".into(),
                ))
            }
        };
        let w = c0.mul_monomial(-ed, &b.inv());
        let p = *qp.denom();
        let n = s.denominator().lcm(&p);
        let p_prime = n / p;
        let mut d = w.denominator().lcm(ed.denom());
        let mut tail = Vec::new();
        for (r, bm) in &s.terms()[1..] {
            let m = *r * Exp::from(n) - Exp::from(*qp.numer() * p_prime);
            if !m.is_integer() || !m.is_positive() {
                return Err(Error::Internal("tail exponent off the expected grid".into()));
            }
            let g = bm.denominator();
            d = d.lcm(&(g / g.gcd(&n)));
            tail.push(TailTerm { r: *r, m: m.to_integer(), b_m: bm.clone() });
        }
        let be = BranchExpansion {
            q_over_p: qp,
            e_over_dprime: ed,
            b,
            w,
            tail,
            d,
            n,
            p,
            p_prime,
            n_prime: d * n,
            series: s.clone(),
            class_size: c.class_size,
            multiplicity: c.multiplicity,
            exact: c.exact,
        };
        be.check_invariants()?;
        Ok(be)
    }

    /// Assert the normal-form invariants.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Internal(format!("branch normal form: {}", m)));
        if self.b.is_zero() {
            return fail("b = 0");
        }
        match self.w.terms().first() {
            Some((e, c)) if e.is_zero() && c.is_one() => {}
            _ => return fail("w does not start with 1"),
        }
        if self.e_over_dprime.is_zero() && *self.e_over_dprime.denom() != 1 {
            return fail("e = 0 with d' > 1");
        }
        if self.p * self.p_prime != self.n || self.n_prime != self.d * self.n {
            return fail("denominator bookkeeping");
        }
        if self.w.denominator() > 0 && self.d % self.w.denominator() != 0 {
            return fail("w denominator does not divide d");
        }
        let mut last = self.q_over_p;
        for t in &self.tail {
            if t.r <= last {
                return fail("tail exponents not increasing");
            }
            let r = Exp::new(self.q_over_p.numer() * self.p_prime + t.m, self.n);
            if r != t.r {
                return fail("tail exponent formula");
            }
            if self.n_prime % t.b_m.denominator() != 0 {
                return fail("tail denominator does not divide n'");
            }
            last = t.r;
        }
        Ok(())
    }

    /// First-exponent pair `(q/p, e/d')`.
    pub fn pair(&self) -> (Exp, Exp) {
        (self.q_over_p, self.e_over_dprime)
    }

    /// Common x-denominator of the branch (leading coefficient and tail).
    pub fn x_denominator(&self) -> i64 {
        self.series
            .terms()
            .iter()
            .fold(1i64, |acc, (_, c)| acc.lcm(&c.denominator()))
    }

    /// All conjugates under the t loop.
    pub fn conjugates(&self) -> Result<Vec<NestedSeries>> {
        let mut out = vec![self.series.clone()];
        for k in 1..self.class_size as i64 {
            out.push(self.series.loop_action(k, 0)?);
        }
        Ok(out)
    }
}

/// Expand every branch of `D(x, y, t) = 0` through `y = t = 0` in normal form.
pub fn nested_expand_with(dpoly: &MultiPoly, order: Exp, x_prec: Exp) -> Result<Vec<BranchExpansion>> {
    if dpoly.is_zero() {
        return Err(Error::EmptyInput("zero discriminant".into()));
    }
    let classes = puiseux_expand_with(dpoly, Var::Y, Var::T, order, x_prec)?;
    let mut out = Vec::with_capacity(classes.len());
    for c in &classes {
        out.push(BranchExpansion::from_class(c)?);
    }
    out.sort_by(|a, b| {
        b.q_over_p
            .cmp(&a.q_over_p)
            .then(b.e_over_dprime.cmp(&a.e_over_dprime))
            .then(a.b.sort_key().cmp(&b.b.sort_key()))
    });
    Ok(out)
}

/// [`nested_expand_with`] at the default x precision.
pub fn nested_expand(dpoly: &MultiPoly, order: Exp) -> Result<Vec<BranchExpansion>> {
    nested_expand_with(dpoly, order, default_x_prec(order))
}

/// A permutation with its cycle type.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Permutation {
    pub images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Cycles, each listed from its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for i in 0..self.len() {
            if seen[i] {
                continue;
            }
            let mut cyc = vec![i];
            seen[i] = true;
            let mut j = self.images[i];
            while j != i {
                seen[j] = true;
                cyc.push(j);
                j = self.images[j];
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> usize {
        self.cycle_type().iter().fold(1usize, |acc, &l| acc.lcm(&l))
    }

    pub fn orbit_count(&self) -> usize {
        self.cycles().len()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }
}

/// Permutation of `conjugates` induced by one turn of `loop_var`
/// (the series variable, or x acting on coefficients).
pub fn monodromy_permutation(conjugates: &[NestedSeries], loop_var: Var) -> Result<Permutation> {
    let mut images = Vec::with_capacity(conjugates.len());
    for s in conjugates {
        let img = if loop_var == s.var {
            s.loop_action(1, 0)?
        } else if loop_var == Var::X {
            s.loop_action(0, 1)?
        } else {
            return Err(Error::InconsistentBranchSet(format!("no loop in {}", loop_var)));
        };
        let j = find_match(conjugates, &img).ok_or_else(|| {
            Error::InconsistentBranchSet("loop image is not in the branch set".into())
        })?;
        images.push(j);
    }
    let mut seen = images.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != images.len() {
        return Err(Error::InconsistentBranchSet("loop action is not injective on the branch set".into()));
    }
    Ok(Permutation { images })
}

/// Result of substituting a branch back into its polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resubstitution {
    /// The branch is an exact root.
    ExactRoot,
    /// Least exponent with a nonzero coefficient (or the truncation order).
    Order(Exp),
}

impl Resubstitution {
    pub fn at_least(&self, r: Exp) -> bool {
        match self {
            Resubstitution::ExactRoot => true,
            Resubstitution::Order(v) => *v >= r,
        }
    }
}

impl std::fmt::Display for Resubstitution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Resubstitution::ExactRoot => write!(f, "exact root"),
            Resubstitution::Order(v) => write!(f, "{}", v),
        }
    }
}

/// Valuation in the series variable of `F(x, branch, param)` with the branch
/// cut at `to_order`; coefficients that vanish to the available x precision
/// count as zero.
pub fn resubstitution_valuation(f: &MultiPoly, main: Var, branch: &NestedSeries, to_order: Exp) -> Result<Resubstitution> {
    let poly = to_nested_poly(f, main, branch.var)?;
    let y = match branch.trunc() {
        Some(t) if t <= to_order => branch.clone(),
        _ if branch.trunc().is_none() && branch.is_exact() => branch.clone(),
        _ => branch.truncate(to_order),
    };
    let mut acc = PuiseuxSeries::zero(branch.var);
    for c in poly.iter().rev() {
        acc = acc.mul(&y).add(c);
    }
    if acc.order() == Order::Zero {
        return Ok(Resubstitution::ExactRoot);
    }
    for (e, c) in acc.terms() {
        if Coeff::zero_status(c) == Some(false) {
            return Ok(Resubstitution::Order(*e));
        }
    }
    Ok(Resubstitution::Order(acc.trunc().unwrap_or_else(Exp::one)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::series::exp;

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    #[test]
    fn square_root_class() {
        let f = v(Var::Y).pow(2).sub(&v(Var::T));
        let c = puiseux_expand(&f, Var::Y, Var::T, exp(5, 1)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].class_size, 2);
        assert!(c[0].exact);
        let t = c[0].representative.terms();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].0, exp(1, 2));
    }

    #[test]
    fn cusp_in_z_over_y() {
        let f = v(Var::Z).pow(3).sub(&v(Var::Y).pow(2));
        let c = puiseux_expand(&f, Var::Z, Var::Y, exp(4, 1)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].class_size, 3);
        assert_eq!(c[0].representative.terms()[0].0, exp(2, 3));
    }

    #[test]
    fn whitney_discriminant_branch() {
        let d = v(Var::X).mul(&v(Var::Y).pow(2)).add(&v(Var::T));
        let br = nested_expand(&d, exp(5, 1)).unwrap();
        assert_eq!(br.len(), 1);
        let b = &br[0];
        assert_eq!(b.pair(), (exp(1, 2), exp(-1, 2)));
        assert_eq!(b.b.to_c64().norm(), 1.0);
        assert!(b.b.to_c64().re.abs() < 1e-12);
        assert!(b.w.is_one());
        assert!(b.tail.is_empty());
        assert_eq!(b.class_size, 2);
        assert_eq!(b.x_denominator(), 2);
        let conj = b.conjugates().unwrap();
        let px = monodromy_permutation(&conj, Var::X).unwrap();
        assert_eq!(px.cycle_type(), vec![2]);
        assert_eq!(px.orbit_count(), 1);
    }

    #[test]
    fn two_factor_discriminant() {
        let d = v(Var::Y).pow(2).sub(&v(Var::T)).mul(&v(Var::Y).sub(&v(Var::T)));
        let br = nested_expand(&d, exp(5, 1)).unwrap();
        let pairs: Vec<(Exp, Exp)> = br.iter().map(|b| b.pair()).collect();
        assert_eq!(pairs, vec![(exp(1, 1), exp(0, 1)), (exp(1, 2), exp(0, 1))]);
    }

    #[test]
    fn hirzebruch_discriminant_pairs() {
        for (k, l) in [(1u32, 2u32), (1, 3), (2, 3), (2, 2)] {
            let d = v(Var::X).pow(k).mul(&v(Var::Y).pow(l)).add(&v(Var::T));
            let br = nested_expand(&d, exp(5, 1)).unwrap();
            assert_eq!(br.len(), 1, "k={} l={}", k, l);
            assert_eq!(br[0].pair(), (exp(1, l as i64), exp(-(k as i64), l as i64)));
            assert!(br[0].w.is_one());
        }
    }

    #[test]
    fn hirzebruch_three_cycle() {
        let d = v(Var::X).mul(&v(Var::Y).pow(3)).add(&v(Var::T));
        let br = nested_expand(&d, exp(3, 1)).unwrap();
        let conj = br[0].conjugates().unwrap();
        let px = monodromy_permutation(&conj, Var::X).unwrap();
        assert_eq!(px.cycle_type(), vec![3]);
    }

    #[test]
    fn exact_root_sentinel() {
        let f = v(Var::Y).pow(2).sub(&v(Var::T));
        let c = puiseux_expand(&f, Var::Y, Var::T, exp(5, 1)).unwrap();
        let r = resubstitution_valuation(&f, Var::Y, &c[0].representative, exp(5, 1)).unwrap();
        assert_eq!(r, Resubstitution::ExactRoot);
        let d = v(Var::X).mul(&v(Var::Y).pow(2)).add(&v(Var::T));
        let b = nested_expand(&d, exp(5, 1)).unwrap();
        let r = resubstitution_valuation(&d, Var::Y, &b[0].series, exp(5, 1)).unwrap();
        assert_eq!(r, Resubstitution::ExactRoot);
    }

    #[test]
    fn infinite_expansion_valuation_bound() {
        // y^2 - t(1 + t) has y = t^(1/2) (1 + t/2 - ...)
        let t = v(Var::T);
        let f = v(Var::Y).pow(2).sub(&t.mul(&t.add(&MultiPoly::one())));
        let c = puiseux_expand(&f, Var::Y, Var::T, exp(4, 1)).unwrap();
        assert_eq!(c.len(), 1);
        assert!(!c[0].exact);
        let r = resubstitution_valuation(&f, Var::Y, &c[0].representative, exp(4, 1)).unwrap();
        assert!(r.at_least(exp(4, 1)), "{:?}", r);
    }
}
