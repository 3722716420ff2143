//! The input germ, its singular locus, coordinate checks, the discriminant
//! surface and the transversal plane germ.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{self, MultiPoly, Scalar, Var};
use crate::error::{Error, Result};
use crate::puiseux::{self, Exp, NestedSeries, Order, PuiseuxSeries, Target, XSeries};

/// A reduced surface germ `f(x, y, z) = 0` at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceGerm {
    pub f: MultiPoly,
    /// The x-axis is a branch of the singular locus.
    pub reduced: bool,
    /// When `f` came from a truncated reduction, x-terms at or beyond this
    /// degree were dropped.
    pub x_trunc: Option<Exp>,
}

impl SurfaceGerm {
    /// Validate `f`: nonzero, only x, y, z, vanishing at the origin and squarefree.
    pub fn new(f: MultiPoly) -> Result<SurfaceGerm> {
        if f.is_zero() {
            return Err(Error::HypothesisViolation("f is identically zero".into()));
        }
        if f.involves(Var::T) {
            return Err(Error::HypothesisViolation("f may only involve x, y, z".into()));
        }
        if !f.coeff(&[0; 4]).is_zero() {
            return Err(Error::HypothesisViolation("f does not vanish at the origin".into()));
        }
        if !algebra::elim::is_squarefree(&f) {
            return Err(Error::HypothesisViolation(
                "f is not reduced, so its singular locus is 2-dimensional".into(),
            ));
        }
        let reduced = contains_x_axis_in_singular_locus(&f);
        Ok(SurfaceGerm { f, reduced, x_trunc: None })
    }
}

fn on_x_axis(g: &MultiPoly) -> bool {
    g.eval_var(Var::Y, &Scalar::zero()).eval_var(Var::Z, &Scalar::zero()).is_zero()
}

fn contains_x_axis_in_singular_locus(f: &MultiPoly) -> bool {
    on_x_axis(f) && [Var::X, Var::Y, Var::Z].iter().all(|v| on_x_axis(&f.derivative(*v)))
}

/// A branch `u -> (u^k, φ(u), ψ(u))` of the singular locus.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaBranch {
    pub k: u32,
    /// `y` as a Puiseux series in x.
    pub y_of_x: XSeries,
    /// `z` as a Puiseux series in x.
    pub z_of_x: XSeries,
}

fn rescale(s: &XSeries, k: u32) -> XSeries {
    let kk = Exp::from(k as i64);
    PuiseuxSeries::from_terms(
        Var::X,
        s.terms().iter().map(|(e, c)| (*e * kk, c.clone())).collect(),
        s.trunc().map(|t| t * kk),
    )
}

impl SigmaBranch {
    pub fn x_axis() -> SigmaBranch {
        SigmaBranch { k: 1, y_of_x: PuiseuxSeries::zero(Var::X), z_of_x: PuiseuxSeries::zero(Var::X) }
    }

    /// `φ(u)` with `x = u^k`.
    pub fn phi(&self) -> XSeries {
        rescale(&self.y_of_x, self.k)
    }

    /// `ψ(u)` with `x = u^k`.
    pub fn psi(&self) -> XSeries {
        rescale(&self.z_of_x, self.k)
    }

    pub fn is_x_axis(&self) -> bool {
        self.k == 1 && self.y_of_x.order() == Order::Zero && self.z_of_x.order() == Order::Zero
    }

    pub fn is_exact(&self) -> bool {
        self.y_of_x.is_exact() && self.z_of_x.is_exact()
    }

    pub fn describe(&self) -> String {
        format!("(u^{}, {}, {})", self.k, self.phi(), self.psi())
    }
}

/// Evaluate `g(x, y(x), z(x))` as a Puiseux series in x.
pub fn eval_on_curve(g: &MultiPoly, y: &XSeries, z: &XSeries) -> XSeries {
    let dy = g.degree(Var::Y).unwrap_or(0) as usize;
    let dz = g.degree(Var::Z).unwrap_or(0) as usize;
    let mut ypow = vec![PuiseuxSeries::one(Var::X)];
    for i in 0..dy {
        ypow.push(ypow[i].mul(y));
    }
    let mut zpow = vec![PuiseuxSeries::one(Var::X)];
    for i in 0..dz {
        zpow.push(zpow[i].mul(z));
    }
    let mut acc = PuiseuxSeries::zero(Var::X);
    for (e, c) in g.terms() {
        let m = ypow[e[1] as usize]
            .mul(&zpow[e[2] as usize])
            .mul_monomial(Exp::from(e[0] as i64), c);
        acc = acc.add(&m);
    }
    acc
}

/// `g(x, y(x), z)` as a polynomial in z with x-series coefficients.
fn in_z_over_curve(g: &MultiPoly, y: &XSeries) -> Vec<XSeries> {
    g.as_univariate(Var::Z)
        .iter()
        .map(|c| eval_on_curve(c, y, &PuiseuxSeries::zero(Var::X)))
        .collect()
}

/// No certified nonzero term.
fn vanishes(s: &XSeries) -> bool {
    !matches!(s.order(), Order::At(_))
}

/// Drop the x-dependence of a series whose coefficients are constants.
fn flatten(s: &NestedSeries) -> XSeries {
    PuiseuxSeries::from_terms(
        s.var,
        s.terms()
            .iter()
            .map(|(e, c)| (*e, c.coeff_at(Exp::zero()).cloned().unwrap_or_else(Scalar::zero)))
            .collect(),
        s.trunc(),
    )
}

/// Eliminate z from `p = q = 0`; a factor free of z is kept as is.
fn elim_z(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
    match (p.involves(Var::Z), q.involves(Var::Z)) {
        (true, true) => algebra::resultant(p, q, Var::Z),
        (true, false) => Ok(q.clone()),
        (false, _) => Ok(p.clone()),
    }
}

/// A point of `{f_z = f_y = 0}` on a curve through the origin.
#[derive(Clone, Debug)]
struct Candidate {
    y: XSeries,
    z: XSeries,
    on_f: bool,
    on_fx: bool,
}

/// Curve branches of `{f_z = f_y = 0}` through the origin that are not
/// contained in `{x = 0}`.
fn polar_candidates(f: &MultiPoly, order: Exp) -> Result<Vec<Candidate>> {
    let fx = f.derivative(Var::X);
    let fy = f.derivative(Var::Y);
    let fz = f.derivative(Var::Z);
    if fz.is_zero() {
        return Err(Error::HypothesisViolation("f does not depend on z".into()));
    }
    let r = elim_z(&fz, &fy)?;
    if r.is_zero() {
        return Err(Error::HypothesisViolation(
            "the critical locus {f_y = f_z = 0} is 2-dimensional".into(),
        ));
    }
    let r = algebra::squarefree(&r);
    if !r.involves(Var::Y) {
        return Ok(Vec::new());
    }
    let ys = puiseux::puiseux_expand(&r, Var::Y, Var::X, order)?;
    let mut out: Vec<Candidate> = Vec::new();
    for yc in ys {
        let y = flatten(&yc.representative);
        let zpoly = in_z_over_curve(&fz, &y);
        let roots = match puiseux::np_roots(&zpoly, Some(Exp::zero()), Target::Absolute(order), order) {
            Ok(r) => r,
            Err(Error::EmptyInput(_)) => continue,
            Err(e) => return Err(e),
        };
        let ky = y.denominator();
        let mut zs: Vec<XSeries> = Vec::new();
        for root in roots {
            let z = root.series;
            // conjugates of z over the same y belong to the same branch
            let mut dup = false;
            let mut cur = z.clone();
            for _ in 0..z.denominator().max(1) {
                if zs.iter().any(|w| w.agrees_with(&cur)) {
                    dup = true;
                    break;
                }
                cur = cur.loop_action(ky, 0)?;
            }
            if dup {
                continue;
            }
            if !vanishes(&eval_on_curve(&fy, &y, &z)) {
                continue;
            }
            zs.push(z.clone());
            out.push(Candidate {
                on_f: vanishes(&eval_on_curve(f, &y, &z)),
                on_fx: vanishes(&eval_on_curve(&fx, &y, &z)),
                y: y.clone(),
                z,
            });
        }
    }
    Ok(out)
}

/// Whether the singular locus has a curve component inside `{x = 0}`.
fn sigma_in_x_plane(f: &MultiPoly) -> bool {
    let at0 = |g: &MultiPoly| g.eval_var(Var::X, &Scalar::zero());
    let mut g = at0(f);
    for v in [Var::X, Var::Y, Var::Z] {
        g = algebra::gcd(&g, &at0(&f.derivative(v)));
    }
    g.as_constant().is_none() || g.is_zero()
}

/// Branches of the singular locus with Puiseux parametrizations.
///
/// Components lying in `{x = 0}` have no x-parametrization and do not meet
/// `{|x| = ε}`; they are left out (the genericity report flags them).
pub fn singular_locus(germ: &SurfaceGerm, order: Exp) -> Result<Vec<SigmaBranch>> {
    let f = &germ.f;
    let mut out = Vec::new();
    for c in polar_candidates(f, order)? {
        if c.on_f && c.on_fx {
            let k = c.y.denominator().lcm(&c.z.denominator()) as u32;
            out.push(SigmaBranch { k, y_of_x: c.y, z_of_x: c.z });
        }
    }
    Ok(out)
}

/// Pull back `f` along `Θ(x, y, z) = (x^k, y + φ(x), z + ψ(x))`.
///
/// When σ is only known to finite order, the result keeps x-degrees below
/// that order and records it in `x_trunc`.
pub fn theta_reduce(germ: &SurfaceGerm, sigma: &SigmaBranch, _order: Exp) -> Result<SurfaceGerm> {
    if sigma.is_x_axis() {
        return Ok(germ.clone());
    }
    let to_poly = |s: &XSeries| -> Result<MultiPoly> {
        let mut p = MultiPoly::zero();
        for (e, c) in s.terms() {
            if !e.is_integer() || e.is_negative() {
                return Err(Error::Internal("σ parametrization off the integer grid".into()));
            }
            let mut ex = [0u32; 4];
            ex[0] = e.to_integer() as u32;
            p.add_term(ex, c.clone());
        }
        Ok(p)
    };
    let phi = sigma.phi();
    let psi = sigma.psi();
    let k = sigma.k;
    let mut g = germ.f.map_exponents(|e| [e[0] * k, e[1], e[2], e[3]]);
    g = g.substitute(Var::Y, &MultiPoly::var(Var::Y).add(&to_poly(&phi)?));
    g = g.substitute(Var::Z, &MultiPoly::var(Var::Z).add(&to_poly(&psi)?));
    let trunc = match (phi.trunc(), psi.trunc()) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(a.min(b)),
    };
    if let Some(t) = trunc {
        g = MultiPoly::from_terms(g.terms().filter(|(e, _)| Exp::from(e[0] as i64) < t).map(|(e, c)| (*e, c.clone())));
    }
    let reduced = contains_x_axis_in_singular_locus(&g);
    if !reduced && trunc.is_none() {
        return Err(Error::Internal("reduction did not move σ onto the x-axis".into()));
    }
    Ok(SurfaceGerm { f: g, reduced: true, x_trunc: trunc })
}

/// Outcome of the coordinate checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub weierstrass_ok: bool,
    pub claim_ok: bool,
    pub transversality_ok: bool,
    pub polar_curve_components: Vec<String>,
    pub suggested_shear: Option<(i64, i64, i64)>,
    pub notes: Vec<String>,
}

impl GenericityReport {
    pub fn passed(&self) -> bool {
        self.weierstrass_ok && self.claim_ok && self.transversality_ok
    }
}

/// `f(x, y + λx, z + μx + νy)`.
pub fn apply_shear(f: &MultiPoly, shear: (i64, i64, i64)) -> MultiPoly {
    let (l, m, n) = shear;
    let x = MultiPoly::var(Var::X);
    let y = MultiPoly::var(Var::Y);
    let z = MultiPoly::var(Var::Z);
    let c = |v: i64| MultiPoly::constant(Scalar::from_int(v));
    let ny = y.add(&c(l).mul(&x));
    let nz = z.add(&c(m).mul(&x)).add(&c(n).mul(&y));
    // substitute through a fresh variable so the y-substitution is not seen twice
    let g = f.substitute(Var::Z, &nz.substitute(Var::Y, &MultiPoly::var(Var::T)));
    let g = g.substitute(Var::Y, &ny);
    g.substitute(Var::T, &ny)
}

const GENERICITY_ORDER: i64 = 3;

fn check(f: &MultiPoly) -> GenericityReport {
    let mut rep = GenericityReport {
        weierstrass_ok: false,
        claim_ok: false,
        transversality_ok: false,
        polar_curve_components: Vec::new(),
        suggested_shear: None,
        notes: Vec::new(),
    };
    let f00 = f.eval_var(Var::X, &Scalar::zero()).eval_var(Var::Y, &Scalar::zero());
    rep.weierstrass_ok = !f00.is_zero();
    if !rep.weierstrass_ok {
        rep.notes.push("f(0, 0, z) vanishes identically".into());
        return rep;
    }
    let order = Exp::from(GENERICITY_ORDER);
    let cands = match polar_candidates(f, order) {
        Ok(c) => c,
        Err(e) => {
            rep.notes.push(format!("polar curve: {}", e));
            return rep;
        }
    };
    let in_plane = sigma_in_x_plane(f);
    if in_plane {
        rep.notes.push("singular locus meets {x = 0} in a curve".into());
    }
    rep.claim_ok = !in_plane && cands.iter().all(|c| !c.on_f || c.on_fx);
    for c in &cands {
        if !c.on_f {
            rep.polar_curve_components.push(format!("y = {}, z = {}", c.y, c.z));
        } else if !c.on_fx {
            rep.notes.push(format!("Γ₀ ∩ {{f_y = 0}} has the extra branch y = {}, z = {}", c.y, c.z));
        }
    }
    let sigma_ys: Vec<XSeries> = cands.iter().filter(|c| c.on_f && c.on_fx).map(|c| c.y.clone()).collect();
    rep.transversality_ok = match transversal_to_discriminant_curve(f, &sigma_ys) {
        Ok(ok) => ok,
        Err(e) => {
            rep.notes.push(format!("discriminant curve: {}", e));
            false
        }
    };
    rep
}

/// The x-axis is not tangent to any branch of `Δ₀ = {Res_z(f, f_z) = 0}`
/// other than the projections of the singular locus.
fn transversal_to_discriminant_curve(f: &MultiPoly, sigma_ys: &[XSeries]) -> Result<bool> {
    let fz = f.derivative(Var::Z);
    let delta = algebra::squarefree(&algebra::resultant(f, &fz, Var::Z)?);
    if !delta.involves(Var::Y) {
        return Ok(true);
    }
    let order = Exp::from(2);
    let branches = puiseux::puiseux_expand(&delta, Var::Y, Var::X, order)?;
    for b in branches {
        let y = flatten(&b.representative);
        let tangent = match y.order() {
            Order::At(e) => e > Exp::one(),
            _ => true,
        };
        if !tangent {
            continue;
        }
        let mut is_sigma = false;
        for s in sigma_ys {
            let mut cur = y.clone();
            for _ in 0..y.denominator() {
                if cur.agrees_with(s) {
                    is_sigma = true;
                }
                cur = cur.loop_action(1, 0)?;
            }
        }
        if !is_sigma {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decide the coordinate conditions; on failure, look for a small shear that passes.
pub fn genericity_check(f: &MultiPoly) -> GenericityReport {
    let mut rep = check(f);
    if !rep.passed() {
        let shears = [
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (1, 1, 0),
            (1, 0, 1),
            (0, 1, 1),
            (1, 1, 1),
            (2, 0, 0),
            (0, 2, 0),
            (0, 0, 2),
            (2, 1, 0),
            (1, 2, 0),
        ];
        for s in shears {
            if check(&apply_shear(f, s)).passed() {
                rep.suggested_shear = Some(s);
                break;
            }
        }
    }
    rep
}

/// `D(x, y, t)` with the factors that are not part of the branch data.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantSurface {
    /// `Res_z(f - t, f_z)`.
    pub raw: MultiPoly,
    /// Squarefree decomposition of `raw` (normalized factors with multiplicity).
    pub factors: Vec<(MultiPoly, u32)>,
    /// Squarefree part with the split-off factors removed.
    pub d: MultiPoly,
    /// Factors without t (vertical cylinders over curves in the (x, y)-plane) and t itself.
    pub split_off: Vec<MultiPoly>,
}

/// Eliminate z from `f - t = f_z = 0`.
pub fn discriminant_surface(germ: &SurfaceGerm) -> Result<DiscriminantSurface> {
    let f = &germ.f;
    let fz = f.derivative(Var::Z);
    let ft = f.sub(&MultiPoly::var(Var::T));
    let raw = algebra::resultant(&ft, &fz, Var::Z)?;
    if raw.is_zero() {
        return Err(Error::HypothesisViolation("the discriminant vanishes identically".into()));
    }
    let factors = algebra::squarefree_decomposition(&raw);
    let mut d = MultiPoly::one();
    let mut split_off = Vec::new();
    for (g, _) in &factors {
        if !g.involves(Var::T) || *g == MultiPoly::var(Var::T) {
            split_off.push(g.clone());
        } else {
            d = d.mul(g);
        }
    }
    Ok(DiscriminantSurface { raw, factors, d: d.normalized(), split_off })
}

/// Invariants of the transversal plane germ `f_a(y, z) = f(a, y, z)` for generic `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalInvariants {
    pub mu: i64,
    pub branch_count: usize,
    pub euler: i64,
    pub annulus_flag: bool,
}

/// Milnor number and branch count of the transversal type, with `a` kept
/// symbolic as the variable x of the coefficient field.
pub fn transversal_invariants(germ: &SurfaceGerm, order: Exp) -> Result<TransversalInvariants> {
    if germ.f.is_rational() {
        algebra::scalar::isolated_tower(|| transversal_in_tower(germ, order))
    } else {
        transversal_in_tower(germ, order)
    }
}

fn transversal_in_tower(germ: &SurfaceGerm, order: Exp) -> Result<TransversalInvariants> {
    let f = &germ.f;
    let fy = f.derivative(Var::Y);
    let fz = f.derivative(Var::Z);
    let fa0 = f.eval_var(Var::Y, &Scalar::zero());
    if fa0.is_zero() {
        return Err(Error::HypothesisViolation("f(a, 0, z) vanishes identically".into()));
    }
    let mut mu = Exp::zero();
    for class in &expand_z_over_y(&fz, order)? {
        let v = ord_y_on(&fy, &class.representative)?;
        mu += v * Exp::from((class.class_size * class.multiplicity) as i64);
    }
    if !mu.is_integer() {
        return Err(Error::Internal(format!("non-integral Milnor number {}", mu)));
    }
    let mu = mu.to_integer();
    let branches = expand_z_over_y(f, order)?;
    let branch_count = branches.len();
    Ok(TransversalInvariants { mu, branch_count, euler: 1 - mu, annulus_flag: mu == 1 && branch_count == 2 })
}

/// Roots `z(y)` of `g` tending to zero, over the field of Puiseux series in a.
fn expand_z_over_y(g: &MultiPoly, order: Exp) -> Result<Vec<puiseux::PuiseuxClass>> {
    if !g.involves(Var::Z) {
        return Ok(Vec::new());
    }
    puiseux::puiseux_expand(g, Var::Z, Var::Y, order)
}

/// `ord_y g(a, y, z(y))` for a branch `z(y)` with a-series coefficients.
fn ord_y_on(g: &MultiPoly, z: &NestedSeries) -> Result<Exp> {
    let poly = puiseux::to_nested_poly(g, Var::Z, Var::Y)?;
    let mut acc = PuiseuxSeries::zero(Var::Y);
    for c in poly.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    match acc.order() {
        Order::At(e) => Ok(e),
        Order::Zero => Err(Error::HypothesisViolation(
            "the transversal germ is not reduced for generic a".into(),
        )),
        Order::AtLeast(_) => Err(Error::TruncationTooShort("intersection multiplicity not certified".into())),
    }
}

/// `N = ord_z f(0, 0, z)`.
pub fn covering_degree(germ: &SurfaceGerm) -> Result<u32> {
    let f00 = germ.f.eval_var(Var::X, &Scalar::zero()).eval_var(Var::Y, &Scalar::zero());
    f00.min_degree(Var::Z)
        .filter(|_| !f00.is_zero())
        .ok_or_else(|| Error::HypothesisViolation("f(0, 0, z) vanishes identically".into()))
}

/// `ord_z f(a, 0, z)` for generic `a`: the number of sheets near the singular locus.
pub fn local_sheet_count(germ: &SurfaceGerm) -> Result<u32> {
    let fa = germ.f.eval_var(Var::Y, &Scalar::zero());
    fa.min_degree(Var::Z)
        .filter(|_| !fa.is_zero())
        .ok_or_else(|| Error::HypothesisViolation("f(a, 0, z) vanishes identically".into()))
}

/// Symbolic radii `0 < η ≪ θ ≪ α < β < γ < ε`, compared through exponents of
/// the monomials `η^a α^b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleProfile {
    /// Optional numeric values `(α, η)` for the probe.
    pub numeric: Option<(f64, f64)>,
}

impl ScaleProfile {
    pub fn symbolic() -> Self {
        ScaleProfile { numeric: None }
    }

    /// Compare the sizes of `η^a α^b` and `η^c α^d` as `η ≪ α → 0`.
    pub fn compare_monomials(a: (Exp, Exp), b: (Exp, Exp)) -> Ordering {
        // a larger exponent is a smaller quantity
        b.0.cmp(&a.0).then(b.1.cmp(&a.1))
    }

    /// `η^a α^b < η^c α^d` for all small enough radii.
    pub fn smaller(a: (Exp, Exp), b: (Exp, Exp)) -> bool {
        Self::compare_monomials(a, b) == Ordering::Less
    }

    pub fn eval(&self, m: (Exp, Exp)) -> Option<f64> {
        use num_traits::ToPrimitive;
        self.numeric
            .map(|(alpha, eta)| eta.powf(m.0.to_f64().unwrap()) * alpha.powf(m.1.to_f64().unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::exp;

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    fn whitney() -> MultiPoly {
        v(Var::Z).pow(2).sub(&v(Var::X).mul(&v(Var::Y).pow(2)))
    }

    #[test]
    fn whitney_family_singular_locus() {
        let g = SurfaceGerm::new(whitney()).unwrap();
        assert!(g.reduced);
        let s = singular_locus(&g, exp(3, 1)).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].is_x_axis());
        assert_eq!(s[0].k, 1);
    }

    #[test]
    fn cusp_and_node_singular_locus() {
        for f in [v(Var::Z).pow(2).sub(&v(Var::Y).pow(3)), v(Var::Z).pow(2).sub(&v(Var::Y).pow(2))] {
            let g = SurfaceGerm::new(f).unwrap();
            let s = singular_locus(&g, exp(3, 1)).unwrap();
            assert_eq!(s.len(), 1);
            assert!(s[0].is_x_axis());
        }
    }

    #[test]
    fn non_reduced_input_rejected() {
        let e = SurfaceGerm::new(v(Var::Z).pow(2)).unwrap_err();
        assert!(matches!(e, Error::HypothesisViolation(_)));
    }

    #[test]
    fn theta_moves_sigma_to_axis() {
        let y_minus_x = v(Var::Y).sub(&v(Var::X));
        let f = v(Var::Z).pow(2).sub(&y_minus_x.pow(2).mul(&v(Var::X)));
        let g = SurfaceGerm::new(f).unwrap();
        assert!(!g.reduced);
        let s = singular_locus(&g, exp(3, 1)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].describe(), "(u^1, [1]*x^1, 0)");
        let r = theta_reduce(&g, &s[0], exp(3, 1)).unwrap();
        assert_eq!(r.f, whitney());
        assert!(r.reduced);
    }

    #[test]
    fn theta_pure_ramification() {
        let g = SurfaceGerm::new(whitney()).unwrap();
        let sigma = SigmaBranch { k: 2, ..SigmaBranch::x_axis() };
        let r = theta_reduce(&g, &sigma, exp(3, 1)).unwrap();
        assert_eq!(r.f, v(Var::Z).pow(2).sub(&v(Var::X).pow(2).mul(&v(Var::Y).pow(2))));
    }

    #[test]
    fn genericity_examples() {
        assert!(genericity_check(&whitney()).passed());
        assert!(genericity_check(&v(Var::Z).pow(2).sub(&v(Var::Y).pow(2))).passed());
        let umbrella = v(Var::X).pow(2).add(&v(Var::Y).pow(2).mul(&v(Var::Z)));
        let r = genericity_check(&umbrella);
        assert!(!r.weierstrass_ok);
        assert!(!r.passed());
    }

    #[test]
    fn discriminant_examples() {
        let g = SurfaceGerm::new(whitney()).unwrap();
        let d = discriminant_surface(&g).unwrap();
        let expect = v(Var::X).mul(&v(Var::Y).pow(2)).add(&v(Var::T));
        assert_eq!(d.d, expect);
        assert_eq!(d.raw, expect.scale(&Scalar::from_int(-4)));
        let g = SurfaceGerm::new(v(Var::Z).pow(2).sub(&v(Var::Y).pow(2))).unwrap();
        assert_eq!(discriminant_surface(&g).unwrap().d, v(Var::Y).pow(2).add(&v(Var::T)));
        let h = v(Var::Z).pow(3).sub(&v(Var::X).pow(2).mul(&v(Var::Y).pow(3)));
        let d = discriminant_surface(&SurfaceGerm::new(h).unwrap()).unwrap();
        assert_eq!(d.d, v(Var::X).pow(2).mul(&v(Var::Y).pow(3)).add(&v(Var::T)));
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].1, 2);
    }

    #[test]
    fn transversal_examples() {
        let t = transversal_invariants(&SurfaceGerm::new(whitney()).unwrap(), exp(4, 1)).unwrap();
        assert_eq!(t, TransversalInvariants { mu: 1, branch_count: 2, euler: 0, annulus_flag: true });
        let f = v(Var::Z).pow(3).sub(&v(Var::X).mul(&v(Var::Y).pow(3)));
        let t = transversal_invariants(&SurfaceGerm::new(f).unwrap(), exp(4, 1)).unwrap();
        assert_eq!((t.mu, t.euler, t.annulus_flag), (4, -3, false));
        let f = v(Var::Z).pow(2).sub(&v(Var::Y).pow(2));
        let t = transversal_invariants(&SurfaceGerm::new(f).unwrap(), exp(4, 1)).unwrap();
        assert_eq!((t.mu, t.annulus_flag), (1, true));
    }

    #[test]
    fn covering_degree_examples() {
        assert_eq!(covering_degree(&SurfaceGerm::new(whitney()).unwrap()).unwrap(), 2);
        let f = v(Var::Z)
            .sub(&v(Var::Y))
            .mul(&v(Var::Z).add(&v(Var::Y)))
            .mul(&v(Var::Z).sub(&v(Var::X)));
        let g = SurfaceGerm::new(f).unwrap();
        assert_eq!(covering_degree(&g).unwrap(), 3);
        assert_eq!(local_sheet_count(&g).unwrap(), 2);
    }

    #[test]
    fn scale_comparison() {
        // η^(3/2) is smaller than η^1 regardless of α powers
        assert!(ScaleProfile::smaller((exp(3, 2), exp(-5, 1)), (exp(1, 1), exp(0, 1))));
        assert!(ScaleProfile::smaller((exp(1, 2), exp(0, 1)), (exp(1, 2), exp(-1, 2))));
    }
}
