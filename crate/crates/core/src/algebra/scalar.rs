//! Exact scalars in a tower of simple algebraic extensions of the rationals.
//!
//! Every level adjoins one root of a polynomial that is irreducible over the
//! level below; the chosen root is pinned by a certified isolating rectangle.
//! Elements are stored reduced modulo the defining polynomial, so zero
//! testing is structural.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, MutexGuard};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use super::factor;
use super::interval::{sqrt_upper, CRect};
use super::numeric;
use super::upoly::{self, UPoly};
use crate::error::{Error, Result};

pub type Q = BigRational;

/// One simple extension step.
pub struct Level {
    depth: usize,
    parent: Option<Arc<Level>>,
    defining: UPoly,
    approx: Complex64,
    rect: CRect,
}

impl Level {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn parent(&self) -> Option<&Arc<Level>> {
        self.parent.as_ref()
    }

    /// Monic defining polynomial over the level below, ascending.
    pub fn defining(&self) -> &[Scalar] {
        &self.defining
    }

    pub fn degree(&self) -> usize {
        self.defining.len() - 1
    }

    /// Certified isolating rectangle of the adjoined root.
    pub fn isolating_box(&self) -> &CRect {
        &self.rect
    }

    pub fn approx(&self) -> Complex64 {
        self.approx
    }

    /// Ancestor (or self) at a given depth.
    pub fn ancestor(self: &Arc<Level>, depth: usize) -> Option<Arc<Level>> {
        let mut cur = Some(self.clone());
        while let Some(l) = cur {
            if l.depth == depth {
                return Some(l);
            }
            if l.depth < depth {
                return None;
            }
            cur = l.parent.clone();
        }
        None
    }
}

impl fmt::Debug for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Level(a{}, deg {}, ~{:.6})", self.depth, self.degree(), self.approx)
    }
}

#[derive(Clone)]
enum Repr {
    Rat(Q),
    Ext(Arc<Level>, Vec<Scalar>),
}

/// Exact element of the extension tower.
#[derive(Clone)]
pub struct Scalar(Repr);

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => a == b,
            (Repr::Ext(la, ca), Repr::Ext(lb, cb)) => Arc::ptr_eq(la, lb) && ca == cb,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(q) => write!(f, "{}", q),
            Repr::Ext(l, c) => {
                let mut first = true;
                write!(f, "(")?;
                for (i, ci) in c.iter().enumerate().rev() {
                    if ci.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    let coef = if ci.is_one() && i > 0 {
                        String::new()
                    } else if i > 0 {
                        format!("{}*", ci)
                    } else {
                        format!("{}", ci)
                    };
                    match i {
                        0 => write!(f, "{}", coef)?,
                        1 => write!(f, "{}a{}", coef, l.depth)?,
                        _ => write!(f, "{}a{}^{}", coef, l.depth, i)?,
                    }
                }
                write!(f, ")")
            }
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<Q> for Scalar {
    fn from(q: Q) -> Self {
        Scalar::from_q(q)
    }
}

fn same_chain(deep: &Arc<Level>, shallow: &Arc<Level>) -> bool {
    deep.ancestor(shallow.depth)
        .map(|a| Arc::ptr_eq(&a, shallow))
        .unwrap_or(false)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Rat(Q::zero()))
    }

    pub fn one() -> Self {
        Scalar(Repr::Rat(Q::one()))
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(Repr::Rat(Q::from_integer(BigInt::from(v))))
    }

    pub fn from_q(q: Q) -> Self {
        Scalar(Repr::Rat(q))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar(Repr::Rat(Q::new(n.into(), d.into())))
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.0, Repr::Rat(_))
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rat(q) => q.is_zero(),
            Repr::Ext(..) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rat(q) => q.is_one(),
            Repr::Ext(..) => false,
        }
    }

    /// Depth of the smallest tower level containing this element.
    pub fn depth(&self) -> usize {
        match &self.0 {
            Repr::Rat(_) => 0,
            Repr::Ext(l, _) => l.depth,
        }
    }

    pub fn level(&self) -> Option<&Arc<Level>> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Ext(l, _) => Some(l),
        }
    }

    /// Generator of a level as a scalar.
    pub fn generator(level: &Arc<Level>) -> Self {
        Scalar(Repr::Ext(level.clone(), vec![Scalar::zero(), Scalar::one()]))
    }

    /// Coefficients as a polynomial in the generator of `level`.
    fn coeffs_at(&self, level: &Arc<Level>) -> Vec<Scalar> {
        match &self.0 {
            Repr::Ext(l, c) if l.depth == level.depth => c.clone(),
            _ => {
                if self.is_zero() {
                    Vec::new()
                } else {
                    vec![self.clone()]
                }
            }
        }
    }

    /// Coefficients as a polynomial in the generator of `level` (trimmed).
    pub fn coeffs_in(&self, level: &Arc<Level>) -> Vec<Scalar> {
        self.coeffs_at(level)
    }

    fn common_level(&self, other: &Self) -> Option<Arc<Level>> {
        match (self.level(), other.level()) {
            (None, None) => None,
            (Some(l), None) | (None, Some(l)) => Some(l.clone()),
            (Some(a), Some(b)) => {
                let (deep, shallow) = if a.depth >= b.depth { (a, b) } else { (b, a) };
                assert!(
                    same_chain(deep, shallow),
                    "scalars from incompatible extension towers"
                );
                Some(deep.clone())
            }
        }
    }

    /// Build the canonical element from a polynomial in the generator.
    fn from_poly(level: &Arc<Level>, mut p: Vec<Scalar>) -> Self {
        upoly::trim(&mut p);
        let m = &level.defining;
        let n = m.len() - 1;
        while p.len() > n {
            let top = p.pop().unwrap();
            if !top.is_zero() {
                let k = p.len() - n;
                for j in 0..n {
                    if !m[j].is_zero() {
                        p[k + j] = p[k + j].sub(&top.mul(&m[j]));
                    }
                }
            }
            upoly::trim(&mut p);
        }
        match p.len() {
            0 => Scalar::zero(),
            1 => p.pop().unwrap(),
            _ => Scalar(Repr::Ext(level.clone(), p)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a + b)),
            _ => {
                let l = self.common_level(other).unwrap();
                let p = upoly::add(&self.coeffs_at(&l), &other.coeffs_at(&l));
                Scalar::from_poly(&l, p)
            }
        }
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::Rat(a) => Scalar(Repr::Rat(-a)),
            Repr::Ext(l, c) => Scalar(Repr::Ext(l.clone(), c.iter().map(|x| x.neg()).collect())),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a * b)),
            (Repr::Rat(a), Repr::Ext(l, c)) | (Repr::Ext(l, c), Repr::Rat(a)) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                let s = Scalar::from_q(a.clone());
                Scalar(Repr::Ext(l.clone(), c.iter().map(|x| x.mul(&s)).collect()))
            }
            _ => {
                let l = self.common_level(other).unwrap();
                let p = upoly::mul(&self.coeffs_at(&l), &other.coeffs_at(&l));
                Scalar::from_poly(&l, p)
            }
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero scalar")
    }

    pub fn try_inv(&self) -> Result<Self> {
        match &self.0 {
            Repr::Rat(a) => {
                if a.is_zero() {
                    Err(Error::Internal("division by zero".into()))
                } else {
                    Ok(Scalar(Repr::Rat(a.recip())))
                }
            }
            Repr::Ext(l, c) => {
                let (g, s, _) = upoly::ext_gcd(c, &l.defining);
                if g.len() != 1 {
                    return Err(Error::Internal(format!(
                        "zero divisor at tower level {}: defining polynomial not irreducible",
                        l.depth
                    )));
                }
                Ok(Scalar::from_poly(l, s))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u32)
        } else {
            self.inv().pow((-e) as u32)
        }
    }

    /// Floating-point value under the tower's embedding.
    pub fn to_c64(&self) -> Complex64 {
        match &self.0 {
            Repr::Rat(q) => Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0),
            Repr::Ext(l, c) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for ci in c.iter().rev() {
                    acc = acc * l.approx + ci.to_c64();
                }
                acc
            }
        }
    }

    /// Certified rectangle containing the value.
    pub fn enclose(&self) -> CRect {
        match &self.0 {
            Repr::Rat(q) => CRect::real(q.clone()),
            Repr::Ext(l, c) => {
                let mut acc = CRect::real(Q::zero());
                for ci in c.iter().rev() {
                    acc = acc.mul(&l.rect).add(&ci.enclose());
                }
                acc
            }
        }
    }

    /// Canonical ordering key derived from the numeric value.
    pub fn sort_key(&self) -> (i64, i64) {
        numeric::canonical_key(self.to_c64())
    }
}

// ---------------------------------------------------------------------------
// Registry

struct Registry {
    top: Option<Arc<Level>>,
}

thread_local! {
    // one tower per thread; the allocation lives as long as the thread
    static REG: &'static Mutex<Registry> = Box::leak(Box::new(Mutex::new(Registry { top: None })));
    static ZETA: &'static Mutex<HashMap<u64, Scalar>> = Box::leak(Box::new(Mutex::new(HashMap::new())));
}

fn registry() -> &'static Mutex<Registry> {
    REG.with(|r| *r)
}

fn lock() -> MutexGuard<'static, Registry> {
    registry().lock().unwrap_or_else(|e| e.into_inner())
}

/// Current top of the shared tower.
pub fn top_level() -> Option<Arc<Level>> {
    lock().top.clone()
}

fn c64_to_q(v: f64) -> Q {
    Q::from_f64(v).unwrap_or_else(Q::zero)
}

/// Certify an isolating square for root `idx` among numeric roots `zs` of monic `h`.
fn certify(h: &[Scalar], zs: &[Complex64], idx: usize) -> Option<CRect> {
    let n = zs.len();
    let qz: Vec<(Q, Q)> = zs.iter().map(|z| (c64_to_q(z.re), c64_to_q(z.im))).collect();
    let hc: Vec<CRect> = h.iter().map(|c| c.enclose()).collect();
    let eval_at = |k: usize| {
        let z = CRect::point(qz[k].0.clone(), qz[k].1.clone());
        let mut acc = CRect::real(Q::zero());
        for c in hc.iter().rev() {
            acc = acc.mul(&z).add(c);
        }
        acc
    };
    let dist2 = |a: usize, b: usize| {
        let dr = &qz[a].0 - &qz[b].0;
        let di = &qz[a].1 - &qz[b].1;
        &dr * &dr + &di * &di
    };
    let nn = Q::from_integer(BigInt::from((n * n) as i64));
    let radius = |k: usize| -> Option<Q> {
        let pv = eval_at(k).mag2();
        let mut den = Q::one();
        for j in 0..n {
            if j != k {
                let d = dist2(k, j);
                if d.is_zero() {
                    return None;
                }
                den *= d;
            }
        }
        Some(sqrt_upper(&(&nn * pv / den)))
    };
    let ri = radius(idx)?;
    for j in 0..n {
        if j == idx {
            continue;
        }
        let rj = radius(j)?;
        let s = &ri + &rj;
        if &s * &s >= dist2(idx, j) {
            return None;
        }
    }
    // A zero-width box would hide a rational root; such roots never reach here.
    let r = if ri.is_zero() {
        Q::new(BigInt::one(), BigInt::from(1u64 << 60))
    } else {
        ri
    };
    Some(CRect::around(&qz[idx].0, &qz[idx].1, &r))
}

fn numeric_roots(h: &[Scalar]) -> Vec<Complex64> {
    let c: Vec<Complex64> = h.iter().map(|s| s.to_c64()).collect();
    numeric::aberth_roots(&c)
}

/// Adjoin the root of irreducible monic `h` nearest to `target`.
fn push_level(reg: &mut Registry, h: &[Scalar], target: Complex64) -> Result<Scalar> {
    let zs = numeric_roots(h);
    let idx = zs
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - target).norm().partial_cmp(&(b.1 - target).norm()).unwrap())
        .map(|(i, _)| i)
        .ok_or_else(|| Error::IsolationFailure("no roots".into()))?;
    let rect = certify(h, &zs, idx).ok_or_else(|| {
        Error::IsolationFailure(format!("could not certify an isolating box for root ~{}", zs[idx]))
    })?;
    let depth = reg.top.as_ref().map(|l| l.depth).unwrap_or(0) + 1;
    let level = Arc::new(Level {
        depth,
        parent: reg.top.clone(),
        defining: h.to_vec(),
        approx: zs[idx],
        rect,
    });
    reg.top = Some(level.clone());
    Ok(Scalar::generator(&level))
}

/// A root of `g` near `target` of the form `ζ^j·a` with `a` a generator of the
/// tower (or its inverse, or a product of two), checked exactly.
fn cheap_root(reg: &Registry, g: &[Scalar], target: Complex64) -> Option<Scalar> {
    let mut gens = Vec::new();
    let mut l = reg.top.clone();
    while let Some(x) = l {
        gens.push(Scalar::generator(&x));
        l = x.parent().cloned();
    }
    let mut atoms = vec![Scalar::one()];
    for (i, a) in gens.iter().enumerate() {
        atoms.push(a.clone());
        atoms.push(a.inv());
        for b in &gens[i..] {
            atoms.push(a.mul(b));
        }
    }
    let unit = {
        let c = zeta_cache().lock().unwrap();
        c.iter().max_by_key(|(m, _)| **m).map(|(m, z)| (*m, z.clone()))
    };
    let (m, z) = unit.unwrap_or((2, Scalar::from_int(-1)));
    let units: Vec<Scalar> = (0..m).map(|j| z.pow(j as u32)).collect();
    let tol = 1e-6 * target.norm().max(1e-3);
    for a in &atoms {
        let av = a.to_c64();
        for u in &units {
            if (u.to_c64() * av - target).norm() < tol {
                let c = u.mul(a);
                if upoly::eval(g, &c).is_zero() {
                    return Some(c);
                }
            }
        }
    }
    None
}

fn factor_over_top(reg: &Registry, g: &[Scalar]) -> Result<Vec<UPoly>> {
    factor::factor_over(reg.top.as_ref(), g)
}

/// Adjoin a root of `defining` lying in `bx`.
///
/// The polynomial is factored over the current top of the tower and only the
/// irreducible factor owning the boxed root is adjoined. If that factor is
/// linear the root already lives in the tower and no level is added.
pub fn extend_tower(defining: &[Scalar], bx: &CRect) -> Result<Scalar> {
    let d = upoly::trimmed(defining.to_vec());
    if d.len() < 2 {
        return Err(Error::IsolationFailure("constant defining polynomial".into()));
    }
    let sf = upoly::squarefree_part(&d);
    let mut reg = lock();
    let inside = |z: &Complex64| {
        bx.re.lo.to_f64().unwrap() <= z.re
            && z.re <= bx.re.hi.to_f64().unwrap()
            && bx.im.lo.to_f64().unwrap() <= z.im
            && z.im <= bx.im.hi.to_f64().unwrap()
    };
    let near: Vec<Complex64> = numeric_roots(&sf).into_iter().filter(|z| inside(z)).collect();
    if near.len() == 1 {
        if let Some(c) = cheap_root(&reg, &sf, near[0]) {
            return Ok(c);
        }
    }
    let factors = factor_over_top(&reg, &sf)?;
    let mut hits = Vec::new();
    for f in &factors {
        for z in numeric_roots(f) {
            let inside = bx.re.lo.to_f64().unwrap() <= z.re
                && z.re <= bx.re.hi.to_f64().unwrap()
                && bx.im.lo.to_f64().unwrap() <= z.im
                && z.im <= bx.im.hi.to_f64().unwrap();
            if inside {
                hits.push((f.clone(), z));
            }
        }
    }
    if hits.len() != 1 {
        return Err(Error::IsolationFailure(format!(
            "box contains {} roots of the defining polynomial",
            hits.len()
        )));
    }
    let (f, z) = hits.pop().unwrap();
    if f.len() == 2 {
        return Ok(f[0].neg());
    }
    push_level(&mut reg, &f, z)
}

/// Convenience wrapper: adjoin the root nearest to a floating-point guess.
pub fn extend_near(defining: &[Scalar], guess: Complex64, half_width: f64) -> Result<Scalar> {
    let r = c64_to_q(half_width);
    let bx = CRect::around(&c64_to_q(guess.re), &c64_to_q(guess.im), &r);
    extend_tower(defining, &bx)
}

fn all_roots_squarefree(reg: &mut Registry, g: &[Scalar], out: &mut Vec<Scalar>) -> Result<()> {
    if g.len() < 2 {
        return Ok(());
    }
    let mut g = g.to_vec();
    for z in numeric_roots(&g) {
        if let Some(c) = cheap_root(reg, &g, z) {
            let (q, r) = upoly::divrem(&g, &[c.neg(), Scalar::one()]);
            if r.is_empty() {
                out.push(c);
                g = q;
            }
        }
    }
    if g.len() < 2 {
        return Ok(());
    }
    let factors = factor_over_top(reg, &g)?;
    let mut iter = factors.into_iter();
    while let Some(h) = iter.next() {
        if h.len() == 2 {
            out.push(h[0].neg().div(&h[1]));
            continue;
        }
        let mut zs = numeric_roots(&h);
        zs.sort_by_key(|z| numeric::canonical_key(*z));
        let alpha = push_level(reg, &h, zs[0])?;
        out.push(alpha.clone());
        let lin = vec![alpha.neg(), Scalar::one()];
        let (rest, r) = upoly::divrem(&h, &lin);
        if !r.is_empty() {
            return Err(Error::Internal("adjoined root does not divide its factor".into()));
        }
        all_roots_squarefree(reg, &rest, out)?;
        // the other factors may split over the new level
        for h in iter.by_ref() {
            all_roots_squarefree(reg, &h, out)?;
        }
    }
    Ok(())
}

/// All roots of a univariate polynomial over the tower, with multiplicities,
/// in canonical numeric order. The tower is extended as needed.
pub fn roots(p: &[Scalar]) -> Result<Vec<(Scalar, usize)>> {
    let p = upoly::trimmed(p.to_vec());
    if p.is_empty() {
        return Err(Error::EmptyInput("roots of the zero polynomial".into()));
    }
    let mut out = Vec::new();
    let mut reg = lock();
    for (f, m) in upoly::squarefree_decomposition(&p) {
        let mut rs = Vec::new();
        all_roots_squarefree(&mut reg, &f, &mut rs)?;
        out.extend(rs.into_iter().map(|r| (r, m)));
    }
    drop(reg);
    out.sort_by_key(|(r, _)| r.sort_key());
    Ok(out)
}

fn zeta_cache() -> &'static Mutex<HashMap<u64, Scalar>> {
    ZETA.with(|c| *c)
}

fn tower_degree() -> usize {
    let mut d = 1;
    let mut l = top_level();
    while let Some(x) = l {
        d *= x.degree();
        l = x.parent().cloned();
    }
    d
}

/// Drop the tower of the current thread. Scalars built before stay valid but
/// must not be mixed with ones built afterwards.
pub fn reset_tower() {
    lock().top = None;
    zeta_cache().lock().unwrap().clear();
}

/// Run `f` on a fresh tower and put the current one back afterwards. Only
/// results free of tower elements may leave `f`.
pub fn isolated_tower<T>(f: impl FnMut() -> Result<T>) -> Result<T> {
    let saved = lock().top.clone();
    let cache = zeta_cache().lock().unwrap().clone();
    let r = with_fresh_tower(f);
    lock().top = saved;
    *zeta_cache().lock().unwrap() = cache;
    r
}

/// Run `f` on a fresh tower. When `f` needs a root of unity that is not
/// cheaply available above the tower it built, start again with that root
/// adjoined first.
pub fn with_fresh_tower<T>(mut f: impl FnMut() -> Result<T>) -> Result<T> {
    let mut seed = 1u64;
    loop {
        reset_tower();
        if seed > 2 {
            zeta(seed)?;
        }
        match f() {
            Err(Error::RootOfUnityNeeded(n)) if !seed.is_multiple_of(n) && seed < 10_000 => {
                seed = num_integer::lcm(seed, n);
            }
            r => return r,
        }
    }
}

/// The primitive root of unity `exp(2 pi i / n)`.
pub fn zeta(n: u64) -> Result<Scalar> {
    assert!(n > 0);
    if n == 1 {
        return Ok(Scalar::one());
    }
    if n == 2 {
        return Ok(Scalar::from_int(-1));
    }
    let hit = {
        let c = zeta_cache().lock().unwrap();
        c.get(&n).cloned().or_else(|| {
            c.iter().find(|(m, _)| *m % n == 0).map(|(m, z)| z.pow((m / n) as u32))
        })
    };
    if let Some(z) = hit {
        zeta_cache().lock().unwrap().insert(n, z.clone());
        return Ok(z);
    }
    let p = cyclotomic(n);
    if top_level().is_some() && (p.len() - 1) * tower_degree() > 16 {
        return Err(Error::RootOfUnityNeeded(n));
    }
    let target = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
    let hw = (std::f64::consts::PI / n as f64).sin() * 0.5;
    let z = if top_level().is_none() {
        // Φ_n is irreducible over the rationals
        push_level(&mut lock(), &p, target)?
    } else {
        extend_near(&p, target, hw)?
    };
    zeta_cache().lock().unwrap().insert(n, z.clone());
    Ok(z)
}

/// `Φ_n`, by dividing `x^n - 1` by `Φ_d` for the proper divisors `d`.
pub fn cyclotomic(n: u64) -> UPoly {
    let mut p = vec![Scalar::zero(); n as usize + 1];
    p[0] = Scalar::from_int(-1);
    p[n as usize] = Scalar::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = upoly::divrem(&p, &cyclotomic(d)).0;
    }
    p
}

/// `exp(2 pi i k / n)` as an exact scalar.
pub fn root_of_unity(k: i64, n: u64) -> Result<Scalar> {
    let k = k.rem_euclid(n as i64);
    if k == 0 {
        return Ok(Scalar::one());
    }
    let g = num_integer::gcd(k as u64, n);
    let (k, n) = (k as u64 / g, n / g);
    Ok(zeta(n)?.pow(k as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&c| Scalar::from_int(c)).collect()
    }

    #[test]
    fn imaginary_unit() {
        let i = extend_near(&poly(&[1, 0, 1]), Complex64::new(0.0, 1.0), 0.5).unwrap();
        assert_eq!(i.mul(&i), Scalar::from_int(-1));
        assert!((i.to_c64() - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn sqrt_two() {
        let r = extend_near(&poly(&[-2, 0, 1]), Complex64::new(1.41, 0.0), 0.1).unwrap();
        assert!(r.mul(&r).sub(&Scalar::from_int(2)).is_zero());
        assert!(r.to_c64().re > 1.41);
    }

    #[test]
    fn primitive_cube_root() {
        let z = zeta(3).unwrap();
        let s = Scalar::one().add(&z).add(&z.mul(&z));
        assert!(s.is_zero());
        assert!(!z.sub(&Scalar::one()).is_zero());
    }

    #[test]
    fn linear_factor_stays_in_tower() {
        // v^2 - 4 has the rational root 2: no new level.
        let r = extend_near(&poly(&[-4, 0, 1]), Complex64::new(2.0, 0.0), 0.5).unwrap();
        assert_eq!(r, Scalar::from_int(2));
    }

    #[test]
    fn inverse_in_extension() {
        let r = extend_near(&poly(&[-3, 0, 1]), Complex64::new(1.7, 0.0), 0.1).unwrap();
        let a = r.add(&Scalar::one());
        assert_eq!(a.mul(&a.inv()), Scalar::one());
    }

    #[test]
    fn roots_of_unity_quartic() {
        let rs = roots(&poly(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(rs.len(), 4);
        for (r, m) in rs {
            assert_eq!(m, 1);
            assert_eq!(r.pow(4), Scalar::one());
        }
    }
}
