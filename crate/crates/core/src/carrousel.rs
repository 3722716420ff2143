//! The carrousel: polar quotients, first-exponent pairs, the vertical polar
//! zone ladder and the approximation tori with their suns.
//!
//! Radii are symbolic monomials `η^a α^b` under `0 < η ≪ θ ≪ α`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::geometry::ScaleProfile;
use crate::puiseux::{exp_serde, BranchExpansion, Exp};

/// `(q/p, e/d')`, ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentPair {
    #[serde(with = "exp_serde")]
    pub q_over_p: Exp,
    #[serde(with = "exp_serde")]
    pub e_over_dprime: Exp,
}

impl ExponentPair {
    pub fn new(q_over_p: Exp, e_over_dprime: Exp) -> Self {
        ExponentPair { q_over_p, e_over_dprime }
    }

    pub fn of(b: &BranchExpansion) -> Self {
        ExponentPair::new(b.q_over_p, b.e_over_dprime)
    }

    /// `|y| ~ η^(q/p) α^(e/d')` along the braid.
    pub fn modulus(&self) -> Radius {
        Radius::Mono { eta: self.q_over_p, alpha: self.e_over_dprime }
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.q_over_p, self.e_over_dprime)
    }
}

/// Farey mediant of two reduced fractions.
pub fn mediant(a: Exp, b: Exp) -> Exp {
    Exp::new(a.numer() + b.numer(), a.denom() + b.denom())
}

/// A symbolic radius in the disc `{|y| ≤ θ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Radius {
    Zero,
    Mono {
        #[serde(with = "exp_serde")]
        eta: Exp,
        #[serde(with = "exp_serde")]
        alpha: Exp,
    },
    Theta,
}

impl Radius {
    pub fn eta(e: Exp) -> Self {
        Radius::Mono { eta: e, alpha: Exp::zero() }
    }

    /// Strict inequality valid for all small enough radii, `None` if undecided.
    pub fn compare(&self, o: &Radius) -> Option<Ordering> {
        use Radius::*;
        match (self, o) {
            (Zero, Zero) | (Theta, Theta) => Some(Ordering::Equal),
            (Zero, _) => Some(Ordering::Less),
            (_, Zero) => Some(Ordering::Greater),
            (Mono { eta, .. }, Theta) => eta.is_positive().then_some(Ordering::Less),
            (Theta, Mono { eta, .. }) => eta.is_positive().then_some(Ordering::Greater),
            (Mono { eta: a, alpha: b }, Mono { eta: c, alpha: d }) => {
                Some(ScaleProfile::compare_monomials((*a, *b), (*c, *d)))
            }
        }
    }

    pub fn lt(&self, o: &Radius) -> bool {
        self.compare(o) == Some(Ordering::Less)
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Zero => write!(f, "0"),
            Radius::Theta => write!(f, "θ"),
            Radius::Mono { eta, alpha } if alpha.is_zero() => write!(f, "η^({})", eta),
            Radius::Mono { eta, alpha } => write!(f, "η^({})·α^({})", eta, alpha),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZoneKind {
    SolidTorus,
    ThickenedTorus,
}

/// `Z_(i,j) = {inner ≤ |y| ≤ outer}` in `T`; on the disc `D` it is the annulus `C(i,j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Zone {
    pub index: (usize, usize),
    pub kind: ZoneKind,
    pub inner: Radius,
    pub outer: Radius,
    pub pair: ExponentPair,
}

impl Zone {
    /// The open zone contains the radius `r`.
    pub fn contains(&self, r: &Radius) -> bool {
        self.inner.lt(r) && r.lt(&self.outer)
    }
}

/// Quotients and second exponents grouped by quotient, both decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstExponents {
    pub quotients: Vec<Exp>,
    pub seconds: Vec<Vec<Exp>>,
    /// 1-based `(i, j)` for each input expansion.
    pub assignment: Vec<(usize, usize)>,
}

impl FirstExponents {
    pub fn pairs(&self) -> Vec<ExponentPair> {
        let mut out = Vec::new();
        for (q, es) in self.quotients.iter().zip(&self.seconds) {
            out.extend(es.iter().map(|e| ExponentPair::new(*q, *e)));
        }
        out
    }
}

/// Order the pairs of a set of branch expansions.
pub fn first_exponent_pairs(expansions: &[BranchExpansion]) -> Result<FirstExponents> {
    for b in expansions {
        b.check_invariants()
            .map_err(|e| Error::InconsistentBranchSet(format!("uncertified expansion: {}", e)))?;
    }
    let pairs: Vec<ExponentPair> = expansions.iter().map(ExponentPair::of).collect();
    group_pairs(&pairs)
}

fn group_pairs(pairs: &[ExponentPair]) -> Result<FirstExponents> {
    let mut quotients: Vec<Exp> = pairs.iter().map(|p| p.q_over_p).collect();
    quotients.sort_by(|a, b| b.cmp(a));
    quotients.dedup();
    let mut seconds = Vec::new();
    for q in &quotients {
        let mut es: Vec<Exp> = pairs.iter().filter(|p| p.q_over_p == *q).map(|p| p.e_over_dprime).collect();
        es.sort_by(|a, b| b.cmp(a));
        es.dedup();
        seconds.push(es);
    }
    let assignment = pairs
        .iter()
        .map(|p| {
            let i = quotients.iter().position(|q| *q == p.q_over_p).unwrap();
            let j = seconds[i].iter().position(|e| *e == p.e_over_dprime).unwrap();
            (i + 1, j + 1)
        })
        .collect();
    Ok(FirstExponents { quotients, seconds, assignment })
}

/// Vertical polar zones `Z_(1,1), Z_(1,2), ..., Z_(k,l_k)` from the innermost outwards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZoneLadder {
    #[serde(with = "exp_vec")]
    pub quotients: Vec<Exp>,
    #[serde(with = "exp_vec_vec")]
    pub seconds: Vec<Vec<Exp>>,
    /// `s_i`, `q_(i+1)/p_(i+1) < s_i < q_i/p_i`.
    #[serde(with = "exp_vec")]
    pub s: Vec<Exp>,
    /// `ν_(i,j)`, `e_(i,j+1)/d'_(i,j+1) < ν_(i,j) < e_(i,j)/d'_(i,j)`.
    #[serde(with = "exp_vec_vec")]
    pub nu: Vec<Vec<Exp>>,
    pub zones: Vec<Zone>,
}

pub fn build_zone_ladder(pairs: &[ExponentPair]) -> Result<ZoneLadder> {
    if pairs.is_empty() {
        return Err(Error::EmptyInput("no exponent pairs".into()));
    }
    let FirstExponents { quotients, seconds, .. } = group_pairs(pairs)?;
    let k = quotients.len();
    let s: Vec<Exp> = quotients.windows(2).map(|w| mediant(w[1], w[0])).collect();
    let nu: Vec<Vec<Exp>> = seconds
        .iter()
        .map(|es| es.windows(2).map(|w| mediant(w[1], w[0])).collect())
        .collect();
    let mut zones = Vec::new();
    for i in 0..k {
        let q = quotients[i];
        let l = seconds[i].len();
        for j in 0..l {
            let inner = if j > 0 {
                Radius::Mono { eta: q, alpha: nu[i][j - 1] }
            } else if i > 0 {
                Radius::eta(s[i - 1])
            } else {
                Radius::Zero
            };
            let outer = if j + 1 < l {
                Radius::Mono { eta: q, alpha: nu[i][j] }
            } else if i + 1 < k {
                Radius::eta(s[i])
            } else {
                Radius::Theta
            };
            zones.push(Zone {
                index: (i + 1, j + 1),
                kind: if i == 0 && j == 0 { ZoneKind::SolidTorus } else { ZoneKind::ThickenedTorus },
                inner,
                outer,
                pair: ExponentPair::new(q, seconds[i][j]),
            });
        }
    }
    Ok(ZoneLadder { quotients, seconds, s, nu, zones })
}

impl ZoneLadder {
    pub fn zone(&self, index: (usize, usize)) -> Option<&Zone> {
        self.zones.iter().find(|z| z.index == index)
    }

    pub fn contains_pair(&self, p: &ExponentPair) -> bool {
        self.zones.iter().any(|z| z.pair == *p)
    }

    /// Coverage of `[0, θ]`, strict separators, and consecutive-only intersections.
    pub fn verify(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Internal(format!("zone ladder: {}", m)));
        for (i, w) in self.quotients.windows(2).enumerate() {
            if !(w[1] < self.s[i] && self.s[i] < w[0]) {
                return fail(format!("s_{} not strictly between quotients", i + 1));
            }
        }
        for (i, es) in self.seconds.iter().enumerate() {
            for (j, w) in es.windows(2).enumerate() {
                let v = self.nu[i][j];
                if !(w[1] < v && v < w[0]) {
                    return fail(format!("ν_({},{}) not strictly between", i + 1, j + 1));
                }
            }
        }
        let (first, last) = match (self.zones.first(), self.zones.last()) {
            (Some(a), Some(b)) => (a, b),
            _ => return fail("no zones".into()),
        };
        if first.inner != Radius::Zero || last.outer != Radius::Theta {
            return fail("zones do not cover [0, θ]".into());
        }
        for (n, z) in self.zones.iter().enumerate() {
            if !z.inner.lt(&z.outer) {
                return fail(format!("empty zone {:?}", z.index));
            }
            if (z.kind == ZoneKind::SolidTorus) != (n == 0) {
                return fail(format!("zone {:?} has the wrong kind", z.index));
            }
            if n > 0 && self.zones[n - 1].outer != z.inner {
                return fail(format!("zones {:?} and {:?} do not share a boundary", self.zones[n - 1].index, z.index));
            }
            for w in self.zones.iter().skip(n + 2) {
                if !z.outer.lt(&w.inner) {
                    return fail(format!("zones {:?} and {:?} meet", z.index, w.index));
                }
            }
        }
        Ok(())
    }
}

/// Why a braid lies in the interior of its zone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCertificate {
    pub modulus: Radius,
    pub inner: Radius,
    pub outer: Radius,
}

impl fmt::Display for MembershipCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} < {} < {}", self.inner, self.modulus, self.outer)
    }
}

pub fn classify_pair(pair: &ExponentPair, ladder: &ZoneLadder) -> Result<((usize, usize), MembershipCertificate)> {
    if !ladder.contains_pair(pair) {
        return Err(Error::StaleLadder(format!("pair {} is not in the ladder", pair)));
    }
    let m = pair.modulus();
    let mut hits = ladder.zones.iter().filter(|z| z.contains(&m));
    match (hits.next(), hits.next()) {
        (Some(z), None) => Ok((z.index, MembershipCertificate { modulus: m, inner: z.inner, outer: z.outer })),
        (None, _) => Err(Error::Internal(format!("no zone certifies {}", pair))),
        (Some(_), Some(_)) => Err(Error::Internal(format!("several zones certify {}", pair))),
    }
}

/// The zone whose interior contains the braid of `b`, decided by exponent comparison.
pub fn classify_zone_membership(
    b: &BranchExpansion,
    ladder: &ZoneLadder,
) -> Result<((usize, usize), MembershipCertificate)> {
    classify_pair(&ExponentPair::of(b), ladder)
}

/// Disjointness data of one approximation torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCertificates {
    /// `|b(1 - ζ)| ≠ 0` for the `l - 1` roots `ζ ≠ 1`, dominating `3 α^(1/(2d))`.
    pub sun_separation: bool,
    /// `ν_inner > e/d'`, `ν_outer < e/d' < ρ` (α-exponents, `None` at ladder ends).
    #[serde(with = "exp_opt")]
    pub nu_inner: Option<Exp>,
    #[serde(with = "exp_opt")]
    pub nu_outer: Option<Exp>,
    pub tube_in_zone: bool,
    /// Indices of the other tori of the same pair, each with `(b̃/b)^l ≠ 1`.
    pub separated_from: Vec<usize>,
}

/// The tube `N(G'_t)` around `App(G'_t)` together with its suns.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxTorus {
    /// Indices into the expansion list.
    pub members: Vec<usize>,
    pub pair: ExponentPair,
    /// Defined up to `l`-th roots of unity.
    pub leading_b: Scalar,
    pub l: i64,
    pub d: i64,
    pub rho: Exp,
    pub zone_index: (usize, usize),
    pub certificates: TorusCertificates,
}

impl ApproxTorus {
    pub fn sun_count(&self) -> usize {
        self.l as usize
    }

    /// The y-coordinates of the suns, given numeric `s^l = a` and `τ^l = t`.
    pub fn suns_c64(&self, s: num_complex::Complex64, tau: num_complex::Complex64) -> Vec<num_complex::Complex64> {
        let e = *self.pair.e_over_dprime.numer() * (self.l / self.pair.e_over_dprime.denom());
        let q = *self.pair.q_over_p.numer() * (self.l / self.pair.q_over_p.denom());
        let b = self.leading_b.to_c64();
        (0..self.l)
            .map(|k| {
                let xi = num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / self.l as f64);
                b * xi * s.powi(e as i32) * tau.powi(q as i32)
            })
            .collect()
    }
}

/// `ζ b = b̃` for some `ζ^l = 1`.
pub fn same_up_to_roots(b: &Scalar, bt: &Scalar, l: i64) -> bool {
    bt.div(b).pow(l as u32).is_one()
}

pub fn approximation_tori(expansions: &[BranchExpansion], ladder: &ZoneLadder) -> Result<Vec<ApproxTorus>> {
    let mut tori: Vec<ApproxTorus> = Vec::new();
    for (n, b) in expansions.iter().enumerate() {
        let pair = ExponentPair::of(b);
        let (zone_index, _) = classify_pair(&pair, ladder)?;
        let l = pair.e_over_dprime.denom().lcm(pair.q_over_p.denom());
        match tori.iter_mut().find(|t| t.pair == pair && same_up_to_roots(&t.leading_b, &b.b, l)) {
            Some(t) => {
                t.members.push(n);
                t.d = t.d.lcm(&b.d);
            }
            None => tori.push(ApproxTorus {
                members: vec![n],
                pair,
                leading_b: b.b.clone(),
                l,
                d: b.d,
                rho: Exp::zero(),
                zone_index,
                certificates: TorusCertificates {
                    sun_separation: false,
                    nu_inner: None,
                    nu_outer: None,
                    tube_in_zone: false,
                    separated_from: Vec::new(),
                },
            }),
        }
    }
    tori.sort_by(|a, b| a.zone_index.cmp(&b.zone_index).then(a.leading_b.sort_key().cmp(&b.leading_b.sort_key())));
    for n in 0..tori.len() {
        let (i, j) = tori[n].zone_index;
        let e = tori[n].pair.e_over_dprime;
        let rho = e + Exp::new(1, 2 * tori[n].d);
        let nu_inner = (j > 1).then(|| ladder.nu[i - 1][j - 2]);
        let nu_outer = (j < ladder.seconds[i - 1].len()).then(|| ladder.nu[i - 1][j - 1]);
        let tube_in_zone = nu_inner.is_none_or(|v| v > e) && nu_outer.is_none_or(|v| v < e) && e < rho;
        let mut separated_from = Vec::new();
        for m in 0..tori.len() {
            if m == n || tori[m].pair != tori[n].pair {
                continue;
            }
            if same_up_to_roots(&tori[n].leading_b, &tori[m].leading_b, tori[n].l) {
                return Err(Error::Internal("two approximation tori share their torus link".into()));
            }
            separated_from.push(m);
        }
        let t = &mut tori[n];
        t.rho = rho;
        t.certificates = TorusCertificates {
            sun_separation: !t.leading_b.is_zero(),
            nu_inner,
            nu_outer,
            tube_in_zone,
            separated_from,
        };
        if !tube_in_zone {
            return Err(Error::Internal(format!("tube of pair {} leaves its zone", t.pair)));
        }
    }
    Ok(tori)
}

/// Serde helpers for exponent collections.
mod exp_vec {
    use super::Exp;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Exp], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|e| format!("{}/{}", e.numer(), e.denom())).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Exp>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| crate::puiseux::exp_serde::parse(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational '{}'", s))))
            .collect()
    }
}

mod exp_vec_vec {
    use super::Exp;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<Exp>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.iter().map(|e| format!("{}/{}", e.numer(), e.denom())).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Exp>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        crate::puiseux::exp_serde::parse(s)
                            .ok_or_else(|| serde::de::Error::custom(format!("bad rational '{}'", s)))
                    })
                    .collect()
            })
            .collect()
    }
}

mod exp_opt {
    use super::Exp;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Exp>, s: S) -> Result<S::Ok, S::Error> {
        v.map(|e| format!("{}/{}", e.numer(), e.denom())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Exp>, D::Error> {
        match Option::<String>::deserialize(d)? {
            None => Ok(None),
            Some(s) => crate::puiseux::exp_serde::parse(&s)
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational '{}'", s))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MultiPoly, Var};
    use crate::geometry::{discriminant_surface, SurfaceGerm};
    use crate::puiseux::{exp, nested_expand};

    fn pair(a: (i64, i64), b: (i64, i64)) -> ExponentPair {
        ExponentPair::new(exp(a.0, a.1), exp(b.0, b.1))
    }

    fn hirzebruch(m: u32, k: u32, l: u32) -> Vec<BranchExpansion> {
        let v = MultiPoly::var;
        let f = v(Var::Z).pow(m).sub(&v(Var::X).pow(k).mul(&v(Var::Y).pow(l)));
        let g = SurfaceGerm::new(f).unwrap();
        let d = discriminant_surface(&g).unwrap();
        nested_expand(&d.d, exp(4, 1)).unwrap()
    }

    #[test]
    fn mediant_examples() {
        assert_eq!(mediant(exp(1, 2), exp(3, 2)), exp(1, 1));
        assert_eq!(mediant(exp(-1, 2), exp(0, 1)), exp(-1, 3));
    }

    #[test]
    fn hirzebruch_212_single_zone() {
        let bs = hirzebruch(2, 1, 2);
        let fe = first_exponent_pairs(&bs).unwrap();
        assert_eq!(fe.quotients, vec![exp(1, 2)]);
        assert_eq!(fe.seconds, vec![vec![exp(-1, 2)]]);
        assert!(fe.assignment.iter().all(|a| *a == (1, 1)));
        let ladder = build_zone_ladder(&fe.pairs()).unwrap();
        assert_eq!(ladder.zones.len(), 1);
        assert_eq!(ladder.zones[0].kind, ZoneKind::SolidTorus);
        assert_eq!(ladder.zones[0].outer, Radius::Theta);
        assert!(ladder.s.is_empty());
        ladder.verify().unwrap();
        for b in &bs {
            assert_eq!(classify_zone_membership(b, &ladder).unwrap().0, (1, 1));
        }
    }

    #[test]
    fn two_quotient_ladder() {
        let ps = [pair((1, 2), (-1, 2)), pair((3, 2), (0, 1))];
        let fe = group_pairs(&ps).unwrap();
        assert_eq!(fe.quotients, vec![exp(3, 2), exp(1, 2)]);
        assert_eq!(fe.assignment, vec![(2, 1), (1, 1)]);
        let ladder = build_zone_ladder(&ps).unwrap();
        assert_eq!(ladder.s, vec![exp(1, 1)]);
        ladder.verify().unwrap();
        assert_eq!(classify_pair(&ps[1], &ladder).unwrap().0, (1, 1));
        let (z, cert) = classify_pair(&ps[0], &ladder).unwrap();
        assert_eq!(z, (2, 1));
        assert!(!ladder.zone((1, 1)).unwrap().contains(&ps[0].modulus()));
        assert_eq!(cert.inner, Radius::eta(exp(1, 1)));
    }

    #[test]
    fn second_exponent_separator() {
        let ps = [pair((1, 2), (0, 1)), pair((1, 2), (-1, 2))];
        let ladder = build_zone_ladder(&ps).unwrap();
        assert_eq!(ladder.nu, vec![vec![exp(-1, 3)]]);
        ladder.verify().unwrap();
        assert_eq!(classify_pair(&ps[0], &ladder).unwrap().0, (1, 1));
        assert_eq!(classify_pair(&ps[1], &ladder).unwrap().0, (1, 2));
    }

    #[test]
    fn stale_ladder() {
        let ladder = build_zone_ladder(&[pair((1, 2), (0, 1))]).unwrap();
        assert!(matches!(classify_pair(&pair((1, 3), (0, 1)), &ladder), Err(Error::StaleLadder(_))));
    }

    #[test]
    fn conjugate_branches_share_a_torus() {
        let bs = hirzebruch(2, 1, 2);
        let ladder = build_zone_ladder(&first_exponent_pairs(&bs).unwrap().pairs()).unwrap();
        let tori = approximation_tori(&bs, &ladder).unwrap();
        assert_eq!(tori.len(), 1);
        assert_eq!(tori[0].l, 2);
        assert_eq!(tori[0].d, 2);
        assert_eq!(tori[0].rho, exp(-1, 4));
        assert!(tori[0].certificates.tube_in_zone);
    }

    #[test]
    fn distinct_leading_coefficients_give_disjoint_tori() {
        let mut bs = hirzebruch(2, 2, 2);
        assert!(!bs.is_empty());
        let mut other = bs[0].clone();
        other.b = bs[0].b.mul(&Scalar::from_int(2));
        bs.truncate(1);
        bs.push(other);
        let ladder = build_zone_ladder(&first_exponent_pairs(&bs).unwrap().pairs()).unwrap();
        let tori = approximation_tori(&bs, &ladder).unwrap();
        assert_eq!(tori.len(), 2);
        assert_eq!(tori[0].certificates.separated_from, vec![1]);
    }

    #[test]
    fn root_of_unity_test() {
        let i = crate::algebra::root_of_unity(1, 4).unwrap();
        assert!(same_up_to_roots(&Scalar::one(), &i, 4));
        assert!(!same_up_to_roots(&Scalar::one(), &i, 2));
        assert!(!same_up_to_roots(&Scalar::one(), &Scalar::from_int(2), 6));
    }
}
