//! Lift the carrousel through `Ψ_t`: monodromy data, filled solid tori,
//! Seifert pieces per zone, the decomposition graph and the trunk verdicts.
//!
//! Exact data (sun permutation, transversal branches, Riemann-Hurwitz totals)
//! comes from the expansions. Sheet permutations over the fiber `F_(t,a)` are
//! obtained by numerical continuation at a sample `(a, t)`, checked against the
//! exact counts before use.

pub mod tracking;

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64 as C;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{MultiPoly, Var};
use crate::carrousel::{ApproxTorus, ZoneLadder};
use crate::error::{Error, Result};
use crate::geometry::{DiscriminantSurface, SurfaceGerm, TransversalInvariants};
use crate::puiseux::{self, exp_serde, BranchExpansion, Exp, NestedSeries, Permutation};
use tracking::{orbits, Piece, SheetField};

/// Numeric sample values `a = α`, `t = η` for the sheet model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericScales {
    pub alpha: f64,
    pub eta: f64,
}

/// Tried in order until every numeric check passes.
pub const SCALE_LADDER: [NumericScales; 5] = [
    NumericScales { alpha: 0.5, eta: 1e-6 },
    NumericScales { alpha: 0.3, eta: 1e-10 },
    NumericScales { alpha: 0.1, eta: 1e-14 },
    NumericScales { alpha: 0.05, eta: 1e-20 },
    NumericScales { alpha: 0.02, eta: 1e-30 },
];

/// Expand every factor of the discriminant carrying t, keeping its multiplicity
/// in `Res_z(f - t, f_z)`.
pub fn discriminant_branches(
    disc: &DiscriminantSurface,
    order: Exp,
    x_prec: Exp,
) -> Result<Vec<(BranchExpansion, u32)>> {
    let mut out = Vec::new();
    for (g, m) in &disc.factors {
        if !g.involves(Var::T) || *g == MultiPoly::var(Var::T) {
            continue;
        }
        for b in puiseux::nested_expand_with(g, order, x_prec)? {
            out.push((b, *m));
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyInput("the discriminant has no branch through the origin".into()));
    }
    out.sort_by(|(a, _), (b, _)| {
        b.q_over_p
            .cmp(&a.q_over_p)
            .then(b.e_over_dprime.cmp(&a.e_over_dprime))
            .then(a.b.sort_key().cmp(&b.b.sort_key()))
    });
    Ok(out)
}

/// A sun `b ξ^k a^(e/d') t^(q/p)` of an approximation torus, at the sample scales.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sun {
    pub torus: usize,
    pub k: usize,
    pub zone: (usize, usize),
    pub position: (f64, f64),
    pub radius: f64,
    /// Branch points of `Γ_a` inside the solar disc, with multiplicity.
    pub branch_points: usize,
}

impl Sun {
    fn c(&self) -> C {
        C::new(self.position.0, self.position.1)
    }
}

/// Sheets at the point of a solar-disc boundary from which its lasso starts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TubeSheets {
    pub sun: usize,
    /// Loop around the solar disc.
    pub sigma: Permutation,
    /// `d'` turns of x following the sun.
    pub phi: Permutation,
    /// Zone base label `i` continues to local label `from_base[i]`.
    pub from_base: Vec<usize>,
}

/// Sheets near `y = 0` in the innermost zone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentralSheets {
    pub from_base: Vec<usize>,
    /// Fiber loop at a small `y_ε`.
    pub phi_eps: Permutation,
    /// Label at `y_ε` to label at `y = 0`.
    pub eps_to_zero: Vec<usize>,
    /// x-loop at `y = 0`.
    pub h0: Permutation,
}

/// Sheet permutations attached to one vertical polar zone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZoneSheets {
    pub zone: (usize, usize),
    pub e: i64,
    pub d_prime: i64,
    /// Base point on the outer boundary circle of the zone.
    pub basepoint: (f64, f64),
    pub outer_circle: Permutation,
    pub h: Permutation,
    pub fiber: Permutation,
    /// Lassos around every sun of the zone, based at the base point.
    pub lassos: Vec<(usize, Permutation)>,
    /// Base label to label at the previous zone's base point.
    pub inner_from_base: Option<Vec<usize>>,
    /// One entry per x-orbit of suns.
    pub tubes: Vec<TubeSheets>,
    pub central: Option<CentralSheets>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonodromyData {
    /// x-loop on all suns.
    pub sun_permutation: Permutation,
    pub suns: Vec<Sun>,
    /// x-loop on the z-sheets over the outermost base point.
    pub sheet_permutation: Permutation,
    /// Classes of the transversal branches of `f_a` grouped by the x-loop.
    pub transversal_branch_orbits: Vec<Vec<usize>>,
    /// x-loop on all conjugates of the transversal branches.
    pub transversal_permutation: Permutation,
    pub transversal_denominator: i64,
    pub fiber: TransversalInvariants,
    pub n_loc: usize,
    pub scales: NumericScales,
    pub zones: Vec<ZoneSheets>,
}

impl MonodromyData {
    pub fn boundary_tori(&self) -> usize {
        self.transversal_branch_orbits.len()
    }
}

/// Exact x-loop action on the transversal branches `z(y)` of `f_a`.
fn transversal_action(f: &MultiPoly, order: Exp) -> Result<(Vec<Vec<usize>>, Permutation, i64, Permutation)> {
    if f.is_rational() {
        crate::algebra::scalar::isolated_tower(|| transversal_in_tower(f, order))
    } else {
        transversal_in_tower(f, order)
    }
}

fn transversal_in_tower(f: &MultiPoly, order: Exp) -> Result<(Vec<Vec<usize>>, Permutation, i64, Permutation)> {
    let classes = puiseux::puiseux_expand(f, Var::Z, Var::Y, order)?;
    let mut conj: Vec<NestedSeries> = Vec::new();
    let mut owner = Vec::new();
    for (n, c) in classes.iter().enumerate() {
        for s in c.conjugates()? {
            conj.push(s);
            owner.push(n);
        }
    }
    let xp = puiseux::monodromy_permutation(&conj, Var::X)?;
    let yp = puiseux::monodromy_permutation(&conj, Var::Y)?;
    let den = conj
        .iter()
        .flat_map(|s| s.terms().iter().map(|(_, c)| c.denominator()))
        .fold(1i64, |a, d| a.lcm(&d));
    let class_perm = Permutation { images: (0..conj.len()).map(|i| owner[xp.images[i]]).collect() };
    let mut gens = vec![Permutation::identity(classes.len())];
    for (i, &o) in owner.iter().enumerate() {
        let mut img: Vec<usize> = (0..classes.len()).collect();
        img[o] = class_perm.images[i];
        img[class_perm.images[i]] = o;
        gens.push(Permutation { images: img });
    }
    let refs: Vec<&Permutation> = gens.iter().collect();
    Ok((orbits(classes.len(), &refs), xp, den, yp))
}

struct Layout {
    suns: Vec<Sun>,
    /// Outer radius of each zone in ladder order.
    r_out: Vec<f64>,
    phi0: f64,
}

fn ang_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

fn branch_points_per_sun(t: &ApproxTorus, expansions: &[(BranchExpansion, u32)]) -> Result<usize> {
    let total: usize = t.members.iter().map(|&m| expansions[m].0.class_size * expansions[m].1 as usize).sum();
    if !total.is_multiple_of(t.l as usize) {
        return Err(Error::Internal("branch points do not split evenly among the suns".into()));
    }
    Ok(total / t.l as usize)
}

fn layout(
    ladder: &ZoneLadder,
    tori: &[ApproxTorus],
    expansions: &[(BranchExpansion, u32)],
    sc: NumericScales,
) -> Result<Layout> {
    let mut suns = Vec::new();
    for (n, t) in tori.iter().enumerate() {
        let (q, e) = (t.pair.q_over_p, t.pair.e_over_dprime);
        let big_e = (e * Exp::from(t.l)).to_integer();
        let big_q = (q * Exp::from(t.l)).to_integer();
        let s = C::new(sc.alpha.powf(1.0 / t.l as f64), 0.0);
        let tau = C::new(sc.eta.powf(1.0 / t.l as f64), 0.0);
        let b = t.leading_b.to_c64();
        let bd = branch_points_per_sun(t, expansions)?;
        for k in 0..t.l as usize {
            let xi = C::from_polar(1.0, 2.0 * PI * k as f64 / t.l as f64);
            let c = b * xi * s.powi(big_e as i32) * tau.powi(big_q as i32);
            suns.push(Sun { torus: n, k, zone: t.zone_index, position: (c.re, c.im), radius: 0.0, branch_points: bd });
        }
    }
    for i in 0..suns.len() {
        let c = suns[i].c();
        let mut r = 0.3 * c.norm();
        for (j, o) in suns.iter().enumerate() {
            if j != i {
                r = r.min(0.3 * (c - o.c()).norm());
            }
        }
        if r <= 0.0 {
            return Err(Error::ClusteringError("coincident suns at the sample scales".into()));
        }
        suns[i].radius = r;
    }
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for z in &ladder.zones {
        let zs: Vec<&Sun> = suns.iter().filter(|s| s.zone == z.index).collect();
        if zs.is_empty() {
            return Err(Error::Internal(format!("zone {:?} has no sun", z.index)));
        }
        lo.push(zs.iter().map(|s| s.c().norm() - s.radius).fold(f64::INFINITY, f64::min));
        hi.push(zs.iter().map(|s| s.c().norm() + s.radius).fold(0.0, f64::max));
    }
    let mut r_out = Vec::new();
    for n in 0..hi.len() {
        if n + 1 < hi.len() {
            if hi[n] * 1.5 >= lo[n + 1] {
                return Err(Error::ClusteringError("zones are not separated at the sample scales".into()));
            }
            r_out.push((hi[n] * lo[n + 1]).sqrt());
        } else {
            r_out.push(3.0 * hi[n]);
        }
    }
    let mut best = (f64::NEG_INFINITY, 0.0);
    for k in 0..720 {
        let th = 2.0 * PI * k as f64 / 720.0 + 0.0123;
        let clear = suns
            .iter()
            .map(|s| ang_dist(th, s.c().arg()) - 1.5 * (s.radius / s.c().norm()).min(1.0).asin())
            .fold(f64::INFINITY, f64::min);
        if clear > best.0 {
            best = (clear, th);
        }
    }
    if best.0 <= 0.005 {
        return Err(Error::ClusteringError("no free ray for base points".into()));
    }
    Ok(Layout { suns, r_out, phi0: best.1 })
}

fn seg_dist(p: C, a: C, b: C) -> f64 {
    let ab = b - a;
    let u = ((p - a) * ab.conj()).re / ab.norm_sqr();
    (p - (a + ab * u.clamp(0.0, 1.0))).norm()
}

/// Numeric branch points of `Γ_a` must fall into the solar discs with the expected weights.
fn check_branch_points(disc: &DiscriminantSurface, lay: &Layout, sc: NumericScales) -> Result<()> {
    let r_max = *lay.r_out.last().unwrap();
    let mut weight = vec![0usize; lay.suns.len()];
    let a = C::new(sc.alpha, 0.0);
    let t = C::new(sc.eta, 0.0);
    let zero = C::new(0.0, 0.0);
    for (g, m) in &disc.factors {
        if !g.involves(Var::T) || !g.involves(Var::Y) {
            continue;
        }
        let coeffs: Vec<C> = g.as_univariate(Var::Y).iter().map(|c| c.eval_c64([a, zero, zero, t])).collect();
        for y in crate::algebra::numeric::aberth_roots(&coeffs) {
            if y.norm() >= r_max {
                continue;
            }
            let (j, d) = lay
                .suns
                .iter()
                .enumerate()
                .map(|(j, s)| (j, (s.c() - y).norm()))
                .min_by(|u, v| u.1.partial_cmp(&v.1).unwrap())
                .ok_or_else(|| Error::ClusteringError("branch point without a sun".into()))?;
            if d >= 0.8 * lay.suns[j].radius {
                return Err(Error::ClusteringError("branch point outside every solar disc".into()));
            }
            weight[j] += *m as usize;
        }
    }
    for (s, w) in lay.suns.iter().zip(&weight) {
        if s.branch_points != *w {
            return Err(Error::ClusteringError(format!(
                "solar disc holds {} branch points, expected {}",
                w, s.branch_points
            )));
        }
    }
    Ok(())
}

fn compose_labels(from_base: &[usize], local: &Permutation) -> Permutation {
    let mut inv = vec![0; from_base.len()];
    for (i, &j) in from_base.iter().enumerate() {
        inv[j] = i;
    }
    Permutation { images: from_base.iter().map(|&j| inv[local.images[j]]).collect() }
}

fn sheet_model(
    f: &MultiPoly,
    n_loc: usize,
    disc: &DiscriminantSurface,
    ladder: &ZoneLadder,
    tori: &[ApproxTorus],
    expansions: &[(BranchExpansion, u32)],
    sc: NumericScales,
) -> Result<(Layout, Vec<ZoneSheets>)> {
    let lay = layout(ladder, tori, expansions, sc)?;
    check_branch_points(disc, &lay, sc)?;
    let field = SheetField::new(f, n_loc, C::new(sc.eta, 0.0));
    let a = C::new(sc.alpha, 0.0);
    let dir = C::from_polar(1.0, lay.phi0);
    let mut zones = Vec::new();
    let mut prev_base: Option<Vec<C>> = None;
    for (n, z) in ladder.zones.iter().enumerate() {
        let (e, dp) = (*z.pair.e_over_dprime.numer(), *z.pair.e_over_dprime.denom());
        let r_out = lay.r_out[n];
        let y_z = dir * r_out;
        let base = field.sheets_at(a, y_z)?;
        let outer_circle = field.monodromy(
            &[Piece::Circle { a, center: C::new(0.0, 0.0), radius: r_out, start: lay.phi0, turns: 1.0 }],
            &base,
        )?;
        let h = field.monodromy(&[Piece::XLoop { alpha: sc.alpha, y0: y_z, turns: 1.0, y_turns: 0.0 }], &base)?;
        let fiber = field.monodromy(
            &[Piece::XLoop { alpha: sc.alpha, y0: y_z, turns: dp as f64, y_turns: e as f64 }],
            &base,
        )?;
        let inner_from_base = match &prev_base {
            Some(pb) => Some(field.transport(&[Piece::Segment { a, from: y_z, to: dir * lay.r_out[n - 1] }], &base, pb)?),
            None => None,
        };
        let mut lassos = Vec::new();
        let mut tubes = Vec::new();
        for (si, sun) in lay.suns.iter().enumerate().filter(|(_, s)| s.zone == z.index) {
            let c = sun.c();
            let mut route = None;
            for k in 0..41 {
                let psi = c.arg() + 0.02 * (if k % 2 == 0 { 1.0 } else { -1.0 }) * ((k + 1) / 2) as f64;
                let start = C::from_polar(r_out, psi);
                let u = (start - c) / (start - c).norm();
                let p = c + u * sun.radius;
                let clear = lay
                    .suns
                    .iter()
                    .enumerate()
                    .all(|(j, o)| j == si || seg_dist(o.c(), start, p) > 1.2 * o.radius);
                if clear {
                    route = Some((psi, start, p, u.arg()));
                    break;
                }
            }
            let (psi, start, p, u_arg) =
                route.ok_or_else(|| Error::ClusteringError("no clear path to a solar disc".into()))?;
            let arc_turns = (psi - lay.phi0).rem_euclid(2.0 * PI) / (2.0 * PI);
            let tail = [
                Piece::Circle { a, center: C::new(0.0, 0.0), radius: r_out, start: lay.phi0, turns: arc_turns },
                Piece::Segment { a, from: start, to: p },
            ];
            let local = field.sheets_at(a, p)?;
            let from_base = field.transport(&tail, &base, &local)?;
            let sigma = field.monodromy(
                &[Piece::Circle { a, center: c, radius: sun.radius, start: u_arg, turns: 1.0 }],
                &local,
            )?;
            if sigma.orbit_count() + sun.branch_points != n_loc {
                return Err(Error::ClusteringError(format!(
                    "solar disc of sun {} has {} discs above it, expected {}",
                    si,
                    sigma.orbit_count(),
                    n_loc as i64 - sun.branch_points as i64
                )));
            }
            lassos.push((si, compose_labels(&from_base, &sigma)));
            let l = tori[sun.torus].l as usize;
            if sun.k < l / dp as usize {
                let phi = field.monodromy(
                    &[Piece::XLoop { alpha: sc.alpha, y0: p, turns: dp as f64, y_turns: e as f64 }],
                    &local,
                )?;
                tubes.push(TubeSheets { sun: si, sigma, phi, from_base });
            }
        }
        let central = if n == 0 {
            let inner_r = lay
                .suns
                .iter()
                .filter(|s| s.zone == z.index)
                .map(|s| s.c().norm() - s.radius)
                .fold(f64::INFINITY, f64::min);
            let y_eps = dir * (0.2 * inner_r);
            let at_eps = field.sheets_at(a, y_eps)?;
            let from_base = field.transport(&[Piece::Segment { a, from: y_z, to: y_eps }], &base, &at_eps)?;
            let zero = C::new(0.0, 0.0);
            let at_zero = field.sheets_at(a, zero)?;
            let eps_to_zero = field.transport(&[Piece::Segment { a, from: y_eps, to: zero }], &at_eps, &at_zero)?;
            let phi_eps = field.monodromy(
                &[Piece::XLoop { alpha: sc.alpha, y0: y_eps, turns: dp as f64, y_turns: e as f64 }],
                &at_eps,
            )?;
            let h0 = field.monodromy(&[Piece::XLoop { alpha: sc.alpha, y0: zero, turns: 1.0, y_turns: 0.0 }], &at_zero)?;
            Some(CentralSheets { from_base, phi_eps, eps_to_zero, h0 })
        } else {
            None
        };
        zones.push(ZoneSheets {
            zone: z.index,
            e,
            d_prime: dp,
            basepoint: (y_z.re, y_z.im),
            outer_circle,
            h,
            fiber,
            lassos,
            inner_from_base,
            tubes,
            central,
        });
        prev_base = Some(base);
    }
    Ok((lay, zones))
}

/// Inputs shared by the assembly steps.
pub struct Carrousel<'a> {
    pub germ: &'a SurfaceGerm,
    pub disc: &'a DiscriminantSurface,
    /// Branch expansions with their multiplicity in the raw discriminant.
    pub expansions: &'a [(BranchExpansion, u32)],
    pub ladder: &'a ZoneLadder,
    pub tori: &'a [ApproxTorus],
    pub fiber: TransversalInvariants,
    pub order: Exp,
}

/// Monodromy of the x-loop on suns, sheets and transversal branches.
pub fn vertical_monodromy(cx: &Carrousel<'_>) -> Result<MonodromyData> {
    vertical_monodromy_with(cx, &SCALE_LADDER)
}

pub fn vertical_monodromy_with(cx: &Carrousel<'_>, ladder_of_scales: &[NumericScales]) -> Result<MonodromyData> {
    let f = &cx.germ.f;
    let n_loc = crate::geometry::local_sheet_count(cx.germ)? as usize;
    let (transversal_branch_orbits, xp, den, yp) = transversal_action(f, cx.order)?;
    if xp.len() != n_loc {
        return Err(Error::Internal("transversal conjugates do not match the local sheet count".into()));
    }
    let mut sun_images = Vec::new();
    let mut offset = 0;
    for t in cx.tori {
        let l = t.l as usize;
        let big_e = (t.pair.e_over_dprime * Exp::from(t.l)).to_integer().rem_euclid(t.l) as usize;
        sun_images.extend((0..l).map(|k| offset + (k + big_e) % l));
        offset += l;
    }
    let sun_permutation = Permutation { images: sun_images };
    let mut last_err = Error::ClusteringError("no sample scales given".into());
    for sc in ladder_of_scales {
        let attempt = sheet_model(f, n_loc, cx.disc, cx.ladder, cx.tori, cx.expansions, *sc).and_then(|(lay, zones)| {
            let outer = zones.last().unwrap();
            if outer.outer_circle.cycle_type() != yp.cycle_type() || outer.h.cycle_type() != xp.cycle_type() {
                return Err(Error::ClusteringError(
                    "outer sheet monodromy disagrees with the transversal branches".into(),
                ));
            }
            let md = MonodromyData {
                sun_permutation: sun_permutation.clone(),
                suns: lay.suns,
                sheet_permutation: outer.h.clone(),
                transversal_branch_orbits: transversal_branch_orbits.clone(),
                transversal_permutation: xp.clone(),
                transversal_denominator: den,
                fiber: cx.fiber,
                n_loc,
                scales: *sc,
                zones,
            };
            let filled = fill_solid_tori(cx.tori, &md)?;
            zone_pieces(cx.ladder, cx.tori, &md, &filled)?;
            Ok(md)
        });
        match attempt {
            Ok(md) => return Ok(md),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// A component of `Ψ_t^(-1)` of the approximation tori over one x-orbit of suns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolidTorus {
    pub torus: usize,
    pub sun: usize,
    pub zone: (usize, usize),
    pub discs: usize,
    /// Base labels of the zone.
    pub sheets: Vec<usize>,
    /// Multiplicity of the core in the Seifert fibration; `None` if the
    /// lifted fibers disagree.
    pub core_multiplicity: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilledTorus {
    pub torus: usize,
    pub deg_loc: usize,
    pub branch_points_per_sun: usize,
    pub disc_count_per_sun: usize,
    pub solid_tori: Vec<usize>,
}

/// Filled tori together with the flat list of their components.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Filling {
    pub tori: Vec<FilledTorus>,
    pub solid_tori: Vec<SolidTorus>,
}

fn orbit_length(p: &Permutation, i: usize) -> usize {
    let mut j = p.images[i];
    let mut n = 1;
    while j != i {
        j = p.images[j];
        n += 1;
    }
    n
}

fn pull_back(from_base: &[usize], local: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = local.iter().copied().collect();
    (0..from_base.len()).filter(|i| set.contains(&from_base[*i])).collect()
}

/// Discs over each solar disc (`deg_loc - Σ(e_P - 1)`) and the solid tori they sweep out.
pub fn fill_solid_tori(tori: &[ApproxTorus], md: &MonodromyData) -> Result<Filling> {
    let mut out = Filling { tori: Vec::new(), solid_tori: Vec::new() };
    for (n, t) in tori.iter().enumerate() {
        let first = md.suns.iter().find(|s| s.torus == n).ok_or_else(|| Error::Internal("torus without suns".into()))?;
        let deg_loc = md.n_loc;
        if first.branch_points >= deg_loc {
            return Err(Error::ClusteringError("solar disc would not lift to discs".into()));
        }
        let discs = deg_loc - first.branch_points;
        let zs = md
            .zones
            .iter()
            .find(|z| z.zone == t.zone_index)
            .ok_or_else(|| Error::Internal("zone missing from the sheet model".into()))?;
        let mut ids = Vec::new();
        for tube in zs.tubes.iter().filter(|tb| md.suns[tb.sun].torus == n) {
            let disc_of: Vec<usize> = {
                let cyc = tube.sigma.cycles();
                let mut d = vec![0; md.n_loc];
                for (k, c) in cyc.iter().enumerate() {
                    for &i in c {
                        d[i] = k;
                    }
                }
                d
            };
            for orb in orbits(md.n_loc, &[&tube.sigma, &tube.phi]) {
                let disc_set: BTreeSet<usize> = orb.iter().map(|&i| disc_of[i]).collect();
                let mut mults = BTreeSet::new();
                for &s in &orb {
                    let len = orbit_length(&tube.phi, s);
                    let mut visits = 0;
                    let mut j = s;
                    for _ in 0..len {
                        if disc_of[j] == disc_of[s] {
                            visits += 1;
                        }
                        j = tube.phi.images[j];
                    }
                    mults.insert(visits as u32);
                }
                ids.push(out.solid_tori.len());
                out.solid_tori.push(SolidTorus {
                    torus: n,
                    sun: tube.sun,
                    zone: t.zone_index,
                    discs: disc_set.len(),
                    sheets: pull_back(&tube.from_base, &orb),
                    core_multiplicity: if mults.len() == 1 { mults.into_iter().next() } else { None },
                });
            }
        }
        out.tori.push(FilledTorus {
            torus: n,
            deg_loc,
            branch_points_per_sun: first.branch_points,
            disc_count_per_sun: discs,
            solid_tori: ids,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiberSource {
    /// A component of `Ψ_t^(-1)(S¹_α × {0} × {t})`.
    Central,
    /// Core of a filled solid torus.
    Core { solid_torus: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalFiber {
    pub source: FiberSource,
    pub multiplicity: Option<u32>,
}

/// A boundary torus of a piece: a component over a zone-boundary torus
/// (`level` = ladder position of the zone whose outer boundary it is) or the
/// boundary of a filled solid torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryRef {
    Level { level: usize, orbit: usize },
    Tube { solid_torus: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeifertPiece {
    pub zone_index: (usize, usize),
    pub component_id: usize,
    pub sheets: Vec<usize>,
    pub base_genus: u32,
    pub boundary_count: usize,
    /// Always 0 for a circle-fibered 3-manifold.
    pub euler_char: i64,
    /// Euler characteristic of the fiber surface `Ψ_t^(-1)(C(i,j) minus solar discs)` in this component.
    pub surface_euler: i64,
    #[serde(with = "exp_serde")]
    pub base_orbifold_euler: Exp,
    /// `(e, d')`.
    pub fibration_slope: (i64, i64),
    pub fiber_degree: usize,
    pub exceptional_fibers: Vec<ExceptionalFiber>,
    pub boundary: Vec<BoundaryRef>,
}

fn level_orbits(z: &ZoneSheets) -> Vec<Vec<usize>> {
    orbits(z.outer_circle.len(), &[&z.outer_circle, &z.h])
}

/// Seifert pieces over the zones, one per connected component of the preimage.
pub fn zone_pieces(
    ladder: &ZoneLadder,
    tori: &[ApproxTorus],
    md: &MonodromyData,
    filling: &Filling,
) -> Result<Vec<SeifertPiece>> {
    let n = md.n_loc;
    let mut pieces = Vec::new();
    for (lv, (z, zs)) in ladder.zones.iter().zip(&md.zones).enumerate() {
        let innermost = lv == 0;
        let mut gens: Vec<Permutation> = zs.lassos.iter().map(|(_, p)| p.clone()).collect();
        gens.push(zs.h.clone());
        if let Some(fb) = &zs.inner_from_base {
            gens.push(compose_labels(fb, &md.zones[lv - 1].outer_circle));
        }
        let refs: Vec<&Permutation> = gens.iter().collect();
        let holes: i64 = tori
            .iter()
            .filter(|t| t.zone_index == z.index)
            .map(|t| t.l / zs.d_prime)
            .sum();
        let sun_count = md.suns.iter().filter(|s| s.zone == z.index).count() as i64;
        let mut chi_m = Exp::from(if innermost { 1 } else { 0 } - holes);
        if innermost {
            chi_m -= Exp::from(1) - Exp::new(1, zs.d_prime);
        }
        let outer_orbits = level_orbits(zs);
        let inner_orbits: Vec<Vec<usize>> = match &zs.inner_from_base {
            Some(fb) => level_orbits(&md.zones[lv - 1]).iter().map(|o| pull_back(fb, o)).collect(),
            None => Vec::new(),
        };
        for comp in orbits(n, &refs) {
            let cset: BTreeSet<usize> = comp.iter().copied().collect();
            let lens: BTreeSet<usize> = comp.iter().map(|&i| orbit_length(&zs.fiber, i)).collect();
            if lens.len() != 1 {
                return Err(Error::ClusteringError(format!("fiber degree varies over a piece of zone {:?}", z.index)));
            }
            let j = *lens.iter().next().unwrap();
            if comp.len() % j != 0 {
                return Err(Error::ClusteringError("fiber degree does not divide the sheet count".into()));
            }
            let k = (comp.len() / j) as i64;
            let chi_orb = chi_m * Exp::from(k);
            let mut cone = Exp::zero();
            let mut exceptional = Vec::new();
            if let Some(cs) = &zs.central {
                let zero_to_eps: Vec<usize> = {
                    let mut inv = vec![0; n];
                    for (i, &o) in cs.eps_to_zero.iter().enumerate() {
                        inv[o] = i;
                    }
                    inv
                };
                for o in cs.h0.cycles() {
                    let eps: Vec<usize> = o.iter().map(|&i| zero_to_eps[i]).collect();
                    let in_base = pull_back(&cs.from_base, &eps);
                    if !in_base.iter().all(|i| cset.contains(i)) {
                        continue;
                    }
                    let ls: BTreeSet<usize> = eps.iter().map(|&i| orbit_length(&cs.phi_eps, i)).collect();
                    let mult = if ls.len() == 1 {
                        let num = *ls.iter().next().unwrap() as i64 * zs.d_prime;
                        if num % o.len() as i64 != 0 {
                            return Err(Error::ClusteringError("central fiber multiplicity is not integral".into()));
                        }
                        Some((num / o.len() as i64) as u32)
                    } else {
                        None
                    };
                    if let Some(m) = mult {
                        cone += Exp::from(1) - Exp::new(1, m as i64);
                        if m > 1 {
                            exceptional.push(ExceptionalFiber { source: FiberSource::Central, multiplicity: Some(m) });
                        }
                    } else {
                        return Err(Error::ClusteringError("central fiber multiplicity undetermined".into()));
                    }
                }
            }
            let mut boundary = Vec::new();
            for (k, o) in outer_orbits.iter().enumerate() {
                if o.iter().all(|i| cset.contains(i)) {
                    boundary.push(BoundaryRef::Level { level: lv, orbit: k });
                }
            }
            for (k, o) in inner_orbits.iter().enumerate() {
                if o.iter().all(|i| cset.contains(i)) {
                    boundary.push(BoundaryRef::Level { level: lv - 1, orbit: k });
                }
            }
            for (sid, st) in filling.solid_tori.iter().enumerate() {
                if st.zone == z.index && st.sheets.iter().all(|i| cset.contains(i)) {
                    boundary.push(BoundaryRef::Tube { solid_torus: sid });
                    if st.core_multiplicity != Some(1) {
                        exceptional.push(ExceptionalFiber {
                            source: FiberSource::Core { solid_torus: sid },
                            multiplicity: st.core_multiplicity,
                        });
                    }
                }
            }
            let b = boundary.len() as i64;
            let chi_base = chi_orb + cone;
            let two_g = Exp::from(2 - b) - chi_base;
            if !two_g.is_integer() || two_g.is_negative() || two_g.to_integer() % 2 != 0 {
                return Err(Error::ClusteringError(format!(
                    "inconsistent base orbifold in zone {:?}: χ = {}, {} boundary circles",
                    z.index, chi_base, b
                )));
            }
            pieces.push(SeifertPiece {
                zone_index: z.index,
                component_id: pieces.len(),
                sheets: comp.clone(),
                base_genus: (two_g.to_integer() / 2) as u32,
                boundary_count: boundary.len(),
                euler_char: 0,
                surface_euler: comp.len() as i64 * (if innermost { 1 } else { 0 } - sun_count),
                base_orbifold_euler: chi_orb,
                fibration_slope: (zs.e, zs.d_prime),
                fiber_degree: j,
                exceptional_fibers: exceptional,
                boundary,
            });
        }
    }
    Ok(pieces)
}

/// Riemann-Hurwitz bookkeeping of `χ(F_(t,a))` over zones and solar discs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerCheck {
    pub zone_terms: Vec<((usize, usize), i64)>,
    pub disc_terms: Vec<(usize, i64)>,
    pub total: i64,
    pub expected: i64,
    pub ok: bool,
}

/// `Σ_zones n_loc·χ(C(i,j) minus solar discs) + Σ_discs (deg_loc - Σ(e_P - 1))` against `1 - mu`.
pub fn euler_check(
    ladder: &ZoneLadder,
    tori: &[ApproxTorus],
    expansions: &[(BranchExpansion, u32)],
    n_loc: usize,
    mu: i64,
) -> Result<EulerCheck> {
    let mut zone_terms = Vec::new();
    for (n, z) in ladder.zones.iter().enumerate() {
        let suns: i64 = tori.iter().filter(|t| t.zone_index == z.index).map(|t| t.l).sum();
        zone_terms.push((z.index, n_loc as i64 * (if n == 0 { 1 } else { 0 } - suns)));
    }
    let mut disc_terms = Vec::new();
    for (n, t) in tori.iter().enumerate() {
        let bd = branch_points_per_sun(t, expansions)? as i64;
        disc_terms.push((n, t.l * (n_loc as i64 - bd)));
    }
    let total = zone_terms.iter().map(|x| x.1).sum::<i64>() + disc_terms.iter().map(|x| x.1).sum::<i64>();
    Ok(EulerCheck { zone_terms, disc_terms, total, expected: 1 - mu, ok: total == 1 - mu })
}

/// Externally supplied description of the trunk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrunkStub {
    pub boundary_tori: usize,
    pub genus_sum: u32,
    pub exceptional_count: u32,
    pub cycle_rank: usize,
    pub solid_torus_flag: bool,
}

impl TrunkStub {
    /// Parse the `key = value` document (TOML).
    pub fn parse(text: &str) -> Result<TrunkStub> {
        let t: TrunkStub = toml::from_str(text).map_err(|e| Error::InvalidTrunk(e.to_string()))?;
        if t.solid_torus_flag && t.boundary_tori != 1 {
            return Err(Error::InvalidTrunk("a solid torus has exactly one boundary torus".into()));
        }
        Ok(t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum NodeRef {
    Piece(usize),
    SolidTorus(usize),
    Boundary(usize),
    Trunk,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub a: NodeRef,
    pub b: NodeRef,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionGraph {
    pub pieces: Vec<SeifertPiece>,
    pub solid_tori: Vec<SolidTorus>,
    pub edges: Vec<GraphEdge>,
    /// `r̄`, the boundary tori of `M_t(σ)`.
    pub boundary_tori: usize,
    pub boundary_labels: Vec<String>,
    pub invariants_g: u32,
    /// `[s_min, s_max]`.
    pub invariants_s: (u32, u32),
    pub cycle_rank: usize,
    /// Components of `M_t(σ)` and the number of boundary tori on each.
    pub boundary_per_component: Vec<usize>,
    pub q_manifold_flag: bool,
    /// Connectivity after gluing the trunk.
    pub connectivity_flag: Option<bool>,
    pub trunk: Option<TrunkStub>,
}

fn components(nodes: &[NodeRef], edges: &[GraphEdge]) -> Vec<Vec<NodeRef>> {
    let idx = |r: &NodeRef| nodes.iter().position(|x| x == r).unwrap();
    let mut gens = Vec::new();
    for e in edges {
        let mut img: Vec<usize> = (0..nodes.len()).collect();
        let (i, j) = (idx(&e.a), idx(&e.b));
        img[i] = j;
        img[j] = i;
        gens.push(Permutation { images: img });
    }
    let refs: Vec<&Permutation> = gens.iter().collect();
    orbits(nodes.len(), &refs).into_iter().map(|o| o.into_iter().map(|i| nodes[i]).collect()).collect()
}

/// Pieces as vertices, shared tori as edges; optional trunk glued to all boundary tori.
pub fn assemble_graph(
    pieces: &[SeifertPiece],
    filling: &Filling,
    md: &MonodromyData,
    trunk: Option<&TrunkStub>,
) -> Result<DecompositionGraph> {
    let last = md.zones.len() - 1;
    let outer = level_orbits(&md.zones[last]);
    let r = outer.len();
    if r != md.boundary_tori() {
        return Err(Error::Internal(format!(
            "{} boundary tori from the sheets, {} transversal branch orbits",
            r,
            md.boundary_tori()
        )));
    }
    if let Some(t) = trunk {
        if t.boundary_tori != r {
            return Err(Error::InvalidTrunk(format!(
                "the trunk has {} boundary tori, the vanishing zone has {}",
                t.boundary_tori, r
            )));
        }
    }
    let mut edges = Vec::new();
    for (pi, p) in pieces.iter().enumerate() {
        for b in &p.boundary {
            match *b {
                BoundaryRef::Tube { solid_torus } => {
                    edges.push(GraphEdge { a: NodeRef::Piece(pi), b: NodeRef::SolidTorus(solid_torus) })
                }
                BoundaryRef::Level { level, orbit } if level == last => {
                    edges.push(GraphEdge { a: NodeRef::Piece(pi), b: NodeRef::Boundary(orbit) })
                }
                BoundaryRef::Level { level, orbit } => {
                    // glued to the piece of the next zone holding the same torus
                    let lv_of = |q: &SeifertPiece| md.zones.iter().position(|z| z.zone == q.zone_index).unwrap();
                    if lv_of(p) != level {
                        continue;
                    }
                    let other = pieces.iter().position(|q| {
                        lv_of(q) == level + 1 && q.boundary.contains(&BoundaryRef::Level { level, orbit })
                    });
                    match other {
                        Some(qi) => edges.push(GraphEdge { a: NodeRef::Piece(pi), b: NodeRef::Piece(qi) }),
                        None => return Err(Error::Internal("zone boundary torus with one side only".into())),
                    }
                }
            }
        }
    }
    let mut nodes: Vec<NodeRef> = (0..pieces.len()).map(NodeRef::Piece).collect();
    nodes.extend((0..filling.solid_tori.len()).map(NodeRef::SolidTorus));
    nodes.extend((0..r).map(NodeRef::Boundary));
    let comps = components(&nodes, &edges);
    let cycle_rank = edges.len() + comps.len() - nodes.len();
    let boundary_per_component: Vec<usize> = comps
        .iter()
        .map(|c| c.iter().filter(|n| matches!(n, NodeRef::Boundary(_))).count())
        .collect();
    let invariants_g = pieces.iter().map(|p| p.base_genus).sum();
    let mut s_min = 0;
    let mut s_max = 0;
    for p in pieces {
        for x in &p.exceptional_fibers {
            match x.multiplicity {
                Some(m) if m > 1 => {
                    s_min += 1;
                    s_max += 1;
                }
                Some(_) => {}
                None => s_max += 1,
            }
        }
    }
    let connectivity_flag = trunk.map(|_| {
        let mut e2 = edges.clone();
        e2.extend((0..r).map(|k| GraphEdge { a: NodeRef::Boundary(k), b: NodeRef::Trunk }));
        let mut n2 = nodes.clone();
        n2.push(NodeRef::Trunk);
        components(&n2, &e2).len() == 1
    });
    Ok(DecompositionGraph {
        pieces: pieces.to_vec(),
        solid_tori: filling.solid_tori.clone(),
        edges,
        boundary_tori: r,
        boundary_labels: (0..r).map(|k| format!("∂{}", k + 1)).collect(),
        invariants_g,
        invariants_s: (s_min, s_max),
        cycle_rank,
        boundary_per_component,
        q_manifold_flag: md.fiber.annulus_flag && r == 1,
        connectivity_flag,
        trunk: trunk.cloned(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SObstruction {
    pub s_trunk: u32,
    /// Exceptional fibers contributed by `M_t(σ)`, as `[min, max]`.
    pub increment: (u32, u32),
    /// `2r`.
    pub bound: u32,
    pub fires: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub open_case_lens: bool,
    pub cycle_rank_fires: bool,
    pub genus_fires: bool,
    pub s_obstruction: Option<SObstruction>,
    pub summary: String,
}

/// Which obstruction separates `L_t` from the link, given the trunk.
pub fn compare_with_trunk(graph: &DecompositionGraph, trunk: &TrunkStub) -> Result<Verdict> {
    if trunk.boundary_tori != graph.boundary_tori {
        return Err(Error::InvalidTrunk("trunk and vanishing zone disagree on boundary tori".into()));
    }
    if trunk.solid_torus_flag {
        return Ok(Verdict {
            open_case_lens: true,
            cycle_rank_fires: false,
            genus_fires: false,
            s_obstruction: None,
            summary: "open case (lens)".into(),
        });
    }
    let cycle_rank_fires = graph.boundary_per_component.iter().any(|&b| b >= 2);
    let genus_fires = graph.pieces.iter().any(|p| p.base_genus > 0);
    let s_obstruction = if cycle_rank_fires || genus_fires {
        None
    } else {
        let bound = 2 * graph.boundary_tori as u32;
        Some(SObstruction {
            s_trunk: trunk.exceptional_count,
            increment: graph.invariants_s,
            bound,
            fires: graph.invariants_s.0 >= bound,
        })
    };
    let summary = if cycle_rank_fires {
        "cycle-rank obstruction".to_string()
    } else if genus_fires {
        "genus obstruction".to_string()
    } else if s_obstruction.as_ref().is_some_and(|s| s.fires) {
        "s-obstruction".to_string()
    } else {
        "no obstruction certified".to_string()
    };
    Ok(Verdict { open_case_lens: false, cycle_rank_fires, genus_fires, s_obstruction, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrousel::{approximation_tori, build_zone_ladder, first_exponent_pairs};
    use crate::geometry::{discriminant_surface, transversal_invariants};
    use crate::puiseux::exp;

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    struct Run {
        md: MonodromyData,
        pieces: Vec<SeifertPiece>,
        graph: DecompositionGraph,
        euler: EulerCheck,
    }

    fn run(f: MultiPoly) -> Run {
        crate::algebra::scalar::with_fresh_tower(|| run_in_tower(f.clone())).unwrap()
    }

    fn run_in_tower(f: MultiPoly) -> Result<Run> {
        let order = exp(6, 1);
        let germ = SurfaceGerm::new(f)?;
        let disc = discriminant_surface(&germ)?;
        let expansions = discriminant_branches(&disc, order, puiseux::default_x_prec(order))?;
        let plain: Vec<BranchExpansion> = expansions.iter().map(|x| x.0.clone()).collect();
        let ladder = build_zone_ladder(&first_exponent_pairs(&plain)?.pairs())?;
        let tori = approximation_tori(&plain, &ladder)?;
        let fiber = transversal_invariants(&germ, order)?;
        let cx = Carrousel { germ: &germ, disc: &disc, expansions: &expansions, ladder: &ladder, tori: &tori, fiber, order };
        let md = vertical_monodromy(&cx)?;
        let filling = fill_solid_tori(&tori, &md)?;
        let pieces = zone_pieces(&ladder, &tori, &md, &filling)?;
        let graph = assemble_graph(&pieces, &filling, &md, None)?;
        let euler = euler_check(&ladder, &tori, &expansions, md.n_loc, fiber.mu)?;
        Ok(Run { md, pieces, graph, euler })
    }

    #[test]
    fn whitney_assembly() {
        let r = run(v(Var::Z).pow(2).sub(&v(Var::X).mul(&v(Var::Y).pow(2))));
        assert_eq!(r.md.boundary_tori(), 1);
        assert_eq!(r.pieces.len(), 1);
        assert_eq!(r.pieces[0].base_genus, 0);
        assert_eq!(r.graph.invariants_s, (2, 2));
        assert!(r.graph.q_manifold_flag);
        assert!(r.euler.ok, "{:?}", r.euler);
    }

    fn hirzebruch(m: u32, k: u32, l: u32) -> MultiPoly {
        v(Var::Z).pow(m).sub(&v(Var::X).pow(k).mul(&v(Var::Y).pow(l)))
    }

    #[test]
    fn hirzebruch_single_piece() {
        for (m, k, l) in [(2, 1, 2), (3, 1, 2), (3, 2, 3), (2, 1, 3)] {
            let r = run(hirzebruch(m, k, l));
            assert_eq!(r.pieces.len(), 1, "({m},{k},{l})");
            assert!(r.euler.ok, "({m},{k},{l}) {:?}", r.euler);
            assert_eq!(r.graph.cycle_rank, 0);
        }
    }

    #[test]
    fn reducible_germ_has_two_boundary_tori() {
        let r = run(hirzebruch(2, 2, 2));
        assert_eq!(r.md.boundary_tori(), 2);
        assert_eq!(r.graph.boundary_tori, 2);
        assert!(r.euler.ok);
        let trunk = TrunkStub { boundary_tori: 2, genus_sum: 0, exceptional_count: 0, cycle_rank: 0, solid_torus_flag: false };
        let filling = Filling { tori: vec![], solid_tori: r.graph.solid_tori.clone() };
        let g = assemble_graph(&r.pieces, &filling, &r.md, Some(&trunk)).unwrap();
        assert_eq!(g.connectivity_flag, Some(true));
    }

    #[test]
    fn two_zone_germ() {
        let f = v(Var::Z).pow(3).scale(&crate::algebra::Scalar::from_int(2))
            .sub(&v(Var::Y).mul(&v(Var::Z).pow(2)).scale(&crate::algebra::Scalar::from_int(3)))
            .add(&v(Var::X).mul(&v(Var::Y).pow(4)).scale(&crate::algebra::Scalar::from_int(6)));
        let r = run(f);
        assert_eq!(r.md.zones.len(), 2);
        assert_eq!(r.md.fiber.mu, 5);
        assert_eq!(r.euler.total, -4);
        assert!(r.euler.ok);
    }
}
