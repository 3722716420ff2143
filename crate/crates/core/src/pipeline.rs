//! Parsing, the end-to-end run, reports (JSON and DOT) and the numeric probe.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64 as C;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::numeric::aberth_roots;
use crate::algebra::{scalar, MultiPoly, Scalar, Var, Q};
use crate::assembly::{
    assemble_graph, compare_with_trunk, discriminant_branches, euler_check, fill_solid_tori, vertical_monodromy,
    zone_pieces, Carrousel, DecompositionGraph, EulerCheck, Filling, MonodromyData, NodeRef, TrunkStub,
    Verdict,
};
use crate::carrousel::{approximation_tori, build_zone_ladder, classify_pair, first_exponent_pairs, ExponentPair, TorusCertificates, ZoneLadder};
use crate::error::{Error, Result};
use crate::geometry::{
    apply_shear, covering_degree, discriminant_surface, genericity_check, local_sheet_count, singular_locus, theta_reduce,
    transversal_invariants, GenericityReport, SurfaceGerm, TransversalInvariants,
};
use crate::puiseux::{self, exp_serde, resubstitution_valuation, BranchExpansion, Exp};

pub const REPORT_VERSION: &str = "1";

// ---------------------------------------------------------------------------
// Parser

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<char> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        trimmed.chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn err(&self, message: &str, expected: &str) -> Error {
        Error::Parse { position: self.pos, message: message.into(), expected: expected.into() }
    }

    fn is_minus(c: char) -> bool {
        c == '-' || c == '−'
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            if c == '+' {
                self.bump();
                acc = acc.add(&self.term()?);
            } else if Self::is_minus(c) {
                self.bump();
                acc = acc.sub(&self.term()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    // term := unary (('*' | '/') unary)*, division only by nonzero constants
    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            if c == '*' {
                self.bump();
                acc = acc.mul(&self.unary()?);
            } else if c == '/' {
                self.bump();
                let at = self.pos;
                let d = self.unary()?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.inv()),
                    _ => {
                        return Err(Error::Parse {
                            position: at,
                            message: "division by a non-constant or zero".into(),
                            expected: "a nonzero number".into(),
                        })
                    }
                }
            } else {
                break;
            }
        }
        Ok(acc)
    }

    // unary := ('-' | '+') unary | power
    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(c) if Self::is_minus(c) => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    // power := atom ('^' integer)?
    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let at = self.pos;
            let n = self.integer().ok_or_else(|| self.err("missing exponent", "a non-negative integer"))?;
            let k: u32 = n.try_into().map_err(|_| Error::Parse {
                position: at,
                message: "exponent too large".into(),
                expected: "an exponent below 2^32".into(),
            })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Option<num_bigint::BigInt> {
        self.peek()?;
        let start = self.pos;
        let digits: String = self.src[start..].chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return None;
        }
        self.pos += digits.len();
        digits.parse().ok()
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("unbalanced parenthesis", "')'"));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().unwrap();
                Ok(MultiPoly::constant(Scalar::from_q(Q::from_integer(n))))
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                let name: String = self.src[start..].chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
                self.pos += name.len();
                match name.as_str() {
                    "x" => Ok(MultiPoly::var(Var::X)),
                    "y" => Ok(MultiPoly::var(Var::Y)),
                    "z" => Ok(MultiPoly::var(Var::Z)),
                    _ => Err(Error::UnknownVariable { name, position: start }),
                }
            }
            Some(_) => Err(self.err("unexpected character", "a number, x, y, z or '('")),
            None => Err(self.err("unexpected end of input", "a number, x, y, z or '('")),
        }
    }
}

/// Parse an expression in x, y, z with integer literals, `+ - * / ^` and
/// parentheses. Unary minus binds tighter than `*` and looser than `^`, so
/// `-y^2` is `-(y^2)` and `z^2 - - y` is `z^2 + y`.
pub fn parse_polynomial(text: &str) -> Result<MultiPoly> {
    let mut p = Parser { src: text, pos: 0 };
    if p.peek().is_none() {
        return Err(p.err("empty expression", "a polynomial"));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input", "an operator or end of input"));
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// Configuration and report

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub alpha: f64,
    /// Decreasing sample values of `|t|`.
    pub etas: Vec<f64>,
    pub denominator_bound: i64,
    /// Sample points on the x-circle.
    pub angles: usize,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { alpha: 0.5, etas: eta_grid(1e-6), denominator_bound: 12, angles: 3, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub input: String,
    pub truncation: Exp,
    /// Doublings of the truncation tried after `TruncationTooShort`.
    pub max_retries: u32,
    pub shear: Option<(i64, i64, i64)>,
    pub trunk: Option<TrunkStub>,
    pub probe: Option<ProbeConfig>,
}

impl RunConfig {
    pub fn new(input: &str) -> Self {
        RunConfig {
            input: input.to_string(),
            truncation: Exp::from(5),
            max_retries: 2,
            shear: None,
            trunk: None,
            probe: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.truncation <= Exp::zero() {
            return Err(Error::HypothesisViolation("truncation must be positive".into()));
        }
        if let Some(p) = &self.probe {
            let eta_max = p.etas.iter().cloned().fold(0.0, f64::max);
            if p.etas.len() < 2 || !(eta_max < p.alpha && p.alpha < 1.0) || p.etas.iter().any(|e| *e <= 0.0) {
                return Err(Error::HypothesisViolation("probe scales must satisfy 0 < η < α < 1 with two η values".into()));
            }
            if p.denominator_bound < 1 {
                return Err(Error::HypothesisViolation("denominator bound must be positive".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchReport {
    pub pair: ExponentPair,
    pub leading_coefficient: String,
    pub leading_numeric: (f64, f64),
    pub class_size: usize,
    /// Multiplicity of its factor in `Res_z(f - t, f_z)`.
    pub weight: u32,
    pub exact: bool,
    pub zone: (usize, usize),
    pub series: String,
    pub resubstitution: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusReport {
    pub members: Vec<usize>,
    pub pair: ExponentPair,
    pub leading_b: String,
    pub l: i64,
    pub d: i64,
    #[serde(with = "exp_serde")]
    pub rho: Exp,
    pub zone: (usize, usize),
    pub certificates: TorusCertificates,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaReport {
    pub sigma: String,
    pub reduced: String,
    pub x_trunc: Option<String>,
    pub transversal: TransversalInvariants,
    pub local_sheet_count: u32,
    pub discriminant: String,
    pub discriminant_factors: Vec<(String, u32)>,
    pub split_off: Vec<String>,
    pub branches: Vec<BranchReport>,
    pub ladder: ZoneLadder,
    pub tori: Vec<TorusReport>,
    pub monodromy: MonodromyData,
    pub filling: Filling,
    pub graph: DecompositionGraph,
    pub euler: EulerCheck,
    pub verdict: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeEstimate {
    /// Number of small roots in the cluster.
    pub roots: usize,
    pub slope_t: f64,
    pub slope_x: f64,
    pub pair: ExponentPair,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub alpha: f64,
    pub eta_min: f64,
    pub denominator_bound: i64,
    pub estimates: Vec<ProbeEstimate>,
    pub estimated_pairs: Vec<ExponentPair>,
    pub exact_pairs: Vec<ExponentPair>,
    pub max_residual: f64,
    pub agreement: bool,
    /// Set when roots could not be separated numerically.
    pub inconclusive: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub input: String,
    pub polynomial: String,
    #[serde(with = "exp_serde")]
    pub truncation: Exp,
    pub shear: Option<(i64, i64, i64)>,
    pub genericity: GenericityReport,
    pub covering_degree: u32,
    pub sigma: Vec<SigmaReport>,
    pub probe: Option<ProbeReport>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Internal(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Run

fn run_sigma(germ0: &SurfaceGerm, sigma: &crate::geometry::SigmaBranch, order: Exp, cfg: &RunConfig) -> Result<SigmaReport> {
    let germ = theta_reduce(germ0, sigma, order)?;
    let disc = discriminant_surface(&germ)?;
    let expansions = discriminant_branches(&disc, order, puiseux::default_x_prec(order))?;
    let plain: Vec<BranchExpansion> = expansions.iter().map(|x| x.0.clone()).collect();
    let first = first_exponent_pairs(&plain)?;
    let ladder = build_zone_ladder(&first.pairs())?;
    ladder.verify()?;
    let tori = approximation_tori(&plain, &ladder)?;
    let fiber = transversal_invariants(&germ, order)?;
    let cx = Carrousel { germ: &germ, disc: &disc, expansions: &expansions, ladder: &ladder, tori: &tori, fiber, order };
    let md = vertical_monodromy(&cx)?;
    let filling = fill_solid_tori(&tori, &md)?;
    let pieces = zone_pieces(&ladder, &tori, &md, &filling)?;
    let graph = assemble_graph(&pieces, &filling, &md, cfg.trunk.as_ref())?;
    let euler = euler_check(&ladder, &tori, &expansions, md.n_loc, fiber.mu)?;
    let verdict = match &cfg.trunk {
        Some(t) => Some(compare_with_trunk(&graph, t)?),
        None => None,
    };
    let mut branches = Vec::new();
    for (b, w) in &expansions {
        let zone = classify_pair(&ExponentPair::of(b), &ladder)?.0;
        let re = resubstitution_valuation(&disc.d, Var::Y, &b.series, order)?;
        let v = b.b.to_c64();
        branches.push(BranchReport {
            pair: ExponentPair::of(b),
            leading_coefficient: b.b.to_string(),
            leading_numeric: (v.re, v.im),
            class_size: b.class_size,
            weight: *w,
            exact: b.exact,
            zone,
            series: b.series.to_string(),
            resubstitution: re.to_string(),
        });
    }
    Ok(SigmaReport {
        sigma: sigma.describe(),
        reduced: germ.f.to_string(),
        x_trunc: germ.x_trunc.map(|e| e.to_string()),
        transversal: fiber,
        local_sheet_count: local_sheet_count(&germ)?,
        discriminant: disc.d.to_string(),
        discriminant_factors: disc.factors.iter().map(|(g, m)| (g.to_string(), *m)).collect(),
        split_off: disc.split_off.iter().map(|g| g.to_string()).collect(),
        branches,
        ladder,
        tori: tori
            .iter()
            .map(|t| TorusReport {
                members: t.members.clone(),
                pair: t.pair,
                leading_b: t.leading_b.to_string(),
                l: t.l,
                d: t.d,
                rho: t.rho,
                zone: t.zone_index,
                certificates: t.certificates.clone(),
            })
            .collect(),
        monodromy: md,
        filling,
        graph,
        euler,
        verdict,
    })
}

fn run_once(f: &MultiPoly, cfg: &RunConfig, order: Exp) -> Result<(Vec<SigmaReport>, Option<ProbeReport>)> {
    scalar::with_fresh_tower(|| {
        let germ0 = SurfaceGerm::new(f.clone())?;
        let sigmas = singular_locus(&germ0, order)?;
        if sigmas.is_empty() {
            return Err(Error::HypothesisViolation("the singular locus is the origin only; there is no vanishing zone".into()));
        }
        let mut out = Vec::new();
        for s in &sigmas {
            out.push(run_sigma(&germ0, s, order, cfg)?);
        }
        let probe = match &cfg.probe {
            Some(p) => {
                let germ = theta_reduce(&germ0, &sigmas[0], order)?;
                let disc = discriminant_surface(&germ)?;
                let mut exact: Vec<ExponentPair> = out[0].branches.iter().map(|b| b.pair).collect();
                exact.sort();
                exact.dedup();
                Some(match numeric_probe(p, &disc.d, &exact) {
                    Err(Error::ClusteringError(why)) => ProbeReport::inconclusive(p, exact, why),
                    r => r?,
                })
            }
            None => None,
        };
        Ok((out, probe))
    })
}

/// Parse, check and decompose; retries with doubled truncation when a
/// branch is not determined.
pub fn run_pipeline(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let f0 = parse_polynomial(&cfg.input)?;
    let f = match cfg.shear {
        Some(s) => apply_shear(&f0, s),
        None => f0,
    };
    let genericity = genericity_check(&f);
    let mut notes = Vec::new();
    if !genericity.passed() {
        notes.push(match genericity.suggested_shear {
            Some((a, b, c)) => format!("coordinates are not generic; try --shear \"{},{},{}\"", a, b, c),
            None => "coordinates are not generic and no small shear was found".to_string(),
        });
    }
    let germ = SurfaceGerm::new(f.clone())?;
    let n = covering_degree(&germ)?;
    let mut order = cfg.truncation;
    let mut attempt = 0;
    let (sigma, probe) = loop {
        match run_once(&f, cfg, order) {
            Err(Error::TruncationTooShort(m)) if attempt < cfg.max_retries => {
                notes.push(format!("truncation {} too short ({}); retrying at {}", order, m, order * Exp::from(2)));
                order *= Exp::from(2);
                attempt += 1;
            }
            r => break r?,
        }
    };
    notes.push("core multiplicities of filled solid tori use the visit-count formula and are not independently verified".into());
    Ok(Report {
        version: REPORT_VERSION.into(),
        input: cfg.input.clone(),
        polynomial: f.to_string(),
        truncation: order,
        shear: cfg.shear,
        genericity,
        covering_degree: n,
        sigma,
        probe,
        notes,
    })
}

// ---------------------------------------------------------------------------
// Human-readable and DOT output

impl Report {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "f = {}", self.polynomial);
        let _ = writeln!(s, "truncation {}, covering degree N = {}", self.truncation, self.covering_degree);
        let g = &self.genericity;
        let _ = writeln!(
            s,
            "genericity: weierstrass {}, claim {}, transversality {}",
            g.weierstrass_ok, g.claim_ok, g.transversality_ok
        );
        for (i, sr) in self.sigma.iter().enumerate() {
            let _ = writeln!(s, "\nσ{}: {}", i + 1, sr.sigma);
            let t = &sr.transversal;
            let _ = writeln!(
                s,
                "  transversal type: mu = {}, branches = {}, annulus = {}",
                t.mu, t.branch_count, t.annulus_flag
            );
            let _ = writeln!(s, "  D = {}", sr.discriminant);
            for b in &sr.branches {
                let _ = writeln!(
                    s,
                    "  branch {} b = {} class {} weight {} zone {:?} resubstitution {}",
                    b.pair, b.leading_coefficient, b.class_size, b.weight, b.zone, b.resubstitution
                );
            }
            for z in &sr.ladder.zones {
                let _ = writeln!(s, "  zone {:?} {:?}: {} ≤ |y| ≤ {}", z.index, z.kind, z.inner, z.outer);
            }
            for p in &sr.graph.pieces {
                let _ = writeln!(
                    s,
                    "  piece {} in zone {:?}: slope {}/{}, genus {}, {} boundary tori, χ^orb = {}, exceptional [{}]",
                    p.component_id,
                    p.zone_index,
                    p.fibration_slope.0,
                    p.fibration_slope.1,
                    p.base_genus,
                    p.boundary_count,
                    p.base_orbifold_euler,
                    p.exceptional_fibers
                        .iter()
                        .map(|x| x.multiplicity.map_or("?".to_string(), |m| m.to_string()))
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
            let gr = &sr.graph;
            let _ = writeln!(
                s,
                "  r = {}, g = {}, s ∈ [{}, {}], cycle rank {}, Q-manifold {}",
                gr.boundary_tori, gr.invariants_g, gr.invariants_s.0, gr.invariants_s.1, gr.cycle_rank, gr.q_manifold_flag
            );
            let e = &sr.euler;
            let _ = writeln!(s, "  Euler check: {} vs 1 - mu = {} ({})", e.total, e.expected, if e.ok { "ok" } else { "MISMATCH" });
            if let Some(v) = &sr.verdict {
                let _ = writeln!(s, "  verdict: {}", v.summary);
            }
        }
        if let Some(p) = &self.probe {
            match &p.inconclusive {
                Some(why) => {
                    let _ = writeln!(s, "\nprobe (α = {}, η ≥ {}): inconclusive ({})", p.alpha, p.eta_min, why);
                }
                None => {
                    let _ = writeln!(
                        s,
                        "\nprobe (α = {}, η ≥ {}): {} (max residual {:.2e})",
                        p.alpha,
                        p.eta_min,
                        if p.agreement { "agrees" } else { "DISAGREES" },
                        p.max_residual
                    );
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {}", n);
        }
        s
    }

    /// The decomposition graph of the first σ in Graphviz syntax.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph vanishing_zone {\n  node [shape=ellipse];\n");
        for (k, sr) in self.sigma.iter().enumerate() {
            let g = &sr.graph;
            let id = |n: &NodeRef| match n {
                NodeRef::Piece(i) => format!("s{}_p{}", k, i),
                NodeRef::SolidTorus(i) => format!("s{}_t{}", k, i),
                NodeRef::Boundary(i) => format!("s{}_b{}", k, i),
                NodeRef::Trunk => format!("s{}_trunk", k),
            };
            for (i, p) in g.pieces.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  {} [label=\"zone ({},{})\\nslope {}/{}\\nχ^orb {}\\ng {} b {}\"];",
                    id(&NodeRef::Piece(i)),
                    p.zone_index.0,
                    p.zone_index.1,
                    p.fibration_slope.0,
                    p.fibration_slope.1,
                    p.base_orbifold_euler,
                    p.base_genus,
                    p.boundary_count
                );
            }
            for (i, t) in g.solid_tori.iter().enumerate() {
                let m = t.core_multiplicity.map_or("?".to_string(), |m| m.to_string());
                let _ = writeln!(s, "  {} [shape=box, label=\"solid torus\\ncore {}\"];", id(&NodeRef::SolidTorus(i)), m);
            }
            for (i, l) in g.boundary_labels.iter().enumerate() {
                let _ = writeln!(s, "  {} [shape=plaintext, label=\"{}\"];", id(&NodeRef::Boundary(i)), l);
            }
            for e in &g.edges {
                let arrow = if matches!(e.b, NodeRef::Boundary(_)) { " [dir=forward]" } else { "" };
                let _ = writeln!(s, "  {} -- {}{};", id(&e.a), id(&e.b), arrow);
            }
        }
        s.push_str("}\n");
        s
    }
}

// ---------------------------------------------------------------------------
// Numeric probe

/// Nearest fraction with denominator at most `bound`.
pub fn snap(v: f64, bound: i64) -> Exp {
    let mut best = (f64::INFINITY, Exp::zero());
    for den in 1..=bound {
        let num = (v * den as f64).round() as i64;
        let err = (v - num as f64 / den as f64).abs();
        if err < best.0 - 1e-12 {
            best = (err, Exp::new(num, den));
        }
    }
    best.1
}

fn small_roots(d: &MultiPoly, x: C, t: f64, count: usize) -> Result<Vec<C>> {
    let coeffs: Vec<C> = d.as_univariate(Var::Y).iter().map(|c| c.eval_c64([x, C::zero(), C::zero(), C::new(t, 0.0)])).collect();
    let mut r = aberth_roots(&coeffs);
    r.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
    if r.len() < count {
        return Err(Error::ClusteringError("probe found fewer roots than expected".into()));
    }
    if r.len() > count && r[count - 1].norm() > 0.5 * r[count].norm() {
        return Err(Error::ClusteringError("probe: small roots not separated from the others".into()));
    }
    for i in 1..count {
        if (r[i].norm() - r[i - 1].norm()).abs() < 1e-14 && (r[i] - r[i - 1]).norm() < 1e-12 * r[i].norm().max(1e-300) {
            return Err(Error::ClusteringError("probe: colliding roots".into()));
        }
    }
    r.truncate(count);
    Ok(r)
}

/// Seven scales from `1000·eta` down to `eta`, a factor `√10` apart.
pub fn eta_grid(eta: f64) -> Vec<f64> {
    (0..7).rev().map(|k| eta * 10f64.powf(k as f64 / 2.0)).collect()
}

/// The x-slope compares `|x| = α` with `|x| = α·X_RATIO`.
const X_RATIO: f64 = std::f64::consts::FRAC_1_SQRT_2;

impl ProbeReport {
    fn inconclusive(cfg: &ProbeConfig, exact_pairs: Vec<ExponentPair>, why: String) -> Self {
        ProbeReport {
            alpha: cfg.alpha,
            eta_min: cfg.etas.iter().cloned().fold(f64::INFINITY, f64::min),
            denominator_bound: cfg.denominator_bound,
            estimates: Vec::new(),
            estimated_pairs: Vec::new(),
            exact_pairs,
            max_residual: f64::NAN,
            agreement: false,
            inconclusive: Some(why),
        }
    }
}

/// Aitken's Δ² on the last three terms of a sequence whose error shrinks
/// geometrically; falls back to the last term when the sequence has settled
/// or the differences are not geometric.
fn extrapolate(s: &[f64]) -> f64 {
    let m = s.len();
    if m < 3 {
        return s[m - 1];
    }
    let (a, b, c) = (s[m - 3], s[m - 2], s[m - 1]);
    let (d1, d2) = (b - a, c - b);
    let den = d2 - d1;
    if den.abs() < 1e-14 || d2.abs() < 1e-13 || d1 * d2 <= 0.0 || d2.abs() >= d1.abs() {
        return c;
    }
    c - d2 * d2 / den
}

/// Estimate the first-exponent pairs of `D(x, y, t) = 0` from root moduli and
/// compare with `exact`.
pub fn numeric_probe(cfg: &ProbeConfig, d: &MultiPoly, exact: &[ExponentPair]) -> Result<ProbeReport> {
    let d0 = d.eval_var(Var::T, &Scalar::zero());
    let count = d0
        .min_degree(Var::Y)
        .filter(|_| !d0.is_zero())
        .ok_or_else(|| Error::HypothesisViolation("D(x, y, 0) vanishes identically".into()))? as usize;
    if count == 0 {
        return Err(Error::EmptyInput("no branch of D passes through the origin".into()));
    }
    let mut etas = cfg.etas.clone();
    etas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let phase: f64 = rng.gen_range(0.0..1.0);
    let xs: Vec<(C, C)> = (0..cfg.angles)
        .map(|j| {
            let phi = 2.0 * PI * (j as f64 + phase) / cfg.angles as f64;
            (C::from_polar(cfg.alpha, phi), C::from_polar(cfg.alpha * X_RATIO, phi))
        })
        .collect();
    // log-moduli per scale and angle; scales where the small roots do not
    // separate are dropped from the large end
    let mut samples: Vec<Vec<(Vec<f64>, Vec<f64>)>> = Vec::new();
    let mut last_err = None;
    for &t in etas.iter().rev() {
        let row: Result<Vec<(Vec<f64>, Vec<f64>)>> = xs
            .iter()
            .map(|&(x1, x2)| {
                let ln = |v: Vec<C>| v.iter().map(|r| r.norm().ln()).collect::<Vec<f64>>();
                Ok((ln(small_roots(d, x1, t, count)?), ln(small_roots(d, x2, t, count)?)))
            })
            .collect();
        match row {
            Ok(r) => samples.push(r),
            Err(e) => {
                last_err = Some(e);
                break;
            }
        }
    }
    if samples.len() < 2 {
        return Err(last_err.unwrap_or_else(|| Error::ClusteringError("probe needs two scales".into())));
    }
    samples.reverse();
    let n = samples.len();
    let etas = etas[etas.len() - n..].to_vec();
    let logs: Vec<f64> = etas.iter().map(|e| e.ln()).collect();
    let geometric = n >= 3 && logs.windows(3).all(|w| ((w[2] - w[1]) - (w[1] - w[0])).abs() < 1e-9 * (w[1] - w[0]).abs());
    // per root, slope sequences summed over the angles
    let mut st = vec![vec![0.0; n - 1]; count];
    let mut sx = vec![vec![0.0; n]; count];
    for j in 0..cfg.angles {
        for k in 0..count {
            for i in 1..n {
                st[k][i - 1] += (samples[i][j].0[k] - samples[i - 1][j].0[k]) / (logs[i] - logs[i - 1]);
            }
            for i in 0..n {
                sx[k][i] += (samples[i][j].0[k] - samples[i][j].1[k]) / -X_RATIO.ln();
            }
        }
    }
    let limit = |seq: &[f64], w: usize| {
        let mean: Vec<f64> = seq.iter().map(|v| v / w as f64).collect();
        if geometric {
            extrapolate(&mean)
        } else {
            mean[mean.len() - 1]
        }
    };
    let to_f = |e: Exp| *e.numer() as f64 / *e.denom() as f64;
    // group roots by their snapped pair, then estimate from the cluster mean
    let mut clusters: Vec<(ExponentPair, Vec<usize>)> = Vec::new();
    for k in 0..count {
        let pair = ExponentPair::new(
            snap(limit(&st[k], cfg.angles), cfg.denominator_bound),
            snap(limit(&sx[k], cfg.angles), cfg.denominator_bound),
        );
        match clusters.iter_mut().find(|c| c.0 == pair) {
            Some(c) => c.1.push(k),
            None => clusters.push((pair, vec![k])),
        }
    }
    let mut estimates = Vec::new();
    for (_, members) in &clusters {
        let w = cfg.angles * members.len();
        let sum = |seqs: &[Vec<f64>]| -> Vec<f64> {
            (0..seqs[0].len()).map(|i| members.iter().map(|&k| seqs[k][i]).sum()).collect()
        };
        let (s_t, s_x) = (limit(&sum(&st), w), limit(&sum(&sx), w));
        let pair = ExponentPair::new(snap(s_t, cfg.denominator_bound), snap(s_x, cfg.denominator_bound));
        let residual = (s_t - to_f(pair.q_over_p)).abs().max((s_x - to_f(pair.e_over_dprime)).abs());
        estimates.push(ProbeEstimate { roots: members.len(), slope_t: s_t, slope_x: s_x, pair, residual });
    }
    let mut estimated_pairs: Vec<ExponentPair> = estimates.iter().map(|e| e.pair).collect();
    estimated_pairs.sort();
    estimated_pairs.dedup();
    let mut exact_pairs = exact.to_vec();
    exact_pairs.sort();
    exact_pairs.dedup();
    let max_residual = estimates.iter().map(|e| e.residual).fold(0.0, f64::max);
    Ok(ProbeReport {
        alpha: cfg.alpha,
        eta_min: etas[n - 1],
        denominator_bound: cfg.denominator_bound,
        agreement: estimated_pairs == exact_pairs && max_residual < 1e-3,
        estimates,
        estimated_pairs,
        exact_pairs,
        max_residual,
        inconclusive: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::exp;

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    #[test]
    fn parses_examples() {
        let w = parse_polynomial("z^2 - x*y^2").unwrap();
        assert_eq!(w, v(Var::Z).pow(2).sub(&v(Var::X).mul(&v(Var::Y).pow(2))));
        assert_eq!(parse_polynomial("z^2 - - y").unwrap(), v(Var::Z).pow(2).add(&v(Var::Y)));
        assert_eq!(parse_polynomial("-y^2").unwrap(), v(Var::Y).pow(2).neg());
        assert_eq!(
            parse_polynomial("(1/2)*z + 3/4").unwrap(),
            v(Var::Z).scale(&Scalar::frac(1, 2)).add(&MultiPoly::constant(Scalar::frac(3, 4)))
        );
        assert_eq!(parse_polynomial("2z").unwrap_err().module(), "cli");
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_polynomial("z^2 - x*").unwrap_err() {
            Error::Parse { position, expected, .. } => {
                assert_eq!(position, 8);
                assert!(expected.contains('x'));
            }
            e => panic!("{e:?}"),
        }
        match parse_polynomial("z^2 - w").unwrap_err() {
            Error::UnknownVariable { name, position } => assert_eq!((name.as_str(), position), ("w", 6)),
            e => panic!("{e:?}"),
        }
        assert!(matches!(parse_polynomial("(z").unwrap_err(), Error::Parse { .. }));
        assert!(matches!(parse_polynomial("z/y").unwrap_err(), Error::Parse { .. }));
    }

    #[test]
    fn snapping() {
        assert_eq!(snap(0.50004, 12), exp(1, 2));
        assert_eq!(snap(-0.3333, 12), exp(-1, 3));
        assert_eq!(snap(0.0001, 12), exp(0, 1));
    }

    #[test]
    fn probe_closed_forms() {
        let cfg = ProbeConfig::default();
        let d = v(Var::X).mul(&v(Var::Y).pow(2)).add(&v(Var::T));
        let r = numeric_probe(&cfg, &d, &[ExponentPair::new(exp(1, 2), exp(-1, 2))]).unwrap();
        assert!(r.agreement, "{r:?}");
        let d = v(Var::X).mul(&v(Var::Y).pow(3)).add(&v(Var::T));
        let r = numeric_probe(&cfg, &d, &[ExponentPair::new(exp(1, 3), exp(-1, 3))]).unwrap();
        assert!(r.agreement, "{r:?}");
        let d = v(Var::Y).sub(&v(Var::T));
        let r = numeric_probe(&cfg, &d, &[ExponentPair::new(exp(1, 1), exp(0, 1))]).unwrap();
        assert!(r.agreement, "{r:?}");
    }

    #[test]
    fn whitney_report_round_trips() {
        let rep = run_pipeline(&RunConfig::new("z^2 - x*y^2")).unwrap();
        assert_eq!(rep.sigma.len(), 1);
        assert_eq!(rep.sigma[0].branches[0].pair, ExponentPair::new(exp(1, 2), exp(-1, 2)));
        assert!(rep.sigma[0].graph.q_manifold_flag);
        let back = Report::from_json(&rep.to_json().unwrap()).unwrap();
        assert_eq!(back, rep);
        assert!(rep.to_dot().starts_with("graph vanishing_zone"));
    }

    #[test]
    fn lens_verdict_with_solid_torus_trunk() {
        let mut cfg = RunConfig::new("z^2 - x*y^2");
        cfg.trunk = Some(TrunkStub { boundary_tori: 1, genus_sum: 0, exceptional_count: 0, cycle_rank: 0, solid_torus_flag: true });
        let rep = run_pipeline(&cfg).unwrap();
        assert_eq!(rep.sigma[0].verdict.as_ref().unwrap().summary, "open case (lens)");
    }

    #[test]
    fn two_dimensional_singular_locus_rejected() {
        let e = run_pipeline(&RunConfig::new("z^2")).unwrap_err();
        assert!(matches!(e, Error::HypothesisViolation(_)));
    }
}
