//! Acceptance criteria; prints one PASS/FAIL line each and fails if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use carrousel_core::assembly::TrunkStub;
use carrousel_core::carrousel::ExponentPair;
use carrousel_core::pipeline::{run_pipeline, ProbeConfig, Report, RunConfig};
use carrousel_core::puiseux::{exp, exp_serde};
use num_integer::Integer;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn run(input: &str) -> Result<Report, String> {
    run_pipeline(&RunConfig::new(input)).map_err(|e| format!("{input}: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hirzebruch_family() -> Outcome {
    let mut slowest = Duration::ZERO;
    for &(m, k, l) in common::HIRZEBRUCH {
        let f = common::hirzebruch(m, k, l);
        let start = Instant::now();
        let rep = run(&f)?;
        let dt = start.elapsed();
        slowest = slowest.max(dt);
        ensure(dt < Duration::from_secs(10), || format!("{f} took {dt:?}"))?;
        ensure(rep.sigma.len() == 1, || format!("{f}: {} singular branches", rep.sigma.len()))?;
        let s = &rep.sigma[0];
        let pairs: BTreeSet<ExponentPair> = s.branches.iter().map(|b| b.pair).collect();
        let want = ExponentPair::new(exp(1, l as i64), exp(-(k as i64), l as i64));
        ensure(pairs.len() == 1 && pairs.contains(&want), || format!("{f}: pairs {pairs:?}, want {want}"))?;
        ensure(rep.covering_degree == m, || format!("{f}: covering degree {}", rep.covering_degree))?;
        ensure(s.graph.pieces.len() == 1 && s.graph.cycle_rank == 0, || {
            format!("{f}: {} pieces, cycle rank {}", s.graph.pieces.len(), s.graph.cycle_rank)
        })?;
    }
    Ok(format!("4 germs, one pair class and one Seifert piece each, slowest {slowest:.2?}"))
}

fn q_manifold() -> Outcome {
    let rep = run("z^2 - x*y^2")?;
    let s = &rep.sigma[0];
    let t = &s.transversal;
    ensure(t.mu == 1 && t.annulus_flag, || format!("transversal {t:?}"))?;
    ensure(s.graph.boundary_tori == 1, || format!("r = {}", s.graph.boundary_tori))?;
    ensure(s.graph.pieces.len() == 1, || format!("{} pieces", s.graph.pieces.len()))?;
    let p = &s.graph.pieces[0];
    let outer = p.boundary.iter().filter(|b| matches!(b, carrousel_core::assembly::BoundaryRef::Level { .. })).count();
    let tubes_regular = s.graph.solid_tori.iter().all(|st| st.core_multiplicity == Some(1));
    ensure(p.base_genus == 0 && outer == 1 && tubes_regular, || {
        format!("base genus {}, outer boundary {outer}, tube cores regular {tubes_regular}", p.base_genus)
    })?;
    let mults: Vec<Option<u32>> = p.exceptional_fibers.iter().map(|e| e.multiplicity).collect();
    ensure(mults == vec![Some(2), Some(2)], || format!("exceptional fibers {mults:?}"))?;
    ensure(s.graph.q_manifold_flag, || "Q-manifold flag not set".into())?;
    Ok("mu = 1, annulus, r = 1, disc base with two exceptional fibers of multiplicity 2".into())
}

fn resubstitution(reports: &[Report], elapsed: Duration) -> Outcome {
    let mut branches = 0;
    let mut exact = 0;
    for rep in reports {
        for s in &rep.sigma {
            for b in &s.branches {
                branches += 1;
                if b.exact {
                    exact += 1;
                    ensure(b.resubstitution == "exact root", || format!("{}: exact branch without sentinel", rep.input))?;
                } else {
                    let v = exp_serde::parse(&b.resubstitution)
                        .ok_or_else(|| format!("{}: valuation '{}'", rep.input, b.resubstitution))?;
                    ensure(v >= rep.truncation, || format!("{}: valuation {v} below {}", rep.input, rep.truncation))?;
                }
            }
        }
    }
    ensure(elapsed < Duration::from_secs(120), || format!("corpus took {elapsed:?}"))?;
    Ok(format!("{} germs, {branches} branches ({exact} exact roots), {elapsed:.2?}", reports.len()))
}

fn probe() -> Outcome {
    let mut worst: f64 = 0.0;
    for f in common::CORPUS {
        let mut cfg = RunConfig::new(f);
        cfg.probe = Some(ProbeConfig::default());
        let rep = run_pipeline(&cfg).map_err(|e| format!("{f}: {e}"))?;
        let p = rep.probe.as_ref().ok_or("no probe report")?;
        ensure(p.alpha == 0.5 && p.denominator_bound == 12 && p.eta_min <= 1e-6, || format!("{f}: probe scales {p:?}"))?;
        ensure(p.agreement && p.max_residual < 1e-3, || {
            format!("{f}: estimated {:?} vs exact {:?}, residual {:e}", p.estimated_pairs, p.exact_pairs, p.max_residual)
        })?;
        worst = worst.max(p.max_residual);
    }
    Ok(format!("{} germs agree, worst slope residual {worst:.1e}", common::CORPUS.len()))
}

fn euler(reports: &[Report]) -> Outcome {
    for rep in reports {
        for s in &rep.sigma {
            let want = 1 - s.transversal.mu;
            ensure(s.euler.ok && s.euler.total == want && s.euler.expected == want, || {
                format!("{}: total {} vs 1 - mu = {want}", rep.input, s.euler.total)
            })?;
        }
    }
    Ok(format!("{} germs, Riemann-Hurwitz total equals 1 - mu", reports.len()))
}

fn monodromy(reports: &[Report]) -> Outcome {
    for rep in reports {
        for s in &rep.sigma {
            let md = &s.monodromy;
            let lcm_d = s.tori.iter().fold(1i64, |a, t| a.lcm(&t.d)) as usize;
            let td = md.transversal_denominator as usize;
            let o = md.sun_permutation.order();
            ensure(lcm_d.is_multiple_of(o), || format!("{}: sun permutation order {o} vs lcm {lcm_d}", rep.input))?;
            for (name, p) in [("sheet", &md.sheet_permutation), ("transversal", &md.transversal_permutation)] {
                let o = p.order();
                ensure(td.is_multiple_of(o), || format!("{}: {name} permutation order {o} vs denominator {td}", rep.input))?;
            }
            let mut seen: Vec<usize> = md.transversal_branch_orbits.concat();
            seen.sort();
            ensure(seen == (0..s.transversal.branch_count).collect::<Vec<_>>(), || {
                format!("{}: orbits {:?} do not partition the branches", rep.input, md.transversal_branch_orbits)
            })?;
            ensure(s.graph.boundary_tori == md.transversal_branch_orbits.len(), || {
                format!("{}: {} boundary tori, {} orbits", rep.input, s.graph.boundary_tori, md.transversal_branch_orbits.len())
            })?;
        }
    }
    let mut cfg = RunConfig::new("z^2 - x^2*y^2");
    cfg.trunk = Some(TrunkStub { boundary_tori: 2, genus_sum: 0, exceptional_count: 0, cycle_rank: 0, solid_torus_flag: false });
    let rep = run_pipeline(&cfg).map_err(|e| e.to_string())?;
    let g = &rep.sigma[0].graph;
    ensure(g.boundary_tori == 2, || format!("z^2 - x^2*y^2: r = {}", g.boundary_tori))?;
    ensure(g.connectivity_flag == Some(true), || format!("glued graph connectivity {:?}", g.connectivity_flag))?;
    Ok(format!("{} germs consistent; z^2 - x^2*y^2 has r = 2 and a connected glued graph", reports.len()))
}

fn ladder_laws() -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner
        .run(&common::pair_set_strategy(), |(pairs, stranger)| {
            common::check_ladder(&pairs, stranger).map_err(proptest::test_runner::TestCaseError::fail)
        })
        .map_err(|e| e.to_string())?;
    Ok("1000 random pair sets: coverage, consecutive-only intersection, membership both ways".into())
}

fn verdicts() -> Outcome {
    let mut cfg = RunConfig::new("z^2 - x*y^2");
    cfg.trunk = Some(TrunkStub { boundary_tori: 1, genus_sum: 0, exceptional_count: 0, cycle_rank: 0, solid_torus_flag: false });
    let rep = run_pipeline(&cfg).map_err(|e| e.to_string())?;
    let s = &rep.sigma[0];
    let r = s.graph.boundary_tori as u32;
    let v = s.verdict.as_ref().ok_or("no verdict")?;
    let so = v.s_obstruction.as_ref().ok_or("no s-obstruction data")?;
    ensure(so.fires && so.increment == (2 * r, 2 * r) && so.bound == 2 * r, || format!("non-solid trunk: {v:?}"))?;

    cfg.trunk = Some(TrunkStub { boundary_tori: 1, genus_sum: 0, exceptional_count: 0, cycle_rank: 0, solid_torus_flag: true });
    let rep = run_pipeline(&cfg).map_err(|e| e.to_string())?;
    let v = rep.sigma[0].verdict.as_ref().ok_or("no verdict")?;
    ensure(v.open_case_lens && v.summary == "open case (lens)", || format!("solid trunk: {v:?}"))?;
    Ok(format!("s-obstruction fires with increment {} = 2r; solid trunk gives \"open case (lens)\"", 2 * r))
}

fn main() {
    let start = Instant::now();
    let corpus: Result<Vec<Report>, String> = common::CORPUS.iter().map(|f| run(f)).collect();
    let elapsed = start.elapsed();
    let with_corpus = |f: &dyn Fn(&[Report]) -> Outcome| match &corpus {
        Ok(reps) => f(reps),
        Err(e) => Err(format!("corpus run failed: {e}")),
    };

    let results: Vec<(&str, Outcome)> = vec![
        ("Hirzebruch family", hirzebruch_family()),
        ("Q-manifold case", q_manifold()),
        ("resubstitution oracle", with_corpus(&|r| resubstitution(r, elapsed))),
        ("numeric probe agreement", probe()),
        ("Euler characteristic", with_corpus(&euler)),
        ("monodromy consistency", with_corpus(&monodromy)),
        ("zone-ladder laws", ladder_laws()),
        ("verdict logic", verdicts()),
    ];
    let mut failed = 0;
    for (i, (name, res)) in results.iter().enumerate() {
        match res {
            Ok(detail) => println!("PASS {} {}: {}", i + 1, name, detail),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {}: {}", i + 1, name, why);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
