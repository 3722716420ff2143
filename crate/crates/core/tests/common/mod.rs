#![allow(dead_code)]

use carrousel_core::carrousel::{build_zone_ladder, classify_pair, ExponentPair, Radius};
use carrousel_core::puiseux::Exp;
use carrousel_core::Error;
use proptest::prelude::*;

/// Germs with a 1-dimensional singular locus through the origin.
pub const CORPUS: &[&str] = &[
    "z^2 - x*y^2",
    "z^3 - x*y^2",
    "z^3 - x^2*y^3",
    "z^2 - x*y^3",
    "z^2 - x^2*y^2",
    "z^2 - y^2",
    "z^3 - x*y^3",
    "z^2 - y^3",
    "2*z^3 - 3*y*z^2 + 6*x*y^4",
    "z^3 - x^2*y^2",
    "z^2 - x*y^2 - y^4",
    "z^4 - x*y^2",
];

/// `(m, k, l)` with `f = z^m - x^k y^l`.
pub const HIRZEBRUCH: &[(u32, u32, u32)] = &[(2, 1, 2), (3, 1, 2), (3, 2, 3), (2, 1, 3)];

pub fn hirzebruch(m: u32, k: u32, l: u32) -> String {
    let x = if k == 1 { "x".to_string() } else { format!("x^{k}") };
    format!("z^{m} - {x}*y^{l}")
}

/// Log-radius with `log η = -1e6`, `log θ = -2`, `log α = -1`.
fn log_radius(r: &Radius) -> f64 {
    let f = |e: &Exp| *e.numer() as f64 / *e.denom() as f64;
    match r {
        Radius::Zero => f64::NEG_INFINITY,
        Radius::Theta => -2.0,
        Radius::Mono { eta, alpha } => -(f(eta) * 1e6 + f(alpha)),
    }
}

/// Ladder laws checked against a numeric instantiation of the scales.
pub fn check_ladder(pairs: &[ExponentPair], stranger: ExponentPair) -> Result<(), String> {
    let ladder = build_zone_ladder(pairs).map_err(|e| e.to_string())?;
    ladder.verify().map_err(|e| e.to_string())?;
    let zs = &ladder.zones;
    let span: Vec<(f64, f64)> = zs.iter().map(|z| (log_radius(&z.inner), log_radius(&z.outer))).collect();

    // coverage of [0, θ] without gaps
    if span[0].0 != f64::NEG_INFINITY || span[span.len() - 1].1 != -2.0 {
        return Err("zones do not reach 0 and θ".into());
    }
    for (n, s) in span.iter().enumerate() {
        if !(s.0 < s.1) {
            return Err(format!("zone {:?} is empty", zs[n].index));
        }
        if n > 0 && span[n - 1].1 != s.0 {
            return Err(format!("gap before zone {:?}", zs[n].index));
        }
        // only consecutive zones meet
        for (m, t) in span.iter().enumerate().skip(n + 2) {
            if !(s.1 < t.0) {
                return Err(format!("zones {:?} and {:?} meet", zs[n].index, zs[m].index));
            }
        }
    }

    // each input pair lies in exactly one open zone, the one carrying it
    let mut distinct = pairs.to_vec();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != zs.len() {
        return Err(format!("{} pairs but {} zones", distinct.len(), zs.len()));
    }
    for p in &distinct {
        let m = log_radius(&p.modulus());
        let hits: Vec<usize> = span.iter().enumerate().filter(|(_, s)| s.0 < m && m < s.1).map(|(i, _)| i).collect();
        if hits.len() != 1 || zs[hits[0]].pair != *p {
            return Err(format!("pair {} lands in zones {:?}", p, hits));
        }
        let (idx, _) = classify_pair(p, &ladder).map_err(|e| e.to_string())?;
        if idx != zs[hits[0]].index {
            return Err(format!("classify_pair puts {} in {:?}", p, idx));
        }
    }
    for z in zs {
        if !distinct.contains(&z.pair) {
            return Err(format!("zone {:?} carries a foreign pair", z.index));
        }
    }
    if !distinct.contains(&stranger) && !matches!(classify_pair(&stranger, &ladder), Err(Error::StaleLadder(_))) {
        return Err(format!("pair {} outside the set was classified", stranger));
    }
    Ok(())
}

pub fn pair_strategy() -> impl Strategy<Value = ExponentPair> {
    (1i64..=24, 1i64..=12, -36i64..=36, 1i64..=12)
        .prop_filter("q/p ≤ 2", |(a, b, _, _)| a <= &(2 * b))
        .prop_map(|(a, b, c, d)| ExponentPair::new(Exp::new(a, b), Exp::new(c, d)))
}

pub fn pair_set_strategy() -> impl Strategy<Value = (Vec<ExponentPair>, ExponentPair)> {
    (prop::collection::vec(pair_strategy(), 1..8), pair_strategy())
}
