//! Newton polygons and Newton-Puiseux expansion, including the nested case
//! where coefficients are themselves Puiseux series in x.

pub mod nested;
pub mod newton;
pub mod series;

pub use nested::{
    default_x_prec, monodromy_permutation, nested_expand, nested_expand_with, puiseux_expand, puiseux_expand_with,
    resubstitution_valuation, to_nested_poly, BranchExpansion, Permutation, PuiseuxClass, Resubstitution, TailTerm,
};
pub use newton::{newton_polygon, np_roots, NewtonPolygonEdge, NpRoot, Target};
pub use series::{exp, Coeff, Exp, NestedSeries, Order, PuiseuxSeries, XSeries};

/// Serialize exponents as `"n/d"` strings.
pub mod exp_serde {
    use super::Exp;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(e: &Exp, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", e.numer(), e.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Exp, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational '{}'", s)))
    }

    pub fn parse(s: &str) -> Option<Exp> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
            None => (s.trim().parse().ok()?, 1i64),
        };
        if d == 0 {
            return None;
        }
        Some(Exp::new(n, d))
    }
}
