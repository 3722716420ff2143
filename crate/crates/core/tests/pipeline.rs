use carrousel_core::pipeline::{run_pipeline, Report, RunConfig};
use carrousel_core::Error;

#[test]
fn two_zone_germ() {
    let rep = run_pipeline(&RunConfig::new("2*z^3 - 3*y*z^2 + 6*x*y^4")).unwrap();
    let s = &rep.sigma[0];
    assert_eq!(s.ladder.zones.len(), 2);
    assert_eq!(s.transversal.mu, 5);
    assert_eq!(s.graph.pieces.len(), 3);
    assert_eq!(s.graph.boundary_tori, 2);
    assert_eq!(s.euler.total, -4);
    assert!(s.euler.ok);
}

#[test]
fn non_generic_germ_after_shear() {
    let mut cfg = RunConfig::new("z^3 + x*y^2*z - y^4");
    let plain = run_pipeline(&cfg).unwrap();
    assert!(!plain.genericity.transversality_ok);
    cfg.shear = Some((1, 0, 0));
    let rep = run_pipeline(&cfg).unwrap();
    assert!(rep.genericity.passed());
    let s = &rep.sigma[0];
    assert_eq!(s.transversal.mu, 4);
    assert_eq!(s.graph.boundary_tori, 2);
    assert!(s.euler.ok, "{:?}", s.euler);
}

#[test]
fn json_report_round_trips() {
    let rep = run_pipeline(&RunConfig::new("z^3 - x*y^3")).unwrap();
    let back = Report::from_json(&rep.to_json().unwrap()).unwrap();
    assert_eq!(back, rep);
    assert!(rep.to_dot().contains("∂1"));
}

#[test]
fn rejected_inputs() {
    assert!(matches!(run_pipeline(&RunConfig::new("z^2")), Err(Error::HypothesisViolation(_))));
    assert!(matches!(run_pipeline(&RunConfig::new("x^2 + y^2 + z^2")), Err(Error::HypothesisViolation(_))));
    assert!(matches!(run_pipeline(&RunConfig::new("z^2 - u*y^2")), Err(Error::UnknownVariable { .. })));
}
