// Success paths only: building a JsError needs a JS host.

use trigdiff_wasm::{divergence, error_sweep, reconstruct, suggest_degree};

#[test]
fn reconstruct_hat() {
    let r = reconstruct("ex8_2", 0.01, 0.0, 24, 8, 200).unwrap();
    assert_eq!(r.t().len(), 200);
    assert_eq!(r.phi().len(), 200);
    assert!((r.exact()[0] - std::f64::consts::PI).abs() < 1e-12);
    assert!(r.r() < 0.1);
    assert!(r.r() <= r.bound());
}

#[test]
fn sweep_has_one_value_per_degree() {
    let errs = error_sweep("ex8_1_p2", 0.01, 0.0, 12, 12).unwrap();
    assert_eq!(errs.len(), 12);
    assert!(errs[5] < 1e-10);
    assert!(errs[11] > errs[5]);
}

#[test]
fn divergence_grows() {
    let norms = divergence(1, 1.0, 64).unwrap();
    for (i, v) in norms.iter().enumerate() {
        let n = (i + 1) as f64;
        assert!((v - ((4.0 * n + 2.0) / std::f64::consts::PI).sqrt()).abs() < 1e-9);
    }
}

#[test]
fn suggested_degree_matches_cli_rule() {
    assert_eq!(suggest_degree("ex8_2", 0.01, 0.0).unwrap(), 29);
}
