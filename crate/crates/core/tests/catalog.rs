mod common;

use std::f64::consts::{PI, TAU};

use trigdiff::experiments::{catalog, CATALOG_IDS};
use trigdiff::regularize::taylor_polynomial;

use common::finite_difference;

fn breaks(id: &str) -> Vec<f64> {
    catalog(id)
        .unwrap()
        .y
        .pieces()
        .iter()
        .flat_map(|p| [p.start, p.end])
        .chain(
            catalog(id)
                .unwrap()
                .derivative
                .pieces()
                .iter()
                .flat_map(|p| [p.start, p.end]),
        )
        .collect()
}

#[test]
fn derivatives_agree_with_finite_differences() {
    for id in CATALOG_IDS {
        let e = catalog(id).unwrap();
        let p = e.p.get();
        let h = [1e-4, 1e-3, 2e-3][p as usize - 1];
        let cuts = breaks(id);
        let scale = (0..=200)
            .map(|i| e.derivative.eval(TAU * i as f64 / 200.0).abs())
            .fold(1.0, f64::max);
        let mut checked = 0;
        for i in 1..=100 {
            let x = TAU * i as f64 / 101.0;
            if cuts.iter().any(|c| (x - c).abs() < 3.0 * h) {
                continue;
            }
            let fd = finite_difference(|t| e.y.eval(t), x, p, h);
            let want = e.derivative.eval(x);
            assert!(
                (fd - want).abs() <= 1e-4 * scale,
                "{id} at {x}: {fd} vs {want}"
            );
            checked += 1;
        }
        assert!(checked >= 95, "{id}: only {checked} points checked");
    }
}

#[test]
fn integrating_derivative_recovers_signal() {
    for id in CATALOG_IDS {
        let e = catalog(id).unwrap();
        let mut v = e.derivative.clone();
        for _ in 0..e.p.get() {
            v = v.integral_from_zero();
        }
        let v = v.add_polynomial(&taylor_polynomial(&e.initial_data));
        for i in 0..=64 {
            let x = TAU * i as f64 / 64.0;
            let (a, b) = (v.eval(x), e.y.eval(x));
            assert!(
                (a - b).abs() <= 1e-9 * b.abs().max(1.0),
                "{id} at {x}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn initial_data_matches_signal_value() {
    for id in CATALOG_IDS {
        let e = catalog(id).unwrap();
        assert!((e.y.eval(0.0) - e.initial_data[0]).abs() < 1e-12, "{id}");
        assert_eq!(e.initial_data.len(), e.p.get() as usize, "{id}");
    }
}

#[test]
fn hat_derivative_spot_values() {
    for id in ["ex8_2", "ex8_3", "ex8_4"] {
        let d = catalog(id).unwrap().derivative;
        for x in [0.0, 1.0, PI, 5.0, TAU] {
            assert!((d.eval(x) - (x - PI).abs()).abs() < 1e-12, "{id} at {x}");
        }
    }
}

#[test]
fn unknown_id_is_rejected() {
    assert!(catalog("ex9_9").is_err());
}
