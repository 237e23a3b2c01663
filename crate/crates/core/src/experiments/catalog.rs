use std::f64::consts::PI;

use serde::Serialize;

use crate::basis::{ExactSignal, Polynomial, TrigTerm};
use crate::error::{Error, Result};
use crate::galerkin::Order;

/// Identifiers of the built-in test problems.
pub const CATALOG_IDS: [&str; 9] = [
    "ex8_1_p1", "ex8_1_p2", "ex8_1_p3", "ex8_2", "ex8_3", "ex8_4", "ex8_5", "ex8_6", "ex8_7",
];

/// A test function with its exact `p`-th derivative and initial values
/// `y(0), …, y^{(p−1)}(0)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub p: Order,
    pub y: ExactSignal,
    pub derivative: ExactSignal,
    pub initial_data: Vec<f64>,
    pub description: &'static str,
}

fn harmonic6() -> f64 {
    (1..=6).rev().map(|k| 1.0 / k as f64).sum()
}

fn smooth(p: Order) -> CatalogEntry {
    // Σ sin(kx)/k² (Σ sin(kx) for the third-order entry) plus 1 + x + … + x^{p−1}
    let base: Vec<TrigTerm> = (1..=6u32)
        .map(|k| match p {
            Order::Third => TrigTerm::sin(1.0, k),
            _ => TrigTerm::sin(1.0 / (k * k) as f64, k),
        })
        .collect();
    let poly = Polynomial::new(vec![1.0; p.get() as usize]);
    let y = ExactSignal::trig(base)
        .expect("valid terms")
        .add_polynomial(&poly);
    let h = harmonic6();
    let (id, derivative, initial_data, description) = match p {
        Order::First => (
            "ex8_1_p1",
            (1..=6u32)
                .map(|k| TrigTerm::cos(1.0 / k as f64, k))
                .collect::<Vec<_>>(),
            vec![1.0],
            "sum of sin(kx)/k^2 for k <= 6, plus 1",
        ),
        Order::Second => (
            "ex8_1_p2",
            (1..=6u32).map(|k| TrigTerm::sin(-1.0, k)).collect(),
            vec![1.0, 1.0 + h],
            "sum of sin(kx)/k^2 for k <= 6, plus 1 + x",
        ),
        Order::Third => (
            "ex8_1_p3",
            (1..=6u32)
                .map(|k| TrigTerm::cos(-((k * k * k) as f64), k))
                .collect(),
            vec![1.0, 22.0, 2.0],
            "sum of sin(kx) for k <= 6, plus 1 + x + x^2",
        ),
    };
    CatalogEntry {
        id,
        p,
        y,
        derivative: ExactSignal::trig(derivative).expect("valid terms"),
        initial_data,
        description,
    }
}

fn piecewise(breaks: &[(f64, Vec<f64>)]) -> ExactSignal {
    ExactSignal::piecewise(breaks).expect("catalog pieces tile [0, 2π]")
}

fn hat() -> ExactSignal {
    piecewise(&[(PI, vec![PI, -1.0]), (2.0 * PI, vec![-PI, 1.0])])
}

fn steps_derivative(p: Order) -> ExactSignal {
    let t = 2.0 * PI;
    match p {
        Order::First => piecewise(&[(4.0, vec![1.0]), (6.0, vec![0.0]), (t, vec![-0.5])]),
        Order::Second => piecewise(&[(4.0, vec![-14.0, 6.0]), (6.0, vec![2.0]), (t, vec![0.0])]),
        Order::Third => piecewise(&[(4.0, vec![6.0, 24.0]), (6.0, vec![78.0]), (t, vec![0.0])]),
    }
}

pub fn catalog(id: &str) -> Result<CatalogEntry> {
    let t = 2.0 * PI;
    let (pi2, pi3, pi4) = (PI * PI, PI.powi(3), PI.powi(4));
    let entry = match id {
        "ex8_1_p1" => smooth(Order::First),
        "ex8_1_p2" => smooth(Order::Second),
        "ex8_1_p3" => smooth(Order::Third),
        "ex8_2" => CatalogEntry {
            id: "ex8_2",
            p: Order::First,
            y: piecewise(&[(PI, vec![0.0, PI, -0.5]), (t, vec![pi2, -PI, 0.5])]),
            derivative: hat(),
            initial_data: vec![0.0],
            description: "first derivative is the periodic hat |x - pi|",
        },
        "ex8_3" => CatalogEntry {
            id: "ex8_3",
            p: Order::Second,
            y: piecewise(&[
                (PI, vec![0.0, 0.0, PI / 2.0, -1.0 / 6.0]),
                (t, vec![-pi3 / 3.0, pi2, -PI / 2.0, 1.0 / 6.0]),
            ]),
            derivative: hat(),
            initial_data: vec![0.0, 0.0],
            description: "second derivative is the periodic hat |x - pi|",
        },
        "ex8_4" => CatalogEntry {
            id: "ex8_4",
            p: Order::Third,
            y: piecewise(&[
                (PI, vec![0.0, 0.0, 0.0, PI / 6.0, -1.0 / 24.0]),
                (
                    t,
                    vec![pi4 / 12.0, -pi3 / 3.0, pi2 / 2.0, -PI / 6.0, 1.0 / 24.0],
                ),
            ]),
            derivative: hat(),
            initial_data: vec![0.0, 0.0, 0.0],
            description: "third derivative is the periodic hat |x - pi|",
        },
        "ex8_5" => CatalogEntry {
            id: "ex8_5",
            p: Order::First,
            y: piecewise(&[
                (4.0, vec![0.0, 1.0]),
                (6.0, vec![4.0]),
                (t, vec![7.0, -0.5]),
            ]),
            derivative: steps_derivative(Order::First),
            initial_data: vec![0.0],
            description: "first derivative is a three-level step function",
        },
        "ex8_6" => CatalogEntry {
            id: "ex8_6",
            p: Order::Second,
            y: piecewise(&[
                (4.0, vec![0.0, 0.0, -7.0, 1.0]),
                (6.0, vec![0.0, -16.0, 1.0]),
                (t, vec![-36.0, -4.0]),
            ]),
            derivative: steps_derivative(Order::Second),
            initial_data: vec![0.0, 0.0],
            description: "second derivative is piecewise linear with jumps",
        },
        "ex8_7" => CatalogEntry {
            id: "ex8_7",
            p: Order::Third,
            y: piecewise(&[
                (4.0, vec![0.0, 0.0, 0.0, 1.0, 1.0]),
                (6.0, vec![0.0, 64.0, -48.0, 13.0]),
                (t, vec![2808.0, -1340.0, 186.0]),
            ]),
            derivative: steps_derivative(Order::Third),
            initial_data: vec![0.0, 0.0, 0.0],
            description: "third derivative is piecewise linear with jumps",
        },
        other => return Err(Error::UnknownEntry(other.to_string())),
    };
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn spot_values() {
        assert_relative_eq!(
            catalog("ex8_2").unwrap().derivative.eval(PI / 2.0),
            PI / 2.0
        );
        assert_eq!(catalog("ex8_5").unwrap().derivative.eval(5.0), 0.0);
        assert_eq!(catalog("ex8_1_p3").unwrap().initial_data[2], 2.0);
        assert!(matches!(catalog("ex9"), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn all_ids_resolve() {
        for id in CATALOG_IDS {
            let e = catalog(id).unwrap();
            assert_eq!(e.id, id);
            assert_eq!(e.initial_data.len(), e.p.get() as usize);
        }
    }
}
