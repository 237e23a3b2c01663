//! Bindings for the browser demo in `www/`.

use std::f64::consts::TAU;

use wasm_bindgen::prelude::*;

use trigdiff::basis::{fourier_coeffs_exact, sobolev_per_norm, ExactSignal, Polynomial};
use trigdiff::experiments::{catalog, run_case, CATALOG_IDS};
use trigdiff::regularize::{
    a_priori_bound, builtin_constants, choose_n, divergence_probe, ParameterRule, SobolevPrior,
};
use trigdiff::Order;

fn js_err(e: trigdiff::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn prior_smoothness(id: &str) -> f64 {
    // step-type derivatives are only in H^s for s < 1/2
    if matches!(id, "ex8_5" | "ex8_6" | "ex8_7") {
        0.25
    } else {
        1.0
    }
}

fn prior(id: &str) -> Result<SobolevPrior, trigdiff::Error> {
    let l = prior_smoothness(id);
    let d = catalog(id)?.derivative;
    // the demo needs an interactive response; 2000 terms is plenty for display
    Ok(SobolevPrior {
        l,
        norm: sobolev_per_norm(&fourier_coeffs_exact(&d, 2000)?, l),
    })
}

#[wasm_bindgen]
pub fn example_ids() -> Vec<JsValue> {
    CATALOG_IDS.iter().map(|s| JsValue::from_str(s)).collect()
}

#[wasm_bindgen]
pub fn example_order(id: &str) -> Result<u32, JsError> {
    Ok(catalog(id).map_err(js_err)?.p.get())
}

#[wasm_bindgen]
pub fn example_description(id: &str) -> Result<String, JsError> {
    Ok(catalog(id).map_err(js_err)?.description.to_string())
}

/// Degree picked by the Sobolev rule for the example's derivative.
#[wasm_bindgen]
pub fn suggest_degree(id: &str, delta: f64, delta_i: f64) -> Result<usize, JsError> {
    let e = catalog(id).map_err(js_err)?;
    let SobolevPrior { l, norm } = prior(id).map_err(js_err)?;
    let rule = ParameterRule::SobolevPrior {
        l,
        norm,
        noisy_initial: delta_i > 0.0,
    };
    choose_n(&rule, delta.max(1e-12), &builtin_constants(e.p)).map_err(js_err)
}

#[wasm_bindgen]
pub struct Reconstruction {
    t: Vec<f64>,
    exact: Vec<f64>,
    phi: Vec<f64>,
    r: f64,
    bound: f64,
    n: usize,
}

#[wasm_bindgen]
impl Reconstruction {
    #[wasm_bindgen(getter)]
    pub fn t(&self) -> Vec<f64> {
        self.t.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn exact(&self) -> Vec<f64> {
        self.exact.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn phi(&self) -> Vec<f64> {
        self.phi.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn r(&self) -> f64 {
        self.r
    }

    #[wasm_bindgen(getter)]
    pub fn bound(&self) -> f64 {
        self.bound
    }

    #[wasm_bindgen(getter)]
    pub fn n(&self) -> usize {
        self.n
    }
}

/// Noisy example data differentiated at degree `n`, sampled at `points` nodes.
#[wasm_bindgen]
pub fn reconstruct(
    id: &str,
    delta: f64,
    delta_i: f64,
    n: usize,
    noise_freq: u32,
    points: usize,
) -> Result<Reconstruction, JsError> {
    let e = catalog(id).map_err(js_err)?;
    let out = run_case(&e, delta, delta_i, noise_freq, &ParameterRule::Fixed(n)).map_err(js_err)?;
    let points = points.max(2);
    let t: Vec<f64> = (0..points)
        .map(|i| TAU * i as f64 / (points - 1) as f64)
        .collect();
    let bound = a_priori_bound(
        &builtin_constants(e.p),
        n,
        delta,
        delta_i,
        Some(prior(id).map_err(js_err)?),
    );
    let norm = e.derivative.l2_norm();
    Ok(Reconstruction {
        exact: t.iter().map(|&x| e.derivative.eval(x)).collect(),
        phi: t.iter().map(|&x| out.solution.eval(x)).collect(),
        t,
        r: out.r,
        bound: bound / norm,
        n,
    })
}

/// Relative error for `n = 1..=n_max`.
#[wasm_bindgen]
pub fn error_sweep(
    id: &str,
    delta: f64,
    delta_i: f64,
    noise_freq: u32,
    n_max: usize,
) -> Result<Vec<f64>, JsError> {
    let e = catalog(id).map_err(js_err)?;
    (1..=n_max)
        .map(|n| {
            run_case(&e, delta, delta_i, noise_freq, &ParameterRule::Fixed(n))
                .map(|o| o.r)
                .map_err(js_err)
        })
        .collect()
}

/// Norms of the unregularized solution for the constant signal `level`,
/// which is not in the range of the integral operator.
#[wasm_bindgen]
pub fn divergence(p: u32, level: f64, n_max: usize) -> Result<Vec<f64>, JsError> {
    let order = Order::try_from(p).map_err(js_err)?;
    let sig = ExactSignal::polynomial(Polynomial::constant(level));
    let ns: Vec<usize> = (1..=n_max).collect();
    divergence_probe(order, &sig, &ns).map_err(js_err)
}
