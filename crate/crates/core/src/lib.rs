//! Stable numerical differentiation of orders 1, 2 and 3 on `(0, 2π)`.
//!
//! The `p`-th derivative of `y` is recovered by solving the first-kind
//! Volterra equation `A^{(p)} φ = y − Σ_{k<p} y^{(k)}(0) x^k/k!` with a
//! trigonometric Galerkin method. The truncation degree `n` of the
//! projection space plays the role of the regularization parameter.
//!
//! ```
//! use trigdiff::basis::{ExactSignal, TrigTerm};
//! use trigdiff::galerkin::Order;
//! use trigdiff::regularize::{differentiate, DiffProblem, ParameterRule, Signal};
//!
//! let y = ExactSignal::trig(vec![TrigTerm::sin(1.0, 1)]).unwrap();
//! let problem = DiffProblem::new(Order::First, Signal::Exact(y), vec![0.0], 0.0, 0.0).unwrap();
//! let out = differentiate(&problem, &ParameterRule::Fixed(2)).unwrap();
//! assert!((out.solution.eval(0.0) - 1.0).abs() < 1e-12);
//! ```

pub mod basis;
pub mod bounds;
pub mod error;
pub mod experiments;
pub mod galerkin;
pub mod oracle;
pub mod regularize;

pub use error::{Error, Result};
pub use galerkin::Order;

#[cfg(feature = "parallel")]
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}
