//! Ecological Cycle Optimizer (ECO) with benchmark suites, a PSO baseline,
//! statistical analysis and an experiment harness.
//!
//! ```
//! use ecocycle::{classic, eco};
//!
//! let sphere = classic::make_classic(1, 5).unwrap();
//! let out = eco::run(&sphere, &eco::EcoConfig::new(5_000, 7)).unwrap();
//! assert!(out.best.value < 1e-3);
//! ```

pub mod analysis;
pub mod classic;
pub mod eco;
pub mod engineering;
pub mod harness;
pub mod problems;
pub mod pso;
pub mod rng;
pub mod trace;

pub use problems::{Bounds, Evaluation, Evaluator, Problem, ProblemError};
pub use trace::{RunOutcome, RunTrace, TraceRow};
