//! Bounded, optionally constrained black-box problems.
//!
//! Every optimizer in the crate talks to a [`Problem`] through an
//! [`Evaluator`], which owns the function-evaluation budget and the noise
//! stream used by stochastic objectives. Candidate solutions are ranked with
//! [`Evaluation::compare`], a feasibility-first ordering:
//!
//! * a feasible point beats an infeasible one,
//! * two feasible points are ranked by objective value,
//! * two infeasible points are ranked by total constraint violation.

use std::cmp::Ordering;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::rng;

/// Total violation at or below this value counts as feasible.
pub const TOL_FEAS: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("function evaluation budget of {max_fes} exhausted")]
    BudgetExhausted { max_fes: u64 },
    #[error("point has {got} coordinates, problem expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("unknown problem id `{0}`")]
    UnknownFunction(String),
}

/// Axis-aligned search box.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, ProblemError> {
        if lower.is_empty() {
            return Err(ProblemError::InvalidBounds("dimension must be at least 1".into()));
        }
        if lower.len() != upper.len() {
            return Err(ProblemError::InvalidBounds(format!(
                "lower has {} entries, upper has {}",
                lower.len(),
                upper.len()
            )));
        }
        // negated so NaN bounds are rejected too
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if let Some(j) = (0..lower.len()).find(|&j| !(lower[j] < upper[j])) {
            return Err(ProblemError::InvalidBounds(format!(
                "lower[{j}] = {} is not below upper[{j}] = {}",
                lower[j], upper[j]
            )));
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[lo, hi]` in every one of `dim` dimensions.
    pub fn uniform(lo: f64, hi: f64, dim: usize) -> Result<Self, ProblemError> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| v >= lo && v <= hi)
    }

    /// Smallest box edge, `min_j (upper[j] - lower[j])`.
    pub fn min_width(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| hi - lo)
            .fold(f64::INFINITY, f64::min)
    }

    /// Uniform sample with an independent draw per coordinate.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| lo + rng.random::<f64>() * (hi - lo))
            .collect()
    }
}

/// A minimization problem over a box with inequality constraints `g_i(x) <= 0`.
pub trait Problem: Send + Sync {
    fn name(&self) -> &str;

    fn bounds(&self) -> &Bounds;

    fn dim(&self) -> usize {
        self.bounds().dim()
    }

    /// Objective value. `noise` is only drawn from by noisy problems.
    fn objective(&self, x: &[f64], noise: &mut dyn rand::RngCore) -> f64;

    fn num_constraints(&self) -> usize {
        0
    }

    /// Constraint values `g_i(x)` in declaration order; `out` has
    /// `num_constraints()` slots.
    fn constraints(&self, _x: &[f64], _out: &mut [f64]) {}

    fn known_optimum(&self) -> Option<f64> {
        None
    }

    fn is_noisy(&self) -> bool {
        false
    }
}

/// Sum of positive constraint values.
pub fn total_violation(problem: &dyn Problem, x: &[f64]) -> f64 {
    let m = problem.num_constraints();
    if m == 0 {
        return 0.0;
    }
    let mut g = vec![0.0; m];
    problem.constraints(x, &mut g);
    g.iter().map(|&gi| if gi > 0.0 { gi } else { 0.0 }).sum()
}

/// Cached result of one function evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub violation: f64,
    pub feasible: bool,
}

impl Evaluation {
    pub fn new(value: f64, violation: f64) -> Self {
        Self { value, violation, feasible: violation <= TOL_FEAS }
    }

    pub fn unconstrained(value: f64) -> Self {
        Self::new(value, 0.0)
    }

    /// Feasibility-rule ordering: `Less` means `self` is better.
    pub fn compare(&self, other: &Self) -> Ordering {
        match (self.feasible, other.feasible) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (true, true) => cmp_key(self.value, other.value),
            (false, false) => cmp_key(self.violation, other.violation),
        }
    }

    pub fn is_better_than(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Less
    }
}

/// Ascending order with NaN ranked after every number and equal to itself.
fn cmp_key(a: f64, b: f64) -> Ordering {
    match (a.is_nan(), b.is_nan()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => a.partial_cmp(&b).unwrap_or(Ordering::Equal),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalBudget {
    max_fes: u64,
    used: u64,
}

impl EvalBudget {
    pub fn new(max_fes: u64) -> Self {
        Self { max_fes, used: 0 }
    }

    pub fn max_fes(&self) -> u64 {
        self.max_fes
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        self.max_fes - self.used
    }

    pub fn is_exhausted(&self) -> bool {
        self.used >= self.max_fes
    }

    fn charge(&mut self) -> Result<(), ProblemError> {
        if self.is_exhausted() {
            return Err(ProblemError::BudgetExhausted { max_fes: self.max_fes });
        }
        self.used += 1;
        Ok(())
    }
}

/// Evaluates `x`, charging exactly one function evaluation to `budget`.
pub fn evaluate(
    problem: &dyn Problem,
    x: &[f64],
    budget: &mut EvalBudget,
    noise: &mut dyn rand::RngCore,
) -> Result<Evaluation, ProblemError> {
    if x.len() != problem.dim() {
        return Err(ProblemError::DimensionMismatch { expected: problem.dim(), got: x.len() });
    }
    budget.charge()?;
    let value = problem.objective(x, noise);
    Ok(Evaluation::new(value, total_violation(problem, x)))
}

/// A problem bound to one run's budget and noise stream.
pub struct Evaluator<'p> {
    problem: &'p dyn Problem,
    budget: EvalBudget,
    noise: ChaCha8Rng,
}

impl<'p> Evaluator<'p> {
    pub fn new(problem: &'p dyn Problem, max_fes: u64, seed: u64) -> Self {
        Self {
            problem,
            budget: EvalBudget::new(max_fes),
            noise: rng::stream(seed, rng::NOISE_STREAM),
        }
    }

    pub fn problem(&self) -> &'p dyn Problem {
        self.problem
    }

    pub fn budget(&self) -> &EvalBudget {
        &self.budget
    }

    pub fn evaluate(&mut self, x: &[f64]) -> Result<Evaluation, ProblemError> {
        evaluate(self.problem, x, &mut self.budget, &mut self.noise)
    }
}

/// Returns `x` when it lies in the box, otherwise a fresh uniform sample.
pub fn clamp_or_resample<R: Rng + ?Sized>(x: Vec<f64>, bounds: &Bounds, rng: &mut R) -> Vec<f64> {
    if bounds.contains(&x) {
        x
    } else {
        bounds.sample(rng)
    }
}

/// Problem built from plain closures; handy for tests and ad-hoc objectives.
pub struct FnProblem<F> {
    name: String,
    bounds: Bounds,
    f: F,
    known_optimum: Option<f64>,
}

impl<F> FnProblem<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    pub fn new(name: impl Into<String>, bounds: Bounds, f: F) -> Self {
        Self { name: name.into(), bounds, f, known_optimum: None }
    }

    pub fn with_optimum(mut self, value: f64) -> Self {
        self.known_optimum = Some(value);
        self
    }
}

impl<F> Problem for FnProblem<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn objective(&self, x: &[f64], _noise: &mut dyn rand::RngCore) -> f64 {
        (self.f)(x)
    }

    fn known_optimum(&self) -> Option<f64> {
        self.known_optimum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sphere(dim: usize) -> FnProblem<impl Fn(&[f64]) -> f64 + Send + Sync> {
        FnProblem::new("sphere", Bounds::uniform(-100.0, 100.0, dim).unwrap(), |x: &[f64]| {
            x.iter().map(|v| v * v).sum()
        })
    }

    #[test]
    fn bounds_reject_bad_boxes() {
        assert!(Bounds::new(vec![], vec![]).is_err());
        assert!(Bounds::new(vec![0.0], vec![1.0, 2.0]).is_err());
        assert!(Bounds::new(vec![1.0], vec![1.0]).is_err());
        assert!(Bounds::new(vec![0.0, 0.0], vec![1.0, 2.0]).is_ok());
    }

    #[test]
    fn evaluate_charges_one_fe_and_stops_at_budget() {
        let p = sphere(2);
        let mut ev = Evaluator::new(&p, 2, 0);
        assert_eq!(ev.evaluate(&[1.0, 1.0]).unwrap().value, 2.0);
        assert_eq!(ev.budget().used(), 1);
        ev.evaluate(&[0.0, 0.0]).unwrap();
        assert_eq!(
            ev.evaluate(&[0.0, 0.0]),
            Err(ProblemError::BudgetExhausted { max_fes: 2 })
        );
        assert_eq!(ev.budget().used(), 2);
    }

    #[test]
    fn evaluate_rejects_wrong_length() {
        let p = sphere(3);
        let mut ev = Evaluator::new(&p, 10, 0);
        assert_eq!(
            ev.evaluate(&[0.0]),
            Err(ProblemError::DimensionMismatch { expected: 3, got: 1 })
        );
        assert_eq!(ev.budget().used(), 0);
    }

    #[test]
    fn compare_examples() {
        let feas = |v| Evaluation::new(v, 0.0);
        let infeas = |viol| Evaluation::new(0.0, viol);
        assert_eq!(feas(5.0).compare(&Evaluation::new(3.0, 1.0)), Ordering::Less);
        assert_eq!(feas(3.0).compare(&feas(5.0)), Ordering::Less);
        assert_eq!(infeas(0.1).compare(&infeas(0.2)), Ordering::Less);
        assert_eq!(feas(3.0).compare(&feas(3.0)), Ordering::Equal);
        assert_eq!(feas(f64::NAN).compare(&feas(1e300)), Ordering::Greater);
    }

    #[test]
    fn violation_within_tolerance_is_feasible() {
        assert!(Evaluation::new(1.0, TOL_FEAS).feasible);
        assert!(!Evaluation::new(1.0, 2.0 * TOL_FEAS).feasible);
    }

    #[test]
    fn resample_inside_unchanged_outside_replaced() {
        let b = Bounds::uniform(0.0, 1.0, 2).unwrap();
        let mut r = rng::stream(1, 0);
        assert_eq!(clamp_or_resample(vec![0.2, 1.0], &b, &mut r), vec![0.2, 1.0]);
        let y = clamp_or_resample(vec![0.2, 1.5], &b, &mut r);
        assert!(b.contains(&y));
    }

    #[test]
    fn resample_is_uniform() {
        let b = Bounds::uniform(0.0, 1.0, 2).unwrap();
        let mut r = rng::stream(42, 0);
        let n = 10_000;
        let mut sum = [0.0; 2];
        for _ in 0..n {
            let y = clamp_or_resample(vec![2.0, 2.0], &b, &mut r);
            sum[0] += y[0];
            sum[1] += y[1];
        }
        for s in sum {
            assert!((s / n as f64 - 0.5).abs() < 0.02);
        }
    }

    fn arb_eval() -> impl Strategy<Value = Evaluation> {
        // small discrete grid so ties actually occur
        (0u8..5, prop_oneof![Just(0.0), Just(0.5), Just(1.0)])
            .prop_map(|(v, viol)| Evaluation::new(f64::from(v), viol))
    }

    proptest! {
        #[test]
        fn compare_is_a_total_preorder(a in arb_eval(), b in arb_eval(), c in arb_eval()) {
            prop_assert_eq!(a.compare(&b), b.compare(&a).reverse());
            if a.compare(&b) != Ordering::Greater && b.compare(&c) != Ordering::Greater {
                prop_assert!(a.compare(&c) != Ordering::Greater);
            }
        }

        #[test]
        fn resample_output_in_box(x in proptest::collection::vec(-3.0f64..3.0, 3), seed in any::<u64>()) {
            let b = Bounds::new(vec![-1.0, 0.0, 0.5], vec![1.0, 2.0, 0.75]).unwrap();
            let mut r = rng::stream(seed, 0);
            prop_assert!(b.contains(&clamp_or_resample(x, &b, &mut r)));
        }
    }
}
