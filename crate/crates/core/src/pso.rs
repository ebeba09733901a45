//! Global-best particle swarm optimization, the comparison baseline.

use rand::Rng;

use crate::analysis::population_diversity;
use crate::problems::{clamp_or_resample, Evaluation, Evaluator, Problem, ProblemError};
use crate::rng;
use crate::trace::{RunOutcome, RunTrace, TraceRow};

/// Largest velocity component as a fraction of the box width.
pub const VELOCITY_CLAMP: f64 = 0.2;

#[derive(Debug, Clone, PartialEq)]
pub struct PsoConfig {
    pub pop_size: usize,
    pub c1: f64,
    pub c2: f64,
    pub w: f64,
    pub max_fes: u64,
    pub seed: u64,
}

impl PsoConfig {
    pub fn new(max_fes: u64, seed: u64) -> Self {
        Self { pop_size: 30, c1: 2.0, c2: 2.0, w: 0.8, max_fes, seed }
    }
}

/// One velocity component before clamping.
#[allow(clippy::too_many_arguments)]
pub fn velocity_component(config: &PsoConfig, v: f64, x: f64, pbest: f64, gbest: f64, r1: f64, r2: f64) -> f64 {
    config.w * v + config.c1 * r1 * (pbest - x) + config.c2 * r2 * (gbest - x)
}

struct Particle {
    x: Vec<f64>,
    v: Vec<f64>,
    best_x: Vec<f64>,
    best: Evaluation,
}

/// Runs PSO until fewer than `pop_size` evaluations remain.
pub fn run_pso(problem: &dyn Problem, config: &PsoConfig) -> Result<RunOutcome, ProblemError> {
    let n = config.pop_size.max(1);
    if config.max_fes < n as u64 {
        return Err(ProblemError::BudgetExhausted { max_fes: config.max_fes });
    }
    let bounds = problem.bounds();
    let vmax: Vec<f64> =
        bounds.lower().iter().zip(bounds.upper()).map(|(l, u)| VELOCITY_CLAMP * (u - l)).collect();
    let mut evaluator = Evaluator::new(problem, config.max_fes, config.seed);
    let mut rng = rng::stream(config.seed, rng::SEARCH_STREAM);

    let mut swarm = Vec::with_capacity(n);
    for _ in 0..n {
        let x = bounds.sample(&mut rng);
        let best = evaluator.evaluate(&x)?;
        swarm.push(Particle { v: vec![0.0; x.len()], best_x: x.clone(), x, best });
    }
    let lead = swarm.iter().min_by(|a, b| a.best.compare(&b.best)).expect("nonempty swarm");
    let (mut gbest_x, mut gbest) = (lead.best_x.clone(), lead.best);

    let diversity = |swarm: &[Particle]| {
        let xs: Vec<&[f64]> = swarm.iter().map(|p| p.x.as_slice()).collect();
        population_diversity(&xs)
    };
    let mut trace = RunTrace::default();
    trace.push(TraceRow { iter: 0, fes: evaluator.budget().used(), best: gbest, div: diversity(&swarm) });

    let k_max = ((config.max_fes - n as u64) / n as u64) as usize;
    for k in 1..=k_max {
        for p in swarm.iter_mut() {
            for j in 0..p.x.len() {
                let (r1, r2): (f64, f64) = (rng.random(), rng.random());
                let v = velocity_component(config, p.v[j], p.x[j], p.best_x[j], gbest_x[j], r1, r2);
                p.v[j] = v.clamp(-vmax[j], vmax[j]);
            }
            let moved: Vec<f64> = p.x.iter().zip(&p.v).map(|(x, v)| x + v).collect();
            p.x = clamp_or_resample(moved, bounds, &mut rng);
            let eval = evaluator.evaluate(&p.x)?;
            if eval.is_better_than(&p.best) {
                p.best = eval;
                p.best_x.clone_from(&p.x);
                if eval.is_better_than(&gbest) {
                    gbest = eval;
                    gbest_x.clone_from(&p.x);
                }
            }
        }
        trace.push(TraceRow { iter: k, fes: evaluator.budget().used(), best: gbest, div: diversity(&swarm) });
    }
    Ok(RunOutcome { best_position: gbest_x, best: gbest, trace, fes_used: evaluator.budget().used(), iterations: k_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{Bounds, FnProblem};

    fn sphere(dim: usize) -> FnProblem<impl Fn(&[f64]) -> f64 + Send + Sync> {
        FnProblem::new("sphere", Bounds::uniform(-100.0, 100.0, dim).unwrap(), |x: &[f64]| {
            x.iter().map(|v| v * v).sum()
        })
    }

    #[test]
    fn defaults() {
        let c = PsoConfig::new(100, 0);
        assert_eq!((c.pop_size, c.c1, c.c2, c.w), (30, 2.0, 2.0, 0.8));
    }

    #[test]
    fn particle_at_gbest_without_velocity_stays_put() {
        let c = PsoConfig::new(100, 0);
        for (r1, r2) in [(0.0, 0.0), (0.3, 0.9), (1.0, 1.0)] {
            assert_eq!(velocity_component(&c, 0.0, 2.5, 2.5, 2.5, r1, r2), 0.0);
        }
    }

    #[test]
    fn solves_small_sphere() {
        let p = sphere(2);
        for seed in 0..25 {
            let out = run_pso(&p, &PsoConfig::new(10_000, seed)).unwrap();
            assert!(out.best.value <= 1e-3, "seed {seed}: {}", out.best.value);
        }
    }

    #[test]
    fn budget_trace_and_determinism() {
        let p = sphere(5);
        let a = run_pso(&p, &PsoConfig::new(1_000, 4)).unwrap();
        assert_eq!(a.fes_used, 990);
        assert_eq!(a.trace.len(), 33);
        assert!(a.trace.is_monotone());
        assert_eq!(a, run_pso(&p, &PsoConfig::new(1_000, 4)).unwrap());
        assert!(matches!(run_pso(&p, &PsoConfig::new(10, 4)), Err(ProblemError::BudgetExhausted { .. })));
    }
}
