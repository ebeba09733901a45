//! The Ecological Cycle Optimizer.
//!
//! The population is split into producers, herbivores, carnivores and
//! omnivores. Each iteration:
//!
//! 1. refreshes the producers from the previous decomposers (free, cached),
//! 2. moves every consumer towards roulette-selected prey with greedy survival,
//! 3. decomposes every individual around the iteration best, producing the
//!    candidate pool for the next producer refresh.
//!
//! Only consumer moves and decompositions cost function evaluations.

mod operators;
mod roulette;

use std::cmp::Ordering;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::population_diversity;
use crate::problems::{clamp_or_resample, Bounds, Evaluation, Evaluator, Problem, ProblemError};
use crate::rng;
use crate::trace::{RunOutcome, RunTrace, TraceRow};

pub use operators::{
    decompose_global, decompose_global_with, decompose_local, decompose_local_with, decompose_optimal,
    decompose_optimal_with, predation_decay, predation_factor, predation_move, walk_coefficient,
};
pub use roulette::{probabilities, roulette_select, shifted_fitness, RouletteWheel};

const HERBIVORE_PREY: usize = 3;
const CARNIVORE_PREY: usize = 3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EcoError {
    #[error("proportions must be nonnegative and sum to 1, got {0:?}")]
    InvalidProportions([f64; 4]),
    #[error("{role} count {count} is below the minimum of {min}")]
    PartitionTooSmall { role: &'static str, count: usize, min: usize },
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

/// Sizes of the four population partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counts {
    pub producers: usize,
    pub herbivores: usize,
    pub carnivores: usize,
    pub omnivores: usize,
}

impl Counts {
    /// Rounded proportions for the first three roles, remainder to omnivores,
    /// then any empty role borrows one member from the largest.
    pub fn from_proportions(pop_size: usize, proportions: [f64; 4]) -> Self {
        let n = pop_size as i64;
        let mut c = [0i64; 4];
        for i in 0..3 {
            c[i] = (proportions[i] * pop_size as f64).round() as i64;
        }
        c[3] = n - c[0] - c[1] - c[2];
        while let Some(low) = (0..4).find(|&i| c[i] < 1) {
            let largest = (0..4).max_by_key(|&i| (c[i], std::cmp::Reverse(i))).unwrap();
            if c[largest] <= 1 {
                break;
            }
            c[largest] -= 1;
            c[low] += 1;
        }
        let u = |v: i64| v.max(0) as usize;
        Self { producers: u(c[0]), herbivores: u(c[1]), carnivores: u(c[2]), omnivores: u(c[3]) }
    }

    pub fn total(&self) -> usize {
        self.producers + self.herbivores + self.carnivores + self.omnivores
    }

    /// Evaluations spent by one full iteration.
    pub fn fes_per_iteration(&self) -> u64 {
        (self.herbivores + self.carnivores + self.omnivores + self.total()) as u64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EcoConfig {
    pub pop_size: usize,
    /// Producers, herbivores, carnivores, omnivores.
    pub proportions: [f64; 4],
    pub max_fes: u64,
    pub seed: u64,
}

impl EcoConfig {
    pub const DEFAULT_PROPORTIONS: [f64; 4] = [0.2, 0.3, 0.3, 0.2];

    pub fn new(max_fes: u64, seed: u64) -> Self {
        Self { pop_size: 30, proportions: Self::DEFAULT_PROPORTIONS, max_fes, seed }
    }

    pub fn with_pop_size(mut self, pop_size: usize) -> Self {
        self.pop_size = pop_size;
        self
    }

    pub fn with_proportions(mut self, proportions: [f64; 4]) -> Self {
        self.proportions = proportions;
        self
    }

    /// Validated partition sizes.
    pub fn counts(&self) -> Result<Counts, EcoError> {
        let p = self.proportions;
        let sum: f64 = p.iter().sum();
        if p.iter().any(|v| !v.is_finite() || *v < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(EcoError::InvalidProportions(p));
        }
        let c = Counts::from_proportions(self.pop_size, p);
        for (role, count, min) in [
            ("producer", c.producers, HERBIVORE_PREY),
            ("herbivore", c.herbivores, CARNIVORE_PREY),
            ("carnivore", c.carnivores, 2),
            ("omnivore", c.omnivores, 1),
        ] {
            if count < min {
                return Err(EcoError::PartitionTooSmall { role, count, min });
            }
        }
        Ok(c)
    }

    /// Iterations that fit in the budget after initialization.
    pub fn k_max(&self) -> Result<usize, EcoError> {
        let c = self.counts()?;
        Ok((self.max_fes.saturating_sub(self.pop_size as u64) / c.fes_per_iteration()) as usize)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub position: Vec<f64>,
    pub eval: Evaluation,
    pub best_position: Vec<f64>,
    pub best_eval: Evaluation,
}

impl Individual {
    pub fn new(position: Vec<f64>, eval: Evaluation) -> Self {
        Self { best_position: position.clone(), best_eval: eval, position, eval }
    }
}

/// Replaces the individual only on strict improvement. Returns whether it moved.
pub fn greedy_accept(ind: &mut Individual, position: Vec<f64>, eval: Evaluation) -> bool {
    if eval.compare(&ind.eval) != Ordering::Less {
        return false;
    }
    if eval.compare(&ind.best_eval) == Ordering::Less {
        ind.best_position.clone_from(&position);
        ind.best_eval = eval;
    }
    ind.position = position;
    ind.eval = eval;
    true
}

/// An evaluated point.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub position: Vec<f64>,
    pub eval: Evaluation,
}

/// Best `n_pro` of the current producers followed by the decomposers.
///
/// The sort is stable, so ties keep producers ahead of decomposers.
pub fn producer_update(producers: &[Individual], decomposers: &[Point], n_pro: usize) -> Vec<Individual> {
    let mut stacked: Vec<Individual> = producers
        .iter()
        .cloned()
        .chain(decomposers.iter().map(|d| Individual::new(d.position.clone(), d.eval)))
        .collect();
    stacked.sort_by(|a, b| a.eval.compare(&b.eval));
    stacked.truncate(n_pro);
    stacked
}

#[derive(Debug, Clone, PartialEq)]
pub struct EcoState {
    pub producers: Vec<Individual>,
    pub herbivores: Vec<Individual>,
    pub carnivores: Vec<Individual>,
    pub omnivores: Vec<Individual>,
    /// Empty until the first decomposition.
    pub decomposers: Vec<Point>,
    pub global_best: Point,
    pub iter_best: Option<Point>,
    pub k: usize,
    pub k_max: usize,
}

impl EcoState {
    /// Producers, then herbivores, carnivores and omnivores.
    pub fn population(&self) -> impl Iterator<Item = &Individual> {
        self.producers.iter().chain(&self.herbivores).chain(&self.carnivores).chain(&self.omnivores)
    }

    pub fn diversity(&self) -> f64 {
        let positions: Vec<&[f64]> = self.population().map(|i| i.position.as_slice()).collect();
        population_diversity(&positions)
    }
}

/// A run in progress, advanced one iteration at a time.
pub struct EcoRun<'p> {
    evaluator: Evaluator<'p>,
    rng: ChaCha8Rng,
    counts: Counts,
    state: EcoState,
    trace: RunTrace,
    finished: bool,
}

impl<'p> EcoRun<'p> {
    /// Samples and evaluates the initial population.
    pub fn new(problem: &'p dyn Problem, config: &EcoConfig) -> Result<Self, EcoError> {
        let counts = config.counts()?;
        let k_max = config.k_max()?;
        if config.max_fes < config.pop_size as u64 {
            return Err(ProblemError::BudgetExhausted { max_fes: config.max_fes }.into());
        }
        let mut evaluator = Evaluator::new(problem, config.max_fes, config.seed);
        let mut rng = rng::stream(config.seed, rng::SEARCH_STREAM);
        let mut population = Vec::with_capacity(config.pop_size);
        for _ in 0..config.pop_size {
            let x = problem.bounds().sample(&mut rng);
            let eval = evaluator.evaluate(&x)?;
            population.push(Individual::new(x, eval));
        }
        let best = population.iter().min_by(|a, b| a.eval.compare(&b.eval)).expect("nonempty population");
        let global_best = Point { position: best.position.clone(), eval: best.eval };

        let mut rest = population.into_iter();
        let mut take = |n: usize| rest.by_ref().take(n).collect::<Vec<_>>();
        let state = EcoState {
            producers: take(counts.producers),
            herbivores: take(counts.herbivores),
            carnivores: take(counts.carnivores),
            omnivores: take(counts.omnivores),
            decomposers: Vec::new(),
            global_best,
            iter_best: None,
            k: 0,
            k_max,
        };
        let mut trace = RunTrace::default();
        trace.push(TraceRow { iter: 0, fes: evaluator.budget().used(), best: state.global_best.eval, div: state.diversity() });
        Ok(Self { evaluator, rng, counts, state, trace, finished: k_max == 0 })
    }

    pub fn state(&self) -> &EcoState {
        &self.state
    }

    pub fn counts(&self) -> Counts {
        self.counts
    }

    pub fn fes_used(&self) -> u64 {
        self.evaluator.budget().used()
    }

    pub fn is_finished(&self) -> bool {
        self.finished
    }

    /// Runs one iteration. Returns `false` once the run is over.
    pub fn step(&mut self) -> bool {
        if self.finished {
            return false;
        }
        self.state.k += 1;
        match self.iterate() {
            Ok(()) => {
                self.trace.push(TraceRow {
                    iter: self.state.k,
                    fes: self.fes_used(),
                    best: self.state.global_best.eval,
                    div: self.state.diversity(),
                });
                if self.state.k >= self.state.k_max {
                    self.finished = true;
                }
                true
            }
            Err(_) => {
                // the budget ran out mid-sweep; keep what was found
                self.state.k -= 1;
                self.finished = true;
                false
            }
        }
    }

    /// Runs to completion.
    pub fn run(mut self) -> RunOutcome {
        while self.step() {}
        self.finish()
    }

    pub fn finish(self) -> RunOutcome {
        RunOutcome {
            best_position: self.state.global_best.position,
            best: self.state.global_best.eval,
            fes_used: self.evaluator.budget().used(),
            iterations: self.state.k,
            trace: self.trace,
        }
    }

    fn evaluate(&mut self, x: &[f64]) -> Result<Evaluation, ProblemError> {
        let eval = self.evaluator.evaluate(x)?;
        if eval.is_better_than(&self.state.global_best.eval) {
            self.state.global_best = Point { position: x.to_vec(), eval };
        }
        Ok(eval)
    }

    fn iterate(&mut self) -> Result<(), ProblemError> {
        let (k, k_max) = (self.state.k, self.state.k_max);
        let dim = self.evaluator.problem().dim();
        if k >= 2 {
            self.state.producers =
                producer_update(&self.state.producers, &self.state.decomposers, self.counts.producers);
        }
        let g = predation_factor(k, k_max, dim, &mut self.rng);
        let bounds = self.evaluator.problem().bounds();

        let wheel = RouletteWheel::new(&evals(&self.state.producers));
        for i in 0..self.state.herbivores.len() {
            let picks: Vec<usize> = (0..HERBIVORE_PREY).map(|_| wheel.spin(&mut self.rng)).collect();
            let prey: Vec<&[f64]> = picks.iter().map(|&p| self.state.producers[p].position.as_slice()).collect();
            let cand = predate(&mut self.rng, bounds, &self.state.herbivores[i].position, &prey, &g);
            let eval = self.evaluate(&cand)?;
            greedy_accept(&mut self.state.herbivores[i], cand, eval);
        }

        let wheel = RouletteWheel::new(&evals(&self.state.herbivores));
        for i in 0..self.state.carnivores.len() {
            let picks: Vec<usize> = (0..CARNIVORE_PREY).map(|_| wheel.spin(&mut self.rng)).collect();
            let prey: Vec<&[f64]> = picks.iter().map(|&p| self.state.herbivores[p].position.as_slice()).collect();
            let cand = predate(&mut self.rng, bounds, &self.state.carnivores[i].position, &prey, &g);
            let eval = self.evaluate(&cand)?;
            greedy_accept(&mut self.state.carnivores[i], cand, eval);
        }

        let pro_wheel = RouletteWheel::new(&evals(&self.state.producers));
        let her_wheel = RouletteWheel::new(&evals(&self.state.herbivores));
        let car_wheel = RouletteWheel::new(&evals(&self.state.carnivores));
        for i in 0..self.state.omnivores.len() {
            let p = pro_wheel.spin(&mut self.rng);
            let h = her_wheel.spin(&mut self.rng);
            let (a, b) = (car_wheel.spin(&mut self.rng), car_wheel.spin(&mut self.rng));
            let prey: [&[f64]; 4] = [
                &self.state.producers[p].position,
                &self.state.herbivores[h].position,
                &self.state.carnivores[a].position,
                &self.state.carnivores[b].position,
            ];
            let cand = predate(&mut self.rng, bounds, &self.state.omnivores[i].position, &prey, &g);
            let eval = self.evaluate(&cand)?;
            greedy_accept(&mut self.state.omnivores[i], cand, eval);
        }

        let best = self.state.population().min_by(|a, b| a.eval.compare(&b.eval)).expect("nonempty population");
        let iter_best = Point { position: best.position.clone(), eval: best.eval };
        let scale = bounds.min_width();
        let sources: Vec<Vec<f64>> = self.state.population().map(|i| i.position.clone()).collect();
        let best = iter_best.position.clone();
        self.state.iter_best = Some(iter_best);
        self.state.decomposers.clear();
        for x in &sources {
            let raw = if self.rng.random::<f64>() < 0.5 {
                decompose_optimal(x, &best, &mut self.rng)
            } else if self.rng.random::<f64>() < 0.5 {
                decompose_local(x, &best, &mut self.rng)
            } else {
                decompose_global(x, k, k_max, scale, &mut self.rng)
            };
            let position = clamp_or_resample(raw, bounds, &mut self.rng);
            let eval = self.evaluate(&position)?;
            self.state.decomposers.push(Point { position, eval });
        }
        Ok(())
    }

}

/// Consumer move with fresh scalar weights, repaired into the box.
fn predate(rng: &mut ChaCha8Rng, bounds: &Bounds, x: &[f64], prey: &[&[f64]], g: &[f64]) -> Vec<f64> {
    let weights: Vec<f64> = prey.iter().map(|_| rng.random()).collect();
    clamp_or_resample(predation_move(x, prey, &weights, g), bounds, rng)
}

fn evals(pool: &[Individual]) -> Vec<Evaluation> {
    pool.iter().map(|i| i.eval).collect()
}

/// Runs ECO on `problem` until the budget-derived iteration ceiling.
pub fn run(problem: &dyn Problem, config: &EcoConfig) -> Result<RunOutcome, EcoError> {
    Ok(EcoRun::new(problem, config)?.run())
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
    fn default_counts() {
        let c = EcoConfig::new(1000, 0).counts().unwrap();
        assert_eq!((c.producers, c.herbivores, c.carnivores, c.omnivores), (6, 9, 9, 6));
        assert_eq!(c.fes_per_iteration(), 54);
    }

    #[test]
    fn counts_always_sum_to_pop_size() {
        for n in 4..200 {
            for p in [[0.2, 0.3, 0.3, 0.2], [0.25, 0.25, 0.25, 0.25], [0.1, 0.45, 0.45, 0.0], [0.35, 0.35, 0.3, 0.0]] {
                let c = Counts::from_proportions(n, p);
                assert_eq!(c.total(), n, "{n} {p:?}");
                assert!(c.producers >= 1 && c.herbivores >= 1 && c.carnivores >= 1 && c.omnivores >= 1);
            }
        }
    }

    #[test]
    fn invalid_configs() {
        let bad = EcoConfig::new(1000, 0).with_proportions([0.5, 0.5, 0.5, -0.5]);
        assert!(matches!(bad.counts(), Err(EcoError::InvalidProportions(_))));
        let small = EcoConfig::new(1000, 0).with_pop_size(10);
        assert!(matches!(small.counts(), Err(EcoError::PartitionTooSmall { role: "producer", .. })));
        let p = sphere(2);
        assert!(matches!(
            EcoRun::new(&p, &EcoConfig::new(29, 0)),
            Err(EcoError::Problem(ProblemError::BudgetExhausted { .. }))
        ));
    }

    #[test]
    fn greedy_accept_rules() {
        let mut ind = Individual::new(vec![0.0], Evaluation::unconstrained(2.0));
        assert!(!greedy_accept(&mut ind, vec![1.0], Evaluation::unconstrained(3.0)));
        assert!(!greedy_accept(&mut ind, vec![1.0], Evaluation::unconstrained(2.0)));
        assert_eq!(ind.position, vec![0.0]);
        assert!(greedy_accept(&mut ind, vec![2.0], Evaluation::unconstrained(1.0)));
        assert_eq!((ind.position[0], ind.best_eval.value), (2.0, 1.0));
    }

    #[test]
    fn producer_update_sort_oracle() {
        let ind = |v: f64| Individual::new(vec![v], Evaluation::unconstrained(v));
        let pt = |v: f64| Point { position: vec![v], eval: Evaluation::unconstrained(v) };
        let got = producer_update(&[ind(5.0), ind(9.0)], &[pt(1.0), pt(7.0), pt(20.0), pt(30.0)], 2);
        assert_eq!(got.iter().map(|i| i.eval.value).collect::<Vec<_>>(), vec![1.0, 5.0]);
        let got = producer_update(&[ind(5.0), ind(9.0)], &[pt(10.0), pt(11.0)], 2);
        assert_eq!(got.iter().map(|i| i.eval.value).collect::<Vec<_>>(), vec![5.0, 9.0]);
        // tie: producer first
        let mut tied = ind(4.0);
        tied.position = vec![-4.0];
        let got = producer_update(&[tied], &[pt(4.0)], 1);
        assert_eq!(got[0].position, vec![-4.0]);
    }

    #[test]
    fn initial_population_in_bounds_and_uniform() {
        let p = FnProblem::new("flat", Bounds::uniform(0.0, 10.0, 1).unwrap(), |_: &[f64]| 0.0);
        let cfg = EcoConfig::new(20_000, 3).with_pop_size(10_000);
        let run = EcoRun::new(&p, &cfg).unwrap();
        let xs: Vec<f64> = run.state().population().map(|i| i.position[0]).collect();
        assert!(xs.iter().all(|x| (0.0..10.0).contains(x)));
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!((mean - 5.0).abs() < 0.15, "{mean}");
        assert_eq!(run.fes_used(), 10_000);
    }

    #[test]
    fn fe_conservation_and_monotone_trace() {
        let p = sphere(5);
        let cfg = EcoConfig::new(10_000, 9);
        let out = run(&p, &cfg).unwrap();
        let k_max = cfg.k_max().unwrap();
        assert_eq!(k_max, (10_000 - 30) / 54);
        assert_eq!(out.iterations, k_max);
        assert_eq!(out.fes_used, 30 + k_max as u64 * 54);
        assert!(out.fes_used <= 10_000);
        assert_eq!(out.trace.len(), k_max + 1);
        assert!(out.trace.is_monotone());
        assert_eq!(out.trace.rows.last().unwrap().best, out.best);
    }

    #[test]
    fn deterministic_per_seed() {
        let p = sphere(4);
        let a = run(&p, &EcoConfig::new(5_000, 42)).unwrap();
        let b = run(&p, &EcoConfig::new(5_000, 42)).unwrap();
        let c = run(&p, &EcoConfig::new(5_000, 43)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.best_position, c.best_position);
    }

    #[test]
    fn constant_objective_is_flat() {
        let p = FnProblem::new("const", Bounds::uniform(-1.0, 1.0, 3).unwrap(), |_: &[f64]| 7.25);
        let out = run(&p, &EcoConfig::new(3_000, 1)).unwrap();
        assert_eq!(out.best.value, 7.25);
        assert!(out.trace.best_values().iter().all(|&v| v == 7.25));
    }

    #[test]
    fn never_loses_ground_on_small_population() {
        let p = FnProblem::new("quad", Bounds::uniform(-5.0, 5.0, 1).unwrap(), |x: &[f64]| (x[0] - 1.0).powi(2));
        let cfg = EcoConfig::new(0, 17).with_pop_size(10).with_proportions([0.3, 0.3, 0.2, 0.2]);
        let per_iter = cfg.counts().unwrap().fes_per_iteration();
        let cfg = EcoConfig { max_fes: 10 + 50 * per_iter, ..cfg };
        let out = run(&p, &cfg).unwrap();
        assert_eq!(out.iterations, 50);
        let init_best = out.trace.rows[0].best;
        assert_ne!(out.best.compare(&init_best), Ordering::Greater);
    }

    #[test]
    fn personal_best_dominates_current() {
        let p = sphere(3);
        let mut run = EcoRun::new(&p, &EcoConfig::new(4_000, 5)).unwrap();
        while run.step() {
            for ind in run.state().population() {
                assert_ne!(ind.best_eval.compare(&ind.eval), Ordering::Greater);
                assert!(p.bounds().contains(&ind.position));
            }
            for d in &run.state().decomposers {
                assert!(p.bounds().contains(&d.position));
            }
        }
    }

    #[test]
    fn sphere_improves_substantially() {
        let p = sphere(10);
        let out = run(&p, &EcoConfig::new(50_000, 2)).unwrap();
        assert!(out.best.value < 1e-10, "{}", out.best.value);
    }
}
