//! Experiment runner: seeded repeated runs, summaries, comparisons and
//! report files.
//!
//! ```no_run
//! use ecocycle::harness::{Algorithm, ExperimentSpec, Suite};
//!
//! let spec = ExperimentSpec::new(Suite::Classic, vec![Algorithm::Eco, Algorithm::Pso])
//!     .with_problems(&["f1", "f9"])
//!     .with_runs(5);
//! let report = ecocycle::harness::run_experiment(&spec).unwrap();
//! report.write("out").unwrap();
//! ```

mod format;
mod report;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::analysis::AnalysisError;
use crate::classic;
use crate::eco::{self, EcoConfig, EcoError};
use crate::engineering::{self, EngineeringId};
use crate::problems::{Evaluation, Problem, ProblemError};
use crate::pso::{self, PsoConfig};
use crate::trace::RunTrace;

pub use format::sig9;
pub use report::{ExperimentReport, FriedmanSection, SummaryRow, WilcoxonRow};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
    #[error("unknown algorithm `{0}` (expected eco or pso)")]
    UnknownAlgorithm(String),
    #[error("unknown suite `{0}` (expected classic or engineering)")]
    UnknownSuite(String),
    #[error("invalid experiment: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Eco(#[from] EcoError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("toml error: {0}")]
    Toml(#[from] toml::ser::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Classic,
    Engineering,
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "classic" => Ok(Suite::Classic),
            "engineering" => Ok(Suite::Engineering),
            _ => Err(HarnessError::UnknownSuite(s.to_string())),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Classic => "classic",
            Suite::Engineering => "engineering",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Eco,
    Pso,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Eco => "eco",
            Algorithm::Pso => "pso",
        }
    }

    /// Parses a comma-separated list such as `eco,pso`.
    pub fn parse_list(s: &str) -> Result<Vec<Self>, HarnessError> {
        s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect()
    }

    pub fn run(self, problem: &dyn Problem, max_fes: u64, seed: u64) -> Result<crate::RunOutcome, HarnessError> {
        Ok(match self {
            Algorithm::Eco => eco::run(problem, &EcoConfig::new(max_fes, seed))?,
            Algorithm::Pso => pso::run_pso(problem, &PsoConfig::new(max_fes, seed))?,
        })
    }
}

impl FromStr for Algorithm {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "eco" => Ok(Algorithm::Eco),
            "pso" => Ok(Algorithm::Pso),
            _ => Err(HarnessError::UnknownAlgorithm(s.to_string())),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Budget for one run: the override if given, else the suite schedule.
pub fn resolve_budget(suite: Suite, dim: usize, max_fes: Option<u64>) -> u64 {
    if let Some(n) = max_fes {
        return n;
    }
    match suite {
        Suite::Classic => 10_000 * dim as u64,
        Suite::Engineering => match dim {
            0..=10 => 100_000,
            11..=30 => 200_000,
            31..=50 => 400_000,
            51..=150 => 800_000,
            _ => 1_000_000,
        },
    }
}

/// Looks up `f1`..`f23` (scalable ones at `dim`) or `rc15`/`rc17`/`rc19`/`rc20`/`rc31`.
pub fn lookup(id: &str, dim: usize) -> Result<Box<dyn Problem>, HarnessError> {
    if let Ok(e) = id.parse::<EngineeringId>() {
        return Ok(Box::new(engineering::make_engineering(e)));
    }
    let n = classic::parse_id(id).map_err(|_| HarnessError::UnknownProblem(id.to_string()))?;
    Ok(Box::new(classic::make_classic(n, dim)?))
}

fn suite_of(id: &str) -> Suite {
    if id.parse::<EngineeringId>().is_ok() {
        Suite::Engineering
    } else {
        Suite::Classic
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub suite: Suite,
    pub algorithms: Vec<Algorithm>,
    /// Dimension of the scalable classic functions.
    pub dim: usize,
    /// Restricts the suite to these ids; `None` runs all of it.
    pub problems: Option<Vec<String>>,
    pub runs: usize,
    pub max_fes: Option<u64>,
    pub base_seed: u64,
    pub alpha: f64,
}

impl ExperimentSpec {
    pub fn new(suite: Suite, algorithms: Vec<Algorithm>) -> Self {
        Self {
            suite,
            algorithms,
            dim: 30,
            problems: None,
            runs: 25,
            max_fes: None,
            base_seed: 7,
            alpha: crate::analysis::ALPHA,
        }
    }

    pub fn with_problems(mut self, ids: &[&str]) -> Self {
        self.problems = Some(ids.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn with_dim(mut self, dim: usize) -> Self {
        self.dim = dim;
        self
    }

    pub fn with_runs(mut self, runs: usize) -> Self {
        self.runs = runs;
        self
    }

    pub fn with_max_fes(mut self, max_fes: u64) -> Self {
        self.max_fes = Some(max_fes);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.base_seed = seed;
        self
    }

    /// Seed of run `run`.
    pub fn seed(&self, run: usize) -> u64 {
        self.base_seed.wrapping_add(run as u64)
    }

    /// The problems this spec covers, in suite order.
    pub fn build_problems(&self) -> Result<Vec<Box<dyn Problem>>, HarnessError> {
        if self.runs == 0 {
            return Err(HarnessError::InvalidSpec("runs must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(HarnessError::InvalidSpec("no algorithms given".into()));
        }
        if self.dim == 0 {
            return Err(HarnessError::InvalidSpec("dimension must be at least 1".into()));
        }
        match &self.problems {
            Some(ids) => ids
                .iter()
                .map(|id| {
                    if suite_of(id) != self.suite {
                        return Err(HarnessError::UnknownProblem(format!("{id} (not in the {} suite)", self.suite)));
                    }
                    lookup(id, self.dim)
                })
                .collect(),
            None => Ok(match self.suite {
                Suite::Classic => classic::suite(self.dim).into_iter().map(|f| Box::new(f) as Box<dyn Problem>).collect(),
                Suite::Engineering => {
                    engineering::suite().into_iter().map(|p| Box::new(p) as Box<dyn Problem>).collect()
                }
            }),
        }
    }
}

/// One finished run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub problem: String,
    pub algorithm: Algorithm,
    pub run: usize,
    pub seed: u64,
    pub best: Evaluation,
    pub best_position: Vec<f64>,
    pub fes_used: u64,
    pub max_fes: u64,
    pub iterations: usize,
    /// Informational only; never written to report files.
    pub wall_time: Duration,
    pub trace: RunTrace,
}

/// Runs every (problem, algorithm, run) of `spec` and assembles the report.
///
/// Runs execute in parallel; records come back in (problem, algorithm, run)
/// order, so the report does not depend on scheduling.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport, HarnessError> {
    let problems = spec.build_problems()?;
    let mut jobs = Vec::new();
    for (p, problem) in problems.iter().enumerate() {
        let max_fes = resolve_budget(spec.suite, problem.dim(), spec.max_fes);
        for &alg in &spec.algorithms {
            for run in 0..spec.runs {
                jobs.push((p, alg, run, max_fes));
            }
        }
    }
    let records = jobs
        .par_iter()
        .map(|&(p, algorithm, run, max_fes)| {
            let problem = problems[p].as_ref();
            let seed = spec.seed(run);
            let started = Instant::now();
            let out = algorithm.run(problem, max_fes, seed)?;
            Ok(RunRecord {
                problem: problem.name().to_string(),
                algorithm,
                run,
                seed,
                best: out.best,
                best_position: out.best_position,
                fes_used: out.fes_used,
                max_fes,
                iterations: out.iterations,
                wall_time: started.elapsed(),
                trace: out.trace,
            })
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    let names: Vec<String> = problems.iter().map(|p| p.name().to_string()).collect();
    ExperimentReport::assemble(spec, &names, records)
}
