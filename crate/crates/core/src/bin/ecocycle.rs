use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use ecocycle::classic;
use ecocycle::engineering::{self, EngineeringId};
use ecocycle::harness::{self, sig9, Algorithm, ExperimentSpec, HarnessError, Suite};
use ecocycle::problems::Evaluator;

#[derive(Parser)]
#[command(name = "ecocycle", version, about = "Ecological Cycle Optimizer experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded experiments and write report files.
    Run {
        #[arg(long)]
        suite: Suite,
        /// Comma-separated algorithm ids: eco, pso.
        #[arg(long, default_value = "eco")]
        alg: String,
        #[arg(long, default_value_t = 30)]
        dim: usize,
        #[arg(long, default_value_t = 25)]
        runs: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Overrides the suite budget schedule.
        #[arg(long)]
        max_fes: Option<u64>,
        /// Comma-separated subset of the suite, e.g. f1,f9.
        #[arg(long)]
        problems: Option<String>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Evaluate one point, printing the value and constraint report.
    Eval {
        #[arg(long)]
        problem: String,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Print the problem catalog.
    List,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(command: Command) -> Result<(), HarnessError> {
    match command {
        Command::Run { suite, alg, dim, runs, seed, max_fes, problems, out } => {
            let mut spec = ExperimentSpec::new(suite, Algorithm::parse_list(&alg)?).with_dim(dim).with_runs(runs).with_seed(seed);
            spec.max_fes = max_fes;
            spec.problems = problems.map(|p| p.split(',').map(|s| s.trim().to_string()).collect());
            let started = Instant::now();
            let report = harness::run_experiment(&spec)?;
            report.write(&out)?;
            for s in &report.summaries {
                println!(
                    "{:<6} {:<4} min {:>16} ave {:>16} std {:>16} feasible {}",
                    s.problem,
                    s.algorithm,
                    sig9(s.min),
                    sig9(s.ave),
                    sig9(s.std),
                    sig9(s.feasible_rate)
                );
            }
            for w in &report.wilcoxon {
                println!("{:<6} {} vs {}: p {} {}", w.problem, w.reference, w.opponent, sig9(w.p_value), w.verdict);
            }
            if let Some(f) = &report.friedman {
                let ranks: Vec<String> = f.algorithms.iter().zip(&f.mean_ranks).map(|(a, r)| format!("{a} {}", sig9(*r))).collect();
                println!("friedman mean ranks: {}", ranks.join(", "));
            }
            eprintln!("wrote {} in {:.1}s", out.display(), started.elapsed().as_secs_f64());
            Ok(())
        }
        Command::Eval { problem, point } => {
            let x = point
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<Vec<f64>, _>>()
                .map_err(|e| HarnessError::InvalidSpec(format!("bad point: {e}")))?;
            let p = harness::lookup(&problem, x.len())?;
            let eval = Evaluator::new(p.as_ref(), 1, 0).evaluate(&x)?;
            println!("value {}", sig9(eval.value));
            println!("violation {}", sig9(eval.violation));
            println!("feasible {}", eval.feasible);
            if let Ok(id) = problem.parse::<EngineeringId>() {
                for c in engineering::make_engineering(id).constraint_report(&x) {
                    println!("g{:<2} {:>18} {}", c.index, sig9(c.value), if c.satisfied { "ok" } else { "violated" });
                }
            }
            Ok(())
        }
        Command::List => {
            for f in classic::suite(30) {
                let dim = f.fixed_dim().map_or("D".to_string(), |d| d.to_string());
                let b = ecocycle::Problem::bounds(&f);
                let interval = |v: &[f64]| if v.iter().all(|&c| c == v[0]) { v[0].to_string() } else { format!("{v:?}") };
                println!(
                    "{:<6} dim {:<3} box [{}, {}] optimum {}",
                    ecocycle::Problem::name(&f),
                    dim,
                    interval(b.lower()),
                    interval(b.upper()),
                    sig9(f.optimum_value())
                );
            }
            for p in engineering::suite() {
                println!(
                    "{:<6} dim {:<3} constraints {:<2} reference {}  {}",
                    p.id(),
                    ecocycle::Problem::dim(&p),
                    ecocycle::Problem::num_constraints(&p),
                    sig9(p.reference().value),
                    p.id().title()
                );
            }
            Ok(())
        }
    }
}
