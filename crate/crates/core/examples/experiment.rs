//! A full seeded experiment written to disk: summaries, pairwise tests,
//! Friedman ranks, per-run traces and diversity curves.
//!
//! Usage: `cargo run --release --example experiment -- [out-dir]`

use ecocycle::harness::{run_experiment, sig9, Algorithm, ExperimentSpec, Suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "experiment-out".into());
    let spec = ExperimentSpec::new(Suite::Classic, vec![Algorithm::Eco, Algorithm::Pso])
        .with_problems(&["f1", "f6", "f9", "f11"])
        .with_dim(10)
        .with_runs(10)
        .with_seed(100);
    let report = run_experiment(&spec)?;
    report.write(&out)?;

    for s in &report.summaries {
        println!("{:<4} {:<4} ave {:>16} std {:>16}", s.problem, s.algorithm, sig9(s.ave), sig9(s.std));
    }
    for (opp, t) in &report.win_tie_loss {
        println!("eco vs {opp}: {}/{}/{}", t.wins, t.ties, t.losses);
    }
    if let Some(f) = &report.friedman {
        println!("global rank: {}", f.global_rank.join(" > "));
    }
    println!("wrote {out}/");
    Ok(())
}
