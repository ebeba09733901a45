//! Quickstart: minimize the 30-dimensional sphere with ECO.

use ecocycle::{classic, eco};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sphere = classic::make_classic(1, 30)?;
    let config = eco::EcoConfig::new(300_000, 7);
    let counts = config.counts()?;
    println!(
        "population {} = {} producers, {} herbivores, {} carnivores, {} omnivores; {} iterations",
        config.pop_size,
        counts.producers,
        counts.herbivores,
        counts.carnivores,
        counts.omnivores,
        config.k_max()?
    );

    let out = eco::run(&sphere, &config)?;
    for row in out.trace.rows.iter().step_by(1000) {
        println!("iter {:>5}  fes {:>7}  best {:.3e}", row.iter, row.fes, row.best.value);
    }
    println!("final best {:.3e} after {} evaluations", out.best.value, out.fes_used);
    Ok(())
}
