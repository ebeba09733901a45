//! Steps a run by hand and tracks the exploration/exploitation balance.

use ecocycle::analysis::DiversityCurve;
use ecocycle::classic;
use ecocycle::eco::{EcoConfig, EcoRun};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rastrigin = classic::make_classic(9, 10)?;
    let mut run = EcoRun::new(&rastrigin, &EcoConfig::new(50_000, 3))?;
    let mut divs = vec![run.state().diversity()];
    while run.step() {
        divs.push(run.state().diversity());
    }
    let best = run.state().global_best.eval.value;

    let curve = DiversityCurve::from_divs(divs);
    println!("max diversity {:.4}", curve.div_max);
    for k in (0..curve.len()).step_by(curve.len() / 10) {
        println!(
            "iter {k:>4}  div {:>9.3e}  exploration {:>6.2}%  exploitation {:>6.2}%",
            curve.div[k], curve.exploration_pct[k], curve.exploitation_pct[k]
        );
    }
    println!("best {best:.3e}");
    Ok(())
}
