//! Head-to-head comparison on four classic functions with a rank-sum test per
//! function and a Friedman ranking across them.

use ecocycle::analysis::{friedman, summarize, wilcoxon_rank_sum, ALPHA};
use ecocycle::{classic, eco, pso};

const RUNS: u64 = 10;
const DIM: usize = 10;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = 10_000 * DIM as u64;
    let mut ave = Vec::new();
    for id in [1, 5, 9, 10] {
        let f = classic::make_classic(id, DIM)?;
        let mut e = Vec::new();
        let mut p = Vec::new();
        for seed in 0..RUNS {
            e.push(eco::run(&f, &eco::EcoConfig::new(budget, seed))?.best.value);
            p.push(pso::run_pso(&f, &pso::PsoConfig::new(budget, seed))?.best.value);
        }
        let (se, sp) = (summarize(&e)?, summarize(&p)?);
        let test = wilcoxon_rank_sum(&e, &p, ALPHA);
        println!(
            "f{id:<2} eco ave {:.3e}  pso ave {:.3e}  p {:.2e}  verdict {}",
            se.ave,
            sp.ave,
            test.p_value,
            test.verdict.symbol()
        );
        ave.push(vec![se.ave, sp.ave]);
    }
    let r = friedman(&ave, None)?;
    println!("mean ranks eco {} pso {}  (statistic {:.3}, p {:.3})", r.mean_ranks[0], r.mean_ranks[1], r.statistic, r.p_value);
    Ok(())
}
