//! The analysis toolkit on synthetic samples, no optimizer involved.

use ecocycle::analysis::{exact_p_value, friedman, normal_p_value, summarize, win_tie_loss, wilcoxon_rank_sum, TieBreak, ALPHA};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = [0.12, 0.08, 0.10, 0.09, 0.11, 0.07];
    let b = [0.31, 0.25, 0.28, 0.22, 0.35, 0.27];
    let s = summarize(&a)?;
    println!("a: min {} ave {:.4} std {:.4}", s.min, s.ave, s.std);

    // two fully separated samples of six: 2 of 924 labellings are as extreme
    println!("exact p {:.6} (2/924 = {:.6})", exact_p_value(&a, &b), 2.0 / 924.0);
    println!("normal approximation p {:.6}", normal_p_value(&a, &b));
    let v = wilcoxon_rank_sum(&a, &b, ALPHA);
    println!("verdict for a against b: {}", v.verdict.symbol());

    // three algorithms over four problems; the middle column ties on Ave once
    let ave = vec![vec![1.0, 2.0, 3.0], vec![1.0, 3.0, 2.0], vec![2.0, 2.0, 3.0], vec![1.0, 2.0, 3.0]];
    let min = vec![vec![0.0; 3], vec![0.0; 3], vec![0.5, 0.1, 1.0], vec![0.0; 3]];
    let std = vec![vec![0.0; 3]; 4];
    let r = friedman(&ave, Some(TieBreak { min: &min, std: &std }))?;
    println!("mean ranks {:?}, global order {:?}, p {:.4}", r.mean_ranks, r.global_rank, r.p_value);

    let reference = vec![a.to_vec(), b.to_vec()];
    let others = vec![vec![b.to_vec(), b.to_vec()]];
    let t = win_tie_loss(&reference, &others, ALPHA)[0];
    println!("win/tie/loss {}/{}/{}", t.wins, t.ties, t.losses);
    Ok(())
}
