use serde::Serialize;

use super::wilcoxon::{wilcoxon_rank_sum, Verdict};

/// `+/=/-` tally of a reference algorithm against one opponent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct WinTieLoss {
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

/// `reference[f]` and `others[o][f]` hold the run samples of function `f`.
pub fn win_tie_loss(reference: &[Vec<f64>], others: &[Vec<Vec<f64>>], alpha: f64) -> Vec<WinTieLoss> {
    others
        .iter()
        .map(|opponent| {
            let mut t = WinTieLoss::default();
            for (r, o) in reference.iter().zip(opponent) {
                match wilcoxon_rank_sum(r, o, alpha).verdict {
                    Verdict::Plus => t.wins += 1,
                    Verdict::Equals => t.ties += 1,
                    Verdict::Minus => t.losses += 1,
                }
            }
            t
        })
        .collect()
}
