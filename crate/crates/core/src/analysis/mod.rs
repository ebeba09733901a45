//! Run statistics, nonparametric comparisons and diversity analysis.

mod diversity;
mod friedman;
mod summary;
mod wilcoxon;
mod win_tie_loss;

pub use diversity::{diversity_curve, population_diversity, DiversityCurve};
pub use friedman::{friedman, FriedmanResult, TieBreak};
pub use summary::{summarize, RunSummary};
pub use wilcoxon::{exact_p_value, normal_p_value, rank_sum, wilcoxon_rank_sum, PairwiseVerdict, Verdict, EXACT_LIMIT};
pub use win_tie_loss::{win_tie_loss, WinTieLoss};

/// Default significance level for pairwise tests.
pub const ALPHA: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error("sample is empty")]
    EmptySample,
    #[error("need at least 2 algorithms, got {0}")]
    InsufficientGroups(usize),
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedMatrix { row: usize, expected: usize, got: usize },
}
