//! Two-sample Wilcoxon rank-sum test.
//!
//! Small samples (combined size up to [`EXACT_LIMIT`]) use the exact
//! permutation distribution of the rank sum, ties included. Larger samples
//! use the normal approximation with tie and continuity corrections.

use std::fmt;

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

pub const EXACT_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// First sample significantly better (smaller).
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "=")]
    Equals,
    #[serde(rename = "-")]
    Minus,
}

impl Verdict {
    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::Plus => "+",
            Verdict::Equals => "=",
            Verdict::Minus => "-",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Verdict::Plus => Verdict::Minus,
            Verdict::Equals => Verdict::Equals,
            Verdict::Minus => Verdict::Plus,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairwiseVerdict {
    pub p_value: f64,
    pub verdict: Verdict,
    pub alpha: f64,
}

/// Mid-ranks (1-based) of the pooled sample `a ++ b`.
fn pooled_ranks(a: &[f64], b: &[f64]) -> Vec<f64> {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&i, &j| pooled[i].total_cmp(&pooled[j]));
    let mut ranks = vec![0.0; pooled.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && pooled[order[end]] == pooled[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let mid = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = mid;
        }
        start = end;
    }
    ranks
}

/// Rank sum of `a` within the pooled sample.
pub fn rank_sum(a: &[f64], b: &[f64]) -> f64 {
    pooled_ranks(a, b)[..a.len()].iter().sum()
}

/// Exact two-sided p-value `P(|W - mu| >= |w - mu|)` under random labelling.
pub fn exact_p_value(a: &[f64], b: &[f64]) -> f64 {
    let n1 = a.len();
    let n = n1 + b.len();
    // mid-ranks are multiples of 1/2, so doubled ranks are integers
    let doubled: Vec<usize> = pooled_ranks(a, b).iter().map(|r| (2.0 * r).round() as usize).collect();
    let observed: usize = doubled[..n1].iter().sum();
    let max_sum: usize = doubled.iter().sum();
    // ways[k][s]: subsets of size k with doubled rank sum s
    let mut ways = vec![vec![0.0f64; max_sum + 1]; n1 + 1];
    ways[0][0] = 1.0;
    for &r in &doubled {
        for k in (1..=n1).rev() {
            let (lo, hi) = ways.split_at_mut(k);
            for s in (r..=max_sum).rev() {
                hi[0][s] += lo[k - 1][s - r];
            }
        }
    }
    let centre = (n1 * (n + 1)) as i64;
    let dev = (observed as i64 - centre).abs();
    let (mut hit, mut total) = (0.0, 0.0);
    for (s, &w) in ways[n1].iter().enumerate() {
        total += w;
        if (s as i64 - centre).abs() >= dev {
            hit += w;
        }
    }
    hit / total
}

/// Normal-approximation two-sided p-value with tie and continuity corrections.
pub fn normal_p_value(a: &[f64], b: &[f64]) -> f64 {
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let n = n1 + n2;
    let ranks = pooled_ranks(a, b);
    let w: f64 = ranks[..a.len()].iter().sum();
    let mu = n1 * (n + 1.0) / 2.0;

    let mut sorted = ranks.clone();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }
    let var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((w - mu).abs() - 0.5).max(0.0) / var.sqrt();
    let std_normal = Normal::new(0.0, 1.0).expect("unit normal");
    (2.0 * std_normal.sf(z)).min(1.0)
}

/// Wilcoxon rank-sum test of `a` against `b` at level `alpha`.
///
/// A significant result is `Plus` when `a` has the smaller mean. On equal
/// means the rank sums decide the direction.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64], alpha: f64) -> PairwiseVerdict {
    assert!(!a.is_empty() && !b.is_empty(), "both samples must be nonempty");
    let p_value = if a.len() + b.len() <= EXACT_LIMIT { exact_p_value(a, b) } else { normal_p_value(a, b) };
    let verdict = if p_value >= alpha {
        Verdict::Equals
    } else {
        let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
        let (ma, mb) = (mean(a), mean(b));
        let a_smaller = if ma != mb {
            ma < mb
        } else {
            rank_sum(a, b) < a.len() as f64 * (a.len() + b.len() + 1) as f64 / 2.0
        };
        if a_smaller {
            Verdict::Plus
        } else {
            Verdict::Minus
        }
    };
    PairwiseVerdict { p_value, verdict, alpha }
}
