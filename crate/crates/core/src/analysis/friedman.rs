use std::cmp::Ordering;

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::AnalysisError;

/// Secondary keys consulted when two algorithms share an Ave value.
#[derive(Debug, Clone, Copy)]
pub struct TieBreak<'a> {
    pub min: &'a [Vec<f64>],
    pub std: &'a [Vec<f64>],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FriedmanResult {
    pub mean_ranks: Vec<f64>,
    pub statistic: f64,
    pub p_value: f64,
    /// Algorithm indices ordered from best to worst mean rank.
    pub global_rank: Vec<usize>,
}

/// Friedman test over a functions x algorithms matrix of Ave values.
pub fn friedman(ave: &[Vec<f64>], tie_break: Option<TieBreak<'_>>) -> Result<FriedmanResult, AnalysisError> {
    let m = ave.first().map_or(0, Vec::len);
    if m < 2 {
        return Err(AnalysisError::InsufficientGroups(m));
    }
    let check = |rows: &[Vec<f64>]| {
        for (row, r) in rows.iter().enumerate() {
            if r.len() != m {
                return Err(AnalysisError::RaggedMatrix { row, expected: m, got: r.len() });
            }
        }
        Ok(())
    };
    check(ave)?;
    if let Some(tb) = tie_break {
        check(tb.min)?;
        check(tb.std)?;
    }
    let n = ave.len();
    let mut rank_sums = vec![0.0; m];
    #[allow(clippy::needless_range_loop)]
    for f in 0..n {
        let key = |j: usize| -> [f64; 3] {
            match tie_break {
                Some(tb) => [ave[f][j], tb.min[f][j], tb.std[f][j]],
                None => [ave[f][j], 0.0, 0.0],
            }
        };
        let cmp = |i: usize, j: usize| -> Ordering {
            let (a, b) = (key(i), key(j));
            a.iter().zip(&b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
        };
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&i, &j| cmp(i, j));
        let mut start = 0;
        while start < m {
            let mut end = start + 1;
            while end < m && cmp(order[start], order[end]) == Ordering::Equal {
                end += 1;
            }
            let mid = (start + 1 + end) as f64 / 2.0;
            for &j in &order[start..end] {
                rank_sums[j] += mid;
            }
            start = end;
        }
    }
    let nf = n as f64;
    let mf = m as f64;
    let mean_ranks: Vec<f64> = rank_sums.iter().map(|s| s / nf).collect();
    let sum_sq: f64 = mean_ranks.iter().map(|r| r * r).sum();
    let statistic = 12.0 * nf / (mf * (mf + 1.0)) * sum_sq - 3.0 * nf * (mf + 1.0);
    let chi = ChiSquared::new(mf - 1.0).expect("positive degrees of freedom");
    let p_value = chi.sf(statistic.max(0.0));
    let mut global_rank: Vec<usize> = (0..m).collect();
    global_rank.sort_by(|&i, &j| mean_ranks[i].total_cmp(&mean_ranks[j]));
    Ok(FriedmanResult { mean_ranks, statistic, p_value, global_rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn perfect_ordering_ten_functions() {
        let ave: Vec<Vec<f64>> = (0..10).map(|f| vec![f as f64, f as f64 + 1.0, f as f64 + 5.0]).collect();
        let r = friedman(&ave, None).unwrap();
        assert_eq!(r.mean_ranks, vec![1.0, 2.0, 3.0]);
        // 12*10/(3*4) * ((-1)^2 + 0^2 + 1^2)
        assert!((r.statistic - 20.0).abs() < 1e-12);
        assert_eq!(r.global_rank, vec![0, 1, 2]);
        assert!(r.p_value < 1e-4);
    }

    #[test]
    fn exact_ties_get_mid_ranks() {
        let r = friedman(&[vec![1.0, 1.0, 3.0]], None).unwrap();
        assert_eq!(r.mean_ranks, vec![1.5, 1.5, 3.0]);
    }

    #[test]
    fn tie_break_uses_min_then_std() {
        let ave = vec![vec![1.0, 1.0, 1.0]];
        let min = vec![vec![0.5, 0.2, 0.5]];
        let std = vec![vec![0.3, 0.9, 0.1]];
        let r = friedman(&ave, Some(TieBreak { min: &min, std: &std })).unwrap();
        assert_eq!(r.mean_ranks, vec![3.0, 1.0, 2.0]);
    }

    #[test]
    fn errors() {
        assert_eq!(friedman(&[vec![1.0]], None), Err(AnalysisError::InsufficientGroups(1)));
        assert!(matches!(
            friedman(&[vec![1.0, 2.0], vec![1.0]], None),
            Err(AnalysisError::RaggedMatrix { row: 1, .. })
        ));
    }

    proptest! {
        #[test]
        fn ranks_sum_and_monotone_invariance(
            ave in proptest::collection::vec(proptest::collection::vec(-100.0f64..100.0, 4), 1..8)
        ) {
            let r = friedman(&ave, None).unwrap();
            let total: f64 = r.mean_ranks.iter().sum();
            prop_assert!((total - 10.0).abs() < 1e-9);
            prop_assert!(r.mean_ranks.iter().all(|&x| (1.0..=4.0).contains(&x)));
            let warped: Vec<Vec<f64>> = ave.iter().map(|row| row.iter().map(|v| v.powi(3) + 2.0 * v).collect()).collect();
            prop_assert_eq!(friedman(&warped, None).unwrap().mean_ranks, r.mean_ranks);
        }
    }
}
