use serde::Serialize;

use super::AnalysisError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunSummary {
    pub min: f64,
    pub ave: f64,
    /// Sample standard deviation (N - 1 denominator); 0 for a single run.
    pub std: f64,
    pub n: usize,
}

pub fn summarize(values: &[f64]) -> Result<RunSummary, AnalysisError> {
    if values.is_empty() {
        return Err(AnalysisError::EmptySample);
    }
    let n = values.len();
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let ave = values.iter().sum::<f64>() / n as f64;
    let std = if n > 1 {
        (values.iter().map(|v| (v - ave).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(RunSummary { min, ave, std, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use proptest::prelude::*;
    use rand::Rng;
    use statrs::distribution::{ContinuousCDF, Normal};

    #[test]
    fn textbook_example() {
        let s = summarize(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!((s.min, s.ave, s.std, s.n), (1.0, 2.0, 1.0, 3));
    }

    #[test]
    fn constant_and_empty() {
        assert_eq!(summarize(&[4.5; 7]).unwrap().std, 0.0);
        assert_eq!(summarize(&[]), Err(AnalysisError::EmptySample));
    }

    #[test]
    fn normal_sample_mean() {
        let mut r = rng::stream(5, 0);
        let normal = Normal::new(0.0, 1.0).unwrap();
        let xs: Vec<f64> = (0..25).map(|_| normal.inverse_cdf(r.random_range(1e-12..1.0))).collect();
        let s = summarize(&xs).unwrap();
        assert!(s.ave.abs() <= 4.0 / 5.0);
    }

    proptest! {
        #[test]
        fn permutation_invariant(mut xs in proptest::collection::vec(-1e3f64..1e3, 1..30)) {
            let a = summarize(&xs).unwrap();
            xs.reverse();
            let b = summarize(&xs).unwrap();
            prop_assert_eq!(a.min, b.min);
            prop_assert!((a.ave - b.ave).abs() < 1e-9);
            prop_assert!((a.std - b.std).abs() < 1e-9);
            prop_assert!(a.min <= a.ave + 1e-9 && a.std >= 0.0);
        }
    }
}
