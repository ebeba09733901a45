//! Roulette-wheel elite selection where lower fitness wins more often.
//!
//! Selection probability is proportional to `1 / f~`, with `f~` a positively
//! shifted copy of the pool's objective values:
//!
//! ```text
//! f~_i = f_i - min(f) + 0.1 * (max(f) - min(f)) + 1e-12
//! ```
//!
//! The shift keeps the order of the raw values, so it works for negative
//! objectives too. Pools with an infeasible member (or a non-finite value)
//! are ordered with [`Evaluation::compare`] instead and weighted by the
//! reciprocal of each member's rank.

use std::cmp::Ordering;

use rand::Rng;

use crate::problems::Evaluation;

const SPREAD_SHIFT: f64 = 0.1;
const FLOOR_SHIFT: f64 = 1e-12;

/// Positively shifted fitness for a pool, one entry per member.
pub fn shifted_fitness(pool: &[Evaluation]) -> Vec<f64> {
    let use_values = pool.iter().all(|e| e.feasible && e.value.is_finite());
    if use_values {
        let (min, max) = pool
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| (lo.min(e.value), hi.max(e.value)));
        let spread = max - min;
        pool.iter().map(|e| e.value - min + SPREAD_SHIFT * spread + FLOOR_SHIFT).collect()
    } else {
        // rank = 1 + number of strictly better members
        pool.iter()
            .map(|e| 1.0 + pool.iter().filter(|o| o.compare(e) == Ordering::Less).count() as f64)
            .collect()
    }
}

/// Selection probabilities `(1/f~_i) / sum_j (1/f~_j)`.
pub fn probabilities(shifted: &[f64]) -> Vec<f64> {
    let inv: Vec<f64> = shifted.iter().map(|f| 1.0 / f).collect();
    let total: f64 = inv.iter().sum();
    inv.iter().map(|w| w / total).collect()
}

/// Cumulative probabilities of a pool, built once and spun many times.
#[derive(Debug, Clone, PartialEq)]
pub struct RouletteWheel {
    cumulative: Vec<f64>,
}

impl RouletteWheel {
    pub fn new(pool: &[Evaluation]) -> Self {
        Self::from_shifted(&shifted_fitness(pool))
    }

    pub fn from_shifted(shifted: &[f64]) -> Self {
        assert!(!shifted.is_empty(), "roulette pool must be nonempty");
        let mut acc = 0.0;
        let cumulative = probabilities(shifted)
            .into_iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Self { cumulative }
    }

    pub fn len(&self) -> usize {
        self.cumulative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cumulative.is_empty()
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    /// Index of the first member whose cumulative probability reaches `r`.
    pub fn select(&self, r: f64) -> usize {
        let i = self.cumulative.partition_point(|&q| q < r);
        // rounding can leave the last cumulative value just under 1
        i.min(self.cumulative.len() - 1)
    }

    pub fn spin<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.select(rng.random::<f64>())
    }
}

/// `draws` independent selections with replacement.
pub fn roulette_select<R: Rng + ?Sized>(pool: &[Evaluation], draws: usize, rng: &mut R) -> Vec<usize> {
    let wheel = RouletteWheel::new(pool);
    (0..draws).map(|_| wheel.spin(rng)).collect()
}
