//! Position-update operators of the ecological cycle.
//!
//! Each operator comes in two forms: a `*_with` function taking its random
//! numbers explicitly, and a wrapper that draws them from a generator in a
//! fixed order. The explicit forms are what the hand-worked unit tests pin.

use std::f64::consts::PI;

use rand::Rng;

/// Consumer predation factor, one component per dimension.
///
/// Each component is `1 + 2 * u * exp(-9 (k/k_max)^3) * s` with `u ~ U[0,1)`
/// and `s = ±1` drawn fresh per component, so it always lies in `[-1, 3]`
/// and collapses towards 1 as `k -> k_max`.
pub fn predation_factor<R: Rng + ?Sized>(k: usize, k_max: usize, dim: usize, rng: &mut R) -> Vec<f64> {
    let decay = predation_decay(k, k_max);
    (0..dim)
        .map(|_| {
            let u: f64 = rng.random();
            let sign = if rng.random_range(1..=2) == 1 { -1.0 } else { 1.0 };
            1.0 + 2.0 * u * decay * sign
        })
        .collect()
}

/// `exp(-9 (k/k_max)^3)`.
pub fn predation_decay(k: usize, k_max: usize) -> f64 {
    let t = k as f64 / k_max as f64;
    (-9.0 * t * t * t).exp()
}

/// `x + g ⊙ Σ_t weights[t] * (prey[t] - x)`.
pub fn predation_move(x: &[f64], prey: &[&[f64]], weights: &[f64], g: &[f64]) -> Vec<f64> {
    debug_assert_eq!(prey.len(), weights.len());
    (0..x.len())
        .map(|j| {
            let pull: f64 = prey.iter().zip(weights).map(|(p, w)| w * (p[j] - x[j])).sum();
            x[j] + g[j] * pull
        })
        .collect()
}

/// Move towards a shrunken copy of the iteration best.
///
/// `nei_j = nei_rands[j] * best_j`, then the result sits on the line through
/// `nei` and `x` at `nei + (0.4 * offset_rand - 0.2) * (nei - x)`.
pub fn decompose_optimal_with(x: &[f64], best: &[f64], nei_rands: &[f64], offset_rand: f64) -> Vec<f64> {
    let offset = 0.4 * offset_rand - 0.2;
    x.iter()
        .zip(best)
        .zip(nei_rands)
        .map(|((&xi, &bi), &r)| {
            let nei = r * bi;
            nei + offset * (nei - xi)
        })
        .collect()
}

pub fn decompose_optimal<R: Rng + ?Sized>(x: &[f64], best: &[f64], rng: &mut R) -> Vec<f64> {
    let nei_rands: Vec<f64> = (0..x.len()).map(|_| rng.random()).collect();
    let offset_rand = rng.random();
    decompose_optimal_with(x, best, &nei_rands, offset_rand)
}

fn norm(v: impl Iterator<Item = f64>) -> f64 {
    v.map(|a| a * a).sum::<f64>().sqrt()
}

/// Step of length `radius_rand * ||best - x||` along the unit vector of `direction`.
pub fn decompose_local_with(x: &[f64], best: &[f64], direction: &[f64], radius_rand: f64) -> Vec<f64> {
    let radius = norm(best.iter().zip(x).map(|(b, a)| b - a));
    let dir_norm = norm(direction.iter().copied());
    let scale = radius_rand * radius / dir_norm;
    x.iter().zip(direction).map(|(xi, vi)| xi + scale * vi).collect()
}

pub fn decompose_local<R: Rng + ?Sized>(x: &[f64], best: &[f64], rng: &mut R) -> Vec<f64> {
    let direction = loop {
        let v: Vec<f64> = (0..x.len()).map(|_| 2.0 * rng.random::<f64>() - 1.0).collect();
        if v.iter().any(|&c| c != 0.0) {
            break v;
        }
    };
    let radius_rand = rng.random();
    decompose_local_with(x, best, &direction, radius_rand)
}

/// Random-walk coefficient `cos(u * pi) * (1 - k / (1.5 k_max))^(5k / k_max)`.
pub fn walk_coefficient(k: usize, k_max: usize, u: f64) -> f64 {
    let t = k as f64 / k_max as f64;
    (u * PI).cos() * (1.0 - t / 1.5).powf(5.0 * t)
}

/// `weight * x + (1 - weight) * w` with `w_j = (2/3) * step_rands[j] * h * scale`.
pub fn decompose_global_with(x: &[f64], h: f64, scale: f64, step_rands: &[f64], weight: f64) -> Vec<f64> {
    x.iter()
        .zip(step_rands)
        .map(|(&xi, &r)| {
            let w = 2.0 / 3.0 * r * h * scale;
            weight * xi + (1.0 - weight) * w
        })
        .collect()
}

/// Global random decomposition. `scale` is the smallest box width.
pub fn decompose_global<R: Rng + ?Sized>(x: &[f64], k: usize, k_max: usize, scale: f64, rng: &mut R) -> Vec<f64> {
    let h = walk_coefficient(k, k_max, rng.random());
    let step_rands: Vec<f64> = (0..x.len()).map(|_| rng.random()).collect();
    let weight = rng.random();
    decompose_global_with(x, h, scale, &step_rands, weight)
}
