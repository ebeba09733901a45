//! Median-based population diversity and the exploration/exploitation split.

/// Mean absolute deviation from the per-dimension median, averaged over dimensions.
///
/// Returns 0 for an empty population.
pub fn population_diversity<P: AsRef<[f64]>>(positions: &[P]) -> f64 {
    let p = positions.len();
    if p == 0 {
        return 0.0;
    }
    let dim = positions[0].as_ref().len();
    if dim == 0 {
        return 0.0;
    }
    let mut column = vec![0.0; p];
    let mut total = 0.0;
    for j in 0..dim {
        for (c, x) in column.iter_mut().zip(positions) {
            *c = x.as_ref()[j];
        }
        let med = median(&mut column);
        total += column.iter().map(|v| (med - v).abs()).sum::<f64>() / p as f64;
    }
    total / dim as f64
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiversityCurve {
    pub div: Vec<f64>,
    pub div_max: f64,
    pub exploration_pct: Vec<f64>,
    pub exploitation_pct: Vec<f64>,
}

impl DiversityCurve {
    /// Builds the curve from already computed per-iteration diversities.
    pub fn from_divs(div: Vec<f64>) -> Self {
        let div_max = div.iter().copied().fold(0.0, f64::max);
        let exploration_pct: Vec<f64> = if div_max > 0.0 {
            div.iter().map(|d| 100.0 * (d / div_max)).collect()
        } else {
            vec![0.0; div.len()]
        };
        let exploitation_pct = exploration_pct.iter().map(|e| 100.0 - e).collect();
        Self { div, div_max, exploration_pct, exploitation_pct }
    }

    pub fn len(&self) -> usize {
        self.div.len()
    }

    pub fn is_empty(&self) -> bool {
        self.div.is_empty()
    }
}

/// `history[k]` holds the population positions at iteration `k`.
pub fn diversity_curve(history: &[Vec<Vec<f64>>]) -> DiversityCurve {
    DiversityCurve::from_divs(history.iter().map(|pop| population_diversity(pop)).collect())
}
