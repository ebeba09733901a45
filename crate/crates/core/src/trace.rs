//! Per-iteration run records shared by every optimizer.

use std::cmp::Ordering;

use serde::Serialize;

use crate::problems::Evaluation;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    /// 0 for the initial population.
    pub iter: usize,
    pub fes: u64,
    pub best: Evaluation,
    /// Population diversity after this iteration.
    pub div: f64,
}

/// CSV shape of a [`TraceRow`]: `iter,fes,best_value,div`.
#[derive(Debug, Serialize)]
pub struct TraceCsvRow {
    pub iter: usize,
    pub fes: u64,
    pub best_value: f64,
    pub div: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunTrace {
    pub rows: Vec<TraceRow>,
}

impl RunTrace {
    pub fn push(&mut self, row: TraceRow) {
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn best_values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.best.value).collect()
    }

    pub fn divs(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.div).collect()
    }

    /// True when no row is worse than the one before it.
    pub fn is_monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].best.compare(&w[0].best) != Ordering::Greater)
    }

    pub fn csv_rows(&self) -> impl Iterator<Item = TraceCsvRow> + '_ {
        self.rows.iter().map(|r| TraceCsvRow { iter: r.iter, fes: r.fes, best_value: r.best.value, div: r.div })
    }
}

/// Final result of one optimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub best_position: Vec<f64>,
    pub best: Evaluation,
    pub trace: RunTrace,
    pub fes_used: u64,
    /// Completed iterations, not counting initialization.
    pub iterations: usize,
}
