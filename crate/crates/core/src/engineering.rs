//! Five constrained mechanical design problems.
//!
//! | id   | problem                          | D | constraints |
//! |------|----------------------------------|---|-------------|
//! | rc15 | speed reducer weight             | 7 | 11          |
//! | rc17 | tension/compression spring       | 3 | 4           |
//! | rc19 | welded beam cost                 | 4 | 7           |
//! | rc20 | three-bar truss                  | 2 | 3           |
//! | rc31 | gear train ratio                 | 4 | 8           |
//!
//! Formulas follow the CEC-2020 real-world suite definitions. Each problem
//! carries a reference design that must evaluate feasible and reproduce the
//! reference cost; the unit tests double as transcription checks.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use crate::problems::{total_violation, Bounds, Problem, ProblemError, TOL_FEAS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EngineeringId {
    Rc15,
    Rc17,
    Rc19,
    Rc20,
    Rc31,
}

impl EngineeringId {
    pub const ALL: [EngineeringId; 5] = [Self::Rc15, Self::Rc17, Self::Rc19, Self::Rc20, Self::Rc31];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Rc15 => "rc15",
            Self::Rc17 => "rc17",
            Self::Rc19 => "rc19",
            Self::Rc20 => "rc20",
            Self::Rc31 => "rc31",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Self::Rc15 => "weight minimization of a speed reducer",
            Self::Rc17 => "tension/compression spring design",
            Self::Rc19 => "welded beam design",
            Self::Rc20 => "three-bar truss design",
            Self::Rc31 => "gear train design",
        }
    }
}

impl fmt::Display for EngineeringId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EngineeringId {
    type Err = ProblemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| ProblemError::UnknownFunction(s.to_string()))
    }
}

/// Reference design `(x*, f*)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    pub point: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct EngineeringProblem {
    id: EngineeringId,
    bounds: Bounds,
    reference: Reference,
}

pub fn make_engineering(id: EngineeringId) -> EngineeringProblem {
    let (lower, upper, point, value): (Vec<f64>, Vec<f64>, Vec<f64>, f64) = match id {
        EngineeringId::Rc15 => (
            vec![2.6, 0.7, 17.0, 7.3, 7.3, 2.9, 5.0],
            vec![3.6, 0.8, 28.0, 8.3, 8.3, 3.9, 5.5],
            vec![3.5, 0.7, 17.0, 7.3, 7.71531991, 3.35054095, 5.28665446],
            2994.42447,
        ),
        EngineeringId::Rc17 => (
            vec![0.05, 0.25, 2.0],
            vec![2.0, 1.3, 15.0],
            vec![0.05169231, 0.35679602, 11.2843781],
            0.01266523,
        ),
        EngineeringId::Rc19 => (
            vec![0.125, 0.1, 0.1, 0.1],
            vec![2.0, 10.0, 10.0, 2.0],
            vec![0.20572964, 3.25312004, 9.03662391, 0.20572964],
            1.69524716,
        ),
        EngineeringId::Rc20 => (vec![0.0, 0.0], vec![1.0, 1.0], vec![0.78867513, 0.40824830], 263.895843),
        EngineeringId::Rc31 => (
            vec![0.01; 4],
            vec![60.0; 4],
            vec![49.3000403, 19.3605917, 15.8481360, 42.8673784],
            2.7009e-12,
        ),
    };
    EngineeringProblem {
        id,
        bounds: Bounds::new(lower, upper).expect("static bounds are valid"),
        reference: Reference { point, value },
    }
}

pub fn suite() -> Vec<EngineeringProblem> {
    EngineeringId::ALL.into_iter().map(make_engineering).collect()
}

/// One row of [`EngineeringProblem::constraint_report`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintStatus {
    /// 1-based, in declaration order.
    pub index: usize,
    pub value: f64,
    pub satisfied: bool,
}

impl EngineeringProblem {
    pub fn id(&self) -> EngineeringId {
        self.id
    }

    pub fn reference(&self) -> &Reference {
        &self.reference
    }

    /// Notes on formula variants, shown by the CLI catalog.
    pub fn documentation(&self) -> &'static str {
        match self.id {
            EngineeringId::Rc15 => {
                "cubic shaft coefficient 7.477; stress constraints use l1/l2 cubes and the 16.91e6 / 157.5e6 load terms"
            }
            EngineeringId::Rc17 => "classical spring constraints (deflection, shear, surge, diameter)",
            EngineeringId::Rc19 => {
                "cost 1.10471*h^2*l; J = 2*sqrt(2)*h*l*(l^2/4 + ((h+t)/2)^2); Pc uses sqrt(t^2*b^6/36) with 4.013; delta = 6PL^3/(E t^2 b)"
            }
            EngineeringId::Rc20 => "stress constraints over sqrt(2)*A1^2 + 2*A1*A2 and A1 + sqrt(2)*A2",
            EngineeringId::Rc31 => "teeth counts rounded to the nearest integer inside the objective; 12 <= T <= 60",
        }
    }

    // 0.7854 is the published coefficient, not a rounded pi/4
    #[allow(clippy::approx_constant)]
    pub fn cost(&self, x: &[f64]) -> f64 {
        match self.id {
            EngineeringId::Rc15 => {
                let [x1, x2, x3, x4, x5, x6, x7] = [x[0], x[1], x[2], x[3], x[4], x[5], x[6]];
                0.7854 * x1 * x2 * x2 * (3.3333 * x3 * x3 + 14.9334 * x3 - 43.0934)
                    - 1.508 * x1 * (x6 * x6 + x7 * x7)
                    + 7.477 * (x6.powi(3) + x7.powi(3))
                    + 0.7854 * (x4 * x6 * x6 + x5 * x7 * x7)
            }
            EngineeringId::Rc17 => (x[2] + 2.0) * x[1] * x[0] * x[0],
            EngineeringId::Rc19 => welded_beam_cost(x),
            EngineeringId::Rc20 => (2.0 * SQRT_2 * x[0] + x[1]) * TRUSS_LENGTH,
            EngineeringId::Rc31 => {
                let t: Vec<f64> = x.iter().map(|v| v.round()).collect();
                (1.0 / 6.931 - t[1] * t[2] / (t[0] * t[3])).powi(2)
            }
        }
    }

    pub fn constraint_values(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.num_constraints()];
        self.constraints(x, &mut g);
        g
    }

    pub fn constraint_report(&self, x: &[f64]) -> Vec<ConstraintStatus> {
        self.constraint_values(x)
            .into_iter()
            .enumerate()
            .map(|(i, value)| ConstraintStatus { index: i + 1, value, satisfied: value <= TOL_FEAS })
            .collect()
    }

    pub fn violation(&self, x: &[f64]) -> f64 {
        total_violation(self, x)
    }
}

const TRUSS_LENGTH: f64 = 100.0;
const TRUSS_LOAD: f64 = 2.0;
const TRUSS_STRESS: f64 = 2.0;

const BEAM_LOAD: f64 = 6000.0;
const BEAM_LENGTH: f64 = 14.0;
const BEAM_E: f64 = 30e6;
const BEAM_G: f64 = 12e6;
const BEAM_TAU_MAX: f64 = 13600.0;
const BEAM_SIGMA_MAX: f64 = 30000.0;
const BEAM_DELTA_MAX: f64 = 0.25;

fn welded_beam_cost(x: &[f64]) -> f64 {
    1.10471 * x[0] * x[0] * x[1] + 0.04811 * x[2] * x[3] * (14.0 + x[1])
}

fn welded_beam_constraints(x: &[f64], g: &mut [f64]) {
    let [h, l, t, b] = [x[0], x[1], x[2], x[3]];
    let (p, len) = (BEAM_LOAD, BEAM_LENGTH);
    let m = p * (len + l / 2.0);
    let half_sq = l * l / 4.0 + ((h + t) / 2.0).powi(2);
    let r = half_sq.sqrt();
    let j = 2.0 * (SQRT_2 * h * l * half_sq);
    let tau_p = p / (SQRT_2 * h * l);
    let tau_pp = m * r / j;
    let tau = (tau_p * tau_p + 2.0 * tau_p * tau_pp * l / (2.0 * r) + tau_pp * tau_pp).sqrt();
    let sigma = 6.0 * p * len / (b * t * t);
    let delta = 6.0 * p * len.powi(3) / (BEAM_E * t * t * b);
    let pc = 4.013 * BEAM_E * (t * t * b.powi(6) / 36.0).sqrt() / (len * len)
        * (1.0 - t / (2.0 * len) * (BEAM_E / (4.0 * BEAM_G)).sqrt());
    g[0] = tau - BEAM_TAU_MAX;
    g[1] = sigma - BEAM_SIGMA_MAX;
    g[2] = delta - BEAM_DELTA_MAX;
    g[3] = h - b;
    g[4] = p - pc;
    g[5] = 0.125 - h;
    g[6] = welded_beam_cost(x) - 5.0;
}

impl Problem for EngineeringProblem {
    fn name(&self) -> &str {
        self.id.as_str()
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn objective(&self, x: &[f64], _noise: &mut dyn rand::RngCore) -> f64 {
        self.cost(x)
    }

    fn num_constraints(&self) -> usize {
        match self.id {
            EngineeringId::Rc15 => 11,
            EngineeringId::Rc17 => 4,
            EngineeringId::Rc19 => 7,
            EngineeringId::Rc20 => 3,
            EngineeringId::Rc31 => 8,
        }
    }

    fn constraints(&self, x: &[f64], g: &mut [f64]) {
        match self.id {
            EngineeringId::Rc15 => {
                let [x1, x2, x3, x4, x5, x6, x7] = [x[0], x[1], x[2], x[3], x[4], x[5], x[6]];
                g[0] = 27.0 / (x1 * x2 * x2 * x3) - 1.0;
                g[1] = 397.5 / (x1 * x2 * x2 * x3 * x3) - 1.0;
                g[2] = 1.93 * x4.powi(3) / (x2 * x3 * x6.powi(4)) - 1.0;
                g[3] = 1.93 * x5.powi(3) / (x2 * x3 * x7.powi(4)) - 1.0;
                g[4] = ((745.0 * x4 / (x2 * x3)).powi(2) + 16.91e6).sqrt() / (110.0 * x6.powi(3)) - 1.0;
                g[5] = ((745.0 * x5 / (x2 * x3)).powi(2) + 157.5e6).sqrt() / (85.0 * x7.powi(3)) - 1.0;
                g[6] = x2 * x3 / 40.0 - 1.0;
                g[7] = 5.0 * x2 / x1 - 1.0;
                g[8] = x1 / (12.0 * x2) - 1.0;
                g[9] = (1.5 * x6 + 1.9) / x4 - 1.0;
                g[10] = (1.1 * x7 + 1.9) / x5 - 1.0;
            }
            EngineeringId::Rc17 => {
                let [d, dm, n] = [x[0], x[1], x[2]];
                g[0] = 1.0 - dm.powi(3) * n / (71785.0 * d.powi(4));
                g[1] = (4.0 * dm * dm - d * dm) / (12566.0 * (dm * d.powi(3) - d.powi(4)))
                    + 1.0 / (5108.0 * d * d)
                    - 1.0;
                g[2] = 1.0 - 140.45 * d / (dm * dm * n);
                g[3] = (d + dm) / 1.5 - 1.0;
            }
            EngineeringId::Rc19 => welded_beam_constraints(x, g),
            EngineeringId::Rc20 => {
                let (a1, a2) = (x[0], x[1]);
                let denom = SQRT_2 * a1 * a1 + 2.0 * a1 * a2;
                g[0] = (SQRT_2 * a1 + a2) / denom * TRUSS_LOAD - TRUSS_STRESS;
                g[1] = a2 / denom * TRUSS_LOAD - TRUSS_STRESS;
                g[2] = 1.0 / (a1 + SQRT_2 * a2) * TRUSS_LOAD - TRUSS_STRESS;
            }
            EngineeringId::Rc31 => {
                for i in 0..4 {
                    g[i] = 12.0 - x[i];
                    g[i + 4] = x[i] - 60.0;
                }
            }
        }
        // a zero area or diameter yields NaN/inf; treat as maximally violated
        for gi in g.iter_mut() {
            if gi.is_nan() {
                *gi = f64::INFINITY;
            }
        }
    }

    fn known_optimum(&self) -> Option<f64> {
        Some(self.reference.value)
    }
}
