//! The 23 classic benchmark functions (F1-F23).
//!
//! F1-F13 scale with the requested dimension, F14-F23 have a fixed one.
//! F12/F13 use the usual penalty term `u(x, a, k, m)`, and the coefficient
//! tables of F14, F15 and F19-F23 are the standard published constants.

use std::f64::consts::{E, PI};

use crate::problems::{Bounds, Problem, ProblemError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modality {
    Unimodal,
    Multimodal,
}

/// One of F1..F23 instantiated at a concrete dimension.
#[derive(Debug, Clone)]
pub struct ClassicFunction {
    id: u8,
    name: String,
    bounds: Bounds,
}

pub const CLASSIC_COUNT: u8 = 23;

/// Dimension of F14..F23; `None` for the scalable functions.
pub fn fixed_dim(id: u8) -> Option<usize> {
    match id {
        14 | 16 | 17 | 18 => Some(2),
        15 | 21 | 22 | 23 => Some(4),
        19 => Some(3),
        20 => Some(6),
        _ => None,
    }
}

/// Parses `f7`, `F7` or `7`.
pub fn parse_id(s: &str) -> Result<u8, ProblemError> {
    let digits = s.trim().trim_start_matches(['f', 'F']);
    match digits.parse::<u8>() {
        Ok(id) if (1..=CLASSIC_COUNT).contains(&id) => Ok(id),
        _ => Err(ProblemError::UnknownFunction(s.to_string())),
    }
}

/// Builds F`id`. `dim` is ignored for fixed-dimension functions.
pub fn make_classic(id: u8, dim: usize) -> Result<ClassicFunction, ProblemError> {
    if !(1..=CLASSIC_COUNT).contains(&id) {
        return Err(ProblemError::UnknownFunction(format!("f{id}")));
    }
    let d = fixed_dim(id).unwrap_or(dim);
    let bounds = match id {
        1 | 3 | 4 | 6 => Bounds::uniform(-100.0, 100.0, d),
        2 => Bounds::uniform(-10.0, 10.0, d),
        5 => Bounds::uniform(-30.0, 30.0, d),
        7 => Bounds::uniform(-1.28, 1.28, d),
        8 => Bounds::uniform(-500.0, 500.0, d),
        9 => Bounds::uniform(-5.12, 5.12, d),
        10 => Bounds::uniform(-32.0, 32.0, d),
        11 => Bounds::uniform(-600.0, 600.0, d),
        12 | 13 => Bounds::uniform(-50.0, 50.0, d),
        14 => Bounds::uniform(-65.536, 65.536, d),
        15 | 16 => Bounds::uniform(-5.0, 5.0, d),
        17 => Bounds::new(vec![-5.0, 0.0], vec![10.0, 15.0]),
        18 => Bounds::uniform(-2.0, 2.0, d),
        19 | 20 => Bounds::uniform(0.0, 1.0, d),
        _ => Bounds::uniform(0.0, 10.0, d),
    }?;
    Ok(ClassicFunction { id, name: format!("f{id}"), bounds })
}

/// All 23 functions; scalable ones at `dim`.
pub fn suite(dim: usize) -> Vec<ClassicFunction> {
    (1..=CLASSIC_COUNT).map(|id| make_classic(id, dim).expect("valid id")).collect()
}

impl ClassicFunction {
    pub fn id(&self) -> u8 {
        self.id
    }

    pub fn modality(&self) -> Modality {
        if self.id <= 7 {
            Modality::Unimodal
        } else {
            Modality::Multimodal
        }
    }

    pub fn fixed_dim(&self) -> Option<usize> {
        fixed_dim(self.id)
    }

    /// Noise-free part of the objective (identical to the objective except F7).
    pub fn value(&self, x: &[f64]) -> f64 {
        match self.id {
            1 => x.iter().map(|v| v * v).sum(),
            2 => {
                let abs = x.iter().map(|v| v.abs());
                abs.clone().sum::<f64>() + abs.product::<f64>()
            }
            3 => {
                let mut prefix = 0.0;
                x.iter()
                    .map(|v| {
                        prefix += v;
                        prefix * prefix
                    })
                    .sum()
            }
            4 => x.iter().fold(0.0, |m, v| f64::max(m, v.abs())),
            5 => x
                .windows(2)
                .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
                .sum(),
            6 => x.iter().map(|v| (v + 0.5).floor().powi(2)).sum(),
            7 => x.iter().enumerate().map(|(i, v)| (i + 1) as f64 * v.powi(4)).sum(),
            8 => -x.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>(),
            9 => x.iter().map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0).sum(),
            10 => {
                let n = x.len() as f64;
                let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
                let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
                -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
            }
            11 => {
                let s = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let p: f64 = x.iter().enumerate().map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos()).product();
                s - p + 1.0
            }
            12 => penalized_1(x),
            13 => penalized_2(x),
            14 => foxholes(x),
            15 => kowalik(x),
            16 => {
                let (a, b) = (x[0], x[1]);
                4.0 * a * a - 2.1 * a.powi(4) + a.powi(6) / 3.0 + a * b - 4.0 * b * b + 4.0 * b.powi(4)
            }
            17 => {
                let (a, b) = (x[0], x[1]);
                (b - 5.1 / (4.0 * PI * PI) * a * a + 5.0 / PI * a - 6.0).powi(2)
                    + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * a.cos()
                    + 10.0
            }
            18 => {
                let (a, b) = (x[0], x[1]);
                (1.0 + (a + b + 1.0).powi(2)
                    * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b))
                    * (30.0
                        + (2.0 * a - 3.0 * b).powi(2)
                            * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b))
            }
            19 => hartmann(x, &HARTMANN3_A, &HARTMANN3_P),
            20 => hartmann(x, &HARTMANN6_A, &HARTMANN6_P),
            21 => shekel(x, 5),
            22 => shekel(x, 7),
            23 => shekel(x, 10),
            _ => unreachable!("id validated on construction"),
        }
    }

    /// Exact optimum value (the published table rounds some of these).
    pub fn optimum_value(&self) -> f64 {
        match self.id {
            8 => -418.982_887_272_433_8 * self.bounds.dim() as f64,
            14 => 0.998_003_837_794_45,
            15 => 3.074_859_878_056e-4,
            16 => -1.031_628_453_489_877_6,
            17 => 0.397_887_357_729_738_2,
            18 => 3.0,
            19 => -3.862_782_147_820_755,
            20 => -3.321_995_171_584_243,
            21 => -10.153_199_679_058_23,
            22 => -10.402_940_566_818_66,
            23 => -10.536_409_816_692_05,
            _ => 0.0,
        }
    }

    /// A point attaining (to within solver precision) the optimum value.
    pub fn optimum_point(&self) -> Vec<f64> {
        let d = self.bounds.dim();
        match self.id {
            5 => vec![1.0; d],
            8 => vec![420.968_746_359_982; d],
            12 => vec![-1.0; d],
            13 => vec![1.0; d],
            14 => vec![-31.978_334_957_621_07, -31.978_328_496_668_112],
            15 => vec![0.192_833_453_094_478, 0.190_836_239_766_866, 0.123_117_299_174_842, 0.135_765_990_090_2],
            16 => vec![0.089_842_016_529_270_98, -0.712_656_401_380_720_2],
            17 => vec![PI, 2.275],
            18 => vec![0.0, -1.0],
            19 => vec![0.114_614_327_900_298_3, 0.555_648_850_442_014_1, 0.852_546_954_688_931_4],
            20 => vec![
                0.201_707_620_446_730_57,
                0.146_780_942_226_308_9,
                0.476_744_850_861_760_5,
                0.275_342_390_950_817_75,
                0.311_651_873_968_761_5,
                0.657_275_165_730_518_7,
            ],
            21 => vec![4.000_037_152_376_549, 4.000_133_278_657_566, 4.000_037_151_057_555, 4.000_133_277_090_425],
            22 => vec![4.000_572_914_277_084, 4.000_689_366_040_889, 3.999_489_710_793_845, 3.999_606_160_006_792],
            23 => vec![4.000_746_533_201_553, 4.000_592_934_538_832, 3.999_663_397_220_256, 3.999_509_801_285_226],
            _ => vec![0.0; d],
        }
    }

    /// Regression anchors `(point, value)` for this function.
    pub fn spot_values(&self) -> Vec<(Vec<f64>, f64)> {
        let d = self.bounds.dim();
        let mut anchors = vec![(self.optimum_point(), self.optimum_value())];
        match self.id {
            1 => anchors.push((vec![1.0; d], d as f64)),
            2 => anchors.push((vec![1.0; d], d as f64 + 1.0)),
            3 => anchors.push((vec![1.0; d], (1..=d).map(|i| (i * i) as f64).sum())),
            4 => anchors.push(((0..d).map(|i| i as f64 - 2.0).collect(), (d as f64 - 3.0).max(2.0))),
            5 => anchors.push((vec![0.0; d], (d - 1) as f64)),
            6 => anchors.push((vec![0.4; d], 0.0)),
            _ => {}
        }
        anchors
    }
}

impl Problem for ClassicFunction {
    fn name(&self) -> &str {
        &self.name
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn objective(&self, x: &[f64], noise: &mut dyn rand::RngCore) -> f64 {
        let v = self.value(x);
        if self.id == 7 {
            // uniform [0, 1) from 53 random bits
            v + (noise.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
        } else {
            v
        }
    }

    fn known_optimum(&self) -> Option<f64> {
        Some(self.optimum_value())
    }

    fn is_noisy(&self) -> bool {
        self.id == 7
    }
}

fn penalty(x: f64, a: f64, k: f64, m: i32) -> f64 {
    if x > a {
        k * (x - a).powi(m)
    } else if x < -a {
        k * (-x - a).powi(m)
    } else {
        0.0
    }
}

fn penalized_1(x: &[f64]) -> f64 {
    let n = x.len();
    let y: Vec<f64> = x.iter().map(|v| 1.0 + (v + 1.0) / 4.0).collect();
    let inner: f64 = y
        .windows(2)
        .map(|w| (w[0] - 1.0).powi(2) * (1.0 + 10.0 * (PI * w[1]).sin().powi(2)))
        .sum();
    PI / n as f64 * (10.0 * (PI * y[0]).sin().powi(2) + inner + (y[n - 1] - 1.0).powi(2))
        + x.iter().map(|&v| penalty(v, 10.0, 100.0, 4)).sum::<f64>()
}

fn penalized_2(x: &[f64]) -> f64 {
    let n = x.len();
    let inner: f64 = x
        .windows(2)
        .map(|w| (w[0] - 1.0).powi(2) * (1.0 + (3.0 * PI * w[1]).sin().powi(2)))
        .sum();
    let last = x[n - 1];
    0.1 * ((3.0 * PI * x[0]).sin().powi(2)
        + inner
        + (last - 1.0).powi(2) * (1.0 + (2.0 * PI * last).sin().powi(2)))
        + x.iter().map(|&v| penalty(v, 5.0, 100.0, 4)).sum::<f64>()
}

const FOXHOLE_GRID: [f64; 5] = [-32.0, -16.0, 0.0, 16.0, 32.0];

fn foxholes(x: &[f64]) -> f64 {
    let s: f64 = (0..25)
        .map(|j| {
            let a1 = FOXHOLE_GRID[j % 5];
            let a2 = FOXHOLE_GRID[j / 5];
            1.0 / ((j + 1) as f64 + (x[0] - a1).powi(6) + (x[1] - a2).powi(6))
        })
        .sum();
    1.0 / (1.0 / 500.0 + s)
}

const KOWALIK_A: [f64; 11] =
    [0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246];
const KOWALIK_INV_B: [f64; 11] = [0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0];

fn kowalik(x: &[f64]) -> f64 {
    KOWALIK_A
        .iter()
        .zip(KOWALIK_INV_B)
        .map(|(a, inv_b)| {
            let b = 1.0 / inv_b;
            (a - x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3])).powi(2)
        })
        .sum()
}

const HARTMANN_C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];
const HARTMANN3_A: [[f64; 3]; 4] = [[3.0, 10.0, 30.0], [0.1, 10.0, 35.0], [3.0, 10.0, 30.0], [0.1, 10.0, 35.0]];
const HARTMANN3_P: [[f64; 3]; 4] = [
    [0.3689, 0.1170, 0.2673],
    [0.4699, 0.4387, 0.7470],
    [0.1091, 0.8732, 0.5547],
    [0.03815, 0.5743, 0.8828],
];
const HARTMANN6_A: [[f64; 6]; 4] = [
    [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
    [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
    [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
    [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
];
const HARTMANN6_P: [[f64; 6]; 4] = [
    [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
    [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
    [0.2348, 0.1415, 0.3522, 0.2883, 0.3047, 0.6650],
    [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
];

fn hartmann<const N: usize>(x: &[f64], a: &[[f64; N]; 4], p: &[[f64; N]; 4]) -> f64 {
    -(0..4)
        .map(|i| {
            let e: f64 = (0..N).map(|j| a[i][j] * (x[j] - p[i][j]).powi(2)).sum();
            HARTMANN_C[i] * (-e).exp()
        })
        .sum::<f64>()
}

const SHEKEL_A: [[f64; 4]; 10] = [
    [4.0, 4.0, 4.0, 4.0],
    [1.0, 1.0, 1.0, 1.0],
    [8.0, 8.0, 8.0, 8.0],
    [6.0, 6.0, 6.0, 6.0],
    [3.0, 7.0, 3.0, 7.0],
    [2.0, 9.0, 2.0, 9.0],
    [5.0, 5.0, 3.0, 3.0],
    [8.0, 1.0, 8.0, 1.0],
    [6.0, 2.0, 6.0, 2.0],
    [7.0, 3.6, 7.0, 3.6],
];
const SHEKEL_C: [f64; 10] = [0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5];

fn shekel(x: &[f64], m: usize) -> f64 {
    -(0..m)
        .map(|i| {
            let d: f64 = x.iter().zip(SHEKEL_A[i]).map(|(v, a)| (v - a).powi(2)).sum();
            1.0 / (d + SHEKEL_C[i])
        })
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use proptest::prelude::*;

    /// Optimum column of the published function table, as printed.
    const TABLE_OPTIMA: [(u8, f64); 10] = [
        (14, 0.9980),
        (15, 0.0003075),
        (16, -1.0316),
        (17, 0.3979),
        (18, 3.0),
        (19, -3.8628),
        (20, -3.3220),
        (21, -10.1532),
        (22, -10.4029),
        (23, -10.5364),
    ];

    #[test]
    fn optimum_points_attain_optimum_values() {
        for f in suite(30) {
            let got = f.value(&f.optimum_point());
            let tol = if matches!(f.id, 14 | 15) { 1e-3 } else { 1e-6 };
            assert!(
                (got - f.optimum_value()).abs() <= tol * f.optimum_value().abs().max(1.0),
                "f{}: {got} vs {}",
                f.id,
                f.optimum_value()
            );
        }
    }

    #[test]
    fn exact_optima_round_to_printed_table() {
        for (id, printed) in TABLE_OPTIMA {
            let f = make_classic(id, 0).unwrap();
            let exact = f.optimum_value();
            // printed values carry 4-5 significant digits
            assert!((exact - printed).abs() <= 5e-4 * printed.abs().max(1.0), "f{id}: {exact} vs {printed}");
        }
        let f8 = make_classic(8, 30).unwrap();
        assert!((f8.optimum_value() / 30.0 - (-418.98)).abs() < 5e-3);
    }

    #[test]
    fn dimension_rules() {
        assert_eq!(make_classic(1, 30).unwrap().dim(), 30);
        assert_eq!(make_classic(16, 30).unwrap().dim(), 2);
        assert_eq!(make_classic(20, 30).unwrap().dim(), 6);
        assert_eq!(make_classic(17, 30).unwrap().bounds().upper(), &[10.0, 15.0]);
        assert!(matches!(make_classic(24, 2), Err(ProblemError::UnknownFunction(_))));
        assert!(matches!(parse_id("f0"), Err(ProblemError::UnknownFunction(_))));
        assert_eq!(parse_id("F9").unwrap(), 9);
    }

    #[test]
    fn spot_values_hold() {
        for dim in [2, 5, 30] {
            for f in suite(dim) {
                for (x, v) in f.spot_values() {
                    let got = f.value(&x);
                    assert!((got - v).abs() <= 1e-6 * v.abs().max(1.0), "f{} d={dim}: {got} vs {v}", f.id);
                }
            }
        }
        assert_eq!(make_classic(1, 2).unwrap().value(&[1.0, 1.0]), 2.0);
        assert!(make_classic(10, 30).unwrap().value(&[0.0; 30]).abs() < 1e-15);
    }

    #[test]
    fn f8_at_optimum_and_modality() {
        let f = make_classic(8, 30).unwrap();
        assert!((f.value(&f.optimum_point()) - f.optimum_value()).abs() < 1e-6);
        assert_eq!(make_classic(7, 3).unwrap().modality(), Modality::Unimodal);
        assert_eq!(make_classic(8, 3).unwrap().modality(), Modality::Multimodal);
    }

    #[test]
    fn f7_noise_is_bounded_and_averages_out() {
        let f = make_classic(7, 5).unwrap();
        let x = [0.3, -0.2, 0.5, 0.1, -1.0];
        let clean = f.value(&x);
        let mut noise = rng::stream(3, rng::NOISE_STREAM);
        let n = 20_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let v = f.objective(&x, &mut noise);
            assert!(v >= clean && v < clean + 1.0);
            sum += v;
        }
        assert!((sum / n as f64 - 0.5 - clean).abs() < 0.01);
        assert!(f.is_noisy());
    }

    proptest! {
        #[test]
        fn even_functions_are_symmetric(x in proptest::collection::vec(-5.0f64..5.0, 1..8)) {
            let neg: Vec<f64> = x.iter().map(|v| -v).collect();
            for id in [1u8, 2, 3, 4, 9, 10, 11] {
                let f = make_classic(id, x.len()).unwrap();
                let (a, b) = (f.value(&x), f.value(&neg));
                prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "f{} {} {}", id, a, b);
            }
        }

        #[test]
        fn f6_step_is_symmetric_away_from_half_integers(x in proptest::collection::vec(-5.0f64..5.0, 1..8)) {
            prop_assume!(x.iter().all(|v| (v.abs().fract() - 0.5).abs() > 1e-9));
            let neg: Vec<f64> = x.iter().map(|v| -v).collect();
            let f = make_classic(6, x.len()).unwrap();
            prop_assert_eq!(f.value(&x), f.value(&neg));
        }

        #[test]
        fn nonnegative_functions_stay_nonnegative(x in proptest::collection::vec(-30.0f64..30.0, 2..8)) {
            for id in [1u8, 2, 3, 4, 5, 6, 9, 11, 12, 13] {
                let f = make_classic(id, x.len()).unwrap();
                prop_assert!(f.value(&x) >= -1e-12);
            }
        }
    }
}
