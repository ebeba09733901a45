//! Plugging in your own objective: one constrained problem via the trait,
//! one unconstrained problem via closures.

use ecocycle::problems::FnProblem;
use ecocycle::{eco, pso, Bounds, Problem};

/// Minimize x0 + x1 on [0, 10]^2 subject to x0 * x1 >= 4.
/// The optimum is x = (2, 2) with value 4.
struct Hyperbola {
    bounds: Bounds,
}

impl Problem for Hyperbola {
    fn name(&self) -> &str {
        "hyperbola"
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn objective(&self, x: &[f64], _noise: &mut dyn rand::RngCore) -> f64 {
        x[0] + x[1]
    }

    fn num_constraints(&self) -> usize {
        1
    }

    fn constraints(&self, x: &[f64], out: &mut [f64]) {
        out[0] = 4.0 - x[0] * x[1];
    }

    fn known_optimum(&self) -> Option<f64> {
        Some(4.0)
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = Hyperbola { bounds: Bounds::uniform(0.0, 10.0, 2)? };
    let out = eco::run(&h, &eco::EcoConfig::new(20_000, 11))?;
    println!(
        "{}: best {:.6} at ({:.4}, {:.4}), violation {:.1e}",
        h.name(),
        out.best.value,
        out.best_position[0],
        out.best_position[1],
        out.best.violation
    );

    let rosen = FnProblem::new("rosenbrock-2d", Bounds::new(vec![-2.0, -1.0], vec![2.0, 3.0])?, |x: &[f64]| {
        100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2)
    })
    .with_optimum(0.0);
    let e = eco::run(&rosen, &eco::EcoConfig::new(20_000, 11))?;
    let p = pso::run_pso(&rosen, &pso::PsoConfig::new(20_000, 11))?;
    println!("{}: eco {:.3e}, pso {:.3e}", rosen.name(), e.best.value, p.best.value);
    Ok(())
}
