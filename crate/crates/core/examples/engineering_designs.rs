//! The five constrained design problems: check each published reference
//! design, then let ECO search for it.

use ecocycle::engineering;
use ecocycle::harness::{resolve_budget, sig9, Suite};
use ecocycle::{eco, Evaluator, Problem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in engineering::suite() {
        let r = p.reference();
        let e = Evaluator::new(&p, 1, 0).evaluate(&r.point)?;
        println!("{} ({}), dim {}, {} constraints", p.id(), p.id().title(), p.dim(), p.num_constraints());
        println!("  reference value {}  recomputed {}  feasible {}", sig9(r.value), sig9(e.value), e.feasible);
        let tight = p.constraint_report(&r.point).into_iter().filter(|c| c.value.abs() < 1e-3).count();
        println!("  active constraints at the reference: {tight}");

        let budget = resolve_budget(Suite::Engineering, p.dim(), None);
        let out = eco::run(&p, &eco::EcoConfig::new(budget, 1))?;
        println!("  eco best {}  violation {:.1e}", sig9(out.best.value), out.best.violation);
    }
    Ok(())
}
