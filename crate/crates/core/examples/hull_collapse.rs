// Vertex counts of random polygons: many vertices for light tails, about
// four for heavy symmetric tails.

use esslab::experiments::{hull_experiment, TrialPlan};
use esslab::DistributionSpec;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for law in ["uniform", "normal", "cauchy", "sym(pareto:1)"] {
        let spec: DistributionSpec = law.parse()?;
        let r = hull_experiment(&TrialPlan::new(spec, 2000, 100, 21)?)?;
        println!(
            "{law:<14} E(V) = {:6.3}  E(V0) = {:5.3}  P(V = 4) = {:.2}",
            r.e_v.mean, r.e_v0.mean, r.p_v_eq_4.mean
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
