// How often a random game has an ESS of support at most two.

use esslab::experiments::{existence_experiment, s1_distribution, TrialPlan};
use esslab::DistributionSpec;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = DistributionSpec::cauchy();
    for n in [10, 100, 300] {
        let e = existence_experiment(&TrialPlan::new(spec, n, 200, 4)?)?;
        println!(
            "cauchy n={n:<4} P(pure) = {:.3}  P(two-point) = {:.3}  P(either) = {:.3}",
            e.p_pure.mean, e.p_two_point.mean, e.p_le2.mean
        );
    }
    let s1 = s1_distribution(&TrialPlan::new(spec, 5, 20_000, 4)?)?;
    println!(
        "pure ESS count at n=5 vs Binomial(5, 1/5): l1 = {:.4}, chi-square p = {:.3}",
        s1.l1_distance,
        s1.chi_square.map_or(f64::NAN, |c| c.p_value)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
