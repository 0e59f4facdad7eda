// Compare the law of the two-point ESS count with a Poisson law and its
// Chen-Stein bound.

use esslab::experiments::{chen_stein_from_run, EssRun, TrialPlan};
use esslab::DistributionSpec;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let run = EssRun::run(&TrialPlan::new(DistributionSpec::cauchy(), 200, 400, 8)?)?;
    let est = chen_stein_from_run(&run)?;
    let r = est.report;
    println!("S2 pmf: {:.3?}", run.s2_pmf());
    println!(
        "lambda = {:.3}, b1 = {:.4}, b2 = {:.4}, bound = {:.4}",
        r.lambda, r.b1, r.b2, r.bound
    );
    println!(
        "l1 distance to Poisson(lambda) = {:.4}, MC error {:.4}",
        r.empirical_l1, est.mc_error
    );
    let half = run.s2_poisson_fit(0.5)?;
    println!("l1 distance to Poisson(1/2) = {:.4}", half.l1_distance);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
