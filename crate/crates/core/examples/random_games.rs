// Count pure and two-point ESS of random games, law by law.

use esslab::experiments::{EssRun, TrialPlan};
use esslab::DistributionSpec;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for law in ["uniform", "exp", "cauchy"] {
        let spec: DistributionSpec = law.parse()?;
        for n in [10, 100] {
            let run = EssRun::run(&TrialPlan::new(spec, n, 200, 11)?)?;
            let (s1, s2) = (run.mean_s(1), run.mu());
            println!(
                "{law:<8} n={n:<4} mean S1 = {:.3} ± {:.3}   mu = {:.3} ± {:.3}",
                s1.mean, s1.stderr, s2.mean, s2.stderr
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
