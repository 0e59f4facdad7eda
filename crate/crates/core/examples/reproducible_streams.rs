// Per-trial substreams make results independent of the worker count.

use esslab::experiments::{estimate_mu, with_threads, TrialPlan};
use esslab::DistributionSpec;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let plan = TrialPlan::new(DistributionSpec::normal(), 60, 300, 99)?;
    let one = with_threads(1, || estimate_mu(&plan))??;
    let four = with_threads(4, || estimate_mu(&plan))??;
    println!("1 worker:  {one:?}");
    println!("4 workers: {four:?}");
    assert_eq!(one.mean.to_bits(), four.mean.to_bits());
    assert_eq!(one.stderr.to_bits(), four.stderr.to_bits());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
