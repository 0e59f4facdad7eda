// The conditional probability U that a fresh point lies above the line
// through two points, and its distribution over random pairs.

use esslab::experiments::{estimate_gamma_prob, fu_curve, TrialPlan};
use esslab::hull::{u_statistic, Point, DEFAULT_QUAD_POINTS};
use esslab::DistributionSpec;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let uniform = DistributionSpec::uniform();
    let u = u_statistic(Point::new(0.0, 1.0), Point::new(1.0, 0.0), &uniform, DEFAULT_QUAD_POINTS)?;
    println!("U for the anti-diagonal of the unit square: {u:.6}");

    let n = 20;
    let grid: Vec<f64> = (0..=1000).map(|i| i as f64 / 1000.0).collect();
    let curve = fu_curve(&uniform, 20_000, &grid, 3, n)?;
    let direct = estimate_gamma_prob(&TrialPlan::new(uniform, n, 200_000, 3)?)?;
    println!("F_U(1-) = {:.4} ± {:.4}", curve.below_one.mean, curve.below_one.stderr);
    println!(
        "two-point probability at n={n}: from F_U {:.5}, direct {:.5} ± {:.5}",
        curve.lemma5_check, direct.mean, direct.stderr
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
