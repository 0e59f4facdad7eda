// Certify the ESS of small hand-written games.

use esslab::game::{census, is_pure_ess, two_point_ess, GameMatrix};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Hawk-dove style: neither pure strategy resists invasion, the mix does.
    let hawk_dove = GameMatrix::from_rows(&[[0.0, 3.0], [1.0, 2.0]])?;
    assert!(!is_pure_ess(&hawk_dove, 0) && !is_pure_ess(&hawk_dove, 1));
    let mix = two_point_ess(&hawk_dove, 0, 1).expect("mixed ESS");
    println!("hawk-dove: p = {:?}, v = {}", mix.strategy.weights(), mix.payoff_v);

    // Rock-paper-scissors has an interior equilibrium but no ESS.
    let rps = GameMatrix::from_rows(&[[0.0, -1.0, 1.0], [1.0, 0.0, -1.0], [-1.0, 1.0, 0.0]])?;
    let c = census(&rps, 3)?;
    println!("rock-paper-scissors: {} ESS", c.records.len());
    assert!(c.records.is_empty());

    // -I: the uniform mix over all three strategies is the only ESS.
    let neg_id = GameMatrix::from_rows(&[[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]])?;
    let c = census(&neg_id, 3)?;
    for r in &c.records {
        println!("-I: {:?} support {:?} weights {:.4?}", r.kind, r.support(), r.strategy.weights());
    }
    assert_eq!(c.count(3), 1);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
