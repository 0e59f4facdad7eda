// Parse laws from the grammar, evaluate them and draw samples.

use esslab::{DistributionSpec, Stream};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for token in ["exp", "normal", "weibull:0.5", "pareto:2", "sym(exp)", "cauchy"] {
        let law: DistributionSpec = token.parse()?;
        let median = law.quantile(0.5)?;
        println!(
            "{law:<12} tail={:?} median={median:+.4} F(1)={:.4} g(1)={:.4}",
            law.tail_class(),
            law.cdf(1.0),
            law.cumulative_hazard(1.0)?,
        );
        assert_eq!(law.to_string(), token);
    }

    let law = DistributionSpec::pareto(1.0)?.symmetrize()?;
    let mut stream = Stream::new(2024);
    let draws: Vec<f64> = (0..5).map(|_| law.sample(&mut stream)).collect();
    println!("{law} draws: {draws:.3?}");

    assert!("gauss".parse::<DistributionSpec>().is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
