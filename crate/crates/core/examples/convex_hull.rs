// Hull vertices, positive-normal edges and the two-point event.

use esslab::hull::{gamma_indicator, line_through_pair, sample_points, HullStats, PointSample};
use esslab::{DistributionSpec, Stream};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Points 0 and 1 span the upper-right edge; (0.2, 0.2) sits below it.
    let s = PointSample::from_pairs(&[(0.0, 1.0), (1.0, 0.0), (0.2, 0.2), (-1.0, -1.0)])?;
    let h = HullStats::compute(&s);
    println!("hull {:?}: V = {}, V0 = {:?}", h.hull, h.v, h.v0);
    println!("line through 0,1: {:?}", line_through_pair(s.points()[0], s.points()[1])?);
    println!("two-point event: {}", gamma_indicator(&s));
    assert!(gamma_indicator(&s));

    let mut stream = Stream::new(5);
    for law in ["uniform", "cauchy"] {
        let spec: DistributionSpec = law.parse()?;
        let sample = sample_points(10_000, &spec, &mut stream)?;
        let h = HullStats::compute(&sample);
        println!("{law:<8} n=10000: V = {}, V0 = {:?}", h.v, h.v0);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
