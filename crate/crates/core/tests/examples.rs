mod distributions_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/distributions.rs"));
}

#[test]
fn distributions_example_runs() {
    distributions_example::run_example().expect("distributions example should run");
}

mod ess_census_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/ess_census.rs"));
}

#[test]
fn ess_census_example_runs() {
    ess_census_example::run_example().expect("ess_census example should run");
}

mod random_games_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/random_games.rs"));
}

#[test]
fn random_games_example_runs() {
    random_games_example::run_example().expect("random_games example should run");
}

mod convex_hull_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/convex_hull.rs"));
}

#[test]
fn convex_hull_example_runs() {
    convex_hull_example::run_example().expect("convex_hull example should run");
}

mod u_statistic_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/u_statistic.rs"));
}

#[test]
fn u_statistic_example_runs() {
    u_statistic_example::run_example().expect("u_statistic example should run");
}

mod poisson_approximation_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/poisson_approximation.rs"));
}

#[test]
fn poisson_approximation_example_runs() {
    poisson_approximation_example::run_example().expect("poisson_approximation example should run");
}

mod hull_collapse_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hull_collapse.rs"));
}

#[test]
fn hull_collapse_example_runs() {
    hull_collapse_example::run_example().expect("hull_collapse example should run");
}

mod existence_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/existence.rs"));
}

#[test]
fn existence_example_runs() {
    existence_example::run_example().expect("existence example should run");
}

mod reproducible_streams_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/reproducible_streams.rs"));
}

#[test]
fn reproducible_streams_example_runs() {
    reproducible_streams_example::run_example().expect("reproducible_streams example should run");
}

mod cli_sweep_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cli_sweep.rs"));
}

#[test]
fn cli_sweep_example_runs() {
    cli_sweep_example::run_example().expect("cli_sweep example should run");
}
