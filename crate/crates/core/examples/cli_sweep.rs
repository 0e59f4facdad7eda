// Drive the command-line front end in-process and read back its files.

use esslab::cli::{parse_plot_data, run, EXIT_OK};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("esslab-cli-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let out = dir.join("sweep.csv");
    let plot = dir.join("sweep-plot.csv");
    let code = run([
        "esslab", "sweep", "--dist", "uniform", "--n", "10,100", "--trials", "100",
        "--seed", "7", "--out", out.to_str().unwrap(), "--plot", plot.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    print!("{}", std::fs::read_to_string(&out)?);
    for row in parse_plot_data(&std::fs::read_to_string(&plot)?)? {
        println!("{} n={} {} = {:.4} [{:.4}, {:.4}]", row.dist, row.n, row.statistic, row.value, row.ci_lo, row.ci_hi);
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
