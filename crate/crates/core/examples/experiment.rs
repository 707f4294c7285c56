//! A small pairwise-distance and tie-count sweep over Mallows dispersion.

use seqrank::experiments::{run_experiment, to_csv, ExperimentConfig, PAIRWISE_HEADER, TIES_HEADER};

const CONFIG: &str = r#"
model = "mallows"
params = [0.0, 0.25, 0.5, 0.75, 1.0]
m = 8
n = 50
samples = 200
seed = 1
rules = ["seqlose:plurality", "seqwin:plurality"]
pairs = [["seqlose:plurality", "seqwin:plurality"], ["score:borda", "kemeny"]]
metrics = ["pairwise", "ties"]
"#;

fn main() -> seqrank::Result<()> {
    let cfg = ExperimentConfig::parse(CONFIG)?;
    let out = run_experiment(&cfg)?;
    print!("{}", to_csv(&out.pairwise, &PAIRWISE_HEADER)?);
    print!("{}", to_csv(&out.ties, &TIES_HEADER)?);
    Ok(())
}
