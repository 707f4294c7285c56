//! Exact Kemeny aggregation of a sampled Mallows profile.

use seqrank::kemeny::{kemeny_rankings, kemeny_total_distance};
use seqrank::sampling::{sample_mallows, MallowsParams};

fn main() -> seqrank::Result<()> {
    let params = MallowsParams::identity(8, 0.7)?;
    let p = sample_mallows(&params, 25, 42);
    let res = kemeny_rankings(&p)?;
    println!("optimum total swap distance: {}", res.optimum);
    for r in &res.rankings {
        println!("{}  (distance {})", r, kemeny_total_distance(r, &p)?);
    }
    Ok(())
}
