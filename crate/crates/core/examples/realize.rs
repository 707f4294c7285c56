//! Builds profiles with a prescribed weighted majority graph, both by the
//! McGarvey construction and from a bilevel partition.

use seqrank::majority::{bilevel_realize, mcgarvey_realize, weighted_majority_graph, BilevelGraph, WeightedMajorityGraph};
use seqrank::profile::serialize_profile;

fn main() -> seqrank::Result<()> {
    // a 3-cycle with weights 2, 4 and 6
    let g = WeightedMajorityGraph::from_arcs(3, &[(0, 1, 2), (1, 2, 4), (2, 0, 6)])?;
    let p = mcgarvey_realize(&g)?;
    println!("McGarvey profile with {} voters:\n{}", p.num_voters(), serialize_profile(&p));
    assert_eq!(weighted_majority_graph(&p), g);

    // {0,1} beats {2,3} by 2 everywhere
    let b = BilevelGraph::from_indices(4, &[(&[0, 1], &[2, 3])])?;
    let q = bilevel_realize(&b);
    println!("bilevel profile:\n{}", serialize_profile(&q));
    assert_eq!(weighted_majority_graph(&q), b.graph());
    Ok(())
}
