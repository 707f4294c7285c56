//! Turns small combinatorial instances into determination questions and
//! checks that the answers agree with brute force.

use seqrank::determination::{decide, Algorithm, Limits};
use seqrank::reductions::{
    clique_brute, coombs_from_regular_clique, hitting_brute, seqwi_veto_topk_from_hitting_set, stv_from_cubic_vc,
    vc_brute, GraphInstance, HittingSetInstance,
};

fn main() -> seqrank::Result<()> {
    let k4 = GraphInstance::complete(4);
    for t in 2..=4 {
        let red = stv_from_cubic_vc(&k4, t)?;
        let ans = decide(&red.profile, &red.query, Algorithm::Auto, &Limits::default())?;
        println!(
            "K4 vertex cover ≤ {}: {} (STV instance: {} candidates, {} voters; answer {})",
            t,
            vc_brute(&k4, t)?,
            red.profile.num_candidates(),
            red.profile.num_voters(),
            ans.holds
        );
    }
    let c5 = GraphInstance::cycle(5);
    for k in 3..=4 {
        let red = coombs_from_regular_clique(&c5, k)?;
        let ans = decide(&red.profile, &red.query, Algorithm::Auto, &Limits::default())?;
        println!("C5 clique of size {}: {} (Coombs answer {})", k, clique_brute(&c5, k)?, ans.holds);
    }
    let hs = HittingSetInstance::from_slices(4, &[&[0, 1], &[1, 2], &[3]], 2)?;
    let red = seqwi_veto_topk_from_hitting_set(&hs)?;
    let ans = decide(&red.profile, &red.query, Algorithm::Auto, &Limits::default())?;
    println!("hitting set of size 2: {} (SeqWinner-Veto top-k answer {})", hitting_brute(&hs)?, ans.holds);
    Ok(())
}
