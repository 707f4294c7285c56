//! Which positions can each candidate reach under STV, Coombs and Baldwin?
//! Answers come from the decision procedures, with the witnessing
//! elimination order.

use seqrank::determination::{decide, elimination_order, Algorithm, DeterminationQuery, Limits};
use seqrank::sampling::sample_impartial_culture;
use seqrank::RuleId;

fn main() -> seqrank::Result<()> {
    let p = sample_impartial_culture(6, 4, 7);
    print!("{}", seqrank::profile::serialize_profile(&p));
    for rule in [RuleId::stv(), RuleId::coombs(), RuleId::baldwin()] {
        println!("{}", rule);
        for d in 0..p.num_candidates() {
            let mut reachable = Vec::new();
            for k in 1..=p.num_candidates() {
                let q = DeterminationQuery::exact(rule.clone(), d, k);
                let ans = decide(&p, &q, Algorithm::Auto, &Limits::default())?;
                if let Some(w) = ans.witness {
                    let order: Vec<String> = elimination_order(&rule, &w).iter().map(|c| c.to_string()).collect();
                    reachable.push(format!("{} via [{}]", k, order.join(" ")));
                }
            }
            println!("  candidate {}: {}", d, reachable.join(", "));
        }
    }
    Ok(())
}
