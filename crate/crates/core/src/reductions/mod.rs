//! Hardness-reduction generators used as verified fixtures, with oracles for
//! the source problems and a replay check for claimed elimination orders.

mod generators;
mod instances;

pub use generators::{
    baldwin8_cover_order, baldwin8_from_cubic_vc, baldwin_bilevel_parts, coombs_from_regular_clique,
    seqwi_veto_topk_from_hitting_set, stv_from_cubic_vc, stv_from_sat, BaldwinLayout, Reduction,
};
pub use instances::{
    clique_brute, hitting_brute, min_vertex_cover, parse_dimacs_cnf, parse_graph_instance, parse_hitting_set,
    sat_brute, vc_brute, GraphInstance, HittingSetInstance, SatFormula, ORACLE_BOUND,
};

use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::Candidate;
use crate::rules::{extreme_in_mask, RuleId};
use crate::scoring::ScoreTable;

/// Checks that `order` (the candidates in the order the rule fixes them:
/// top-down for winner rules, elimination order for loser rules) is a valid
/// execution: each candidate is an s-winner, respectively s-loser, of the
/// profile restricted to the candidates not yet removed.
pub fn witness_replay(p: &Profile, order: &[Candidate], rule: &RuleId) -> Result<bool> {
    let m = p.num_candidates();
    let (s, winner) = match rule {
        RuleId::SeqWinner(s) => (s, true),
        RuleId::SeqLoser(s) => (s, false),
        other => return Err(Error::Domain(format!("{} has no elimination rounds", other))),
    };
    if m > 63 {
        return Err(Error::Resource(format!("replay supports at most 63 candidates, got {}", m)));
    }
    let mut seen = vec![false; m];
    if order.len() != m || order.iter().any(|c| c.0 >= m || std::mem::replace(&mut seen[c.0], true)) {
        return Err(Error::Domain("the order is not a permutation of the candidates".into()));
    }
    let table = ScoreTable::new(s, m)?;
    let mut remaining = if m == 0 { 0 } else { u64::MAX >> (64 - m) };
    for &c in order {
        if !extreme_in_mask(p, &table, remaining, winner).contains(&c) {
            return Ok(false);
        }
        remaining &= !(1 << c.0);
    }
    Ok(true)
}
