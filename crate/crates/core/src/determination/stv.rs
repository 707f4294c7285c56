//! STV determination with the zero-score shortcut.
//!
//! A candidate nobody ranks first has Plurality score 0 and keeps it, since
//! removing it never transfers a first place to anyone. So while positive
//! scores remain, the zero-score candidates are exactly the losers and are
//! eliminated first, in any order. Only the at most `n` candidates with a
//! first place are left for the subset DP.

use super::dp::{complete_run, subset_dp_decide};
use super::{Answer, DeterminationQuery, Mode};
use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::{Candidate, Ranking};
use crate::rules::RuleId;
use crate::scoring::{ScoreTable, ScoringSystem};

pub fn stv_decide(p: &Profile, q: &DeterminationQuery, bound: usize) -> Result<Answer> {
    let m = p.num_candidates();
    q.validate(m)?;
    if q.rule != RuleId::stv() {
        return Err(Error::Domain(format!("the STV procedure does not apply to {}", q.rule)));
    }
    let mut firsts = vec![0u64; m];
    for (count, r) in p.groups() {
        firsts[r.candidate_at(1).0] += count;
    }
    let zero: Vec<Candidate> = p.candidates().filter(|c| firsts[c.0] == 0).collect();
    let live: Vec<Candidate> = p.candidates().filter(|c| firsts[c.0] > 0).collect();
    if zero.is_empty() {
        return subset_dp_decide(p, q, bound);
    }
    let top = live.len();
    let map_back = |r: &Ranking| -> Vec<Candidate> { r.order().iter().map(|c| live[c.0]).collect() };

    if firsts[q.d.0] == 0 {
        // d can take any place in the bottom block top+1..=m
        let pos = match q.mode {
            Mode::Exact if q.k > top => q.k,
            Mode::TopK if q.k > top => top + 1,
            _ => return Ok(Answer::no()),
        };
        let head = if live.is_empty() {
            Vec::new()
        } else {
            let (rp, _) = p.restrict(&live)?;
            let table = ScoreTable::new(&ScoringSystem::Plurality, top)?;
            map_back(&complete_run(&rp, &table, false, Vec::new()))
        };
        let mut order = head;
        let mut rest = zero.iter().copied().filter(|&c| c != q.d);
        while order.len() < m {
            if order.len() + 1 == pos {
                order.push(q.d);
            } else {
                order.push(rest.next().expect("enough zero-score candidates"));
            }
        }
        return Ok(Answer::yes(Ranking::from_order_unchecked(order)));
    }

    let k = match q.mode {
        Mode::Exact if q.k > top => return Ok(Answer::no()),
        Mode::Exact => q.k,
        Mode::TopK => q.k.min(top),
    };
    let (rp, map) = p.restrict(&live)?;
    let d = Candidate(map[q.d.0].expect("d has a first place"));
    let sub = DeterminationQuery::new(q.rule.clone(), d, k, q.mode);
    let ans = subset_dp_decide(&rp, &sub, bound)?;
    Ok(match ans.witness {
        Some(w) => {
            let mut order = map_back(&w);
            order.extend(zero.iter().copied());
            Answer::yes(Ranking::from_order_unchecked(order))
        }
        None => Answer::no(),
    })
}
