//! Subset dynamic programming over elimination sets.
//!
//! For a winner rule the state after `r` rounds is the set of the `r`
//! candidates placed at the top; for a loser rule it is the set of the `r`
//! candidates placed at the bottom. Either way the set alone determines the
//! remaining profile, so reachable sets can be explored layer by layer.
//! Only reachable sets are stored, and sets containing `d` are never
//! expanded, which keeps instances with heavy structure (most candidates
//! forced) tractable well beyond the range of a dense `2^m` table.

use std::collections::HashSet;

use super::{full_mask, Answer, DeterminationQuery, Mode};
use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::{Candidate, Ranking};
use crate::rules::{extreme_in_mask, RuleId};
use crate::scoring::ScoreTable;

/// Default candidate bound for the subset DP.
pub const DEFAULT_DP_BOUND: usize = 22;

/// Round (1-based) in which `d` must be removed to end at `position`.
pub(crate) fn round_for_position(winner: bool, m: usize, position: usize) -> usize {
    if winner {
        position
    } else {
        m - position + 1
    }
}

/// Searches the removal process for a run that removes `d` in one of the
/// rounds flagged in `target` (indexed by round, 1-based). Returns the
/// removal sequence ending with `d`.
///
/// Depth-first over elimination sets with a table of sets already known to
/// be dead ends, so each reachable set is expanded at most once; a feasible
/// run is returned as soon as one is found.
pub(crate) fn removal_search(
    p: &Profile,
    table: &ScoreTable,
    winner: bool,
    d: Candidate,
    target: &[bool],
) -> Option<Vec<Candidate>> {
    let m = p.num_candidates();
    let last = (1..=m).rev().find(|&r| target[r])?;
    let mut search = Search {
        p,
        table,
        winner,
        d,
        target,
        last,
        full: full_mask(m),
        dead: HashSet::new(),
        path: Vec::with_capacity(last),
    };
    if search.explore(0) {
        Some(search.path)
    } else {
        None
    }
}

struct Search<'a> {
    p: &'a Profile,
    table: &'a ScoreTable,
    winner: bool,
    d: Candidate,
    target: &'a [bool],
    last: usize,
    full: u64,
    dead: HashSet<u64>,
    path: Vec<Candidate>,
}

impl Search<'_> {
    /// `removed` holds the candidates of `self.path`; on success `path`
    /// ends with `d`.
    fn explore(&mut self, removed: u64) -> bool {
        let round = removed.count_ones() as usize + 1;
        let extremes = extreme_in_mask(self.p, self.table, self.full & !removed, self.winner);
        if self.target[round] && extremes.contains(&self.d) {
            self.path.push(self.d);
            return true;
        }
        if round < self.last {
            for c in extremes {
                let child = removed | 1 << c.0;
                if c == self.d || self.dead.contains(&child) {
                    continue;
                }
                self.path.push(c);
                if self.explore(child) {
                    return true;
                }
                self.path.pop();
                self.dead.insert(child);
            }
        }
        false
    }
}

/// Extends a removal prefix to a full run (taking the lowest-index extreme
/// candidate in each later round) and returns the selected ranking.
pub(crate) fn complete_run(p: &Profile, table: &ScoreTable, winner: bool, prefix: Vec<Candidate>) -> Ranking {
    let m = p.num_candidates();
    let mut removed = prefix.iter().fold(0u64, |acc, c| acc | 1 << c.0);
    let mut seq = prefix;
    while seq.len() < m {
        let c = extreme_in_mask(p, table, full_mask(m) & !removed, winner)[0];
        removed |= 1 << c.0;
        seq.push(c);
    }
    if !winner {
        seq.reverse();
    }
    Ranking::from_order_unchecked(seq)
}

pub(crate) fn target_rounds(q: &DeterminationQuery, m: usize) -> Vec<bool> {
    let winner = q.is_winner_rule();
    let mut target = vec![false; m + 1];
    for pos in 1..=m {
        if q.accepts(pos) {
            target[round_for_position(winner, m, pos)] = true;
        }
    }
    target
}

/// Position-k / Top-k determination by subset DP. Loser rules use the dual
/// table over bottom positions directly.
pub fn subset_dp_decide(p: &Profile, q: &DeterminationQuery, bound: usize) -> Result<Answer> {
    let m = p.num_candidates();
    q.validate(m)?;
    if m > bound.min(63) {
        return Err(Error::Resource(format!(
            "subset DP over {} candidates exceeds the bound of {}",
            m,
            bound.min(63)
        )));
    }
    let winner = q.is_winner_rule();
    let table = ScoreTable::new(q.system(), m)?;
    let target = target_rounds(q, m);
    Ok(match removal_search(p, &table, winner, q.d, &target) {
        Some(prefix) => Answer::yes(complete_run(p, &table, winner, prefix)),
        None => Answer::no(),
    })
}

/// Maps a Position-k query to the equivalent one on the reversed profile:
/// Seq-s-Winner at position `k` becomes Seq-s*-Loser at position `m−k+1`,
/// and vice versa. Applying it twice gives back the original query.
pub fn transfer_query(p: &Profile, q: &DeterminationQuery) -> Result<(Profile, DeterminationQuery)> {
    let m = p.num_candidates();
    q.validate(m)?;
    if q.mode != Mode::Exact {
        return Err(Error::Domain(
            "only exact-position queries transfer; Top-k becomes a bottom-k question".into(),
        ));
    }
    let rule: RuleId = q.rule.dual().expect("sequential rules have duals");
    Ok((
        p.reversed(),
        DeterminationQuery::new(rule, q.d, m - q.k + 1, Mode::Exact),
    ))
}

/// Answers `q` by transferring it, solving the dual, and mapping the
/// witness back.
pub fn decide_by_transfer(p: &Profile, q: &DeterminationQuery, bound: usize) -> Result<Answer> {
    let (rp, rq) = transfer_query(p, q)?;
    let ans = subset_dp_decide(&rp, &rq, bound)?;
    Ok(Answer {
        holds: ans.holds,
        witness: ans.witness.map(|w| w.reversed()),
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::p0;
    use super::*;
    use crate::rules::enumerate_selected;
    use crate::scoring::ScoringSystem;

    fn dp(p: &Profile, q: &DeterminationQuery) -> Answer {
        subset_dp_decide(p, q, DEFAULT_DP_BOUND).unwrap()
    }

    #[test]
    fn example_queries() {
        let p = p0();
        assert!(dp(&p, &DeterminationQuery::exact(RuleId::stv(), 0, 2)).holds);
        assert!(!dp(&p, &DeterminationQuery::exact(RuleId::stv(), 0, 1)).holds);
        let pw = RuleId::SeqWinner(ScoringSystem::Plurality);
        assert!(dp(&p, &DeterminationQuery::exact(pw.clone(), 0, 1)).holds);
        assert!(dp(&p, &DeterminationQuery::exact(pw, 2, 3)).holds);
    }

    #[test]
    fn witnesses_are_selected_and_place_d() {
        let p = p0();
        for rule in RuleId::sequential_built_ins() {
            let selected = enumerate_selected(&rule, &p).unwrap();
            for d in 0..3 {
                for k in 1..=3 {
                    let q = DeterminationQuery::exact(rule.clone(), d, k);
                    let ans = dp(&p, &q);
                    let expect = selected.iter().any(|r| r.position(Candidate(d)) == k);
                    assert_eq!(ans.holds, expect);
                    if let Some(w) = ans.witness {
                        assert!(selected.contains(&w));
                        assert_eq!(w.position(Candidate(d)), k);
                    }
                }
            }
        }
    }

    #[test]
    fn transfer_is_an_involution_and_preserves_answers() {
        let p = p0();
        let q = DeterminationQuery::exact(RuleId::SeqWinner(ScoringSystem::Veto), 1, 2);
        let (rp, rq) = transfer_query(&p, &q).unwrap();
        assert_eq!(rq.rule, RuleId::stv());
        assert_eq!(rq.k, 2);
        let (pp, qq) = transfer_query(&rp, &rq).unwrap();
        assert_eq!(pp, p);
        assert_eq!(qq, q);
        for rule in RuleId::sequential_built_ins() {
            for d in 0..3 {
                for k in 1..=3 {
                    let q = DeterminationQuery::exact(rule.clone(), d, k);
                    assert_eq!(dp(&p, &q).holds, decide_by_transfer(&p, &q, 22).unwrap().holds);
                }
            }
        }
    }

    #[test]
    fn over_bound_is_a_resource_error() {
        let q = DeterminationQuery::exact(RuleId::stv(), 0, 1);
        assert!(matches!(subset_dp_decide(&p0(), &q, 2), Err(Error::Resource(_))));
    }

    #[test]
    fn single_candidate() {
        let p = Profile::from_groups(1, &[(2, &[0])]).unwrap();
        assert!(dp(&p, &DeterminationQuery::exact(RuleId::baldwin(), 0, 1)).holds);
    }
}
