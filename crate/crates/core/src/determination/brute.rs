//! Exhaustive oracle: follows every tie resolution in every round.
//!
//! Deliberately shares no scoring code with the rule implementations: the
//! restricted profile is materialised explicitly and scored with exact
//! rationals.

use std::collections::HashMap;

use num_rational::Rational64;

use super::dp::{complete_run, removal_search, target_rounds};
use super::{full_mask, Answer, DeterminationQuery};
use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::Candidate;
use crate::rules::RuleId;
use crate::scoring::{ScoreTable, ScoringSystem};

pub const BRUTE_FORCE_BOUND: usize = 10;

struct Oracle<'a> {
    p: &'a Profile,
    s: &'a ScoringSystem,
    winner: bool,
    d: Candidate,
    memo: HashMap<u64, u64>,
}

impl Oracle<'_> {
    fn extremes(&self, remaining: u64) -> Result<Vec<Candidate>> {
        let alive: Vec<Candidate> = self.p.candidates().filter(|c| remaining >> c.0 & 1 == 1).collect();
        let v = self.s.vector(alive.len())?;
        let mut score: HashMap<Candidate, Rational64> = alive.iter().map(|&c| (c, Rational64::from_integer(0))).collect();
        for (count, r) in self.p.groups() {
            let restricted: Vec<Candidate> = r.order().iter().copied().filter(|c| remaining >> c.0 & 1 == 1).collect();
            for (i, c) in restricted.iter().enumerate() {
                *score.get_mut(c).unwrap() += v[i] * Rational64::from_integer(*count as i64);
            }
        }
        let best = if self.winner {
            score.values().max().copied()
        } else {
            score.values().min().copied()
        };
        Ok(alive.into_iter().filter(|c| Some(score[c]) == best).collect())
    }

    /// Bit `k` set iff `d` can end at position `k`, starting from `remaining`.
    fn positions(&mut self, remaining: u64) -> Result<u64> {
        if let Some(&hit) = self.memo.get(&remaining) {
            return Ok(hit);
        }
        let m = self.p.num_candidates();
        let left = remaining.count_ones() as usize;
        let pos = if self.winner { m - left + 1 } else { left };
        let mut out = 0u64;
        for c in self.extremes(remaining)? {
            if c == self.d {
                out |= 1 << pos;
            } else {
                out |= self.positions(remaining & !(1 << c.0))?;
            }
        }
        self.memo.insert(remaining, out);
        Ok(out)
    }
}

pub(crate) fn position_mask(p: &Profile, rule: &RuleId, d: Candidate) -> Result<u64> {
    let m = p.num_candidates();
    if m > BRUTE_FORCE_BOUND {
        return Err(Error::Resource(format!(
            "brute force over {} candidates exceeds the bound of {}",
            m, BRUTE_FORCE_BOUND
        )));
    }
    let (s, winner) = match rule {
        RuleId::SeqWinner(s) => (s, true),
        RuleId::SeqLoser(s) => (s, false),
        other => return Err(Error::Domain(format!("{} is not a sequential rule", other))),
    };
    let mut oracle = Oracle {
        p,
        s,
        winner,
        d,
        memo: HashMap::new(),
    };
    oracle.positions(full_mask(m))
}

/// Answers `q` exhaustively (m ≤ 10). The witness, when present, is
/// reconstructed by a separate search and is only a convenience.
pub fn brute_force_decide(p: &Profile, q: &DeterminationQuery) -> Result<Answer> {
    let m = p.num_candidates();
    q.validate(m)?;
    let mask = position_mask(p, &q.rule, q.d)?;
    if !(1..=m).any(|k| mask >> k & 1 == 1 && q.accepts(k)) {
        return Ok(Answer::no());
    }
    let winner = q.is_winner_rule();
    let table = ScoreTable::new(q.system(), m)?;
    let prefix = removal_search(p, &table, winner, q.d, &target_rounds(q, m))
        .expect("oracle and search agree on feasibility");
    Ok(Answer::yes(complete_run(p, &table, winner, prefix)))
}
