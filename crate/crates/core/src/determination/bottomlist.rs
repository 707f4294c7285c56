//! Coombs determination for few voters via bottom lists.
//!
//! Under Veto only each voter's current last choice matters. The tuple of
//! last choices `x` (one per voter) determines everything eliminated so
//! far: `D(x)`, the candidates some voter `i` ranks below `x_i`. So the
//! process can be run over bottom lists instead of candidate subsets,
//! giving at most `m^n` states per round.

use std::collections::HashMap;

use super::dp::{complete_run, target_rounds};
use super::{Answer, DeterminationQuery};
use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::{Candidate, Ranking};
use crate::rules::RuleId;
use crate::scoring::{ScoreTable, ScoringSystem};

/// Default voter bound (after expanding counts).
pub const DEFAULT_BOTTOMLIST_VOTER_BOUND: u64 = 4;

type BottomList = Vec<u16>;

struct Electorate {
    m: usize,
    /// `orders[i]`: voter `i`'s ranking, top first.
    orders: Vec<Vec<Candidate>>,
    /// `rank[i][c]`: 0-based position of `c` in voter `i`'s ranking.
    rank: Vec<Vec<usize>>,
}

impl Electorate {
    fn new(p: &Profile) -> Self {
        let orders: Vec<Vec<Candidate>> = p.voters().map(|r| r.order().to_vec()).collect();
        let rank = p.voters().map(|r| r.inverse()).collect();
        Electorate {
            m: p.num_candidates(),
            orders,
            rank,
        }
    }

    fn initial(&self) -> BottomList {
        self.orders.iter().map(|o| o[self.m - 1].0 as u16).collect()
    }

    /// `D(x)`: candidates some voter ranks strictly below its entry in `x`.
    fn eliminated(&self, x: &BottomList) -> u64 {
        let mut mask = 0u64;
        for (i, &b) in x.iter().enumerate() {
            for c in &self.orders[i][self.rank[i][b as usize] + 1..] {
                mask |= 1 << c.0;
            }
        }
        mask
    }

    /// `x` is the bottom list of the profile restricted to `C ∖ D(x)`.
    fn is_valid(&self, x: &BottomList) -> bool {
        let gone = self.eliminated(x);
        x.iter().all(|&b| gone >> b & 1 == 0)
    }

    /// Candidates with the largest number of last places.
    fn veto_losers(&self, x: &BottomList) -> Vec<Candidate> {
        let mut count = vec![0usize; self.m];
        for &b in x {
            count[b as usize] += 1;
        }
        let top = *count.iter().max().expect("m ≥ 1");
        (0..self.m).filter(|&c| count[c] == top).map(Candidate).collect()
    }

    fn eliminate(&self, x: &BottomList, c: Candidate) -> BottomList {
        let gone = self.eliminated(x) | 1 << c.0;
        x.iter()
            .enumerate()
            .map(|(i, &b)| {
                if b as usize != c.0 {
                    return b;
                }
                self.orders[i][..self.rank[i][c.0]]
                    .iter()
                    .rev()
                    .find(|a| gone >> a.0 & 1 == 0)
                    .map_or(b, |a| a.0 as u16)
            })
            .collect()
    }
}

pub fn coombs_bottomlist_decide(p: &Profile, q: &DeterminationQuery, voter_bound: u64) -> Result<Answer> {
    let m = p.num_candidates();
    q.validate(m)?;
    if q.rule != RuleId::coombs() {
        return Err(Error::Domain(format!("the bottom-list procedure does not apply to {}", q.rule)));
    }
    let n = p.num_voters();
    if n > voter_bound {
        return Err(Error::Resource(format!(
            "bottom-list DP over {} voters exceeds the bound of {}",
            n, voter_bound
        )));
    }
    if m > 63 {
        return Err(Error::Resource(format!("bottom-list DP supports at most 63 candidates, got {}", m)));
    }
    let table = ScoreTable::new(&ScoringSystem::Veto, m)?;
    let target = target_rounds(q, m);
    if n == 0 {
        // every candidate is always tied: any order is selected
        let pos = (1..=m).find(|&k| q.accepts(k)).expect("validated");
        let mut order: Vec<Candidate> = p.candidates().filter(|&c| c != q.d).collect();
        order.insert(pos - 1, q.d);
        return Ok(Answer::yes(Ranking::from_order_unchecked(order)));
    }
    let Some(last) = (1..=m).rev().find(|&r| target[r]) else {
        return Ok(Answer::no());
    };

    let el = Electorate::new(p);
    let start = el.initial();
    let mut parent: HashMap<BottomList, (BottomList, Candidate)> = HashMap::new();
    let mut layer = vec![start];
    for (round, &wanted) in target.iter().enumerate().take(last + 1).skip(1) {
        let mut next: Vec<BottomList> = Vec::new();
        for x in &layer {
            let losers = el.veto_losers(x);
            if wanted && losers.contains(&q.d) {
                let mut seq = vec![q.d];
                let mut cur = x.clone();
                while let Some((up, c)) = parent.get(&cur) {
                    seq.push(*c);
                    cur = up.clone();
                }
                seq.reverse();
                return Ok(Answer::yes(complete_run(p, &table, false, seq)));
            }
            if round == last {
                continue;
            }
            for c in losers {
                if c == q.d {
                    continue;
                }
                let y = el.eliminate(x, c);
                debug_assert!(el.is_valid(&y));
                if !parent.contains_key(&y) {
                    parent.insert(y.clone(), (x.clone(), c));
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok(Answer::no())
}

#[cfg(test)]
mod tests {
    use super::super::tests::p0;
    use super::super::brute_force_decide;
    use super::*;
    use crate::rules::enumerate_selected;

    #[test]
    fn single_voter_order_is_forced() {
        let p = Profile::from_groups(4, &[(1, &[2, 0, 3, 1])]).unwrap();
        for d in 0..4 {
            for k in 1..=4 {
                let q = DeterminationQuery::exact(RuleId::coombs(), d, k);
                let ans = coombs_bottomlist_decide(&p, &q, 4).unwrap();
                let pos = [2, 4, 1, 3][d];
                assert_eq!(ans.holds, k == pos);
            }
        }
    }

    #[test]
    fn large_electorate_is_rejected() {
        let q = DeterminationQuery::exact(RuleId::coombs(), 0, 1);
        assert!(matches!(
            coombs_bottomlist_decide(&p0(), &q, DEFAULT_BOTTOMLIST_VOTER_BOUND),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn matches_oracle_on_small_electorate() {
        let p = Profile::from_groups(
            5,
            &[(1, &[0, 1, 2, 3, 4]), (1, &[4, 2, 3, 1, 0]), (1, &[1, 3, 0, 4, 2])],
        )
        .unwrap();
        let selected = enumerate_selected(&RuleId::coombs(), &p).unwrap();
        for d in 0..5 {
            for k in 1..=5 {
                let q = DeterminationQuery::exact(RuleId::coombs(), d, k);
                let ans = coombs_bottomlist_decide(&p, &q, 4).unwrap();
                assert_eq!(ans.holds, brute_force_decide(&p, &q).unwrap().holds);
                if let Some(w) = ans.witness {
                    assert!(selected.contains(&w));
                    assert_eq!(w.position(Candidate(d)), k);
                }
            }
        }
    }

    #[test]
    fn bottom_lists_determine_eliminated_sets() {
        let p = Profile::from_groups(4, &[(1, &[0, 1, 2, 3]), (1, &[3, 2, 1, 0])]).unwrap();
        let el = Electorate::new(&p);
        let x = el.initial();
        assert_eq!(x, vec![3, 0]);
        assert_eq!(el.eliminated(&x), 0);
        let y = el.eliminate(&x, Candidate(3));
        assert_eq!(y, vec![2, 0]);
        assert_eq!(el.eliminated(&y), 1 << 3);
        assert!(el.is_valid(&y));
        assert!(!el.is_valid(&vec![2, 3]));
    }
}
