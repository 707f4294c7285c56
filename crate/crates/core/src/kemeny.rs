//! Exact Kemeny aggregation by subset dynamic programming.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::{swap_distance, Candidate, Ranking, TieBreakOrder};

pub use crate::ranking::position_displacement;

/// Default candidate bound for the DP (2^m table entries).
pub const DEFAULT_KEMENY_BOUND: usize = 16;

/// `cost(c, d)`: number of voters preferring `d` to `c`, i.e. the price of
/// ranking `c` above `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisagreementMatrix {
    m: usize,
    cost: Vec<u64>,
}

impl DisagreementMatrix {
    pub fn from_profile(p: &Profile) -> Self {
        let m = p.num_candidates();
        let mut cost = vec![0u64; m * m];
        for (count, r) in p.groups() {
            let order = r.order();
            for (i, hi) in order.iter().enumerate() {
                for lo in &order[i + 1..] {
                    // voter puts hi above lo, so placing lo above hi costs
                    cost[lo.0 * m + hi.0] += count;
                }
            }
        }
        DisagreementMatrix { m, cost }
    }

    #[inline]
    pub fn get(&self, c: Candidate, d: Candidate) -> u64 {
        self.cost[c.0 * self.m + d.0]
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }
}

/// Σ over voters of the swap distance between `r` and the voter's ranking.
pub fn kemeny_total_distance(r: &Ranking, p: &Profile) -> Result<u64> {
    let mut total = 0;
    for (count, v) in p.groups() {
        total += count * swap_distance(r, v)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KemenyResult {
    pub optimum: u64,
    pub rankings: BTreeSet<Ranking>,
}

/// Completion table: `best[S]` is the cheapest way to order the candidates
/// outside `S` below the already-placed set `S`; `next[S]` holds every
/// candidate that starts some cheapest completion.
struct CompletionTable {
    m: usize,
    best: Vec<u64>,
    next: Vec<u32>,
}

impl CompletionTable {
    fn build(p: &Profile, bound: usize) -> Result<Self> {
        let m = p.num_candidates();
        if m > bound || m > 31 {
            return Err(Error::Resource(format!(
                "Kemeny DP over {} candidates exceeds the bound of {}",
                m,
                bound.min(31)
            )));
        }
        let dm = DisagreementMatrix::from_profile(p);
        let full = (1usize << m) - 1;
        let mut best = vec![u64::MAX; 1 << m];
        let mut next = vec![0u32; 1 << m];
        best[full] = 0;
        for placed in (0..full).rev() {
            let mut opt = u64::MAX;
            let mut arg = 0u32;
            for c in 0..m {
                if placed >> c & 1 == 1 {
                    continue;
                }
                // c goes directly below `placed`, above every other unplaced candidate
                let mut step = 0;
                for x in 0..m {
                    if x != c && placed >> x & 1 == 0 {
                        step += dm.cost[c * m + x];
                    }
                }
                let total = step + best[placed | 1 << c];
                if total < opt {
                    opt = total;
                    arg = 1 << c;
                } else if total == opt {
                    arg |= 1 << c;
                }
            }
            best[placed] = opt;
            next[placed] = arg;
        }
        Ok(CompletionTable { m, best, next })
    }

    fn optimum(&self) -> u64 {
        self.best[0]
    }

    fn collect(&self, placed: usize, prefix: &mut Vec<Candidate>, out: &mut BTreeSet<Ranking>, limit: Option<usize>) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        if prefix.len() == self.m {
            out.insert(Ranking::from_order_unchecked(prefix.clone()));
            return;
        }
        let choices = self.next[placed];
        for c in 0..self.m {
            if choices >> c & 1 == 1 {
                prefix.push(Candidate(c));
                self.collect(placed | 1 << c, prefix, out, limit);
                prefix.pop();
            }
        }
    }
}

/// All Kemeny rankings and the optimal total swap distance.
pub fn kemeny_rankings(p: &Profile) -> Result<KemenyResult> {
    kemeny_rankings_bounded(p, DEFAULT_KEMENY_BOUND)
}

pub fn kemeny_rankings_bounded(p: &Profile, bound: usize) -> Result<KemenyResult> {
    kemeny_rankings_limited(p, bound, None)
}

/// Like [`kemeny_rankings_bounded`] but stops after `limit` minimizers
/// (taken in lexicographic index order).
pub fn kemeny_rankings_limited(p: &Profile, bound: usize, limit: Option<usize>) -> Result<KemenyResult> {
    let table = CompletionTable::build(p, bound)?;
    let mut rankings = BTreeSet::new();
    table.collect(0, &mut Vec::new(), &mut rankings, limit);
    Ok(KemenyResult {
        optimum: table.optimum(),
        rankings,
    })
}

/// The Kemeny ranking that comes first when minimizers are compared
/// position by position using the tie order.
pub fn kemeny_tie_broken(p: &Profile, tie: &TieBreakOrder) -> Result<Ranking> {
    let table = CompletionTable::build(p, DEFAULT_KEMENY_BOUND)?;
    let mut placed = 0usize;
    let mut order = Vec::with_capacity(table.m);
    for _ in 0..table.m {
        let choices = table.next[placed];
        let c = tie
            .earliest((0..table.m).filter(|&c| choices >> c & 1 == 1).map(Candidate))
            .expect("some optimal continuation exists");
        order.push(c);
        placed |= 1 << c.0;
    }
    Ok(Ranking::from_order_unchecked(order))
}
