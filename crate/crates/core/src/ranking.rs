//! Candidates, rankings, and distances between rankings.

use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};

/// Dense 0-based candidate index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Candidate(pub usize);

impl Candidate {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A strict linear order over `0..m`, most-preferred first.
///
/// Positions in the public API are 1-based (`position(c) == 1` means `c` is
/// ranked first) to match how the determination problems are phrased.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking {
    order: Vec<Candidate>,
}

impl Ranking {
    /// Builds a ranking, checking that `order` is a permutation of `0..len`.
    pub fn new(order: Vec<Candidate>) -> Result<Self> {
        let m = order.len();
        let mut seen = vec![false; m];
        for c in &order {
            if c.0 >= m {
                return Err(Error::Domain(format!(
                    "candidate {} out of range for {} candidates",
                    c.0, m
                )));
            }
            if std::mem::replace(&mut seen[c.0], true) {
                return Err(Error::Domain(format!("candidate {} appears twice", c.0)));
            }
        }
        Ok(Ranking { order })
    }

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        Ranking::new(indices.iter().copied().map(Candidate).collect())
    }

    /// Caller guarantees `order` is a permutation of `0..order.len()`.
    pub(crate) fn from_order_unchecked(order: Vec<Candidate>) -> Self {
        debug_assert!(Ranking::new(order.clone()).is_ok());
        Ranking { order }
    }

    /// The identity ranking `0 ≻ 1 ≻ … ≻ m−1`.
    pub fn identity(m: usize) -> Self {
        Ranking {
            order: (0..m).map(Candidate).collect(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.order.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    #[inline]
    pub fn order(&self) -> &[Candidate] {
        &self.order
    }

    pub fn indices(&self) -> Vec<usize> {
        self.order.iter().map(|c| c.0).collect()
    }

    /// Candidate at 1-based position `r`.
    pub fn candidate_at(&self, r: usize) -> Candidate {
        self.order[r - 1]
    }

    /// 1-based position of `c`.
    pub fn position(&self, c: Candidate) -> usize {
        self.order
            .iter()
            .position(|&x| x == c)
            .map(|i| i + 1)
            .expect("candidate not in ranking")
    }

    /// `inv[c] = 0-based index of c`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.order.len()];
        for (i, c) in self.order.iter().enumerate() {
            inv[c.0] = i;
        }
        inv
    }

    pub fn prefers(&self, a: Candidate, b: Candidate) -> bool {
        for &c in &self.order {
            if c == a {
                return true;
            }
            if c == b {
                return false;
            }
        }
        false
    }

    pub fn reversed(&self) -> Ranking {
        let mut order = self.order.clone();
        order.reverse();
        Ranking { order }
    }

    /// Relabels candidates: `c` becomes `map[c]`. `map` must be a bijection.
    pub fn relabel(&self, map: &[usize]) -> Ranking {
        Ranking::from_order_unchecked(self.order.iter().map(|c| Candidate(map[c.0])).collect())
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.order {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}", c.0)?;
        }
        Ok(())
    }
}

/// Priority list used to resolve ties; earlier is preferred.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TieBreakOrder {
    ranking: Ranking,
    rank: Vec<usize>,
}

impl TieBreakOrder {
    pub fn new(ranking: Ranking) -> Self {
        let rank = ranking.inverse();
        TieBreakOrder { ranking, rank }
    }

    pub fn identity(m: usize) -> Self {
        TieBreakOrder::new(Ranking::identity(m))
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    /// 0-based priority of `c` (0 = most preferred in ties).
    #[inline]
    pub fn priority(&self, c: Candidate) -> usize {
        self.rank[c.0]
    }

    pub fn earliest(&self, tied: impl IntoIterator<Item = Candidate>) -> Option<Candidate> {
        tied.into_iter().min_by_key(|&c| self.rank[c.0])
    }

    pub fn latest(&self, tied: impl IntoIterator<Item = Candidate>) -> Option<Candidate> {
        tied.into_iter().max_by_key(|&c| self.rank[c.0])
    }

    pub fn reversed(&self) -> TieBreakOrder {
        TieBreakOrder::new(self.ranking.reversed())
    }
}

fn check_same_length(r1: &Ranking, r2: &Ranking) -> Result<()> {
    if r1.len() != r2.len() {
        return Err(Error::Dimension(format!(
            "rankings over {} and {} candidates",
            r1.len(),
            r2.len()
        )));
    }
    Ok(())
}

/// Number of candidate pairs the two rankings order oppositely.
pub fn swap_distance(r1: &Ranking, r2: &Ranking) -> Result<u64> {
    check_same_length(r1, r2)?;
    let pos2 = r2.inverse();
    let seq: Vec<usize> = r1.order.iter().map(|c| pos2[c.0]).collect();
    Ok(count_inversions(&seq))
}

fn count_inversions(seq: &[usize]) -> u64 {
    let mut inv = 0u64;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// Swap distance divided by its maximum `m(m−1)/2`.
pub fn normalized_swap_distance(r1: &Ranking, r2: &Ranking) -> Result<Rational64> {
    let d = swap_distance(r1, r2)?;
    let m = r1.len() as i64;
    if m < 2 {
        return Err(Error::Domain(
            "normalized swap distance needs at least 2 candidates".into(),
        ));
    }
    Ok(Rational64::new(d as i64, m * (m - 1) / 2))
}

/// Floating-point form of [`normalized_swap_distance`] for statistics.
pub fn normalized_swap_distance_f64(r1: &Ranking, r2: &Ranking) -> Result<f64> {
    let q = normalized_swap_distance(r1, r2)?;
    Ok(*q.numer() as f64 / *q.denom() as f64)
}

/// How far the candidates at 1-based position `i` of each ranking sit in
/// the other ranking, averaged over the two directions.
pub fn position_displacement(r1: &Ranking, r2: &Ranking, i: usize) -> Result<Rational64> {
    check_same_length(r1, r2)?;
    let m = r1.len();
    if i == 0 || i > m {
        return Err(Error::Domain(format!("position {} outside 1..={}", i, m)));
    }
    let a = (i as i64 - r1.position(r2.candidate_at(i)) as i64).abs();
    let b = (i as i64 - r2.position(r1.candidate_at(i)) as i64).abs();
    Ok(Rational64::new(a + b, 2))
}
