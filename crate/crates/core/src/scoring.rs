//! Scoring systems and positional scores.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::Candidate;

/// A family of scoring vectors, one per candidate count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ScoringSystem {
    /// `(1, 0, …, 0)`
    Plurality,
    /// `(0, …, 0, −1)`
    Veto,
    /// `(m, m−1, …, 1)`
    Borda,
    /// One point for each of the first `⌊m/2⌋` positions.
    Half,
    /// Explicit vectors for the candidate counts they are defined at.
    Custom(CustomVectors),
    /// `s*`: each vector of the inner system reversed and negated.
    Reversed(Box<ScoringSystem>),
}

/// Explicit scoring vectors keyed by length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CustomVectors {
    vectors: BTreeMap<usize, Vec<Rational64>>,
}

impl CustomVectors {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: Vec<Rational64>) {
        self.vectors.insert(v.len(), v);
    }

    pub fn get(&self, m: usize) -> Option<&Vec<Rational64>> {
        self.vectors.get(&m)
    }

    /// Parses lines of the form `m: v_1 … v_m`, where entries are integers or
    /// `p/q` fractions. `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = CustomVectors::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = i + 1;
            let (len, body) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(lineno, "expected \"m: v_1 … v_m\""))?;
            let len: usize = len
                .trim()
                .parse()
                .map_err(|_| Error::parse(lineno, "bad vector length"))?;
            let v = body
                .split_whitespace()
                .map(|t| parse_rational(t).ok_or_else(|| Error::parse(lineno, format!("bad entry {:?}", t))))
                .collect::<Result<Vec<_>>>()?;
            if v.len() != len {
                return Err(Error::parse(
                    lineno,
                    format!("vector declared with {} entries has {}", len, v.len()),
                ));
            }
            out.insert(v);
        }
        Ok(out)
    }
}

fn parse_rational(t: &str) -> Option<Rational64> {
    match t.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Rational64::new(p.parse().ok()?, q))
        }
        None => Some(Rational64::from_integer(t.parse().ok()?)),
    }
}

impl ScoringSystem {
    /// The length-`m` scoring vector.
    pub fn vector(&self, m: usize) -> Result<Vec<Rational64>> {
        if m == 0 {
            return Err(Error::Domain("scoring vectors need m >= 1".into()));
        }
        let int = |v: Vec<i64>| v.into_iter().map(Rational64::from_integer).collect();
        Ok(match self {
            ScoringSystem::Plurality => int((0..m).map(|i| i64::from(i == 0)).collect()),
            ScoringSystem::Veto => int((0..m).map(|i| -i64::from(i == m - 1)).collect()),
            ScoringSystem::Borda => int((0..m).map(|i| (m - i) as i64).collect()),
            ScoringSystem::Half => int((0..m).map(|i| i64::from(i < m / 2)).collect()),
            ScoringSystem::Custom(c) => c.get(m).cloned().ok_or_else(|| {
                Error::Config(format!("custom scoring system has no vector for m = {}", m))
            })?,
            ScoringSystem::Reversed(inner) => {
                let mut v = inner.vector(m)?;
                v.reverse();
                v.into_iter().map(|x| -x).collect()
            }
        })
    }

    /// The vector scaled by a positive integer so every entry is an integer.
    ///
    /// Positive scaling preserves every score comparison, so rule execution
    /// can run on `i64` without losing exactness.
    pub fn integer_vector(&self, m: usize) -> Result<Vec<i64>> {
        let v = self.vector(m)?;
        let lcm = v.iter().fold(1i64, |acc, x| lcm(acc, *x.denom()));
        Ok(v.iter().map(|x| x.numer() * (lcm / x.denom())).collect())
    }

    pub fn name(&self) -> String {
        match self {
            ScoringSystem::Plurality => "plurality".into(),
            ScoringSystem::Veto => "veto".into(),
            ScoringSystem::Borda => "borda".into(),
            ScoringSystem::Half => "half".into(),
            ScoringSystem::Custom(_) => "custom".into(),
            ScoringSystem::Reversed(inner) => format!("{}*", inner.name()),
        }
    }
}

impl fmt::Display for ScoringSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// `s*`, normalized so that `Plurality* = Veto`, `Veto* = Plurality` and
/// `(s*)* = s`.
pub fn reversed_system(s: &ScoringSystem) -> ScoringSystem {
    match s {
        ScoringSystem::Plurality => ScoringSystem::Veto,
        ScoringSystem::Veto => ScoringSystem::Plurality,
        ScoringSystem::Reversed(inner) => (**inner).clone(),
        ScoringSystem::Custom(c) => {
            let mut out = CustomVectors::new();
            for v in c.vectors.values() {
                out.insert(v.iter().rev().map(|x| -*x).collect());
            }
            ScoringSystem::Custom(out)
        }
        other => ScoringSystem::Reversed(Box::new(other.clone())),
    }
}

/// Integer scoring vectors for every length `1..=m`, used by rule execution
/// on restricted profiles.
#[derive(Clone, Debug)]
pub struct ScoreTable {
    by_len: Vec<Vec<i64>>,
}

impl ScoreTable {
    pub fn new(s: &ScoringSystem, m: usize) -> Result<Self> {
        let mut by_len = vec![Vec::new()];
        for len in 1..=m {
            by_len.push(s.integer_vector(len)?);
        }
        Ok(ScoreTable { by_len })
    }

    #[inline]
    pub fn vector(&self, len: usize) -> &[i64] {
        &self.by_len[len]
    }
}

/// Exact `s`-scores of every candidate.
pub fn scores(p: &Profile, s: &ScoringSystem) -> Result<Vec<Rational64>> {
    let m = p.num_candidates();
    let mut out = vec![Rational64::zero(); m];
    if m == 0 {
        return Ok(out);
    }
    let v = s.vector(m)?;
    for (count, r) in p.groups() {
        let count = Rational64::from_integer(*count as i64);
        for (i, c) in r.order().iter().enumerate() {
            out[c.0] += v[i] * count;
        }
    }
    Ok(out)
}

/// Integer scores over the candidates with `alive[c]` set, computed on the
/// restriction of `p` to those candidates. Dead candidates score 0.
pub fn restricted_scores(p: &Profile, alive: &[bool], table: &ScoreTable) -> Vec<i64> {
    let len = alive.iter().filter(|&&a| a).count();
    let mut out = vec![0i64; p.num_candidates()];
    if len == 0 {
        return out;
    }
    let v = table.vector(len);
    for (count, r) in p.groups() {
        let count = *count as i64;
        let mut pos = 0;
        for c in r.order() {
            if alive[c.0] {
                out[c.0] += v[pos] * count;
                pos += 1;
            }
        }
    }
    out
}

/// Candidates with maximum score.
pub fn winners(scores: &[Rational64]) -> Vec<Candidate> {
    extreme(scores, |a, b| a > b)
}

/// Candidates with minimum score.
pub fn losers(scores: &[Rational64]) -> Vec<Candidate> {
    extreme(scores, |a, b| a < b)
}

fn extreme(scores: &[Rational64], better: impl Fn(&Rational64, &Rational64) -> bool) -> Vec<Candidate> {
    let mut best: Option<Rational64> = None;
    let mut out = Vec::new();
    for (i, s) in scores.iter().enumerate() {
        match &best {
            Some(b) if better(b, s) => {}
            Some(b) if b == s => out.push(Candidate(i)),
            _ => {
                best = Some(*s);
                out.clear();
                out.push(Candidate(i));
            }
        }
    }
    out
}

/// Convenience: a rational with value `n`.
pub fn rat(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}
