//! Position-k, Top-k and winner determination for the sequential rules.
//!
//! Every procedure answers the same question — is there a ranking selected
//! by the rule on `P` that puts `d` at position `k` (or within the top `k`) —
//! and, when the answer is yes, returns one such selected ranking.

mod bottomlist;
mod brute;
mod dp;
mod stv;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::{Candidate, Ranking};
use crate::rules::{enumerate_selected_bounded, RuleId};
use crate::scoring::ScoringSystem;

pub use bottomlist::{coombs_bottomlist_decide, DEFAULT_BOTTOMLIST_VOTER_BOUND};
pub use brute::{brute_force_decide, BRUTE_FORCE_BOUND};
pub use dp::{decide_by_transfer, subset_dp_decide, transfer_query, DEFAULT_DP_BOUND};
pub use stv::stv_decide;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `d` at exactly position `k`.
    Exact,
    /// `d` somewhere in positions `1..=k`.
    TopK,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "topk" => Ok(Mode::TopK),
            other => Err(Error::Config(format!("unknown mode `{}` (expected exact|topk)", other))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminationQuery {
    pub rule: RuleId,
    pub d: Candidate,
    /// 1-based target position.
    pub k: usize,
    pub mode: Mode,
}

impl DeterminationQuery {
    pub fn new(rule: RuleId, d: Candidate, k: usize, mode: Mode) -> Self {
        DeterminationQuery { rule, d, k, mode }
    }

    pub fn exact(rule: RuleId, d: usize, k: usize) -> Self {
        Self::new(rule, Candidate(d), k, Mode::Exact)
    }

    pub fn top_k(rule: RuleId, d: usize, k: usize) -> Self {
        Self::new(rule, Candidate(d), k, Mode::TopK)
    }

    /// Winner determination is the Top-1 question.
    pub fn winner(rule: RuleId, d: usize) -> Self {
        Self::new(rule, Candidate(d), 1, Mode::Exact)
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        if !self.rule.is_sequential() {
            return Err(Error::Domain(format!("determination is defined for sequential rules, not {}", self.rule)));
        }
        if self.d.0 >= m {
            return Err(Error::Domain(format!("candidate {} out of range for {} candidates", self.d, m)));
        }
        if self.k == 0 || self.k > m {
            return Err(Error::Domain(format!("position {} outside 1..={}", self.k, m)));
        }
        Ok(())
    }

    /// Whether `position` satisfies the query.
    pub fn accepts(&self, position: usize) -> bool {
        match self.mode {
            Mode::Exact => position == self.k,
            Mode::TopK => (1..=self.k).contains(&position),
        }
    }

    fn system(&self) -> &ScoringSystem {
        self.rule.system().expect("validated as sequential")
    }

    fn is_winner_rule(&self) -> bool {
        matches!(self.rule, RuleId::SeqWinner(_))
    }
}

/// Result of a determination query; `witness` is a selected ranking that
/// places `d` as asked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Answer {
    pub holds: bool,
    pub witness: Option<Ranking>,
}

impl Answer {
    pub fn no() -> Self {
        Answer { holds: false, witness: None }
    }

    pub fn yes(witness: Ranking) -> Self {
        Answer { holds: true, witness: Some(witness) }
    }
}

/// The order in which a sequential rule fixes the positions of `witness`:
/// top-down for winner rules, bottom-up for loser rules.
pub fn elimination_order(rule: &RuleId, witness: &Ranking) -> Vec<Candidate> {
    match rule {
        RuleId::SeqLoser(_) => witness.reversed().order().to_vec(),
        _ => witness.order().to_vec(),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Algorithm {
    /// STV and small-electorate Coombs get their specialised procedures;
    /// everything else runs the subset DP.
    #[default]
    Auto,
    Dp,
    Stv,
    BottomList,
    Brute,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Auto => "auto",
            Algorithm::Dp => "dp",
            Algorithm::Stv => "stv",
            Algorithm::BottomList => "bottomlist",
            Algorithm::Brute => "brute",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Algorithm::Auto,
            "dp" => Algorithm::Dp,
            "stv" => Algorithm::Stv,
            "bottomlist" => Algorithm::BottomList,
            "brute" => Algorithm::Brute,
            other => return Err(Error::Config(format!("unknown algorithm `{}`", other))),
        })
    }
}

/// Size limits for the exponential procedures.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of candidates for the subset DP.
    pub dp_candidates: usize,
    /// Maximum number of voters for the bottom-list DP.
    pub bottomlist_voters: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dp_candidates: DEFAULT_DP_BOUND,
            bottomlist_voters: DEFAULT_BOTTOMLIST_VOTER_BOUND,
        }
    }
}

/// Dispatches `q` to the requested procedure.
pub fn decide(p: &Profile, q: &DeterminationQuery, algo: Algorithm, limits: &Limits) -> Result<Answer> {
    q.validate(p.num_candidates())?;
    let stv = q.rule == RuleId::stv();
    let coombs = q.rule == RuleId::coombs();
    match algo {
        Algorithm::Auto if stv => stv_decide(p, q, limits.dp_candidates),
        Algorithm::Auto if coombs && p.num_voters() <= limits.bottomlist_voters => {
            coombs_bottomlist_decide(p, q, limits.bottomlist_voters)
        }
        Algorithm::Auto | Algorithm::Dp => subset_dp_decide(p, q, limits.dp_candidates),
        Algorithm::Stv if stv => stv_decide(p, q, limits.dp_candidates),
        Algorithm::BottomList if coombs => coombs_bottomlist_decide(p, q, limits.bottomlist_voters),
        Algorithm::Stv | Algorithm::BottomList => Err(Error::Domain(format!(
            "algorithm `{}` does not apply to {}",
            algo, q.rule
        ))),
        Algorithm::Brute => brute_force_decide(p, q),
    }
}

/// Every position `d` takes in some ranking selected by `rule` on `p`.
pub fn achievable_positions(p: &Profile, rule: &RuleId, d: Candidate) -> Result<Vec<usize>> {
    let m = p.num_candidates();
    if d.0 >= m {
        return Err(Error::Domain(format!("candidate {} out of range for {} candidates", d, m)));
    }
    if m > BRUTE_FORCE_BOUND {
        return Err(Error::Resource(format!(
            "position enumeration over {} candidates exceeds the bound of {}",
            m, BRUTE_FORCE_BOUND
        )));
    }
    if rule.is_sequential() {
        let mask = brute::position_mask(p, rule, d)?;
        return Ok((1..=m).filter(|k| mask >> k & 1 == 1).collect());
    }
    let mut seen = vec![false; m + 1];
    for r in enumerate_selected_bounded(rule, p, BRUTE_FORCE_BOUND)? {
        seen[r.position(d)] = true;
    }
    Ok((1..=m).filter(|&k| seen[k]).collect())
}

pub(crate) fn full_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::parse_profile;

    pub(crate) fn p0() -> Profile {
        parse_profile("3 3\n3: 0 1 2\n2: 1 2 0\n2: 2 1 0").unwrap()
    }

    #[test]
    fn query_validation() {
        let q = DeterminationQuery::exact(RuleId::stv(), 0, 4);
        assert!(matches!(q.validate(3), Err(Error::Domain(_))));
        let q = DeterminationQuery::exact(RuleId::stv(), 3, 1);
        assert!(q.validate(3).is_err());
        let q = DeterminationQuery::exact(RuleId::Kemeny, 0, 1);
        assert!(q.validate(3).is_err());
        assert!(DeterminationQuery::exact(RuleId::stv(), 2, 3).validate(3).is_ok());
    }

    #[test]
    fn achievable_positions_on_example() {
        let p = p0();
        assert_eq!(achievable_positions(&p, &RuleId::stv(), Candidate(0)).unwrap(), vec![2]);
        assert_eq!(achievable_positions(&p, &RuleId::stv(), Candidate(1)).unwrap(), vec![1, 3]);
        let u = Profile::from_groups(4, &[(3, &[2, 0, 3, 1])]).unwrap();
        let borda = RuleId::SeqWinner(ScoringSystem::Borda);
        assert_eq!(achievable_positions(&u, &borda, Candidate(2)).unwrap(), vec![1]);
        let kem = achievable_positions(&p, &RuleId::Kemeny, Candidate(1)).unwrap();
        assert_eq!(kem, vec![1]);
    }

    #[test]
    fn dispatch_rejects_mismatched_algorithm() {
        let q = DeterminationQuery::exact(RuleId::baldwin(), 0, 1);
        assert!(decide(&p0(), &q, Algorithm::Stv, &Limits::default()).is_err());
        assert!(decide(&p0(), &q, Algorithm::BottomList, &Limits::default()).is_err());
    }

    #[test]
    fn all_algorithms_agree_on_example() {
        let p = p0();
        for rule in RuleId::sequential_built_ins() {
            for d in 0..3 {
                for k in 1..=3 {
                    for mode in [Mode::Exact, Mode::TopK] {
                        let q = DeterminationQuery::new(rule.clone(), Candidate(d), k, mode);
                        let expect = brute_force_decide(&p, &q).unwrap().holds;
                        let got = decide(&p, &q, Algorithm::Dp, &Limits::default()).unwrap();
                        assert_eq!(got.holds, expect, "{} d={} k={} {:?}", rule, d, k, mode);
                        let auto = decide(&p, &q, Algorithm::Auto, &Limits::default()).unwrap();
                        assert_eq!(auto.holds, expect);
                    }
                }
            }
        }
    }
}
