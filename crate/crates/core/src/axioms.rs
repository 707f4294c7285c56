//! Executable axiom checks on concrete profiles, and randomized search for
//! violations.
//!
//! Axioms are checked against the irresolute output (the full set returned
//! by [`enumerate_selected`]), never a single tie-broken ranking.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::majority::weighted_majority_graph;
use crate::profile::Profile;
use crate::ranking::{Candidate, Ranking};
use crate::rules::{enumerate_selected, RuleId};
use crate::sampling::{sample_impartial_culture_with, stream_rng};
use crate::scoring::ScoringSystem;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum AxiomId {
    IndependenceTop,
    IndependenceBottom,
    Reinforcement,
    ReinforcementTop,
    ReinforcementBottom,
    CondorcetWinnerTop,
    CopyMajority,
    /// Independence of clones with top replacement.
    IndependenceClonesTop,
}

impl AxiomId {
    pub const ALL: [AxiomId; 8] = [
        AxiomId::IndependenceTop,
        AxiomId::IndependenceBottom,
        AxiomId::Reinforcement,
        AxiomId::ReinforcementTop,
        AxiomId::ReinforcementBottom,
        AxiomId::CondorcetWinnerTop,
        AxiomId::CopyMajority,
        AxiomId::IndependenceClonesTop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::IndependenceTop => "ind-top",
            AxiomId::IndependenceBottom => "ind-bottom",
            AxiomId::Reinforcement => "reinforcement",
            AxiomId::ReinforcementTop => "reinf-top",
            AxiomId::ReinforcementBottom => "reinf-bottom",
            AxiomId::CondorcetWinnerTop => "condorcet-top",
            AxiomId::CopyMajority => "copy-majority",
            AxiomId::IndependenceClonesTop => "clones-top",
        }
    }

    /// Whether the axiom combines two profiles.
    pub fn is_binary(self) -> bool {
        matches!(
            self,
            AxiomId::Reinforcement | AxiomId::ReinforcementTop | AxiomId::ReinforcementBottom
        )
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        AxiomId::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown axiom `{}`", s)))
    }
}

/// Whether `rule` satisfies `axiom` according to the published property
/// table (Kemeny and the Score, SeqWinner, SeqLoser rules over Plurality,
/// Veto and Borda). `None` for rules outside the table.
pub fn table_entry(axiom: AxiomId, rule: &RuleId) -> Option<bool> {
    use ScoringSystem::*;
    let (family, system) = match rule {
        RuleId::Kemeny => (0, 0),
        RuleId::Score(s) => (1, sys_index(s)?),
        RuleId::SeqWinner(s) => (2, sys_index(s)?),
        RuleId::SeqLoser(s) => (3, sys_index(s)?),
    };
    let _ = (Plurality, Veto, Borda);
    Some(match axiom {
        AxiomId::IndependenceTop => family == 0 || family == 2,
        AxiomId::IndependenceBottom => family == 0 || family == 3,
        AxiomId::Reinforcement => true,
        AxiomId::ReinforcementTop => family == 1 || family == 2,
        AxiomId::ReinforcementBottom => family == 1 || family == 3,
        AxiomId::CondorcetWinnerTop => family == 0 || (family == 3 && system == 3),
        AxiomId::CopyMajority => family == 0 || (family == 2 && system == 1) || (family == 3 && system == 2),
        AxiomId::IndependenceClonesTop => family == 3 && system == 1,
    })
}

fn sys_index(s: &ScoringSystem) -> Option<usize> {
    match s {
        ScoringSystem::Plurality => Some(1),
        ScoringSystem::Veto => Some(2),
        ScoringSystem::Borda => Some(3),
        _ => None,
    }
}

/// The data an axiom is checked on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Single(Profile),
    Pair(Profile, Profile),
    /// A profile and a clone set in it.
    Clones(Profile, Vec<Candidate>),
}

impl Witness {
    pub fn num_candidates(&self) -> usize {
        match self {
            Witness::Single(p) | Witness::Pair(p, _) | Witness::Clones(p, _) => p.num_candidates(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// The axiom's premise does not apply to this witness.
    Vacuous,
    Violated(String),
}

impl Verdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, Verdict::Violated(_))
    }
}

fn show(set: &BTreeSet<Vec<Candidate>>) -> String {
    let items: Vec<String> = set
        .iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    format!("{{{}}}", items.join(", "))
}

fn show_candidates(set: &BTreeSet<Candidate>) -> String {
    let items: Vec<String> = set.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn as_orders(set: &BTreeSet<Ranking>) -> BTreeSet<Vec<Candidate>> {
    set.iter().map(|r| r.order().to_vec()).collect()
}

fn tops(set: &BTreeSet<Ranking>, last: bool) -> BTreeSet<Candidate> {
    set.iter()
        .map(|r| if last { r.candidate_at(r.len()) } else { r.candidate_at(1) })
        .collect()
}

/// Checks one axiom for `rule` on `witness`.
pub fn check_axiom_instance(axiom: AxiomId, rule: &RuleId, witness: &Witness) -> Result<Verdict> {
    match (axiom, witness) {
        (AxiomId::IndependenceTop, Witness::Single(p)) => independence(rule, p, false),
        (AxiomId::IndependenceBottom, Witness::Single(p)) => independence(rule, p, true),
        (AxiomId::Reinforcement, Witness::Pair(p, q)) => reinforcement(rule, p, q, None),
        (AxiomId::ReinforcementTop, Witness::Pair(p, q)) => reinforcement(rule, p, q, Some(false)),
        (AxiomId::ReinforcementBottom, Witness::Pair(p, q)) => reinforcement(rule, p, q, Some(true)),
        (AxiomId::CondorcetWinnerTop, Witness::Single(p)) => condorcet(rule, p),
        (AxiomId::CopyMajority, Witness::Single(p)) => copy_majority(rule, p),
        (AxiomId::IndependenceClonesTop, Witness::Clones(p, clones)) => clones_top(rule, p, clones),
        (axiom, _) => Err(Error::Domain(format!("wrong kind of witness for axiom {}", axiom))),
    }
}

fn independence(rule: &RuleId, p: &Profile, bottom: bool) -> Result<Verdict> {
    let m = p.num_candidates();
    if m < 2 {
        return Ok(Verdict::Vacuous);
    }
    let full = enumerate_selected(rule, p)?;
    for a in tops(&full, bottom) {
        let keep: Vec<Candidate> = p.candidates().filter(|&c| c != a).collect();
        let (sub, _) = p.restrict(&keep)?;
        let reduced: BTreeSet<Vec<Candidate>> = enumerate_selected(rule, &sub)?
            .iter()
            .map(|r| r.order().iter().map(|c| keep[c.0]).collect())
            .collect();
        let extended: BTreeSet<Vec<Candidate>> = full
            .iter()
            .filter(|r| (if bottom { r.candidate_at(m) } else { r.candidate_at(1) }) == a)
            .map(|r| r.order().iter().copied().filter(|&c| c != a).collect())
            .collect();
        if reduced != extended {
            return Ok(Verdict::Violated(format!(
                "removing {} selects {} but the rankings with {} at the {} give {}",
                a,
                show(&reduced),
                a,
                if bottom { "bottom" } else { "top" },
                show(&extended)
            )));
        }
    }
    Ok(Verdict::Holds)
}

fn reinforcement(rule: &RuleId, p: &Profile, q: &Profile, position: Option<bool>) -> Result<Verdict> {
    if p.num_candidates() != q.num_candidates() {
        return Err(Error::Dimension("reinforcement needs profiles over the same candidates".into()));
    }
    let fp = enumerate_selected(rule, p)?;
    let fq = enumerate_selected(rule, q)?;
    let fpq = enumerate_selected(rule, &p.concat(q)?)?;
    match position {
        None => {
            let both: BTreeSet<Ranking> = fp.intersection(&fq).cloned().collect();
            if both.is_empty() {
                return Ok(Verdict::Vacuous);
            }
            if fpq != both {
                return Ok(Verdict::Violated(format!(
                    "f(P) ∩ f(P') = {} but f(P+P') = {}",
                    show(&as_orders(&both)),
                    show(&as_orders(&fpq))
                )));
            }
        }
        Some(last) => {
            let both: BTreeSet<Candidate> = tops(&fp, last).intersection(&tops(&fq, last)).copied().collect();
            if both.is_empty() {
                return Ok(Verdict::Vacuous);
            }
            let combined = tops(&fpq, last);
            if combined != both {
                return Ok(Verdict::Violated(format!(
                    "shared {} candidates {} but the combined profile gives {}",
                    if last { "last" } else { "first" },
                    show_candidates(&both),
                    show_candidates(&combined)
                )));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// The candidate beating every other one in a strict pairwise majority.
pub fn condorcet_winner(p: &Profile) -> Option<Candidate> {
    let g = weighted_majority_graph(p);
    p.candidates()
        .find(|&a| p.candidates().all(|b| b == a || g.weight(a, b) > 0))
}

fn condorcet(rule: &RuleId, p: &Profile) -> Result<Verdict> {
    let Some(a) = condorcet_winner(p) else {
        return Ok(Verdict::Vacuous);
    };
    let firsts = tops(&enumerate_selected(rule, p)?, false);
    if firsts != BTreeSet::from([a]) {
        return Ok(Verdict::Violated(format!(
            "{} is the Condorcet winner but the selected rankings start with {}",
            a,
            show_candidates(&firsts)
        )));
    }
    Ok(Verdict::Holds)
}

/// A ranking held by more than half of the voters.
pub fn majority_ranking(p: &Profile) -> Option<Ranking> {
    let canon = p.canonical();
    canon
        .groups()
        .iter()
        .find(|(c, _)| 2 * c > p.num_voters())
        .map(|(_, r)| r.clone())
}

fn copy_majority(rule: &RuleId, p: &Profile) -> Result<Verdict> {
    let Some(r) = majority_ranking(p) else {
        return Ok(Verdict::Vacuous);
    };
    let out = enumerate_selected(rule, p)?;
    if out != BTreeSet::from([r.clone()]) {
        return Ok(Verdict::Violated(format!(
            "{} is a majority ranking but the rule selects {}",
            r,
            show(&as_orders(&out))
        )));
    }
    Ok(Verdict::Holds)
}

/// Whether the candidates of `set` are consecutive in every vote.
pub fn is_clone_set(p: &Profile, set: &[Candidate]) -> bool {
    p.groups().iter().all(|(_, r)| {
        let pos: Vec<usize> = set.iter().map(|&c| r.position(c)).collect();
        let (lo, hi) = (pos.iter().min().copied(), pos.iter().max().copied());
        match (lo, hi) {
            (Some(lo), Some(hi)) => hi - lo + 1 == set.len(),
            _ => true,
        }
    })
}

/// Replaces the clone set by its lowest-index member (acting as the fresh
/// candidate) and renumbers. Returns the collapsed profile and the map from
/// old indices to new ones (clones all map to the representative).
pub fn collapse_clones(p: &Profile, clones: &[Candidate]) -> Result<(Profile, Vec<usize>)> {
    let rep = *clones.iter().min().ok_or_else(|| Error::Domain("empty clone set".into()))?;
    if clones.iter().any(|c| c.0 >= p.num_candidates()) {
        return Err(Error::Domain("clone set mentions an unknown candidate".into()));
    }
    if !is_clone_set(p, clones) {
        return Err(Error::Domain("the candidates are not consecutive in every vote".into()));
    }
    let keep: Vec<Candidate> = p.candidates().filter(|c| *c == rep || !clones.contains(c)).collect();
    let (sub, map) = p.restrict(&keep)?;
    let rep_new = map[rep.0].expect("kept");
    let full_map = (0..p.num_candidates())
        .map(|c| if clones.contains(&Candidate(c)) { rep_new } else { map[c].expect("kept") })
        .collect();
    Ok((sub, full_map))
}

fn clones_top(rule: &RuleId, p: &Profile, clones: &[Candidate]) -> Result<Verdict> {
    let (collapsed, map) = collapse_clones(p, clones)?;
    let image: BTreeSet<Vec<Candidate>> = enumerate_selected(rule, p)?
        .iter()
        .map(|r| {
            // the first clone met takes the block's place; later ones vanish
            let mut seen = false;
            r.order()
                .iter()
                .filter(|c| {
                    if clones.contains(c) {
                        !std::mem::replace(&mut seen, true)
                    } else {
                        true
                    }
                })
                .map(|c| Candidate(map[c.0]))
                .collect()
        })
        .collect();
    let direct = as_orders(&enumerate_selected(rule, &collapsed)?);
    if image != direct {
        return Ok(Verdict::Violated(format!(
            "top-replacing the clones in f(P) gives {} but f(P') = {}",
            show(&image),
            show(&direct)
        )));
    }
    Ok(Verdict::Holds)
}

/// Bounds for random witness generation.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub m_max: usize,
    pub n_max: usize,
}

impl Default for SearchSpace {
    fn default() -> Self {
        SearchSpace { m_max: 5, n_max: 7 }
    }
}

/// Random witness data of the right shape for `axiom`.
pub fn random_witness<R: Rng + ?Sized>(axiom: AxiomId, space: SearchSpace, rng: &mut R) -> Witness {
    let lo = if axiom == AxiomId::IndependenceClonesTop { 3 } else { 2 };
    let m = rng.gen_range(lo..=space.m_max.max(lo));
    let n = rng.gen_range(1..=space.n_max.max(1));
    match axiom {
        a if a.is_binary() => {
            let p = sample_impartial_culture_with(m, n, rng);
            let n2 = rng.gen_range(1..=space.n_max.max(1));
            let q = if rng.gen_bool(0.5) {
                sample_impartial_culture_with(m, n2, rng)
            } else {
                // reuse P's votes so the selected sets overlap more often
                let votes: Vec<Ranking> = p.voters().cloned().collect();
                let picked: Vec<Ranking> = (0..n2).map(|_| votes.choose(rng).unwrap().clone()).collect();
                Profile::from_rankings(m, picked).expect("well-formed")
            };
            Witness::Pair(p, q)
        }
        AxiomId::CopyMajority => {
            let major = n / 2 + 1;
            let mut base: Vec<Candidate> = (0..m).map(Candidate).collect();
            base.shuffle(rng);
            let head = Ranking::from_order_unchecked(base);
            let rest = sample_impartial_culture_with(m, n - major, rng);
            let mut votes = vec![head; major];
            votes.extend(rest.voters().cloned());
            Witness::Single(Profile::from_rankings(m, votes).expect("well-formed"))
        }
        AxiomId::IndependenceClonesTop => {
            // sample on m−1 candidates, then split a random candidate x into
            // {x, m−1}, adjacent in every vote in random internal order
            let base = sample_impartial_culture_with(m - 1, n, rng);
            let x = Candidate(rng.gen_range(0..m - 1));
            let clone = Candidate(m - 1);
            let votes: Vec<Ranking> = base
                .voters()
                .map(|v| {
                    let mut order = Vec::with_capacity(m);
                    for &c in v.order() {
                        if c == x {
                            if rng.gen_bool(0.5) {
                                order.extend([x, clone]);
                            } else {
                                order.extend([clone, x]);
                            }
                        } else {
                            order.push(c);
                        }
                    }
                    Ranking::from_order_unchecked(order)
                })
                .collect();
            Witness::Clones(Profile::from_rankings(m, votes).expect("well-formed"), vec![x, clone])
        }
        _ => Witness::Single(sample_impartial_culture_with(m, n, rng)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub witness: Witness,
    pub detail: String,
    pub shard: usize,
    pub trial: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub counterexample: Option<Counterexample>,
    /// Trials whose premise applied (non-vacuous checks), over all shards.
    pub effective_trials: usize,
}

pub const SEARCH_SHARDS: usize = 16;

/// Randomized search for a violation of `axiom` by `rule`. The budget is
/// split over [`SEARCH_SHARDS`] shards; shard `i` draws from stream `i` of
/// the seed, and the violation from the lowest shard wins, so the result is
/// deterministic regardless of scheduling.
pub fn search_counterexample(
    axiom: AxiomId,
    rule: &RuleId,
    space: SearchSpace,
    budget: usize,
    seed: u64,
) -> Result<SearchOutcome> {
    if budget == 0 {
        return Err(Error::Domain("search budget must be at least 1".into()));
    }
    let per_shard: Vec<usize> = (0..SEARCH_SHARDS)
        .map(|i| budget / SEARCH_SHARDS + usize::from(i < budget % SEARCH_SHARDS))
        .collect();
    let results: Vec<Result<(Option<Counterexample>, usize)>> = per_shard
        .par_iter()
        .enumerate()
        .map(|(shard, &trials)| {
            let mut rng = stream_rng(seed, shard as u64);
            let mut effective = 0;
            for trial in 0..trials {
                let w = random_witness(axiom, space, &mut rng);
                match check_axiom_instance(axiom, rule, &w)? {
                    Verdict::Violated(detail) => {
                        return Ok((
                            Some(Counterexample {
                                witness: w,
                                detail,
                                shard,
                                trial,
                            }),
                            effective + 1,
                        ))
                    }
                    Verdict::Holds => effective += 1,
                    Verdict::Vacuous => {}
                }
            }
            Ok((None, effective))
        })
        .collect();
    let mut effective_trials = 0;
    let mut found = None;
    for r in results {
        let (cx, eff) = r?;
        effective_trials += eff;
        if found.is_none() {
            found = cx;
        }
    }
    if let Some(cx) = &found {
        // never report something the checker does not confirm on its own
        let again = check_axiom_instance(axiom, rule, &cx.witness)?;
        assert!(again.is_violation(), "counterexample failed re-verification");
    }
    Ok(SearchOutcome {
        counterexample: found,
        effective_trials,
    })
}
