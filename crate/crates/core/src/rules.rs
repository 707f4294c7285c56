//! Score, Sequential-Winner and Sequential-Loser rules.
//!
//! Rules run either resolutely, driven by a [`TieBreakOrder`], or
//! irresolutely via [`enumerate_selected`], which returns every ranking the
//! rule can select under some resolution of ties.
//!
//! Tie resolution convention: when several candidates tie for the winner of
//! a round, the one earliest in the tie order is promoted; when several tie
//! for the loser, the one latest in the tie order is demoted. Either way the
//! tie order expresses which candidate is preferred.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kemeny;
use crate::profile::Profile;
use crate::ranking::{Candidate, Ranking, TieBreakOrder};
use crate::scoring::{reversed_system, restricted_scores, CustomVectors, ScoreTable, ScoringSystem};

/// Default candidate bound for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 10;

/// A social preference function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RuleId {
    Score(ScoringSystem),
    SeqWinner(ScoringSystem),
    SeqLoser(ScoringSystem),
    Kemeny,
}

impl RuleId {
    pub fn stv() -> Self {
        RuleId::SeqLoser(ScoringSystem::Plurality)
    }

    pub fn coombs() -> Self {
        RuleId::SeqLoser(ScoringSystem::Veto)
    }

    pub fn baldwin() -> Self {
        RuleId::SeqLoser(ScoringSystem::Borda)
    }

    pub fn system(&self) -> Option<&ScoringSystem> {
        match self {
            RuleId::Score(s) | RuleId::SeqWinner(s) | RuleId::SeqLoser(s) => Some(s),
            RuleId::Kemeny => None,
        }
    }

    pub fn is_sequential(&self) -> bool {
        matches!(self, RuleId::SeqWinner(_) | RuleId::SeqLoser(_))
    }

    /// The rule `f*` with `f*(P) = rev(f(rev(P)))`, where it stays inside the
    /// three families: Seq-s-Winner ↔ Seq-s*-Loser.
    pub fn dual(&self) -> Option<RuleId> {
        match self {
            RuleId::SeqWinner(s) => Some(RuleId::SeqLoser(reversed_system(s))),
            RuleId::SeqLoser(s) => Some(RuleId::SeqWinner(reversed_system(s))),
            _ => None,
        }
    }

    /// The six sequential rules over Plurality, Veto and Borda.
    pub fn sequential_built_ins() -> Vec<RuleId> {
        let systems = [ScoringSystem::Plurality, ScoringSystem::Veto, ScoringSystem::Borda];
        let mut out: Vec<RuleId> = systems.iter().cloned().map(RuleId::SeqWinner).collect();
        out.extend(systems.iter().cloned().map(RuleId::SeqLoser));
        out
    }

    /// Kemeny plus the nine Score/SeqWinner/SeqLoser rules over Plurality,
    /// Veto and Borda.
    pub fn table_rules() -> Vec<RuleId> {
        let systems = [ScoringSystem::Plurality, ScoringSystem::Veto, ScoringSystem::Borda];
        let mut out = vec![RuleId::Kemeny];
        out.extend(systems.iter().cloned().map(RuleId::Score));
        out.extend(systems.iter().cloned().map(RuleId::SeqWinner));
        out.extend(systems.iter().cloned().map(RuleId::SeqLoser));
        out
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::Score(s) => write!(f, "score:{}", s),
            RuleId::SeqWinner(s) => write!(f, "seqwin:{}", s),
            RuleId::SeqLoser(s) => write!(f, "seqlose:{}", s),
            RuleId::Kemeny => f.write_str("kemeny"),
        }
    }
}

fn parse_system(s: &str) -> Result<ScoringSystem> {
    Ok(match s {
        "plurality" => ScoringSystem::Plurality,
        "veto" => ScoringSystem::Veto,
        "borda" => ScoringSystem::Borda,
        "half" => ScoringSystem::Half,
        _ => {
            if let Some(path) = s.strip_prefix("custom:") {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("reading {}: {}", path, e)))?;
                ScoringSystem::Custom(CustomVectors::parse(&text)?)
            } else if let Some(inner) = s.strip_suffix('*') {
                reversed_system(&parse_system(inner)?)
            } else {
                return Err(Error::Config(format!("unknown scoring system {:?}", s)));
            }
        }
    })
}

impl FromStr for RuleId {
    type Err = Error;

    /// Accepts `score:<sys>`, `seqwin:<sys>`, `seqlose:<sys>`, `kemeny` and
    /// the aliases `stv`, `coombs`, `baldwin`. `<sys>` is one of
    /// `plurality`, `veto`, `borda`, `half` or `custom:<path>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "kemeny" => return Ok(RuleId::Kemeny),
            "stv" => return Ok(RuleId::stv()),
            "coombs" => return Ok(RuleId::coombs()),
            "baldwin" => return Ok(RuleId::baldwin()),
            _ => {}
        }
        let (family, system) = s
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("unknown rule {:?}", s)))?;
        let system = parse_system(system)?;
        match family {
            "score" => Ok(RuleId::Score(system)),
            "seqwin" => Ok(RuleId::SeqWinner(system)),
            "seqlose" => Ok(RuleId::SeqLoser(system)),
            _ => Err(Error::Config(format!("unknown rule family {:?}", family))),
        }
    }
}

/// One round of a resolute execution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    /// 1-based round index.
    pub index: usize,
    /// Candidate removed (placed) in this round.
    pub eliminated: Candidate,
    pub tie_occurred: bool,
    pub tied_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExecutionTrace {
    pub rounds: Vec<Round>,
    pub output: Ranking,
}

impl ExecutionTrace {
    /// Order in which candidates were removed, round by round.
    pub fn elimination_order(&self) -> Vec<Candidate> {
        self.rounds.iter().map(|r| r.eliminated).collect()
    }
}

/// Number of rounds whose tied set had at least two candidates.
pub fn tie_round_count(trace: &ExecutionTrace) -> usize {
    trace.rounds.iter().filter(|r| r.tied_size >= 2).count()
}

fn check_tie(p: &Profile, tie: &TieBreakOrder) -> Result<()> {
    if tie.len() != p.num_candidates() {
        return Err(Error::Dimension(format!(
            "tie-break order over {} candidates for a profile over {}",
            tie.len(),
            p.num_candidates()
        )));
    }
    Ok(())
}

/// Sorts by initial score, never recomputing. A round records a tie when at
/// least two remaining candidates share the largest remaining initial score.
pub fn run_score_rule(p: &Profile, s: &ScoringSystem, tie: &TieBreakOrder) -> Result<ExecutionTrace> {
    check_tie(p, tie)?;
    let m = p.num_candidates();
    if m == 0 {
        return Ok(ExecutionTrace {
            rounds: Vec::new(),
            output: Ranking::identity(0),
        });
    }
    let table = ScoreTable::new(s, m)?;
    let scores = restricted_scores(p, &vec![true; m], &table);
    let mut order: Vec<Candidate> = p.candidates().collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(scores[c.0]), tie.priority(c)));
    let rounds = order
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let tied_size = order[i..].iter().filter(|d| scores[d.0] == scores[c.0]).count();
            Round {
                index: i + 1,
                eliminated: c,
                tie_occurred: tied_size >= 2,
                tied_size,
            }
        })
        .collect();
    Ok(ExecutionTrace {
        rounds,
        output: Ranking::from_order_unchecked(order),
    })
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Direction {
    Winner,
    Loser,
}

fn run_sequential(p: &Profile, s: &ScoringSystem, tie: &TieBreakOrder, dir: Direction) -> Result<ExecutionTrace> {
    check_tie(p, tie)?;
    let m = p.num_candidates();
    let table = ScoreTable::new(s, m)?;
    let mut alive = vec![true; m];
    let mut placed = Vec::with_capacity(m);
    let mut rounds = Vec::with_capacity(m);
    for round in 1..=m {
        let scores = restricted_scores(p, &alive, &table);
        let remaining = (0..m).filter(|&c| alive[c]);
        let target = match dir {
            Direction::Winner => remaining.clone().map(|c| scores[c]).max(),
            Direction::Loser => remaining.clone().map(|c| scores[c]).min(),
        }
        .expect("at least one candidate remains");
        let tied: Vec<Candidate> = remaining.filter(|&c| scores[c] == target).map(Candidate).collect();
        let pick = match dir {
            Direction::Winner => tie.earliest(tied.iter().copied()),
            Direction::Loser => tie.latest(tied.iter().copied()),
        }
        .expect("tied set is non-empty");
        alive[pick.0] = false;
        placed.push(pick);
        rounds.push(Round {
            index: round,
            eliminated: pick,
            tie_occurred: tied.len() >= 2,
            tied_size: tied.len(),
        });
    }
    if dir == Direction::Loser {
        placed.reverse();
    }
    Ok(ExecutionTrace {
        rounds,
        output: Ranking::from_order_unchecked(placed),
    })
}

/// Repeatedly promotes the tie-preferred s-winner of the remaining profile.
pub fn run_seq_winner(p: &Profile, s: &ScoringSystem, tie: &TieBreakOrder) -> Result<ExecutionTrace> {
    run_sequential(p, s, tie, Direction::Winner)
}

/// Repeatedly demotes the tie-least-preferred s-loser of the remaining profile.
pub fn run_seq_loser(p: &Profile, s: &ScoringSystem, tie: &TieBreakOrder) -> Result<ExecutionTrace> {
    run_sequential(p, s, tie, Direction::Loser)
}

/// Resolute output of any rule; Kemeny picks the minimizer that is earliest
/// under the tie order applied lexicographically.
pub fn run_rule(rule: &RuleId, p: &Profile, tie: &TieBreakOrder) -> Result<Ranking> {
    Ok(match rule {
        RuleId::Score(s) => run_score_rule(p, s, tie)?.output,
        RuleId::SeqWinner(s) => run_seq_winner(p, s, tie)?.output,
        RuleId::SeqLoser(s) => run_seq_loser(p, s, tie)?.output,
        RuleId::Kemeny => {
            check_tie(p, tie)?;
            kemeny::kemeny_tie_broken(p, tie)?
        }
    })
}

/// Execution trace for the round-based rules (Kemeny has no rounds).
pub fn run_trace(rule: &RuleId, p: &Profile, tie: &TieBreakOrder) -> Result<ExecutionTrace> {
    match rule {
        RuleId::Score(s) => run_score_rule(p, s, tie),
        RuleId::SeqWinner(s) => run_seq_winner(p, s, tie),
        RuleId::SeqLoser(s) => run_seq_loser(p, s, tie),
        RuleId::Kemeny => Err(Error::Domain("Kemeny's rule has no round structure".into())),
    }
}

pub(crate) fn alive_from_mask(mask: u64, m: usize) -> Vec<bool> {
    (0..m).map(|c| mask >> c & 1 == 1).collect()
}

/// Candidates tied for the winner (or loser) of `p` restricted to `mask`.
pub(crate) fn extreme_in_mask(p: &Profile, table: &ScoreTable, mask: u64, winner: bool) -> Vec<Candidate> {
    let m = p.num_candidates();
    let alive = alive_from_mask(mask, m);
    let scores = restricted_scores(p, &alive, table);
    let remaining = (0..m).filter(|&c| alive[c]);
    let target = if winner {
        remaining.clone().map(|c| scores[c]).max()
    } else {
        remaining.clone().map(|c| scores[c]).min()
    };
    match target {
        Some(t) => remaining.filter(|&c| scores[c] == t).map(Candidate).collect(),
        None => Vec::new(),
    }
}

/// Every ranking the rule selects on `p` (the irresolute output `f(P)`).
pub fn enumerate_selected(rule: &RuleId, p: &Profile) -> Result<BTreeSet<Ranking>> {
    enumerate_selected_bounded(rule, p, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_selected_bounded(rule: &RuleId, p: &Profile, bound: usize) -> Result<BTreeSet<Ranking>> {
    let m = p.num_candidates();
    if m > bound {
        return Err(Error::Resource(format!(
            "enumeration over {} candidates exceeds the bound of {}",
            m, bound
        )));
    }
    match rule {
        RuleId::Score(s) => enumerate_score(p, s),
        RuleId::SeqWinner(s) => enumerate_sequential(p, s, true),
        RuleId::SeqLoser(s) => enumerate_sequential(p, s, false),
        RuleId::Kemeny => Ok(kemeny::kemeny_rankings_bounded(p, bound)?.rankings),
    }
}

fn enumerate_score(p: &Profile, s: &ScoringSystem) -> Result<BTreeSet<Ranking>> {
    let m = p.num_candidates();
    if m == 0 {
        return Ok(BTreeSet::from([Ranking::identity(0)]));
    }
    let table = ScoreTable::new(s, m)?;
    let scores = restricted_scores(p, &vec![true; m], &table);
    let mut levels: Vec<i64> = scores.clone();
    levels.sort_unstable_by(|a, b| b.cmp(a));
    levels.dedup();
    let mut prefixes: Vec<Vec<Candidate>> = vec![Vec::new()];
    for level in levels {
        let block: Vec<Candidate> = (0..m).filter(|&c| scores[c] == level).map(Candidate).collect();
        let perms = permutations(&block);
        let mut next = Vec::with_capacity(prefixes.len() * perms.len());
        for pre in &prefixes {
            for perm in &perms {
                let mut v = pre.clone();
                v.extend_from_slice(perm);
                next.push(v);
            }
        }
        prefixes = next;
    }
    Ok(prefixes.into_iter().map(Ranking::from_order_unchecked).collect())
}

pub(crate) fn permutations(items: &[Candidate]) -> Vec<Vec<Candidate>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

type Suffixes = Rc<Vec<Vec<Candidate>>>;

fn enumerate_sequential(p: &Profile, s: &ScoringSystem, winner: bool) -> Result<BTreeSet<Ranking>> {
    let m = p.num_candidates();
    let table = ScoreTable::new(s, m)?;
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut memo: HashMap<u64, Suffixes> = HashMap::new();
    let orders = selected_orders(p, &table, full, winner, &mut memo);
    Ok(orders
        .iter()
        .map(|o| Ranking::from_order_unchecked(o.clone()))
        .collect())
}

/// All selected orderings (top to bottom) of the candidates in `mask`.
fn selected_orders(
    p: &Profile,
    table: &ScoreTable,
    mask: u64,
    winner: bool,
    memo: &mut HashMap<u64, Suffixes>,
) -> Suffixes {
    if mask == 0 {
        return Rc::new(vec![Vec::new()]);
    }
    if let Some(hit) = memo.get(&mask) {
        return hit.clone();
    }
    let mut out = Vec::new();
    for c in extreme_in_mask(p, table, mask, winner) {
        let rest = selected_orders(p, table, mask & !(1u64 << c.0), winner, memo);
        for o in rest.iter() {
            let mut v = Vec::with_capacity(o.len() + 1);
            if winner {
                v.push(c);
                v.extend_from_slice(o);
            } else {
                v.extend_from_slice(o);
                v.push(c);
            }
            out.push(v);
        }
    }
    let out = Rc::new(out);
    memo.insert(mask, out.clone());
    out
}
