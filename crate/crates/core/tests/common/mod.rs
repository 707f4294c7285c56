//! Shared oracle checks, used by the integration tests and the acceptance
//! harness alike.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use seqrank::determination::{
    brute_force_decide, coombs_bottomlist_decide, stv_decide, subset_dp_decide, DeterminationQuery, Mode,
};
use seqrank::kemeny::{kemeny_rankings, kemeny_total_distance};
use seqrank::majority::{
    bilevel_realize, c2_borda_scores, mcgarvey_realize, weighted_majority_graph, BilevelGraph, WeightedMajorityGraph,
};
use seqrank::rules::enumerate_selected;
use seqrank::sampling::{sample_impartial_culture_with, stream_rng};
use seqrank::scoring::scores;
use seqrank::{Candidate, Profile, Ranking, RuleId, ScoringSystem};

#[derive(Debug, Default)]
pub struct Tally {
    pub checked: usize,
    pub mismatches: usize,
    pub first: Option<String>,
}

impl Tally {
    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.mismatches += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    pub fn assert_clean(&self) {
        assert_eq!(self.mismatches, 0, "{} of {} mismatched; first: {:?}", self.mismatches, self.checked, self.first);
        assert!(self.checked > 0);
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    stream_rng(seed, 0)
}

pub fn random_profile(rng: &mut ChaCha8Rng, m_lo: usize, m_hi: usize, n_lo: usize, n_hi: usize) -> Profile {
    let m = rng.gen_range(m_lo..=m_hi);
    let n = rng.gen_range(n_lo..=n_hi);
    sample_impartial_culture_with(m, n, rng)
}

pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, m - 1);
            out.push(q);
        }
    }
    out
}

/// Positions (1-based) where `d` appears across `set`.
fn positions(set: &BTreeSet<Ranking>, d: Candidate) -> BTreeSet<usize> {
    set.iter().map(|r| r.position(d)).collect()
}

fn witness_ok(set: &BTreeSet<Ranking>, q: &DeterminationQuery, w: &Option<Ranking>) -> bool {
    match w {
        Some(w) => set.contains(w) && q.accepts(w.position(q.d)),
        None => true,
    }
}

/// Subset DP, brute force and enumeration membership agree on every
/// sequential built-in rule, candidate, position and mode.
pub fn dp_brute_enumeration(count: usize, seed: u64, m_max: usize, n_max: usize) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::default();
    for _ in 0..count {
        let p = random_profile(&mut rng, 1, m_max, 1, n_max);
        let m = p.num_candidates();
        for rule in RuleId::sequential_built_ins() {
            let set = enumerate_selected(&rule, &p).unwrap();
            for d in 0..m {
                let reach = positions(&set, Candidate(d));
                for k in 1..=m {
                    for mode in [Mode::Exact, Mode::TopK] {
                        let q = DeterminationQuery::new(rule.clone(), Candidate(d), k, mode);
                        let truth = reach.iter().any(|&pos| q.accepts(pos));
                        let dp = subset_dp_decide(&p, &q, 63).unwrap();
                        let bf = brute_force_decide(&p, &q).unwrap();
                        let ok = dp.holds == truth
                            && bf.holds == truth
                            && witness_ok(&set, &q, &dp.witness)
                            && witness_ok(&set, &q, &bf.witness)
                            && dp.witness.is_some() == truth;
                        t.record(ok, || format!("{:?} on\n{}", q, seqrank::profile::serialize_profile(&p)));
                    }
                }
            }
        }
    }
    t
}

/// `≻ ∈ SeqWi(s)(P)` iff `rev(≻) ∈ SeqLo(s*)(rev(P))`, as sets.
pub fn winner_loser_duality(count: usize, seed: u64, m_max: usize) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::default();
    for _ in 0..count {
        let p = random_profile(&mut rng, 1, m_max, 1, 9);
        for s in [ScoringSystem::Plurality, ScoringSystem::Veto, ScoringSystem::Borda] {
            for rule in [RuleId::SeqWinner(s.clone()), RuleId::SeqLoser(s.clone())] {
                let lhs: BTreeSet<Ranking> = enumerate_selected(&rule, &p).unwrap().iter().map(|r| r.reversed()).collect();
                let rhs = enumerate_selected(&rule.dual().unwrap(), &p.reversed()).unwrap();
                t.record(lhs == rhs, || format!("{} on\n{}", rule, seqrank::profile::serialize_profile(&p)));
            }
        }
    }
    t
}

/// Coombs bottom-list search against brute force (few voters, many candidates).
pub fn bottomlist_vs_brute(count: usize, seed: u64, n: usize, m_max: usize) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::default();
    for _ in 0..count {
        let p = random_profile(&mut rng, 1, m_max, n, n);
        let m = p.num_candidates();
        let set = enumerate_selected(&RuleId::coombs(), &p).unwrap();
        for d in 0..m {
            for k in 1..=m {
                for mode in [Mode::Exact, Mode::TopK] {
                    let q = DeterminationQuery::new(RuleId::coombs(), Candidate(d), k, mode);
                    let bl = coombs_bottomlist_decide(&p, &q, n as u64).unwrap();
                    let bf = brute_force_decide(&p, &q).unwrap();
                    let ok = bl.holds == bf.holds && witness_ok(&set, &q, &bl.witness) && bl.witness.is_some() == bl.holds;
                    t.record(ok, || format!("{:?} on\n{}", q, seqrank::profile::serialize_profile(&p)));
                }
            }
        }
    }
    t
}

/// The zero-first-place shortcut agrees with the plain subset DP.
pub fn stv_vs_dp(count: usize, seed: u64, n: usize, m: usize) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::default();
    for _ in 0..count {
        let p = sample_impartial_culture_with(m, n, &mut rng);
        for d in 0..m {
            for k in 1..=m {
                for mode in [Mode::Exact, Mode::TopK] {
                    let q = DeterminationQuery::new(RuleId::stv(), Candidate(d), k, mode);
                    let fast = stv_decide(&p, &q, 63).unwrap();
                    let dp = subset_dp_decide(&p, &q, 63).unwrap();
                    let ok = fast.holds == dp.holds
                        && fast.witness.as_ref().map_or(!fast.holds, |w| {
                            q.accepts(w.position(q.d))
                                && seqrank::reductions::witness_replay(&p, w.reversed().order(), &q.rule).unwrap()
                        });
                    t.record(ok, || format!("{:?} on\n{}", q, seqrank::profile::serialize_profile(&p)));
                }
            }
        }
    }
    t
}

/// Kemeny DP against exhaustive search over all rankings.
pub fn kemeny_vs_exhaustive(count: usize, seed: u64, m_max: usize) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::default();
    for _ in 0..count {
        let p = random_profile(&mut rng, 1, m_max, 1, 9);
        let res = kemeny_rankings(&p).unwrap();
        let mut best = u64::MAX;
        let mut argmin = BTreeSet::new();
        for perm in permutations(p.num_candidates()) {
            let r = Ranking::from_indices(&perm).unwrap();
            let d = kemeny_total_distance(&r, &p).unwrap();
            if d < best {
                best = d;
                argmin.clear();
            }
            if d == best {
                argmin.insert(r);
            }
        }
        t.record(res.optimum == best && res.rankings == argmin, || seqrank::profile::serialize_profile(&p));
    }
    t
}

/// `C2(c) = 2·Borda(c) − n(m+1)` with Borda scores m..1.
pub fn c2_borda_identity(count: usize, seed: u64) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::default();
    for _ in 0..count {
        let p = random_profile(&mut rng, 1, 8, 0, 12);
        let (m, n) = (p.num_candidates() as i64, p.num_voters() as i64);
        let c2 = c2_borda_scores(&weighted_majority_graph(&p));
        let borda = scores(&p, &ScoringSystem::Borda).unwrap();
        let ok = (0..p.num_candidates()).all(|c| {
            let b = borda[c];
            b.is_integer() && c2[c] == 2 * b.to_integer() - n * (m + 1)
        });
        t.record(ok, || seqrank::profile::serialize_profile(&p));
    }
    t
}

pub fn random_even_graph(rng: &mut ChaCha8Rng, m: usize) -> WeightedMajorityGraph {
    let mut arcs = Vec::new();
    for c in 0..m {
        for d in c + 1..m {
            let w = 2 * rng.gen_range(0..4i64);
            if w > 0 {
                if rng.gen_bool(0.5) {
                    arcs.push((c, d, w));
                } else {
                    arcs.push((d, c, w));
                }
            }
        }
    }
    WeightedMajorityGraph::from_arcs(m, &arcs).unwrap()
}

pub fn random_bilevel(rng: &mut ChaCha8Rng, m: usize) -> BilevelGraph {
    let mut cands: Vec<Candidate> = (0..m).map(Candidate).collect();
    cands.shuffle(rng);
    let mut blocks = Vec::new();
    let mut rest = cands.as_slice();
    while rest.len() >= 2 && rng.gen_bool(0.7) {
        let take = rng.gen_range(2..=rest.len());
        let split = rng.gen_range(1..take);
        blocks.push((rest[..split].to_vec(), rest[split..take].to_vec()));
        rest = &rest[take..];
    }
    BilevelGraph::new(m, blocks).unwrap()
}

/// Realizations reproduce the requested weighted majority graph exactly;
/// bilevel ones with two voters.
pub fn realization_round_trips(count: usize, seed: u64) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::default();
    for _ in 0..count {
        let m = rng.gen_range(1..=8);
        let g = random_even_graph(&mut rng, m);
        let p = mcgarvey_realize(&g).unwrap();
        t.record(weighted_majority_graph(&p) == g, || format!("{:?}", g));
        let b = random_bilevel(&mut rng, m);
        let q = bilevel_realize(&b);
        t.record(q.num_voters() == 2 && weighted_majority_graph(&q) == b.graph(), || format!("{:?}", b));
    }
    t
}

pub use seqrank::axioms::{search_counterexample, table_entry, AxiomId, SearchOutcome, SearchSpace};

pub struct Cell {
    pub axiom: AxiomId,
    pub rule: RuleId,
    pub expected: bool,
    pub outcome: SearchOutcome,
}

/// Whether the published table's ✓ is known to be wrong for this cell:
/// reinforcement fails for sequential rules once ties enter.
pub fn known_table_erratum(axiom: AxiomId, rule: &RuleId) -> bool {
    axiom == AxiomId::Reinforcement && rule.is_sequential()
}

/// Runs the randomized search on every cell of the property table.
pub fn table_survey(budget: usize, seed: u64) -> Vec<Cell> {
    let space = SearchSpace { m_max: 5, n_max: 7 };
    let mut cells = Vec::new();
    for axiom in AxiomId::ALL {
        for rule in RuleId::table_rules() {
            let expected = table_entry(axiom, &rule).unwrap();
            let outcome = search_counterexample(axiom, &rule, space, budget, seed).unwrap();
            cells.push(Cell {
                axiom,
                rule,
                expected,
                outcome,
            });
        }
    }
    cells
}

// ---- reduction fixtures ----

use seqrank::determination::{decide, Algorithm, Limits};
use seqrank::reductions::*;

pub fn reduction_limits() -> Limits {
    Limits {
        dp_candidates: 63,
        ..Limits::default()
    }
}

pub fn reduction_answer(r: &Reduction) -> bool {
    decide(&r.profile, &r.query, Algorithm::Auto, &reduction_limits()).unwrap().holds
}

/// All cubic graphs on `q` vertices up to isomorphism.
pub fn cubic_graphs(q: usize) -> Vec<GraphInstance> {
    let pairs: Vec<(usize, usize)> = (0..q).flat_map(|u| (u + 1..q).map(move |v| (u, v))).collect();
    let perms = permutations(q);
    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        if mask.count_ones() as usize != 3 * q / 2 {
            continue;
        }
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        let g = GraphInstance::new(q, &edges).unwrap();
        if !g.is_cubic() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
                e.sort();
                e
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

/// Every formula over `vars` variables in which each literal occurs exactly
/// twice and each clause has one to three literals, up to clause order.
pub fn restricted_formulas(vars: i32) -> Vec<SatFormula> {
    fn split(rest: &[i32], acc: &mut Vec<Vec<i32>>, out: &mut BTreeSet<Vec<Vec<i32>>>) {
        if rest.is_empty() {
            let mut f = acc.clone();
            f.sort();
            out.insert(f);
            return;
        }
        let head = rest[0];
        let tail = &rest[1..];
        // clause = head plus any sub-multiset of size ≤ 2 of the tail
        let mut picks: Vec<Vec<usize>> = vec![vec![]];
        for i in 0..tail.len() {
            picks.push(vec![i]);
            for j in i + 1..tail.len() {
                picks.push(vec![i, j]);
            }
        }
        for pick in picks {
            let mut clause = vec![head];
            clause.extend(pick.iter().map(|&i| tail[i]));
            clause.sort();
            let remaining: Vec<i32> = (0..tail.len()).filter(|i| !pick.contains(i)).map(|i| tail[i]).collect();
            acc.push(clause);
            split(&remaining, acc, out);
            acc.pop();
        }
    }
    let occurrences: Vec<i32> = (1..=vars).flat_map(|v| [v, v, -v, -v]).collect();
    let mut out = BTreeSet::new();
    split(&occurrences, &mut Vec::new(), &mut out);
    out.into_iter().map(|c| SatFormula::new(vars as usize, c).unwrap()).collect()
}

/// Regular graphs on `q` vertices up to isomorphism.
pub fn regular_graphs(q: usize) -> Vec<GraphInstance> {
    let pairs: Vec<(usize, usize)> = (0..q).flat_map(|u| (u + 1..q).map(move |v| (u, v))).collect();
    let perms = permutations(q);
    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        let g = GraphInstance::new(q, &edges).unwrap();
        if g.regular_degree().is_none() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
                e.sort();
                e
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

/// Families of distinct subsets: up to three sets over universes of size
/// ≤ 3, up to two over size 4.
pub fn hitting_set_instances() -> Vec<HittingSetInstance> {
    let mut out = Vec::new();
    for universe in 0..=4usize {
        let subsets: Vec<BTreeSet<usize>> = (0u32..1 << universe)
            .map(|s| (0..universe).filter(|&x| s >> x & 1 == 1).collect())
            .collect();
        let max_sets = if universe <= 3 { 3 } else { 2 };
        let mut families: Vec<Vec<BTreeSet<usize>>> = vec![vec![]];
        for _ in 0..max_sets {
            let mut next = Vec::new();
            for fam in &families {
                next.push(fam.clone());
                for s in &subsets {
                    if fam.last().is_none_or(|l| s > l) {
                        let mut f = fam.clone();
                        f.push(s.clone());
                        next.push(f);
                    }
                }
            }
            next.sort();
            next.dedup();
            families = next;
        }
        for fam in families {
            for target in 0..=universe {
                out.push(HittingSetInstance::new(universe, fam.clone(), target).unwrap());
            }
        }
    }
    out
}

pub fn stv_vc_fixtures() -> Tally {
    let mut t = Tally::default();
    for q in [4, 6] {
        for g in cubic_graphs(q) {
            for k in 0..=q {
                let r = stv_from_cubic_vc(&g, k).unwrap();
                let ok = r.profile.num_candidates() == 2 * q + g.edges.len() + 3
                    && reduction_answer(&r) == vc_brute(&g, k).unwrap();
                t.record(ok, || format!("q={} t={} {:?}", q, k, g.edges));
            }
        }
    }
    t
}

/// Baldwin instances: eight voters, every majority margin exactly 2, the
/// answer equals the oracle, and a minimum cover yields a replayable order.
pub fn baldwin_fixtures() -> Tally {
    let mut t = Tally::default();
    for q in [4, 6] {
        for g in cubic_graphs(q) {
            for k in 0..=q {
                let r = baldwin8_from_cubic_vc(&g, k).unwrap();
                let expect = vc_brute(&g, k).unwrap();
                let mut ok = r.profile.num_voters() == 8
                    && weighted_majority_graph(&r.profile).arcs().iter().all(|a| a.2 == 2)
                    && reduction_answer(&r) == expect;
                if expect {
                    let cover = min_vertex_cover(&g).unwrap();
                    if cover.len() == k {
                        let order = baldwin8_cover_order(&g, k, &cover).unwrap();
                        ok &= witness_replay(&r.profile, &order, &RuleId::baldwin()).unwrap();
                    }
                }
                t.record(ok, || format!("q={} t={} {:?}", q, k, g.edges));
            }
        }
    }
    t
}

pub fn stv_sat_fixtures() -> (Tally, usize, usize) {
    let mut formulas = restricted_formulas(1);
    formulas.extend(restricted_formulas(2));
    let (mut yes, mut no) = (0, 0);
    let mut t = Tally::default();
    for phi in &formulas {
        let r = stv_from_sat(phi).unwrap();
        let expect = sat_brute(phi).unwrap();
        t.record(reduction_answer(&r) == expect, || format!("{:?}", phi.clauses));
        if expect {
            yes += 1
        } else {
            no += 1
        }
    }
    (t, yes, no)
}

pub fn coombs_clique_fixtures() -> Tally {
    let mut t = Tally::default();
    for q in 3..=6 {
        for g in regular_graphs(q) {
            for k in 3..=q {
                let r = coombs_from_regular_clique(&g, k).unwrap();
                let ok = r.profile.num_candidates() == 2 * q + 2 && reduction_answer(&r) == clique_brute(&g, k).unwrap();
                t.record(ok, || format!("q={} k={} {:?}", q, k, g.edges));
            }
        }
    }
    t
}

pub fn hitting_set_fixtures() -> Tally {
    let mut t = Tally::default();
    for inst in hitting_set_instances() {
        let r = seqwi_veto_topk_from_hitting_set(&inst).unwrap();
        t.record(reduction_answer(&r) == hitting_brute(&inst).unwrap(), || format!("{:?}", inst));
    }
    t
}
