//! Acceptance run: one PASS/FAIL line per primary criterion, with the
//! tolerances pinned below. Exits non-zero on any failure not listed as a
//! known defect of the published claims (see `KNOWN_FALSE`).

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use seqrank::experiments::{run_experiment, run_position_displacement, ExperimentConfig};
use seqrank::kemeny::kemeny_rankings;
use seqrank::profile::parse_profile;
use seqrank::ranking::{position_displacement, swap_distance};
use seqrank::rules::{enumerate_selected, run_trace, tie_round_count};
use seqrank::sampling::{mallows_ranking, sample_mallows, stream_rng, MallowsParams};
use seqrank::{Profile, Ranking, RuleId, TieBreakOrder};

const MALLOWS_MEAN_TOL: f64 = 0.02;
const MALLOWS_TV_MAX: f64 = 0.02;
const FIG_SEQ_PLURALITY_0: (f64, f64) = (0.399, 0.02);
const FIG_SEQ_PLURALITY_05: (f64, f64) = (0.073, 0.01);
const FIG_KEMENY_SEQWI_05: (f64, f64) = (0.0073, 0.005);
const FIG_SEQ_BORDA_1: (f64, f64) = (0.132, 0.01);
const FIG_SAMPLES: usize = 2000;
const FIG_TIME_LIMIT: Duration = Duration::from_secs(600);
const EXAMPLE_TIME_LIMIT: Duration = Duration::from_millis(1);
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(120);
const AXIOM_CHECKS: usize = 10_000;
const AXIOM_SEARCH_BUDGET: usize = 100_000;

/// Criteria whose published claim is known to be false; they still print
/// FAIL but do not fail the run.
const KNOWN_FALSE: &[&str] = &["axiom-table"];

const P0: &str = "3 3\n3: 0 1 2\n2: 1 2 0\n2: 2 1 0\n";

struct Line {
    name: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn criterion(name: &'static str, f: impl FnOnce() -> (bool, String)) -> Line {
    let start = Instant::now();
    let (pass, detail) = f();
    Line {
        name,
        pass,
        detail,
        elapsed: start.elapsed(),
    }
}

fn set(rankings: &[&[usize]]) -> BTreeSet<Ranking> {
    rankings.iter().map(|r| Ranking::from_indices(r).unwrap()).collect()
}

fn tally_line(parts: &[(&str, &Tally)]) -> (bool, String) {
    let pass = parts.iter().all(|(_, t)| t.mismatches == 0 && t.checked > 0);
    let mut detail: Vec<String> = parts
        .iter()
        .map(|(n, t)| format!("{}: {}/{} agree", n, t.checked - t.mismatches, t.checked))
        .collect();
    if let Some(first) = parts.iter().find_map(|(_, t)| t.first.clone()) {
        detail.push(format!("first mismatch: {}", first.replace('\n', " / ")));
    }
    (pass, detail.join("; "))
}

fn within(value: f64, (target, tol): (f64, f64)) -> bool {
    (value - target).abs() <= tol
}

fn example_exactness() -> (bool, String) {
    let p = parse_profile(P0).unwrap();
    let start = Instant::now();
    let score = enumerate_selected(&"score:plurality".parse().unwrap(), &p).unwrap();
    let seqwi = enumerate_selected(&"seqwin:plurality".parse().unwrap(), &p).unwrap();
    let seqlo = enumerate_selected(&RuleId::stv(), &p).unwrap();
    let took = start.elapsed();
    let pass = score == set(&[&[0, 1, 2], &[0, 2, 1]])
        && seqwi == set(&[&[0, 1, 2]])
        && seqlo == set(&[&[1, 0, 2], &[2, 0, 1]])
        && took < EXAMPLE_TIME_LIMIT;
    (pass, format!("Score {:?}, SeqWi {:?}, SeqLo {:?}; {:?}", shown(&score), shown(&seqwi), shown(&seqlo), took))
}

fn shown(s: &BTreeSet<Ranking>) -> Vec<String> {
    s.iter().map(|r| r.to_string()).collect()
}

fn kemeny_criterion() -> (bool, String) {
    let t = kemeny_vs_exhaustive(100, 8, 7);
    let res = kemeny_rankings(&parse_profile(P0).unwrap()).unwrap();
    let p0_ok = res.optimum == 8 && res.rankings == set(&[&[1, 2, 0]]);
    let (pass, detail) = tally_line(&[("DP vs exhaustive", &t)]);
    (pass && p0_ok, format!("{}; P0 optimum {} with {:?}", detail, res.optimum, shown(&res.rankings)))
}

fn mallows_calibration() -> (bool, String) {
    let mut means = Vec::new();
    let mut pass = true;
    for (norm, target) in [(0.0, 0.0), (0.5, 0.25), (1.0, 0.5)] {
        let params = MallowsParams::identity(10, norm).unwrap();
        let central = Ranking::identity(10);
        let mut total = 0.0;
        let mut count = 0usize;
        for i in 0..200u64 {
            let p = sample_mallows(&params, 100, 1000 + i);
            for v in p.voters() {
                total += swap_distance(v, &central).unwrap() as f64 / 45.0;
                count += 1;
            }
        }
        let mean = total / count as f64;
        pass &= (mean - target).abs() <= MALLOWS_MEAN_TOL;
        means.push(format!("{:.4}", mean));
    }
    // exact density on 4 candidates: P(r) ∝ φ^swap(r, centre)
    let params = MallowsParams::identity(4, 0.6).unwrap();
    let perms = permutations(4);
    let weight = |r: &Ranking| params.phi.powi(swap_distance(r, &params.central).unwrap() as i32);
    let rankings: Vec<Ranking> = perms.iter().map(|p| Ranking::from_indices(p).unwrap()).collect();
    let z: f64 = rankings.iter().map(weight).sum();
    let mut counts = std::collections::BTreeMap::new();
    let mut rng = stream_rng(4242, 0);
    let samples = 100_000;
    for _ in 0..samples {
        *counts.entry(mallows_ranking(&params, &mut rng)).or_insert(0usize) += 1;
    }
    let tv: f64 = rankings
        .iter()
        .map(|r| (counts.get(r).copied().unwrap_or(0) as f64 / samples as f64 - weight(r) / z).abs())
        .sum::<f64>()
        / 2.0;
    pass &= tv < MALLOWS_TV_MAX;
    (pass, format!("means at norm-phi 0/0.5/1 = {} (targets 0/0.25/0.5 ± {}); m=4 TV = {:.4} (< {})", means.join("/"), MALLOWS_MEAN_TOL, tv, MALLOWS_TV_MAX))
}

fn figure_reproduction() -> (bool, String) {
    let cfg = ExperimentConfig::parse(&format!(
        r#"
model = "mallows"
params = [0.0, 0.5, 1.0]
m = 10
n = 100
samples = {}
seed = 2024
pairs = [["seqlose:plurality", "seqwin:plurality"], ["seqwin:plurality", "kemeny"], ["seqlose:borda", "seqwin:borda"]]
metrics = ["pairwise"]
"#,
        FIG_SAMPLES
    ))
    .unwrap();
    let start = Instant::now();
    let rows = run_experiment(&cfg).unwrap().pairwise;
    let took = start.elapsed();
    let get = |param: f64, a: &str, b: &str| {
        rows.iter()
            .find(|r| r.param == param && r.rule_a == a && r.rule_b == b)
            .map(|r| r.mean_norm_swap)
            .unwrap()
    };
    let checks = [
        ("Plurality SeqLo/SeqWi @0", get(0.0, "seqlose:plurality", "seqwin:plurality"), FIG_SEQ_PLURALITY_0),
        ("Plurality SeqLo/SeqWi @0.5", get(0.5, "seqlose:plurality", "seqwin:plurality"), FIG_SEQ_PLURALITY_05),
        ("Kemeny/SeqWi-Plurality @0.5", get(0.5, "seqwin:plurality", "kemeny"), FIG_KEMENY_SEQWI_05),
        ("Borda SeqLo/SeqWi @1", get(1.0, "seqlose:borda", "seqwin:borda"), FIG_SEQ_BORDA_1),
    ];
    let pass = checks.iter().all(|(_, v, t)| within(*v, *t)) && took <= FIG_TIME_LIMIT;
    let detail: Vec<String> = checks
        .iter()
        .map(|(n, v, (t, tol))| format!("{} = {:.4} (target {} ± {})", n, v, t, tol))
        .collect();
    (pass, format!("{}; {} samples in {:.1?}", detail.join("; "), FIG_SAMPLES, took))
}

fn tie_statistics() -> (bool, String) {
    let mut rng = stream_rng(31, 0);
    let mut counts = BTreeSet::new();
    for _ in 0..50 {
        let mut order: Vec<usize> = (0..10).collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
        let v = Ranking::from_indices(&order).unwrap();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
        let tie = TieBreakOrder::new(Ranking::from_indices(&order).unwrap());
        let p = Profile::new(10, vec![(100, v)]).unwrap();
        let lo = tie_round_count(&run_trace(&RuleId::stv(), &p, &tie).unwrap());
        let wi = tie_round_count(&run_trace(&"seqwin:plurality".parse().unwrap(), &p, &tie).unwrap());
        counts.insert((lo, wi));
    }
    let pass = counts == BTreeSet::from([(8, 0)]);
    (pass, format!("(SeqLo, SeqWi) tie rounds over 50 unanimous profiles: {:?}", counts))
}

fn displacement() -> (bool, String) {
    let worked_a = Ranking::from_indices(&[0, 1, 2, 3]).unwrap();
    let worked_b = Ranking::from_indices(&[3, 2, 0, 1]).unwrap();
    let d1 = position_displacement(&worked_a, &worked_b, 1).unwrap();
    let d2 = position_displacement(&worked_a, &worked_b, 2).unwrap();
    let cfg = ExperimentConfig::parse(
        r#"
model = "mallows"
params = [0.8]
m = 10
n = 100
samples = 500
seed = 8
pairs = [["seqwin:plurality", "score:plurality"], ["seqlose:plurality", "score:plurality"]]
metrics = ["displacement"]
"#,
    )
    .unwrap();
    let rows = run_position_displacement(&cfg).unwrap();
    let at = |a: &str, pos: usize| {
        rows.iter()
            .find(|r| r.rule_a == a && r.position == pos)
            .map(|r| r.mean_displacement)
            .unwrap()
    };
    let first = at("seqwin:plurality", 1);
    let last = at("seqlose:plurality", 10);
    let pass = first == 0.0 && last == 0.0 && d1 == seqrank::scoring::rat(5) / 2 && d2 == seqrank::scoring::rat(3) / 2;
    (pass, format!("SeqWi/Score @1 = {}, SeqLo/Score @10 = {}; worked values {} and {}", first, last, d1, d2))
}

fn reduction_fixtures() -> (bool, String) {
    let (sat, yes, no) = stv_sat_fixtures();
    let (pass, detail) = tally_line(&[
        ("STV/vertex cover", &stv_vc_fixtures()),
        ("Baldwin/vertex cover", &baldwin_fixtures()),
        ("STV/SAT", &sat),
        ("Coombs/clique", &coombs_clique_fixtures()),
        ("SeqWi-Veto/hitting set", &hitting_set_fixtures()),
        ("McGarvey+bilevel round trips", &realization_round_trips(100, 10)),
    ]);
    (pass && yes > 0 && no > 0, format!("{} (SAT yes/no = {}/{})", detail, yes, no))
}

fn axiom_table() -> (bool, String) {
    let cells = table_survey(AXIOM_CHECKS, 2025);
    let mut ok_cells = 0;
    let mut ok_survived = 0;
    let mut broken = Vec::new();
    for c in cells.iter().filter(|c| c.expected) {
        ok_cells += 1;
        match &c.outcome.counterexample {
            None => ok_survived += 1,
            Some(cx) => broken.push(format!("{} / {} ({})", c.axiom, c.rule, cx.detail)),
        }
    }
    let unexplained = cells
        .iter()
        .filter(|c| c.expected && c.outcome.counterexample.is_some() && !known_table_erratum(c.axiom, &c.rule))
        .count();
    let space = SearchSpace { m_max: 4, n_max: 7 };
    let required = [
        (AxiomId::CondorcetWinnerTop, RuleId::stv()),
        (AxiomId::CopyMajority, RuleId::baldwin()),
        (AxiomId::IndependenceTop, "score:plurality".parse().unwrap()),
        (AxiomId::IndependenceBottom, "seqwin:plurality".parse().unwrap()),
    ];
    let found = required
        .iter()
        .filter(|(a, r)| search_counterexample(*a, r, space, AXIOM_SEARCH_BUDGET, 5).unwrap().counterexample.is_some())
        .count();
    let pass = ok_survived == ok_cells && found == required.len();
    let mut detail = format!(
        "{}/{} ✓ cells survive {} checks; {}/4 required violations found",
        ok_survived, ok_cells, AXIOM_CHECKS, found
    );
    if !broken.is_empty() {
        detail.push_str(&format!(
            "; {} unexplained. The published table's reinforcement ✓ is false for sequential rules, e.g. {}",
            unexplained, broken[0]
        ));
    }
    (pass, detail)
}

fn main() {
    let start = Instant::now();
    let lines = vec![
        criterion("example-exactness", example_exactness),
        criterion("oracle-equivalence", || {
            let s = Instant::now();
            let (pass, detail) = tally_line(&[("DP = brute = enumeration", &dp_brute_enumeration(200, 1, 7, 9))]);
            (pass && s.elapsed() < ORACLE_TIME_LIMIT, detail)
        }),
        criterion("winner-loser-duality", || tally_line(&[("set equality", &winner_loser_duality(100, 2, 6))])),
        criterion("coombs-bottom-list", || tally_line(&[("bottom-list = brute", &bottomlist_vs_brute(100, 3, 3, 8))])),
        criterion("stv-zero-score", || tally_line(&[("shortcut = subset DP", &stv_vs_dp(100, 6, 5, 12))])),
        criterion("kemeny-exact", kemeny_criterion),
        criterion("mallows-calibration", mallows_calibration),
        criterion("figure-reproduction", figure_reproduction),
        criterion("tie-statistics", tie_statistics),
        criterion("position-displacement", displacement),
        criterion("reduction-fixtures", reduction_fixtures),
        criterion("axiom-table", axiom_table),
        criterion("c2-borda-identity", || tally_line(&[("identity", &c2_borda_identity(1000, 9))])),
    ];
    let mut unexpected = 0;
    for l in &lines {
        let tag = if l.pass { "PASS" } else { "FAIL" };
        let note = if !l.pass && KNOWN_FALSE.contains(&l.name) { " [known: published claim is false]" } else { "" };
        println!("{} {:<22} {}{} ({:.2?})", tag, l.name, l.detail, note, l.elapsed);
        if !l.pass && !KNOWN_FALSE.contains(&l.name) {
            unexpected += 1;
        }
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!(
        "{} PASS, {} FAIL ({} unexpected) in {:.1?}",
        passed,
        lines.len() - passed,
        unexpected,
        start.elapsed()
    );
    if unexpected > 0 {
        std::process::exit(1);
    }
}
