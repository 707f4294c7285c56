//! Command-line front end. Every subcommand is a thin adapter over the
//! library; [`run_with`] takes explicit output streams so it can be tested
//! in-process.
//!
//! Exit status: 0 on success, 1 on domain/resource/input errors (one-line
//! reason on stderr), 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;

use crate::axioms::{check_axiom_instance, search_counterexample, AxiomId, SearchSpace, Verdict, Witness};
use crate::determination::{decide, elimination_order, Algorithm, DeterminationQuery, Limits, Mode};
use crate::error::{Error, Result};
use crate::experiments::{write_experiment, ExperimentConfig};
use crate::kemeny::kemeny_rankings_limited;
use crate::majority::{bilevel_realize, mcgarvey_realize, parse_bilevel, parse_graph};
use crate::profile::{parse_profile, serialize_profile, Profile};
use crate::ranking::{Candidate, Ranking, TieBreakOrder};
use crate::reductions::{
    baldwin8_from_cubic_vc, coombs_from_regular_clique, parse_dimacs_cnf, parse_graph_instance, parse_hitting_set,
    seqwi_veto_topk_from_hitting_set, stv_from_cubic_vc, stv_from_sat, Reduction,
};
use crate::rules::{enumerate_selected_bounded, run_rule, RuleId, DEFAULT_ENUMERATION_BOUND};
use crate::sampling::{
    sample_euclidean_with, sample_impartial_culture_with, sample_mallows_with, stream_rng, MallowsParams,
};

#[derive(Parser, Debug)]
#[command(name = "seqrank", version, about = "Scoring-based rank aggregation toolkit")]
pub struct Cli {
    /// Worker threads for parallel subcommands (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum SampleModel {
    Mallows,
    Euclidean,
    Ic,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum RealizeMode {
    Mcgarvey,
    Bilevel,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum ReductionType {
    StvSat,
    StvVc,
    CoombsClique,
    BaldwinVc,
    SeqwivetoHs,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a profile from a statistical culture.
    Sample {
        #[arg(long)]
        model: SampleModel,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Normalized Mallows dispersion in [0, 1].
        #[arg(long, default_value_t = 0.5)]
        norm_phi: f64,
        /// Euclidean dimension.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Resolute output of a rule under a tie-break order.
    Aggregate {
        #[arg(long)]
        rule: String,
        /// Comma-separated tie-break order, earliest first.
        #[arg(long, conflicts_with = "tiebreak_seed")]
        tiebreak: Option<String>,
        /// Sample a uniform tie-break order from this seed.
        #[arg(long)]
        tiebreak_seed: Option<u64>,
        profile: PathBuf,
    },
    /// Every ranking the rule selects (over all tie-break orders).
    Enumerate {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: usize,
        profile: PathBuf,
    },
    /// Can the candidate end up at the position in some selected ranking?
    Determine {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        candidate: usize,
        #[arg(long)]
        position: usize,
        #[arg(long, default_value = "exact")]
        mode: String,
        #[arg(long, default_value = "auto")]
        algo: String,
        profile: PathBuf,
    },
    /// Optimal Kemeny distance and all minimizers.
    Kemeny {
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, default_value_t = crate::kemeny::DEFAULT_KEMENY_BOUND)]
        bound: usize,
        profile: PathBuf,
    },
    /// Build a profile whose weighted majority graph is the given one.
    Realize {
        #[arg(long)]
        mode: RealizeMode,
        input: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Generate a determination instance from a combinatorial problem.
    Reduce {
        #[arg(long = "type")]
        kind: ReductionType,
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Check an axiom on given profiles or search for a violation.
    Axioms {
        #[arg(long)]
        axiom: String,
        #[arg(long)]
        rule: String,
        #[arg(long, conflicts_with = "check")]
        search: bool,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, required_if_eq("search", "true"))]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5)]
        m_max: usize,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        /// Profile files: one, or two for reinforcement axioms.
        #[arg(long, num_args = 1..=2)]
        check: Vec<PathBuf>,
        /// Comma-separated clone set (for clones-top).
        #[arg(long)]
        clones: Option<String>,
    },
    /// Run a simulation experiment and write CSVs.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(short)]
        o: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))
}

fn read_profile(path: &Path) -> Result<Profile> {
    parse_profile(&read(path)?)
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Config(format!("bad index {:?} in {:?}", t, s))))
        .collect()
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {}", p.display(), e))),
        None => out.write_all(text.as_bytes()).map_err(Error::from),
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e);
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    if let Some(t) = cli.threads {
        // fails only if the pool was already built, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            1
        }
    }
}

pub fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Sample {
            model,
            m,
            n,
            norm_phi,
            dim,
            seed,
            o,
        } => {
            let mut rng = stream_rng(seed, 0);
            let p = match model {
                SampleModel::Mallows => sample_mallows_with(&MallowsParams::identity(m, norm_phi)?, n, &mut rng),
                SampleModel::Euclidean => sample_euclidean_with(dim, m, n, &mut rng)?,
                SampleModel::Ic => sample_impartial_culture_with(m, n, &mut rng),
            };
            emit(out, o.as_deref(), &serialize_profile(&p))
        }
        Command::Aggregate {
            rule,
            tiebreak,
            tiebreak_seed,
            profile,
        } => {
            let rule: RuleId = rule.parse()?;
            let p = read_profile(&profile)?;
            let m = p.num_candidates();
            let tie = match (tiebreak, tiebreak_seed) {
                (Some(list), _) => TieBreakOrder::new(Ranking::from_indices(&parse_list(&list)?)?),
                (None, Some(seed)) => {
                    let mut order: Vec<usize> = (0..m).collect();
                    order.shuffle(&mut stream_rng(seed, 0));
                    TieBreakOrder::new(Ranking::from_indices(&order)?)
                }
                (None, None) => TieBreakOrder::identity(m),
            };
            let echo: Vec<String> = tie.ranking().indices().iter().map(|c| c.to_string()).collect();
            writeln!(err, "tiebreak: {}", echo.join(","))?;
            writeln!(out, "{}", run_rule(&rule, &p, &tie)?)?;
            Ok(())
        }
        Command::Enumerate {
            rule,
            limit,
            bound,
            profile,
        } => {
            let rule: RuleId = rule.parse()?;
            let p = read_profile(&profile)?;
            let all = enumerate_selected_bounded(&rule, &p, bound)?;
            for r in all.iter().take(limit.unwrap_or(usize::MAX)) {
                writeln!(out, "{}", r)?;
            }
            Ok(())
        }
        Command::Determine {
            rule,
            candidate,
            position,
            mode,
            algo,
            profile,
        } => {
            let rule: RuleId = rule.parse()?;
            let mode: Mode = mode.parse()?;
            let algo: Algorithm = algo.parse()?;
            let p = read_profile(&profile)?;
            let q = DeterminationQuery::new(rule.clone(), Candidate(candidate), position, mode);
            let ans = decide(&p, &q, algo, &Limits::default())?;
            match ans.witness {
                Some(w) if ans.holds => {
                    writeln!(out, "YES")?;
                    let order: Vec<String> = elimination_order(&rule, &w).iter().map(|c| c.to_string()).collect();
                    writeln!(out, "{}", order.join(" "))?;
                    writeln!(err, "ranking: {}", w)?;
                }
                _ => writeln!(out, "NO")?,
            }
            Ok(())
        }
        Command::Kemeny { limit, bound, profile } => {
            let p = read_profile(&profile)?;
            let res = kemeny_rankings_limited(&p, bound, limit)?;
            writeln!(out, "optimum: {}", res.optimum)?;
            for r in &res.rankings {
                writeln!(out, "{}", r)?;
            }
            Ok(())
        }
        Command::Realize { mode, input, o } => {
            let text = read(&input)?;
            let p = match mode {
                RealizeMode::Mcgarvey => mcgarvey_realize(&parse_graph(&text)?)?,
                RealizeMode::Bilevel => bilevel_realize(&parse_bilevel(&text)?),
            };
            emit(out, o.as_deref(), &serialize_profile(&p))
        }
        Command::Reduce { kind, input, o } => {
            let text = read(&input)?;
            let red: Reduction = match kind {
                ReductionType::StvSat => stv_from_sat(&parse_dimacs_cnf(&text)?)?,
                ReductionType::StvVc | ReductionType::BaldwinVc | ReductionType::CoombsClique => {
                    let g = parse_graph_instance(&text)?;
                    let t = g
                        .target
                        .ok_or_else(|| Error::Config("graph instance needs a target line \"t k\"".into()))?;
                    match kind {
                        ReductionType::StvVc => stv_from_cubic_vc(&g, t)?,
                        ReductionType::BaldwinVc => baldwin8_from_cubic_vc(&g, t)?,
                        _ => coombs_from_regular_clique(&g, t)?,
                    }
                }
                ReductionType::SeqwivetoHs => seqwi_veto_topk_from_hitting_set(&parse_hitting_set(&text)?)?,
            };
            let q = &red.query;
            let mode = match q.mode {
                Mode::Exact => "exact",
                Mode::TopK => "topk",
            };
            let line = format!("rule={} candidate={} position={} mode={}", q.rule, q.d.0, q.k, mode);
            if o.is_some() {
                writeln!(out, "{}", line)?;
            }
            let text = format!("# query: {}\n{}", line, serialize_profile(&red.profile));
            emit(out, o.as_deref(), &text)
        }
        Command::Axioms {
            axiom,
            rule,
            search,
            budget,
            seed,
            m_max,
            n_max,
            check,
            clones,
        } => {
            let axiom: AxiomId = axiom.parse()?;
            let rule: RuleId = rule.parse()?;
            if search {
                let seed = seed.ok_or_else(|| Error::Config("--search needs --seed".into()))?;
                let res = search_counterexample(axiom, &rule, SearchSpace { m_max, n_max }, budget, seed)?;
                match res.counterexample {
                    Some(cx) => {
                        writeln!(out, "VIOLATED")?;
                        writeln!(out, "# {}", cx.detail)?;
                        match &cx.witness {
                            Witness::Single(p) => write!(out, "{}", serialize_profile(p))?,
                            Witness::Pair(p, q) => {
                                write!(out, "{}", serialize_profile(p))?;
                                writeln!(out, "# second profile")?;
                                write!(out, "{}", serialize_profile(q))?;
                            }
                            Witness::Clones(p, c) => {
                                let c: Vec<String> = c.iter().map(|c| c.to_string()).collect();
                                writeln!(out, "# clones: {}", c.join(","))?;
                                write!(out, "{}", serialize_profile(p))?;
                            }
                        }
                    }
                    None => writeln!(out, "NOT FOUND ({} effective trials)", res.effective_trials)?,
                }
                return Ok(());
            }
            let profiles = check.iter().map(|p| read_profile(p)).collect::<Result<Vec<_>>>()?;
            let witness = match (axiom, profiles.as_slice()) {
                (a, [p, q]) if a.is_binary() => Witness::Pair(p.clone(), q.clone()),
                (AxiomId::IndependenceClonesTop, [p]) => {
                    let c = clones.ok_or_else(|| Error::Config("clones-top needs --clones".into()))?;
                    Witness::Clones(p.clone(), parse_list(&c)?.into_iter().map(Candidate).collect())
                }
                (a, [p]) if !a.is_binary() => Witness::Single(p.clone()),
                _ => {
                    return Err(Error::Config(format!(
                        "axiom {} needs {} profile file(s) via --check",
                        axiom,
                        if axiom.is_binary() { 2 } else { 1 }
                    )))
                }
            };
            match check_axiom_instance(axiom, &rule, &witness)? {
                Verdict::Holds => writeln!(out, "HOLDS")?,
                Verdict::Vacuous => writeln!(out, "VACUOUS")?,
                Verdict::Violated(d) => writeln!(out, "VIOLATED\n# {}", d)?,
            }
            Ok(())
        }
        Command::Experiment { config, o } => {
            let cfg = ExperimentConfig::load(&config)?;
            for path in write_experiment(&cfg, &o)? {
                writeln!(out, "{}", path.display())?;
            }
            Ok(())
        }
    }
}
