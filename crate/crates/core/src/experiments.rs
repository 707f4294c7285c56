//! Batch simulation: pairwise rule distances, Kemeny comparisons, position
//! displacement and tie-round statistics, written as CSV.
//!
//! Round-based rules share one uniformly random tie-break order per
//! profile; Kemeny draws its own (see [`Instance`]).
//!
//! Every profile and its tie-break orders come from their own seed stream,
//! `(seed, grid_index << 32 | sample)`, and means are summed in sample
//! order, so a rerun with the same configuration reproduces the CSVs byte
//! for byte regardless of thread count.

use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kemeny::DEFAULT_KEMENY_BOUND;
use crate::profile::Profile;
use crate::ranking::{normalized_swap_distance_f64, position_displacement, Candidate, Ranking, TieBreakOrder};
use crate::rules::{run_rule, run_trace, tie_round_count, RuleId};
use crate::sampling::{
    sample_euclidean_with, sample_impartial_culture_with, sample_mallows_with, stream_rng, MallowsParams,
};

pub const DEFAULT_SAMPLES: usize = 2000;

/// One value or a list of values in the config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn values(&self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Parameter: normalized dispersion in [0, 1]; centre is the identity.
    Mallows,
    /// Parameter: dimension of the unit cube.
    Euclidean,
    /// Impartial culture; the parameter is ignored.
    Ic,
}

impl Model {
    fn name(self) -> &'static str {
        match self {
            Model::Mallows => "mallows",
            Model::Euclidean => "euclidean",
            Model::Ic => "ic",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Pairwise,
    Kemeny,
    Displacement,
    Ties,
}

/// Experiment configuration, read from TOML:
///
/// ```toml
/// model = "mallows"
/// params = [0.0, 0.5, 1.0]
/// m = 10            # or a list, for scaling sweeps
/// n = 100           # likewise
/// samples = 2000
/// seed = 7
/// rules = ["seqlose:plurality"]                         # for `ties`
/// pairs = [["seqlose:plurality", "seqwin:plurality"]]   # for the others
/// metrics = ["pairwise", "ties"]
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: Model,
    #[serde(default = "default_params")]
    pub params: Vec<f64>,
    pub m: OneOrMany<usize>,
    pub n: OneOrMany<usize>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    pub seed: u64,
    #[serde(default)]
    pub rules: Vec<String>,
    #[serde(default)]
    pub pairs: Vec<[String; 2]>,
    pub metrics: Vec<Metric>,
}

fn default_params() -> Vec<f64> {
    vec![0.0]
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    fn parsed_pairs(&self) -> Result<Vec<(RuleId, RuleId)>> {
        self.pairs
            .iter()
            .map(|[a, b]| Ok((a.parse()?, b.parse()?)))
            .collect()
    }

    fn parsed_rules(&self) -> Result<Vec<RuleId>> {
        self.rules.iter().map(|r| r.parse()).collect()
    }

    /// Checks everything that can fail before any sampling happens.
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if self.params.is_empty() || self.m.values().is_empty() || self.n.values().is_empty() {
            return Err(Error::Config("params, m and n must be non-empty".into()));
        }
        for &x in &self.params {
            match self.model {
                Model::Mallows if !(0.0..=1.0).contains(&x) => {
                    return Err(Error::Config(format!("normalized dispersion {} outside [0, 1]", x)))
                }
                Model::Euclidean if x < 1.0 || x.fract() != 0.0 => {
                    return Err(Error::Config(format!("Euclidean dimension {} is not a positive integer", x)))
                }
                _ => {}
            }
        }
        let pairs = self.parsed_pairs()?;
        let rules = self.parsed_rules()?;
        for metric in &self.metrics {
            match metric {
                Metric::Ties if rules.is_empty() => {
                    return Err(Error::Config("the ties metric needs a non-empty `rules` list".into()))
                }
                Metric::Ties => {}
                _ if pairs.is_empty() => {
                    return Err(Error::Config(format!("the {:?} metric needs a non-empty `pairs` list", metric)))
                }
                Metric::Kemeny if !pairs.iter().any(|(a, b)| *a == RuleId::Kemeny || *b == RuleId::Kemeny) => {
                    return Err(Error::Config("the kemeny metric needs pairs involving `kemeny`".into()))
                }
                _ => {}
            }
        }
        let uses_kemeny = pairs.iter().any(|(a, b)| *a == RuleId::Kemeny || *b == RuleId::Kemeny)
            || rules.contains(&RuleId::Kemeny);
        for m in self.m.values() {
            if m < 2 {
                return Err(Error::Config("distances need at least 2 candidates".into()));
            }
            if uses_kemeny && m > DEFAULT_KEMENY_BOUND {
                return Err(Error::Resource(format!(
                    "Kemeny over {} candidates exceeds the bound of {}",
                    m, DEFAULT_KEMENY_BOUND
                )));
            }
        }
        if rules.contains(&RuleId::Kemeny) && self.metrics.contains(&Metric::Ties) {
            return Err(Error::Config("tie rounds are defined for score-based rules only".into()));
        }
        Ok(())
    }

    fn grid(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for &param in &self.params {
            for m in self.m.values() {
                for n in self.n.values() {
                    out.push(GridPoint { param, m, n });
                }
            }
        }
        out
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct GridPoint {
    pub param: f64,
    pub m: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairwiseRow {
    pub model: String,
    pub param: f64,
    pub m: usize,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub rule_a: String,
    pub rule_b: String,
    pub mean_norm_swap: f64,
    pub stddev: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisplacementRow {
    pub model: String,
    pub param: f64,
    pub m: usize,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub rule_a: String,
    pub rule_b: String,
    pub position: usize,
    pub mean_displacement: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TieRow {
    pub model: String,
    pub param: f64,
    pub m: usize,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub rule: String,
    pub mean_tie_rounds: f64,
}

/// One sampled profile with its tie-break orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub profile: Profile,
    /// Shared by all round-based rules.
    pub tie: TieBreakOrder,
    /// Drawn independently, so Kemeny's choice among several optimal
    /// rankings is arbitrary rather than aligned with the other rules.
    pub kemeny_tie: TieBreakOrder,
}

impl Instance {
    pub fn output(&self, rule: &RuleId) -> Result<Ranking> {
        let tie = if *rule == RuleId::Kemeny { &self.kemeny_tie } else { &self.tie };
        run_rule(rule, &self.profile, tie)
    }
}

fn uniform_order<R: rand::Rng>(m: usize, rng: &mut R) -> TieBreakOrder {
    let mut order: Vec<Candidate> = (0..m).map(Candidate).collect();
    order.shuffle(rng);
    TieBreakOrder::new(Ranking::from_order_unchecked(order))
}

/// The profile and tie-break orders of one sample.
pub fn sample_instance(cfg: &ExperimentConfig, point: GridPoint, grid_index: usize, sample: usize) -> Result<Instance> {
    let mut rng = stream_rng(cfg.seed, (grid_index as u64) << 32 | sample as u64);
    let p = match cfg.model {
        Model::Mallows => sample_mallows_with(&MallowsParams::identity(point.m, point.param)?, point.n, &mut rng),
        Model::Euclidean => sample_euclidean_with(point.param as usize, point.m, point.n, &mut rng)?,
        Model::Ic => sample_impartial_culture_with(point.m, point.n, &mut rng),
    };
    let tie = uniform_order(point.m, &mut rng);
    let kemeny_tie = uniform_order(point.m, &mut rng);
    Ok(Instance {
        profile: p,
        tie,
        kemeny_tie,
    })
}

/// Per-sample measurements at one grid point.
struct SampleStats {
    distances: Vec<f64>,
    displacement: Vec<Vec<f64>>,
    ties: Vec<f64>,
}

fn measure(
    cfg: &ExperimentConfig,
    point: GridPoint,
    grid_index: usize,
    pairs: &[(RuleId, RuleId)],
    rules: &[RuleId],
    want_displacement: bool,
) -> Result<Vec<SampleStats>> {
    (0..cfg.samples)
        .into_par_iter()
        .map(|s| {
            let inst = sample_instance(cfg, point, grid_index, s)?;
            let mut distances = Vec::with_capacity(pairs.len());
            let mut displacement = Vec::new();
            for (a, b) in pairs {
                let (ra, rb) = (inst.output(a)?, inst.output(b)?);
                distances.push(normalized_swap_distance_f64(&ra, &rb)?);
                if want_displacement {
                    let row = (1..=point.m)
                        .map(|i| {
                            let d = position_displacement(&ra, &rb, i)?;
                            Ok(*d.numer() as f64 / *d.denom() as f64)
                        })
                        .collect::<Result<Vec<f64>>>()?;
                    displacement.push(row);
                }
            }
            let ties = rules
                .iter()
                .map(|r| Ok(tie_round_count(&run_trace(r, &inst.profile, &inst.tie)?) as f64))
                .collect::<Result<Vec<f64>>>()?;
            Ok(SampleStats {
                distances,
                displacement,
                ties,
            })
        })
        .collect()
}

fn mean_std(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.clone().count();
    let mean = xs.clone().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = xs.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

/// Everything one configuration produces.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentOutput {
    pub pairwise: Vec<PairwiseRow>,
    pub kemeny: Vec<PairwiseRow>,
    pub displacement: Vec<DisplacementRow>,
    pub ties: Vec<TieRow>,
}

/// Runs every configured metric, sampling each profile once.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let wants = |m: Metric| cfg.metrics.contains(&m);
    let pairs = if wants(Metric::Pairwise) || wants(Metric::Kemeny) || wants(Metric::Displacement) {
        cfg.parsed_pairs()?
    } else {
        Vec::new()
    };
    let rules = if wants(Metric::Ties) { cfg.parsed_rules()? } else { Vec::new() };
    let model = cfg.model.name().to_string();
    let mut out = ExperimentOutput::default();
    for (gi, point) in cfg.grid().into_iter().enumerate() {
        let stats = measure(cfg, point, gi, &pairs, &rules, wants(Metric::Displacement))?;
        for (k, (a, b)) in pairs.iter().enumerate() {
            let (mean, sd) = mean_std(stats.iter().map(|s| s.distances[k]));
            let row = PairwiseRow {
                model: model.clone(),
                param: point.param,
                m: point.m,
                n: point.n,
                samples: cfg.samples,
                seed: cfg.seed,
                rule_a: a.to_string(),
                rule_b: b.to_string(),
                mean_norm_swap: mean,
                stddev: sd,
            };
            let involves_kemeny = *a == RuleId::Kemeny || *b == RuleId::Kemeny;
            if wants(Metric::Kemeny) && involves_kemeny {
                out.kemeny.push(row.clone());
            }
            if wants(Metric::Pairwise) {
                out.pairwise.push(row);
            }
            if wants(Metric::Displacement) {
                for i in 0..point.m {
                    let (mean, _) = mean_std(stats.iter().map(|s| s.displacement[k][i]));
                    out.displacement.push(DisplacementRow {
                        model: model.clone(),
                        param: point.param,
                        m: point.m,
                        n: point.n,
                        samples: cfg.samples,
                        seed: cfg.seed,
                        rule_a: a.to_string(),
                        rule_b: b.to_string(),
                        position: i + 1,
                        mean_displacement: mean,
                    });
                }
            }
        }
        for (k, r) in rules.iter().enumerate() {
            let (mean, _) = mean_std(stats.iter().map(|s| s.ties[k]));
            out.ties.push(TieRow {
                model: model.clone(),
                param: point.param,
                m: point.m,
                n: point.n,
                samples: cfg.samples,
                seed: cfg.seed,
                rule: r.to_string(),
                mean_tie_rounds: mean,
            });
        }
    }
    Ok(out)
}

fn with_metrics(cfg: &ExperimentConfig, metric: Metric) -> ExperimentConfig {
    ExperimentConfig {
        metrics: vec![metric],
        ..cfg.clone()
    }
}

pub fn run_pairwise_distance(cfg: &ExperimentConfig) -> Result<Vec<PairwiseRow>> {
    Ok(run_experiment(&with_metrics(cfg, Metric::Pairwise))?.pairwise)
}

/// Pairwise distances restricted to pairs with Kemeny on one side.
pub fn run_kemeny_comparison(cfg: &ExperimentConfig) -> Result<Vec<PairwiseRow>> {
    Ok(run_experiment(&with_metrics(cfg, Metric::Kemeny))?.kemeny)
}

pub fn run_position_displacement(cfg: &ExperimentConfig) -> Result<Vec<DisplacementRow>> {
    Ok(run_experiment(&with_metrics(cfg, Metric::Displacement))?.displacement)
}

pub fn run_tie_statistics(cfg: &ExperimentConfig) -> Result<Vec<TieRow>> {
    Ok(run_experiment(&with_metrics(cfg, Metric::Ties))?.ties)
}

pub fn to_csv<T: Serialize>(rows: &[T], header: &[&str]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).map_err(|e| Error::Io(e.to_string()))?;
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub const PAIRWISE_HEADER: [&str; 10] =
    ["model", "param", "m", "n", "samples", "seed", "rule_a", "rule_b", "mean_norm_swap", "stddev"];
pub const DISPLACEMENT_HEADER: [&str; 10] =
    ["model", "param", "m", "n", "samples", "seed", "rule_a", "rule_b", "position", "mean_displacement"];
pub const TIES_HEADER: [&str; 8] = ["model", "param", "m", "n", "samples", "seed", "rule", "mean_tie_rounds"];

#[derive(Serialize)]
struct Metadata<'a> {
    generator: &'a str,
    version: &'a str,
    files: Vec<String>,
    config: &'a ExperimentConfig,
}

/// Runs the experiment and writes `<metric>.csv` for each metric plus a
/// `metadata.toml` echoing the configuration. Returns the written paths.
pub fn write_experiment(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    let out = run_experiment(cfg)?;
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut put = |name: &str, text: String| -> Result<()> {
        let path = dir.join(name);
        fs::write(&path, text)?;
        written.push(path);
        Ok(())
    };
    for metric in &cfg.metrics {
        match metric {
            Metric::Pairwise => put("pairwise.csv", to_csv(&out.pairwise, &PAIRWISE_HEADER)?)?,
            Metric::Kemeny => put("kemeny.csv", to_csv(&out.kemeny, &PAIRWISE_HEADER)?)?,
            Metric::Displacement => put("displacement.csv", to_csv(&out.displacement, &DISPLACEMENT_HEADER)?)?,
            Metric::Ties => put("ties.csv", to_csv(&out.ties, &TIES_HEADER)?)?,
        }
    }
    let files = written
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    let meta = Metadata {
        generator: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        files,
        config: cfg,
    };
    let text = toml::to_string(&meta).map_err(|e| Error::Io(e.to_string()))?;
    let path = dir.join("metadata.toml");
    fs::write(&path, text)?;
    written.push(path);
    Ok(written)
}
