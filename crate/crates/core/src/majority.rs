//! Weighted majority graphs and profiles realizing them.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::{Candidate, Ranking};

/// Pairwise margins: `w(c,d) = |{i : c ≻_i d}| − |{i : d ≻_i c}|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedMajorityGraph {
    m: usize,
    w: Vec<i64>,
}

impl WeightedMajorityGraph {
    pub fn zero(m: usize) -> Self {
        WeightedMajorityGraph { m, w: vec![0; m * m] }
    }

    /// Builds a graph from positive-weight arcs `(c, d, w)`; the reverse arc
    /// gets `−w`.
    pub fn from_arcs(m: usize, arcs: &[(usize, usize, i64)]) -> Result<Self> {
        let mut g = Self::zero(m);
        for &(c, d, w) in arcs {
            if c >= m || d >= m || c == d {
                return Err(Error::Domain(format!("invalid arc {} -> {} over {} candidates", c, d, m)));
            }
            if w <= 0 {
                return Err(Error::Domain(format!("arc {} -> {} has non-positive weight {}", c, d, w)));
            }
            if g.w[c * m + d] != 0 {
                return Err(Error::Domain(format!("arc between {} and {} given twice", c, d)));
            }
            g.w[c * m + d] = w;
            g.w[d * m + c] = -w;
        }
        Ok(g)
    }

    pub fn from_profile(p: &Profile) -> Self {
        let m = p.num_candidates();
        let mut g = Self::zero(m);
        for (count, r) in p.groups() {
            let order = r.order();
            for (i, hi) in order.iter().enumerate() {
                for lo in &order[i + 1..] {
                    g.w[hi.0 * m + lo.0] += *count as i64;
                    g.w[lo.0 * m + hi.0] -= *count as i64;
                }
            }
        }
        g
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn weight(&self, c: Candidate, d: Candidate) -> i64 {
        self.w[c.0 * self.m + d.0]
    }

    /// Arcs with positive weight, in index order.
    pub fn arcs(&self) -> Vec<(Candidate, Candidate, i64)> {
        let mut out = Vec::new();
        for c in 0..self.m {
            for d in 0..self.m {
                let w = self.w[c * self.m + d];
                if w > 0 {
                    out.push((Candidate(c), Candidate(d), w));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.w.iter().all(|&w| w == 0)
    }
}

/// Row sums of the majority graph; equal to `2·Borda(c) − n(m+1)` for the
/// Borda vector `(m, …, 1)`.
pub fn c2_borda_scores(g: &WeightedMajorityGraph) -> Vec<i64> {
    (0..g.m).map(|c| g.w[c * g.m..(c + 1) * g.m].iter().sum()).collect()
}

pub fn weighted_majority_graph(p: &Profile) -> WeightedMajorityGraph {
    WeightedMajorityGraph::from_profile(p)
}

/// McGarvey's construction: each arc `c → d` of weight `2t` becomes `t`
/// pairs `c ≻ d ≻ x₁ ≻ … ≻ x_{m−2}` and `x_{m−2} ≻ … ≻ x₁ ≻ c ≻ d`, with the
/// fillers `x` in ascending index order.
pub fn mcgarvey_realize(g: &WeightedMajorityGraph) -> Result<Profile> {
    let m = g.m;
    let mut groups = Vec::new();
    for (c, d, w) in g.arcs() {
        if w % 2 != 0 {
            return Err(Error::Domain(format!(
                "arc {} -> {} has odd weight {}; only even graphs are realized",
                c, d, w
            )));
        }
        let rest: Vec<Candidate> = (0..m).map(Candidate).filter(|&x| x != c && x != d).collect();
        let mut first = vec![c, d];
        first.extend(rest.iter().copied());
        let mut second: Vec<Candidate> = rest.iter().rev().copied().collect();
        second.extend([c, d]);
        let t = (w / 2) as u64;
        groups.push((t, Ranking::from_order_unchecked(first)));
        groups.push((t, Ranking::from_order_unchecked(second)));
    }
    Profile::new(m, groups)
}

/// Arcs `(C₁ × D₁) ∪ … ∪ (C_s × D_s)`, all of weight 2, over pairwise
/// disjoint blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilevelGraph {
    m: usize,
    blocks: Vec<(Vec<Candidate>, Vec<Candidate>)>,
}

impl BilevelGraph {
    pub fn new(m: usize, blocks: Vec<(Vec<Candidate>, Vec<Candidate>)>) -> Result<Self> {
        let mut seen = vec![false; m];
        for (cs, ds) in &blocks {
            for c in cs.iter().chain(ds) {
                if c.0 >= m {
                    return Err(Error::Domain(format!("candidate {} out of range for {} candidates", c, m)));
                }
                if std::mem::replace(&mut seen[c.0], true) {
                    return Err(Error::Domain(format!("candidate {} appears in two blocks", c)));
                }
            }
        }
        let mut blocks = blocks;
        for (cs, ds) in blocks.iter_mut() {
            cs.sort();
            ds.sort();
        }
        Ok(BilevelGraph { m, blocks })
    }

    pub fn from_indices(m: usize, blocks: &[(&[usize], &[usize])]) -> Result<Self> {
        let conv = |v: &[usize]| v.iter().copied().map(Candidate).collect::<Vec<_>>();
        Self::new(m, blocks.iter().map(|(c, d)| (conv(c), conv(d))).collect())
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn blocks(&self) -> &[(Vec<Candidate>, Vec<Candidate>)] {
        &self.blocks
    }

    pub fn arcs(&self) -> BTreeSet<(Candidate, Candidate)> {
        let mut out = BTreeSet::new();
        for (cs, ds) in &self.blocks {
            for &c in cs {
                for &d in ds {
                    out.insert((c, d));
                }
            }
        }
        out
    }

    pub fn graph(&self) -> WeightedMajorityGraph {
        let arcs: Vec<(usize, usize, i64)> = self.arcs().into_iter().map(|(c, d)| (c.0, d.0, 2)).collect();
        WeightedMajorityGraph::from_arcs(self.m, &arcs).expect("blocks are disjoint")
    }
}

/// The two voters `C₁ D₁ C₂ D₂ … C_s D_s` and
/// `rev(C_s) rev(D_s) … rev(C₁) rev(D₁)`. Candidates outside every block
/// form one more block with empty `D`, so their pairs cancel as well.
pub fn bilevel_realize(b: &BilevelGraph) -> Profile {
    let mut blocks = b.blocks.clone();
    let covered: BTreeSet<Candidate> = blocks.iter().flat_map(|(c, d)| c.iter().chain(d)).copied().collect();
    let rest: Vec<Candidate> = (0..b.m).map(Candidate).filter(|c| !covered.contains(c)).collect();
    if !rest.is_empty() {
        blocks.push((rest, Vec::new()));
    }
    let mut first = Vec::with_capacity(b.m);
    let mut second = Vec::with_capacity(b.m);
    for (cs, ds) in &blocks {
        first.extend(cs.iter().chain(ds));
    }
    for (cs, ds) in blocks.iter().rev() {
        second.extend(cs.iter().rev().chain(ds.iter().rev()));
    }
    Profile::new(
        b.m,
        vec![
            (1, Ranking::from_order_unchecked(first)),
            (1, Ranking::from_order_unchecked(second)),
        ],
    )
    .expect("both voters rank every candidate")
}

/// Concatenates the 2-voter realizations of arc-disjoint bilevel graphs.
pub fn sum_bilevel_realize(m: usize, parts: &[BilevelGraph]) -> Result<Profile> {
    let mut seen: BTreeSet<(Candidate, Candidate)> = BTreeSet::new();
    let mut p = Profile::empty(m);
    for part in parts {
        if part.m != m {
            return Err(Error::Dimension(format!("bilevel part over {} candidates, expected {}", part.m, m)));
        }
        for (c, d) in part.arcs() {
            if seen.contains(&(c, d)) || seen.contains(&(d, c)) {
                return Err(Error::Domain(format!("arc between {} and {} appears in two parts", c, d)));
            }
            seen.insert((c, d));
        }
        p = p.concat(&bilevel_realize(part))?;
    }
    Ok(p)
}

/// Appends `extra_pairs` copies of `r` and `rev(r)` for `r` the identity,
/// leaving the majority graph unchanged.
pub fn padded_opposite_pairs(p: &Profile, extra_pairs: u64) -> Profile {
    if extra_pairs == 0 {
        return p.clone();
    }
    let m = p.num_candidates();
    let r = Ranking::identity(m);
    let pad = Profile::new(m, vec![(extra_pairs, r.reversed()), (extra_pairs, r)]).expect("well-formed");
    p.concat(&pad).expect("same candidate count")
}

/// Parses a graph: first line `m`, then one `c d w` line per positive arc.
/// `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<WeightedMajorityGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let m: usize = header.parse().map_err(|_| Error::parse(ln, "header must be the candidate count"))?;
    let mut arcs = Vec::new();
    for (ln, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 3 {
            return Err(Error::parse(ln, "expected `c d w`"));
        }
        let num = |s: &str| s.parse::<i64>().map_err(|_| Error::parse(ln, format!("`{}` is not an integer", s)));
        let (c, d, w) = (num(f[0])?, num(f[1])?, num(f[2])?);
        if c < 0 || d < 0 {
            return Err(Error::parse(ln, "candidate indices are non-negative"));
        }
        arcs.push((c as usize, d as usize, w));
    }
    WeightedMajorityGraph::from_arcs(m, &arcs).map_err(|e| match e {
        Error::Domain(msg) => Error::Parse { line: 0, message: msg },
        other => other,
    })
}

pub fn serialize_graph(g: &WeightedMajorityGraph) -> String {
    let mut out = format!("{}\n", g.m);
    for (c, d, w) in g.arcs() {
        let _ = writeln!(out, "{} {} {}", c, d, w);
    }
    out
}

/// Parses a bilevel partition: first line `m`, then one block per line as
/// `c₁ c₂ … | d₁ d₂ …` (either side may be empty).
pub fn parse_bilevel(text: &str) -> Result<BilevelGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let m: usize = header.parse().map_err(|_| Error::parse(ln, "header must be the candidate count"))?;
    let mut blocks = Vec::new();
    for (ln, line) in lines {
        let (c, d) = line.split_once('|').ok_or_else(|| Error::parse(ln, "expected `C… | D…`"))?;
        let side = |s: &str| -> Result<Vec<Candidate>> {
            s.split_whitespace()
                .map(|t| t.parse().map(Candidate).map_err(|_| Error::parse(ln, format!("`{}` is not a candidate", t))))
                .collect()
        };
        blocks.push((side(c)?, side(d)?));
    }
    BilevelGraph::new(m, blocks)
}
