//! Source-problem instances, their text formats, and exhaustive oracles.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Largest instance (variables, vertices, elements) the oracles accept.
pub const ORACLE_BOUND: usize = 20;

fn check_oracle_bound(what: &str, size: usize) -> Result<()> {
    if size > ORACLE_BOUND {
        return Err(Error::Resource(format!(
            "exhaustive {} search over {} items exceeds the bound of {}",
            what, size, ORACLE_BOUND
        )));
    }
    Ok(())
}

/// CNF formula with DIMACS literals (`v` or `-v`, variables from 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl SatFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for cl in &clauses {
            for &lit in cl {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(Error::Domain(format!("literal {} outside variables 1..={}", lit, num_vars)));
                }
            }
        }
        Ok(SatFormula { num_vars, clauses })
    }

    /// At most three literals per clause and every literal, positive and
    /// negative, occurring exactly twice.
    pub fn check_restricted(&self) -> Result<()> {
        if let Some(cl) = self.clauses.iter().find(|c| c.len() > 3) {
            return Err(Error::Domain(format!("clause {:?} has more than three literals", cl)));
        }
        for v in 1..=self.num_vars as i32 {
            for lit in [v, -v] {
                let occ = self.clauses.iter().flatten().filter(|&&l| l == lit).count();
                if occ != 2 {
                    return Err(Error::Domain(format!("literal {} occurs {} times, expected exactly 2", lit, occ)));
                }
            }
        }
        Ok(())
    }

    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|cl| {
            cl.iter().any(|&lit| {
                let value = assignment >> (lit.unsigned_abs() - 1) & 1 == 1;
                value == (lit > 0)
            })
        })
    }
}

/// Parses DIMACS CNF (`p cnf <vars> <clauses>`, clauses terminated by 0).
pub fn parse_dimacs_cnf(text: &str) -> Result<SatFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 || f[1] != "cnf" {
                return Err(Error::parse(ln, "expected `p cnf <vars> <clauses>`"));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(ln, format!("`{}` is not a count", s)));
            header = Some((num(f[2])?, num(f[3])?));
            continue;
        }
        if header.is_none() {
            return Err(Error::parse(ln, "clause before the `p cnf` header"));
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| Error::parse(ln, format!("`{}` is not a literal", tok)))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| Error::parse(1, "missing `p cnf` header"))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(Error::parse(0, format!("header announces {} clauses, found {}", count, clauses.len())));
    }
    SatFormula::new(vars, clauses)
}

/// Simple undirected graph on vertices `0..q`, with an optional target
/// (cover size or clique size) carried along from instance files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphInstance {
    pub q: usize,
    pub edges: Vec<(usize, usize)>,
    pub target: Option<usize>,
}

impl GraphInstance {
    /// Normalises each edge to `(min, max)`; rejects loops and repeats.
    pub fn new(q: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= q || v >= q {
                return Err(Error::Domain(format!("edge {{{}, {}}} outside {} vertices", u, v, q)));
            }
            if u == v {
                return Err(Error::Domain(format!("loop at vertex {}", u)));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::Domain(format!("edge {{{}, {}}} given twice", e.0, e.1)));
            }
            out.push(e);
        }
        Ok(GraphInstance { q, edges: out, target: None })
    }

    pub fn complete(q: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..q).flat_map(|u| (u + 1..q).map(move |v| (u, v))).collect();
        Self::new(q, &edges).expect("simple")
    }

    pub fn cycle(q: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..q).map(|u| (u, (u + 1) % q)).collect();
        Self::new(q, &edges).expect("simple for q ≥ 3")
    }

    pub fn with_target(mut self, t: usize) -> Self {
        self.target = Some(t);
        self
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// The common degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let r = if self.q == 0 { 0 } else { self.degree(0) };
        (0..self.q).all(|v| self.degree(v) == r).then_some(r)
    }

    pub fn is_cubic(&self) -> bool {
        self.regular_degree() == Some(3)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Indices of the edges incident to `v`, ascending.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&j| self.edges[j].0 == v || self.edges[j].1 == v)
            .collect()
    }
}

/// Parses a DIMACS-style graph: `p edge <vertices> <edges>`, `e u v` lines
/// with 1-based vertices, and an optional `t <int>` target line.
pub fn parse_graph_instance(text: &str) -> Result<GraphInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut target = None;
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let f: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(ln, format!("`{}` is not a non-negative integer", s)));
        match f.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if f.len() != 4 || f[1] != "edge" {
                    return Err(Error::parse(ln, "expected `p edge <vertices> <edges>`"));
                }
                header = Some((num(f[2])?, num(f[3])?));
            }
            Some("e") => {
                if f.len() != 3 {
                    return Err(Error::parse(ln, "expected `e <u> <v>`"));
                }
                let (u, v) = (num(f[1])?, num(f[2])?);
                if u == 0 || v == 0 {
                    return Err(Error::parse(ln, "vertices are numbered from 1"));
                }
                edges.push((u - 1, v - 1));
            }
            Some("t") => {
                if f.len() != 2 {
                    return Err(Error::parse(ln, "expected `t <int>`"));
                }
                target = Some(num(f[1])?);
            }
            Some(other) => return Err(Error::parse(ln, format!("unknown line type `{}`", other))),
        }
    }
    let (q, count) = header.ok_or_else(|| Error::parse(1, "missing `p edge` header"))?;
    if edges.len() != count {
        return Err(Error::parse(0, format!("header announces {} edges, found {}", count, edges.len())));
    }
    let mut g = GraphInstance::new(q, &edges).map_err(|e| match e {
        Error::Domain(msg) => Error::parse(0, msg),
        other => other,
    })?;
    g.target = target;
    Ok(g)
}

/// Universe `0..universe`, a family of subsets, and the target size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSetInstance {
    pub universe: usize,
    pub sets: Vec<BTreeSet<usize>>,
    pub target: usize,
}

impl HittingSetInstance {
    pub fn new(universe: usize, sets: Vec<BTreeSet<usize>>, target: usize) -> Result<Self> {
        if target > universe {
            return Err(Error::Domain(format!(
                "target {} exceeds the universe size {}",
                target, universe
            )));
        }
        if let Some(x) = sets.iter().flatten().find(|&&x| x >= universe) {
            return Err(Error::Domain(format!("element {} outside the universe", x)));
        }
        Ok(HittingSetInstance { universe, sets, target })
    }

    pub fn from_slices(universe: usize, sets: &[&[usize]], target: usize) -> Result<Self> {
        Self::new(universe, sets.iter().map(|s| s.iter().copied().collect()).collect(), target)
    }
}

/// Parses `<universe size> <target>` followed by one set per line as
/// 1-based elements; `-` denotes the empty set.
pub fn parse_hitting_set(text: &str) -> Result<HittingSetInstance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let f: Vec<&str> = header.split_whitespace().collect();
    let num = |ln: usize, s: &str| s.parse::<usize>().map_err(|_| Error::parse(ln, format!("`{}` is not a non-negative integer", s)));
    if f.len() != 2 {
        return Err(Error::parse(ln, "expected `<universe size> <target>`"));
    }
    let (universe, target) = (num(ln, f[0])?, num(ln, f[1])?);
    let mut sets = Vec::new();
    for (ln, line) in lines {
        let mut set = BTreeSet::new();
        if line != "-" {
            for tok in line.split_whitespace() {
                let x = num(ln, tok)?;
                if x == 0 || x > universe {
                    return Err(Error::parse(ln, format!("element {} outside 1..={}", x, universe)));
                }
                set.insert(x - 1);
            }
        }
        sets.push(set);
    }
    HittingSetInstance::new(universe, sets, target).map_err(|e| match e {
        Error::Domain(msg) => Error::parse(0, msg),
        other => other,
    })
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    (0u64..1 << n).filter(move |s| s.count_ones() as usize == k)
}

pub fn sat_brute(phi: &SatFormula) -> Result<bool> {
    check_oracle_bound("assignment", phi.num_vars)?;
    Ok((0u64..1 << phi.num_vars).any(|a| phi.satisfied_by(a)))
}

/// Is there a vertex cover with at most `t` vertices?
pub fn vc_brute(g: &GraphInstance, t: usize) -> Result<bool> {
    check_oracle_bound("vertex cover", g.q)?;
    Ok((0..=t.min(g.q)).any(|k| {
        subsets_of_size(g.q, k).any(|s| g.edges.iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
    }))
}

/// Is there a clique with exactly `k` vertices?
pub fn clique_brute(g: &GraphInstance, k: usize) -> Result<bool> {
    check_oracle_bound("clique", g.q)?;
    if k > g.q {
        return Ok(false);
    }
    Ok(subsets_of_size(g.q, k).any(|s| {
        let vs: Vec<usize> = (0..g.q).filter(|&v| s >> v & 1 == 1).collect();
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.adjacent(u, v)))
    }))
}

/// Is there a hitting set with exactly `target` elements?
pub fn hitting_brute(inst: &HittingSetInstance) -> Result<bool> {
    check_oracle_bound("hitting set", inst.universe)?;
    Ok(subsets_of_size(inst.universe, inst.target)
        .any(|s| inst.sets.iter().all(|set| set.iter().any(|&x| s >> x & 1 == 1))))
}

/// A smallest vertex cover, ascending (used to build proof witnesses).
pub fn min_vertex_cover(g: &GraphInstance) -> Result<Vec<usize>> {
    check_oracle_bound("vertex cover", g.q)?;
    for k in 0..=g.q {
        if let Some(s) = subsets_of_size(g.q, k).find(|s| g.edges.iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1)) {
            return Ok((0..g.q).filter(|&v| s >> v & 1 == 1).collect());
        }
    }
    unreachable!("the full vertex set is a cover")
}
