//! Profiles built by the hardness reductions.
//!
//! Wherever a construction leaves the filler "…" open, the unmentioned
//! candidates are listed in ascending index order. Every generator numbers
//! `d` as candidate 0, so this order also ranks `d` first among fillers
//! where a proof asks for that.

use std::collections::BTreeMap;

use super::instances::{GraphInstance, HittingSetInstance, SatFormula};
use crate::determination::{DeterminationQuery, Mode};
use crate::error::{Error, Result};
use crate::majority::{sum_bilevel_realize, BilevelGraph};
use crate::profile::Profile;
use crate::ranking::{Candidate, Ranking};
use crate::rules::RuleId;

/// A generated profile together with the determination question that is
/// equivalent to the source instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub profile: Profile,
    pub query: DeterminationQuery,
}

impl Reduction {
    pub fn designated(&self) -> Candidate {
        self.query.d
    }
}

/// Accumulates votes given by their explicit head or tail.
struct VoteBuilder {
    m: usize,
    groups: BTreeMap<Vec<usize>, u64>,
}

impl VoteBuilder {
    fn new(m: usize) -> Self {
        VoteBuilder { m, groups: BTreeMap::new() }
    }

    fn fillers(&self, fixed: &[usize]) -> Vec<usize> {
        (0..self.m).filter(|c| !fixed.contains(c)).collect()
    }

    /// `count` voters `head ≻ …`.
    fn top(&mut self, count: u64, head: &[usize]) {
        let mut v = head.to_vec();
        v.extend(self.fillers(head));
        self.add(count, v);
    }

    /// `count` voters `… ≻ tail`.
    fn bottom(&mut self, count: u64, tail: &[usize]) {
        let mut v = self.fillers(tail);
        v.extend_from_slice(tail);
        self.add(count, v);
    }

    fn add(&mut self, count: u64, vote: Vec<usize>) {
        if count > 0 {
            *self.groups.entry(vote).or_insert(0) += count;
        }
    }

    fn finish(self, names: Vec<String>) -> Profile {
        let groups = self
            .groups
            .into_iter()
            .map(|(v, c)| (c, Ranking::from_order_unchecked(v.into_iter().map(Candidate).collect())))
            .collect();
        Profile::new(self.m, groups)
            .and_then(|p| p.with_names(names))
            .expect("generated votes are permutations")
    }
}

/// STV winner determination from restricted SAT. Candidates: `d`, `w`,
/// one per clause, then `x_i`, `¬x_i` for each variable.
pub fn stv_from_sat(phi: &SatFormula) -> Result<Reduction> {
    phi.check_restricted()?;
    let nc = phi.clauses.len();
    let m = 2 + nc + 2 * phi.num_vars;
    let (d, w) = (0, 1);
    let clause = |j: usize| 2 + j;
    let literal = |lit: i32| 2 + nc + 2 * (lit.unsigned_abs() as usize - 1) + usize::from(lit < 0);
    let mut b = VoteBuilder::new(m);
    b.top(100, &[d]);
    b.top(99, &[w, d]);
    for j in 0..nc {
        b.top(98, &[clause(j), w, d]);
    }
    for v in 1..=phi.num_vars as i32 {
        for lit in [v, -v] {
            b.top(60, &[literal(lit), literal(-lit), w, d]);
        }
    }
    for (j, cl) in phi.clauses.iter().enumerate() {
        for &lit in cl {
            b.top(2, &[literal(lit), clause(j), w, d]);
        }
    }
    let mut names = vec!["d".to_string(), "w".to_string()];
    names.extend((1..=nc).map(|j| format!("c{}", j)));
    for v in 1..=phi.num_vars {
        names.push(format!("x{}", v));
        names.push(format!("~x{}", v));
    }
    Ok(Reduction {
        profile: b.finish(names),
        query: DeterminationQuery::winner(RuleId::stv(), d),
    })
}

fn require_cubic(g: &GraphInstance) -> Result<()> {
    if !g.is_cubic() {
        return Err(Error::Domain("the reduction needs a cubic graph".into()));
    }
    Ok(())
}

fn require_target(t: usize, q: usize) -> Result<()> {
    if t > q {
        return Err(Error::Domain(format!("cover size {} exceeds the {} vertices", t, q)));
    }
    Ok(())
}

/// STV winner determination from cubic vertex cover, on `2q + |E| + 3`
/// candidates: `d`, `w`, `q`, then `v_i, v'_i` per vertex, then one per edge.
pub fn stv_from_cubic_vc(g: &GraphInstance, t: usize) -> Result<Reduction> {
    require_cubic(g)?;
    require_target(t, g.q)?;
    let n = g.q as u64;
    let t = t as u64;
    let m = 2 * g.q + g.edges.len() + 3;
    let (d, w, qc) = (0, 1, 2);
    let v = |i: usize| 3 + 2 * i;
    let v_prime = |i: usize| 4 + 2 * i;
    let edge = |j: usize| 3 + 2 * g.q + j;
    let mut b = VoteBuilder::new(m);
    b.top(105 * n, &[d, w]);
    b.top(99 * n, &[w, d]);
    for j in 0..g.edges.len() {
        b.top(99 * n - 1, &[edge(j), w, d]);
    }
    b.top(99 * n - 3 * (n - t), &[qc, w, d]);
    for i in 0..g.q {
        b.top(60 * n - 3, &[v(i), v_prime(i), w, d]);
        for j in g.incident(i) {
            b.top(1, &[v(i), edge(j), w, d]);
        }
        b.top(60 * n - 3, &[v_prime(i), v(i), w, d]);
        b.top(3, &[v_prime(i), qc, w, d]);
    }
    let mut names = vec!["d".to_string(), "w".to_string(), "q".to_string()];
    for i in 1..=g.q {
        names.push(format!("v{}", i));
        names.push(format!("v'{}", i));
    }
    names.extend(g.edges.iter().map(|(a, c)| format!("e{}-{}", a + 1, c + 1)));
    Ok(Reduction {
        profile: b.finish(names),
        query: DeterminationQuery::winner(RuleId::stv(), d),
    })
}

/// Coombs winner determination from regular clique, on `2q + 2`
/// candidates: `d`, `w`, the vertices, then one dummy `s_v` per vertex.
pub fn coombs_from_regular_clique(g: &GraphInstance, k: usize) -> Result<Reduction> {
    let r = g
        .regular_degree()
        .ok_or_else(|| Error::Domain("the reduction needs a regular graph".into()))? as u64;
    if k < 3 || k > g.q {
        return Err(Error::Domain(format!("clique size {} outside 3..={}", k, g.q)));
    }
    let m = 2 * g.q + 2;
    let (d, w) = (0, 1);
    let vert = |i: usize| 2 + i;
    let dummy = |i: usize| 2 + g.q + i;
    let kk = (k * (k - 2)) as u64;
    let mut b = VoteBuilder::new(m);
    b.bottom(kk + r + 1, &[d]);
    b.bottom(r + 1, &[w]);
    for i in 0..g.q {
        b.bottom(kk, &[dummy(i), vert(i)]);
        b.bottom(1, &[d, vert(i)]);
    }
    for &(a, c) in &g.edges {
        b.bottom(1, &[w, vert(a), vert(c)]);
        b.bottom(1, &[w, vert(c), vert(a)]);
    }
    let mut names = vec!["d".to_string(), "w".to_string()];
    names.extend((1..=g.q).map(|i| format!("v{}", i)));
    names.extend((1..=g.q).map(|i| format!("s{}", i)));
    Ok(Reduction {
        profile: b.finish(names),
        query: DeterminationQuery::winner(RuleId::coombs(), d),
    })
}

/// Candidate layout of the 8-voter Baldwin construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaldwinLayout {
    pub d: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub b: Vec<usize>,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub h: Vec<usize>,
    pub k: Vec<usize>,
    pub m: usize,
}

impl BaldwinLayout {
    pub fn new(q: usize, num_edges: usize, t: usize) -> Self {
        let mut next = 1;
        let mut take = |len: usize| {
            let block: Vec<usize> = (next..next + len).collect();
            next += len;
            block
        };
        let vertices = take(q);
        let edges = take(num_edges);
        let b = take(4);
        let f = take(q - t + 8);
        let g = take(1);
        let h = take(4);
        let k = take(5);
        BaldwinLayout {
            d: 0,
            vertices,
            edges,
            b,
            f,
            g,
            h,
            k,
            m: next,
        }
    }
}

fn cands(v: &[usize]) -> Vec<Candidate> {
    v.iter().copied().map(Candidate).collect()
}

/// The four bilevel arc sets whose sum is the Baldwin majority graph. The
/// edges at each vertex are labelled 1, 2, 3 in ascending edge order.
pub fn baldwin_bilevel_parts(g: &GraphInstance, layout: &BaldwinLayout) -> Result<Vec<BilevelGraph>> {
    let m = layout.m;
    let mut hg = layout.h.clone();
    hg.extend(&layout.g);
    let mut parts = vec![BilevelGraph::new(
        m,
        vec![
            (cands(&layout.b), cands(&layout.vertices)),
            (cands(&hg), cands(&layout.edges)),
        ],
    )?];
    let extra = [
        (cands(&layout.f), cands(&layout.b)),
        (cands(&layout.k), cands(&layout.h)),
        (cands(&layout.h), vec![Candidate(layout.d)]),
    ];
    for (label, tail) in extra.into_iter().enumerate() {
        // group the arcs (e_v^label, v) by edge so blocks stay disjoint
        let mut by_edge: BTreeMap<usize, Vec<Candidate>> = BTreeMap::new();
        for v in 0..g.q {
            let e = g.incident(v)[label];
            by_edge.entry(e).or_default().push(Candidate(layout.vertices[v]));
        }
        let mut blocks: Vec<(Vec<Candidate>, Vec<Candidate>)> = by_edge
            .into_iter()
            .map(|(e, vs)| (vec![Candidate(layout.edges[e])], vs))
            .collect();
        blocks.push(tail);
        parts.push(BilevelGraph::new(m, blocks)?);
    }
    Ok(parts)
}

/// Baldwin winner determination from cubic vertex cover with exactly 8
/// voters. Candidates: `d`, vertices, edges, then the dummy groups
/// `B` (4), `F` (q − t + 8), `G` (1), `H` (4), `K` (5).
pub fn baldwin8_from_cubic_vc(g: &GraphInstance, t: usize) -> Result<Reduction> {
    require_cubic(g)?;
    require_target(t, g.q)?;
    let layout = BaldwinLayout::new(g.q, g.edges.len(), t);
    let parts = baldwin_bilevel_parts(g, &layout)?;
    let mut names = vec![String::new(); layout.m];
    names[0] = "d".into();
    let groups: [(&str, &Vec<usize>); 5] = [("b", &layout.b), ("f", &layout.f), ("g", &layout.g), ("h", &layout.h), ("k", &layout.k)];
    for (i, &c) in layout.vertices.iter().enumerate() {
        names[c] = format!("v{}", i + 1);
    }
    for (j, &c) in layout.edges.iter().enumerate() {
        let (a, b) = g.edges[j];
        names[c] = format!("e{}-{}", a + 1, b + 1);
    }
    for (prefix, block) in groups {
        for (i, &c) in block.iter().enumerate() {
            names[c] = format!("{}{}", prefix, i + 1);
        }
    }
    let profile = sum_bilevel_realize(layout.m, &parts)?.with_names(names)?;
    Ok(Reduction {
        profile,
        query: DeterminationQuery::winner(RuleId::baldwin(), layout.d),
    })
}

/// The elimination order from the forward direction of the Baldwin proof
/// for a vertex cover `cover` of size exactly `t`: the cover, then `B`,
/// then the edges (doubly covered first), then `H`, `F`, `G`, `K`, and `d`.
pub fn baldwin8_cover_order(g: &GraphInstance, t: usize, cover: &[usize]) -> Result<Vec<Candidate>> {
    if cover.len() != t {
        return Err(Error::Domain(format!("cover has {} vertices, expected {}", cover.len(), t)));
    }
    let layout = BaldwinLayout::new(g.q, g.edges.len(), t);
    let mut order: Vec<usize> = cover.iter().map(|&v| layout.vertices[v]).collect();
    order.extend(&layout.b);
    let covered = |j: usize| usize::from(cover.contains(&g.edges[j].0)) + usize::from(cover.contains(&g.edges[j].1));
    let mut edges: Vec<usize> = (0..g.edges.len()).collect();
    if edges.iter().any(|&j| covered(j) == 0) {
        return Err(Error::Domain("the given vertex set is not a cover".into()));
    }
    edges.sort_by_key(|&j| std::cmp::Reverse(covered(j)));
    order.extend(edges.iter().map(|&j| layout.edges[j]));
    order.extend(&layout.h);
    let rest: Vec<usize> = (0..g.q).filter(|v| !cover.contains(v)).map(|v| layout.vertices[v]).collect();
    order.extend(rest);
    order.extend(&layout.f);
    order.extend(&layout.g);
    order.extend(&layout.k);
    order.push(layout.d);
    Ok(order.into_iter().map(Candidate).collect())
}

/// Sequential-Veto-Winner Top-k determination from hitting set with
/// `k = target + 1`. Candidates: `d`, `b`, one per element, one per set.
pub fn seqwi_veto_topk_from_hitting_set(inst: &HittingSetInstance) -> Result<Reduction> {
    let nu = inst.universe as u64;
    let mu = inst.sets.len() as u64;
    let l = inst.target as u64;
    let m = 2 + inst.universe + inst.sets.len();
    let (d, b) = (0, 1);
    let elem = |u: usize| 2 + u;
    let set = |s: usize| 2 + inst.universe + s;
    let mut builder = VoteBuilder::new(m);
    let mut bottom = Vec::with_capacity(inst.universe);
    for u in 0..inst.universe {
        let mut count = 0u64;
        for (s, members) in inst.sets.iter().enumerate() {
            if members.contains(&u) {
                builder.bottom(1, &[b, set(s), elem(u)]);
                count += 1;
            }
        }
        for u2 in (0..inst.universe).filter(|&x| x != u) {
            builder.bottom(1, &[b, elem(u2), elem(u)]);
            count += 1;
        }
        bottom.push(count);
    }
    for s in 0..inst.sets.len() {
        builder.bottom(nu + mu + l - 1, &[b, set(s)]);
    }
    builder.bottom(nu + mu + l, &[d]);
    builder.bottom(nu + mu + l + 1, &[b]);
    for (u, used) in bottom.into_iter().enumerate() {
        builder.bottom(nu + mu - used, &[b, elem(u)]);
    }
    let mut names = vec!["d".to_string(), "b".to_string()];
    names.extend((1..=inst.universe).map(|u| format!("c{}", u)));
    names.extend((1..=inst.sets.len()).map(|s| format!("S{}", s)));
    Ok(Reduction {
        profile: builder.finish(names),
        query: DeterminationQuery::new(
            RuleId::SeqWinner(crate::scoring::ScoringSystem::Veto),
            Candidate(d),
            inst.target + 1,
            Mode::TopK,
        ),
    })
}
