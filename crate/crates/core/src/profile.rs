//! Multiplicity-compressed ranking profiles and their text format.
//!
//! The text format is line based:
//!
//! ```text
//! # optional comments
//! 3 3
//! names: a b c
//! 3: 0 1 2
//! 2: 1 2 0
//! 2: 2 1 0
//! ```
//!
//! The header is `m g`; each of the `g` group lines is `count: i_1 … i_m`
//! with 0-based candidate indices, most preferred first. The `names:` line is
//! optional and must directly follow the header.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ranking::{Candidate, Ranking};

/// A list of rankings over a common candidate set, stored as
/// `(multiplicity, ranking)` groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    m: usize,
    groups: Vec<(u64, Ranking)>,
    names: Option<Vec<String>>,
}

impl Profile {
    pub fn new(m: usize, groups: Vec<(u64, Ranking)>) -> Result<Self> {
        for (count, r) in &groups {
            if *count == 0 {
                return Err(Error::Domain("group multiplicity must be positive".into()));
            }
            if r.len() != m {
                return Err(Error::Dimension(format!(
                    "ranking over {} candidates in a profile over {}",
                    r.len(),
                    m
                )));
            }
        }
        Ok(Profile {
            m,
            groups,
            names: None,
        })
    }

    /// One voter per ranking.
    pub fn from_rankings(m: usize, rankings: impl IntoIterator<Item = Ranking>) -> Result<Self> {
        Profile::new(m, rankings.into_iter().map(|r| (1, r)).collect())
    }

    /// Convenience constructor from `(count, indices)` pairs.
    pub fn from_groups(m: usize, groups: &[(u64, &[usize])]) -> Result<Self> {
        let groups = groups
            .iter()
            .map(|(c, v)| Ok((*c, Ranking::from_indices(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Profile::new(m, groups)
    }

    /// A profile with no voters.
    pub fn empty(m: usize) -> Self {
        Profile {
            m,
            groups: Vec::new(),
            names: None,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.m {
            return Err(Error::Dimension(format!(
                "{} names for {} candidates",
                names.len(),
                self.m
            )));
        }
        if names.iter().any(|s| s.is_empty() || s.chars().any(char::is_whitespace)) {
            return Err(Error::Domain("candidate names must be non-empty tokens".into()));
        }
        self.names = Some(names);
        Ok(self)
    }

    #[inline]
    pub fn num_candidates(&self) -> usize {
        self.m
    }

    /// Total voter count (sum of multiplicities).
    pub fn num_voters(&self) -> u64 {
        self.groups.iter().map(|(c, _)| c).sum()
    }

    #[inline]
    pub fn groups(&self) -> &[(u64, Ranking)] {
        &self.groups
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name_of(&self, c: Candidate) -> String {
        match &self.names {
            Some(n) => n[c.0].clone(),
            None => c.0.to_string(),
        }
    }

    pub fn candidates(&self) -> impl Iterator<Item = Candidate> {
        (0..self.m).map(Candidate)
    }

    /// Every voter's ranking, multiplicities expanded.
    pub fn voters(&self) -> impl Iterator<Item = &Ranking> {
        self.groups
            .iter()
            .flat_map(|(c, r)| std::iter::repeat_n(r, *c as usize))
    }

    /// Concatenation `P + P'`.
    pub fn concat(&self, other: &Profile) -> Result<Profile> {
        if self.m != other.m {
            return Err(Error::Dimension(format!(
                "profiles over {} and {} candidates",
                self.m, other.m
            )));
        }
        let mut groups = self.groups.clone();
        groups.extend(other.groups.iter().cloned());
        Ok(Profile {
            m: self.m,
            groups,
            names: self.names.clone(),
        })
    }

    /// `k` concatenated copies of the profile.
    pub fn repeat(&self, k: u64) -> Profile {
        Profile {
            m: self.m,
            groups: if k == 0 {
                Vec::new()
            } else {
                self.groups.iter().map(|(c, r)| (c * k, r.clone())).collect()
            },
            names: self.names.clone(),
        }
    }

    /// Every ranking reversed.
    pub fn reversed(&self) -> Profile {
        Profile {
            m: self.m,
            groups: self
                .groups
                .iter()
                .map(|(c, r)| (*c, r.reversed()))
                .collect(),
            names: self.names.clone(),
        }
    }

    /// Restricts every ranking to `keep`.
    ///
    /// Surviving candidates are renumbered densely in ascending order of their
    /// old index; the returned table maps old index to new index.
    pub fn restrict(&self, keep: &[Candidate]) -> Result<(Profile, Vec<Option<usize>>)> {
        if keep.is_empty() {
            return Err(Error::Domain("cannot restrict to an empty candidate set".into()));
        }
        let mut map = vec![None; self.m];
        for c in keep {
            if c.0 >= self.m {
                return Err(Error::Domain(format!("candidate {} out of range", c.0)));
            }
            map[c.0] = Some(0);
        }
        let mut next = 0;
        for slot in map.iter_mut() {
            if slot.is_some() {
                *slot = Some(next);
                next += 1;
            }
        }
        let groups = self
            .groups
            .iter()
            .map(|(count, r)| {
                let order = r
                    .order()
                    .iter()
                    .filter_map(|c| map[c.0].map(Candidate))
                    .collect();
                (*count, Ranking::from_order_unchecked(order))
            })
            .collect();
        let names = self.names.as_ref().map(|names| {
            (0..self.m)
                .filter(|&i| map[i].is_some())
                .map(|i| names[i].clone())
                .collect()
        });
        Ok((
            Profile {
                m: next,
                groups,
                names,
            },
            map,
        ))
    }

    /// Merges duplicate rankings and sorts groups by ranking.
    pub fn canonical(&self) -> Profile {
        let mut merged: BTreeMap<Ranking, u64> = BTreeMap::new();
        for (c, r) in &self.groups {
            *merged.entry(r.clone()).or_insert(0) += c;
        }
        Profile {
            m: self.m,
            groups: merged.into_iter().map(|(r, c)| (c, r)).collect(),
            names: self.names.clone(),
        }
    }

    /// Relabels candidates via the bijection `map` (old index -> new index).
    pub fn relabel(&self, map: &[usize]) -> Profile {
        Profile {
            m: self.m,
            groups: self
                .groups
                .iter()
                .map(|(c, r)| (*c, r.relabel(map)))
                .collect(),
            names: self.names.as_ref().map(|names| {
                let mut out = vec![String::new(); names.len()];
                for (old, name) in names.iter().enumerate() {
                    out[map[old]] = name.clone();
                }
                out
            }),
        }
    }
}

/// Parses the profile text format described in the module docs.
pub fn parse_profile(text: &str) -> Result<Profile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header line \"m g\""))?;
    let mut parts = header.split_whitespace();
    let (m, g) = match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => (
            a.parse::<usize>()
                .map_err(|_| Error::parse(hline, format!("bad candidate count {:?}", a)))?,
            b.parse::<usize>()
                .map_err(|_| Error::parse(hline, format!("bad group count {:?}", b)))?,
        ),
        _ => return Err(Error::parse(hline, "header must be \"m g\"")),
    };

    let mut names = None;
    let mut groups = Vec::with_capacity(g);
    for (lineno, line) in lines {
        if let Some(rest) = line.strip_prefix("names:") {
            if names.is_some() || !groups.is_empty() {
                return Err(Error::parse(lineno, "names line must directly follow the header"));
            }
            let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if list.len() != m {
                return Err(Error::parse(
                    lineno,
                    format!("expected {} names, found {}", m, list.len()),
                ));
            }
            names = Some(list);
            continue;
        }
        if groups.len() == g {
            return Err(Error::parse(lineno, format!("more than {} group lines", g)));
        }
        let (count, body) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(lineno, "group line must be \"count: i_1 … i_m\""))?;
        let count: i64 = count
            .trim()
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad count {:?}", count.trim())))?;
        if count <= 0 {
            return Err(Error::parse(lineno, "count must be positive"));
        }
        let mut order = Vec::with_capacity(m);
        for tok in body.split_whitespace() {
            let idx: usize = tok
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad candidate index {:?}", tok)))?;
            if idx >= m {
                return Err(Error::parse(
                    lineno,
                    format!("candidate index {} out of range for m = {}", idx, m),
                ));
            }
            order.push(Candidate(idx));
        }
        if order.len() != m {
            return Err(Error::parse(
                lineno,
                format!("expected {} candidates, found {}", m, order.len()),
            ));
        }
        let ranking = Ranking::new(order)
            .map_err(|_| Error::parse(lineno, "ranking is not a permutation"))?;
        groups.push((count as u64, ranking));
    }
    if groups.len() != g {
        return Err(Error::parse(
            text.lines().count().max(1),
            format!("expected {} group lines, found {}", g, groups.len()),
        ));
    }
    let profile = Profile::new(m, groups)?;
    match names {
        Some(n) => profile.with_names(n),
        None => Ok(profile),
    }
}

/// Serializes the canonical form of `p` (duplicates merged, groups sorted).
pub fn serialize_profile(p: &Profile) -> String {
    let p = p.canonical();
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", p.m, p.groups.len());
    if let Some(names) = &p.names {
        let _ = writeln!(out, "names: {}", names.join(" "));
    }
    for (c, r) in &p.groups {
        let _ = writeln!(out, "{}: {}", c, r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn p0() -> Profile {
        parse_profile("3 3\n3: 0 1 2\n2: 1 2 0\n2: 2 1 0").unwrap()
    }

    #[test]
    fn parses_example_profile() {
        let p = p0();
        assert_eq!(p.num_candidates(), 3);
        assert_eq!(p.num_voters(), 7);
        assert_eq!(p.groups()[1], (2, Ranking::from_indices(&[1, 2, 0]).unwrap()));
    }

    #[test]
    fn parses_single_candidate() {
        let p = parse_profile("1 1\n1: 0").unwrap();
        assert_eq!(p.num_voters(), 1);
        assert_eq!(p.num_candidates(), 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_profile("3 1\n2: 0 0 1").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                message: "ranking is not a permutation".into()
            }
        );
        assert!(matches!(parse_profile("# c\n3 1\n0: 0 1 2"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_profile("3 1\n1: 0 1 5"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_profile("3\n1: 0 1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_profile("3 2\n1: 0 1 2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_profile(""), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn names_round_trip() {
        let p = parse_profile("# demo\n2 1\nnames: x y\n4: 1 0\n").unwrap();
        assert_eq!(p.name_of(Candidate(1)), "y");
        let again = parse_profile(&serialize_profile(&p)).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn serialization_canonicalizes() {
        let p = parse_profile("2 3\n1: 1 0\n2: 0 1\n3: 1 0").unwrap();
        assert_eq!(serialize_profile(&p), "2 2\n2: 0 1\n4: 1 0\n");
    }

    #[test]
    fn reverse_example() {
        let rev = p0().reversed();
        let want = Profile::from_groups(3, &[(3, &[2, 1, 0]), (2, &[0, 2, 1]), (2, &[0, 1, 2])]).unwrap();
        assert_eq!(rev, want);
        assert_eq!(rev.reversed(), p0());
    }

    #[test]
    fn restrict_examples() {
        let single = Profile::from_groups(3, &[(1, &[0, 1, 2])]).unwrap();
        let (r, map) = single.restrict(&[Candidate(0), Candidate(2)]).unwrap();
        assert_eq!(r.groups()[0].1, Ranking::from_indices(&[0, 1]).unwrap());
        assert_eq!(map, vec![Some(0), None, Some(1)]);

        // delete a from P0: b -> 0, c -> 1
        let (r, _) = p0().restrict(&[Candidate(1), Candidate(2)]).unwrap();
        let want = Profile::from_groups(2, &[(3, &[0, 1]), (2, &[0, 1]), (2, &[1, 0])]).unwrap();
        assert_eq!(r, want);

        let all: Vec<_> = p0().candidates().collect();
        assert_eq!(p0().restrict(&all).unwrap().0, p0());
        assert!(matches!(p0().restrict(&[]), Err(Error::Domain(_))));
    }
}
