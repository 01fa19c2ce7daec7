//! Isomorphism-class census of small digraphs, DAGs and undirected graphs.
//!
//! A labeled digraph on `n` vertices is encoded as a bit string over the
//! ordered pairs `(i, j)`, `i ≠ j`, in row-major order with `(0, 1)` as the
//! most significant bit. Its canonical code is the minimum of that encoding
//! over all `n!` relabelings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::digraph::Digraph;
use crate::homology::{betti_curve, HomologyError};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("{family} census supports 1..={max} vertices, got {got}")]
    Size { family: Family, max: usize, got: usize },
    #[error("max_dim {0} exceeds the census limit of 4")]
    MaxDim(usize),
    #[error("unknown family {0:?} (expected digraph, dag or undirected)")]
    UnknownFamily(String),
    #[error("bad filter clause {0:?} (expected e.g. b2>0)")]
    Filter(String),
    #[error("filter refers to b{dim} but max_dim is {max_dim}")]
    FilterDim { dim: usize, max_dim: usize },
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Digraph,
    Dag,
    Undirected,
}

impl Family {
    pub fn max_vertices(self) -> usize {
        match self {
            Family::Digraph => 5,
            Family::Dag | Family::Undirected => 7,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Digraph => "digraph",
            Family::Dag => "dag",
            Family::Undirected => "undirected",
        })
    }
}

impl FromStr for Family {
    type Err = CensusError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "digraph" => Ok(Family::Digraph),
            "dag" => Ok(Family::Dag),
            "undirected" => Ok(Family::Undirected),
            _ => Err(CensusError::UnknownFamily(s.to_string())),
        }
    }
}

/// Ordered pairs in code order: position `k` holds bit `m − 1 − k`.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    let pos = i * (n - 1) + if j > i { j - 1 } else { j };
    (n * (n - 1) - 1 - pos) as u32
}

/// The labeled code of `d`.
pub fn code_of(d: &Digraph) -> u64 {
    let n = d.vertex_count();
    d.arcs().iter().fold(0, |c, &(i, j)| c | 1 << pair_bit(n, i, j))
}

/// Inverse of [`code_of`].
pub fn from_code(n: usize, code: u64) -> Digraph {
    let arcs = pairs(n)
        .into_iter()
        .filter(|&(i, j)| code >> pair_bit(n, i, j) & 1 == 1);
    Digraph::new(n, arcs).expect("pairs in range")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    out.push(p.clone());
    // Heap's algorithm.
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Precomputed relabelings for one vertex count.
pub struct Canonicalizer {
    n: usize,
    /// `bits[π][pair]`: bit position of the image of a pair under π.
    bits: Vec<Vec<u32>>,
}

impl Canonicalizer {
    pub fn new(n: usize) -> Self {
        let ps = pairs(n);
        let bits = permutations(n)
            .into_iter()
            .map(|perm| ps.iter().map(|&(i, j)| pair_bit(n, perm[i], perm[j])).collect())
            .collect();
        Canonicalizer { n, bits }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Minimum code over all relabelings of the labeled code `code`.
    pub fn canonical(&self, code: u64) -> u64 {
        let m = self.n * (self.n - 1);
        let set: Vec<usize> = (0..m).filter(|&k| code >> (m - 1 - k) & 1 == 1).collect();
        self.bits
            .iter()
            .map(|b| set.iter().fold(0u64, |c, &k| c | 1 << b[k]))
            .min()
            .unwrap_or(0)
    }
}

pub fn canonical_code(d: &Digraph) -> u64 {
    Canonicalizer::new(d.vertex_count()).canonical(code_of(d))
}

pub fn canonical_form(d: &Digraph) -> Digraph {
    from_code(d.vertex_count(), canonical_code(d))
}

fn check_size(family: Family, n: usize) -> Result<(), CensusError> {
    if n == 0 || n > family.max_vertices() {
        return Err(CensusError::Size {
            family,
            max: family.max_vertices(),
            got: n,
        });
    }
    Ok(())
}

/// Labeled candidate codes covering every class of the family.
fn candidates(family: Family, n: usize) -> Vec<u64> {
    let expand = |slots: &[(usize, usize)], both: bool| -> Vec<u64> {
        (0u64..1 << slots.len())
            .map(|mask| {
                slots.iter().enumerate().fold(0u64, |c, (k, &(i, j))| {
                    if mask >> k & 1 == 0 {
                        return c;
                    }
                    let c = c | 1 << pair_bit(n, i, j);
                    if both {
                        c | 1 << pair_bit(n, j, i)
                    } else {
                        c
                    }
                })
            })
            .collect()
    };
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    match family {
        Family::Digraph => (0u64..1 << (n * (n - 1))).collect(),
        Family::Dag => expand(&upper, false),
        Family::Undirected => expand(&upper, true),
    }
}

/// Canonical codes of all isomorphism classes, ascending.
pub fn class_codes(family: Family, n: usize) -> Result<Vec<u64>, CensusError> {
    check_size(family, n)?;
    let canon = Canonicalizer::new(n);
    let set = candidates(family, n)
        .into_par_iter()
        .map(|c| canon.canonical(c))
        .fold(BTreeSet::new, |mut s, c| {
            s.insert(c);
            s
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(set.into_iter().collect())
}

/// One canonical representative per isomorphism class, ordered by code.
pub fn enumerate_classes(family: Family, n: usize) -> Result<Vec<Digraph>, CensusError> {
    Ok(class_codes(family, n)?
        .into_iter()
        .map(|c| from_code(n, c))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cmp {
    Gt,
    Ge,
    Lt,
    Le,
    Eq,
    Ne,
}

/// A conjunction of clauses such as `b2>0`, separated by commas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiFilter {
    clauses: Vec<(usize, Cmp, usize)>,
    source: String,
}

impl BettiFilter {
    pub fn max_dim(&self) -> usize {
        self.clauses.iter().map(|c| c.0).max().unwrap_or(0)
    }

    pub fn matches(&self, betti: &[usize]) -> bool {
        self.clauses.iter().all(|&(p, op, v)| {
            let b = betti.get(p).copied().unwrap_or(0);
            match op {
                Cmp::Gt => b > v,
                Cmp::Ge => b >= v,
                Cmp::Lt => b < v,
                Cmp::Le => b <= v,
                Cmp::Eq => b == v,
                Cmp::Ne => b != v,
            }
        })
    }
}

impl fmt::Display for BettiFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl FromStr for BettiFilter {
    type Err = CensusError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut clauses = Vec::new();
        for raw in s.split(',') {
            let clause: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            let bad = || CensusError::Filter(raw.trim().to_string());
            let rest = clause.strip_prefix('b').ok_or_else(bad)?;
            let split = rest.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?;
            let (dim, rest) = rest.split_at(split);
            let (op, value) = [
                (">=", Cmp::Ge),
                ("<=", Cmp::Le),
                ("!=", Cmp::Ne),
                ("==", Cmp::Eq),
                (">", Cmp::Gt),
                ("<", Cmp::Lt),
                ("=", Cmp::Eq),
            ]
            .into_iter()
            .find_map(|(tok, op)| rest.strip_prefix(tok).map(|v| (op, v)))
            .ok_or_else(bad)?;
            clauses.push((
                dim.parse().map_err(|_| bad())?,
                op,
                value.parse().map_err(|_| bad())?,
            ));
        }
        Ok(BettiFilter {
            clauses,
            source: s.trim().to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusQuery {
    pub family: Family,
    pub vertices: usize,
    pub max_dim: usize,
    pub filter: Option<BettiFilter>,
}

impl CensusQuery {
    pub fn new(family: Family, vertices: usize, max_dim: usize) -> Self {
        CensusQuery {
            family,
            vertices,
            max_dim,
            filter: None,
        }
    }

    pub fn with_filter(mut self, filter: BettiFilter) -> Self {
        self.filter = Some(filter);
        self
    }

    fn validate(&self) -> Result<(), CensusError> {
        check_size(self.family, self.vertices)?;
        if self.max_dim > 4 {
            return Err(CensusError::MaxDim(self.max_dim));
        }
        if let Some(f) = &self.filter {
            if f.max_dim() > self.max_dim {
                return Err(CensusError::FilterDim {
                    dim: f.max_dim(),
                    max_dim: self.max_dim,
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusMatch {
    pub code: u64,
    pub digraph: Digraph,
    pub reduced_betti: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusResult {
    pub query: CensusQuery,
    pub total_classes: usize,
    /// Classes passing the filter (all classes without one), by code.
    pub matches: Vec<CensusMatch>,
    /// Reduced Betti vector → number of classes, over all classes.
    pub histogram: BTreeMap<Vec<usize>, usize>,
}

fn arcs_text(d: &Digraph) -> String {
    d.arcs()
        .iter()
        .map(|(u, v)| format!("{u}>{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

impl CensusResult {
    /// `code,arcs,b0,…` with arcs written `u>v`, space separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("code,arcs");
        for p in 0..=self.query.max_dim {
            write!(out, ",b{p}").unwrap();
        }
        out.push('\n');
        for m in &self.matches {
            write!(out, "{},{}", m.code, arcs_text(&m.digraph)).unwrap();
            for b in &m.reduced_betti {
                write!(out, ",{b}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn histogram_json(&self) -> Value {
        let hist: Vec<Value> = self
            .histogram
            .iter()
            .map(|(b, c)| json!({"reduced_betti": b, "classes": c}))
            .collect();
        json!({
            "family": self.query.family,
            "vertices": self.query.vertices,
            "max_dim": self.query.max_dim,
            "filter": self.query.filter.as_ref().map(|f| f.to_string()),
            "total_classes": self.total_classes,
            "matches": self.matches.len(),
            "histogram": hist,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.histogram_json();
        v["classes"] = self
            .matches
            .iter()
            .map(|m| json!({"code": m.code, "arcs": m.digraph.arcs(), "reduced_betti": m.reduced_betti}))
            .collect();
        v
    }
}

pub fn run_census(query: &CensusQuery) -> Result<CensusResult, CensusError> {
    query.validate()?;
    let n = query.vertices;
    let codes = class_codes(query.family, n)?;
    let betti: Vec<Vec<usize>> = codes
        .par_iter()
        .map(|&c| betti_curve(&from_code(n, c), query.max_dim))
        .collect::<Result<_, _>>()?;
    let mut histogram = BTreeMap::new();
    let mut matches = Vec::new();
    for (&code, b) in codes.iter().zip(betti) {
        *histogram.entry(b.clone()).or_insert(0) += 1;
        if query.filter.as_ref().is_none_or(|f| f.matches(&b)) {
            matches.push(CensusMatch {
                code,
                digraph: from_code(n, code),
                reduced_betti: b,
            });
        }
    }
    Ok(CensusResult {
        query: query.clone(),
        total_classes: codes.len(),
        matches,
        histogram,
    })
}
