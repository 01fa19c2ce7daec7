//! Simple digraphs, labels, and the two homology-preserving reductions
//! (leaf pruning and weak-component splitting).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DigraphError {
    #[error("arc ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// A loopless digraph on vertices `0..n` with no parallel arcs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
        }
    }

    /// Builds a digraph; loops are dropped and duplicate arcs merged.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self, DigraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(DigraphError::VertexOutOfRange { u, v, n });
            }
            if u != v {
                set.insert((u, v));
            }
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out[u].push(v);
            inn[v].push(u);
        }
        for l in &mut inn {
            l.sort_unstable();
        }
        Digraph { n, arcs, out, inn }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Out-neighbours of `v` in increasing order.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].binary_search(&v).is_ok()
    }

    /// In-degree plus out-degree; each arc counts once at each endpoint.
    pub fn total_degree(&self, v: usize) -> usize {
        self.out[v].len() + self.inn[v].len()
    }

    /// Applies a vertex relabelling `v ↦ perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.n);
        Digraph::new(self.n, self.arcs.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("permutation stays in range")
    }

    /// The subgraph induced by `vertices` (ascending), reindexed to `0..len`.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|(u, v)| pos[*u] != usize::MAX && pos[*v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        Digraph::new(vertices.len(), arcs).expect("induced arcs in range")
    }

    /// `self` followed by `other`, with `other`'s vertices shifted by `self.n`.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let off = self.n;
        let arcs = self
            .arcs
            .iter()
            .copied()
            .chain(other.arcs.iter().map(|&(u, v)| (u + off, v + off)));
        Digraph::new(self.n + other.n, arcs).expect("union arcs in range")
    }

    pub fn transpose(&self) -> Digraph {
        transpose(self)
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs)
    }
}

/// Bijection between external labels and internal indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap<L> {
    forward: BTreeMap<L, usize>,
    backward: Vec<L>,
}

impl<L: Ord + Clone> VertexMap<L> {
    /// Index `i` gets `labels[i]`. Labels must be distinct.
    pub fn from_labels(labels: Vec<L>) -> Self {
        let forward: BTreeMap<L, usize> =
            labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        assert_eq!(forward.len(), labels.len(), "duplicate labels");
        VertexMap {
            forward,
            backward: labels,
        }
    }

    pub fn index_of(&self, label: &L) -> Option<usize> {
        self.forward.get(label).copied()
    }

    pub fn label(&self, index: usize) -> &L {
        &self.backward[index]
    }

    pub fn labels(&self) -> &[L] {
        &self.backward
    }

    pub fn len(&self) -> usize {
        self.backward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.backward.is_empty()
    }
}

/// A vertex label read from a file: integers sort numerically and before names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Int(i64),
    Name(String),
}

impl FromStr for Label {
    type Err = std::convert::Infallible;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(s.parse::<i64>()
            .map(Label::Int)
            .unwrap_or_else(|_| Label::Name(s.to_string())))
    }
}

impl From<i64> for Label {
    fn from(v: i64) -> Self {
        Label::Int(v)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        s.parse().unwrap()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(v) => write!(f, "{v}"),
            Label::Name(s) => f.write_str(s),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Label::Int(v) => s.serialize_i64(*v),
            Label::Name(n) => s.serialize_str(n),
        }
    }
}

/// Builds a digraph from labelled arcs.
///
/// Vertices are all arc endpoints, indexed in sorted label order. Loops are
/// dropped (their endpoint still becomes a vertex) and parallel arcs merge.
pub fn from_arcs<L: Ord + Clone>(arcs: &[(L, L)]) -> (Digraph, VertexMap<L>) {
    let labels: BTreeSet<&L> = arcs.iter().flat_map(|(u, v)| [u, v]).collect();
    let map = VertexMap::from_labels(labels.into_iter().cloned().collect());
    let mut loops = 0usize;
    let idx: Vec<(usize, usize)> = arcs
        .iter()
        .filter_map(|(u, v)| {
            if u == v {
                loops += 1;
                None
            } else {
                Some((map.forward[u], map.forward[v]))
            }
        })
        .collect();
    if loops > 0 {
        log::debug!("dropped {loops} loop arc(s)");
    }
    let g = Digraph::new(map.len(), idx).expect("indices from map");
    (g, map)
}

/// Parses the edge-list format: two tokens per line, `#` comments.
pub fn parse_edge_list(text: &str) -> Result<Vec<(Label, Label)>, DigraphError> {
    let mut arcs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(DigraphError::Parse {
                line: i + 1,
                msg: format!("expected 2 tokens, found {}", toks.len()),
            });
        }
        arcs.push((Label::from(toks[0]), Label::from(toks[1])));
    }
    Ok(arcs)
}

pub fn read_edge_list(path: &Path) -> Result<(Digraph, VertexMap<Label>), DigraphError> {
    let text = std::fs::read_to_string(path).map_err(|source| DigraphError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(from_arcs(&parse_edge_list(&text)?))
}

/// Renders arcs in the edge-list format using the given labels.
pub fn write_edge_list<L: fmt::Display + Ord + Clone>(d: &Digraph, map: &VertexMap<L>) -> String {
    let mut s = String::new();
    for &(u, v) in d.arcs() {
        s.push_str(&format!("{} {}\n", map.label(u), map.label(v)));
    }
    s
}

/// Weakly connected components, ordered by smallest vertex.
///
/// Each component is reindexed; its map sends local indices back to
/// indices of `d`.
pub fn weak_components(d: &Digraph) -> Vec<(Digraph, VertexMap<usize>)> {
    let mut seen = vec![false; d.n];
    let mut comps = Vec::new();
    for s in 0..d.n {
        if seen[s] {
            continue;
        }
        let mut members = vec![s];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in d.out[v].iter().chain(&d.inn[v]) {
                if !seen[w] {
                    seen[w] = true;
                    members.push(w);
                    q.push_back(w);
                }
            }
        }
        members.sort_unstable();
        comps.push((d.induced(&members), VertexMap::from_labels(members)));
    }
    comps
}

/// Repeatedly deletes vertices of total degree 1 with their arc.
pub fn prune_limbs(d: &Digraph) -> Digraph {
    prune_limbs_with_map(d).0
}

/// As [`prune_limbs`], also returning the surviving vertices of `d` in
/// ascending order (local index `i` is `kept[i]` in `d`).
///
/// A tree component shrinks to a single vertex, never to nothing, so the
/// component count is preserved.
pub fn prune_limbs_with_map(d: &Digraph) -> (Digraph, Vec<usize>) {
    let mut deg: Vec<usize> = (0..d.n).map(|v| d.total_degree(v)).collect();
    let mut alive = vec![true; d.n];
    let mut queue: VecDeque<usize> = (0..d.n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] || deg[v] != 1 {
            continue;
        }
        alive[v] = false;
        deg[v] = 0;
        for &w in d.out[v].iter().chain(&d.inn[v]) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    queue.push_back(w);
                }
            }
        }
    }
    let kept: Vec<usize> = (0..d.n).filter(|&v| alive[v]).collect();
    (d.induced(&kept), kept)
}

pub fn transpose(d: &Digraph) -> Digraph {
    Digraph::new(d.n, d.arcs.iter().map(|&(u, v)| (v, u))).expect("same vertex set")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn from_arcs_strips_loops_and_relabels() {
        let (d, map) = from_arcs(&[(1, 2), (2, 1), (1, 1)]);
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.arcs(), &[(0, 1), (1, 0)]);
        assert_eq!(map.label(0), &1);
        assert_eq!(map.index_of(&2), Some(1));
    }

    #[test]
    fn from_arcs_empty_and_square() {
        let (d, _) = from_arcs::<i64>(&[]);
        assert_eq!((d.vertex_count(), d.arc_count()), (0, 0));
        let (d, _) = from_arcs(&[(1, 2), (1, 3), (2, 4), (3, 4)]);
        assert_eq!((d.vertex_count(), d.arc_count()), (4, 4));
    }

    #[test]
    fn parallel_arcs_merge() {
        let d = g(2, &[(0, 1), (0, 1)]);
        assert_eq!(d.arc_count(), 1);
    }

    #[test]
    fn vertex_map_round_trip() {
        let (_, map) = from_arcs(&[(Label::from("b"), Label::from("7")), (Label::from("a"), Label::from("b"))]);
        for i in 0..map.len() {
            assert_eq!(map.index_of(map.label(i)), Some(i));
        }
        assert_eq!(map.label(0), &Label::Int(7));
    }

    #[test]
    fn out_of_range_is_an_error() {
        assert!(matches!(
            Digraph::new(2, [(0, 2)]),
            Err(DigraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn parse_edge_list_handles_comments_and_errors() {
        let arcs = parse_edge_list("# header\n1 2\n\n2 x\n").unwrap();
        assert_eq!(arcs, vec![(Label::Int(1), Label::Int(2)), (Label::Int(2), Label::Name("x".into()))]);
        let err = parse_edge_list("1 2\n3\n").unwrap_err();
        assert!(matches!(err, DigraphError::Parse { line: 2, .. }));
    }

    #[test]
    fn weak_components_examples() {
        let d1 = g(4, &[(0, 1), (0, 2), (3, 1), (3, 2)]);
        let c = weak_components(&d1);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].0.vertex_count(), 4);

        let two = g(4, &[(0, 2), (2, 0), (1, 3), (3, 1)]);
        let c = weak_components(&two);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].1.labels(), &[0, 2]);
        assert_eq!(c[1].1.labels(), &[1, 3]);
        assert!(c.iter().all(|(d, _)| d.vertex_count() == 2 && d.arc_count() == 2));

        assert!(weak_components(&Digraph::empty(0)).is_empty());
    }

    #[test]
    fn prune_examples() {
        let path = g(3, &[(0, 1), (1, 2)]);
        let p = prune_limbs(&path);
        assert_eq!(p.arc_count(), 0);
        assert_eq!(p.vertex_count(), 1);

        let tail = g(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        assert_eq!(prune_limbs(&tail), g(3, &[(0, 1), (1, 2), (2, 0)]));

        // W₂: a=0, b=1, leaves 2, 3.
        let w2 = g(4, &[(0, 1), (1, 0), (0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(prune_limbs(&w2), w2);
    }

    #[test]
    fn reciprocal_pair_is_not_a_limb() {
        let dyad = g(2, &[(0, 1), (1, 0)]);
        assert_eq!(prune_limbs(&dyad), dyad);
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(transpose(&g(2, &[(0, 1)])), g(2, &[(1, 0)]));
        let sym = g(3, &[(0, 1), (1, 0), (1, 2), (2, 1)]);
        assert_eq!(transpose(&sym), sym);
    }
}
