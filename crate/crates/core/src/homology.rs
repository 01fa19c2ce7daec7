//! Betti numbers, torsion and cycle representatives of non-regular path homology.
//!
//! All numbers are reduced unless stated otherwise: the complex is augmented
//! by `Ω₀ → 𝔽` sending every vertex to 1. Computation runs per weak component
//! after leaf pruning and is merged at the end.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::digraph::{self, Digraph, VertexMap};
use crate::exactla::{self, ExactMatrix, LinalgError};
use crate::pathcomplex::{PathComplex, PathComplexError};
use crate::Ring;

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error(transparent)]
    PathComplex(#[from] PathComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("representatives need 1 <= p < p_max, got p = {p} with p_max = {p_max}")]
    Dimension { p: usize, p_max: usize },
}

/// An integer chain: allowed paths with nonzero coefficients, sorted by path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub terms: Vec<(Vec<usize>, BigInt)>,
}

impl Chain {
    /// Divides out the content and makes the first coefficient positive.
    fn normalized(mut terms: Vec<(Vec<usize>, BigInt)>) -> Chain {
        use num_integer::Integer;
        terms.sort();
        let g = terms
            .iter()
            .fold(BigInt::from(0), |g, (_, c)| g.gcd(c));
        let flip = terms.first().is_some_and(|(_, c)| c.is_negative());
        for (_, c) in &mut terms {
            *c = &*c / &g;
            if flip {
                *c = -&*c;
            }
        }
        Chain { terms }
    }

    fn from_rational(paths: Vec<Vec<usize>>, coeffs: &[(usize, BigRational)]) -> Chain {
        let ints = crate::exactla::clear_denominators(coeffs);
        Chain::normalized(ints.into_iter().map(|(i, c)| (paths[i].clone(), c)).collect())
    }

    /// Renames vertices; `f` must be injective.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Chain {
        Chain::normalized(
            self.terms
                .iter()
                .map(|(p, c)| (p.iter().map(|&v| f(v)).collect(), c.clone()))
                .collect(),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Vertices touched by the chain, ascending.
    pub fn support_vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.iter().flat_map(|(p, _)| p.iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn to_json<L: Serialize>(&self, label: impl Fn(usize) -> L) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(p, c)| {
                    json!({
                        "path": p.iter().map(|&v| label(v)).collect::<Vec<_>>(),
                        "coef": bigint_json(c),
                    })
                })
                .collect(),
        )
    }
}

pub(crate) fn bigint_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

/// Homology of a digraph through `max_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub max_dim: usize,
    /// β_0..β_max_dim.
    pub betti: Vec<usize>,
    /// β̃_0..β̃_max_dim.
    pub reduced_betti: Vec<usize>,
    /// Invariant factors greater than one of H̃_p over ℤ, by dimension; only nonempty entries.
    pub torsion: BTreeMap<usize, Vec<BigInt>>,
    /// β̃_p representative cycles by dimension, when requested.
    pub representatives: Option<BTreeMap<usize, Vec<Chain>>>,
}

impl HomologySummary {
    fn zeros(max_dim: usize, want_reps: bool) -> Self {
        HomologySummary {
            max_dim,
            betti: vec![0; max_dim + 1],
            reduced_betti: vec![0; max_dim + 1],
            torsion: BTreeMap::new(),
            representatives: want_reps.then(BTreeMap::new),
        }
    }

    /// The JSON summary schema, with vertices rendered through `label`.
    pub fn to_json<L: Serialize>(&self, label: impl Fn(usize) -> L) -> Value {
        let torsion: serde_json::Map<String, Value> = self
            .torsion
            .iter()
            .map(|(p, f)| (p.to_string(), Value::Array(f.iter().map(bigint_json).collect())))
            .collect();
        let mut out = json!({
            "betti": self.betti,
            "reduced_betti": self.reduced_betti,
            "torsion": torsion,
        });
        if let Some(reps) = &self.representatives {
            let reps: serde_json::Map<String, Value> = reps
                .iter()
                .filter(|(_, cs)| !cs.is_empty())
                .map(|(p, cs)| {
                    (
                        p.to_string(),
                        Value::Array(cs.iter().map(|c| c.to_json(&label)).collect()),
                    )
                })
                .collect();
            out["representatives"] = Value::Object(reps);
        }
        out
    }

    pub fn to_json_labeled<L: Serialize + Ord + Clone>(&self, map: &VertexMap<L>) -> Value {
        self.to_json(|v| map.label(v).clone())
    }
}

/// Per-component result before merging.
struct ComponentHomology {
    unreduced: Vec<usize>,
    reduced: Vec<usize>,
    torsion: BTreeMap<usize, Vec<BigInt>>,
    reps: BTreeMap<usize, Vec<Chain>>,
}

fn boundary_ranks(pc: &PathComplex) -> Result<(Vec<usize>, Vec<Vec<BigInt>>), HomologyError> {
    let top = pc.p_max();
    let mut ranks = vec![0; top + 2];
    let mut factors = vec![Vec::new(); top + 2];
    for p in 1..=top {
        match pc.ring() {
            Ring::Rational => ranks[p] = exactla::rank(pc.boundary(p)),
            Ring::Integer => {
                let s = exactla::smith_normal_form(pc.boundary(p), false)?;
                ranks[p] = s.rank;
                factors[p] = s.torsion();
            }
        }
    }
    Ok((ranks, factors))
}

fn component_homology(
    d: &Digraph,
    max_dim: usize,
    ring: Ring,
    want_reps: bool,
) -> Result<ComponentHomology, HomologyError> {
    let pc = PathComplex::build(d, max_dim + 1, ring)?;
    let (ranks, factors) = boundary_ranks(&pc)?;
    let mut unreduced = Vec::with_capacity(max_dim + 1);
    let mut reduced = Vec::with_capacity(max_dim + 1);
    for p in 0..=max_dim {
        let base = pc.omega_dim(p) - ranks[p + 1];
        unreduced.push(base - ranks[p]);
        // The augmentation has rank 1 on a nonempty component.
        reduced.push(base - if p == 0 { 1 } else { ranks[p] });
    }
    let torsion = (0..=max_dim)
        .filter(|&p| !factors[p + 1].is_empty())
        .map(|p| (p, factors[p + 1].clone()))
        .collect();
    let mut reps = BTreeMap::new();
    if want_reps {
        for p in 1..=max_dim {
            if reduced[p] > 0 {
                reps.insert(p, representatives(&pc, p)?);
            }
        }
    }
    Ok(ComponentHomology {
        unreduced,
        reduced,
        torsion,
        reps,
    })
}

/// Full homology summary: prune limbs, split weak components, merge.
///
/// The empty digraph has all Betti numbers zero.
pub fn homology(
    d: &Digraph,
    max_dim: usize,
    ring: Ring,
    want_reps: bool,
) -> Result<HomologySummary, HomologyError> {
    let mut summary = HomologySummary::zeros(max_dim, want_reps);
    if d.is_empty() {
        return Ok(summary);
    }
    let (pruned, kept) = digraph::prune_limbs_with_map(d);
    let comps = digraph::weak_components(&pruned);
    let results: Vec<ComponentHomology> = comps
        .par_iter()
        .map(|(c, _)| component_homology(c, max_dim, ring, want_reps))
        .collect::<Result<_, _>>()?;

    for r in &results {
        for p in 0..=max_dim {
            summary.betti[p] += r.unreduced[p];
            if p > 0 {
                summary.reduced_betti[p] += r.reduced[p];
            }
        }
        for (p, f) in &r.torsion {
            summary.torsion.entry(*p).or_default().extend(f.iter().cloned());
        }
    }
    summary.reduced_betti[0] = summary.betti[0] - 1;

    if let Some(reps) = summary.representatives.as_mut() {
        let to_original = |map: &VertexMap<usize>| {
            let kept = &kept;
            let map = map.clone();
            move |v: usize| kept[*map.label(v)]
        };
        // Dimension 0: differences of component base points.
        let bases: Vec<usize> = comps.iter().map(|(_, m)| kept[*m.label(0)]).collect();
        let zero: Vec<Chain> = bases
            .iter()
            .skip(1)
            .map(|&b| {
                Chain::normalized(vec![(vec![bases[0]], 1.into()), (vec![b], (-1).into())])
            })
            .collect();
        if !zero.is_empty() {
            reps.insert(0, zero);
        }
        for (r, (_, map)) in results.iter().zip(&comps) {
            let f = to_original(map);
            for (p, chains) in &r.reps {
                reps.entry(*p)
                    .or_default()
                    .extend(chains.iter().map(|c| c.relabel(&f)));
            }
        }
    }
    Ok(summary)
}

/// Reduced Betti numbers β̃_0..β̃_max_dim over ℚ.
pub fn betti_curve(d: &Digraph, max_dim: usize) -> Result<Vec<usize>, HomologyError> {
    Ok(homology(d, max_dim, Ring::Rational, false)?.reduced_betti)
}

/// Cycles in dimension `p` whose classes form a basis of H̃_p.
///
/// Extends a basis of `im ∂_{p+1}` by reduced-echelon kernel vectors of
/// `∂_p`, keeping the kernel vectors that raise the rank. Requires the
/// complex to reach dimension `p + 1`.
pub fn representatives(pc: &PathComplex, p: usize) -> Result<Vec<Chain>, HomologyError> {
    if p == 0 || p >= pc.p_max() {
        return Err(HomologyError::Dimension { p, p_max: pc.p_max() });
    }
    let cycles = exactla::kernel_basis(pc.boundary(p));
    let bounds = pc.boundary(p + 1);
    let stacked = bounds.hstack(&cycles)?;
    let offset = bounds.ncols();
    let chosen: Vec<usize> = exactla::pivot_columns(&stacked)
        .into_iter()
        .filter(|&c| c >= offset)
        .map(|c| c - offset)
        .collect();
    let paths: Vec<Vec<usize>> = pc.paths().dim(p).iter().map(<[usize]>::to_vec).collect();
    let on_paths = pc.omega(p).mul(&cycles.select_columns(&chosen))?;
    let on_paths_t = on_paths.transpose();
    Ok((0..chosen.len())
        .map(|k| Chain::from_rational(paths.clone(), on_paths_t.row(k)))
        .collect())
}

/// Coordinates of a chain in the Ω_p basis, as a column.
pub fn chain_coordinates(pc: &PathComplex, p: usize, chain: &Chain) -> Result<ExactMatrix, HomologyError> {
    let a = pc.paths();
    let trip = chain.terms.iter().map(|(path, c)| {
        let i = a.position(path).expect("chain supported on allowed paths");
        (i, 0, BigRational::from_integer(c.clone()))
    });
    let v = ExactMatrix::from_triplets(a.dim(p).count(), 1, trip)?;
    Ok(exactla::solve(pc.omega(p), &v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, arcs.iter().copied()).unwrap()
    }

    fn square_hole() -> Digraph {
        // 1→2, 1→3, 4→2, 4→3 relabelled to 0..4.
        g(4, &[(0, 1), (0, 2), (3, 1), (3, 2)])
    }

    fn w(n: usize) -> Digraph {
        let mut arcs = vec![(0, 1), (1, 0)];
        for i in 0..n {
            arcs.push((0, 2 + i));
            arcs.push((1, 2 + i));
        }
        g(n + 2, &arcs)
    }

    #[test]
    fn squares() {
        assert_eq!(betti_curve(&square_hole(), 3).unwrap(), vec![0, 1, 0, 0]);
        let trivial = g(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(betti_curve(&trivial, 3).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn dyads() {
        assert_eq!(betti_curve(&w(5), 3).unwrap(), vec![0, 0, 4, 0]);
        assert_eq!(betti_curve(&w(3), 3).unwrap(), vec![0, 0, 2, 0]);
    }

    #[test]
    fn two_cycle_is_a_hole() {
        assert_eq!(betti_curve(&g(2, &[(0, 1), (1, 0)]), 2).unwrap(), vec![0, 1, 0]);
    }

    #[test]
    fn small_cases() {
        assert_eq!(betti_curve(&Digraph::empty(1), 2).unwrap(), vec![0, 0, 0]);
        assert_eq!(betti_curve(&Digraph::empty(2), 2).unwrap(), vec![1, 0, 0]);
        let e = homology(&Digraph::empty(0), 2, Ring::Rational, true).unwrap();
        assert_eq!(e.betti, vec![0, 0, 0]);
        assert_eq!(e.reduced_betti, vec![0, 0, 0]);
    }

    #[test]
    fn unreduced_betti_zero_counts_components() {
        let d = square_hole().disjoint_union(&w(2)).disjoint_union(&Digraph::empty(3));
        let h = homology(&d, 2, Ring::Rational, false).unwrap();
        assert_eq!(h.betti[0], 5);
        assert_eq!(h.reduced_betti, vec![4, 1, 1]);
    }

    #[test]
    fn w2_representative() {
        let h = homology(&w(2), 2, Ring::Rational, true).unwrap();
        let reps = &h.representatives.as_ref().unwrap()[&2];
        assert_eq!(reps.len(), 1);
        let want = Chain::normalized(vec![
            (vec![0, 1, 2], 1.into()),
            (vec![1, 0, 2], 1.into()),
            (vec![0, 1, 3], (-1).into()),
            (vec![1, 0, 3], (-1).into()),
        ]);
        assert_eq!(reps[0], want);
    }

    #[test]
    fn square_representative_uses_all_arcs() {
        let h = homology(&square_hole(), 1, Ring::Rational, true).unwrap();
        let reps = &h.representatives.as_ref().unwrap()[&1];
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].terms.len(), 4);
        assert!(reps[0].terms.iter().all(|(_, c)| c.abs() == 1.into()));
    }

    #[test]
    fn no_representatives_when_trivial() {
        let trivial = g(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let pc = PathComplex::build(&trivial, 3, Ring::Rational).unwrap();
        assert!(representatives(&pc, 1).unwrap().is_empty());
        assert!(representatives(&pc, 2).unwrap().is_empty());
        assert!(representatives(&pc, 3).is_err());
        assert!(representatives(&pc, 0).is_err());
    }

    #[test]
    fn dimension_zero_representatives() {
        let d = g(4, &[(0, 1), (2, 3)]);
        let h = homology(&d, 1, Ring::Rational, true).unwrap();
        let r0 = &h.representatives.as_ref().unwrap()[&0];
        assert_eq!(r0.len(), h.reduced_betti[0]);
    }

    #[test]
    fn json_schema() {
        let h = homology(&w(2), 2, Ring::Rational, true).unwrap();
        let v = h.to_json(|i| i);
        assert_eq!(v["reduced_betti"], json!([0, 0, 1]));
        assert_eq!(v["torsion"], json!({}));
        assert_eq!(v["representatives"]["2"][0][0]["path"], json!([0, 1, 2]));
        assert_eq!(v["representatives"]["2"][0][0]["coef"], json!(1));
    }

    #[test]
    fn representative_coordinates_round_trip() {
        let pc = PathComplex::build(&w(3), 3, Ring::Rational).unwrap();
        for c in representatives(&pc, 2).unwrap() {
            let x = chain_coordinates(&pc, 2, &c).unwrap();
            assert!(pc.boundary(2).mul(&x).unwrap().is_zero());
        }
    }
}
