//! Allowed paths, boundary blocks, invariant spaces and chain boundaries.
//!
//! A p-path `(v₀, …, v_p)` is stored by its radix-n index `Σ vᵢ n^{p−i}`,
//! which orders paths of one length lexicographically. Deleting an endpoint
//! of an allowed path always leaves an allowed path, so every non-allowed
//! face keeps both endpoints; the face matrix restricted to non-allowed rows
//! is therefore block diagonal over `(v₀, v_p)` and the invariant space is
//! computed one endpoint pair at a time.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::digraph::Digraph;
use crate::exactla::{self, ExactMatrix, LinalgError};
use crate::Ring;

#[derive(Debug, Error)]
pub enum PathComplexError {
    #[error("radix index of {p}-paths on {n} vertices exceeds 128 bits")]
    IndexOverflow { n: usize, p: usize },
    #[error("dimension {p} outside 1..={p_max}")]
    Dimension { p: usize, p_max: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Allowed p-paths of one fixed length, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathList {
    len: usize,
    flat: Vec<usize>,
    radix: Vec<u128>,
}

impl PathList {
    /// Number of paths.
    pub fn count(&self) -> usize {
        self.radix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radix.is_empty()
    }

    /// Vertices per path (p + 1).
    pub fn path_len(&self) -> usize {
        self.len
    }

    pub fn get(&self, i: usize) -> &[usize] {
        &self.flat[i * self.len..(i + 1) * self.len]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.flat.chunks(self.len.max(1)).take(self.count())
    }

    /// Radix-n indices into `V^{p+1}`, strictly increasing.
    pub fn radix_indices(&self) -> &[u128] {
        &self.radix
    }

    pub fn position_of_radix(&self, r: u128) -> Option<usize> {
        self.radix.binary_search(&r).ok()
    }
}

/// Allowed paths of every dimension `0..=p_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllowedPaths {
    n: usize,
    dims: Vec<PathList>,
}

impl AllowedPaths {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn p_max(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, p: usize) -> &PathList {
        &self.dims[p]
    }

    pub fn radix(&self, tuple: &[usize]) -> u128 {
        tuple
            .iter()
            .fold(0u128, |r, &v| r * self.n as u128 + v as u128)
    }

    pub fn position(&self, tuple: &[usize]) -> Option<usize> {
        let p = tuple.len().checked_sub(1)?;
        if p > self.p_max() || tuple.iter().any(|&v| v >= self.n) {
            return None;
        }
        self.dims[p].position_of_radix(self.radix(tuple))
    }

    fn decode(&self, mut r: u128, len: usize) -> Vec<usize> {
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = (r % self.n as u128) as usize;
            r /= self.n as u128;
        }
        out
    }

    fn face_radix(&self, path: &[usize], skip: usize) -> u128 {
        let n = self.n as u128;
        path.iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .fold(0u128, |r, (_, &v)| r * n + v as u128)
    }
}

/// Enumerates the allowed paths of `d` through dimension `p_max`.
///
/// Each dimension extends every path of the previous one by every
/// out-neighbour of its last vertex, which keeps lexicographic order.
pub fn enumerate_allowed(d: &Digraph, p_max: usize) -> Result<AllowedPaths, PathComplexError> {
    let n = d.vertex_count();
    if n > 1 && (n as u128).checked_pow(p_max as u32 + 1).is_none() {
        return Err(PathComplexError::IndexOverflow { n, p: p_max });
    }
    let nn = n as u128;
    let mut dims = Vec::with_capacity(p_max + 1);
    dims.push(PathList {
        len: 1,
        flat: (0..n).collect(),
        radix: (0..n as u128).collect(),
    });
    for p in 1..=p_max {
        let prev: &PathList = &dims[p - 1];
        let mut flat = Vec::new();
        let mut radix = Vec::new();
        for (i, path) in prev.iter().enumerate() {
            let last = *path.last().unwrap();
            for &w in d.out_neighbors(last) {
                flat.extend_from_slice(path);
                flat.push(w);
                radix.push(prev.radix[i] * nn + w as u128);
            }
        }
        dims.push(PathList {
            len: p + 1,
            flat,
            radix,
        });
    }
    Ok(AllowedPaths { n, dims })
}

/// The face matrix of dimension `p` split by whether faces are allowed.
#[derive(Clone, Debug)]
pub struct BoundaryBlocks {
    pub p: usize,
    /// Rows: allowed (p−1)-paths. Columns: allowed p-paths.
    pub delta: ExactMatrix,
    /// Rows: non-allowed (p−1)-tuples that occur as a face, in lexicographic order.
    pub nabla: ExactMatrix,
    pub nabla_rows: Vec<Vec<usize>>,
}

fn sign(k: usize) -> BigRational {
    if k.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn delta_matrix(paths: &AllowedPaths, p: usize) -> ExactMatrix {
    let cols = paths.dim(p);
    let rows = paths.dim(p - 1);
    let mut data: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); rows.count()];
    for (j, path) in cols.iter().enumerate() {
        for k in 0..=p {
            if let Some(i) = rows.position_of_radix(paths.face_radix(path, k)) {
                data[i].push((j, sign(k)));
            }
        }
    }
    ExactMatrix::from_sorted_rows(rows.count(), cols.count(), data)
}

/// Splits the boundary of allowed p-paths into allowed and non-allowed rows.
pub fn boundary_blocks(paths: &AllowedPaths, p: usize) -> Result<BoundaryBlocks, PathComplexError> {
    if p == 0 || p > paths.p_max() {
        return Err(PathComplexError::Dimension {
            p,
            p_max: paths.p_max(),
        });
    }
    let delta = delta_matrix(paths, p);
    let rows = paths.dim(p - 1);
    let mut bad: BTreeMap<u128, Vec<(usize, BigRational)>> = BTreeMap::new();
    for (j, path) in paths.dim(p).iter().enumerate() {
        for k in 0..=p {
            let r = paths.face_radix(path, k);
            if rows.position_of_radix(r).is_none() {
                bad.entry(r).or_default().push((j, sign(k)));
            }
        }
    }
    let nabla_rows = bad.keys().map(|&r| paths.decode(r, p)).collect();
    let nrows = bad.len();
    let nabla = ExactMatrix::from_sorted_rows(nrows, paths.dim(p).count(), bad.into_values().collect());
    Ok(BoundaryBlocks {
        p,
        delta,
        nabla,
        nabla_rows,
    })
}

/// Reduced-echelon kernel basis of the non-allowed block: a basis of Ω_p.
pub fn invariant_basis(blocks: &BoundaryBlocks) -> ExactMatrix {
    exactla::kernel_basis(&blocks.nabla)
}

/// Coordinates of `∂` on Ω_p in the basis of Ω_{p−1}: solves `Ω_{p−1} x = Δ Ω_p`.
pub fn chain_boundary(
    omega_prev: &ExactMatrix,
    delta: &ExactMatrix,
    omega: &ExactMatrix,
) -> Result<ExactMatrix, LinalgError> {
    exactla::solve(omega_prev, &delta.mul(omega)?)
}

/// Basis of Ω_p for one endpoint pair.
#[derive(Clone, Debug)]
struct OmegaBlock {
    members: Vec<usize>,
    basis: ExactMatrix,
    /// Global Ω column of each local basis vector.
    columns: Vec<usize>,
    /// Local member holding the unit free variable of each basis vector.
    readout: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
enum OmegaLayout {
    Identity,
    Blocks {
        blocks: Vec<OmegaBlock>,
        /// (block, local index) of every allowed path.
        locate: Vec<(usize, usize)>,
    },
}

/// The path complex `(Ω_p, ∂_p)` for `0 ≤ p ≤ p_max`.
#[derive(Clone, Debug)]
pub struct PathComplex {
    ring: Ring,
    paths: AllowedPaths,
    omega: Vec<ExactMatrix>,
    boundary: Vec<ExactMatrix>,
}

impl PathComplex {
    /// Builds Ω and ∂ through dimension `p_max`.
    ///
    /// With [`Ring::Integer`] each Ω_p basis is a ℤ-basis of the integer
    /// invariant chains, so the boundary matrices are integral.
    pub fn build(d: &Digraph, p_max: usize, ring: Ring) -> Result<Self, PathComplexError> {
        let paths = enumerate_allowed(d, p_max)?;
        let mut omega = Vec::with_capacity(p_max + 1);
        let mut layout = Vec::with_capacity(p_max + 1);
        for p in 0..=p_max {
            if p <= 1 {
                omega.push(ExactMatrix::identity(paths.dim(p).count()));
                layout.push(OmegaLayout::Identity);
            } else {
                let (m, l) = omega_blocks(&paths, p, ring)?;
                omega.push(m);
                layout.push(l);
            }
        }
        let mut boundary = Vec::with_capacity(p_max + 1);
        boundary.push(ExactMatrix::zeros(0, paths.dim(0).count()));
        for p in 1..=p_max {
            let image = delta_matrix(&paths, p).mul(&omega[p])?;
            boundary.push(coordinates(&layout[p - 1], omega[p - 1].ncols(), &image)?);
        }
        Ok(PathComplex {
            ring,
            paths,
            omega,
            boundary,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn p_max(&self) -> usize {
        self.omega.len() - 1
    }

    pub fn paths(&self) -> &AllowedPaths {
        &self.paths
    }

    /// Columns: basis of Ω_p in the allowed-path basis.
    pub fn omega(&self, p: usize) -> &ExactMatrix {
        &self.omega[p]
    }

    pub fn omega_dim(&self, p: usize) -> usize {
        self.omega[p].ncols()
    }

    /// ∂_p from Ω_p to Ω_{p−1}; `boundary(0)` is the empty map out of Ω_0.
    pub fn boundary(&self, p: usize) -> &ExactMatrix {
        &self.boundary[p]
    }
}

fn omega_blocks(
    paths: &AllowedPaths,
    p: usize,
    ring: Ring,
) -> Result<(ExactMatrix, OmegaLayout), PathComplexError> {
    let cols = paths.dim(p);
    let faces = paths.dim(p - 1);
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (j, path) in cols.iter().enumerate() {
        groups.entry((path[0], path[p])).or_default().push(j);
    }
    struct Pending {
        members: Vec<usize>,
        basis: ExactMatrix,
        readout: Option<Vec<usize>>,
        keys: Vec<usize>,
    }
    let mut pending = Vec::with_capacity(groups.len());
    for members in groups.into_values() {
        let mut row_of: HashMap<u128, usize> = HashMap::new();
        let mut trip = Vec::new();
        for (local, &j) in members.iter().enumerate() {
            let path = cols.get(j);
            for k in 1..p {
                let r = paths.face_radix(path, k);
                if faces.position_of_radix(r).is_none() {
                    let next = row_of.len();
                    let row = *row_of.entry(r).or_insert(next);
                    trip.push((row, local, sign(k)));
                }
            }
        }
        let nabla = ExactMatrix::from_triplets(row_of.len(), members.len(), trip)?;
        let (mut basis, free) = exactla::kernel_basis_with_free(&nabla);
        let mut readout = Some(free.clone());
        if ring == Ring::Integer && !basis.is_integral() {
            basis = exactla::integer_kernel_basis(&nabla)?;
            readout = None;
        }
        let keys = match &readout {
            Some(f) => f.iter().map(|&l| members[l]).collect(),
            None => vec![members[0]; basis.ncols()],
        };
        pending.push(Pending {
            members,
            basis,
            readout,
            keys,
        });
    }
    // Order Ω columns by their free path, as a global reduced-echelon basis would.
    let mut order: Vec<(usize, usize, usize)> = pending
        .iter()
        .enumerate()
        .flat_map(|(b, pb)| pb.keys.iter().enumerate().map(move |(k, &key)| (key, b, k)))
        .collect();
    order.sort_unstable();
    let mut column_of: Vec<Vec<usize>> = pending.iter().map(|pb| vec![0; pb.keys.len()]).collect();
    for (g, &(_, b, k)) in order.iter().enumerate() {
        column_of[b][k] = g;
    }
    let dim = order.len();
    let mut locate = vec![(0, 0); cols.count()];
    let mut trip = Vec::new();
    let mut blocks = Vec::with_capacity(pending.len());
    for (b, pb) in pending.into_iter().enumerate() {
        for (local, &j) in pb.members.iter().enumerate() {
            locate[j] = (b, local);
            for (k, v) in pb.basis.row(local) {
                trip.push((j, column_of[b][*k], v.clone()));
            }
        }
        blocks.push(OmegaBlock {
            members: pb.members,
            basis: pb.basis,
            columns: std::mem::take(&mut column_of[b]),
            readout: pb.readout,
        });
    }
    let omega = ExactMatrix::from_triplets(cols.count(), dim, trip)?;
    Ok((omega, OmegaLayout::Blocks { blocks, locate }))
}

/// Expresses the columns of `image` (over allowed paths) in the Ω basis.
fn coordinates(
    layout: &OmegaLayout,
    dim: usize,
    image: &ExactMatrix,
) -> Result<ExactMatrix, PathComplexError> {
    let (blocks, locate) = match layout {
        OmegaLayout::Identity => return Ok(image.clone()),
        OmegaLayout::Blocks { blocks, locate } => (blocks, locate),
    };
    let mut block_rows: Vec<Vec<Vec<(usize, BigRational)>>> =
        blocks.iter().map(|b| vec![Vec::new(); b.members.len()]).collect();
    for (i, row) in image.rows_iter().enumerate() {
        if !row.is_empty() {
            let (b, local) = locate[i];
            block_rows[b][local] = row.to_vec();
        }
    }
    let mut out: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); dim];
    for (block, rows) in blocks.iter().zip(block_rows) {
        if rows.iter().all(Vec::is_empty) {
            continue;
        }
        let rhs = ExactMatrix::from_sorted_rows(rows.len(), image.ncols(), rows);
        let coords = match &block.readout {
            Some(free) => {
                let c = rhs.select_rows(free);
                if block.basis.mul(&c)? != rhs {
                    return Err(LinalgError::Inconsistent { column: 0 }.into());
                }
                c
            }
            None => exactla::solve(&block.basis, &rhs)?,
        };
        for (k, &g) in block.columns.iter().enumerate() {
            out[g] = coords.row(k).to_vec();
        }
    }
    Ok(ExactMatrix::from_sorted_rows(dim, image.ncols(), out))
}

/// The full boundary of a chain given on allowed p-paths, over all of `V^p`.
///
/// Returned as `(face tuple, coefficient)` pairs with nonzero coefficients,
/// sorted lexicographically.
pub fn full_boundary(
    paths: &AllowedPaths,
    p: usize,
    chain: &[BigRational],
) -> Vec<(Vec<usize>, BigRational)> {
    let mut acc: BTreeMap<u128, BigRational> = BTreeMap::new();
    for (j, path) in paths.dim(p).iter().enumerate() {
        if chain[j].is_zero() {
            continue;
        }
        for k in 0..=p {
            let e = acc.entry(paths.face_radix(path, k)).or_insert_with(BigRational::zero);
            *e += &chain[j] * sign(k);
        }
    }
    acc.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(r, v)| (paths.decode(r, p), v))
        .collect()
}
