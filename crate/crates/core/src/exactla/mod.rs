//! Exact linear algebra over ℚ and ℤ.
//!
//! Nothing here touches floating point. Rank, kernels and solves run a
//! fraction-free sparse elimination; the Smith normal form uses gcd-driven
//! unimodular row and column operations with smallest-magnitude pivots.

mod coeff;
mod elim;
mod matrix;
mod smith;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use matrix::ExactMatrix;
pub(crate) use matrix::clear_denominators;

use elim::{convert_rows, with_fallback, Echelon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("right-hand side column {column} is not in the column span")]
    Inconsistent { column: usize },
    #[error("matrix has non-integral entries")]
    NotIntegral,
}

/// Invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// d₁ | d₂ | … | d_r, all positive.
    pub factors: Vec<BigInt>,
    pub rank: usize,
    /// `(U, V)` unimodular with `U · M · V = diag(factors)`, when requested.
    pub transforms: Option<(ExactMatrix, ExactMatrix)>,
}

impl SmithForm {
    /// Factors greater than one, i.e. the torsion coefficients of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|f| !f.is_one())
            .cloned()
            .collect()
    }
}

fn echelon_of(rows: &[Vec<(usize, BigInt)>], ncols: usize, limit: usize, reduce: bool) -> EchelonBig {
    with_fallback(
        || {
            let mut e = Echelon::<i128>::build(convert_rows(rows)?, ncols, limit)?;
            if reduce {
                e.reduce()?;
            }
            Some(EchelonBig::from_small(&e, ncols))
        },
        || {
            let mut e = Echelon::<BigInt>::build(convert_rows(rows)?, ncols, limit)?;
            if reduce {
                e.reduce()?;
            }
            Some(EchelonBig::from_small(&e, ncols))
        },
    )
}

/// Echelon data lifted back to `BigInt` for result assembly.
struct EchelonBig {
    pivots: Vec<(usize, Vec<(usize, BigInt)>)>,
    residual_leads: Vec<usize>,
}

impl EchelonBig {
    fn from_small<T: coeff::Coeff>(e: &Echelon<T>, _ncols: usize) -> Self {
        let lift = |r: &elim::IRow<T>| -> Vec<(usize, BigInt)> {
            r.iter().map(|(j, v)| (*j, v.to_big())).collect()
        };
        EchelonBig {
            pivots: e
                .pivot_columns()
                .into_iter()
                .map(|c| (c, lift(e.pivot_row(c).unwrap())))
                .collect(),
            residual_leads: e.residual.iter().filter_map(|r| r.first().map(|x| x.0)).collect(),
        }
    }
}

/// Exact rank over ℚ.
pub fn rank(m: &ExactMatrix) -> usize {
    let rows = m.integer_rows();
    with_fallback(
        || Some(Echelon::<i128>::build(convert_rows(&rows)?, m.ncols(), m.ncols())?.rank()),
        || Some(Echelon::<BigInt>::build(convert_rows(&rows)?, m.ncols(), m.ncols())?.rank()),
    )
}

/// Columns that are not in the span of the columns before them.
pub fn pivot_columns(m: &ExactMatrix) -> Vec<usize> {
    let e = echelon_of(&m.integer_rows(), m.ncols(), m.ncols(), false);
    e.pivots.into_iter().map(|(c, _)| c).collect()
}

/// Kernel basis in reduced-echelon normalization.
///
/// One column per free variable, in increasing free-column order; the column
/// for free variable `f` has a 1 at `f`, 0 at every other free variable, and
/// the forced values at pivot variables.
pub fn kernel_basis(m: &ExactMatrix) -> ExactMatrix {
    kernel_basis_with_free(m).0
}

/// [`kernel_basis`] together with the free column of each basis vector.
pub(crate) fn kernel_basis_with_free(m: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let n = m.ncols();
    let e = echelon_of(&m.integer_rows(), n, n, true);
    let mut is_pivot = vec![false; n];
    for (c, _) in &e.pivots {
        is_pivot[*c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut slot = vec![usize::MAX; n];
    for (k, &f) in free.iter().enumerate() {
        slot[f] = k;
    }
    let mut trip = Vec::new();
    for (k, &f) in free.iter().enumerate() {
        trip.push((f, k, BigRational::one()));
    }
    for (c, row) in &e.pivots {
        let lead = &row[0].1;
        for (j, v) in &row[1..] {
            // Entries right of the lead in a reduced row sit only on free columns.
            let k = slot[*j];
            debug_assert!(k != usize::MAX);
            trip.push((*c, k, BigRational::new(-v.clone(), lead.clone())));
        }
    }
    let k = ExactMatrix::from_triplets(n, free.len(), trip).expect("indices in range");
    (k, free)
}

/// Solves `a · x = b` exactly.
///
/// Free variables are set to zero, so `x` is unique when `a` has full column
/// rank. Fails with the first column of `b` that lies outside the span of `a`.
pub fn solve(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
    if a.nrows() != b.nrows() {
        return Err(LinalgError::DimensionMismatch {
            op: "solve",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let aug = a.hstack(b)?;
    let off = a.ncols();
    let e = echelon_of(&aug.integer_rows(), aug.ncols(), off, true);
    if let Some(&lead) = e.residual_leads.iter().min() {
        return Err(LinalgError::Inconsistent { column: lead - off });
    }
    let mut trip = Vec::new();
    for (c, row) in &e.pivots {
        let lead = &row[0].1;
        for (j, v) in row.iter().skip(1) {
            if *j >= off {
                trip.push((*c, *j - off, BigRational::new(v.clone(), lead.clone())));
            }
        }
    }
    ExactMatrix::from_triplets(a.ncols(), b.ncols(), trip)
}

fn dense_integer(m: &ExactMatrix) -> Result<Vec<Vec<BigInt>>, LinalgError> {
    if !m.is_integral() {
        return Err(LinalgError::NotIntegral);
    }
    let mut out = vec![vec![BigInt::zero(); m.ncols()]; m.nrows()];
    for (i, row) in m.rows_iter().enumerate() {
        for (j, v) in row {
            out[i][*j] = v.to_integer();
        }
    }
    Ok(out)
}

fn from_dense_big(rows: Vec<Vec<BigInt>>, cols: usize) -> ExactMatrix {
    let r = rows.len();
    let entries = rows
        .into_iter()
        .flatten()
        .map(BigRational::from_integer)
        .collect();
    ExactMatrix::from_dense(r, cols, entries)
}

/// Smith normal form of an integral matrix. Transforms are computed only on request.
pub fn smith_normal_form(m: &ExactMatrix, transforms: bool) -> Result<SmithForm, LinalgError> {
    // Drop zero rows and columns first; they never carry factors.
    let (rows, cols) = m.shape();
    if !transforms {
        let keep_rows: Vec<usize> = (0..rows).filter(|&i| !m.row(i).is_empty()).collect();
        let mut used = vec![false; cols];
        for i in &keep_rows {
            for (j, _) in m.row(*i) {
                used[*j] = true;
            }
        }
        let keep_cols: Vec<usize> = (0..cols).filter(|&j| used[j]).collect();
        if keep_rows.len() < rows || keep_cols.len() < cols {
            let sub = m.select_rows(&keep_rows).select_columns(&keep_cols);
            return smith_normal_form(&sub, false);
        }
    }
    let dense = dense_integer(m)?;
    let raw = with_fallback(
        || smith::smith::<i128>(&dense, cols, transforms),
        || smith::smith::<BigInt>(&dense, cols, transforms),
    );
    let transforms = match (raw.left, raw.right) {
        (Some(u), Some(v)) => Some((from_dense_big(u, rows), from_dense_big(v, cols))),
        _ => None,
    };
    Ok(SmithForm {
        rank: raw.factors.len(),
        factors: raw.factors,
        transforms,
    })
}

/// A ℤ-basis (as columns) of the integer vectors in the kernel of an integral matrix.
pub fn integer_kernel_basis(m: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
    let dense = dense_integer(m)?;
    let cols = m.ncols();
    let vecs = with_fallback(
        || smith::integer_kernel::<i128>(&dense, cols),
        || smith::integer_kernel::<BigInt>(&dense, cols),
    );
    let k = vecs.len();
    let mut trip = Vec::new();
    for (c, v) in vecs.into_iter().enumerate() {
        for (i, x) in v.into_iter().enumerate() {
            if !x.is_zero() {
                trip.push((i, c, BigRational::from_integer(x)));
            }
        }
    }
    ExactMatrix::from_triplets(cols, k, trip)
}
