use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LinalgError;

/// A matrix over the rationals with arbitrary-precision entries.
///
/// Storage is row-major and sparse: each row keeps its nonzero entries
/// sorted by column. Boundary matrices of path complexes are very sparse,
/// so this is also the fast representation for elimination.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigRational)>>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, BigRational::one())]).collect();
        ExactMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Builds a matrix from dense integer rows. All rows must share a length.
    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = ExactMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            m.data[i] = r
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(|(j, v)| (j, BigRational::from_integer(BigInt::from(*v))))
                .collect();
        }
        m
    }

    /// Builds a matrix from dense rational rows.
    pub fn from_dense(rows: usize, cols: usize, entries: Vec<BigRational>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let mut m = ExactMatrix::zeros(rows, cols);
        let mut it = entries.into_iter();
        for i in 0..rows {
            for j in 0..cols {
                let v = it.next().unwrap();
                if !v.is_zero() {
                    m.data[i].push((j, v));
                }
            }
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, BigRational)>,
    {
        let mut m = ExactMatrix::zeros(rows, cols);
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(LinalgError::OutOfBounds {
                    row: i,
                    col: j,
                    rows,
                    cols,
                });
            }
            m.data[i].push((j, v));
        }
        for row in &mut m.data {
            *row = normalize_row(std::mem::take(row));
        }
        Ok(m)
    }

    pub(crate) fn from_sorted_rows(
        rows: usize,
        cols: usize,
        data: Vec<Vec<(usize, BigRational)>>,
    ) -> Self {
        debug_assert_eq!(data.len(), rows);
        debug_assert!(data.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)
            && r.iter().all(|(j, v)| *j < cols && !v.is_zero())));
        ExactMatrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Number of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    /// Nonzero entries of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, BigRational)] {
        &self.data[i]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[(usize, BigRational)]> {
        self.data.iter().map(Vec::as_slice)
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigRational>> {
        let mut out = vec![vec![BigRational::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_integral(&self) -> bool {
        self.data
            .iter()
            .all(|r| r.iter().all(|(_, v)| v.is_integer()))
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = Vec::with_capacity(self.rows);
        let mut acc: Vec<Option<BigRational>> = vec![None; other.cols];
        let mut touched = Vec::new();
        for row in &self.data {
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    let prod = a * b;
                    match &mut acc[*j] {
                        Some(s) => *s += prod,
                        slot @ None => {
                            *slot = Some(prod);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                let v = acc[j].take().unwrap();
                if !v.is_zero() {
                    out.push((j, v));
                }
            }
            touched.clear();
            data.push(out);
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn scale(&self, c: &BigRational) -> ExactMatrix {
        if c.is_zero() {
            return ExactMatrix::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect())
            .collect();
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let off = self.cols;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                a.iter()
                    .cloned()
                    .chain(b.iter().map(|(j, v)| (j + off, v.clone())))
                    .collect()
            })
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    /// Vertical concatenation of `self` above `other`.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// The submatrix formed by the given columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> ExactMatrix {
        let mut pos = vec![None; self.cols];
        for (new, &old) in columns.iter().enumerate() {
            pos[old] = Some(new);
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let picked: Vec<_> = r
                    .iter()
                    .filter_map(|(j, v)| pos[*j].map(|n| (n, v.clone())))
                    .collect();
                normalize_row(picked)
            })
            .collect();
        ExactMatrix {
            rows: self.rows,
            cols: columns.len(),
            data,
        }
    }

    /// The submatrix formed by the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> ExactMatrix {
        ExactMatrix {
            rows: rows.len(),
            cols: self.cols,
            data: rows.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    /// Rows scaled to primitive integer vectors. `None` rows are zero.
    pub(crate) fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.data.iter().map(|r| clear_denominators(r)).collect()
    }
}

/// Scales a sparse rational vector to an integer vector with content 1.
pub(crate) fn clear_denominators(row: &[(usize, BigRational)]) -> Vec<(usize, BigInt)> {
    use num_integer::Integer;
    if row.is_empty() {
        return Vec::new();
    }
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = lcm.lcm(v.denom());
    }
    let ints: Vec<(usize, BigInt)> = row
        .iter()
        .map(|(j, v)| (*j, v.numer() * (&lcm / v.denom())))
        .collect();
    let mut g = BigInt::zero();
    for (_, v) in &ints {
        g = g.gcd(v);
    }
    ints.into_iter().map(|(j, v)| (j, v / &g)).collect()
}

fn normalize_row(mut row: Vec<(usize, BigRational)>) -> Vec<(usize, BigRational)> {
    row.sort_by_key(|(j, _)| *j);
    let mut out: Vec<(usize, BigRational)> = Vec::with_capacity(row.len());
    for (j, v) in row {
        match out.last_mut() {
            Some((lj, lv)) if *lj == j => *lv += v,
            _ => out.push((j, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
