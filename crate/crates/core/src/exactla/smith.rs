//! Smith normal form and integer kernels by unimodular row/column reduction.

use std::cmp::Ordering;

use num_bigint::BigInt;

use super::coeff::Coeff;

type Dense<T> = Vec<Vec<T>>;

pub(crate) struct SmithRaw {
    pub factors: Vec<BigInt>,
    pub left: Option<Dense<BigInt>>,
    pub right: Option<Dense<BigInt>>,
}

fn identity<T: Coeff>(n: usize) -> Dense<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

/// row_dst -= q * row_src
fn row_axpy<T: Coeff>(m: &mut Dense<T>, dst: usize, src: usize, q: &T) -> Option<()> {
    if q.is_zero() {
        return Some(());
    }
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x = x.sub(&q.mul(y)?)?;
        }
    }
    Some(())
}

/// col_dst -= q * col_src
fn col_axpy<T: Coeff>(m: &mut Dense<T>, dst: usize, src: usize, q: &T) -> Option<()> {
    if q.is_zero() {
        return Some(());
    }
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            row[dst] = row[dst].sub(&q.mul(&row[src])?)?;
        }
    }
    Some(())
}

fn swap_cols<T>(m: &mut Dense<T>, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

pub(crate) fn smith<T: Coeff>(
    input: &[Vec<BigInt>],
    cols: usize,
    transforms: bool,
) -> Option<SmithRaw> {
    let rows = input.len();
    let mut a: Dense<T> = input
        .iter()
        .map(|r| r.iter().map(T::from_big).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let mut u: Option<Dense<T>> = transforms.then(|| identity(rows));
    let mut v: Option<Dense<T>> = transforms.then(|| identity(cols));

    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero magnitude in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| a[i][j].cmp_abs(&a[bi][bj]) == Ordering::Less) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        if let Some(u) = u.as_mut() {
            u.swap(t, pi);
        }
        swap_cols(&mut a, t, pj);
        if let Some(v) = v.as_mut() {
            swap_cols(v, t, pj);
        }

        loop {
            // Column t below the pivot.
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, _) = a[i][t].div_mod_floor(&a[t][t])?;
                row_axpy(&mut a, i, t, &q)?;
                if let Some(u) = u.as_mut() {
                    row_axpy(u, i, t, &q)?;
                }
            }
            if let Some(i) = (t + 1..rows)
                .filter(|&i| !a[i][t].is_zero())
                .min_by(|&x, &y| a[x][t].cmp_abs(&a[y][t]))
            {
                a.swap(t, i);
                if let Some(u) = u.as_mut() {
                    u.swap(t, i);
                }
                continue;
            }
            // Row t right of the pivot.
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, _) = a[t][j].div_mod_floor(&a[t][t])?;
                col_axpy(&mut a, j, t, &q)?;
                if let Some(v) = v.as_mut() {
                    col_axpy(v, j, t, &q)?;
                }
            }
            if let Some(j) = (t + 1..cols)
                .filter(|&j| !a[t][j].is_zero())
                .min_by(|&x, &y| a[t][x].cmp_abs(&a[t][y]))
            {
                swap_cols(&mut a, t, j);
                if let Some(v) = v.as_mut() {
                    swap_cols(v, t, j);
                }
                continue;
            }
            // The pivot must divide the whole trailing block.
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !a[i][j].is_zero() && !a[i][j].div_mod_floor(&a[t][t])?.1.is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let minus_one = T::one().neg()?;
                    row_axpy(&mut a, t, i, &minus_one)?;
                    if let Some(u) = u.as_mut() {
                        row_axpy(u, t, i, &minus_one)?;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = x.neg()?;
            }
            if let Some(u) = u.as_mut() {
                for x in u[t].iter_mut() {
                    *x = x.neg()?;
                }
            }
        }
        t += 1;
    }

    let factors = (0..t).map(|i| a[i][i].to_big()).collect();
    let to_big = |m: Dense<T>| -> Dense<BigInt> {
        m.into_iter()
            .map(|r| r.iter().map(Coeff::to_big).collect())
            .collect()
    };
    Some(SmithRaw {
        factors,
        left: u.map(to_big),
        right: v.map(to_big),
    })
}

/// A lattice basis of `{x ∈ Z^cols : m x = 0}`, one vector per entry.
///
/// Uses unimodular row reduction on `[mᵀ | I]`; rows whose left part vanishes
/// carry kernel vectors in their right part.
pub(crate) fn integer_kernel<T: Coeff>(
    input: &[Vec<BigInt>],
    cols: usize,
) -> Option<Vec<Vec<BigInt>>> {
    let r = input.len();
    let mut m: Dense<T> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut row = Vec::with_capacity(r + cols);
        for orig in input {
            row.push(T::from_big(&orig[j])?);
        }
        for k in 0..cols {
            row.push(if k == j { T::one() } else { T::zero() });
        }
        m.push(row);
    }
    let mut t = 0;
    for c in 0..r {
        if t == cols {
            break;
        }
        loop {
            let Some(p) = (t..cols)
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&x, &y| m[x][c].cmp_abs(&m[y][c]))
            else {
                break;
            };
            m.swap(t, p);
            let mut clean = true;
            for i in t + 1..cols {
                if m[i][c].is_zero() {
                    continue;
                }
                let (q, rem) = m[i][c].div_mod_floor(&m[t][c])?;
                row_axpy(&mut m, i, t, &q)?;
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if clean {
                t += 1;
                break;
            }
        }
    }
    Some(
        m[t..]
            .iter()
            .map(|row| row[r..].iter().map(Coeff::to_big).collect())
            .collect(),
    )
}
