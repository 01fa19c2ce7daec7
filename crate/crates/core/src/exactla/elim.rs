//! Fraction-free sparse Gauss–Jordan elimination.
//!
//! Rows are integer vectors kept primitive (content 1) after every
//! combination, which stops coefficient growth on the {-1, 0, 1} boundary
//! matrices this crate feeds in. Pivots are leftmost columns, so the final
//! pivot set and the reduced rows are independent of input row order.

use num_bigint::BigInt;

use super::coeff::Coeff;

pub(crate) type IRow<T> = Vec<(usize, T)>;

/// `ca * a - cb * b` over sorted sparse rows.
fn combine<T: Coeff>(ca: &T, a: &[(usize, T)], cb: &T, b: &[(usize, T)]) -> Option<IRow<T>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, ca.mul(&a[i].1)?));
            i += 1;
        } else if take_b {
            out.push((b[j].0, cb.mul(&b[j].1)?.neg()?));
            j += 1;
        } else {
            let v = ca.mul(&a[i].1)?.sub(&cb.mul(&b[j].1)?)?;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn make_primitive<T: Coeff>(row: &mut IRow<T>) {
    let mut g = T::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g == T::one() {
            return;
        }
    }
    if !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

pub(crate) fn convert_rows<T: Coeff>(rows: &[Vec<(usize, BigInt)>]) -> Option<Vec<IRow<T>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|(j, v)| T::from_big(v).map(|t| (*j, t)))
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}

pub(crate) struct Echelon<T> {
    /// Pivot row per column, leading coefficient positive.
    pivots: Vec<Option<IRow<T>>>,
    /// Rows left with no pivot inside the pivot range.
    pub(crate) residual: Vec<IRow<T>>,
}

impl<T: Coeff> Echelon<T> {
    /// Row-reduces to echelon form. Only columns `< pivot_limit` may hold pivots.
    pub(crate) fn build(rows: Vec<IRow<T>>, ncols: usize, pivot_limit: usize) -> Option<Self> {
        let mut pivots: Vec<Option<IRow<T>>> = vec![None; ncols.min(pivot_limit)];
        let mut residual = Vec::new();
        for mut row in rows {
            make_primitive(&mut row);
            loop {
                let Some(&(lead, _)) = row.first() else { break };
                if lead >= pivot_limit {
                    residual.push(row);
                    break;
                }
                match &pivots[lead] {
                    Some(p) => {
                        let (pl, rl) = (&p[0].1, &row[0].1);
                        let g = pl.gcd(rl);
                        let ca = pl.div_exact(&g);
                        let cb = rl.div_exact(&g);
                        let mut next = combine(&ca, &row, &cb, p)?;
                        make_primitive(&mut next);
                        row = next;
                    }
                    None => {
                        if row[0].1.is_negative() {
                            for (_, v) in row.iter_mut() {
                                *v = v.neg()?;
                            }
                        }
                        pivots[lead] = Some(row);
                        break;
                    }
                }
            }
        }
        Some(Echelon { pivots, residual })
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_some()).count()
    }

    pub(crate) fn pivot_columns(&self) -> Vec<usize> {
        self.pivots
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.as_ref().map(|_| c))
            .collect()
    }

    pub(crate) fn pivot_row(&self, col: usize) -> Option<&IRow<T>> {
        self.pivots.get(col).and_then(Option::as_ref)
    }

    /// Clears every pivot column outside its own pivot row.
    pub(crate) fn reduce(&mut self) -> Option<()> {
        let cols = self.pivot_columns();
        for (idx, &c) in cols.iter().enumerate().rev() {
            let pc = self.pivots[c].clone().unwrap();
            let lead = pc[0].1.clone();
            for &k in &cols[..idx] {
                let row = self.pivots[k].as_ref().unwrap();
                let Ok(pos) = row.binary_search_by_key(&c, |(j, _)| *j) else {
                    continue;
                };
                let e = &row[pos].1;
                let g = lead.gcd(e);
                let ca = lead.div_exact(&g);
                let cb = e.div_exact(&g);
                let mut next = combine(&ca, row, &cb, &pc)?;
                make_primitive(&mut next);
                self.pivots[k] = Some(next);
            }
        }
        Some(())
    }
}

/// Runs `f` over `i128`, falling back to `BigInt` on overflow.
pub(crate) fn with_fallback<R>(
    small: impl FnOnce() -> Option<R>,
    big: impl FnOnce() -> Option<R>,
) -> R {
    match small() {
        Some(r) => r,
        None => {
            log::trace!("i128 overflow in elimination; retrying with BigInt");
            big().expect("BigInt arithmetic cannot overflow")
        }
    }
}
