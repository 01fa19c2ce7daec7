//! Test-only oracles. The naive Betti computation shares no code with the library.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};
use pathhom::Digraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let t = m[r][k].clone() * f.clone();
                    m[i][k] = m[i][k].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<BigRational>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Kernel basis vectors of a `rows × cols` matrix.
pub fn kernel(rows: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// All tuples in `V^len`, lexicographic.
fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn tuple_index(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |a, &v| a * n + v)
}

/// Reduced Betti numbers from the definition: Ω_p is computed inside the
/// span of all allowed paths against the full boundary on `V^{p+1}`, with no
/// pruning, no component split and no block structure.
pub fn naive_reduced_betti(d: &Digraph, max_dim: usize) -> Vec<usize> {
    let n = d.vertex_count();
    if n == 0 {
        return vec![0; max_dim + 1];
    }
    let allowed: Vec<Vec<Vec<usize>>> = (0..=max_dim + 1)
        .map(|p| {
            tuples(n, p + 1)
                .into_iter()
                .filter(|t| t.windows(2).all(|w| d.has_arc(w[0], w[1])))
                .collect()
        })
        .collect();
    // Columns of the full boundary of each allowed p-path, as dense vectors on V^p.
    let boundary_cols = |p: usize| -> Vec<Vec<BigRational>> {
        allowed[p]
            .iter()
            .map(|t| {
                let mut col = vec![BigRational::zero(); n.pow(p as u32)];
                for i in 0..=p {
                    let mut face = t.clone();
                    face.remove(i);
                    let s = if i % 2 == 0 { 1 } else { -1 };
                    col[tuple_index(n, &face)] += BigRational::from_integer(s.into());
                }
                col
            })
            .collect()
    };
    // omega[p]: basis of Ω_p in coordinates over allowed[p].
    let mut omega: Vec<Vec<Vec<BigRational>>> = Vec::new();
    let mut rank_d = vec![0usize; max_dim + 3];
    rank_d[0] = 1;
    for p in 0..=max_dim + 1 {
        let a = allowed[p].len();
        if p == 0 {
            omega.push(
                (0..a)
                    .map(|i| {
                        let mut v = vec![BigRational::zero(); a];
                        v[i] = BigRational::one();
                        v
                    })
                    .collect(),
            );
            continue;
        }
        let cols = boundary_cols(p);
        let allowed_prev: std::collections::HashSet<usize> =
            allowed[p - 1].iter().map(|t| tuple_index(n, t)).collect();
        let ambient = n.pow(p as u32);
        let bad_rows: Vec<Vec<BigRational>> = (0..ambient)
            .filter(|r| !allowed_prev.contains(r))
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .filter(|row: &Vec<BigRational>| row.iter().any(|x| !x.is_zero()))
            .collect();
        let basis = if bad_rows.is_empty() {
            (0..a)
                .map(|i| {
                    let mut v = vec![BigRational::zero(); a];
                    v[i] = BigRational::one();
                    v
                })
                .collect()
        } else {
            kernel(&bad_rows, a)
        };
        // Image of Ω_p under the full boundary, as rows in V^p.
        let images: Vec<Vec<BigRational>> = basis
            .iter()
            .map(|x| {
                let mut img = vec![BigRational::zero(); ambient];
                for (k, c) in x.iter().enumerate() {
                    if !c.is_zero() {
                        for (r, v) in cols[k].iter().enumerate() {
                            if !v.is_zero() {
                                img[r] += c.clone() * v.clone();
                            }
                        }
                    }
                }
                img
            })
            .collect();
        rank_d[p] = rank(&images, ambient);
        omega.push(basis);
    }
    (0..=max_dim)
        .map(|p| omega[p].len() - rank_d[p] - rank_d[p + 1])
        .collect()
}

/// Every labeled digraph on `n` vertices; bit `k` selects the k-th ordered pair.
pub fn labeled_digraph(n: usize, mask: u64) -> Digraph {
    let pairs = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
    let arcs = pairs.enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, a)| a);
    Digraph::new(n, arcs).unwrap()
}

pub fn random_digraph(rng: &mut impl Rng, n: usize, q: f64) -> Digraph {
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(q) {
                arcs.push((i, j));
            }
        }
    }
    Digraph::new(n, arcs).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Weak component count by union-find.
pub fn component_count(d: &Digraph) -> usize {
    let n = d.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(u, v) in d.arcs() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count()
}

/// Reduced Betti numbers read straight off one path complex of the whole
/// digraph, skipping limb pruning and the component split.
pub fn direct_reduced_betti(d: &Digraph, max_dim: usize) -> Vec<usize> {
    use pathhom::{exactla, PathComplex, Ring};
    if d.vertex_count() == 0 {
        return vec![0; max_dim + 1];
    }
    let pc = PathComplex::build(d, max_dim + 1, Ring::Rational).unwrap();
    let rank = |p: usize| if p == 0 { 1 } else { exactla::rank(pc.boundary(p)) };
    (0..=max_dim)
        .map(|p| pc.omega_dim(p) - rank(p) - rank(p + 1))
        .collect()
}
