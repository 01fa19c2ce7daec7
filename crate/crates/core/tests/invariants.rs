mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use pathhom::census::{canonical_code, canonical_form};
use pathhom::digraph::{prune_limbs, weak_components};
use pathhom::exactla::{self, ExactMatrix};
use pathhom::motifs::{self, MotifSpec};
use pathhom::pathcomplex::{enumerate_allowed, PathComplex};
use pathhom::temporal::{windows, ContactStream, WindowSpec};
use pathhom::{betti_curve, homology, Digraph, Ring};
use proptest::prelude::*;

fn digraph(max_n: usize, q: f64) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(q), n * (n - 1)).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
            Digraph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(a, _)| a)).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn int_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-4i64..=4, c), r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundaries_compose_to_zero(d in digraph(6, 0.35)) {
        let pc = PathComplex::build(&d, 4, Ring::Rational).unwrap();
        for p in 2..=4 {
            let dd = pc.boundary(p - 1).mul(pc.boundary(p)).unwrap();
            prop_assert!(dd.is_zero(), "p = {p}");
        }
    }

    #[test]
    fn integer_boundaries_are_integral(d in digraph(5, 0.4)) {
        let pc = PathComplex::build(&d, 3, Ring::Integer).unwrap();
        for p in 1..=3 {
            prop_assert!(pc.boundary(p).is_integral());
            prop_assert!(pc.omega(p).is_integral());
        }
    }

    #[test]
    fn omega_dims_agree_between_rings(d in digraph(5, 0.4)) {
        let q = PathComplex::build(&d, 3, Ring::Rational).unwrap();
        let z = PathComplex::build(&d, 3, Ring::Integer).unwrap();
        for p in 0..=3 {
            prop_assert_eq!(q.omega_dim(p), z.omega_dim(p));
        }
    }

    #[test]
    fn beta_zero_counts_components(d in digraph(7, 0.2)) {
        let h = homology(&d, 1, Ring::Rational, false).unwrap();
        prop_assert_eq!(h.betti[0], common::component_count(&d));
        prop_assert_eq!(h.reduced_betti[0] + 1, h.betti[0]);
    }

    #[test]
    fn disjoint_union_adds(a in digraph(5, 0.35), b in digraph(5, 0.35)) {
        let ha = homology(&a, 2, Ring::Rational, false).unwrap();
        let hb = homology(&b, 2, Ring::Rational, false).unwrap();
        let hu = homology(&a.disjoint_union(&b), 2, Ring::Rational, false).unwrap();
        for p in 0..=2 {
            prop_assert_eq!(hu.betti[p], ha.betti[p] + hb.betti[p]);
        }
    }

    #[test]
    fn pruning_preserves_reduced_betti(d in digraph(7, 0.25)) {
        prop_assert_eq!(betti_curve(&d, 3).unwrap(), betti_curve(&prune_limbs(&d), 3).unwrap());
    }

    #[test]
    fn pipeline_matches_naive_oracle(d in digraph(5, 0.4)) {
        prop_assert_eq!(betti_curve(&d, 2).unwrap(), common::naive_reduced_betti(&d, 2));
    }

    #[test]
    fn homology_is_isomorphism_invariant((d, perm) in digraph(6, 0.35).prop_flat_map(|d| {
        let n = d.vertex_count();
        (Just(d), permutation(n))
    })) {
        let pd = d.permute(&perm);
        prop_assert_eq!(betti_curve(&d, 3).unwrap(), betti_curve(&pd, 3).unwrap());
        prop_assert_eq!(canonical_code(&d), canonical_code(&pd));
        let c = canonical_form(&d);
        prop_assert_eq!(canonical_form(&c), c);
    }

    #[test]
    fn transpose_is_involution(d in digraph(6, 0.4)) {
        prop_assert_eq!(d.transpose().transpose(), d);
    }

    #[test]
    fn components_partition_vertices(d in digraph(7, 0.2)) {
        let comps = weak_components(&d);
        let mut seen = BTreeSet::new();
        let mut arcs = 0;
        for (c, map) in &comps {
            arcs += c.arc_count();
            for v in 0..c.vertex_count() {
                prop_assert!(seen.insert(*map.label(v)));
            }
        }
        prop_assert_eq!(seen.len(), d.vertex_count());
        prop_assert_eq!(arcs, d.arc_count());
    }

    #[test]
    fn allowed_paths_are_sorted_and_allowed(d in digraph(6, 0.4)) {
        let paths = enumerate_allowed(&d, 3).unwrap();
        for p in 0..=3 {
            let list = paths.dim(p);
            prop_assert!(list.radix_indices().windows(2).all(|w| w[0] < w[1]));
            for t in list.iter() {
                prop_assert!(t.windows(2).all(|w| d.has_arc(w[0], w[1])));
            }
        }
    }

    #[test]
    fn rank_is_transpose_invariant(m in int_matrix(6)) {
        let a = ExactMatrix::from_int_rows(&m);
        prop_assert_eq!(exactla::rank(&a), exactla::rank(&a.transpose()));
    }

    #[test]
    fn kernel_is_annihilated(m in int_matrix(6)) {
        let a = ExactMatrix::from_int_rows(&m);
        let k = exactla::kernel_basis(&a);
        prop_assert_eq!(k.ncols() + exactla::rank(&a), a.ncols());
        prop_assert!(a.mul(&k).unwrap().is_zero());
        let z = exactla::integer_kernel_basis(&a).unwrap();
        prop_assert_eq!(z.ncols(), k.ncols());
        prop_assert!(a.mul(&z).unwrap().is_zero());
    }

    #[test]
    fn solve_recovers_consistent_rhs(m in int_matrix(5), seed in 0u64..1000) {
        let a = ExactMatrix::from_int_rows(&m);
        let mut r = common::rng(seed);
        let x: Vec<Vec<i64>> = (0..a.ncols()).map(|_| vec![rand::Rng::gen_range(&mut r, -3..=3)]).collect();
        let b = a.mul(&ExactMatrix::from_int_rows(&x)).unwrap();
        let y = exactla::solve(&a, &b).unwrap();
        prop_assert_eq!(a.mul(&y).unwrap(), b);
    }

    #[test]
    fn smith_form_is_a_divisor_chain(m in int_matrix(5)) {
        let a = ExactMatrix::from_int_rows(&m);
        let s = exactla::smith_normal_form(&a, true).unwrap();
        prop_assert_eq!(s.rank, exactla::rank(&a));
        for w in s.factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.factors.iter().all(|f| f.is_positive()));
        let (u, v) = s.transforms.clone().unwrap();
        let d = u.mul(&a).unwrap().mul(&v).unwrap();
        for i in 0..d.nrows() {
            for j in 0..d.ncols() {
                let want = if i == j && i < s.rank { s.factors[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(d.get(i, j), num_rational::BigRational::from_integer(want));
            }
        }
        // Unimodular: integral with an integral inverse.
        for t in [&u, &v] {
            prop_assert!(t.is_integral());
            let inv = exactla::solve(t, &ExactMatrix::identity(t.nrows())).unwrap();
            prop_assert!(inv.is_integral());
            prop_assert_eq!(t.mul(&inv).unwrap(), ExactMatrix::identity(t.nrows()));
        }
    }

    #[test]
    fn contacts_are_covered_by_width_over_stride_windows(
        times in proptest::collection::vec(0i64..2000, 1..40),
        stride in 1i64..30,
        mult in 1i64..5,
    ) {
        let width = stride * mult;
        let text: String = times.iter().map(|t| format!("1 2 {t}\n")).collect();
        let s = ContactStream::parse(&text).unwrap();
        let ws = windows(&s, &WindowSpec::time(width, stride).with_origin(0));
        for (k, c) in s.contacts.iter().enumerate() {
            let hits: Vec<usize> = ws.iter().filter(|w| w.range.contains(&k)).map(|w| w.index).collect();
            prop_assert!(hits.windows(2).all(|h| h[1] == h[0] + 1));
            if c.time >= width {
                prop_assert_eq!(hits.len() as i64, mult);
            }
        }
    }

    #[test]
    fn halving_stride_keeps_old_windows(
        times in proptest::collection::vec(0i64..500, 1..30),
        stride in 1i64..20,
    ) {
        let text: String = times.iter().map(|t| format!("1 2 {t}\n")).collect();
        let s = ContactStream::parse(&text).unwrap();
        let width = 4 * stride;
        let coarse = windows(&s, &WindowSpec::time(width, 2 * stride).with_origin(0));
        let fine = windows(&s, &WindowSpec::time(width, stride).with_origin(0));
        let fine_set: BTreeSet<_> = fine.iter().map(|w| (w.start, w.range.start, w.range.end)).collect();
        for w in coarse {
            prop_assert!(fine_set.contains(&(w.start, w.range.start, w.range.end)));
        }
    }
}

#[test]
fn dyad_omega_three_vanishes() {
    for n in 1..=8 {
        let d = motifs::build(&MotifSpec::dyad_up(n)).unwrap();
        let pc = PathComplex::build(&d, 3, Ring::Rational).unwrap();
        assert_eq!(pc.omega_dim(3), 0, "n = {n}");
    }
}

#[test]
fn downlinked_dyad_is_transpose() {
    for n in 1..=8 {
        let up = motifs::build(&MotifSpec::dyad_up(n)).unwrap();
        assert_eq!(motifs::build(&MotifSpec::dyad_down(n)).unwrap(), up.transpose());
    }
}

#[test]
fn aggregating_twice_is_stable() {
    let s = ContactStream::parse("a b 1\nb c 2\na b 3\nc c 4\n").unwrap();
    let first = s.aggregate(0..s.len());
    assert_eq!(first, s.aggregate(0..s.len()));
    for (i, l) in first.1.labels().iter().enumerate() {
        assert_eq!(first.1.index_of(l), Some(i));
    }
}
