//! Exact linear algebra: rank, kernels, solving and Smith normal form.

use pathhom::exactla::{self, ExactMatrix};

fn main() {
    let m = ExactMatrix::from_int_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    println!("M = {m:?}");
    println!("rank {}", exactla::rank(&m));

    let s = exactla::smith_normal_form(&m, true).unwrap();
    let factors: Vec<String> = s.factors.iter().map(|f| f.to_string()).collect();
    println!("invariant factors {}", factors.join(", "));
    let (u, v) = s.transforms.unwrap();
    println!("U·M·V = {:?}", u.mul(&m).unwrap().mul(&v).unwrap());

    let a = ExactMatrix::from_int_rows(&[[1, 1, 0], [0, 1, 1]]);
    println!("ker [[1,1,0],[0,1,1]] = {:?}", exactla::kernel_basis(&a));
    let b = ExactMatrix::from_int_rows(&[[3], [5]]);
    println!("solve A·x = (3, 5): {:?}", exactla::solve(&a, &b).unwrap());
}
