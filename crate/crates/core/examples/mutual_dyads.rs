//! n-uplinked and n-downlinked mutual dyads have β̃₂ = n − 1.

use pathhom::motifs::{self, MotifSpec};
use pathhom::pathcomplex::PathComplex;
use pathhom::{betti_curve, Ring};

fn main() {
    println!("{:>3} {:>12} {:>12} {:>6}", "n", "up", "down", "dim Ω3");
    for n in 1..=10 {
        let up = motifs::build(&MotifSpec::dyad_up(n)).unwrap();
        let down = motifs::build(&MotifSpec::dyad_down(n)).unwrap();
        let omega3 = PathComplex::build(&up, 3, Ring::Rational).unwrap().omega_dim(3);
        println!(
            "{n:>3} {:>12} {:>12} {omega3:>6}",
            format!("{:?}", betti_curve(&up, 3).unwrap()),
            format!("{:?}", betti_curve(&down, 3).unwrap()),
        );
    }
}
