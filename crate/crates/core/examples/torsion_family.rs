//! Integer homology of the torsion family: H̃₁ ≅ ℤ ⊕ ℤ/n.

use pathhom::motifs::{self, ExternalArcs, MotifSpec};
use pathhom::{homology, Ring};

fn main() {
    for n in 2..=8 {
        let d = motifs::build(&MotifSpec::torsion_cycle(n)).unwrap();
        let h = homology(&d, 2, Ring::Integer, false).unwrap();
        println!(
            "2n = {:>2}: {} vertices, {} arcs, reduced betti {:?}, torsion {:?}",
            2 * n,
            d.vertex_count(),
            d.arc_count(),
            h.reduced_betti,
            h.torsion
        );
    }

    // One-way spokes lose the torsion.
    let spec = MotifSpec {
        external: ExternalArcs::Outward,
        ..MotifSpec::torsion_cycle(3)
    };
    let h = homology(&motifs::build(&spec).unwrap(), 2, Ring::Integer, false).unwrap();
    println!("outward spokes, 2n = 6: reduced betti {:?}, torsion {:?}", h.reduced_betti, h.torsion);
}
