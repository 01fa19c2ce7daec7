//! The two four-vertex squares: one encloses a 1-cycle, the other bounds it.

use pathhom::{from_arcs, homology, Ring};

fn main() {
    let hole = [(1, 2), (1, 3), (4, 2), (4, 3)];
    let flat = [("w", "x"), ("w", "y"), ("x", "z"), ("y", "z")];

    let (d, map) = from_arcs(&hole);
    let h = homology(&d, 2, Ring::Rational, true).unwrap();
    println!("1→2, 1→3, 4→2, 4→3: reduced betti {:?}", h.reduced_betti);
    println!("{}", h.to_json_labeled(&map)["representatives"]);

    let (d, _) = from_arcs(&flat);
    let h = homology(&d, 2, Ring::Rational, false).unwrap();
    println!("w→x, w→y, x→z, y→z: reduced betti {:?}", h.reduced_betti);
}
