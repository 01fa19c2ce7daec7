//! Homology representatives, and spotting the mutual dyad they come from.

use std::collections::BTreeSet;

use pathhom::temporal::find_induced_dyad;
use pathhom::{from_arcs, homology, Ring};

fn main() {
    // Alice and Bob mail each other and the same three recipients; Carol
    // forwards to Dan on the side.
    let arcs = [
        ("alice", "bob"),
        ("bob", "alice"),
        ("alice", "r1"),
        ("alice", "r2"),
        ("alice", "r3"),
        ("bob", "r1"),
        ("bob", "r2"),
        ("bob", "r3"),
        ("carol", "dan"),
        ("dan", "r1"),
    ];
    let (d, map) = from_arcs(&arcs);
    let h = homology(&d, 2, Ring::Rational, true).unwrap();
    println!("reduced betti {:?}", h.reduced_betti);

    let reps = h.representatives.as_ref().unwrap();
    for chain in &reps[&2] {
        let terms: Vec<String> = chain
            .terms
            .iter()
            .map(|(path, c)| {
                let names: Vec<&str> = path.iter().map(|&v| map.label(v).as_ref()).collect();
                format!("{c:+}·({})", names.join("→"))
            })
            .collect();
        println!("  {}", terms.join(" "));
    }

    let support: BTreeSet<usize> = reps[&2].iter().flat_map(|c| c.support_vertices()).collect();
    let support: Vec<usize> = support.into_iter().collect();
    if let Some(m) = find_induced_dyad(&d, &support) {
        let targets: Vec<&str> = m.targets.iter().map(|&t| map.label(t).as_ref()).collect();
        println!("induced W_{} on {} ↔ {} → {targets:?}", m.targets.len(), map.label(m.a), map.label(m.b));
    }
}
