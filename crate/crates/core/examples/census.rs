//! Census of small digraphs, DAGs and undirected graphs by isomorphism class.
//!
//! Usage: `cargo run --release --example census [family] [vertices] [filter]`

use pathhom::census::{run_census, BettiFilter, CensusQuery, Family};

fn main() {
    let mut args = std::env::args().skip(1);
    let family: Family = args.next().as_deref().unwrap_or("digraph").parse().unwrap();
    let vertices: usize = args.next().map_or(4, |v| v.parse().unwrap());
    let filter: BettiFilter = args.next().as_deref().unwrap_or("b2>0").parse().unwrap();

    let q = CensusQuery::new(family, vertices, 3).with_filter(filter.clone());
    let r = run_census(&q).unwrap();
    println!("{family} on {vertices} vertices: {} classes", r.total_classes);
    for (b, count) in &r.histogram {
        println!("  {b:?}: {count}");
    }
    println!("{} classes with {filter}:", r.matches.len());
    for m in &r.matches {
        println!("  {:?} -> {:?}", m.digraph.arcs(), m.reduced_betti);
    }
}
