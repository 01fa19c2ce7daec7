//! Sliding-window homology of a contact stream.
//!
//! Usage: `cargo run --release --example temporal_windows [file] [window]`,
//! e.g. `sx-mathoverflow-a2q.txt time:24h:8h`. Defaults to a bundled toy stream.

use std::path::PathBuf;

use pathhom::temporal::{analyze, series_csv, ContactStream, WindowSpec};

fn main() {
    let mut args = std::env::args().skip(1);
    let file = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/contacts_small.txt"));
    let spec: WindowSpec = args.next().as_deref().unwrap_or("day").parse().unwrap();

    let stream = ContactStream::ingest(&file).unwrap();
    eprintln!("{} contacts, {} vertices", stream.len(), stream.vertex_count());
    let results = analyze(&stream, &spec, 2, true).unwrap();
    print!("{}", series_csv(&results, 2));
    for r in results.iter().filter(|r| r.representatives.is_some()) {
        eprintln!("window {} has β̃₂ = {}", r.index, r.reduced_betti[2]);
    }
}
