//! Empirical reduced Betti distributions of Erdős–Rényi digraphs D(4, q).

use pathhom::randgraph::{sample_er, ERSpec};

fn main() {
    for q in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let dist = sample_er(&ERSpec {
            n: 4,
            q,
            trials: 5000,
            seed: 1,
            max_dim: 3,
        })
        .unwrap();
        print!("q = {q}:");
        for p in 0..=3 {
            let f: Vec<String> = dist
                .frequencies(p)
                .into_iter()
                .map(|(v, f)| format!("{v}:{:.3}", *f.numer() as f64 / *f.denom() as f64))
                .collect();
            print!("  b{p} [{}]", f.join(" "));
        }
        println!();
    }
}
