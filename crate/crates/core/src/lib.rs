//! Exact non-regular path homology of simple digraphs.
//!
//! The pipeline enumerates allowed paths, computes the invariant spaces Ω_p
//! and the chain boundaries between them, then reads off Betti numbers over
//! ℚ, torsion over ℤ (via Smith normal form) and cycle representatives.
//! Around it sit motif constructors, an isomorphism-class census, an
//! Erdős–Rényi sampler and a temporal-network windowing pipeline.
//!
//! ```
//! use pathhom::{betti_curve, motifs::{self, MotifSpec}};
//!
//! let w4 = motifs::build(&MotifSpec::dyad_up(4)).unwrap();
//! assert_eq!(betti_curve(&w4, 2).unwrap(), vec![0, 0, 3]);
//! ```
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod census;
pub mod cli;
pub mod digraph;
pub mod exactla;
pub mod homology;
pub mod motifs;
pub mod pathcomplex;
pub mod randgraph;
pub mod temporal;

pub use digraph::{from_arcs, Digraph, Label, VertexMap};
pub use homology::{betti_curve, homology, Chain, HomologySummary};
pub use pathcomplex::PathComplex;

/// Coefficient ring for homology.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Ring {
    /// ℚ: Betti numbers only.
    #[default]
    Rational,
    /// ℤ: Betti numbers plus torsion.
    Integer,
}
