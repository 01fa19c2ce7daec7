//! Named digraph families: mutual dyads, the torsion family, the two
//! four-vertex squares, and Erdős–Rényi samples.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::digraph::{Digraph, Label, VertexMap};
use crate::randgraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MotifError {
    #[error("unknown motif {0:?} (expected dyad_up, dyad_down, torsion_cycle, square_trivial, square_hole or er)")]
    UnknownName(String),
    #[error("motif {0} needs a parameter of at least 1")]
    ZeroParameter(MotifName),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MotifName {
    DyadUp,
    DyadDown,
    TorsionCycle,
    SquareTrivial,
    SquareHole,
    Er,
}

impl MotifName {
    pub const ALL: [MotifName; 6] = [
        MotifName::DyadUp,
        MotifName::DyadDown,
        MotifName::TorsionCycle,
        MotifName::SquareTrivial,
        MotifName::SquareHole,
        MotifName::Er,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MotifName::DyadUp => "dyad_up",
            MotifName::DyadDown => "dyad_down",
            MotifName::TorsionCycle => "torsion_cycle",
            MotifName::SquareTrivial => "square_trivial",
            MotifName::SquareHole => "square_hole",
            MotifName::Er => "er",
        }
    }

    fn takes_parameter(self) -> bool {
        !matches!(self, MotifName::SquareTrivial | MotifName::SquareHole)
    }
}

impl fmt::Display for MotifName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MotifName {
    type Err = MotifError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MotifName::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| MotifError::UnknownName(s.to_string()))
    }
}

/// Direction of the arcs joining the central cycle of the torsion family to
/// its two external vertices `x` (even cycle positions) and `y` (odd ones).
///
/// Only [`ExternalArcs::Reciprocal`] produces torsion; the one-way variants
/// are kept for comparison.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ExternalArcs {
    /// `c_even ↔ x`, `c_odd ↔ y`.
    #[default]
    Reciprocal,
    /// `c_even → x`, `c_odd → y`.
    Outward,
    /// `x → c_even`, `y → c_odd`.
    Inward,
    /// `c_even → x`, `y → c_odd`.
    OutIn,
    /// `x → c_even`, `c_odd → y`.
    InOut,
}

impl ExternalArcs {
    pub const ALL: [ExternalArcs; 5] = [
        ExternalArcs::Reciprocal,
        ExternalArcs::Outward,
        ExternalArcs::Inward,
        ExternalArcs::OutIn,
        ExternalArcs::InOut,
    ];
}

#[derive(Clone, Debug, PartialEq)]
pub struct MotifSpec {
    pub name: MotifName,
    /// n for dyads, the torsion family, and the vertex count of `er`.
    pub parameter: usize,
    pub external: ExternalArcs,
    /// Arc probability for `er`.
    pub q: f64,
    pub seed: u64,
}

impl MotifSpec {
    pub fn new(name: MotifName, parameter: usize) -> Self {
        MotifSpec {
            name,
            parameter,
            external: ExternalArcs::default(),
            q: 0.5,
            seed: 0,
        }
    }

    pub fn dyad_up(n: usize) -> Self {
        Self::new(MotifName::DyadUp, n)
    }

    pub fn dyad_down(n: usize) -> Self {
        Self::new(MotifName::DyadDown, n)
    }

    pub fn torsion_cycle(n: usize) -> Self {
        Self::new(MotifName::TorsionCycle, n)
    }

    pub fn square_trivial() -> Self {
        Self::new(MotifName::SquareTrivial, 1)
    }

    pub fn square_hole() -> Self {
        Self::new(MotifName::SquareHole, 1)
    }

    pub fn er(n: usize, q: f64, seed: u64) -> Self {
        MotifSpec {
            q,
            seed,
            ..Self::new(MotifName::Er, n)
        }
    }

    fn validate(&self) -> Result<(), MotifError> {
        if self.name.takes_parameter() && self.parameter == 0 {
            return Err(MotifError::ZeroParameter(self.name));
        }
        Ok(())
    }
}

fn dyad_up(n: usize) -> Digraph {
    // a = 0, b = 1, leaves 2..n+2.
    let mut arcs = vec![(0, 1), (1, 0)];
    for i in 2..n + 2 {
        arcs.push((0, i));
        arcs.push((1, i));
    }
    Digraph::new(n + 2, arcs).expect("dyad arcs in range")
}

fn torsion_cycle(n: usize, ext: ExternalArcs) -> Digraph {
    let len = 2 * n;
    let (x, y) = (len, len + 1);
    let mut arcs: Vec<(usize, usize)> = (0..len).map(|j| (j, (j + 1) % len)).collect();
    for j in 0..len {
        let hub = if j % 2 == 0 { x } else { y };
        if ext == ExternalArcs::Reciprocal {
            arcs.extend([(j, hub), (hub, j)]);
            continue;
        }
        let arc = match (ext, j % 2 == 0) {
            (ExternalArcs::Outward, true) | (ExternalArcs::OutIn, true) => (j, x),
            (ExternalArcs::Outward, false) | (ExternalArcs::InOut, false) => (j, y),
            (ExternalArcs::Inward, true) | (ExternalArcs::InOut, true) => (x, j),
            (ExternalArcs::Inward, false) | (ExternalArcs::OutIn, false) => (y, j),
            (ExternalArcs::Reciprocal, _) => unreachable!(),
        };
        arcs.push(arc);
    }
    Digraph::new(len + 2, arcs).expect("torsion arcs in range")
}

/// Builds the digraph for a motif.
///
/// Vertex layout: dyads put `a, b` at 0, 1 and the leaves after them; the
/// torsion family puts the cycle at `0..2n` and `x, y` at `2n, 2n+1`; the
/// squares use 0..4 for the vertices labeled 1..4.
pub fn build(spec: &MotifSpec) -> Result<Digraph, MotifError> {
    spec.validate()?;
    let n = spec.parameter;
    Ok(match spec.name {
        MotifName::DyadUp => dyad_up(n),
        MotifName::DyadDown => dyad_up(n).transpose(),
        MotifName::TorsionCycle => torsion_cycle(n, spec.external),
        MotifName::SquareTrivial => {
            Digraph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).expect("square")
        }
        MotifName::SquareHole => Digraph::new(4, [(0, 1), (0, 2), (3, 1), (3, 2)]).expect("square"),
        MotifName::Er => randgraph::er_digraph_seeded(n, spec.q, spec.seed),
    })
}

/// Human-readable labels matching the layout of [`build`].
pub fn labels(spec: &MotifSpec) -> Result<Vec<Label>, MotifError> {
    spec.validate()?;
    let n = spec.parameter;
    let name = |s: String| Label::Name(s);
    Ok(match spec.name {
        MotifName::DyadUp | MotifName::DyadDown => [name("a".into()), name("b".into())]
            .into_iter()
            .chain((1..=n as i64).map(Label::Int))
            .collect(),
        MotifName::TorsionCycle => (0..2 * n)
            .map(|j| name(format!("c{j}")))
            .chain([name("x".into()), name("y".into())])
            .collect(),
        MotifName::SquareTrivial | MotifName::SquareHole => (1..=4).map(Label::Int).collect(),
        MotifName::Er => (0..n as i64).map(Label::Int).collect(),
    })
}

pub fn build_labeled(spec: &MotifSpec) -> Result<(Digraph, VertexMap<Label>), MotifError> {
    Ok((build(spec)?, VertexMap::from_labels(labels(spec)?)))
}
