//! Exact affine-isometry algebra for flat 3-manifolds.
//!
//! A platycosm `M = R³/Γ` is described by a [`PlatycosmPresentation`]: a
//! lattice of translations plus coset representatives of `Γ` modulo that
//! lattice. All arithmetic is over exact rationals.

mod io;
mod isometry;
mod lattice;
mod presentation;
pub mod presets;

use thiserror::Error;

pub use isometry::Isometry;
pub use lattice::Lattice;
pub use presentation::PlatycosmPresentation;
pub use presets::Preset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("rotational part is not orthogonal")]
    NotOrthogonal,
    #[error("lattice basis is degenerate")]
    DegenerateLattice,
    #[error("unsupported preset {0:?}; valid presets are: cubical_torocosm, two_tall, tetra, didi")]
    UnknownPreset(String),
    #[error("presentation has no coset representatives")]
    EmptyPresentation,
    #[error("first coset representative must be the identity")]
    FirstRepNotIdentity,
    #[error("rotational part of representative {rep} does not preserve the lattice")]
    LatticeNotInvariant { rep: usize },
    #[error("representatives {first} and {second} lie in the same coset")]
    DuplicateCoset { first: usize, second: usize },
    #[error("product of representatives {left} and {right} is not in any listed coset")]
    NotClosed { left: usize, right: usize },
    #[error("rotational parts do not form a group")]
    HolonomyNotGroup,
    #[error("representative {rep} has a fixed point")]
    FixedPoint { rep: usize },
    #[error("invalid space document: {0}")]
    Document(String),
}
