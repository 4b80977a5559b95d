//! Sets of homomorphisms from a path gadget into a witnessed graph.
//!
//! [`HomProfile`] is the working representation: per-vertex and per-edge
//! allowed sets, kept arc consistent along the path. Because the gadget is a
//! path, arc consistency makes every projection exact and counting a linear
//! dynamic program. [`ExplicitHomSet`] lists homomorphisms one by one and
//! serves as the oracle representation.

mod explicit;
mod hom;
mod profile;

use thiserror::Error;

use crate::gadget::GadgetError;
use crate::graph::{GraphError, VertexId, WitnessedGraph};
use crate::graph::Walk;

pub use explicit::ExplicitHomSet;
pub use hom::{edge_label, Hom, HomJson};
pub use profile::{Enumeration, Extension, HomProfile, ProfileJson};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("not a homomorphism: {0}")]
    InvalidHom(String),
    #[error("assignment sizes do not match the gadget")]
    ShapeMismatch,
    #[error("the homomorphism set is not large")]
    NotLarge,
    #[error("the homomorphism is not in the set")]
    NotMember,
    #[error("duplicate homomorphism in explicit set")]
    DuplicateHom,
    #[error("gluing walk does not start and end at the copies' gluing vertex")]
    GlueMismatch,
}

/// Odd closed walk at `x` used to join two copies whose gluing vertex maps to
/// `x`, together with the join parameter it realises.
///
/// The join parameter is the least odd value `>= min_join` whose walk length
/// (`join + 2`) is attainable: the shortest odd closed walk at `x`, padded
/// back and forth along its first edge. `None` when `x` lies in a bipartite
/// component.
pub fn gluing_walk(g: &WitnessedGraph, x: VertexId, min_join: u64) -> Result<Option<(u64, Walk)>, GraphError> {
    let walk = g.odd_closed_walk_at_least(x, min_join as usize + 2)?;
    Ok(walk.map(|w| (w.len() as u64 - 2, w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gluing_walk_lengths() {
        let c5 = WitnessedGraph::cycle(5);
        assert_eq!(gluing_walk(&c5, VertexId(0), 1).unwrap().unwrap().0, 3);
        let k3 = WitnessedGraph::complete(3);
        assert_eq!(gluing_walk(&k3, VertexId(0), 1).unwrap().unwrap().0, 1);
        assert_eq!(gluing_walk(&k3, VertexId(0), 4).unwrap().unwrap().0, 5);
        assert_eq!(gluing_walk(&k3, VertexId(0), 0).unwrap().unwrap().0, 1);
        assert!(gluing_walk(&WitnessedGraph::cycle(4), VertexId(0), 1).unwrap().is_none());
    }
}
