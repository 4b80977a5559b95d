use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Hom, HomError};
use crate::gadget::{GadgetVertex, PathGadget};
use crate::graph::{PhiVerdict, VertexSet, WitnessId, WitnessedGraph};

/// A finite list of homomorphisms over one gadget, sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitHomSet {
    gadget: Arc<PathGadget>,
    homs: Vec<Hom>,
}

impl ExplicitHomSet {
    pub fn new(gadget: Arc<PathGadget>, mut homs: Vec<Hom>) -> Result<Self, HomError> {
        if homs
            .iter()
            .any(|h| h.vertices.len() != gadget.vertex_count() || h.witnesses.len() != gadget.edge_count())
        {
            return Err(HomError::ShapeMismatch);
        }
        homs.sort();
        if homs.windows(2).any(|w| w[0] == w[1]) {
            return Err(HomError::DuplicateHom);
        }
        Ok(ExplicitHomSet { gadget, homs })
    }

    pub(crate) fn from_sorted_unique(gadget: Arc<PathGadget>, homs: Vec<Hom>) -> Self {
        debug_assert!(homs.windows(2).all(|w| w[0] < w[1]));
        ExplicitHomSet { gadget, homs }
    }

    pub fn empty(gadget: Arc<PathGadget>) -> Self {
        ExplicitHomSet { gadget, homs: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.homs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.homs.is_empty()
    }

    pub fn homs(&self) -> &[Hom] {
        &self.homs
    }

    pub fn gadget(&self) -> &Arc<PathGadget> {
        &self.gadget
    }

    pub fn contains(&self, hom: &Hom) -> bool {
        self.homs.binary_search(hom).is_ok()
    }

    pub fn project(&self, u: &GadgetVertex) -> Result<VertexSet, HomError> {
        let pos = self.gadget.require(u)?;
        Ok(self.homs.iter().map(|h| h.vertices[pos]).collect())
    }

    pub fn project_edge(&self, e: usize) -> BTreeSet<WitnessId> {
        self.homs.iter().map(|h| h.witnesses[e]).collect()
    }

    pub fn count(&self) -> usize {
        self.homs.len()
    }

    /// Least gadget vertex whose projection admits no odd walk.
    pub fn tiny_witness(&self, g: &WitnessedGraph) -> Option<GadgetVertex> {
        self.gadget.vertices().iter().copied().find(|u| {
            let set = self.project(u).expect("gadget vertex");
            g.phi_bound(&set).expect("hom images are graph vertices") == PhiVerdict::NoOddWalk
        })
    }

    pub fn is_tiny(&self, g: &WitnessedGraph) -> bool {
        self.tiny_witness(g).is_some()
    }

    /// Every member sends some gadget vertex into a bipartite component.
    pub fn is_small(&self, g: &WitnessedGraph) -> bool {
        let comps = g.components();
        self.homs.iter().all(|h| h.vertices.iter().any(|&v| comps.in_bipartite_component(v)))
    }

    pub fn is_large(&self, g: &WitnessedGraph) -> bool {
        !self.is_small(g)
    }

    pub fn is_subset(&self, other: &ExplicitHomSet) -> bool {
        self.homs.iter().all(|h| other.contains(h))
    }

    pub fn filter(&self, keep: impl Fn(&Hom) -> bool) -> Self {
        Self::from_sorted_unique(self.gadget.clone(), self.homs.iter().filter(|h| keep(h)).cloned().collect())
    }

    pub fn union(&self, other: &ExplicitHomSet) -> Result<Self, HomError> {
        if self.gadget.prefix() != other.gadget.prefix() {
            return Err(crate::gadget::GadgetError::PrefixMismatch.into());
        }
        let merged: BTreeSet<Hom> = self.homs.iter().chain(&other.homs).cloned().collect();
        Ok(Self::from_sorted_unique(self.gadget.clone(), merged.into_iter().collect()))
    }
}
