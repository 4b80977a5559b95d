use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::HomError;
use crate::gadget::{GadgetVertex, PathGadget};
use crate::graph::{VertexId, Walk, WitnessId, WitnessedGraph};

/// A homomorphism `L^c_n -> G`: a vertex image per gadget position and a
/// witness per gadget edge (edge `i` joins positions `i` and `i + 1`).
///
/// Ordering compares the vertex assignment first, then the witnesses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Hom {
    pub vertices: Vec<VertexId>,
    pub witnesses: Vec<WitnessId>,
}

/// `"u~v"` with the endpoints in canonical path order.
pub fn edge_label(gadget: &PathGadget, edge: usize) -> String {
    format!("{}~{}", gadget.vertex_at(edge), gadget.vertex_at(edge + 1))
}

/// Name-keyed serialisation of a [`Hom`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HomJson {
    pub vertex_assignments: BTreeMap<String, String>,
    pub witness_assignments: BTreeMap<String, String>,
}

impl Hom {
    pub fn image(&self, gadget: &PathGadget, u: &GadgetVertex) -> Result<VertexId, HomError> {
        Ok(self.vertices[gadget.require(u)?])
    }

    pub fn verify(&self, gadget: &PathGadget, g: &WitnessedGraph) -> Result<(), HomError> {
        if self.vertices.len() != gadget.vertex_count() || self.witnesses.len() != gadget.edge_count() {
            return Err(HomError::ShapeMismatch);
        }
        for &v in &self.vertices {
            g.check_vertex(v)?;
        }
        for (e, &w) in self.witnesses.iter().enumerate() {
            if w.0 >= g.witness_count() {
                return Err(HomError::InvalidHom(format!("unknown witness {w}")));
            }
            if g.other_end(w, self.vertices[e]) != Some(self.vertices[e + 1]) {
                return Err(HomError::InvalidHom(format!(
                    "witness {} does not project onto the image of {}",
                    g.witness_name(w),
                    edge_label(gadget, e)
                )));
            }
        }
        Ok(())
    }

    /// The restriction `φ^bit` to copy `bit` of `small` inside `big`.
    pub fn restriction(&self, big: &PathGadget, small: &PathGadget, bit: bool) -> Result<Hom, HomError> {
        let images = small.copy_embed(big, bit)?;
        let positions: Vec<usize> = images.iter().map(|u| big.require(u)).collect::<Result<_, _>>()?;
        let vertices = positions.iter().map(|&p| self.vertices[p]).collect();
        let witnesses = positions.windows(2).map(|w| self.witnesses[w[0].min(w[1])]).collect();
        Ok(Hom { vertices, witnesses })
    }

    /// Builds `φ` on `big = L_{n+1}` with `φ^0 = left`, `φ^1 = right` and the
    /// join path sent along `walk` (of length `c(n) + 2`).
    pub fn glue(small: &PathGadget, big: &PathGadget, left: &Hom, right: &Hom, walk: &Walk) -> Result<Hom, HomError> {
        let n = small.level();
        if big.level() != n + 1 || big.prefix().truncated(n) != *small.prefix() {
            return Err(crate::gadget::GadgetError::PrefixMismatch.into());
        }
        let join = big.prefix().values()[n];
        if walk.len() as u64 != join + 2 {
            return Err(HomError::ShapeMismatch);
        }
        let glue_vertex = GadgetVertex::endpoint(n, true);
        if walk.start() != left.image(small, &glue_vertex)? || walk.end() != right.image(small, &glue_vertex)? {
            return Err(HomError::GlueMismatch);
        }
        let side = |bit: bool| if bit { right } else { left };
        let image = |u: &GadgetVertex| -> Result<VertexId, HomError> {
            match u.t.popped() {
                Some((parent, bit)) => side(bit).image(small, &GadgetVertex::new(u.k, parent)),
                None => Ok(walk.vertices()[u.k as usize + 1]),
            }
        };
        let vertices = big.vertices().iter().map(image).collect::<Result<Vec<_>, _>>()?;
        let mut witnesses = Vec::with_capacity(big.edge_count());
        for (a, b) in big.edges() {
            let w = match (a.t.popped(), b.t.popped()) {
                (Some((pa, bit)), Some((pb, _))) => {
                    let (ua, ub) = (GadgetVertex::new(a.k, pa), GadgetVertex::new(b.k, pb));
                    let e = small.edge_index(&ua, &ub).expect("copy edges come from small edges");
                    side(bit).witnesses[e]
                }
                (None, None) => walk.witnesses()[a.k.min(b.k) as usize + 1],
                (Some((_, bit)), None) | (None, Some((_, bit))) => {
                    if bit {
                        walk.witnesses()[join as usize + 1]
                    } else {
                        walk.witnesses()[0]
                    }
                }
            };
            witnesses.push(w);
        }
        Ok(Hom { vertices, witnesses })
    }

    pub fn to_json(&self, gadget: &PathGadget, g: &WitnessedGraph) -> HomJson {
        HomJson {
            vertex_assignments: gadget
                .vertices()
                .iter()
                .zip(&self.vertices)
                .map(|(u, &v)| (u.to_string(), g.vertex_name(v).to_string()))
                .collect(),
            witness_assignments: self
                .witnesses
                .iter()
                .enumerate()
                .map(|(e, &w)| (edge_label(gadget, e), g.witness_name(w).to_string()))
                .collect(),
        }
    }

    pub fn from_json(doc: &HomJson, gadget: &PathGadget, g: &WitnessedGraph) -> Result<Hom, HomError> {
        let mut vertices = Vec::with_capacity(gadget.vertex_count());
        for u in gadget.vertices() {
            let name = doc.vertex_assignments.get(&u.to_string()).ok_or(HomError::ShapeMismatch)?;
            vertices.push(g.vertex_by_name(name).ok_or_else(|| crate::graph::GraphError::UnknownVertex(name.clone()))?);
        }
        let mut witnesses = Vec::with_capacity(gadget.edge_count());
        for e in 0..gadget.edge_count() {
            let name = doc.witness_assignments.get(&edge_label(gadget, e)).ok_or(HomError::ShapeMismatch)?;
            witnesses.push(g.witness_by_name(name).ok_or_else(|| crate::graph::GraphError::UnknownWitness(name.clone()))?);
        }
        if doc.vertex_assignments.len() != vertices.len() || doc.witness_assignments.len() != witnesses.len() {
            return Err(HomError::ShapeMismatch);
        }
        let hom = Hom { vertices, witnesses };
        hom.verify(gadget, g)?;
        Ok(hom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::ParamPrefix;

    #[test]
    fn glue_on_triangle() {
        let k3 = WitnessedGraph::complete(3);
        let small = PathGadget::build(&ParamPrefix::empty());
        let big = PathGadget::build(&ParamPrefix::new(vec![1]).unwrap());
        let phi0 = Hom { vertices: vec![VertexId(0)], witnesses: vec![] };
        let walk = k3.min_odd_closed_walk_at(VertexId(0)).unwrap().unwrap();
        let glued = Hom::glue(&small, &big, &phi0, &phi0, &walk).unwrap();
        glued.verify(&big, &k3).unwrap();
        assert_eq!(glued.restriction(&big, &small, false).unwrap(), phi0);
        assert_eq!(glued.restriction(&big, &small, true).unwrap(), phi0);

        let json = glued.to_json(&big, &k3);
        assert_eq!(json.vertex_assignments["p1"], "2");
        assert_eq!(Hom::from_json(&json, &big, &k3).unwrap(), glued);
    }

    #[test]
    fn glue_rejects_mismatched_walks() {
        let k3 = WitnessedGraph::complete(3);
        let small = PathGadget::build(&ParamPrefix::empty());
        let big = PathGadget::build(&ParamPrefix::new(vec![1]).unwrap());
        let phi0 = Hom { vertices: vec![VertexId(1)], witnesses: vec![] };
        let walk = k3.min_odd_closed_walk_at(VertexId(0)).unwrap().unwrap();
        assert_eq!(Hom::glue(&small, &big, &phi0, &phi0, &walk), Err(HomError::GlueMismatch));
    }
}
