use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{GraphError, VertexId, VertexSet, WitnessedGraph};

/// A (possibly partial) assignment of colour indices to vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: BTreeMap<VertexId, u32>,
}

impl Coloring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, v: VertexId, color: u32) {
        self.colors.insert(v, color);
    }

    pub fn get(&self, v: VertexId) -> Option<u32> {
        self.colors.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.colors.iter().map(|(&v, &c)| (v, c))
    }

    pub fn domain(&self) -> VertexSet {
        self.colors.keys().copied().collect()
    }

    /// Number of distinct colours used.
    pub fn color_count(&self) -> usize {
        self.colors.values().collect::<BTreeSet<_>>().len()
    }

    /// Total on `g` and proper on every witness.
    pub fn is_proper(&self, g: &WitnessedGraph) -> bool {
        self.is_proper_on(g, &g.all_vertices())
    }

    /// Colours all of `set` and separates the ends of every witness inside `set`.
    pub fn is_proper_on(&self, g: &WitnessedGraph, set: &VertexSet) -> bool {
        set.iter().all(|v| self.colors.contains_key(v))
            && g.witnesses().all(|w| {
                let (a, b) = g.ends(w);
                !(set.contains(&a) && set.contains(&b)) || self.get(a) != self.get(b)
            })
    }
}

/// Colours `h` by composing the vertex map `map: V(h) -> V(g)` with `col`.
pub fn pullback_coloring(
    h: &WitnessedGraph,
    g: &WitnessedGraph,
    map: &[VertexId],
    col: &Coloring,
) -> Result<Coloring, GraphError> {
    if map.len() != h.vertex_count() {
        return Err(GraphError::MapLength { expected: h.vertex_count(), found: map.len() });
    }
    for &image in map {
        g.check_vertex(image)?;
    }
    for w in h.witnesses() {
        let (a, b) = h.ends(w);
        if !g.adjacent(map[a.0], map[b.0]) {
            return Err(GraphError::NotHomomorphism(
                h.vertex_name(a).to_string(),
                h.vertex_name(b).to_string(),
            ));
        }
    }
    let mut out = Coloring::new();
    for v in h.vertices() {
        let c = col
            .get(map[v.0])
            .ok_or_else(|| GraphError::Uncolored(g.vertex_name(map[v.0]).to_string()))?;
        out.set(v, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_pullback_is_unchanged() {
        let c5 = WitnessedGraph::cycle(5);
        let col = c5.greedy_coloring();
        let id: Vec<_> = c5.vertices().collect();
        assert_eq!(pullback_coloring(&c5, &c5, &id, &col).unwrap(), col);
    }

    #[test]
    fn folding_a_path_onto_an_edge() {
        let p3 = WitnessedGraph::path(3);
        let edge = WitnessedGraph::path(2);
        let mut col = Coloring::new();
        col.set(VertexId(0), 0);
        col.set(VertexId(1), 1);
        let folded = pullback_coloring(&p3, &edge, &[VertexId(0), VertexId(1), VertexId(0)], &col).unwrap();
        assert!(folded.is_proper(&p3));
        assert_eq!(folded.iter().map(|(_, c)| c).collect::<Vec<_>>(), [0, 1, 0]);
    }

    #[test]
    fn non_homomorphisms_are_rejected() {
        let p3 = WitnessedGraph::path(3);
        let edge = WitnessedGraph::path(2);
        let col = edge.greedy_coloring();
        let err = pullback_coloring(&p3, &edge, &[VertexId(0), VertexId(0), VertexId(1)], &col);
        assert!(matches!(err, Err(GraphError::NotHomomorphism(_, _))));
    }
}
