//! Odd walks, the parity double cover, and the 2-colouring constructions built on it.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Coloring, GraphError, VertexId, VertexSet, WitnessId, WitnessedGraph};

/// A walk together with the witness chosen for each step.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Walk {
    vertices: Vec<VertexId>,
    witnesses: Vec<WitnessId>,
}

impl Walk {
    pub fn trivial(v: VertexId) -> Self {
        Walk { vertices: vec![v], witnesses: Vec::new() }
    }

    /// Checks that step `j` uses a witness projecting onto `{v[j-1], v[j]}`.
    pub fn new(
        g: &WitnessedGraph,
        vertices: Vec<VertexId>,
        witnesses: Vec<WitnessId>,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() || witnesses.len() + 1 != vertices.len() {
            return Err(GraphError::InvalidWalk(format!(
                "{} vertices and {} witnesses",
                vertices.len(),
                witnesses.len()
            )));
        }
        for &v in &vertices {
            g.check_vertex(v)?;
        }
        for (j, &w) in witnesses.iter().enumerate() {
            if w.0 >= g.witness_count() {
                return Err(GraphError::UnknownWitness(w.to_string()));
            }
            if g.other_end(w, vertices[j]) != Some(vertices[j + 1]) {
                return Err(GraphError::InvalidWalk(format!("step {} does not follow witness {w}", j + 1)));
            }
        }
        Ok(Walk { vertices, witnesses })
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn witnesses(&self) -> &[WitnessId] {
        &self.witnesses
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().expect("walks are nonempty")
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    pub fn is_odd(&self) -> bool {
        self.len() % 2 == 1
    }

    /// Lengthens the walk by `2 * pairs` steps, bouncing along its first edge.
    pub fn padded(&self, pairs: usize) -> Walk {
        if pairs == 0 || self.is_empty() {
            return self.clone();
        }
        let (v0, v1, w1) = (self.vertices[0], self.vertices[1], self.witnesses[0]);
        let mut vertices = vec![v0];
        let mut witnesses = Vec::with_capacity(self.len() + 2 * pairs);
        for _ in 0..pairs {
            vertices.extend([v1, v0]);
            witnesses.extend([w1, w1]);
        }
        vertices.extend_from_slice(&self.vertices[1..]);
        witnesses.extend_from_slice(&self.witnesses);
        Walk { vertices, witnesses }
    }
}

/// Answer to "how short can an odd walk with both endpoints in `A` be?".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "camelCase")]
pub enum PhiVerdict {
    NoOddWalk,
    /// Odd walks exist; the shortest has this (odd) length and every longer
    /// odd length is attained too.
    #[serde(rename_all = "camelCase")]
    Unbounded { min_odd_length: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BipartiteCertificate {
    TwoColoring(Coloring),
    OddClosedWalk(Walk),
}

impl WitnessedGraph {
    fn state(v: VertexId, parity: usize) -> usize {
        2 * v.0 + parity
    }

    /// BFS distances in the parity double cover, from every `(source, parity)` at once.
    fn parity_distances(&self, sources: impl IntoIterator<Item = (VertexId, usize)>) -> Vec<Option<usize>> {
        let mut dist = vec![None; 2 * self.vertex_count()];
        let mut queue = VecDeque::new();
        for (v, p) in sources {
            let s = Self::state(v, p);
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back((v, p));
            }
        }
        while let Some((u, p)) = queue.pop_front() {
            let d = dist[Self::state(u, p)].expect("queued states are reached");
            for v in self.neighbors(u) {
                let next = Self::state(v, p ^ 1);
                if dist[next].is_none() {
                    dist[next] = Some(d + 1);
                    queue.push_back((v, p ^ 1));
                }
            }
        }
        dist
    }

    pub fn phi_bound(&self, set: &VertexSet) -> Result<PhiVerdict, GraphError> {
        self.check_set(set)?;
        let dist = self.parity_distances(set.iter().map(|&v| (v, 0)));
        let min = set.iter().filter_map(|&v| dist[Self::state(v, 1)]).min();
        Ok(match min {
            None => PhiVerdict::NoOddWalk,
            Some(len) => PhiVerdict::Unbounded { min_odd_length: len },
        })
    }

    /// Whether every odd walk with endpoints in `set` has length at most `2k - 1`.
    ///
    /// Walks may repeat edges, so any odd walk can be padded to every larger
    /// odd length; the answer never depends on `k`.
    pub fn phi_holds(&self, set: &VertexSet, _k: u64) -> Result<bool, GraphError> {
        Ok(self.phi_bound(set)? == PhiVerdict::NoOddWalk)
    }

    /// Shortest odd closed walk at `x`, lexicographically least among the shortest.
    pub fn min_odd_closed_walk_at(&self, x: VertexId) -> Result<Option<Walk>, GraphError> {
        self.check_vertex(x)?;
        let to_target = self.parity_distances([(x, 1)]);
        let Some(total) = to_target[Self::state(x, 0)] else {
            return Ok(None);
        };
        let mut vertices = vec![x];
        let mut witnesses = Vec::with_capacity(total);
        let (mut cur, mut parity) = (x, 0);
        for remaining in (0..total).rev() {
            let &(v, w) = self
                .incident(cur)
                .iter()
                .find(|&&(v, _)| to_target[Self::state(v, parity ^ 1)] == Some(remaining))
                .expect("BFS distances guarantee a successor");
            vertices.push(v);
            witnesses.push(w);
            cur = v;
            parity ^= 1;
        }
        Ok(Some(Walk { vertices, witnesses }))
    }

    /// Odd closed walk at `x` of length at least `min_len`: the shortest one,
    /// padded along its first edge up to the least admissible odd length.
    pub fn odd_closed_walk_at_least(&self, x: VertexId, min_len: usize) -> Result<Option<Walk>, GraphError> {
        let Some(base) = self.min_odd_closed_walk_at(x)? else {
            return Ok(None);
        };
        let pairs = min_len.saturating_sub(base.len()).div_ceil(2);
        Ok(Some(base.padded(pairs)))
    }

    /// A proper 2-colouring, or a shortest odd closed walk (lexicographically least).
    pub fn bipartite_certificate(&self) -> BipartiteCertificate {
        let comps = self.components();
        if comps.bipartite.iter().all(|&b| b) {
            let mut col = Coloring::new();
            for v in self.vertices() {
                col.set(v, comps.side[v.0] as u32);
            }
            return BipartiteCertificate::TwoColoring(col);
        }
        let best = self
            .vertices()
            .filter(|&v| !comps.in_bipartite_component(v))
            .filter_map(|v| self.min_odd_closed_walk_at(v).expect("known vertex"))
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.vertices.cmp(&b.vertices)))
            .expect("a non-bipartite component has an odd closed walk");
        BipartiteCertificate::OddClosedWalk(best)
    }

    /// The component closure of `set` with a proper 2-colouring of it.
    pub fn bipartite_superset_coloring(&self, set: &VertexSet) -> Result<(VertexSet, Coloring), GraphError> {
        if self.phi_bound(set)? != PhiVerdict::NoOddWalk {
            return Err(GraphError::PhiFails);
        }
        let closure = self.invariant_closure(set)?;
        let comps = self.components();
        let mut col = Coloring::new();
        for &v in &closure {
            col.set(v, comps.side[v.0] as u32);
        }
        Ok((closure, col))
    }

    /// Glues the 2-colourings of the closures of `pieces`, giving each vertex
    /// the colour from the first closure that contains it.
    pub fn two_color_from_cover(&self, pieces: &[VertexSet]) -> Result<Coloring, GraphError> {
        let mut parts = Vec::with_capacity(pieces.len());
        for (i, piece) in pieces.iter().enumerate() {
            match self.bipartite_superset_coloring(piece) {
                Ok(part) => parts.push(part),
                Err(GraphError::PhiFails) => return Err(GraphError::PieceNotTiny(i)),
                Err(e) => return Err(e),
            }
        }
        let mut col = Coloring::new();
        for v in self.vertices() {
            let (_, part) = parts
                .iter()
                .find(|(closure, _)| closure.contains(&v))
                .ok_or_else(|| GraphError::CoverIncomplete(self.vertex_name(v).to_string()))?;
            col.set(v, part.get(v).expect("closure is coloured"));
        }
        Ok(col)
    }

    /// First-fit colouring in ascending vertex order.
    pub fn greedy_coloring(&self) -> Coloring {
        let mut col = Coloring::new();
        for v in self.vertices() {
            let used: std::collections::BTreeSet<u32> =
                self.neighbors(v).filter_map(|u| col.get(u)).collect();
            let c = (0..).find(|c| !used.contains(c)).expect("finitely many colours used");
            col.set(v, c);
        }
        col
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[usize]) -> VertexSet {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn certificate_examples() {
        match WitnessedGraph::cycle(4).bipartite_certificate() {
            BipartiteCertificate::TwoColoring(c) => {
                assert!(c.is_proper(&WitnessedGraph::cycle(4)));
                assert_eq!((0..4).map(|i| c.get(VertexId(i)).unwrap()).collect::<Vec<_>>(), [0, 1, 0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
        match WitnessedGraph::complete(3).bipartite_certificate() {
            BipartiteCertificate::OddClosedWalk(w) => {
                assert_eq!(w.len(), 3);
                assert!(w.is_closed());
                assert_eq!(w.vertices(), &[VertexId(0), VertexId(1), VertexId(2), VertexId(0)]);
            }
            other => panic!("unexpected {other:?}"),
        }
        match WitnessedGraph::edgeless(1).bipartite_certificate() {
            BipartiteCertificate::TwoColoring(c) => assert_eq!(c.color_count(), 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn phi_examples() {
        let k3 = WitnessedGraph::complete(3);
        assert_eq!(k3.phi_bound(&set(&[0])).unwrap(), PhiVerdict::Unbounded { min_odd_length: 3 });
        assert!(!k3.phi_holds(&set(&[0]), 100).unwrap());
        assert_eq!(k3.phi_bound(&VertexSet::new()).unwrap(), PhiVerdict::NoOddWalk);

        let p3 = WitnessedGraph::path(3);
        assert_eq!(p3.phi_bound(&set(&[0, 2])).unwrap(), PhiVerdict::NoOddWalk);
        assert!(p3.phi_holds(&set(&[0, 2]), 0).unwrap());

        let edge = WitnessedGraph::path(2);
        assert!(!edge.phi_holds(&set(&[0, 1]), 1).unwrap());
        assert_eq!(edge.phi_bound(&set(&[0, 1])).unwrap(), PhiVerdict::Unbounded { min_odd_length: 1 });

        assert_eq!(k3.phi_bound(&set(&[7])), Err(GraphError::UnknownVertex("#7".into())));
    }

    #[test]
    fn padded_walks_keep_parity_and_validity() {
        let k3 = WitnessedGraph::complete(3);
        let w = k3.odd_closed_walk_at_least(VertexId(0), 6).unwrap().unwrap();
        assert_eq!(w.len(), 7);
        assert!(w.is_closed() && w.is_odd());
        Walk::new(&k3, w.vertices().to_vec(), w.witnesses().to_vec()).unwrap();
        let c5 = WitnessedGraph::cycle(5);
        assert_eq!(c5.min_odd_closed_walk_at(VertexId(2)).unwrap().unwrap().len(), 5);
        assert!(WitnessedGraph::cycle(4).min_odd_closed_walk_at(VertexId(0)).unwrap().is_none());
    }

    #[test]
    fn superset_coloring_examples() {
        let p3 = WitnessedGraph::path(3);
        let (b, col) = p3.bipartite_superset_coloring(&set(&[0])).unwrap();
        assert_eq!(b, set(&[0, 1, 2]));
        assert!(col.is_proper_on(&p3, &b));

        let (b, col) = p3.bipartite_superset_coloring(&VertexSet::new()).unwrap();
        assert!(b.is_empty() && col.is_empty());

        let two = WitnessedGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let (b, col) = two.bipartite_superset_coloring(&set(&[0, 2])).unwrap();
        assert_eq!(b, set(&[0, 1, 2, 3]));
        assert!(col.is_proper(&two));

        let k3 = WitnessedGraph::complete(3);
        assert_eq!(k3.bipartite_superset_coloring(&set(&[1])), Err(GraphError::PhiFails));
    }

    #[test]
    fn cover_examples() {
        let c4 = WitnessedGraph::cycle(4);
        assert!(c4.two_color_from_cover(&[set(&[0])]).unwrap().is_proper(&c4));

        let two = WitnessedGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let col = two.two_color_from_cover(&[set(&[0]), set(&[2])]).unwrap();
        assert!(col.is_proper(&two));
        assert_eq!(col.get(VertexId(0)), Some(0));
        assert_eq!(col.get(VertexId(2)), Some(0));

        let k3 = WitnessedGraph::complete(3);
        assert_eq!(k3.two_color_from_cover(&[set(&[0, 1, 2])]), Err(GraphError::PieceNotTiny(0)));
        assert!(matches!(two.two_color_from_cover(&[set(&[0])]), Err(GraphError::CoverIncomplete(_))));
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(WitnessedGraph::complete(3).greedy_coloring().color_count(), 3);
        assert_eq!(WitnessedGraph::edgeless(4).greedy_coloring().color_count(), 1);
        let p5 = WitnessedGraph::path(5);
        let col = p5.greedy_coloring();
        assert!(col.is_proper(&p5) && col.color_count() <= 3);
    }
}
