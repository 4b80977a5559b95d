//! Finite witnessed graphs.
//!
//! A [`WitnessedGraph`] keeps its edge relation as a set of witnesses, each
//! projecting onto an unordered pair of distinct vertices. Several witnesses
//! may project onto the same pair, so a homomorphism into the graph has to
//! pick a witness for every edge it maps.

mod coloring;
mod io;
mod parity;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use coloring::{pullback_coloring, Coloring};
pub use io::{GraphJson, WitnessJson};
pub use parity::{BipartiteCertificate, PhiVerdict, Walk};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WitnessId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for WitnessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w#{}", self.0)
    }
}

pub type VertexSet = BTreeSet<VertexId>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown witness {0}")]
    UnknownWitness(String),
    #[error("witness {0} joins a vertex to itself")]
    Loop(String),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate witness id {0:?}")]
    DuplicateWitness(String),
    #[error("the set admits odd walks, so no 2-colourable invariant superset exists")]
    PhiFails,
    #[error("vertex {0} is not covered by any piece")]
    CoverIncomplete(String),
    #[error("piece {0} admits odd walks")]
    PieceNotTiny(usize),
    #[error("edge {0}-{1} is not mapped onto an edge")]
    NotHomomorphism(String, String),
    #[error("vertex map has length {found}, expected {expected}")]
    MapLength { expected: usize, found: usize },
    #[error("vertex {0} has no colour")]
    Uncolored(String),
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Connected components with a 2-colouring attempt per component.
#[derive(Debug, Clone)]
pub struct Components {
    /// Component index per vertex, numbered by least member.
    pub id: Vec<usize>,
    /// BFS parity of each vertex from the least vertex of its component.
    pub side: Vec<u8>,
    /// Whether each component is bipartite.
    pub bipartite: Vec<bool>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.bipartite.len()
    }

    pub fn in_bipartite_component(&self, v: VertexId) -> bool {
        self.bipartite[self.id[v.0]]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessedGraph {
    vertex_names: Vec<String>,
    witness_names: Vec<String>,
    ends: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(VertexId, WitnessId)>>,
}

impl WitnessedGraph {
    /// An edgeless graph on vertices named `"0"`, `"1"`, ...
    pub fn edgeless(n: usize) -> Self {
        Self::with_vertex_names((0..n).map(|i| i.to_string())).expect("distinct names")
    }

    pub fn with_vertex_names<I, S>(names: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vertex_names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for name in &vertex_names {
            if !seen.insert(name.as_str()) {
                return Err(GraphError::DuplicateVertex(name.clone()));
            }
        }
        let n = vertex_names.len();
        Ok(WitnessedGraph {
            vertex_names,
            witness_names: Vec::new(),
            ends: Vec::new(),
            adjacency: vec![Vec::new(); n],
        })
    }

    /// Builds a graph on `n` vertices with one auto-named witness per pair.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::edgeless(n);
        for &(u, v) in edges {
            g.add_witness(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_edges(n, &edges).expect("valid complete graph")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("valid cycle")
    }

    /// The path on `n` vertices.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("valid path")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, &edges).expect("valid Petersen graph")
    }

    /// Disjoint union; vertices of `other` are renamed with a `'` suffix on clashes.
    pub fn disjoint_union(&self, other: &WitnessedGraph) -> WitnessedGraph {
        let mut names = self.vertex_names.clone();
        let taken: BTreeSet<&str> = self.vertex_names.iter().map(String::as_str).collect();
        for name in &other.vertex_names {
            let mut candidate = name.clone();
            while taken.contains(candidate.as_str()) || names.contains(&candidate) {
                candidate.push('\'');
            }
            names.push(candidate);
        }
        let mut g = Self::with_vertex_names(names).expect("renamed apart");
        let offset = self.vertex_count();
        for &(a, b) in &self.ends {
            g.add_witness(a, b).expect("valid witness");
        }
        for &(a, b) in &other.ends {
            g.add_witness(VertexId(a.0 + offset), VertexId(b.0 + offset))
                .expect("valid witness");
        }
        g
    }

    /// Adds a witness with an auto-generated id `w<index>`.
    pub fn add_witness(&mut self, u: VertexId, v: VertexId) -> Result<WitnessId, GraphError> {
        let name = format!("w{}", self.witness_names.len());
        self.add_named_witness(name, u, v)
    }

    pub fn add_named_witness(
        &mut self,
        name: impl Into<String>,
        u: VertexId,
        v: VertexId,
    ) -> Result<WitnessId, GraphError> {
        let name = name.into();
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(name));
        }
        if self.witness_names.contains(&name) {
            return Err(GraphError::DuplicateWitness(name));
        }
        let w = WitnessId(self.ends.len());
        self.witness_names.push(name);
        self.ends.push((u.min(v), u.max(v)));
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adjacency[a.0];
            let at = list.partition_point(|&entry| entry < (b, w));
            list.insert(at, (b, w));
        }
        Ok(w)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn witness_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = WitnessId> {
        (0..self.witness_count()).map(WitnessId)
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    /// Endpoints of a witness, smaller id first.
    pub fn ends(&self, w: WitnessId) -> (VertexId, VertexId) {
        self.ends[w.0]
    }

    /// The endpoint of `w` other than `v`, if `v` is an endpoint.
    pub fn other_end(&self, w: WitnessId, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.ends(w);
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    /// `(neighbour, witness)` pairs sorted by neighbour then witness.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, WitnessId)] {
        &self.adjacency[v.0]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let list = self.incident(v);
        list.iter()
            .enumerate()
            .filter(move |&(i, &(u, _))| i == 0 || list[i - 1].0 != u)
            .map(|(_, &(u, _))| u)
    }

    /// Number of distinct neighbours.
    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).count()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn witnesses_between(&self, u: VertexId, v: VertexId) -> impl Iterator<Item = WitnessId> + '_ {
        let list = self.incident(u);
        let start = list.partition_point(|&(x, _)| x < v);
        list[start..].iter().take_while(move |&&(x, _)| x == v).map(|&(_, w)| w)
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.witnesses_between(u, v).next().is_some()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn witness_name(&self, w: WitnessId) -> &str {
        &self.witness_names[w.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name).map(VertexId)
    }

    pub fn witness_by_name(&self, name: &str) -> Option<WitnessId> {
        self.witness_names.iter().position(|n| n == name).map(WitnessId)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v.0 < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v.to_string()))
        }
    }

    pub fn check_set(&self, set: &VertexSet) -> Result<(), GraphError> {
        set.iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// Resolves a list of vertex names into a set.
    pub fn vertex_set_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet, GraphError> {
        names
            .iter()
            .map(|n| {
                self.vertex_by_name(n.as_ref())
                    .ok_or_else(|| GraphError::UnknownVertex(n.as_ref().to_string()))
            })
            .collect()
    }

    pub fn components(&self) -> Components {
        let n = self.vertex_count();
        let mut id = vec![usize::MAX; n];
        let mut side = vec![0u8; n];
        let mut bipartite = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..n {
            if id[root] != usize::MAX {
                continue;
            }
            let comp = bipartite.len();
            let mut ok = true;
            id[root] = comp;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &self.adjacency[u] {
                    if id[v.0] == usize::MAX {
                        id[v.0] = comp;
                        side[v.0] = side[u] ^ 1;
                        queue.push_back(v.0);
                    } else if side[v.0] == side[u] {
                        ok = false;
                    }
                }
            }
            bipartite.push(ok);
        }
        Components { id, side, bipartite }
    }

    pub fn is_bipartite(&self) -> bool {
        self.components().bipartite.iter().all(|&b| b)
    }

    /// Union of the connected components meeting `set`.
    pub fn invariant_closure(&self, set: &VertexSet) -> Result<VertexSet, GraphError> {
        self.check_set(set)?;
        let comps = self.components();
        let hit: BTreeSet<usize> = set.iter().map(|v| comps.id[v.0]).collect();
        Ok(self.vertices().filter(|v| hit.contains(&comps.id[v.0])).collect())
    }
}
