use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{edge_label, gluing_walk, ExplicitHomSet, Hom, HomError};
use crate::gadget::{GadgetVertex, ParamPrefix, PathGadget};
use crate::graph::{PhiVerdict, VertexId, VertexSet, Walk, WitnessId, WitnessedGraph};
use crate::transfer::Semiring;

/// The set `{φ : φ(u) ∈ S_u for all u, φ(uv) ∈ W_uv for all uv}`.
///
/// Profiles are always stored normalised: arc consistent along the path,
/// and with every set empty as soon as one is.
#[derive(Debug, Clone)]
pub struct HomProfile<'g> {
    graph: &'g WitnessedGraph,
    gadget: Arc<PathGadget>,
    vertex_sets: Vec<VertexSet>,
    witness_sets: Vec<BTreeSet<WitnessId>>,
}

/// The first homomorphisms of a profile plus its exact size.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub homs: ExplicitHomSet,
    pub total: BigUint,
}

/// A witness that the doubled set is nonempty.
#[derive(Debug, Clone)]
pub struct Extension {
    /// The join parameter `d(n)`.
    pub join_length: u64,
    /// The gadget `L^d_{n+1}`.
    pub gadget: Arc<PathGadget>,
    /// A homomorphism whose two copy restrictions are the largeness witness.
    pub hom: Hom,
    /// The largeness witness both copies restrict to.
    pub base: Hom,
    /// The odd closed walk the join path is sent along.
    pub walk: Walk,
}

/// Name-keyed serialisation of a profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProfileJson {
    pub prefix: ParamPrefix,
    pub vertex_sets: BTreeMap<String, Vec<String>>,
    pub witness_sets: BTreeMap<String, Vec<String>>,
}

impl<'g> HomProfile<'g> {
    /// All of `Hom(L^c_n, G)`.
    pub fn full(gadget: Arc<PathGadget>, graph: &'g WitnessedGraph) -> Self {
        let vertex_sets = vec![graph.all_vertices(); gadget.vertex_count()];
        let witness_sets = vec![graph.witnesses().collect(); gadget.edge_count()];
        Self::normalized(graph, gadget, vertex_sets, witness_sets)
    }

    pub fn all_homs(prefix: &ParamPrefix, graph: &'g WitnessedGraph) -> Self {
        Self::full(Arc::new(PathGadget::build(prefix)), graph)
    }

    pub fn from_sets(
        gadget: Arc<PathGadget>,
        graph: &'g WitnessedGraph,
        vertex_sets: Vec<VertexSet>,
        witness_sets: Vec<BTreeSet<WitnessId>>,
    ) -> Result<Self, HomError> {
        if vertex_sets.len() != gadget.vertex_count() || witness_sets.len() != gadget.edge_count() {
            return Err(HomError::ShapeMismatch);
        }
        for set in &vertex_sets {
            graph.check_set(set)?;
        }
        if witness_sets.iter().flatten().any(|w| w.0 >= graph.witness_count()) {
            return Err(HomError::InvalidHom("unknown witness in profile".into()));
        }
        Ok(Self::normalized(graph, gadget, vertex_sets, witness_sets))
    }

    fn normalized(
        graph: &'g WitnessedGraph,
        gadget: Arc<PathGadget>,
        vertex_sets: Vec<VertexSet>,
        witness_sets: Vec<BTreeSet<WitnessId>>,
    ) -> Self {
        let mut p = HomProfile { graph, gadget, vertex_sets, witness_sets };
        p.normalize();
        p
    }

    fn fits(&self, e: usize, w: WitnessId) -> bool {
        let (a, b) = self.graph.ends(w);
        let (left, right) = (&self.vertex_sets[e], &self.vertex_sets[e + 1]);
        (left.contains(&a) && right.contains(&b)) || (left.contains(&b) && right.contains(&a))
    }

    /// Values of `vertex_sets[from]` reachable through edge `e` from `vertex_sets[to]`.
    fn supported(&self, e: usize, from: usize, to: usize) -> VertexSet {
        let g = self.graph;
        self.vertex_sets[from]
            .iter()
            .copied()
            .filter(|&x| {
                self.witness_sets[e]
                    .iter()
                    .any(|&w| g.other_end(w, x).is_some_and(|y| self.vertex_sets[to].contains(&y)))
            })
            .collect()
    }

    /// Forward then backward arc consistency; exact on a path.
    fn normalize(&mut self) {
        let edges = self.gadget.edge_count();
        for e in 0..edges {
            let keep: BTreeSet<_> = self.witness_sets[e].iter().copied().filter(|&w| self.fits(e, w)).collect();
            self.witness_sets[e] = keep;
            self.vertex_sets[e + 1] = self.supported(e, e + 1, e);
        }
        for e in (0..edges).rev() {
            let keep: BTreeSet<_> = self.witness_sets[e].iter().copied().filter(|&w| self.fits(e, w)).collect();
            self.witness_sets[e] = keep;
            self.vertex_sets[e] = self.supported(e, e, e + 1);
        }
        for e in 0..edges {
            let keep: BTreeSet<_> = self.witness_sets[e].iter().copied().filter(|&w| self.fits(e, w)).collect();
            self.witness_sets[e] = keep;
        }
        if self.vertex_sets.iter().any(BTreeSet::is_empty) {
            self.vertex_sets.iter_mut().for_each(BTreeSet::clear);
            self.witness_sets.iter_mut().for_each(BTreeSet::clear);
        }
    }

    pub fn graph(&self) -> &'g WitnessedGraph {
        self.graph
    }

    pub fn gadget(&self) -> &Arc<PathGadget> {
        &self.gadget
    }

    pub fn vertex_sets(&self) -> &[VertexSet] {
        &self.vertex_sets
    }

    pub fn witness_sets(&self) -> &[BTreeSet<WitnessId>] {
        &self.witness_sets
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_sets[0].is_empty()
    }

    /// Restricts every vertex set to the vertices satisfying `keep`.
    pub fn restrict_vertices(&self, keep: impl Fn(VertexId) -> bool) -> Self {
        let vertex_sets = self
            .vertex_sets
            .iter()
            .map(|s| s.iter().copied().filter(|&v| keep(v)).collect())
            .collect();
        Self::normalized(self.graph, self.gadget.clone(), vertex_sets, self.witness_sets.clone())
    }

    /// `{φ(u) : φ in the set}`.
    pub fn project(&self, u: &GadgetVertex) -> Result<VertexSet, HomError> {
        Ok(self.vertex_sets[self.gadget.require(u)?].clone())
    }

    /// `{φ(e) : φ in the set}` for edge index `e`.
    pub fn project_edge(&self, e: usize) -> &BTreeSet<WitnessId> {
        &self.witness_sets[e]
    }

    pub fn contains(&self, hom: &Hom) -> bool {
        hom.verify(&self.gadget, self.graph).is_ok()
            && hom.vertices.iter().zip(&self.vertex_sets).all(|(v, s)| s.contains(v))
            && hom.witnesses.iter().zip(&self.witness_sets).all(|(w, s)| s.contains(w))
    }

    /// Number of homomorphisms, by dynamic programming along the path.
    pub fn count<T: Semiring>(&self) -> T {
        let g = self.graph;
        let mut current: Vec<T> = g
            .vertices()
            .map(|v| if self.vertex_sets[0].contains(&v) { T::one() } else { T::zero() })
            .collect();
        for e in 0..self.gadget.edge_count() {
            let mut next = vec![T::zero(); g.vertex_count()];
            let (left, right) = (&self.vertex_sets[e], &self.vertex_sets[e + 1]);
            for &w in &self.witness_sets[e] {
                let (a, b) = g.ends(w);
                for (x, y) in [(a, b), (b, a)] {
                    if left.contains(&x) && right.contains(&y) {
                        let acc = std::mem::replace(&mut next[y.0], T::zero());
                        next[y.0] = acc + current[x.0].clone();
                    }
                }
            }
            current = next;
        }
        current.into_iter().fold(T::zero(), |acc, x| acc + x)
    }

    pub fn count_exact(&self) -> BigUint {
        self.count::<BigUint>()
    }

    /// The first `cap` homomorphisms in lexicographic order.
    pub fn enumerate(&self, cap: usize) -> Enumeration {
        let mut homs = Vec::new();
        if !self.is_empty() && cap > 0 {
            let mut vertices = Vec::with_capacity(self.gadget.vertex_count());
            for &start in &self.vertex_sets[0] {
                vertices.push(start);
                self.extend_vertices(&mut vertices, cap, &mut homs);
                vertices.pop();
                if homs.len() >= cap {
                    break;
                }
            }
        }
        Enumeration {
            homs: ExplicitHomSet::from_sorted_unique(self.gadget.clone(), homs),
            total: self.count_exact(),
        }
    }

    fn extend_vertices(&self, vertices: &mut Vec<VertexId>, cap: usize, out: &mut Vec<Hom>) {
        let e = vertices.len() - 1;
        if e == self.gadget.edge_count() {
            self.emit_witness_choices(vertices, cap, out);
            return;
        }
        let x = vertices[e];
        let mut candidates: Vec<VertexId> = self.graph.incident(x)
            .iter()
            .filter(|(y, w)| self.witness_sets[e].contains(w) && self.vertex_sets[e + 1].contains(y))
            .map(|&(y, _)| y)
            .collect();
        candidates.dedup();
        for y in candidates {
            vertices.push(y);
            self.extend_vertices(vertices, cap, out);
            vertices.pop();
            if out.len() >= cap {
                return;
            }
        }
    }

    fn emit_witness_choices(&self, vertices: &[VertexId], cap: usize, out: &mut Vec<Hom>) {
        let choices: Vec<Vec<WitnessId>> = (0..self.gadget.edge_count())
            .map(|e| {
                self.graph
                    .witnesses_between(vertices[e], vertices[e + 1])
                    .filter(|w| self.witness_sets[e].contains(w))
                    .collect()
            })
            .collect();
        let mut odometer = vec![0usize; choices.len()];
        loop {
            if out.len() >= cap {
                return;
            }
            out.push(Hom {
                vertices: vertices.to_vec(),
                witnesses: odometer.iter().zip(&choices).map(|(&i, c)| c[i]).collect(),
            });
            let mut pos = choices.len();
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                odometer[pos] += 1;
                if odometer[pos] < choices[pos].len() {
                    break;
                }
                odometer[pos] = 0;
            }
        }
    }

    /// The least gadget vertex (canonical order) whose projection admits no odd walk.
    pub fn tiny_witness(&self) -> Option<GadgetVertex> {
        self.vertex_sets
            .iter()
            .position(|s| self.graph.phi_bound(s).expect("profile vertices are graph vertices") == PhiVerdict::NoOddWalk)
            .map(|pos| self.gadget.vertex_at(pos))
    }

    pub fn is_tiny(&self) -> bool {
        self.tiny_witness().is_some()
    }

    /// The least member sending every gadget vertex into a non-bipartite component.
    pub fn large_witness(&self) -> Option<Hom> {
        let comps = self.graph.components();
        let core = self.restrict_vertices(|v| !comps.in_bipartite_component(v));
        core.enumerate(1).homs.homs().first().cloned()
    }

    pub fn is_large(&self) -> bool {
        self.large_witness().is_some()
    }

    /// `{φ ∈ Hom(L^d_{n+1}, G) : φ^0, φ^1 in this set}` where `d` extends the
    /// gadget's prefix by `join_length`.
    pub fn double(&self, join_length: u64) -> Result<HomProfile<'g>, HomError> {
        let small = &self.gadget;
        let big = PathGadget::build(&small.prefix().extended(join_length)?);
        let parent = |u: &GadgetVertex| u.t.popped().map(|(t, bit)| (GadgetVertex::new(u.k, t), bit));
        let vertex_sets = big
            .vertices()
            .iter()
            .map(|u| match parent(u) {
                Some((p, _)) => self.vertex_sets[small.require(&p).expect("copies come from small")].clone(),
                None => self.graph.all_vertices(),
            })
            .collect();
        let witness_sets = big
            .edges()
            .map(|(a, b)| match (parent(&a), parent(&b)) {
                (Some((pa, _)), Some((pb, _))) => {
                    self.witness_sets[small.edge_index(&pa, &pb).expect("copy edges come from small")].clone()
                }
                _ => self.graph.witnesses().collect(),
            })
            .collect();
        Ok(Self::normalized(self.graph, Arc::new(big), vertex_sets, witness_sets))
    }

    /// A join parameter `d(n) >= min_join` (odd) and a member of the doubled
    /// set, glued from two copies of the largeness witness along an odd
    /// closed walk at the image of the gluing vertex `e_1^n`.
    pub fn extend_witness(&self, min_join: u64) -> Result<Extension, HomError> {
        let base = self.large_witness().ok_or(HomError::NotLarge)?;
        let small = &self.gadget;
        let x = base.image(small, &GadgetVertex::endpoint(small.level(), true))?;
        let (join_length, walk) = gluing_walk(self.graph, x, min_join)?
            .expect("largeness witnesses avoid bipartite components");
        let big = Arc::new(PathGadget::build(&small.prefix().extended(join_length)?));
        let hom = Hom::glue(small, &big, &base, &base, &walk)?;
        Ok(Extension { join_length, gadget: big, hom, base, walk })
    }

    /// The least odd `d >= min_join` for which the doubled set is large.
    pub fn preserve_largeness(&self, min_join: u64) -> Result<u64, HomError> {
        let bound = self.extend_witness(min_join)?.join_length;
        let first = match min_join.max(1) {
            d if d % 2 == 1 => d,
            d => d + 1,
        };
        for d in (first..=bound).step_by(2) {
            if self.double(d)?.is_large() {
                return Ok(d);
            }
        }
        unreachable!("the glued extension at d = {bound} is a large member of the doubled set")
    }

    /// The singleton profile `{hom}`.
    pub fn pin(&self, hom: &Hom) -> Result<HomProfile<'g>, HomError> {
        hom.verify(&self.gadget, self.graph)?;
        if !self.contains(hom) {
            return Err(HomError::NotMember);
        }
        let vertex_sets = hom.vertices.iter().map(|&v| BTreeSet::from([v])).collect();
        let witness_sets = hom.witnesses.iter().map(|&w| BTreeSet::from([w])).collect();
        Ok(Self::normalized(self.graph, self.gadget.clone(), vertex_sets, witness_sets))
    }

    pub fn to_json(&self) -> ProfileJson {
        let g = self.graph;
        ProfileJson {
            prefix: self.gadget.prefix().clone(),
            vertex_sets: self
                .gadget
                .vertices()
                .iter()
                .zip(&self.vertex_sets)
                .map(|(u, s)| (u.to_string(), s.iter().map(|&v| g.vertex_name(v).to_string()).collect()))
                .collect(),
            witness_sets: self
                .witness_sets
                .iter()
                .enumerate()
                .map(|(e, s)| (edge_label(&self.gadget, e), s.iter().map(|&w| g.witness_name(w).to_string()).collect()))
                .collect(),
        }
    }

    pub fn from_json(doc: &ProfileJson, graph: &'g WitnessedGraph) -> Result<Self, HomError> {
        let gadget = Arc::new(PathGadget::build(&doc.prefix));
        let mut vertex_sets = Vec::with_capacity(gadget.vertex_count());
        for u in gadget.vertices() {
            let names = doc.vertex_sets.get(&u.to_string()).ok_or(HomError::ShapeMismatch)?;
            vertex_sets.push(graph.vertex_set_by_names(names)?);
        }
        let mut witness_sets = Vec::with_capacity(gadget.edge_count());
        for e in 0..gadget.edge_count() {
            let names = doc.witness_sets.get(&edge_label(&gadget, e)).ok_or(HomError::ShapeMismatch)?;
            let set = names
                .iter()
                .map(|n| graph.witness_by_name(n).ok_or_else(|| crate::graph::GraphError::UnknownWitness(n.clone())))
                .collect::<Result<_, _>>()?;
            witness_sets.push(set);
        }
        Self::from_sets(gadget, graph, vertex_sets, witness_sets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prefix(values: &[u64]) -> ParamPrefix {
        ParamPrefix::new(values.to_vec()).unwrap()
    }

    fn first_hom(p: &HomProfile) -> Hom {
        p.enumerate(1).homs.homs()[0].clone()
    }

    fn p0() -> GadgetVertex {
        GadgetVertex::path(0)
    }

    #[test]
    fn all_homs_examples() {
        let k3 = WitnessedGraph::complete(3);
        assert_eq!(HomProfile::all_homs(&ParamPrefix::empty(), &k3).count::<u64>(), 3);
        assert_eq!(HomProfile::all_homs(&prefix(&[1]), &k3).count_exact(), BigUint::from(24u32));
        let empty = WitnessedGraph::edgeless(3);
        let p = HomProfile::all_homs(&prefix(&[1]), &empty);
        assert!(p.is_empty());
        assert_eq!(p.count::<u64>(), 0);
    }

    #[test]
    fn count_on_single_edge() {
        let edge = WitnessedGraph::path(2);
        assert_eq!(HomProfile::all_homs(&prefix(&[1, 3]), &edge).count::<u64>(), 2);
    }

    #[test]
    fn projection_examples() {
        let k3 = WitnessedGraph::complete(3);
        let full = HomProfile::all_homs(&prefix(&[1]), &k3);
        for u in full.gadget().vertices() {
            assert_eq!(full.project(u).unwrap(), k3.all_vertices());
        }
        let pinned = full.restrict_vertices(|v| v != VertexId(1));
        // every vertex image avoids 1; the two-coloured path 0,2,0,2 survives
        assert_eq!(pinned.project(&p0()).unwrap(), BTreeSet::from([VertexId(0), VertexId(2)]));
        let edgeless = WitnessedGraph::edgeless(2);
        let empty = HomProfile::all_homs(&prefix(&[1]), &edgeless);
        assert!(empty.project(&p0()).unwrap().is_empty());
        assert!(full.project(&GadgetVertex::path(9)).is_err());
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let k3 = WitnessedGraph::complete(3);
        let e = HomProfile::all_homs(&ParamPrefix::empty(), &k3).enumerate(10);
        assert_eq!(e.homs.len(), 3);
        let e = HomProfile::all_homs(&prefix(&[1]), &k3).enumerate(5);
        assert_eq!(e.total, BigUint::from(24u32));
        let homs = e.homs.homs();
        assert_eq!(homs.len(), 5);
        assert!(homs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(homs[0].vertices, [VertexId(0), VertexId(1), VertexId(0), VertexId(1)]);
        let edgeless = WitnessedGraph::edgeless(2);
        let empty = HomProfile::all_homs(&prefix(&[1]), &edgeless);
        assert!(empty.enumerate(5).homs.is_empty());
    }

    #[test]
    fn tininess_examples() {
        // every projection of the full set on C4 is all of C4, which contains adjacent pairs
        let c4 = WitnessedGraph::cycle(4);
        assert!(!HomProfile::all_homs(&ParamPrefix::empty(), &c4).is_tiny());
        let one_side = HomProfile::all_homs(&ParamPrefix::empty(), &c4).restrict_vertices(|v| v.0 % 2 == 0);
        assert_eq!(one_side.tiny_witness(), Some(p0()));
        let k3 = WitnessedGraph::complete(3);
        assert!(!HomProfile::all_homs(&prefix(&[1]), &k3).is_tiny());
        let edgeless = WitnessedGraph::edgeless(2);
        let empty = HomProfile::all_homs(&prefix(&[1]), &edgeless);
        assert!(empty.is_tiny());
    }

    #[test]
    fn largeness_examples() {
        let k3 = WitnessedGraph::complete(3);
        let w = HomProfile::all_homs(&ParamPrefix::empty(), &k3).large_witness().unwrap();
        assert_eq!(w.vertices, [VertexId(0)]);
        assert!(!HomProfile::all_homs(&ParamPrefix::empty(), &WitnessedGraph::cycle(4)).is_large());
        let mixed = k3.disjoint_union(&WitnessedGraph::cycle(4));
        let w = HomProfile::all_homs(&prefix(&[1]), &mixed).large_witness().unwrap();
        assert!(w.vertices.iter().all(|v| v.0 < 3));
    }

    #[test]
    fn doubling_examples() {
        let k3 = WitnessedGraph::complete(3);
        let doubled = HomProfile::all_homs(&ParamPrefix::empty(), &k3).double(1).unwrap();
        assert_eq!(doubled.count::<u64>(), 24);
        let edgeless = WitnessedGraph::edgeless(0);
        let empty = HomProfile::all_homs(&ParamPrefix::empty(), &edgeless);
        assert!(empty.double(3).unwrap().is_empty());

        let c5 = WitnessedGraph::cycle(5);
        let full = HomProfile::all_homs(&ParamPrefix::empty(), &c5);
        let phi = first_hom(&full);
        let pinned = full.pin(&phi).unwrap();
        assert_eq!(pinned.double(3).unwrap().count::<u64>(), 2);
    }

    #[test]
    fn extension_examples() {
        let c5 = WitnessedGraph::cycle(5);
        let full = HomProfile::all_homs(&ParamPrefix::empty(), &c5);
        let pinned = full.pin(&first_hom(&full)).unwrap();
        let ext = pinned.extend_witness(1).unwrap();
        assert_eq!(ext.join_length, 3);
        ext.hom.verify(&ext.gadget, &c5).unwrap();
        assert!(pinned.double(3).unwrap().contains(&ext.hom));

        let k3 = WitnessedGraph::complete(3);
        let full = HomProfile::all_homs(&ParamPrefix::empty(), &k3);
        assert_eq!(full.extend_witness(1).unwrap().join_length, 1);
        let ext = full.extend_witness(4).unwrap();
        assert_eq!((ext.join_length, ext.walk.len()), (5, 7));

        let c4 = WitnessedGraph::cycle(4);
        assert_eq!(
            HomProfile::all_homs(&ParamPrefix::empty(), &c4).extend_witness(1).unwrap_err(),
            HomError::NotLarge
        );
    }

    #[test]
    fn preserve_largeness_examples() {
        let k3 = WitnessedGraph::complete(3);
        let full = HomProfile::all_homs(&ParamPrefix::empty(), &k3);
        assert_eq!(full.preserve_largeness(1).unwrap(), 1);
        assert!(full.double(1).unwrap().is_large());

        // with both copies free, a walk of length 3 between two C5 vertices exists
        let c5 = WitnessedGraph::cycle(5);
        let full = HomProfile::all_homs(&ParamPrefix::empty(), &c5);
        assert_eq!(full.preserve_largeness(1).unwrap(), 1);
        let pinned = full.pin(&first_hom(&full)).unwrap();
        assert_eq!(pinned.preserve_largeness(1).unwrap(), 3);

        let c4 = WitnessedGraph::cycle(4);
        assert_eq!(
            HomProfile::all_homs(&ParamPrefix::empty(), &c4).preserve_largeness(1),
            Err(HomError::NotLarge)
        );
    }

    #[test]
    fn pin_examples() {
        let k3 = WitnessedGraph::complete(3);
        let full = HomProfile::all_homs(&prefix(&[1]), &k3);
        let phi = full.large_witness().unwrap();
        let pinned = full.pin(&phi).unwrap();
        assert_eq!(pinned.count::<u64>(), 1);
        for (pos, u) in full.gadget().vertices().iter().enumerate() {
            assert_eq!(pinned.project(u).unwrap(), BTreeSet::from([phi.vertices[pos]]));
        }
        assert!(pinned.is_large());

        let restricted = full.restrict_vertices(|v| v != VertexId(0));
        assert_eq!(restricted.pin(&phi).unwrap_err(), HomError::NotMember);
    }

    #[test]
    fn json_round_trip() {
        let k3 = WitnessedGraph::complete(3);
        let p = HomProfile::all_homs(&prefix(&[1]), &k3).restrict_vertices(|v| v != VertexId(2));
        let doc = p.to_json();
        let back = HomProfile::from_json(&doc, &k3).unwrap();
        assert_eq!(back.vertex_sets(), p.vertex_sets());
        assert_eq!(back.witness_sets(), p.witness_sets());
    }
}
