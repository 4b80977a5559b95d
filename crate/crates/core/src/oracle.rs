//! Brute-force reference implementations and instance generators.
//!
//! Everything here trades speed for directness: no arc consistency, no
//! parity cover, no closed forms. Property checks compare the main
//! algorithms against these.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::bits::BitString;
use crate::gadget::{GadgetVertex, ParamPrefix, PathGadget};
use crate::graph::{VertexId, VertexSet, WitnessedGraph};
use crate::homset::{ExplicitHomSet, Hom};
use crate::lc::{EpBits, LcVertex};

/// Counts witness-labelled walks of length `len` by explicit enumeration.
pub fn walk_count(g: &WitnessedGraph, len: usize) -> BigUint {
    fn extend(g: &WitnessedGraph, at: VertexId, left: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        g.incident(at).iter().map(|&(next, _)| extend(g, next, left - 1)).sum()
    }
    g.vertices().map(|v| BigUint::from(extend(g, v, len))).sum()
}

/// Every homomorphism into `g` respecting optional per-position domains,
/// or `None` once more than `cap` are found or `50 * cap` partial maps have
/// been expanded. Plain depth-first search without look-ahead.
pub fn homs(gadget: &PathGadget, g: &WitnessedGraph, domains: Option<&[VertexSet]>, cap: usize) -> Option<Vec<Hom>> {
    let allowed = |pos: usize, v: VertexId| domains.is_none_or(|d| d[pos].contains(&v));
    let mut budget = cap.saturating_mul(50);
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<VertexId>, Vec<crate::graph::WitnessId>)> =
        g.vertices().filter(|&v| allowed(0, v)).map(|v| (vec![v], Vec::new())).collect();
    while let Some((vertices, witnesses)) = stack.pop() {
        let pos = vertices.len();
        if pos == gadget.vertex_count() {
            if out.len() == cap {
                return None;
            }
            out.push(Hom { vertices, witnesses });
            continue;
        }
        budget = budget.checked_sub(1)?;
        let last = *vertices.last().expect("nonempty");
        for next in g.vertices().filter(|&v| allowed(pos, v)) {
            for w in g.witnesses().filter(|&w| g.other_end(w, last) == Some(next)) {
                let mut vs = vertices.clone();
                vs.push(next);
                let mut ws = witnesses.clone();
                ws.push(w);
                stack.push((vs, ws));
            }
        }
    }
    out.sort();
    Some(out)
}

/// Least odd `ℓ <= max_len` with a walk of length `ℓ` between two members
/// of `set`, by iterating reachable sets.
pub fn min_odd_walk(g: &WitnessedGraph, set: &VertexSet, max_len: usize) -> Option<usize> {
    let mut layer: BTreeSet<VertexId> = set.clone();
    for len in 1..=max_len {
        layer = layer.iter().flat_map(|&v| g.neighbors(v)).collect();
        if len % 2 == 1 && layer.iter().any(|v| set.contains(v)) {
            return Some(len);
        }
    }
    None
}

/// Tries all `2^n` colourings.
pub fn is_bipartite(g: &WitnessedGraph) -> bool {
    let n = g.vertex_count();
    assert!(n <= 20, "exhaustive colouring search is limited to 20 vertices");
    (0u32..1 << n).any(|mask| {
        g.witnesses().all(|w| {
            let (a, b) = g.ends(w);
            (mask >> a.0 & 1) != (mask >> b.0 & 1)
        })
    })
}

/// Edge set of `L^c_n` straight from the recursion, as unordered label pairs.
pub fn gadget_edges(prefix: &ParamPrefix) -> HashSet<(GadgetVertex, GadgetVertex)> {
    let mut edges: HashSet<(GadgetVertex, GadgetVertex)> = HashSet::new();
    for n in 0..prefix.len() {
        let mut next = HashSet::new();
        for &(a, b) in &edges {
            for bit in [false, true] {
                next.insert(ordered(a.child(bit), b.child(bit)));
            }
        }
        let e1 = GadgetVertex::endpoint(n, true);
        let c = prefix.values()[n];
        let mut path = vec![e1.child(false)];
        path.extend((0..=c).map(GadgetVertex::path));
        path.push(e1.child(true));
        for pair in path.windows(2) {
            next.insert(ordered(pair[0], pair[1]));
        }
        edges = next;
    }
    edges
}

fn ordered(a: GadgetVertex, b: GadgetVertex) -> (GadgetVertex, GadgetVertex) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Definitional smallness: is `s` covered by its tiny subsets? Exhaustive
/// over all subsets, so only for `|s| <= 16`.
pub fn small_by_cover(s: &ExplicitHomSet, g: &WitnessedGraph) -> bool {
    let n = s.len();
    assert!(n <= 16, "cover search is exponential");
    let mut covered = vec![false; n];
    for mask in 1u32..1 << n {
        let members: Vec<Hom> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s.homs()[i].clone()).collect();
        let subset = ExplicitHomSet::new(s.gadget().clone(), members).expect("distinct members");
        if subset.is_tiny(g) {
            (0..n).filter(|i| mask >> i & 1 == 1).for_each(|i| covered[i] = true);
        }
    }
    covered.into_iter().all(|c| c)
}

/// All labelled simple graphs on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = WitnessedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        WitnessedGraph::from_edges(n, &edges).expect("simple edges")
    })
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> WitnessedGraph {
    let edges: Vec<_> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(p)).collect();
    WitnessedGraph::from_edges(n, &edges).expect("simple edges")
}

/// Random graph with every edge across a random bipartition, sometimes
/// with a parallel witness added.
pub fn random_bipartite_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> WitnessedGraph {
    let side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let edges: Vec<_> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| side[a] != side[b])
        .collect();
    let mut g = WitnessedGraph::edgeless(n);
    for (a, b) in edges {
        if rng.gen_bool(p) {
            g.add_witness(VertexId(a), VertexId(b)).expect("distinct ends");
            if rng.gen_bool(0.1) {
                g.add_witness(VertexId(a), VertexId(b)).expect("distinct ends");
            }
        }
    }
    g
}

pub fn random_subset<R: Rng>(rng: &mut R, g: &WitnessedGraph) -> VertexSet {
    g.vertices().filter(|_| rng.gen_bool(0.5)).collect()
}

/// Odd values in `1..=max_value`.
pub fn random_odd_prefix<R: Rng>(rng: &mut R, len: usize, max_value: u64) -> ParamPrefix {
    let values = (0..len).map(|_| 2 * rng.gen_range(0..=(max_value - 1) / 2) + 1).collect();
    ParamPrefix::new(values).expect("positive values")
}

pub fn random_ep<R: Rng>(rng: &mut R, max_prefix: usize, max_period: usize) -> EpBits {
    let prefix = (0..rng.gen_range(0..=max_prefix)).map(|_| rng.gen()).collect();
    let period = (0..rng.gen_range(1..=max_period)).map(|_| rng.gen()).collect();
    EpBits::new(prefix, period).expect("nonempty period")
}

/// A valid vertex of `𝕃_c` with `m <= max_m` and a tail from [`random_ep`].
pub fn random_lc_vertex<R: Rng>(
    rng: &mut R,
    prefix: &ParamPrefix,
    max_m: usize,
    max_prefix: usize,
    max_period: usize,
) -> LcVertex {
    let m = rng.gen_range(0..=max_m.min(prefix.len()));
    let k = if m == 0 { 0 } else { rng.gen_range(0..=prefix.values()[m - 1]) };
    LcVertex::new(m, k, random_ep(rng, max_prefix, max_period))
}

/// Random disjoint pieces covering every vertex of a bipartite graph, each
/// inside one side of the bipartition, so every piece admits no odd walk.
pub fn random_tiny_cover<R: Rng>(rng: &mut R, g: &WitnessedGraph, pieces: usize) -> Vec<VertexSet> {
    let comps = g.components();
    let mut order: Vec<VertexId> = g.vertices().collect();
    order.shuffle(rng);
    let mut out = vec![VertexSet::new(); 2 * pieces.max(1)];
    for v in order {
        let i = 2 * rng.gen_range(0..pieces.max(1)) + comps.side[v.0] as usize;
        out[i].insert(v);
    }
    out.retain(|p| !p.is_empty());
    out
}

/// A random homomorphism: a uniformly stepped walk from a random start.
pub fn random_hom<R: Rng>(rng: &mut R, gadget: &PathGadget, g: &WitnessedGraph) -> Option<Hom> {
    let starts: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) > 0).collect();
    let mut at = *starts.choose(rng)?;
    let mut hom = Hom { vertices: vec![at], witnesses: Vec::new() };
    for _ in 0..gadget.edge_count() {
        let &(next, w) = g.incident(at).choose(rng).expect("walks never reach isolated vertices");
        hom.vertices.push(next);
        hom.witnesses.push(w);
        at = next;
    }
    Some(hom)
}

/// All bit strings of length `n` as gadget suffixes.
pub fn suffixes(n: usize) -> Vec<BitString> {
    BitString::all_of_length(n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homset::HomProfile;
    use crate::transfer;

    #[test]
    fn walk_counts_agree_with_transfer_matrix() {
        for g in [WitnessedGraph::complete(3), WitnessedGraph::cycle(5), WitnessedGraph::petersen()] {
            for len in 0..6 {
                assert_eq!(walk_count(&g, len), transfer::walk_count::<BigUint>(&g, len as u64));
            }
        }
    }

    #[test]
    fn enumerated_homs_match_profile() {
        let k3 = WitnessedGraph::complete(3);
        let prefix = ParamPrefix::new(vec![1]).unwrap();
        let gadget = PathGadget::build(&prefix);
        let all = homs(&gadget, &k3, None, 1000).unwrap();
        assert_eq!(all.len(), 24);
        let profile = HomProfile::all_homs(&prefix, &k3).enumerate(1000);
        assert_eq!(profile.homs.homs(), all.as_slice());
        assert!(homs(&gadget, &k3, None, 10).is_none());
    }

    #[test]
    fn recursion_edges_match_built_gadget() {
        let prefix = ParamPrefix::new(vec![1, 3, 5]).unwrap();
        let built = PathGadget::build(&prefix);
        let edges = gadget_edges(&prefix);
        assert_eq!(edges.len(), built.edge_count());
        for (a, b) in built.edges() {
            assert!(edges.contains(&ordered(a, b)));
        }
    }

    #[test]
    fn graph_counts() {
        assert_eq!(all_graphs(4).count(), 64);
        assert_eq!(all_graphs(4).filter(is_bipartite).count(), 41);
    }
}
