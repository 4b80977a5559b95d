//! The recursive path gadgets `L^c_n`.
//!
//! `L^c_0` is the single vertex `p_0`. `L^c_{n+1}` takes two copies of
//! `L^c_n`, relabelled by appending `0` and `1` to every label, and joins
//! the copies of the second endpoint `e_1^n` by a fresh path
//! `p_0, ..., p_{c(n)}` of `c(n) + 2` edges.
//!
//! Vertices are identified by their structured labels `(p_k)^t`, never by
//! position; positions along the path are derived.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bits::{BitString, BitsError, MAX_BITS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("parameter c({index}) must be at least 1")]
    ZeroParameter { index: usize },
    #[error("parameter c({index}) = {value} is not odd")]
    NonOddPrefix { index: usize, value: u64 },
    #[error("vertex {0} is not in the gadget")]
    UnknownVertex(GadgetVertex),
    #[error("gadget prefixes are not one level apart")]
    PrefixMismatch,
    #[error("gadget depth {0} exceeds the supported maximum")]
    TooDeep(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<BitsError> for GadgetError {
    fn from(e: BitsError) -> Self {
        GadgetError::Parse(e.to_string())
    }
}

/// The first `n` values `c(0), ..., c(n-1)` of a parameter sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ParamPrefix(Vec<u64>);

impl ParamPrefix {
    pub fn new(values: Vec<u64>) -> Result<Self, GadgetError> {
        if let Some(index) = values.iter().position(|&v| v == 0) {
            return Err(GadgetError::ZeroParameter { index });
        }
        if values.len() >= MAX_BITS {
            return Err(GadgetError::TooDeep(values.len()));
        }
        Ok(ParamPrefix(values))
    }

    pub fn empty() -> Self {
        ParamPrefix(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<u64> {
        self.0.get(n).copied()
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn is_odd(&self) -> bool {
        self.first_even().is_none()
    }

    pub fn require_odd(&self) -> Result<(), GadgetError> {
        match self.first_even() {
            None => Ok(()),
            Some(index) => Err(GadgetError::NonOddPrefix { index, value: self.0[index] }),
        }
    }

    fn first_even(&self) -> Option<usize> {
        self.0.iter().position(|v| v % 2 == 0)
    }

    pub fn extended(&self, value: u64) -> Result<Self, GadgetError> {
        let mut values = self.0.clone();
        values.push(value);
        Self::new(values)
    }

    pub fn truncated(&self, n: usize) -> Self {
        ParamPrefix(self.0[..n.min(self.len())].to_vec())
    }
}

impl TryFrom<Vec<u64>> for ParamPrefix {
    type Error = GadgetError;

    fn try_from(values: Vec<u64>) -> Result<Self, Self::Error> {
        Self::new(values)
    }
}

impl From<ParamPrefix> for Vec<u64> {
    fn from(p: ParamPrefix) -> Self {
        p.0
    }
}

impl FromStr for ParamPrefix {
    type Err = GadgetError;

    /// Comma-separated values; the empty string is the empty prefix.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Self::empty());
        }
        let values = s
            .split(',')
            .map(|v| v.trim().parse::<u64>().map_err(|e| GadgetError::Parse(format!("{v:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(values)
    }
}

impl fmt::Display for ParamPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The label `(p_k)^t`: join position `k` followed by the copy history `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GadgetVertex {
    pub k: u64,
    pub t: BitString,
}

impl GadgetVertex {
    pub fn new(k: u64, t: BitString) -> Self {
        GadgetVertex { k, t }
    }

    /// The path vertex `p_k` with empty history.
    pub fn path(k: u64) -> Self {
        GadgetVertex { k, t: BitString::empty() }
    }

    /// `self^(bit)`: the copy of this vertex in copy `bit` one level up.
    pub fn child(self, bit: bool) -> Self {
        GadgetVertex { k: self.k, t: self.t.pushed(bit) }
    }

    pub fn with_suffix(self, suffix: BitString) -> Result<Self, BitsError> {
        Ok(GadgetVertex { k: self.k, t: self.t.concat(suffix)? })
    }

    /// Level at which this vertex was added, when it lives in `L^c_level`.
    pub fn birth_level(&self, level: usize) -> Option<usize> {
        level.checked_sub(self.t.len())
    }

    /// The endpoint `e_i^n` in closed form.
    pub fn endpoint(n: usize, i: bool) -> Self {
        if n == 0 {
            return Self::path(0);
        }
        GadgetVertex { k: 0, t: BitString::repeated(false, n - 1).pushed(i) }
    }
}

impl fmt::Display for GadgetVertex {
    /// `p3` for a path vertex, `p0:01` for `(p_0)^(0,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.is_empty() {
            write!(f, "p{}", self.k)
        } else {
            write!(f, "p{}:{}", self.k, self.t)
        }
    }
}

impl FromStr for GadgetVertex {
    type Err = GadgetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rest = s
            .strip_prefix('p')
            .ok_or_else(|| GadgetError::Parse(format!("gadget label {s:?} must start with 'p'")))?;
        let (k, t) = rest.split_once(':').unwrap_or((rest, ""));
        let k = k.parse().map_err(|e| GadgetError::Parse(format!("{s:?}: {e}")))?;
        Ok(GadgetVertex { k, t: t.parse()? })
    }
}

impl Serialize for GadgetVertex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GadgetVertex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum VertexKind {
    PathVertex,
    NonPathVertex,
}

/// Result of checking that sibling copies sit an odd distance apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OddDistanceReport {
    pub pairs_checked: usize,
    pub violations: Vec<(GadgetVertex, GadgetVertex, usize)>,
}

impl OddDistanceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The path `L^c_n` in canonical order from `e_0^n` to `e_1^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathGadget {
    prefix: ParamPrefix,
    order: Vec<GadgetVertex>,
    index: HashMap<GadgetVertex, usize>,
}

impl PathGadget {
    /// Copy 0 in its own order, then the join path, then copy 1 reversed.
    pub fn build(prefix: &ParamPrefix) -> Self {
        let mut order = vec![GadgetVertex::path(0)];
        for &c in prefix.values() {
            let mut next = Vec::with_capacity(2 * order.len() + c as usize + 1);
            next.extend(order.iter().map(|v| v.child(false)));
            next.extend((0..=c).map(GadgetVertex::path));
            next.extend(order.iter().rev().map(|v| v.child(true)));
            order = next;
        }
        let index = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        PathGadget { prefix: prefix.clone(), order, index }
    }

    pub fn prefix(&self) -> &ParamPrefix {
        &self.prefix
    }

    pub fn level(&self) -> usize {
        self.prefix.len()
    }

    pub fn vertices(&self) -> &[GadgetVertex] {
        &self.order
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    pub fn edge_count(&self) -> usize {
        self.order.len() - 1
    }

    /// Edge `i` joins positions `i` and `i + 1`.
    pub fn edges(&self) -> impl Iterator<Item = (GadgetVertex, GadgetVertex)> + '_ {
        self.order.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn vertex_at(&self, position: usize) -> GadgetVertex {
        self.order[position]
    }

    pub fn position(&self, v: &GadgetVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &GadgetVertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn require(&self, v: &GadgetVertex) -> Result<usize, GadgetError> {
        self.position(v).ok_or(GadgetError::UnknownVertex(*v))
    }

    /// Index of the edge between two vertices, if they are adjacent.
    pub fn edge_index(&self, u: &GadgetVertex, v: &GadgetVertex) -> Option<usize> {
        let (a, b) = (self.position(u)?, self.position(v)?);
        (a.abs_diff(b) == 1).then(|| a.min(b))
    }

    pub fn adjacent(&self, u: &GadgetVertex, v: &GadgetVertex) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// `(e_0^n, e_1^n)`, read off the constructed path.
    pub fn endpoints(&self) -> (GadgetVertex, GadgetVertex) {
        (self.order[0], *self.order.last().expect("gadgets are nonempty"))
    }

    pub fn classify(&self, v: &GadgetVertex) -> Result<VertexKind, GadgetError> {
        self.require(v)?;
        Ok(if v.t.is_empty() { VertexKind::PathVertex } else { VertexKind::NonPathVertex })
    }

    pub fn distance(&self, u: &GadgetVertex, v: &GadgetVertex) -> Result<usize, GadgetError> {
        Ok(self.require(u)?.abs_diff(self.require(v)?))
    }

    /// Birth level of a member vertex.
    pub fn birth_level(&self, v: &GadgetVertex) -> Option<usize> {
        self.contains(v).then(|| self.level() - v.t.len())
    }

    /// The map `u -> u^(bit)` from this gadget into `larger`, in canonical order.
    pub fn copy_embed(&self, larger: &PathGadget, bit: bool) -> Result<Vec<GadgetVertex>, GadgetError> {
        if larger.level() != self.level() + 1 || larger.prefix.truncated(self.level()) != self.prefix {
            return Err(GadgetError::PrefixMismatch);
        }
        self.order
            .iter()
            .map(|v| {
                let image = v.child(bit);
                larger.require(&image).map(|_| image)
            })
            .collect()
    }

    /// Checks that `(p_k)^t^(0)` and `(p_k)^t^(1)` are an odd distance apart
    /// for every such pair in the gadget. Requires an odd-valued prefix.
    pub fn check_odd_distance_lemma(&self) -> Result<OddDistanceReport, GadgetError> {
        self.prefix.require_odd()?;
        let mut report = OddDistanceReport { pairs_checked: 0, violations: Vec::new() };
        for (pos, v) in self.order.iter().enumerate() {
            let Some((parent, false)) = v.t.popped() else {
                continue;
            };
            let sibling = GadgetVertex::new(v.k, parent.pushed(true));
            let other = self.require(&sibling)?;
            let d = pos.abs_diff(other);
            report.pairs_checked += 1;
            if d % 2 == 0 {
                report.violations.push((*v, sibling, d));
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn prefix(values: &[u64]) -> ParamPrefix {
        ParamPrefix::new(values.to_vec()).unwrap()
    }

    fn v(label: &str) -> GadgetVertex {
        label.parse().unwrap()
    }

    #[test]
    fn base_and_first_level() {
        let g0 = PathGadget::build(&ParamPrefix::empty());
        assert_eq!(g0.vertices(), &[GadgetVertex::path(0)]);
        assert_eq!(g0.edge_count(), 0);
        assert_eq!(g0.endpoints(), (v("p0"), v("p0")));

        let g1 = PathGadget::build(&prefix(&[1]));
        assert_eq!(g1.vertices(), &[v("p0:0"), v("p0"), v("p1"), v("p0:1")]);
        assert_eq!(g1.endpoints(), (v("p0:0"), v("p0:1")));
    }

    #[test]
    fn sizes_and_endpoints() {
        let g = PathGadget::build(&prefix(&[1, 3, 5]));
        assert_eq!((g.vertex_count(), g.edge_count()), (30, 29));
        let g2 = PathGadget::build(&prefix(&[1, 3]));
        assert_eq!(g2.endpoints(), (v("p0:00"), v("p0:01")));
        assert_eq!(g2.endpoints(), (GadgetVertex::endpoint(2, false), GadgetVertex::endpoint(2, true)));
        assert_eq!(g2.distance(&v("p0:00"), &v("p0:01")).unwrap(), 11);
    }

    #[test]
    fn classify_examples() {
        let g = PathGadget::build(&prefix(&[3, 1]));
        assert_eq!(g.classify(&v("p2")), Err(GadgetError::UnknownVertex(v("p2"))));
        let g = PathGadget::build(&prefix(&[1, 3]));
        assert_eq!(g.classify(&v("p2")).unwrap(), VertexKind::PathVertex);
        assert_eq!(g.classify(&v("p0:0")).unwrap(), VertexKind::NonPathVertex);
        assert_eq!(g.classify(&v("p1:01")), Err(GadgetError::UnknownVertex(v("p1:01"))));
        let g3 = PathGadget::build(&prefix(&[1, 3, 5]));
        assert_eq!(g3.classify(&v("p1:01")).unwrap(), VertexKind::NonPathVertex);
    }

    #[test]
    fn copy_embedding() {
        let g0 = PathGadget::build(&ParamPrefix::empty());
        let g1 = PathGadget::build(&prefix(&[1]));
        assert_eq!(g0.copy_embed(&g1, false).unwrap(), [v("p0:0")]);
        assert_eq!(g0.copy_embed(&g1, true).unwrap(), [v("p0:1")]);
        let g2 = PathGadget::build(&prefix(&[1, 3]));
        assert_eq!(g0.copy_embed(&g2, false), Err(GadgetError::PrefixMismatch));
        let twice: Vec<_> = g0
            .copy_embed(&g1, true)
            .unwrap()
            .into_iter()
            .map(|u| u.child(false))
            .collect();
        assert_eq!(twice, [v("p0:10")]);
        assert!(g2.contains(&twice[0]));
    }

    #[test]
    fn distance_examples() {
        let g1 = PathGadget::build(&prefix(&[1]));
        assert_eq!(g1.distance(&v("p0:0"), &v("p0:1")).unwrap(), 3);
        assert_eq!(g1.distance(&v("p1"), &v("p1")).unwrap(), 0);
        assert!(g1.distance(&v("p5"), &v("p1")).is_err());
    }

    #[test]
    fn odd_distance_lemma_examples() {
        let r = PathGadget::build(&prefix(&[1])).check_odd_distance_lemma().unwrap();
        assert_eq!(r.pairs_checked, 1);
        assert!(r.passed());
        let r = PathGadget::build(&prefix(&[1, 3])).check_odd_distance_lemma().unwrap();
        assert!(r.passed());
        assert_eq!(r.pairs_checked, 4);
        assert_eq!(
            PathGadget::build(&prefix(&[2])).check_odd_distance_lemma(),
            Err(GadgetError::NonOddPrefix { index: 0, value: 2 })
        );
    }

    #[test]
    fn prefix_parsing() {
        assert_eq!("1,3,5".parse::<ParamPrefix>().unwrap(), prefix(&[1, 3, 5]));
        assert_eq!("".parse::<ParamPrefix>().unwrap(), ParamPrefix::empty());
        assert_eq!("1,0".parse::<ParamPrefix>(), Err(GadgetError::ZeroParameter { index: 1 }));
        assert!("1,x".parse::<ParamPrefix>().is_err());
    }

    fn arb_prefix(max_len: usize) -> impl Strategy<Value = ParamPrefix> {
        prop::collection::vec(1u64..8, 0..=max_len).prop_map(|v| ParamPrefix::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn size_recursion(p in arb_prefix(8)) {
            let (mut verts, mut edges) = (1usize, 0usize);
            for &c in p.values() {
                verts = 2 * verts + c as usize + 1;
                edges = 2 * edges + c as usize + 2;
            }
            let g = PathGadget::build(&p);
            prop_assert_eq!(g.vertex_count(), verts);
            prop_assert_eq!(g.edge_count(), edges);
        }

        #[test]
        fn labels_are_sound(p in arb_prefix(7)) {
            let g = PathGadget::build(&p);
            prop_assert_eq!(g.index.len(), g.vertex_count());
            for u in g.vertices() {
                let m = g.birth_level(u).unwrap();
                if m == 0 {
                    prop_assert_eq!(u.k, 0);
                } else {
                    prop_assert!(u.k <= p.values()[m - 1]);
                }
            }
        }

        #[test]
        fn copies_are_disjoint_and_miss_the_join(p in arb_prefix(5), c in 1u64..8) {
            let small = PathGadget::build(&p);
            let big = PathGadget::build(&p.extended(c).unwrap());
            let zero = small.copy_embed(&big, false).unwrap();
            let one = small.copy_embed(&big, true).unwrap();
            for (a, b) in small.edges() {
                let (ia, ib) = (small.position(&a).unwrap(), small.position(&b).unwrap());
                prop_assert!(big.adjacent(&zero[ia], &zero[ib]));
                prop_assert!(big.adjacent(&one[ia], &one[ib]));
            }
            let covered: std::collections::HashSet<_> = zero.iter().chain(&one).collect();
            prop_assert_eq!(covered.len(), 2 * small.vertex_count());
            let missed: Vec<_> = big.vertices().iter().filter(|u| !covered.contains(u)).collect();
            prop_assert_eq!(missed.len() as u64, c + 1);
            prop_assert!(missed.iter().all(|u| u.t.is_empty()));
        }
    }
}
