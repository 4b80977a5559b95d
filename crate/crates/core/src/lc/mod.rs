//! The limit graph `𝕃_c` on triples `(m, k, x)`, restricted to eventually
//! periodic `x`.
//!
//! A vertex with `m = 0` is `p_0` itself, followed through the copies by
//! `x`; a vertex with `m >= 1` is the join vertex `p_k` added at level `m`.
//! Its projection to level `n >= m` is `(p_k)^(x restricted to n - m)`.

mod epbits;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitString;
use crate::gadget::{GadgetError, GadgetVertex, ParamPrefix, PathGadget};

pub use epbits::{EpBits, EpBitsError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LcError {
    #[error("invalid vertex {0}: need m = k = 0, or 1 <= m <= prefix length and k <= c(m-1)")]
    InvalidVertex(LcVertex),
    #[error("level {level} is outside {min}..={max}")]
    LevelOutOfRange { level: usize, min: usize, max: usize },
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LcVertex {
    pub m: usize,
    pub k: u64,
    pub x: EpBits,
}

impl std::fmt::Display for LcVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.m, self.k, self.x)
    }
}

impl std::str::FromStr for LcVertex {
    type Err = String;

    /// `m,k,x` with optional surrounding parentheses, e.g. `(2,1,01(10))`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).filter(|r| r.matches(',').count() == 2);
        let mut parts = inner.unwrap_or(s).splitn(3, ',');
        let mut next = || parts.next().map(str::trim).ok_or_else(|| format!("expected m,k,x in {s:?}"));
        let m = next()?.parse().map_err(|e| format!("m in {s:?}: {e}"))?;
        let k = next()?.parse().map_err(|e| format!("k in {s:?}: {e}"))?;
        let x = next()?.parse().map_err(|e: EpBitsError| e.to_string())?;
        Ok(LcVertex { m, k, x })
    }
}

/// `e_1^j` as a bit string after `p_0`: empty for `j = 0`, else `0^(j-1) 1`.
fn e1_bits(j: usize) -> Vec<bool> {
    if j == 0 {
        return Vec::new();
    }
    let mut bits = vec![false; j - 1];
    bits.push(true);
    bits
}

impl LcVertex {
    pub fn new(m: usize, k: u64, x: EpBits) -> Self {
        LcVertex { m, k, x }
    }

    /// `(0, 0, 0^ω)`, the unique vertex of degree 1.
    pub fn root() -> Self {
        LcVertex::new(0, 0, EpBits::zeros())
    }

    pub fn validate(&self, prefix: &ParamPrefix) -> Result<(), LcError> {
        let ok = match self.m {
            0 => self.k == 0,
            m => prefix.get(m - 1).is_some_and(|c| self.k <= c),
        };
        if ok {
            Ok(())
        } else {
            Err(LcError::InvalidVertex(self.clone()))
        }
    }

    /// `(p_k)^(x restricted to n - m)` in `L^c_n`.
    pub fn project_level(&self, n: usize, prefix: &ParamPrefix) -> Result<GadgetVertex, LcError> {
        self.validate(prefix)?;
        if n < self.m || n > prefix.len() {
            return Err(LcError::LevelOutOfRange { level: n, min: self.m, max: prefix.len() });
        }
        let t = BitString::from_bits(&self.x.take(n - self.m)).expect("levels stay below the bit limit");
        Ok(GadgetVertex::new(self.k, t))
    }

    /// Adjacency in `𝕃_c`: adjacent projections at the later birth level,
    /// and equal tails from there on.
    pub fn adjacent(&self, other: &LcVertex, prefix: &ParamPrefix) -> Result<bool, LcError> {
        self.validate(prefix)?;
        other.validate(prefix)?;
        let top = self.m.max(other.m);
        if self.x.drop(top - self.m) != other.x.drop(top - other.m) {
            return Ok(false);
        }
        let gadget = PathGadget::build(&prefix.truncated(top));
        Ok(gadget.adjacent(&self.project_level(top, prefix)?, &other.project_level(top, prefix)?))
    }

    /// All neighbours with birth level at most the prefix length, sorted.
    pub fn neighbors(&self, prefix: &ParamPrefix) -> Result<Vec<LcVertex>, LcError> {
        self.validate(prefix)?;
        let c = |level: usize| prefix.get(level);
        let mut out = Vec::with_capacity(2);
        if self.m >= 1 {
            let top = c(self.m - 1).expect("validated");
            let attach = |bit: bool| {
                let mut bits = e1_bits(self.m - 1);
                bits.push(bit);
                LcVertex::new(0, 0, self.x.prepend(&bits))
            };
            out.push(if self.k > 0 { LcVertex::new(self.m, self.k - 1, self.x.clone()) } else { attach(false) });
            out.push(if self.k < top { LcVertex::new(self.m, self.k + 1, self.x.clone()) } else { attach(true) });
        } else {
            // p_0 followed by x is a join attachment at level j + 1 exactly
            // when x starts with e_1^j and one more bit
            let join_neighbor = |j: usize| {
                c(j).map(|cj| LcVertex::new(j + 1, if self.x.bit(j) { cj } else { 0 }, self.x.drop(j + 1)))
            };
            out.extend(join_neighbor(0));
            if let Some(f) = self.x.first_one() {
                out.extend(join_neighbor(f + 1));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Whether some finite `t_0, t_1` with `|t_0| - |t_1| = m_b - m_a`
    /// split `x_a = t_0 y`, `x_b = t_1 y`.
    pub fn same_component(&self, other: &LcVertex, prefix: &ParamPrefix) -> Result<bool, LcError> {
        self.validate(prefix)?;
        other.validate(prefix)?;
        // equal tails at one shift stay equal at every later shift, so test
        // a shift past both prefixes
        let shift = other.m as i64 - self.m as i64;
        let i = [self.x.prefix().len() as i64, other.x.prefix().len() as i64 + shift, shift, 0]
            .into_iter()
            .max()
            .expect("nonempty");
        Ok(self.x.drop(i as usize) == other.x.drop((i - shift) as usize))
    }
}

/// The depth-`n` truncation of `𝕃_c` for `n = |prefix|`, matched against
/// the built gadget.
#[derive(Debug, Clone, Serialize)]
pub struct LevelQuotient {
    pub prefix: ParamPrefix,
    /// Class representatives (tails completed by `0^ω`) in gadget order.
    pub classes: Vec<LcVertex>,
    /// Quotient edges as index pairs into `classes`, each with `i < j`.
    pub edges: Vec<(usize, usize)>,
    /// Whether class `i ↦` gadget position `i` is an isomorphism.
    pub isomorphic: bool,
}

pub fn level_quotient(prefix: &ParamPrefix) -> Result<LevelQuotient, LcError> {
    let n = prefix.len();
    let gadget = PathGadget::build(prefix);
    let classes: Vec<LcVertex> = gadget
        .vertices()
        .iter()
        .map(|u| {
            let m = u.birth_level(n).expect("gadget labels are shorter than the level");
            LcVertex::new(m, u.k, EpBits::finite_then_zeros(&u.t.to_vec()))
        })
        .collect();
    let mut edges = BTreeSet::new();
    for (i, v) in classes.iter().enumerate() {
        for w in v.neighbors(prefix)? {
            let j = gadget.require(&w.project_level(n, prefix)?)?;
            edges.insert((i.min(j), i.max(j)));
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let isomorphic = edges.len() == gadget.edge_count() && edges.iter().all(|&(i, j)| j == i + 1);
    Ok(LevelQuotient { prefix: prefix.clone(), classes, edges, isomorphic })
}

/// Distance between the siblings `(p_k)^t^(0)` and `(p_k)^t^(1)` at the top level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiblingReport {
    pub left: GadgetVertex,
    pub right: GadgetVertex,
    pub distance: usize,
    pub odd: bool,
}

pub fn odd_sibling_obstruction(prefix: &ParamPrefix, k: u64, t: BitString) -> Result<SiblingReport, LcError> {
    prefix.require_odd()?;
    let gadget = PathGadget::build(prefix);
    let (left, right) = (GadgetVertex::new(k, t).child(false), GadgetVertex::new(k, t).child(true));
    let distance = gadget.distance(&left, &right)?;
    Ok(SiblingReport { left, right, distance, odd: distance % 2 == 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prefix(values: &[u64]) -> ParamPrefix {
        ParamPrefix::new(values.to_vec()).unwrap()
    }

    fn v(m: usize, k: u64, x: &str) -> LcVertex {
        LcVertex::new(m, k, x.parse().unwrap())
    }

    #[test]
    fn parse_round_trip() {
        let a = v(2, 1, "01(10)");
        assert_eq!(a.to_string().parse::<LcVertex>().unwrap(), a);
        assert_eq!("0,0,(0)".parse::<LcVertex>().unwrap(), LcVertex::root());
        assert!("0,0".parse::<LcVertex>().is_err());
    }

    #[test]
    fn projection_examples() {
        let c = prefix(&[1, 3, 5, 7]);
        assert_eq!(v(0, 0, "(0)").project_level(2, &c).unwrap().to_string(), "p0:00");
        assert_eq!(v(1, 0, "(0)").project_level(1, &c).unwrap().to_string(), "p0");
        assert_eq!(v(2, 3, "(01)").project_level(4, &c).unwrap().to_string(), "p3:01");
        assert!(PathGadget::build(&c).contains(&"p3:01".parse().unwrap()));
        assert!(matches!(v(2, 0, "(0)").project_level(1, &c), Err(LcError::LevelOutOfRange { .. })));
        assert!(matches!(v(1, 2, "(0)").project_level(1, &c), Err(LcError::InvalidVertex(_))));
    }

    #[test]
    fn adjacency_examples() {
        let c = prefix(&[1, 3, 5]);
        assert!(v(0, 0, "(0)").adjacent(&v(1, 0, "(0)"), &c).unwrap());
        assert!(!v(0, 0, "(0)").adjacent(&v(0, 0, "1(0)"), &c).unwrap());
        assert!(v(0, 0, "1(0)").adjacent(&v(1, 1, "(0)"), &c).unwrap());
    }

    #[test]
    fn neighbor_examples() {
        let c = prefix(&[1, 3, 5]);
        assert_eq!(LcVertex::root().neighbors(&c).unwrap(), [v(1, 0, "(0)")]);
        let n = v(1, 0, "(0)").neighbors(&c).unwrap();
        assert_eq!(n, [LcVertex::root(), v(1, 1, "(0)")]);
        assert_eq!(v(0, 0, "01(0)").neighbors(&c).unwrap().len(), 2);
        for w in v(2, 0, "1(01)").neighbors(&c).unwrap() {
            assert!(w.adjacent(&v(2, 0, "1(01)"), &c).unwrap());
        }
    }

    #[test]
    fn component_examples() {
        let c = prefix(&[1, 3]);
        assert!(LcVertex::root().same_component(&v(0, 0, "1(0)"), &c).unwrap());
        assert!(!LcVertex::root().same_component(&v(0, 0, "(1)"), &c).unwrap());
        let a = v(2, 1, "10(110)");
        assert!(a.same_component(&a, &c).unwrap());
        for w in a.neighbors(&c).unwrap() {
            assert!(a.same_component(&w, &c).unwrap());
            assert!(w.same_component(&a, &c).unwrap());
        }
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(level_quotient(&ParamPrefix::empty()).unwrap().classes.len(), 1);
        let q = level_quotient(&prefix(&[1])).unwrap();
        assert_eq!((q.classes.len(), q.edges.len()), (4, 3));
        assert!(q.isomorphic);
        let q = level_quotient(&prefix(&[1, 3])).unwrap();
        assert_eq!((q.classes.len(), q.edges.len()), (12, 11));
        assert!(q.isomorphic);
        for len in 0..=8 {
            let values: Vec<u64> = (0..len).map(|i| 2 * (i % 4) + 1).collect();
            assert!(level_quotient(&prefix(&values)).unwrap().isomorphic);
        }
    }

    #[test]
    fn sibling_examples() {
        let r = odd_sibling_obstruction(&prefix(&[1]), 0, BitString::empty()).unwrap();
        assert_eq!(r.distance, 3);
        let r = odd_sibling_obstruction(&prefix(&[1, 3]), 0, "0".parse().unwrap()).unwrap();
        assert!(r.odd);
        assert!(matches!(
            odd_sibling_obstruction(&prefix(&[2]), 0, BitString::empty()),
            Err(LcError::Gadget(GadgetError::NonOddPrefix { .. }))
        ));
    }
}
