//! Either a proper 2-colouring of `G`, or a parameter prefix `c` with a
//! coherent tower of pinned homomorphisms `φ_n : L^c_n -> G`.
//!
//! Each level glues two copies of the previous pin along an odd closed walk
//! at the image of the gluing vertex, so `φ_{n+1}(u^i) = φ_n(u)` holds by
//! construction.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitString;
use crate::gadget::{GadgetError, GadgetVertex, ParamPrefix, PathGadget};
use crate::graph::{Coloring, GraphError, VertexId, WitnessedGraph};
use crate::homset::{gluing_walk, Hom, HomError, HomJson};
use crate::lc::level_quotient;
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DichotomyError {
    #[error("schedule has {len} values but depth {depth} needs one per level")]
    ScheduleTooShort { len: usize, depth: usize },
    #[error("(m, k) = ({m}, {k}) is not a vertex index for this prefix")]
    InvalidIndex { m: usize, k: u64 },
    #[error("level {level} is beyond the tower depth {depth}")]
    OutOfTruncation { level: usize, depth: usize },
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

/// Lower bounds `N(n)` for the join parameters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Schedule {
    /// `max(1, 2n - 1)`: odd, nondecreasing and unbounded.
    #[default]
    Default,
    Explicit(Vec<u64>),
}

impl Schedule {
    pub fn value(&self, n: usize) -> Option<u64> {
        match self {
            Schedule::Default => Some(unbounded_schedule_default(n)),
            Schedule::Explicit(values) => values.get(n).copied(),
        }
    }

    pub fn values(&self, depth: usize) -> Result<Vec<u64>, DichotomyError> {
        (0..depth)
            .map(|n| self.value(n))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| DichotomyError::ScheduleTooShort { len: self.explicit_len(), depth })
    }

    fn explicit_len(&self) -> usize {
        match self {
            Schedule::Default => usize::MAX,
            Schedule::Explicit(values) => values.len(),
        }
    }
}

impl std::str::FromStr for Schedule {
    type Err = String;

    /// `default`, or a comma-separated list.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "default" {
            return Ok(Schedule::Default);
        }
        s.split(',')
            .filter(|part| !part.trim().is_empty())
            .map(|part| part.trim().parse::<u64>().map_err(|e| format!("schedule value {part:?}: {e}")))
            .collect::<Result<_, _>>()
            .map(Schedule::Explicit)
    }
}

pub fn unbounded_schedule_default(n: usize) -> u64 {
    (2 * n as u64).saturating_sub(1).max(1)
}

#[derive(Debug, Clone)]
pub struct Tower {
    prefix: ParamPrefix,
    gadgets: Vec<Arc<PathGadget>>,
    /// The bounds `N(n)` the prefix was chosen against.
    pub schedule: Vec<u64>,
    /// `φ_0, ..., φ_depth`.
    pub levels: Vec<Hom>,
}

#[derive(Debug, Clone)]
pub enum Dichotomy {
    Coloring(Coloring),
    Tower(Tower),
}

/// Colours `g` when it is bipartite, otherwise builds a tower of the given depth.
pub fn decide(g: &WitnessedGraph, depth: usize, schedule: &Schedule) -> Result<Dichotomy, DichotomyError> {
    let comps = g.components();
    let Some(root) = g.vertices().find(|&v| !comps.in_bipartite_component(v)) else {
        let mut col = Coloring::new();
        for v in g.vertices() {
            col.set(v, comps.side[v.0] as u32);
        }
        return Ok(Dichotomy::Coloring(col));
    };
    let bounds = schedule.values(depth)?;
    let mut gadgets = vec![Arc::new(PathGadget::build(&ParamPrefix::empty()))];
    let mut levels = vec![Hom { vertices: vec![root], witnesses: Vec::new() }];
    for (n, &bound) in bounds.iter().enumerate() {
        let (small, phi) = (&gadgets[n], &levels[n]);
        let x = phi.image(small, &GadgetVertex::endpoint(n, true))?;
        let (join, walk) = gluing_walk(g, x, bound)?.expect("pins stay in a non-bipartite component");
        let big = Arc::new(PathGadget::build(&small.prefix().extended(join)?));
        let next = Hom::glue(small, &big, phi, phi, &walk)?;
        gadgets.push(big);
        levels.push(next);
    }
    let prefix = gadgets.last().expect("level 0 exists").prefix().clone();
    Ok(Dichotomy::Tower(Tower { prefix, gadgets, schedule: bounds, levels }))
}

impl Tower {
    pub fn prefix(&self) -> &ParamPrefix {
        &self.prefix
    }

    pub fn depth(&self) -> usize {
        self.prefix.len()
    }

    pub fn gadget(&self, n: usize) -> &Arc<PathGadget> {
        &self.gadgets[n]
    }

    /// `φ_{m+|t|}((p_k)^t)`.
    pub fn evaluate(&self, m: usize, k: u64, t: BitString) -> Result<VertexId, DichotomyError> {
        let valid = match m {
            0 => k == 0,
            m => self.prefix.get(m - 1).is_some_and(|c| k <= c),
        };
        if !valid {
            return Err(DichotomyError::InvalidIndex { m, k });
        }
        let level = m + t.len();
        if level > self.depth() {
            return Err(DichotomyError::OutOfTruncation { level, depth: self.depth() });
        }
        Ok(self.levels[level].image(&self.gadgets[level], &GadgetVertex::new(k, t))?)
    }

    pub fn to_json(&self, g: &WitnessedGraph) -> TowerJson {
        TowerJson {
            c: self.prefix.clone(),
            schedule: self.schedule.clone(),
            levels: self.levels.iter().zip(&self.gadgets).map(|(h, gd)| h.to_json(gd, g)).collect(),
        }
    }

    pub fn from_json(doc: &TowerJson, g: &WitnessedGraph) -> Result<Tower, DichotomyError> {
        let gadgets: Vec<_> =
            (0..=doc.c.len()).map(|n| Arc::new(PathGadget::build(&doc.c.truncated(n)))).collect();
        if doc.levels.len() != gadgets.len() {
            return Err(HomError::ShapeMismatch.into());
        }
        let levels = doc.levels.iter().zip(&gadgets).map(|(h, gd)| Hom::from_json(h, gd, g)).collect::<Result<_, _>>()?;
        Ok(Tower { prefix: doc.c.clone(), gadgets, schedule: doc.schedule.clone(), levels })
    }
}

/// `{"c": [...], "schedule": [...], "levels": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerJson {
    pub c: ParamPrefix,
    pub schedule: Vec<u64>,
    pub levels: Vec<HomJson>,
}

/// Checks every tower invariant, then the truncation of `𝕃_c` at the top
/// level: evaluated endpoints of each quotient edge must be joined by the
/// recorded witness.
pub fn verify_tower(t: &Tower, g: &WitnessedGraph) -> Report {
    let mut report = Report::new();
    let depth = t.depth();
    let comps = g.components();
    if !report.check(t.levels.len() == depth + 1, || format!("{} levels for depth {depth}", t.levels.len())) {
        return report;
    }
    report.check(t.schedule.len() >= depth, || "schedule shorter than depth".into());
    for (n, &c) in t.prefix.values().iter().enumerate() {
        report.check(c % 2 == 1, || format!("c({n}) = {c} is even"));
        if let Some(&bound) = t.schedule.get(n) {
            report.check(c >= bound, || format!("c({n}) = {c} is below the schedule value {bound}"));
        }
    }

    let mut valid = Vec::with_capacity(depth + 1);
    for (n, phi) in t.levels.iter().enumerate() {
        let ok = match phi.verify(&t.gadgets[n], g) {
            Ok(()) => true,
            Err(e) => {
                report.fail(format!("level {n}: {e}"));
                false
            }
        };
        report.check(phi.vertices.iter().all(|&v| !comps.in_bipartite_component(v)), || {
            format!("level {n} leaves the non-bipartite components, so it is not a largeness witness")
        });
        valid.push(ok);
    }

    for n in 0..depth {
        if !(valid[n] && valid[n + 1]) {
            continue;
        }
        for bit in [false, true] {
            match t.levels[n + 1].restriction(&t.gadgets[n + 1], &t.gadgets[n], bit) {
                Ok(restricted) => {
                    report.check(restricted.vertices == t.levels[n].vertices, || {
                        format!("level {} copy {} disagrees with level {n} on vertices", n + 1, bit as u8)
                    });
                    report.check(restricted.witnesses == t.levels[n].witnesses, || {
                        format!("level {} copy {} disagrees with level {n} on witnesses", n + 1, bit as u8)
                    });
                }
                Err(e) => report.fail(format!("level {} restriction: {e}", n + 1)),
            }
        }
    }

    if valid[depth] {
        check_quotient_edges(t, g, &mut report);
    }
    report
}

fn check_quotient_edges(t: &Tower, g: &WitnessedGraph, report: &mut Report) {
    let depth = t.depth();
    let quotient = match level_quotient(&t.prefix) {
        Ok(q) => q,
        Err(e) => return report.fail(format!("level quotient: {e}")),
    };
    if !report.check(quotient.isomorphic, || "level quotient does not match the gadget".into()) {
        return;
    }
    let eval = |i: usize| {
        let v = &quotient.classes[i];
        let bits = BitString::from_bits(&v.x.take(depth - v.m)).expect("depth is below the bit limit");
        t.evaluate(v.m, v.k, bits)
    };
    for &(i, j) in &quotient.edges {
        match (eval(i), eval(j)) {
            (Ok(a), Ok(b)) => {
                let w = t.levels[depth].witnesses[i];
                report.check(g.other_end(w, a) == Some(b), || {
                    format!("quotient edge {}~{} is not carried by witness {}", quotient.classes[i], quotient.classes[j], g.witness_name(w))
                });
            }
            (Err(e), _) | (_, Err(e)) => report.fail(format!("evaluating quotient edge: {e}")),
        }
    }
}
