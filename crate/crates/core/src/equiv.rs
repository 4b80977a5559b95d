//! Coherent homomorphism families `h_n : L^c_n -> L^d_{m(n)}` between the
//! truncations of two limit graphs.
//!
//! Level `n + 1` is determined by two copy suffixes and one join walk:
//! `h_{n+1}(u^i) = h_n(u)^(s_{n,i})`, and the join path of `L^c_{n+1}` is
//! sent along a walk of length `c(n) + 2` in `L^d_{m(n+1)}`. The planner
//! searches for these choices; [`verify_equivalence`] is the authority.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitString;
use crate::gadget::{GadgetError, GadgetVertex, ParamPrefix, PathGadget};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquivError {
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("depth {depth} exceeds the source prefix length {len}")]
    DepthExceedsPrefix { depth: usize, len: usize },
    #[error("no admissible extension found at level {level} within the search limits")]
    GapInsufficient { level: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceTower {
    pub source: ParamPrefix,
    pub target: ParamPrefix,
    /// `m(0), ..., m(depth)`.
    pub levels: Vec<usize>,
    /// `[s_{n,0}, s_{n,1}]` for `n < depth`.
    pub suffixes: Vec<[BitString; 2]>,
    /// The image of the level-`n` join path, `c(n) + 3` vertices of `L^d_{m(n+1)}`.
    pub joins: Vec<Vec<GadgetVertex>>,
    /// `h_n`, listed along the path order of `L^c_n`.
    pub maps: Vec<Vec<GadgetVertex>>,
}

impl EquivalenceTower {
    pub fn depth(&self) -> usize {
        self.suffixes.len()
    }
}

/// The source-side join path of level `n`: `(e_1^n)^0, p_0, ..., p_c, (e_1^n)^1`.
fn join_path(n: usize, c: u64) -> Vec<GadgetVertex> {
    let e1 = GadgetVertex::endpoint(n, true);
    let mut path = vec![e1.child(false)];
    path.extend((0..=c).map(GadgetVertex::path));
    path.push(e1.child(true));
    path
}

/// `h_{n+1}` from `h_n`, the suffixes and the join walk.
fn extend_map(
    small: &PathGadget,
    big: &PathGadget,
    h: &[GadgetVertex],
    suffixes: &[BitString; 2],
    join: &[GadgetVertex],
) -> Vec<GadgetVertex> {
    big.vertices()
        .iter()
        .map(|u| match u.t.popped() {
            Some((t, bit)) => {
                let parent = small.position(&GadgetVertex::new(u.k, t)).expect("copies come from the smaller gadget");
                h[parent].with_suffix(suffixes[bit as usize]).expect("labels stay below the bit limit")
            }
            None => join[u.k as usize + 1],
        })
        .collect()
}

pub fn identity_tower(c: &ParamPrefix, depth: usize) -> Result<EquivalenceTower, EquivError> {
    if depth > c.len() {
        return Err(EquivError::DepthExceedsPrefix { depth, len: c.len() });
    }
    let mut maps = vec![vec![GadgetVertex::path(0)]];
    let mut suffixes = Vec::with_capacity(depth);
    let mut joins = Vec::with_capacity(depth);
    let mut small = PathGadget::build(&ParamPrefix::empty());
    for n in 0..depth {
        let big = PathGadget::build(&c.truncated(n + 1));
        let s = [BitString::from_bits(&[false]).expect("one bit"), BitString::from_bits(&[true]).expect("one bit")];
        let join = join_path(n, c.values()[n]);
        maps.push(extend_map(&small, &big, &maps[n], &s, &join));
        suffixes.push(s);
        joins.push(join);
        small = big;
    }
    Ok(EquivalenceTower {
        source: c.clone(),
        target: c.clone(),
        levels: (0..=depth).collect(),
        suffixes,
        joins,
        maps,
    })
}

/// Search limits for [`plan_equivalence_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanLimits {
    /// Largest level advance `m(n+1) - m(n)` tried.
    pub max_gap: usize,
    /// Rejected candidates allowed before giving up.
    pub budget: usize,
}

impl Default for PlanLimits {
    fn default() -> Self {
        PlanLimits { max_gap: 6, budget: 4096 }
    }
}

pub fn plan_equivalence(c: &ParamPrefix, d: &ParamPrefix, depth: usize) -> Result<EquivalenceTower, EquivError> {
    plan_equivalence_with(c, d, depth, PlanLimits::default())
}

struct Planner<'a> {
    c: &'a ParamPrefix,
    d: &'a ParamPrefix,
    depth: usize,
    limits: PlanLimits,
    budget: usize,
    deepest_failure: usize,
    source: Vec<PathGadget>,
    target: Vec<Option<PathGadget>>,
}

impl Planner<'_> {
    fn target(&mut self, level: usize) -> &PathGadget {
        let d = self.d;
        self.target[level].get_or_insert_with(|| PathGadget::build(&d.truncated(level)))
    }

    fn extend(&mut self, tower: &mut EquivalenceTower) -> bool {
        let n = tower.depth();
        if n == self.depth {
            return true;
        }
        let base = tower.levels[n];
        let length = self.c.values()[n] + 2;
        let e1 = self.source[n].position(&GadgetVertex::endpoint(n, true)).expect("endpoint exists");
        let w = tower.maps[n][e1];
        let top = self.d.len().min(base + self.limits.max_gap);
        for level in base + 1..=top {
            let gap = level - base;
            for s0 in BitString::all_of_length(gap) {
                for s1 in BitString::all_of_length(gap) {
                    let (a, b) = (w.with_suffix(s0).expect("short"), w.with_suffix(s1).expect("short"));
                    let target = self.target(level);
                    let dist = target.distance(&a, &b).expect("copies of a target vertex");
                    if dist as u64 > length || (length - dist as u64) % 2 == 1 {
                        continue;
                    }
                    let walk_shape = PathGadget::build(&ParamPrefix::new(vec![length - 2]).expect("positive join"));
                    let (start, end) = walk_shape.endpoints();
                    let pins = BTreeMap::from([(start, a), (end, b)]);
                    let Some(join) = search_hom(&walk_shape, target, &pins).expect("pins are valid") else {
                        continue;
                    };
                    let map = extend_map(&self.source[n], &self.source[n + 1], &tower.maps[n], &[s0, s1], &join);
                    tower.levels.push(level);
                    tower.suffixes.push([s0, s1]);
                    tower.joins.push(join);
                    tower.maps.push(map);
                    if self.extend(tower) {
                        return true;
                    }
                    tower.levels.pop();
                    tower.suffixes.pop();
                    tower.joins.pop();
                    tower.maps.pop();
                    if self.budget == 0 {
                        return false;
                    }
                    self.budget -= 1;
                }
            }
        }
        self.deepest_failure = self.deepest_failure.max(n);
        false
    }
}

/// Greedy least level advance with lexicographic suffix choice, backtracking
/// within `limits`.
pub fn plan_equivalence_with(
    c: &ParamPrefix,
    d: &ParamPrefix,
    depth: usize,
    limits: PlanLimits,
) -> Result<EquivalenceTower, EquivError> {
    c.require_odd()?;
    d.require_odd()?;
    if depth > c.len() {
        return Err(EquivError::DepthExceedsPrefix { depth, len: c.len() });
    }
    let mut planner = Planner {
        c,
        d,
        depth,
        limits,
        budget: limits.budget,
        deepest_failure: 0,
        source: (0..=depth).map(|n| PathGadget::build(&c.truncated(n))).collect(),
        target: vec![None; d.len() + 1],
    };
    let mut tower = EquivalenceTower {
        source: c.clone(),
        target: d.clone(),
        levels: vec![0],
        suffixes: Vec::new(),
        joins: Vec::new(),
        maps: vec![vec![GadgetVertex::path(0)]],
    };
    if planner.extend(&mut tower) {
        Ok(tower)
    } else {
        Err(EquivError::GapInsufficient { level: planner.deepest_failure })
    }
}

/// The lexicographically least homomorphism `h -> g` (compared along the path
/// order of `h`, by path position in `g`) agreeing with `pins`, or `None`.
pub fn search_hom(
    h: &PathGadget,
    g: &PathGadget,
    pins: &BTreeMap<GadgetVertex, GadgetVertex>,
) -> Result<Option<Vec<GadgetVertex>>, GadgetError> {
    let size = g.vertex_count();
    let mut domains: Vec<Vec<bool>> = vec![vec![true; size]; h.vertex_count()];
    for (u, v) in pins {
        let (i, j) = (h.require(u)?, g.require(v)?);
        domains[i] = vec![false; size];
        domains[i][j] = true;
    }
    // on a path target, the neighbours of position j are j - 1 and j + 1
    let supported = |next: &[bool], j: usize| (j > 0 && next[j - 1]) || (j + 1 < size && next[j + 1]);
    for i in 1..domains.len() {
        let prev = domains[i - 1].clone();
        for (j, ok) in domains[i].iter_mut().enumerate() {
            *ok &= supported(&prev, j);
        }
    }
    for i in (0..domains.len().saturating_sub(1)).rev() {
        let next = domains[i + 1].clone();
        for (j, ok) in domains[i].iter_mut().enumerate() {
            *ok &= supported(&next, j);
        }
    }
    // arc consistency is exact on a path, so the greedy choice never dead-ends
    let mut positions: Vec<usize> = Vec::with_capacity(domains.len());
    for (i, domain) in domains.iter().enumerate() {
        let choice = match positions.last() {
            None => domain.iter().position(|&ok| ok),
            Some(&p) => [p.checked_sub(1), Some(p + 1)].into_iter().flatten().find(|&j| j < size && domain[j]),
        };
        match choice {
            Some(j) => positions.push(j),
            None if i == 0 => return Ok(None),
            None => unreachable!("arc consistent domains always extend"),
        }
    }
    Ok(Some(positions.into_iter().map(|j| g.vertex_at(j)).collect()))
}

pub fn verify_equivalence(t: &EquivalenceTower) -> Report {
    let mut report = Report::new();
    let depth = t.depth();
    let shape_ok = report.check(t.levels.len() == depth + 1, || "levels length differs from depth + 1".into())
        & report.check(t.joins.len() == depth, || "joins length differs from depth".into())
        & report.check(t.maps.len() == depth + 1, || "maps length differs from depth + 1".into())
        & report.check(t.source.len() >= depth, || "source prefix shorter than depth".into())
        & report.check(t.levels.first() == Some(&0), || "m(0) must be 0".into())
        & report.check(t.levels.windows(2).all(|w| w[0] <= w[1]), || "level map is not nondecreasing".into())
        & report.check(t.levels.iter().all(|&m| m <= t.target.len()), || "level map exceeds the target prefix".into());
    if !shape_ok {
        return report;
    }
    let source: Vec<_> = (0..=depth).map(|n| PathGadget::build(&t.source.truncated(n))).collect();
    let target: Vec<_> = t.levels.iter().map(|&m| PathGadget::build(&t.target.truncated(m))).collect();

    let mut valid = vec![false; depth + 1];
    for n in 0..=depth {
        let (src, dst, map) = (&source[n], &target[n], &t.maps[n]);
        if !report.check(map.len() == src.vertex_count(), || format!("h_{n} has {} images", map.len())) {
            continue;
        }
        if !report.check(map.iter().all(|v| dst.contains(v)), || format!("h_{n} leaves L^d_{}", t.levels[n])) {
            continue;
        }
        let mut ok = true;
        for e in 0..src.edge_count() {
            ok &= report.check(dst.adjacent(&map[e], &map[e + 1]), || {
                format!("h_{n} sends edge {}~{} to a non-edge", src.vertex_at(e), src.vertex_at(e + 1))
            });
        }
        valid[n] = ok;
    }

    for n in 0..depth {
        let gap = t.levels[n + 1] - t.levels[n];
        for (i, s) in t.suffixes[n].iter().enumerate() {
            report.check(s.len() == gap, || format!("s_{{{n},{i}}} has length {} instead of {gap}", s.len()));
        }
        if !(valid[n] && valid[n + 1]) {
            continue;
        }
        for (pos, u) in source[n].vertices().iter().enumerate() {
            for bit in [false, true] {
                let child = source[n + 1].position(&u.child(bit)).expect("copy vertex");
                let expected = t.maps[n][pos].with_suffix(t.suffixes[n][bit as usize]);
                report.check(expected.ok() == Some(t.maps[n + 1][child]), || {
                    format!("coherence fails at h_{}({})", n + 1, u.child(bit))
                });
            }
        }
        let join = &t.joins[n];
        let path = join_path(n, t.source.values()[n]);
        if !report.check(join.len() == path.len(), || format!("join walk {n} has {} vertices", join.len())) {
            continue;
        }
        for (step, pair) in join.windows(2).enumerate() {
            report.check(target[n + 1].adjacent(&pair[0], &pair[1]), || format!("join walk {n} breaks at step {step}"));
        }
        for (u, v) in path.iter().zip(join) {
            let image = t.maps[n + 1][source[n + 1].position(u).expect("join path vertex")];
            report.check(image == *v, || format!("h_{} ({u}) is not the recorded join vertex", n + 1));
        }
    }
    report
}
