//! Desk-scale property suites, one per acceptance criterion.
//!
//! Every suite draws from its own ChaCha stream derived from the shared
//! seed, so suites can run in any order or subset with identical verdicts.
//! The `oracle` flag only adds cross-checks.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dichotomy::{decide, unbounded_schedule_default, verify_tower, Dichotomy, Schedule};
use crate::equiv::{identity_tower, plan_equivalence, verify_equivalence};
use crate::gadget::{GadgetVertex, ParamPrefix, PathGadget};
use crate::graph::{BipartiteCertificate, PhiVerdict, VertexSet, WitnessedGraph};
use crate::homset::{ExplicitHomSet, HomProfile};
use crate::lc::LcVertex;
use crate::oracle;
use crate::report::Report;
use crate::transfer;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub oracle: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: DEFAULT_SEED, oracle: false }
    }
}

pub struct Suite {
    pub id: &'static str,
    pub module: &'static str,
    pub title: &'static str,
    pub run: fn(&SuiteConfig, &mut ChaCha8Rng) -> Report,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub id: &'static str,
    pub module: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub checks: u64,
    pub violation_count: usize,
    /// The first few violations.
    pub violations: Vec<String>,
}

pub fn suites() -> Vec<Suite> {
    vec![
        Suite { id: "gadget-recursion", module: "gadget", title: "gadget sizes and endpoints follow the recursion", run: gadget_recursion },
        Suite { id: "odd-distance", module: "gadget", title: "sibling vertices are at odd distance", run: odd_distance },
        Suite { id: "phi-collapse", module: "graph-core", title: "parity cover agrees with walk enumeration", run: phi_collapse },
        Suite { id: "bipartite-superset", module: "graph-core", title: "superset colourings and cover gluing are proper", run: bipartite_superset },
        Suite { id: "largeness", module: "homset", title: "level-0 largeness iff non-bipartite", run: largeness },
        Suite { id: "profile-oracle", module: "homset", title: "profiles agree with enumerated hom sets", run: profile_oracle },
        Suite { id: "extension", module: "homset", title: "extension and largeness preservation", run: extension },
        Suite { id: "dichotomy", module: "dichotomy", title: "exactly one branch, towers verify", run: dichotomy },
        Suite { id: "lc-adjacency", module: "lc-graph", title: "symbolic adjacency matches level brute force", run: lc_adjacency },
        Suite { id: "equivalence", module: "equiv", title: "identity and planned towers verify", run: equivalence },
    ]
}

/// Runs the suite, seeding stream `i` of the shared seed for suite `i`.
pub fn run_suite(index: usize, suite: &Suite, config: &SuiteConfig) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let report = (suite.run)(config, &mut rng);
    SuiteOutcome {
        id: suite.id,
        module: suite.module,
        title: suite.title,
        passed: report.passed(),
        checks: report.checks,
        violation_count: report.violations.len(),
        violations: report.violations.into_iter().take(5).collect(),
    }
}

/// Runs every suite whose id or module equals `only` (all when `None`).
pub fn run_all(config: &SuiteConfig, only: Option<&str>) -> Vec<SuiteOutcome> {
    suites()
        .iter()
        .enumerate()
        .filter(|(_, s)| only.is_none_or(|f| f == s.id || f == s.module))
        .map(|(i, s)| run_suite(i, s, config))
        .collect()
}

fn graphs_up_to(n: usize) -> impl Iterator<Item = WitnessedGraph> {
    (1..=n).flat_map(oracle::all_graphs)
}

fn gadget_recursion(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Report {
    let mut report = Report::new();
    for _ in 0..50 {
        let len = rng.gen_range(0..=10);
        let prefix = oracle::random_odd_prefix(rng, len, 9);
        let mut prev = PathGadget::build(&ParamPrefix::empty());
        for n in 0..=len {
            let g = if n == 0 { prev.clone() } else { PathGadget::build(&prefix.truncated(n)) };
            if n > 0 {
                let c = prefix.values()[n - 1] as usize;
                report.check(g.vertex_count() == 2 * prev.vertex_count() + c + 1, || {
                    format!("{prefix} level {n}: {} vertices", g.vertex_count())
                });
                report.check(g.edge_count() == 2 * prev.edge_count() + c + 2, || {
                    format!("{prefix} level {n}: {} edges", g.edge_count())
                });
            }
            let (e0, e1) = g.endpoints();
            report.check(e0 == GadgetVertex::endpoint(n, false) && e1 == GadgetVertex::endpoint(n, true), || {
                format!("{prefix} level {n}: endpoints {e0}, {e1}")
            });
            if config.oracle && n <= 6 {
                let edges = oracle::gadget_edges(&prefix.truncated(n));
                report.check(
                    edges.len() == g.edge_count() && g.edges().all(|(a, b)| edges.contains(&(a.min(b), a.max(b)))),
                    || format!("{prefix} level {n}: edge set differs from the recursion"),
                );
            }
            prev = g;
        }
    }
    report
}

fn odd_distance(_: &SuiteConfig, rng: &mut ChaCha8Rng) -> Report {
    let mut report = Report::new();
    for depth in 0..=8 {
        for _ in 0..6 {
            let prefix = oracle::random_odd_prefix(rng, depth, 9);
            match PathGadget::build(&prefix).check_odd_distance_lemma() {
                Ok(r) => {
                    report.checks += r.pairs_checked as u64;
                    for (a, b, d) in r.violations {
                        report.violations.push(format!("{prefix}: {a} and {b} at even distance {d}"));
                    }
                }
                Err(e) => report.fail(e.to_string()),
            }
        }
    }
    report
}

/// Exhaustive small graphs with sampled subsets, then random graphs.
fn phi_instances(rng: &mut ChaCha8Rng) -> Vec<(WitnessedGraph, Vec<VertexSet>)> {
    let mut out = Vec::new();
    for g in graphs_up_to(5) {
        let n = g.vertex_count();
        let sets: Vec<VertexSet> = if n <= 4 {
            (0u32..1 << n).map(|mask| g.vertices().filter(|v| mask >> v.0 & 1 == 1).collect()).collect()
        } else {
            let mut sets = vec![g.all_vertices()];
            sets.extend((0..6).map(|_| oracle::random_subset(rng, &g)));
            sets
        };
        out.push((g, sets));
    }
    for _ in 0..500 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.1..0.6);
        let g = oracle::random_graph(rng, n, p);
        let sets = (0..4).map(|_| oracle::random_subset(rng, &g)).collect();
        out.push((g, sets));
    }
    out
}

fn phi_collapse(_: &SuiteConfig, rng: &mut ChaCha8Rng) -> Report {
    let mut report = Report::new();
    for (g, sets) in phi_instances(rng) {
        let bound = 2 * g.vertex_count() + 1;
        for set in sets {
            let verdict = g.phi_bound(&set).expect("subsets of V");
            let brute = oracle::min_odd_walk(&g, &set, bound);
            let agrees = match verdict {
                PhiVerdict::NoOddWalk => brute.is_none(),
                PhiVerdict::Unbounded { min_odd_length } => brute == Some(min_odd_length),
            };
            report.check(agrees, || format!("phi_bound {verdict:?} vs enumeration {brute:?} on {set:?}"));
            let holds: BTreeSet<bool> = [0, 1, 2, 5, 1000].iter().map(|&k| g.phi_holds(&set, k).expect("subset")).collect();
            report.check(holds.len() == 1, || format!("phi_holds depends on k for {set:?}"));
        }
    }
    report
}

fn bipartite_superset(_: &SuiteConfig, rng: &mut ChaCha8Rng) -> Report {
    let mut report = Report::new();
    for (g, sets) in phi_instances(rng) {
        for set in sets {
            if g.phi_bound(&set).expect("subset") != PhiVerdict::NoOddWalk {
                continue;
            }
            match g.bipartite_superset_coloring(&set) {
                Ok((closure, col)) => {
                    report.check(set.is_subset(&closure), || "closure misses part of the set".into());
                    let closed = closure.iter().all(|&v| g.neighbors(v).all(|u| closure.contains(&u)));
                    report.check(closed, || format!("closure of {set:?} is not component closed"));
                    report.check(col.is_proper_on(&g, &closure) && col.color_count() <= 2, || {
                        format!("colouring of the closure of {set:?} is not a proper 2-colouring")
                    });
                }
                Err(e) => report.fail(format!("superset colouring failed: {e}")),
            }
        }
    }
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.2..0.9);
        let g = oracle::random_bipartite_graph(rng, n, p);
        let pieces = rng.gen_range(1..=4);
        let cover = oracle::random_tiny_cover(rng, &g, pieces);
        match g.two_color_from_cover(&cover) {
            Ok(col) => {
                report.check(col.len() == n && col.is_proper(&g) && col.color_count() <= 2, || {
                    format!("cover gluing on {n} vertices is not a proper 2-colouring")
                });
            }
            Err(e) => report.fail(format!("cover gluing failed on a bipartite graph: {e}")),
        }
    }
    report
}

fn largeness(config: &SuiteConfig, _: &mut ChaCha8Rng) -> Report {
    let mut report = Report::new();
    for g in graphs_up_to(5) {
        let full = HomProfile::all_homs(&ParamPrefix::empty(), &g);
        let bipartite = oracle::is_bipartite(&g);
        report.check(full.is_large() != bipartite, || format!("largeness disagrees with bipartiteness on {:?}", g.to_json()));
        if config.oracle {
            let explicit = full.enumerate(usize::MAX).homs;
            report.check(oracle::small_by_cover(&explicit, &g) == bipartite, || "cover search disagrees".into());
        }
    }
    report
}

const ENUMERATION_CAP: usize = 4000;

fn compare_profile(profile: &HomProfile, domains: Option<&[VertexSet]>, report: &mut Report) {
    let (gadget, g) = (profile.gadget(), profile.graph());
    let Some(homs) = oracle::homs(gadget, g, domains, ENUMERATION_CAP) else {
        if domains.is_none() {
            let expected = transfer::walk_count::<BigUint>(g, gadget.edge_count() as u64);
            report.check(profile.count_exact() == expected, || "count differs from the transfer matrix".into());
        }
        return;
    };
    let explicit = ExplicitHomSet::new(gadget.clone(), homs).expect("distinct homs");
    let label = || format!("prefix {} on {} vertices", gadget.prefix(), g.vertex_count());
    report.check(profile.count_exact() == BigUint::from(explicit.len()), || format!("count differs, {}", label()));
    report.check(profile.count::<u64>() == explicit.len() as u64, || format!("u64 count differs, {}", label()));
    for u in gadget.vertices() {
        report.check(profile.project(u).ok() == explicit.project(u).ok(), || format!("projection at {u} differs, {}", label()));
    }
    report.check(profile.is_tiny() == explicit.is_tiny(g), || format!("tininess differs, {}", label()));
    report.check(profile.is_large() == explicit.is_large(g), || format!("largeness differs, {}", label()));
}

fn profile_oracle(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Report {
    let mut report = Report::new();
    let k3 = WitnessedGraph::complete(3);
    let one = ParamPrefix::new(vec![1]).expect("valid");
    report.check(HomProfile::all_homs(&one, &k3).count_exact() == BigUint::from(24u32), || "K3 count is not 24".into());

    let prefixes: Vec<ParamPrefix> =
        [vec![], vec![1], vec![3], vec![1, 1]].into_iter().map(|v| ParamPrefix::new(v).expect("valid")).collect();
    for g in graphs_up_to(4) {
        for prefix in &prefixes {
            compare_profile(&HomProfile::all_homs(prefix, &g), None, &mut report);
        }
    }
    for _ in 0..60 {
        let p = rng.gen_range(0.2..0.8);
        let g = oracle::random_graph(rng, 5, p);
        let depth = rng.gen_range(1..=3);
        let gadget = Arc::new(PathGadget::build(&oracle::random_odd_prefix(rng, depth, 3)));
        compare_profile(&HomProfile::full(gadget.clone(), &g), None, &mut report);
        // domains around a random member keep depth-3 sets small enough to enumerate
        for _ in 0..3 {
            let Some(anchor) = oracle::random_hom(rng, &gadget, &g) else {
                continue;
            };
            let domains: Vec<VertexSet> = anchor
                .vertices
                .iter()
                .map(|&a| g.vertices().filter(|&v| v == a || rng.gen_bool(0.2)).collect())
                .collect();
            let witnesses = vec![g.witnesses().collect(); gadget.edge_count()];
            let profile = HomProfile::from_sets(gadget.clone(), &g, domains.clone(), witnesses).expect("valid sets");
            compare_profile(&profile, Some(&domains), &mut report);
        }
    }
    if config.oracle {
        for len in 0..6u64 {
            let g = oracle::random_graph(rng, 5, 0.5);
            report.check(
                transfer::walk_count::<BigUint>(&g, len) == oracle::walk_count(&g, len as usize),
                || "transfer matrix disagrees with walk enumeration".into(),
            );
        }
    }
    report
}

fn check_extension(p: &HomProfile, min_join: u64, report: &mut Report) {
    let label = || format!("graph on {} vertices, N = {min_join}", p.graph().vertex_count());
    match p.extend_witness(min_join) {
        Ok(ext) => {
            let d = ext.join_length;
            report.check(d % 2 == 1 && d >= min_join, || format!("join {d} is not odd and >= N, {}", label()));
            report.check(ext.hom.verify(&ext.gadget, p.graph()).is_ok(), || format!("glued map is not a hom, {}", label()));
            for bit in [false, true] {
                let restricted = ext.hom.restriction(&ext.gadget, p.gadget(), bit);
                report.check(restricted.as_ref() == Ok(&ext.base), || format!("copy {bit} is not the witness, {}", label()));
            }
            let doubled = p.double(d).expect("valid join");
            report.check(doubled.contains(&ext.hom), || format!("extension outside the doubled set, {}", label()));
            report.check(doubled.is_large(), || format!("doubled set is not large, {}", label()));
        }
        Err(e) => report.fail(format!("extend_witness failed: {e}, {}", label())),
    }
    match p.preserve_largeness(min_join) {
        Ok(d) => {
            report.check(d % 2 == 1 && d >= min_join, || format!("preserved join {d} is not odd and >= N"));
            report.check(p.double(d).is_ok_and(|q| q.is_large()), || format!("double at {d} is not large, {}", label()));
        }
        Err(e) => report.fail(format!("preserve_largeness failed: {e}, {}", label())),
    }
}

fn extension(_: &SuiteConfig, rng: &mut ChaCha8Rng) -> Report {
    let mut report = Report::new();
    for g in graphs_up_to(5).filter(|g| !oracle::is_bipartite(g)) {
        let min_join = rng.gen_range(0..=6);
        let full = HomProfile::all_homs(&ParamPrefix::empty(), &g);
        check_extension(&full, min_join, &mut report);
        let pinned = full.pin(&full.large_witness().expect("non-bipartite")).expect("member");
        check_extension(&pinned, min_join, &mut report);
    }
    let c5 = WitnessedGraph::cycle(5);
    let full = HomProfile::all_homs(&ParamPrefix::empty(), &c5);
    let pinned = full.pin(&full.large_witness().expect("odd cycle")).expect("member");
    let d = pinned.extend_witness(1).map(|e| e.join_length);
    report.check(d == Ok(3), || format!("C5 extension gives d(0) = {d:?}"));
    let d = pinned.preserve_largeness(1);
    report.check(d == Ok(3), || format!("C5 pinned preservation gives d(0) = {d:?}"));
    report
}

fn check_decision(g: &WitnessedGraph, depth: usize, report: &mut Report) {
    let bipartite = matches!(g.bipartite_certificate(), BipartiteCertificate::TwoColoring(_));
    match decide(g, depth, &Schedule::Default) {
        Ok(Dichotomy::Coloring(col)) => {
            report.check(bipartite, || "colouring branch on a non-bipartite graph".into());
            report.check(col.len() == g.vertex_count() && col.is_proper(g) && col.color_count() <= 2, || {
                "colouring branch is not a proper 2-colouring".into()
            });
        }
        Ok(Dichotomy::Tower(t)) => {
            report.check(!bipartite, || "tower branch on a bipartite graph".into());
            let verdict = verify_tower(&t, g);
            report.check(verdict.passed(), || format!("tower fails verification: {:?}", verdict.violations));
            for (n, &c) in t.prefix().values().iter().enumerate().skip(1) {
                report.check(c >= 2 * n as u64 - 1, || format!("c({n}) = {c} is below 2n - 1"));
            }
        }
        Err(e) => report.fail(format!("decide failed: {e}")),
    }
}

fn dichotomy(_: &SuiteConfig, rng: &mut ChaCha8Rng) -> Report {
    let mut report = Report::new();
    for g in graphs_up_to(5) {
        check_decision(&g, 2, &mut report);
        report.check(
            oracle::is_bipartite(&g) == matches!(g.bipartite_certificate(), BipartiteCertificate::TwoColoring(_)),
            || "certificate disagrees with exhaustive colouring".into(),
        );
    }
    for _ in 0..500 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.05..0.5);
        let g = oracle::random_graph(rng, n, p);
        check_decision(&g, 2, &mut report);
    }
    for g in [WitnessedGraph::complete(3), WitnessedGraph::cycle(5), WitnessedGraph::petersen()] {
        check_decision(&g, 6, &mut report);
    }
    report.check(unbounded_schedule_default(0) == 1 && unbounded_schedule_default(3) == 5, || "default schedule".into());
    report
}

fn lc_adjacency(_: &SuiteConfig, rng: &mut ChaCha8Rng) -> Report {
    const TOP: usize = 12;
    let mut report = Report::new();
    for _ in 0..10 {
        let prefix = oracle::random_odd_prefix(rng, TOP, 5);
        let levels: Vec<PathGadget> = (0..=TOP).map(|n| PathGadget::build(&prefix.truncated(n))).collect();
        let project = |v: &LcVertex, n: usize| v.project_level(n, &prefix).expect("valid vertex");
        let brute_adjacent = |a: &LcVertex, b: &LcVertex| {
            (a.m.max(b.m)..=TOP).all(|n| levels[n].adjacent(&project(a, n), &project(b, n)))
        };
        let mut samples = vec![LcVertex::root()];
        // short prefixes and periods make 12 levels decisive for tail equality
        samples.extend((0..100).map(|_| oracle::random_lc_vertex(rng, &prefix, 3, 3, 2)));
        for a in &samples {
            let neighbors = a.neighbors(&prefix).expect("valid vertex");
            let expected_degree = if *a == LcVertex::root() { 1 } else { 2 };
            report.check(neighbors.len() == expected_degree, || format!("{a} has {} neighbours", neighbors.len()));
            let symbolic: BTreeSet<GadgetVertex> = neighbors.iter().map(|v| project(v, TOP)).collect();
            let top = &levels[TOP];
            let pos = top.position(&project(a, TOP)).expect("projection exists");
            let brute: BTreeSet<GadgetVertex> = [pos.checked_sub(1), Some(pos + 1)]
                .into_iter()
                .flatten()
                .filter(|&p| p < top.vertex_count())
                .map(|p| top.vertex_at(p))
                .collect();
            report.check(symbolic == brute, || format!("neighbours of {a} differ from level {TOP}"));

            let b = if rng.gen_bool(0.5) {
                neighbors[rng.gen_range(0..neighbors.len())].clone()
            } else {
                oracle::random_lc_vertex(rng, &prefix, 3, 3, 2)
            };
            let symbolic = a.adjacent(&b, &prefix).expect("valid vertices");
            report.check(symbolic == brute_adjacent(a, &b), || format!("adjacency of {a} and {b} differs from brute force"));
            if symbolic {
                report.check(a.same_component(&b, &prefix).expect("valid"), || format!("{a} ~ {b} in different components"));
            }
        }
    }
    report
}

fn odd_prefixes(values: &[u64], len: usize) -> Vec<ParamPrefix> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|p: Vec<u64>| values.iter().map(move |&v| [p.clone(), vec![v]].concat())).collect();
    }
    out.into_iter().map(|v| ParamPrefix::new(v).expect("positive")).collect()
}

fn equivalence(_: &SuiteConfig, rng: &mut ChaCha8Rng) -> Report {
    let mut report = Report::new();
    let mut prefixes = Vec::new();
    for len in 0..=4 {
        prefixes.extend(odd_prefixes(&[1, 3, 5], len));
    }
    for len in 5..=6 {
        prefixes.extend(odd_prefixes(&[1, 3], len));
    }
    for c in &prefixes {
        match identity_tower(c, c.len()) {
            Ok(t) => {
                let r = verify_equivalence(&t);
                report.check(r.passed(), || format!("identity tower for {c} fails: {:?}", r.violations));
            }
            Err(e) => report.fail(format!("identity tower for {c}: {e}")),
        }
    }
    let c = ParamPrefix::new(vec![3, 5]).expect("valid");
    let d = ParamPrefix::new(vec![1, 3, 5, 7]).expect("valid");
    match plan_equivalence(&c, &d, 2) {
        Ok(t) => {
            let r = verify_equivalence(&t);
            report.check(r.passed(), || format!("planned tower fails: {:?}", r.violations));
        }
        Err(e) => report.fail(format!("planner failed on (3,5) -> (1,3,5,7): {e}")),
    }
    for _ in 0..30 {
        let c_len = rng.gen_range(1..=3);
        let c = oracle::random_odd_prefix(rng, c_len, 7);
        let d_len = rng.gen_range(c_len..=6);
        let d = oracle::random_odd_prefix(rng, d_len, 7);
        // GapInsufficient is an allowed outcome; successes must verify
        if let Ok(t) = plan_equivalence(&c, &d, c_len) {
            let r = verify_equivalence(&t);
            report.check(r.passed(), || format!("planner output for {c} -> {d} fails: {:?}", r.violations));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_have_distinct_ids() {
        let ids: BTreeSet<_> = suites().iter().map(|s| s.id).collect();
        assert_eq!(ids.len(), suites().len());
    }

    #[test]
    fn filter_by_module() {
        let outcomes = run_all(&SuiteConfig::default(), Some("gadget"));
        assert_eq!(outcomes.len(), 2);
        assert!(outcomes.iter().all(|o| o.passed));
    }
}
