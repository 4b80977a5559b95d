//! Command-line front end for `l0kit`.
//!
//! Every command renders to a string so the same code paths serve the
//! binary and the tests. JSON documents carry `"formatVersion": 1`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use l0kit::dichotomy::{decide, verify_tower, Dichotomy, Schedule};
use l0kit::equiv::{plan_equivalence, verify_equivalence, EquivError};
use l0kit::gadget::{ParamPrefix, PathGadget};
use l0kit::graph::{PhiVerdict, WitnessedGraph};
use l0kit::homset::HomProfile;
use l0kit::lc::{level_quotient, LcVertex};
use l0kit::render;
use l0kit::suite::{run_all, SuiteConfig, DEFAULT_SEED};

pub const FORMAT_VERSION: u64 = 1;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "l0kit", version, about = "Path gadgets, homomorphism sets and the bipartite/tower dichotomy")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Tikz,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a gadget L^c_n and render it.
    Gadget {
        /// Parameter prefix, e.g. `1,3,5` (empty for L_0).
        #[arg(long = "c", allow_hyphen_values = true)]
        prefix: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decide whether odd walks join vertices of a set.
    Phi {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated vertex names; all vertices when omitted.
        #[arg(long)]
        set: Option<String>,
        #[arg(long, default_value_t = 1)]
        k: u64,
    },
    /// Inspect the set of all homomorphisms from a gadget into a graph.
    Homset {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "c", allow_hyphen_values = true, default_value = "")]
        prefix: String,
        /// List up to this many homomorphisms.
        #[arg(long, default_value_t = 0)]
        enumerate: usize,
        /// Also glue a largeness witness with join parameter at least this value.
        #[arg(long)]
        extend: Option<u64>,
    },
    /// Produce a 2-colouring or a homomorphism tower.
    Dichotomy {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// `default` for max(1, 2n - 1), or a comma-separated list.
        #[arg(long, default_value = "default")]
        schedule: String,
    },
    /// Query the limit graph on eventually periodic sequences.
    Lc {
        #[arg(long = "c", allow_hyphen_values = true)]
        prefix: String,
        /// A vertex `m,k,x`, e.g. `0,0,1(0)`.
        #[arg(long)]
        vertex: Option<String>,
        /// A second vertex for adjacency and component queries.
        #[arg(long)]
        other: Option<String>,
        /// Report the level quotient at the prefix length.
        #[arg(long)]
        quotient: bool,
    },
    /// Plan and verify a homomorphism family between two gadget sequences.
    Equiv {
        #[arg(long = "c")]
        source: String,
        #[arg(long = "d")]
        target: String,
        #[arg(long)]
        depth: usize,
    },
    /// Render a graph (optionally 2-coloured) or a level quotient as DOT.
    Render {
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Colour the graph when it is bipartite.
        #[arg(long)]
        color: bool,
        /// Render the level quotient for this prefix instead.
        #[arg(long = "quotient")]
        quotient: Option<String>,
    },
    /// Run the property suites.
    Check {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Add brute-force cross-checks.
        #[arg(long)]
        oracle: bool,
        /// Restrict to one suite id or module name.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn json(code: u8, mut doc: Value) -> Self {
        if let Value::Object(map) = &mut doc {
            map.insert("formatVersion".into(), json!(FORMAT_VERSION));
        }
        let mut stdout = serde_json::to_string_pretty(&doc).expect("values serialise");
        stdout.push('\n');
        Outcome { code, stdout, stderr: String::new() }
    }
}

/// An input problem: reported on stderr with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(&cli.command) {
        Ok(outcome) => outcome,
        Err(InputError(message)) => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {message}") },
    }
}

/// Parses `argv` (including the program name) and runs it.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: e.to_string() },
    }
}

fn dispatch(command: &Command) -> Result<Outcome, InputError> {
    match command {
        Command::Gadget { prefix, format } => cmd_gadget(prefix, *format),
        Command::Phi { graph, set, k } => cmd_phi(&load_graph(graph)?, set.as_deref(), *k),
        Command::Homset { graph, prefix, enumerate, extend } => cmd_homset(&load_graph(graph)?, prefix, *enumerate, *extend),
        Command::Dichotomy { graph, depth, schedule } => cmd_dichotomy(&load_graph(graph)?, *depth, schedule),
        Command::Lc { prefix, vertex, other, quotient } => cmd_lc(prefix, vertex.as_deref(), other.as_deref(), *quotient),
        Command::Equiv { source, target, depth } => cmd_equiv(source, target, *depth),
        Command::Render { graph, color, quotient } => cmd_render(graph.as_ref(), *color, quotient.as_deref()),
        Command::Check { seed, oracle, only } => Ok(cmd_check(&SuiteConfig { seed: *seed, oracle: *oracle }, only.as_deref())),
    }
}

fn load_graph(path: &PathBuf) -> Result<WitnessedGraph, InputError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?
    };
    Ok(WitnessedGraph::parse(&text)?)
}

pub fn cmd_gadget(prefix: &str, format: Format) -> Result<Outcome, InputError> {
    let gadget = PathGadget::build(&prefix.parse::<ParamPrefix>()?);
    Ok(match format {
        Format::Json => Outcome::json(EXIT_OK, json!({ "gadget": render::gadget_json(&gadget) })),
        Format::Dot => Outcome::ok(render::gadget_dot(&gadget)),
        Format::Tikz => Outcome::ok(render::gadget_tikz(&gadget)),
        Format::Text => {
            let labels: Vec<String> = gadget.vertices().iter().map(ToString::to_string).collect();
            Outcome::ok(format!("{}\n", labels.join(" - ")))
        }
    })
}

pub fn cmd_phi(g: &WitnessedGraph, set: Option<&str>, k: u64) -> Result<Outcome, InputError> {
    let set = match set {
        Some(names) => {
            let names: Vec<&str> = names.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            g.vertex_set_by_names(&names)?
        }
        None => g.all_vertices(),
    };
    let verdict = g.phi_bound(&set)?;
    let mut doc = json!({
        "set": set.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>(),
        "phi": verdict,
        "phiHolds": g.phi_holds(&set, k)?,
        "k": k,
    });
    if verdict == PhiVerdict::NoOddWalk {
        let (closure, col) = g.bipartite_superset_coloring(&set)?;
        doc["closure"] = json!(closure.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>());
        doc["coloring"] = Value::Object(g.coloring_json(&col));
    }
    Ok(Outcome::json(EXIT_OK, doc))
}

pub fn cmd_homset(g: &WitnessedGraph, prefix: &str, enumerate: usize, extend: Option<u64>) -> Result<Outcome, InputError> {
    let gadget = Arc::new(PathGadget::build(&prefix.parse::<ParamPrefix>()?));
    let profile = HomProfile::full(gadget.clone(), g);
    let projections: BTreeMap<String, Vec<&str>> = gadget
        .vertices()
        .iter()
        .map(|u| {
            let set = profile.project(u).expect("gadget vertex");
            (u.to_string(), set.iter().map(|&v| g.vertex_name(v)).collect())
        })
        .collect();
    let mut doc = json!({
        "prefix": gadget.prefix(),
        "count": profile.count_exact().to_string(),
        "projections": projections,
        "tiny": profile.tiny_witness().map(|u| u.to_string()),
        "large": profile.is_large(),
        "largeWitness": profile.large_witness().map(|h| h.to_json(&gadget, g)),
    });
    if enumerate > 0 {
        let listed = profile.enumerate(enumerate);
        doc["homs"] = json!(listed.homs.homs().iter().map(|h| h.to_json(&gadget, g)).collect::<Vec<_>>());
    }
    if let Some(min_join) = extend {
        match profile.extend_witness(min_join) {
            Ok(ext) => {
                doc["extension"] = json!({
                    "joinLength": ext.join_length,
                    "hom": ext.hom.to_json(&ext.gadget, g),
                    "preservedJoinLength": profile.preserve_largeness(min_join)?,
                });
            }
            Err(e) => doc["extension"] = json!({ "error": e.to_string() }),
        }
    }
    Ok(Outcome::json(EXIT_OK, doc))
}

pub fn cmd_dichotomy(g: &WitnessedGraph, depth: usize, schedule: &str) -> Result<Outcome, InputError> {
    let schedule: Schedule = schedule.parse().map_err(InputError)?;
    Ok(match decide(g, depth, &schedule)? {
        Dichotomy::Coloring(col) => Outcome::json(EXIT_OK, json!({ "coloring": g.coloring_json(&col) })),
        Dichotomy::Tower(tower) => {
            let report = verify_tower(&tower, g);
            let code = if report.passed() { EXIT_OK } else { EXIT_FAILURE };
            Outcome::json(code, json!({ "tower": tower.to_json(g), "verification": report }))
        }
    })
}

fn parse_vertex(text: &str, prefix: &ParamPrefix) -> Result<LcVertex, InputError> {
    let v: LcVertex = text.parse().map_err(InputError)?;
    v.validate(prefix)?;
    Ok(v)
}

pub fn cmd_lc(prefix: &str, vertex: Option<&str>, other: Option<&str>, quotient: bool) -> Result<Outcome, InputError> {
    let prefix: ParamPrefix = prefix.parse()?;
    let mut doc = json!({ "prefix": prefix });
    if let Some(text) = vertex {
        let v = parse_vertex(text, &prefix)?;
        let neighbors = v.neighbors(&prefix)?;
        doc["vertex"] = json!(v);
        doc["degree"] = json!(neighbors.len());
        doc["neighbors"] = json!(neighbors);
        if v.m <= prefix.len() {
            doc["projection"] = json!(v.project_level(prefix.len(), &prefix)?);
        }
        if let Some(text) = other {
            let w = parse_vertex(text, &prefix)?;
            doc["other"] = json!(w);
            doc["adjacent"] = json!(v.adjacent(&w, &prefix)?);
            doc["sameComponent"] = json!(v.same_component(&w, &prefix)?);
        }
    }
    if quotient {
        let q = level_quotient(&prefix)?;
        doc["quotient"] = json!({
            "classes": q.classes.len(),
            "edges": q.edges.len(),
            "isomorphicToGadget": q.isomorphic,
        });
    }
    Ok(Outcome::json(EXIT_OK, doc))
}

pub fn cmd_equiv(source: &str, target: &str, depth: usize) -> Result<Outcome, InputError> {
    let (c, d): (ParamPrefix, ParamPrefix) = (source.parse()?, target.parse()?);
    match plan_equivalence(&c, &d, depth) {
        Ok(tower) => {
            let report = verify_equivalence(&tower);
            let code = if report.passed() { EXIT_OK } else { EXIT_FAILURE };
            Ok(Outcome::json(code, json!({ "tower": tower, "verification": report })))
        }
        Err(EquivError::GapInsufficient { level }) => {
            Ok(Outcome::json(EXIT_FAILURE, json!({ "gapInsufficient": { "level": level } })))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_render(graph: Option<&PathBuf>, color: bool, quotient: Option<&str>) -> Result<Outcome, InputError> {
    if let Some(prefix) = quotient {
        return Ok(Outcome::ok(render::quotient_dot(&level_quotient(&prefix.parse()?)?)));
    }
    let path = graph.ok_or_else(|| InputError("render needs --graph or --quotient".into()))?;
    let g = load_graph(path)?;
    let coloring = match (color, g.bipartite_certificate()) {
        (true, l0kit::graph::BipartiteCertificate::TwoColoring(col)) => Some(col),
        _ => None,
    };
    Ok(Outcome::ok(render::graph_dot(&g, coloring.as_ref())))
}

pub fn cmd_check(config: &SuiteConfig, only: Option<&str>) -> Outcome {
    let outcomes = run_all(config, only);
    let passed = outcomes.iter().all(|o| o.passed);
    let code = if passed { EXIT_OK } else { EXIT_FAILURE };
    Outcome::json(code, json!({ "seed": config.seed, "oracle": config.oracle, "passed": passed, "suites": outcomes }))
}
