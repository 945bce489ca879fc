//! Command-line front door: every library operation as a subcommand over
//! the graph/formula JSON and text formats.
//!
//! Exit codes: 0 ok, 1 negative verdict (class-check, decide, ef), 2 usage
//! error, 3 capacity error, 4 internal inconsistency. The payload is a
//! single JSON document on stdout; diagnostics go to stderr. Output is
//! deterministic for fixed inputs; the env var `GFL_CAPACITY` overrides
//! the size guards of the guarded subcommands.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gfl_core::builder::{
    build_approximant, build_approximant_with_cap, decide_with_ceiling, free_join, generic_chain,
    pseudofinite_chain, BuilderError,
};
use gfl_core::capacity::{
    DEFAULT_DECIDE_RANK, DEFAULT_GAME_CAPACITY, DEFAULT_SUBDIVISION_CAPACITY,
};
use gfl_core::formula::build::{build_diagram, build_diagram_over, build_gamma_star};
use gfl_core::formula::{eval_formula, parse_formula, Formula};
use gfl_core::game::{
    distance_ef_game_with_policy, ef_game_capped, ef_game_with_transcript, k_similar_with_policy,
    rs_value, RootedTree, StartPolicy, Winner,
};
use gfl_core::graph::{
    class_violation, contains_subdivided_clique_capped, in_class, predimension,
};
use gfl_core::independence::{component_over, d_independent, nonforking_over, AclOracle};
use gfl_core::strong::{classify_extension, closure_star, dimension, unique_path_to, weak_closure};
use gfl_core::{CapacityError, ClassIndex, FiniteGraph, VertexId, VertexSet};

#[derive(Parser)]
#[command(name = "gfl", version, about = "Forest classes, closures, games, and decisions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphSet {
    /// Path to a graph JSON file ({"vertices": [...], "edges": [[a,b], ...]}).
    #[arg(short = 'g', long = "graph")]
    graph: PathBuf,
    /// Comma-separated vertex ids; empty for the empty set.
    #[arg(short = 'S', long = "set", default_value = "")]
    set: String,
}

#[derive(Subcommand)]
enum Command {
    /// Predimension of a vertex set: size minus internal edge count.
    Delta(GraphSet),
    /// Dimension of a vertex set: components its closure meets.
    Dim(GraphSet),
    /// Class membership; exit 1 with a witness when the graph is outside.
    ClassCheck {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        /// Class index: a natural number or "omega".
        #[arg(long)]
        alpha: ClassIndex,
    },
    /// Closure of a vertex set, with its minimal-pair chain.
    Closure(GraphSet),
    /// Weak closure of a vertex set.
    WeakClosure(GraphSet),
    /// Classify the extension from a vertex set to the whole graph.
    ClassifyExt(GraphSet),
    /// The unique path from a vertex to a weakly closed base set.
    UniquePath {
        #[command(flatten)]
        at: GraphSet,
        /// The vertex the path starts from.
        #[arg(short = 'v', long)]
        vertex: String,
    },
    /// The component of a vertex over a base set.
    ComponentOver {
        #[command(flatten)]
        at: GraphSet,
        /// The vertex whose component is computed.
        #[arg(short = 'v', long)]
        vertex: String,
    },
    /// d-independence of two vertex sets over a base, clause by clause.
    DIndep {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        /// Left side (comma-separated).
        #[arg(short = 'B', long)]
        left: String,
        /// Base (comma-separated; may be empty).
        #[arg(short = 'C', long, default_value = "")]
        base: String,
        /// Right side (comma-separated).
        #[arg(short = 'A', long)]
        right: String,
    },
    /// Free join of two graphs over a shared vertex set.
    FreeJoin {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        /// Shared vertex ids (comma-separated; empty for disjoint union).
        #[arg(short = 'S', long = "set", default_value = "")]
        set: String,
    },
    /// Nonforking of a tuple's type over a base inside a superset.
    Nonforking {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        /// The tuple (comma-separated).
        #[arg(long)]
        tuple: String,
        /// The base set the type must not fork over.
        #[arg(short = 'S', long = "set", default_value = "")]
        set: String,
        /// The superset the type is over.
        #[arg(short = 'B', long)]
        superset: String,
        /// Algebraic-closure table: JSON object mapping comma-joined vertex
        /// lists to vertex arrays. Defaults to the identity oracle.
        #[arg(long)]
        acl: Option<PathBuf>,
    },
    /// The closedness formula for m designated vertices.
    GammaStar {
        #[arg(short = 'm')]
        m: usize,
    },
    /// Diagram of a graph, optionally relative to a base order.
    Diag {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        /// Vertex order (comma-separated; defaults to all vertices sorted).
        #[arg(long)]
        order: Option<String>,
        /// Base order; when set, only literals touching the rest are emitted.
        #[arg(long, default_value = "")]
        base: String,
    },
    /// Evaluate a formula on a graph under an assignment.
    Eval {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        /// Formula text, or @path to read it from a file.
        #[arg(short = 'f', long)]
        formula: String,
        /// Assignment "x1=a,x2=b" for the free variables.
        #[arg(long, default_value = "")]
        assign: String,
    },
    /// Decide membership of a sentence in the generic theory of index n.
    Decide {
        #[arg(short = 'n')]
        n: u32,
        /// Sentence text, or @path to read it from a file.
        #[arg(short = 'f', long)]
        formula: String,
        /// Maximum admissible quantifier rank.
        #[arg(long, default_value_t = DEFAULT_DECIDE_RANK)]
        rank_ceiling: usize,
    },
    /// The k-round back-and-forth game; exit 0 iff Duplicator wins.
    Ef {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        #[arg(short = 'k')]
        k: usize,
        /// Matched start pairs "a=b,c=d" (left=right).
        #[arg(long)]
        start: Option<String>,
        /// Also emit an optimal-play transcript.
        #[arg(long)]
        transcript: bool,
    },
    /// The k-round distance game from a matched start pair.
    DistanceEf {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        /// Start vertex on the left.
        #[arg(short = 'a')]
        a: String,
        /// Start vertex on the right.
        #[arg(short = 'b')]
        b: String,
        #[arg(short = 'k')]
        k: usize,
        /// Play all k rounds after the initial selection instead of letting
        /// it consume the first round.
        #[arg(long)]
        free_start: bool,
    },
    /// k-similarity of two r-neighbourhoods.
    KSimilar {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        #[arg(short = 'a')]
        a: String,
        #[arg(short = 'b')]
        b: String,
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'r')]
        r: u64,
        #[arg(long)]
        free_start: bool,
    },
    /// The (r,s)-value of a tree rooted at a vertex.
    RsValue {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        #[arg(long)]
        root: String,
        #[arg(short = 'r')]
        r: u32,
        #[arg(short = 's')]
        s: u32,
    },
    /// Build a finite initial segment of the generic chain.
    Chain {
        #[arg(long)]
        alpha: ClassIndex,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        size_bound: usize,
        /// Write the obligation ledger to this file.
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// The i-th pseudofinite stage: a disjoint union of class members.
    Pseudofinite {
        #[arg(long)]
        alpha: ClassIndex,
        #[arg(short = 'i')]
        i: usize,
        #[arg(long)]
        size_bound: usize,
    },
    /// Build the rank-k approximant of the theory of index n.
    Approximant {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'k')]
        k: usize,
        /// Override the tree-size cap.
        #[arg(long)]
        size_cap: Option<usize>,
        /// Write parameters and representatives to this file.
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// Search for an r-subdivided m-clique.
    SubdivClique {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'r')]
        r: usize,
    },
}

/// A failed command: diagnostic plus process exit code.
struct Failure {
    code: u8,
    message: String,
}

/// Maps an error to an exit code by walking its source chain: capacity
/// errors are 3, everything else is a usage error.
fn code_for(e: &(dyn std::error::Error + 'static)) -> u8 {
    let mut cur: Option<&(dyn std::error::Error + 'static)> = Some(e);
    while let Some(err) = cur {
        if err.downcast_ref::<CapacityError>().is_some() {
            return 3;
        }
        cur = err.source();
    }
    2
}

fn fail(e: impl std::error::Error + 'static) -> Failure {
    Failure {
        code: code_for(&e),
        message: e.to_string(),
    }
}

fn fail_builder(e: BuilderError) -> Failure {
    match &e {
        BuilderError::CrossValidation { .. } | BuilderError::Internal(_) => Failure {
            code: 4,
            message: e.to_string(),
        },
        _ => fail(e),
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn load_graph(path: &Path) -> Result<FiniteGraph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    FiniteGraph::from_json(&text).map_err(fail)
}

fn load_formula(arg: &str) -> Result<Formula, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?
        }
        None => arg.to_string(),
    };
    parse_formula(text.trim()).map_err(fail)
}

fn parse_list(s: &str) -> Vec<VertexId> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(VertexId::new)
        .collect()
}

fn parse_set(s: &str) -> VertexSet {
    parse_list(s).into_iter().collect()
}

fn parse_pairs(s: &str) -> Result<Vec<(VertexId, VertexId)>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.split_once('=')
                .map(|(a, b)| (VertexId::new(a.trim()), VertexId::new(b.trim())))
                .ok_or_else(|| usage(format!("expected left=right, got {t:?}")))
        })
        .collect()
}

fn parse_assignment(s: &str) -> Result<BTreeMap<String, VertexId>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.split_once('=')
                .map(|(x, v)| (x.trim().to_string(), VertexId::new(v.trim())))
                .ok_or_else(|| usage(format!("expected var=vertex, got {t:?}")))
        })
        .collect()
}

/// The env-var capacity override, if set and well-formed.
fn capacity_override(default: usize) -> Result<usize, Failure> {
    match std::env::var("GFL_CAPACITY") {
        Ok(v) => v
            .parse()
            .map_err(|_| usage(format!("GFL_CAPACITY must be a number, got {v:?}"))),
        Err(_) => Ok(default),
    }
}

fn winner_name(w: Winner) -> &'static str {
    match w {
        Winner::Duplicator => "duplicator",
        Winner::Spoiler => "spoiler",
    }
}

fn write_side_file(path: &Path, value: &Value) -> Result<(), Failure> {
    fs::write(path, format!("{value}\n"))
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

/// Runs one subcommand, returning the serialized payload and exit code.
fn run(command: Command) -> Result<(String, u8), Failure> {
    let out = |v: Value, code: u8| Ok((v.to_string(), code));
    match command {
        Command::Delta(args) => {
            let g = load_graph(&args.graph)?;
            let d = predimension(&g, &parse_set(&args.set)).map_err(fail)?;
            out(json!({ "delta": d }), 0)
        }
        Command::Dim(args) => {
            let g = load_graph(&args.graph)?;
            let d = dimension(&g, &parse_set(&args.set)).map_err(fail)?;
            out(json!({ "dim": d }), 0)
        }
        Command::ClassCheck { graph, alpha } => {
            let g = load_graph(&graph)?;
            match class_violation(&g, alpha) {
                None => out(json!({ "in_class": true }), 0),
                Some(witness) => out(json!({ "in_class": false, "witness": witness }), 1),
            }
        }
        Command::Closure(args) => {
            let g = load_graph(&args.graph)?;
            let result = closure_star(&g, &parse_set(&args.set)).map_err(fail)?;
            out(serde_json::to_value(&result).unwrap(), 0)
        }
        Command::WeakClosure(args) => {
            let g = load_graph(&args.graph)?;
            let closure = weak_closure(&g, &parse_set(&args.set)).map_err(fail)?;
            out(json!({ "closure": closure }), 0)
        }
        Command::ClassifyExt(args) => {
            let g = load_graph(&args.graph)?;
            let report = classify_extension(&g, &parse_set(&args.set)).map_err(fail)?;
            out(serde_json::to_value(&report).unwrap(), 0)
        }
        Command::UniquePath { at, vertex } => {
            let g = load_graph(&at.graph)?;
            let path =
                unique_path_to(&g, &parse_set(&at.set), &VertexId::new(vertex), true)
                    .map_err(fail)?;
            out(json!({ "path": path }), 0)
        }
        Command::ComponentOver { at, vertex } => {
            let g = load_graph(&at.graph)?;
            let comp = component_over(&g, &VertexId::new(vertex), &parse_set(&at.set))
                .map_err(fail)?;
            out(json!({ "component": comp }), 0)
        }
        Command::DIndep {
            graph,
            left,
            base,
            right,
        } => {
            let g = load_graph(&graph)?;
            let report = d_independent(
                &g,
                &parse_set(&left),
                &parse_set(&base),
                &parse_set(&right),
            )
            .map_err(fail)?;
            out(serde_json::to_value(&report).unwrap(), 0)
        }
        Command::FreeJoin { g1, g2, set } => {
            let m1 = load_graph(&g1)?;
            let m2 = load_graph(&g2)?;
            let joined = free_join(&m1, &parse_set(&set), &m2).map_err(fail_builder)?;
            Ok((joined.to_json(), 0))
        }
        Command::Nonforking {
            graph,
            tuple,
            set,
            superset,
            acl,
        } => {
            let g = load_graph(&graph)?;
            let oracle = match acl {
                None => AclOracle::identity(&g),
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                    let table: BTreeMap<String, Vec<String>> = serde_json::from_str(&text)
                        .map_err(|e| usage(format!("bad acl table: {e}")))?;
                    let rows = table
                        .into_iter()
                        .map(|(k, v)| {
                            (
                                parse_set(&k),
                                v.into_iter().map(VertexId::new).collect::<VertexSet>(),
                            )
                        })
                        .collect();
                    AclOracle::from_table(&g, rows).map_err(fail)?
                }
            };
            let verdict = nonforking_over(
                &g,
                &parse_list(&tuple),
                &parse_set(&set),
                &parse_set(&superset),
                &oracle,
            )
            .map_err(fail)?;
            out(json!({ "nonforking": verdict }), 0)
        }
        Command::GammaStar { m } => {
            let formula = build_gamma_star(m).map_err(fail)?;
            out(json!({ "formula": formula.to_string() }), 0)
        }
        Command::Diag { graph, order, base } => {
            let g = load_graph(&graph)?;
            let base = parse_list(&base);
            let order = match order {
                Some(o) => parse_list(&o),
                None => g
                    .vertices()
                    .iter()
                    .filter(|v| !base.contains(v))
                    .cloned()
                    .collect(),
            };
            let formula = if base.is_empty() {
                build_diagram(&g, &order).map_err(fail)?
            } else {
                build_diagram_over(&g, &base, &order).map_err(fail)?
            };
            out(json!({ "formula": formula.to_string() }), 0)
        }
        Command::Eval {
            graph,
            formula,
            assign,
        } => {
            let g = load_graph(&graph)?;
            let f = load_formula(&formula)?;
            let env = parse_assignment(&assign)?;
            let value = eval_formula(&g, &f, &env).map_err(fail)?;
            out(json!({ "value": value }), 0)
        }
        Command::Decide {
            n,
            formula,
            rank_ceiling,
        } => {
            let f = load_formula(&formula)?;
            let decision = decide_with_ceiling(&f, n, rank_ceiling).map_err(fail_builder)?;
            let code = u8::from(!decision.in_theory);
            out(serde_json::to_value(&decision).unwrap(), code)
        }
        Command::Ef {
            g1,
            g2,
            k,
            start,
            transcript,
        } => {
            let a = load_graph(&g1)?;
            let b = load_graph(&g2)?;
            let pairs = start.as_deref().map(parse_pairs).transpose()?;
            let (winner, moves) = if transcript {
                let (w, t) = ef_game_with_transcript(&a, &b, k, pairs.as_deref()).map_err(fail)?;
                (w, Some(t))
            } else {
                let cap = capacity_override(DEFAULT_GAME_CAPACITY)?;
                (
                    ef_game_capped(&a, &b, k, pairs.as_deref(), cap).map_err(fail)?,
                    None,
                )
            };
            let mut payload = json!({ "winner": winner_name(winner) });
            if let Some(moves) = moves {
                payload["transcript"] = serde_json::to_value(&moves).unwrap();
            }
            out(payload, u8::from(winner == Winner::Spoiler))
        }
        Command::DistanceEf {
            g1,
            g2,
            a,
            b,
            k,
            free_start,
        } => {
            let left = load_graph(&g1)?;
            let right = load_graph(&g2)?;
            let policy = if free_start {
                StartPolicy::FreeStart
            } else {
                StartPolicy::ConsumesRound
            };
            let winner = distance_ef_game_with_policy(
                &left,
                &VertexId::new(a),
                &right,
                &VertexId::new(b),
                k,
                policy,
            )
            .map_err(fail)?;
            out(json!({ "winner": winner_name(winner) }), 0)
        }
        Command::KSimilar {
            g1,
            g2,
            a,
            b,
            k,
            r,
            free_start,
        } => {
            let left = load_graph(&g1)?;
            let right = load_graph(&g2)?;
            let policy = if free_start {
                StartPolicy::FreeStart
            } else {
                StartPolicy::ConsumesRound
            };
            let similar = k_similar_with_policy(
                &left,
                &VertexId::new(a),
                &right,
                &VertexId::new(b),
                k,
                r,
                policy,
            )
            .map_err(fail)?;
            out(json!({ "similar": similar }), 0)
        }
        Command::RsValue { graph, root, r, s } => {
            let g = load_graph(&graph)?;
            let tree = RootedTree::new(g, VertexId::new(root)).map_err(fail)?;
            let value = rs_value(&tree, r, s).map_err(fail)?;
            out(
                json!({
                    "value": serde_json::to_value(&value).unwrap(),
                    "display": value.to_string(),
                }),
                0,
            )
        }
        Command::Chain {
            alpha,
            steps,
            size_bound,
            provenance,
        } => {
            let chain = generic_chain(alpha, steps, size_bound).map_err(fail_builder)?;
            if let Some(path) = provenance {
                let side = json!({
                    "alpha": alpha.to_string(),
                    "steps": steps,
                    "size_bound": size_bound,
                    "members": chain.members.len(),
                    "ledger": serde_json::to_value(&chain.ledger).unwrap(),
                });
                write_side_file(&path, &side)?;
            }
            Ok((chain.current().to_json(), 0))
        }
        Command::Pseudofinite {
            alpha,
            i,
            size_bound,
        } => {
            let stage = pseudofinite_chain(alpha, i, size_bound).map_err(fail_builder)?;
            Ok((stage.to_json(), 0))
        }
        Command::Approximant {
            n,
            k,
            size_cap,
            provenance,
        } => {
            let approx = match size_cap {
                Some(cap) => build_approximant_with_cap(n, k, cap).map_err(fail_builder)?,
                None => build_approximant(n, k).map_err(fail_builder)?,
            };
            debug_assert!(in_class(&approx.graph, ClassIndex::Finite(n)));
            if let Some(path) = provenance {
                let side = json!({
                    "n": approx.n,
                    "k": approx.k,
                    "provenance": serde_json::to_value(&approx.provenance).unwrap(),
                });
                write_side_file(&path, &side)?;
            }
            Ok((approx.graph.to_json(), 0))
        }
        Command::SubdivClique { graph, m, r } => {
            let g = load_graph(&graph)?;
            let cap = capacity_override(DEFAULT_SUBDIVISION_CAPACITY)?;
            let contains = contains_subdivided_clique_capped(&g, m, r, cap).map_err(fail)?;
            out(json!({ "contains": contains }), 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((payload, code)) => {
            println!("{payload}");
            ExitCode::from(code)
        }
        Err(Failure { code, message }) => {
            eprintln!("gfl: {message}");
            ExitCode::from(code)
        }
    }
}
