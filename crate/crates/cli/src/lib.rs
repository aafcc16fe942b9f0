//! Command-line front end. Every invocation writes one JSON report to
//! standard output; the exit code carries the verdict.

use std::io::{Read, Write};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cograph::cotree::{self, Recognition};
use cograph::decomp::{
    self, coarseness_scan, coarsen, greedy_partition, layers_partition, solve, vizing_partition,
    SolveOutcome, SolverOptions,
};
use cograph::gadgets::{self, Assignment, GadgetGraph, NaeFormula};
use cograph::symbolic::{self, SymbolicMap};
use cograph::{Decomposition, Graph, Mode};

pub mod exit {
    pub const OK: i32 = 0;
    pub const NEGATIVE: i32 = 1;
    pub const ERROR: i32 = 2;
    pub const TIMEOUT: i32 = 3;
}

#[derive(Parser, Debug)]
#[command(name = "cograph", version, about = "Cograph recognition, decomposition and NAE 3-SAT gadgets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a graph is a cograph (cotree or induced P4).
    Recognize { input: String },
    /// Read a cotree and print its canonical form and graph.
    Cotree {
        input: String,
        /// Complement the cograph by flipping every label.
        #[arg(long)]
        complement: bool,
    },
    /// Symbolic ultrametric tools.
    Ultrametric {
        #[command(subcommand)]
        action: UltrametricAction,
    },
    /// Cograph edge decomposition of a graph.
    Decompose(DecomposeArgs),
    /// Merge classes of a valid decomposition until it is coarsest.
    Coarsen {
        /// Decomposition JSON, or a `decompose` report.
        input: String,
        /// Host graph, when the input is a bare decomposition document.
        #[arg(long)]
        graph: Option<String>,
        /// Only report whether the decomposition is already coarsest.
        #[arg(long)]
        check: bool,
    },
    /// Reduction gadget graphs.
    Gadget {
        #[command(subcommand)]
        kind: GadgetKind,
    },
    /// Translate between NAE assignments and 2-partitions.
    Reduce {
        #[command(subcommand)]
        action: ReduceAction,
    },
    /// The hypercube Q_d.
    Hypercube {
        dimension: u32,
        /// Also emit the partition into Q2-layer classes (d must be even).
        #[arg(long)]
        layers: bool,
    },
    /// List the induced P4s of a graph.
    P4s { input: String },
}

#[derive(Subcommand, Debug)]
enum UltrametricAction {
    /// Check the ultrametric axioms, directly and via the per-symbol graphs.
    Check { input: String },
    /// Build the tree representing a symbolic ultrametric.
    Represent { input: String },
}

#[derive(Subcommand, Debug)]
enum GadgetKind {
    Literal,
    Extended,
    Clause,
    Formula { input: String },
}

#[derive(Subcommand, Debug)]
enum ReduceAction {
    /// Build the formula graph, optionally with the partition of an assignment.
    ToGraph {
        input: String,
        /// Truth values as a string of 0/1 (or F/T), variable 0 first.
        #[arg(long)]
        assignment: Option<String>,
    },
    /// Read the assignment off a 2-partition of the formula graph.
    FromPartition {
        formula: String,
        /// Decomposition JSON, or a report containing one.
        partition: String,
    },
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    input: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Partition)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Strategy::Exact)]
    strategy: Strategy,
    /// Largest class count tried by the exact strategy (default: Δ + 1).
    #[arg(long)]
    k_max: Option<usize>,
    /// Search node budget of the exact strategy.
    #[arg(long, default_value_t = 10_000_000)]
    budget_nodes: u64,
    /// Worker count. Results do not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Partition,
    Cover,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Partition => Mode::Partition,
            ModeArg::Cover => Mode::Cover,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Strategy {
    Vizing,
    Greedy,
    Exact,
}

struct Outcome {
    exit: i32,
    verdict: &'static str,
    payload: Value,
    nodes: Option<u64>,
}

impl Outcome {
    fn new(exit: i32, verdict: &'static str, payload: Value) -> Self {
        Outcome {
            exit,
            verdict,
            payload,
            nodes: None,
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String> {
        if path == "-" {
            if self.stdin_used {
                bail!("standard input can only be read once");
            }
            self.stdin_used = true;
            let mut text = String::new();
            self.stdin.read_to_string(&mut text).context("reading standard input")?;
            Ok(text)
        } else {
            std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. The JSON report goes to `stdout`, a one-line summary to `stderr`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::ERROR } else { exit::OK };
            let rendered = e.render().to_string();
            if code == exit::OK {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
                let report = json!({
                    "command": echo,
                    "verdict": "error",
                    "payload": {"message": rendered.lines().next().unwrap_or_default()},
                    "stats": {},
                });
                let _ = writeln!(stdout, "{report}");
            }
            return code;
        }
    };
    let start = Instant::now();
    let mut io = Io {
        stdin,
        stdin_used: false,
    };
    let outcome = execute(cli.command, &mut io).unwrap_or_else(|e| {
        Outcome::new(exit::ERROR, "error", json!({"message": format!("{e:#}")}))
    });
    let mut stats = json!({"elapsed_ms": start.elapsed().as_secs_f64() * 1000.0});
    if let Some(nodes) = outcome.nodes {
        stats["nodes"] = json!(nodes);
    }
    let report = json!({
        "command": echo,
        "verdict": outcome.verdict,
        "payload": outcome.payload,
        "stats": stats,
    });
    let _ = writeln!(stdout, "{report}");
    match outcome.payload.get("message").and_then(Value::as_str) {
        Some(message) if outcome.exit == exit::ERROR => {
            let _ = writeln!(stderr, "error: {message}");
        }
        _ => {
            let _ = writeln!(stderr, "{}", outcome.verdict);
        }
    }
    outcome.exit
}

fn execute(command: Command, io: &mut Io) -> Result<Outcome> {
    match command {
        Command::Recognize { input } => recognize(&load_graph(&io.read(&input)?)?),
        Command::Cotree { input, complement } => cotree_cmd(&io.read(&input)?, complement),
        Command::Ultrametric { action } => match action {
            UltrametricAction::Check { input } => ultrametric_check(&load_map(&io.read(&input)?)?),
            UltrametricAction::Represent { input } => ultrametric_represent(&load_map(&io.read(&input)?)?),
        },
        Command::Decompose(args) => {
            let g = load_graph(&io.read(&args.input)?)?;
            decompose(&g, &args)
        }
        Command::Coarsen { input, graph, check } => {
            let text = io.read(&input)?;
            let host = graph.map(|path| io.read(&path).and_then(|t| load_graph(&t))).transpose()?;
            coarsen_cmd(load_decomposition(&text, host)?, check)
        }
        Command::Gadget { kind } => {
            let gadget = match kind {
                GadgetKind::Literal => gadgets::literal_graph(),
                GadgetKind::Extended => gadgets::extended_literal_graph(),
                GadgetKind::Clause => gadgets::clause_gadget(),
                GadgetKind::Formula { input } => gadgets::build_formula_graph(&load_formula(&io.read(&input)?)?),
            };
            Ok(Outcome::new(exit::OK, "ok", gadget_payload(&gadget)))
        }
        Command::Reduce { action } => match action {
            ReduceAction::ToGraph { input, assignment } => {
                let f = load_formula(&io.read(&input)?)?;
                to_graph(&f, assignment.as_deref())
            }
            ReduceAction::FromPartition { formula, partition } => {
                let f = load_formula(&io.read(&formula)?)?;
                let host = gadgets::build_formula_graph(&f).graph;
                let d = load_decomposition(&io.read(&partition)?, Some(host))?;
                from_partition(&f, &d)
            }
        },
        Command::Hypercube { dimension, layers } => hypercube(dimension, layers),
        Command::P4s { input } => {
            let g = load_graph(&io.read(&input)?)?;
            let p4s: Vec<[usize; 4]> = g.induced_p4s().iter().map(|w| w.vertices()).collect();
            let verdict = if p4s.is_empty() { "p4_free" } else { "has_p4" };
            Ok(Outcome::new(exit::OK, verdict, json!({"count": p4s.len(), "p4s": p4s})))
        }
    }
}

/// Reads an edge list, or a JSON report carrying `payload.graph`.
fn load_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        let value: Value = serde_json::from_str(text).context("parsing JSON input")?;
        let edges = value
            .pointer("/payload/graph")
            .and_then(Value::as_str)
            .ok_or_else(|| anyhow!("JSON input has no string field payload.graph"))?;
        return Ok(Graph::from_edge_list(edges)?);
    }
    Ok(Graph::from_edge_list(text)?)
}

fn load_map(text: &str) -> Result<SymbolicMap> {
    Ok(SymbolicMap::from_text(text)?)
}

fn load_formula(text: &str) -> Result<NaeFormula> {
    Ok(NaeFormula::from_text(text)?)
}

/// Reads a decomposition document, or a report with `payload.decomposition`
/// (and `payload.graph`, used when no host is given).
fn load_decomposition(text: &str, host: Option<Graph>) -> Result<Decomposition> {
    let value: Value = serde_json::from_str(text).context("parsing decomposition JSON")?;
    let (doc, embedded) = match value.pointer("/payload/decomposition") {
        Some(doc) => (doc.clone(), value.pointer("/payload/graph").and_then(Value::as_str)),
        None => (value.clone(), None),
    };
    let host = match (host, embedded) {
        (Some(h), _) => h,
        (None, Some(edges)) => Graph::from_edge_list(edges)?,
        (None, None) => bail!("no host graph: pass --graph or a report with payload.graph"),
    };
    Ok(Decomposition::from_json_value(host, doc)?)
}

fn graph_json(g: &Graph) -> Value {
    json!({
        "graph": g.to_edge_list(),
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
    })
}

fn recognize(g: &Graph) -> Result<Outcome> {
    Ok(match cotree::recognize(g)? {
        Recognition::Cograph(t) => Outcome::new(exit::OK, "cograph", json!({"cotree": t.to_string()})),
        Recognition::NotCograph(w) => Outcome::new(exit::NEGATIVE, "not_cograph", json!({"witness": w})),
    })
}

fn cotree_cmd(text: &str, complement: bool) -> Result<Outcome> {
    let mut t = cotree::parse_cotree(text.trim())?;
    if complement {
        t = cotree::complement_cotree(&t);
    }
    let mut payload = graph_json(&cotree::cotree_to_graph(&t));
    payload["cotree"] = json!(t.to_string());
    Ok(Outcome::new(exit::OK, "ok", payload))
}

fn ultrametric_check(d: &SymbolicMap) -> Result<Outcome> {
    let direct = symbolic::check_axioms(d);
    let via_graphs = symbolic::check_via_graphs(d);
    if direct.is_ok() != via_graphs.is_ok() {
        bail!("internal inconsistency: axiom check and per-symbol graph check disagree");
    }
    Ok(match (direct, via_graphs) {
        (Ok(()), Ok(())) => Outcome::new(exit::OK, "ultrametric", json!({"violation": null})),
        (Err(v), Err(g)) => Outcome::new(
            exit::NEGATIVE,
            "not_ultrametric",
            json!({"violation": v, "graph_violation": g}),
        ),
        _ => unreachable!("verdicts agree"),
    })
}

fn ultrametric_represent(d: &SymbolicMap) -> Result<Outcome> {
    if let Err(v) = symbolic::check_axioms(d) {
        return Ok(Outcome::new(exit::NEGATIVE, "not_ultrametric", json!({"violation": v})));
    }
    let tree = symbolic::build_representation(d)?;
    Ok(Outcome::new(exit::OK, "ultrametric", json!({"tree": tree.to_string()})))
}

fn decomposition_payload(d: &Decomposition) -> Value {
    let mut payload = graph_json(d.host());
    payload["k"] = json!(d.k());
    payload["decomposition"] = d.to_json_value();
    payload
}

fn decompose(g: &Graph, args: &DecomposeArgs) -> Result<Outcome> {
    if args.jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    let mode = Mode::from(args.mode);
    let heuristic = match args.strategy {
        Strategy::Vizing => Some(vizing_partition(g)),
        Strategy::Greedy => Some(greedy_partition(g)),
        Strategy::Exact => None,
    };
    if let Some(d) = heuristic {
        // A partition is also a valid cover.
        let d = Decomposition::new(g.clone(), d.classes().to_vec(), mode);
        return Ok(Outcome::new(exit::OK, "found", decomposition_payload(&d)));
    }
    let k_max = args.k_max.unwrap_or(g.max_degree() + 1).min(decomp::MAX_CLASSES);
    let report = solve(g, &SolverOptions::new(mode, k_max, args.budget_nodes))?;
    let mut outcome = match report.outcome {
        SolveOutcome::Found(d) => Outcome::new(exit::OK, "found", decomposition_payload(&d)),
        SolveOutcome::Infeasible { k_max } => Outcome::new(exit::NEGATIVE, "infeasible", json!({"k_max": k_max})),
        SolveOutcome::Timeout {
            searching_k,
            best_known_k,
        } => Outcome::new(
            exit::TIMEOUT,
            "timeout",
            json!({"searching_k": searching_k, "best_known_k": best_known_k}),
        ),
    };
    outcome.nodes = Some(report.nodes);
    Ok(outcome)
}

fn coarsen_cmd(d: Decomposition, check: bool) -> Result<Outcome> {
    if check {
        let scan = coarseness_scan(&d)?;
        let (exit_code, verdict) = if scan.is_coarsest() {
            (exit::OK, "coarsest")
        } else {
            (exit::NEGATIVE, "not_coarsest")
        };
        return Ok(Outcome::new(
            exit_code,
            verdict,
            json!({"mergeable": scan.mergeable, "unions_checked": scan.unions_checked}),
        ));
    }
    let coarse = coarsen(&d)?;
    Ok(Outcome::new(exit::OK, "coarsest", decomposition_payload(&coarse)))
}

fn gadget_payload(gadget: &GadgetGraph) -> Value {
    let mut payload = graph_json(&gadget.graph);
    payload["roles"] = gadget.roles_json();
    payload
}

fn parse_assignment(text: &str, f: &NaeFormula) -> Result<Assignment> {
    let values = text
        .trim()
        .chars()
        .map(|c| match c {
            '1' | 'T' | 't' => Ok(true),
            '0' | 'F' | 'f' => Ok(false),
            other => Err(anyhow!("assignment: unexpected character `{other}`")),
        })
        .collect::<Result<Vec<bool>>>()?;
    if values.len() != f.num_vars() {
        bail!("assignment has {} values, formula has {} variables", values.len(), f.num_vars());
    }
    Ok(Assignment::new(values))
}

fn assignment_json(a: &Assignment) -> Value {
    let bits: String = a.values.iter().map(|&v| if v { '1' } else { '0' }).collect();
    json!({"assignment": bits, "values": a.values})
}

fn to_graph(f: &NaeFormula, assignment: Option<&str>) -> Result<Outcome> {
    let gadget = gadgets::build_formula_graph(f);
    let mut payload = gadget_payload(&gadget);
    let Some(text) = assignment else {
        return Ok(Outcome::new(exit::OK, "ok", payload));
    };
    let a = parse_assignment(text, f)?;
    match gadgets::partition_from_assignment(f, &a) {
        Ok(d) => {
            payload["k"] = json!(d.k());
            payload["decomposition"] = d.to_json_value();
            Ok(Outcome::new(exit::OK, "found", payload))
        }
        Err(gadgets::GadgetError::NotNae { clause }) => Ok(Outcome::new(
            exit::NEGATIVE,
            "not_nae",
            json!({"clause": clause}),
        )),
        Err(e) => Err(e.into()),
    }
}

fn from_partition(f: &NaeFormula, d: &Decomposition) -> Result<Outcome> {
    use gadgets::GadgetError as E;
    match gadgets::assignment_from_partition(f, d) {
        Ok(a) => Ok(Outcome::new(exit::OK, "nae_satisfied", assignment_json(&a))),
        Err(e @ (E::Invalid(_) | E::TriangleSplit { .. } | E::NotNae { .. } | E::NotTwoClasses { .. })) => Ok(
            Outcome::new(exit::NEGATIVE, "extraction_failed", json!({"reason": e.to_string()})),
        ),
        Err(e) => Err(e.into()),
    }
}

fn hypercube(dimension: u32, layers: bool) -> Result<Outcome> {
    let max = cograph::graph::MAX_VERTICES.trailing_zeros();
    if dimension > max {
        bail!("dimension {dimension} is too large (at most {max})");
    }
    if !layers {
        return Ok(Outcome::new(exit::OK, "ok", graph_json(&Graph::hypercube(dimension))));
    }
    if dimension == 0 || dimension % 2 == 1 {
        bail!("--layers needs a positive even dimension, got {dimension}");
    }
    let d = layers_partition(dimension / 2);
    Ok(Outcome::new(exit::OK, "ok", decomposition_payload(&d)))
}
