//! The `decyc` subcommands.

use crate::dot::export_dot;
use crate::envelope::{
    CertificateDto, DecompositionDto, Envelope, GraphDto, NoneExistsDto, PartitionDto, ResultDto,
};
use crate::experiment::run_experiment;
use crate::formats::{self, GraphFormat};
use crate::{EXIT_BUDGET, EXIT_PRECONDITION};
use clap::{Parser, Subcommand, ValueEnum};
use decyc_core::connectivity::{
    cyclic_connectivity, is_odd_cyclically_k_connected, is_three_connected, ConnectivityError,
};
use decyc_core::decomposition::{canonical_decomposition, SplitOrder};
use decyc_core::decycling::{
    find_coherent_partition, find_partition_with_vertex, find_stable_partition, DecyclingError,
};
use decyc_core::generators::{
    family_f, named, random_cubic, ring_of_diamonds, FamilyBase, Named,
};
use decyc_core::genus::{classify_amply, classify_upper_embeddable, AmplyVerdict, Embeddability};
use decyc_core::graph::CubicGraph;
use decyc_core::set::Vertex;
use decyc_core::{SearchBudget, SearchOutcome};
use serde::Serialize;
use std::fmt;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "decyc", version, about = "Decycling and maximum-genus toolkit for cubic multigraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Edgelist,
    Graph6,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> GraphFormat {
        match f {
            FormatArg::Edgelist => GraphFormat::EdgeList,
            FormatArg::Graph6 => GraphFormat::Graph6,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OutputArg {
    Edgelist,
    Graph6,
    Dot,
    Recipe,
}

#[derive(Subcommand)]
pub enum Command {
    /// Order, Betti number, cyclic connectivity and embeddability class
    Analyze {
        /// Built-in graph name or a file path
        input: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        format: Option<FormatArg>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Deficiency and maximum genus with a certificate
    Genus {
        input: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        format: Option<FormatArg>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Stable (default) or coherent decycling partition
    Partition {
        input: String,
        /// Require a coherent partition (A induces a single tree)
        #[arg(long)]
        coherent: bool,
        /// Force this vertex into the decycling set (needs a cyclically
        /// 4-edge-connected graph)
        #[arg(long)]
        with_vertex: Option<u32>,
        /// Also print a styled DOT rendering
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        format: Option<FormatArg>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Canonical decomposition into cyclically 4-edge-connected factors
    Decompose {
        input: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        format: Option<FormatArg>,
    },
    /// Build named graphs, families and random cubic graphs
    Generate {
        /// k4, q3, k33, petersen, prism, l4, d2, digon8, random, ring,
        /// or family-f
        spec: String,
        /// Order for `random`
        #[arg(long)]
        n: Option<u32>,
        /// Diamond count for `ring`
        #[arg(long)]
        k: Option<u32>,
        /// Base for `family-f`: k4 or l4
        #[arg(long)]
        base: Option<String>,
        /// Comma-separated string lengths for `family-f`
        #[arg(long)]
        lengths: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Reject loops and parallel edges when sampling
        #[arg(long)]
        simple: bool,
        #[arg(long, value_enum, default_value = "edgelist")]
        output: OutputArg,
    },
    /// Re-verify a certificate envelope produced by another subcommand
    Certify { path: PathBuf },
    /// Deterministic random-graph statistics
    Experiment {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        samples: u32,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[arg(long)]
        simple: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
pub struct CommandError {
    pub message: String,
    pub exit: i32,
}

impl fmt::Display for CommandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

fn precondition(message: impl Into<String>) -> CommandError {
    CommandError { message: message.into(), exit: EXIT_PRECONDITION }
}

fn budget_exhausted(message: impl Into<String>) -> CommandError {
    CommandError { message: message.into(), exit: EXIT_BUDGET }
}

fn failure(message: impl Into<String>) -> CommandError {
    CommandError { message: message.into(), exit: 1 }
}

/// `--budget` flag, then the `DECYC_BUDGET` environment variable, then
/// the library default.
fn budget_of(budget: Option<u64>, seed: Option<u64>) -> SearchBudget {
    let default = SearchBudget::default();
    let steps = budget
        .or_else(|| {
            std::env::var("DECYC_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(default.steps);
    SearchBudget { steps, seed: seed.unwrap_or(default.seed) }
}

fn load(input: &str, format: Option<FormatArg>) -> Result<CubicGraph, CommandError> {
    formats::load_cubic(input, format.map(Into::into)).map_err(|e| precondition(e.to_string()))
}

pub fn run(cli: Cli) -> Result<(), CommandError> {
    match cli.command {
        Command::Analyze { input, json, format, budget, seed } => {
            analyze(&input, json, format, budget_of(budget, seed))
        }
        Command::Genus { input, json, format, budget, seed } => {
            genus_cmd(&input, json, format, budget_of(budget, seed))
        }
        Command::Partition { input, coherent, with_vertex, dot, json, format, budget, seed } => {
            partition_cmd(
                &input,
                coherent,
                with_vertex,
                dot,
                json,
                format,
                budget_of(budget, seed),
            )
        }
        Command::Decompose { input, json, format } => decompose_cmd(&input, json, format),
        Command::Generate { spec, n, k, base, lengths, seed, simple, output } => {
            generate_cmd(&spec, n, k, base, lengths, seed, simple, output)
        }
        Command::Certify { path } => certify_cmd(&path),
        Command::Experiment { n, samples, seed, simple, json } => {
            let report = run_experiment(n, samples, seed, simple);
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                println!(
                    "n={} samples={} seed={} connected={} upper-embeddable={} stable={} coherent={} unknown={}",
                    report.n,
                    report.samples,
                    report.seed,
                    report.connected,
                    report.upper_embeddable,
                    report.stable_found,
                    report.coherent_found,
                    report.unknown
                );
            }
            if !report.monotone() {
                return Err(failure("report violated its counter invariants"));
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct AnalysisDto {
    schema: String,
    graph: GraphDto,
    n: u32,
    m: u32,
    beta: u32,
    cyclically_even: bool,
    zeta: Option<u32>,
    zeta_saturated: Option<bool>,
    zeta_capped: bool,
    odd_cyclically_4_connected: Option<bool>,
    embeddability: Envelope,
}

fn embeddability_envelope(
    g: &CubicGraph,
    budget: &SearchBudget,
) -> Result<(String, Envelope), CommandError> {
    let class = classify_upper_embeddable(g, budget);
    let (label, dto) = match &class {
        Embeddability::OneFace(c) => ("one-face", CertificateDto::of_xuong("one-face", c)),
        Embeddability::TwoFace(c) => ("two-face", CertificateDto::of_xuong("two-face", c)),
        Embeddability::NotUpperEmbeddable(w) => {
            ("not-upper-embeddable", CertificateDto::of_witness(w))
        }
        Embeddability::Unknown => {
            return Err(budget_exhausted(
                "embeddability unresolved within the search budget",
            ))
        }
    };
    let env = Envelope::sealed("classify-upper-embeddable", g, ResultDto::Certificate(dto));
    if env.verdict != "pass" {
        return Err(failure(format!("self-check failed: {}", env.verdict)));
    }
    Ok((label.into(), env))
}

fn analyze(
    input: &str,
    json: bool,
    format: Option<FormatArg>,
    budget: SearchBudget,
) -> Result<(), CommandError> {
    let g = load(input, format)?;
    if !g.is_connected() {
        return Err(precondition("analysis needs a connected graph"));
    }
    let beta = g.betti().map_err(|e| precondition(e.to_string()))?;
    let zeta = match cyclic_connectivity(&g) {
        Ok(z) => Some(z),
        Err(ConnectivityError::CapExceeded) => None,
        Err(e) => return Err(precondition(e.to_string())),
    };
    let odd4 = is_odd_cyclically_k_connected(&g, 4).ok().map(|(ok, _)| ok);
    let (label, env) = embeddability_envelope(&g, &budget)?;
    if json {
        let dto = AnalysisDto {
            schema: "decyc.analysis.v1".into(),
            graph: GraphDto::of(&g),
            n: g.vertex_count(),
            m: g.edge_count(),
            beta: beta.value,
            cyclically_even: beta.cyclically_even,
            zeta: zeta.as_ref().map(|z| z.zeta),
            zeta_saturated: zeta.as_ref().map(|z| z.saturated),
            zeta_capped: zeta.is_none(),
            odd_cyclically_4_connected: odd4,
            embeddability: env,
        };
        println!("{}", serde_json::to_string_pretty(&dto).expect("serializable"));
    } else {
        println!("n = {}, m = {}", g.vertex_count(), g.edge_count());
        println!(
            "beta = {} ({})",
            beta.value,
            if beta.cyclically_even { "cyclically even" } else { "cyclically odd" }
        );
        match &zeta {
            Some(z) if z.saturated => println!("zeta = {} (saturated: no cycle-separating cut)", z.zeta),
            Some(z) => println!("zeta = {}", z.zeta),
            None => println!("zeta > enumeration cap"),
        }
        if let Some(flag) = odd4 {
            println!("odd-cyclically 4-connected: {flag}");
        }
        println!("embeddability: {label} (certificate verified)");
    }
    Ok(())
}

fn genus_cmd(
    input: &str,
    json: bool,
    format: Option<FormatArg>,
    budget: SearchBudget,
) -> Result<(), CommandError> {
    let g = load(input, format)?;
    if !g.is_connected() {
        return Err(precondition("genus needs a connected graph"));
    }
    let beta = g.betti().map_err(|e| precondition(e.to_string()))?;
    let (label, env) = embeddability_envelope(&g, &budget)?;
    let xi = match label.as_str() {
        "one-face" => Some(0),
        "two-face" => Some(1),
        _ => None,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&env).expect("serializable"));
    } else {
        match xi {
            Some(xi) => println!(
                "xi = {xi}, gamma_max = {}, beta = {}",
                (beta.value - xi) / 2,
                beta.value
            ),
            None => println!("not upper-embeddable: xi >= 2 (Nebeský witness attached)"),
        }
        println!("certificate verdict: {}", env.verdict);
    }
    Ok(())
}

fn partition_cmd(
    input: &str,
    coherent: bool,
    with_vertex: Option<u32>,
    dot: bool,
    json: bool,
    format: Option<FormatArg>,
    budget: SearchBudget,
) -> Result<(), CommandError> {
    let g = load(input, format)?;
    if !g.is_connected() {
        return Err(precondition("partition search needs a connected graph"));
    }
    let operation = if coherent { "partition --coherent" } else { "partition" };
    let outcome = match with_vertex {
        Some(v) => {
            if v >= g.vertex_count() {
                return Err(precondition(format!("vertex {v} out of range")));
            }
            match find_partition_with_vertex(&g, Vertex(v)) {
                Ok(p) => {
                    if coherent && !p.class.coherent {
                        return Err(failure(
                            "pre-assigned search produced a stable but incoherent partition",
                        ));
                    }
                    SearchOutcome::Found(p)
                }
                Err(DecyclingError::NotC4C) => {
                    return Err(precondition(
                        "--with-vertex needs a cyclically 4-edge-connected graph",
                    ))
                }
                Err(e) => return Err(failure(e.to_string())),
            }
        }
        None if coherent => find_coherent_partition(&g, &budget),
        None => find_stable_partition(&g, &budget),
    };
    match outcome {
        SearchOutcome::Found(p) => {
            let env = Envelope::sealed(operation, &g, ResultDto::Partition(PartitionDto::of(&p)));
            if env.verdict != "pass" {
                return Err(failure(format!("self-check failed: {}", env.verdict)));
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&env).expect("serializable"));
            } else {
                let a: Vec<u32> = p.a.iter().map(|v| v.0).collect();
                let j: Vec<u32> = p.j.iter().map(|v| v.0).collect();
                println!("class = {:?} (stable={}, coherent={})", p.class.kind, p.class.stable, p.class.coherent);
                println!("A = {a:?}");
                println!("J = {j:?}");
                println!("e_J = {}, components(A) = {}", p.class.e_j, p.class.components_a);
                println!("certificate verdict: {}", env.verdict);
            }
            if dot {
                println!("{}", export_dot(&g, Some(&p)));
            }
            Ok(())
        }
        SearchOutcome::NoneExhausted(proof) => {
            let dto = NoneExistsDto {
                schema: "decyc.none-exists.v1".into(),
                object: if coherent { "coherent-partition".into() } else { "stable-partition".into() },
                search_space: proof.space.clone(),
                nodes: proof.nodes,
                complete: proof.complete,
            };
            let env = Envelope::sealed(operation, &g, ResultDto::NoneExists(dto));
            if json {
                println!("{}", serde_json::to_string_pretty(&env).expect("serializable"));
            } else {
                println!(
                    "none exists (proved by complete search: {}; {} nodes)",
                    proof.space, proof.nodes
                );
                println!("certificate verdict: {}", env.verdict);
            }
            Ok(())
        }
        SearchOutcome::Unknown => Err(budget_exhausted(
            "search budget exhausted without an answer; raise --budget or DECYC_BUDGET",
        )),
    }
}

fn decompose_cmd(
    input: &str,
    json: bool,
    format: Option<FormatArg>,
) -> Result<(), CommandError> {
    let g = load(input, format)?;
    if !is_three_connected(&g) {
        return Err(precondition("decomposition needs a 3-connected cubic graph"));
    }
    let tree = canonical_decomposition(&g, SplitOrder::First)
        .map_err(|e| failure(e.to_string()))?;
    let env = Envelope::sealed(
        "decompose",
        &g,
        ResultDto::Decomposition(DecompositionDto::of(&tree)),
    );
    if env.verdict != "pass" {
        return Err(failure(format!("self-check failed: {}", env.verdict)));
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&env).expect("serializable"));
    } else {
        println!("{} factor(s):", tree.factors.len());
        for f in &tree.factors {
            println!(
                "  n={} beta={} code={}",
                f.graph.vertex_count(),
                f.graph.betti().map(|b| b.value).unwrap_or(0),
                f.code.hex()
            );
        }
        println!("{} split(s); certificate verdict: {}", tree.splits.len(), env.verdict);
    }
    Ok(())
}

#[derive(Serialize)]
struct RecipeDto {
    schema: String,
    base: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    simple: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lengths: Option<Vec<u32>>,
}

#[allow(clippy::too_many_arguments)]
fn generate_cmd(
    spec: &str,
    n: Option<u32>,
    k: Option<u32>,
    base: Option<String>,
    lengths: Option<String>,
    seed: Option<u64>,
    simple: bool,
    output: OutputArg,
) -> Result<(), CommandError> {
    let spec_lower = spec.to_lowercase();
    let mut recipe = RecipeDto {
        schema: "decyc.recipe.v1".into(),
        base: spec_lower.clone(),
        n: None,
        k: None,
        seed: None,
        simple: None,
        lengths: None,
    };
    let g = if let Some(which) = Named::from_name(&spec_lower) {
        named(which)
    } else {
        match spec_lower.as_str() {
            "random" => {
                let n = n.ok_or_else(|| precondition("random needs --n"))?;
                let seed = seed.unwrap_or(0);
                recipe.n = Some(n);
                recipe.seed = Some(seed);
                recipe.simple = Some(simple);
                random_cubic(n, seed, simple).map_err(|e| precondition(e.to_string()))?
            }
            "ring" => {
                let k = k.ok_or_else(|| precondition("ring needs --k"))?;
                recipe.k = Some(k);
                ring_of_diamonds(k).map_err(|e| precondition(e.to_string()))?
            }
            "family-f" => {
                let base = match base.as_deref() {
                    Some("k4") | None => FamilyBase::K4,
                    Some("l4") => FamilyBase::L4,
                    Some(other) => {
                        return Err(precondition(format!("unknown family base {other}")))
                    }
                };
                let lengths: Vec<u32> = match lengths {
                    Some(text) => text
                        .split(',')
                        .map(|t| t.trim().parse::<u32>())
                        .collect::<Result<_, _>>()
                        .map_err(|e| precondition(format!("bad --lengths: {e}")))?,
                    None => vec![1; 6],
                };
                recipe.lengths = Some(lengths.clone());
                family_f(base, &lengths).map_err(|e| precondition(e.to_string()))?
            }
            other => return Err(precondition(format!("unknown generator spec '{other}'"))),
        }
    };
    match output {
        OutputArg::Edgelist => print!("{}", formats::write_edge_list(&g)),
        OutputArg::Graph6 => {
            println!("{}", formats::write_graph6(&g).map_err(|e| precondition(e.to_string()))?)
        }
        OutputArg::Dot => print!("{}", export_dot(&g, None)),
        OutputArg::Recipe => {
            println!("{}", serde_json::to_string_pretty(&recipe).expect("serializable"))
        }
    }
    Ok(())
}

fn certify_cmd(path: &PathBuf) -> Result<(), CommandError> {
    let text = std::fs::read_to_string(path).map_err(|e| precondition(e.to_string()))?;
    let env: Envelope =
        serde_json::from_str(&text).map_err(|e| precondition(format!("malformed envelope: {e}")))?;
    match crate::envelope::verify_envelope(&env) {
        Ok(()) => {
            println!("pass: {} on {} vertices", env.operation, env.graph.n);
            Ok(())
        }
        Err(e) => Err(failure(format!("fail: {e}"))),
    }
}

/// Verdict helpers shared with the analyze output; re-exported for the
/// amply/tightly line of `analyze --json` consumers.
pub fn amply_label(g: &CubicGraph, budget: &SearchBudget) -> Option<&'static str> {
    match classify_amply(g, budget, None) {
        Ok(AmplyVerdict::Amply(_)) => Some("amply"),
        Ok(AmplyVerdict::Tightly(_)) => Some("tightly"),
        Ok(AmplyVerdict::Unknown) => Some("unknown"),
        Err(_) => None,
    }
}
