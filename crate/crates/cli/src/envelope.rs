//! Self-verifying certificate envelopes. Every mathematical answer the
//! CLI prints is wrapped in an envelope carrying the input graph, the
//! operation, the result object and a verifier verdict; `certify`
//! re-runs the embedded checker from scratch.

use decyc_core::decycling::{self, DecyclingPartition, PartitionKind};
use decyc_core::genus::{self, NebeskyWitness, XuongCertificate};
use decyc_core::graph::{CubicGraph, Graph};
use decyc_core::set::{Edge, EdgeSet, Vertex, VertexSet};
use decyc_core::{decomposition, SearchBudget};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const ENVELOPE_SCHEMA: &str = "decyc.envelope.v1";

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("malformed envelope: {0}")]
    Malformed(String),
    #[error("graph hash mismatch (claimed {claimed}, computed {computed})")]
    HashMismatch { claimed: String, computed: String },
    #[error("verification failed: {0}")]
    Failed(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphDto {
    pub n: u32,
    pub edges: Vec<(u32, u32)>,
}

impl GraphDto {
    pub fn of(g: &Graph) -> GraphDto {
        GraphDto { n: g.vertex_count(), edges: g.edge_list() }
    }

    pub fn build(&self) -> Result<CubicGraph, VerifyError> {
        CubicGraph::build(self.n, &self.edges)
            .map_err(|e| VerifyError::Malformed(e.to_string()))
    }
}

/// FNV-1a over the normalized edge list; enough to pin an input to its
/// envelope.
pub fn graph_hash(g: &Graph) -> String {
    let mut edges: Vec<(u32, u32)> = g
        .edge_list()
        .into_iter()
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    edges.sort_unstable();
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |x: u32| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(g.vertex_count());
    for (u, v) in edges {
        eat(u);
        eat(v);
    }
    format!("fnv1a:{h:016x}")
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionKindDto {
    TreeIndependent,
    TreeNearIndependent,
    TwoTreesIndependent,
    Other,
}

impl From<PartitionKind> for PartitionKindDto {
    fn from(k: PartitionKind) -> Self {
        match k {
            PartitionKind::TreeIndependent => PartitionKindDto::TreeIndependent,
            PartitionKind::TreeNearIndependent => PartitionKindDto::TreeNearIndependent,
            PartitionKind::TwoTreesIndependent => PartitionKindDto::TwoTreesIndependent,
            PartitionKind::Other => PartitionKindDto::Other,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionDto {
    pub schema: String,
    pub a: Vec<u32>,
    pub j: Vec<u32>,
    pub class: PartitionKindDto,
    pub stable: bool,
    pub coherent: bool,
    pub e_j: u32,
    pub components_a: u32,
}

impl PartitionDto {
    pub fn of(p: &DecyclingPartition) -> PartitionDto {
        PartitionDto {
            schema: "decyc.partition.v1".into(),
            a: p.a.iter().map(|v| v.0).collect(),
            j: p.j.iter().map(|v| v.0).collect(),
            class: p.class.kind.into(),
            stable: p.class.stable,
            coherent: p.class.coherent,
            e_j: p.class.e_j,
            components_a: p.class.components_a,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentDto {
    pub edges: Vec<u32>,
    pub parity: String,
    pub heavy: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessDto {
    pub x: Vec<u32>,
    pub ec: u32,
    pub oc: u32,
}

/// Embeddability certificate: a spanning tree with its cotree analysis,
/// or a Nebeský witness refuting upper embeddability.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateDto {
    pub schema: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree_edges: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentDto>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDto>,
}

impl CertificateDto {
    pub fn of_xuong(kind: &str, cert: &XuongCertificate) -> CertificateDto {
        CertificateDto {
            schema: "decyc.certificate.v1".into(),
            kind: kind.into(),
            tree_edges: Some(cert.tree.iter().map(|e| e.0).collect()),
            components: Some(
                cert.components
                    .iter()
                    .map(|c| ComponentDto {
                        edges: c.edges.iter().map(|e| e.0).collect(),
                        parity: if c.odd { "odd".into() } else { "even".into() },
                        heavy: c.heavy,
                    })
                    .collect(),
            ),
            witness: None,
        }
    }

    pub fn of_witness(w: &NebeskyWitness) -> CertificateDto {
        CertificateDto {
            schema: "decyc.certificate.v1".into(),
            kind: "not-upper-embeddable".into(),
            tree_edges: None,
            components: None,
            witness: Some(WitnessDto {
                x: w.x.iter().map(|e| e.0).collect(),
                ec: w.ec,
                oc: w.oc,
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorDto {
    pub code: String,
    pub n: u32,
    pub beta: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SplitDto {
    /// Endpoint label pairs of the three cut edges.
    pub cut: Vec<(u32, u32)>,
    pub roots: (u32, u32),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionDto {
    pub schema: String,
    pub factors: Vec<FactorDto>,
    pub splits: Vec<SplitDto>,
}

impl DecompositionDto {
    pub fn of(tree: &decomposition::DecompositionTree) -> DecompositionDto {
        DecompositionDto {
            schema: "decyc.decomposition.v1".into(),
            factors: tree
                .factors
                .iter()
                .map(|f| FactorDto {
                    code: f.code.hex(),
                    n: f.graph.vertex_count(),
                    beta: f.graph.betti().map(|b| b.value).unwrap_or(0),
                })
                .collect(),
            splits: tree
                .splits
                .iter()
                .map(|s| SplitDto { cut: s.cut_labels.to_vec(), roots: s.roots })
                .collect(),
        }
    }
}

/// A completed negative search: the object does not exist.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NoneExistsDto {
    pub schema: String,
    /// `stable-partition` or `coherent-partition`.
    pub object: String,
    pub search_space: String,
    pub nodes: u64,
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ResultDto {
    Partition(PartitionDto),
    Certificate(CertificateDto),
    Decomposition(DecompositionDto),
    NoneExists(NoneExistsDto),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: String,
    pub operation: String,
    pub graph: GraphDto,
    pub graph_hash: String,
    pub result: ResultDto,
    pub verdict: String,
}

impl Envelope {
    /// Wraps a result and runs the verifier once so the envelope ships
    /// with a checked verdict.
    pub fn sealed(operation: &str, g: &CubicGraph, result: ResultDto) -> Envelope {
        let mut env = Envelope {
            schema: ENVELOPE_SCHEMA.into(),
            operation: operation.into(),
            graph: GraphDto::of(g),
            graph_hash: graph_hash(g),
            result,
            verdict: "unverified".into(),
        };
        env.verdict = match verify_envelope(&env) {
            Ok(()) => "pass".into(),
            Err(e) => format!("fail: {e}"),
        };
        env
    }
}

fn edge_set(ids: &[u32], m: u32) -> Result<EdgeSet, VerifyError> {
    let mut set = EdgeSet::EMPTY;
    for &e in ids {
        if e >= m {
            return Err(VerifyError::Malformed(format!("edge id {e} out of range")));
        }
        set.insert(Edge(e));
    }
    Ok(set)
}

fn vertex_set(ids: &[u32], n: u32) -> Result<VertexSet, VerifyError> {
    let mut set = VertexSet::EMPTY;
    for &v in ids {
        if v >= n {
            return Err(VerifyError::Malformed(format!("vertex id {v} out of range")));
        }
        set.insert(Vertex(v));
    }
    Ok(set)
}

/// Independent re-check of an envelope: rebuilds the graph, recomputes
/// the claimed structure, and compares.
pub fn verify_envelope(env: &Envelope) -> Result<(), VerifyError> {
    if env.schema != ENVELOPE_SCHEMA {
        return Err(VerifyError::Malformed(format!("unknown schema {}", env.schema)));
    }
    let g = env.graph.build()?;
    let computed = graph_hash(&g);
    if computed != env.graph_hash {
        return Err(VerifyError::HashMismatch {
            claimed: env.graph_hash.clone(),
            computed,
        });
    }
    match &env.result {
        ResultDto::Partition(p) => verify_partition(&g, p),
        ResultDto::Certificate(c) => verify_certificate_dto(&g, c),
        ResultDto::Decomposition(d) => verify_decomposition(&g, d),
        ResultDto::NoneExists(n) => verify_none_exists(&g, n),
    }
}

fn verify_partition(g: &CubicGraph, p: &PartitionDto) -> Result<(), VerifyError> {
    let a = vertex_set(&p.a, g.vertex_count())?;
    let j = vertex_set(&p.j, g.vertex_count())?;
    let class = decycling::classify_partition(g, &a, &j)
        .map_err(|e| VerifyError::Failed(e.to_string()))?;
    let claimed_kind: PartitionKindDto = class.kind.into();
    if claimed_kind != p.class
        || class.stable != p.stable
        || class.coherent != p.coherent
        || class.e_j != p.e_j
        || class.components_a != p.components_a
    {
        return Err(VerifyError::Failed(format!(
            "classification mismatch: computed {:?} e_j={} components_a={}",
            class.kind, class.e_j, class.components_a
        )));
    }
    Ok(())
}

fn verify_certificate_dto(g: &CubicGraph, c: &CertificateDto) -> Result<(), VerifyError> {
    match c.kind.as_str() {
        "one-face" | "two-face" => {
            let ids = c
                .tree_edges
                .as_ref()
                .ok_or_else(|| VerifyError::Malformed("missing tree_edges".into()))?;
            let tree = edge_set(ids, g.edge_count())?;
            let cert = genus::certificate_from_tree(g, &tree);
            genus::validate_certificate(g, &cert)
                .map_err(|e| VerifyError::Failed(e.to_string()))?;
            let want_odd = if c.kind == "one-face" { 0 } else { 1 };
            if cert.odd_count != want_odd {
                return Err(VerifyError::Failed(format!(
                    "odd component count is {}, certificate claims {}",
                    cert.odd_count, c.kind
                )));
            }
            if let Some(comps) = &c.components {
                if comps.len() != cert.components.len() {
                    return Err(VerifyError::Failed("component count mismatch".into()));
                }
                for claimed in comps {
                    let edges = edge_set(&claimed.edges, g.edge_count())?;
                    let found = cert
                        .components
                        .iter()
                        .find(|r| r.edges == edges)
                        .ok_or_else(|| VerifyError::Failed("unknown component".into()))?;
                    let parity = if found.odd { "odd" } else { "even" };
                    if parity != claimed.parity || found.heavy != claimed.heavy {
                        return Err(VerifyError::Failed("component flags mismatch".into()));
                    }
                }
            }
            Ok(())
        }
        "not-upper-embeddable" => {
            let w = c
                .witness
                .as_ref()
                .ok_or_else(|| VerifyError::Malformed("missing witness".into()))?;
            let x = edge_set(&w.x, g.edge_count())?;
            let witness = NebeskyWitness { x, ec: w.ec, oc: w.oc };
            if !genus::validate_nebesky(g, &witness) {
                return Err(VerifyError::Failed(
                    "Nebeský recount does not confirm the witness".into(),
                ));
            }
            Ok(())
        }
        other => Err(VerifyError::Malformed(format!("unknown certificate kind {other}"))),
    }
}

fn verify_decomposition(g: &CubicGraph, d: &DecompositionDto) -> Result<(), VerifyError> {
    let tree = decomposition::canonical_decomposition(g, decomposition::SplitOrder::First)
        .map_err(|e| VerifyError::Failed(e.to_string()))?;
    let mut recomputed: Vec<String> = tree.factors.iter().map(|f| f.code.hex()).collect();
    recomputed.sort();
    let mut claimed: Vec<String> = d.factors.iter().map(|f| f.code.clone()).collect();
    claimed.sort();
    if recomputed != claimed {
        return Err(VerifyError::Failed("factor code multiset mismatch".into()));
    }
    let back = tree
        .recombine()
        .map_err(|e| VerifyError::Failed(e.to_string()))?;
    if !decyc_core::canonical::is_isomorphic(&back, g) {
        return Err(VerifyError::Failed("recombination is not isomorphic".into()));
    }
    Ok(())
}

fn verify_none_exists(g: &CubicGraph, claim: &NoneExistsDto) -> Result<(), VerifyError> {
    if !claim.complete {
        return Err(VerifyError::Failed(
            "incomplete searches cannot certify nonexistence".into(),
        ));
    }
    let budget = SearchBudget::default();
    let outcome = match claim.object.as_str() {
        "stable-partition" => decycling::find_stable_partition(g, &budget),
        "coherent-partition" => decycling::find_coherent_partition(g, &budget),
        other => return Err(VerifyError::Malformed(format!("unknown object {other}"))),
    };
    match outcome {
        decyc_core::SearchOutcome::NoneExhausted(_) => Ok(()),
        decyc_core::SearchOutcome::Found(_) => {
            Err(VerifyError::Failed("object exists after all".into()))
        }
        decyc_core::SearchOutcome::Unknown => Err(VerifyError::Failed(
            "re-verification exhausted its budget".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use decyc_core::generators::{named, Named};

    #[test]
    fn partition_envelope_roundtrip() {
        let g = named(Named::Petersen);
        let p = decycling::find_stable_partition(&g, &SearchBudget::default());
        let p = p.found().unwrap().clone();
        let env = Envelope::sealed("partition", &g, ResultDto::Partition(PartitionDto::of(&p)));
        assert_eq!(env.verdict, "pass");
        let text = serde_json::to_string_pretty(&env).unwrap();
        let back: Envelope = serde_json::from_str(&text).unwrap();
        verify_envelope(&back).unwrap();
    }

    #[test]
    fn tampered_partition_fails() {
        let g = named(Named::Petersen);
        let p = decycling::find_stable_partition(&g, &SearchBudget::default());
        let p = p.found().unwrap().clone();
        let mut dto = PartitionDto::of(&p);
        // Move one J vertex into A.
        let moved = dto.j.pop().unwrap();
        dto.a.push(moved);
        let env = Envelope::sealed("partition", &g, ResultDto::Partition(dto));
        assert!(env.verdict.starts_with("fail"));
    }

    #[test]
    fn witness_envelope() {
        let star =
            CubicGraph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)]).unwrap();
        let w = genus::find_nebesky_witness(&star, genus::WitnessStrategy::ExhaustiveCapped(6))
            .unwrap();
        let env = Envelope::sealed("genus", &star, ResultDto::Certificate(CertificateDto::of_witness(&w)));
        assert_eq!(env.verdict, "pass");

        // Miscounting oc must fail the recount.
        let mut bad = CertificateDto::of_witness(&w);
        if let Some(wd) = bad.witness.as_mut() {
            wd.oc += 1;
        }
        let env = Envelope::sealed("genus", &star, ResultDto::Certificate(bad));
        assert!(env.verdict.starts_with("fail"));
    }
}
