//! Maximum-genus machinery: Xuong trees and deficiency, Kotzig pairings,
//! acyclic-cotree normalization, Nebeský witnesses, the upper-embeddable
//! / amply / tightly classification, odd edges and maximum nonseparating
//! independent sets.
//!
//! Exact answers come from complete spanning-tree enumeration on small
//! graphs; beyond the cap a seeded edge-swap search produces verifiable
//! certificates or an honest `Unknown`.

use crate::graph::{CubicGraph, Graph, GraphError};
use crate::rng::SplitMix64;
use crate::set::{Edge, EdgeSet, Vertex, VertexSet};
use crate::{ExhaustionProof, SearchBudget};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenusError {
    Graph(GraphError),
    /// Acyclic-cotree normalization needs a loopless graph.
    HasLoop,
    /// Normalization needs at least 4 vertices.
    TooSmall,
    /// The amply/tightly classification applies to odd Betti number only.
    WrongParity,
    /// A supplied certificate failed validation.
    BadCertificate(&'static str),
    /// Kotzig pairing needs a connected edge set.
    Disconnected,
    /// The graph is too large for the exact routine.
    TooLarge,
}

impl From<GraphError> for GenusError {
    fn from(e: GraphError) -> Self {
        GenusError::Graph(e)
    }
}

impl fmt::Display for GenusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusError::Graph(e) => write!(f, "{e}"),
            GenusError::HasLoop => write!(f, "graph has a loop"),
            GenusError::TooSmall => write!(f, "graph has fewer than 4 vertices"),
            GenusError::WrongParity => write!(f, "Betti number has the wrong parity"),
            GenusError::BadCertificate(why) => write!(f, "invalid certificate: {why}"),
            GenusError::Disconnected => write!(f, "edge set is not connected"),
            GenusError::TooLarge => write!(f, "graph too large for exact enumeration"),
        }
    }
}

/// One component of a cotree, with the flags the partition constructions
/// branch on. In a cubic graph every cotree component is a path or a
/// cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotreeComponent {
    pub edges: EdgeSet,
    pub edge_count: u32,
    pub odd: bool,
    pub is_cycle: bool,
    /// At least three edges and the same edge-count parity as the Betti
    /// number of the host graph.
    pub heavy: bool,
}

/// A spanning tree together with its cotree-component analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XuongCertificate {
    pub tree: EdgeSet,
    pub components: Vec<CotreeComponent>,
    pub odd_count: u32,
}

impl XuongCertificate {
    pub fn odd_component(&self) -> Option<&CotreeComponent> {
        self.components.iter().find(|c| c.odd)
    }

    /// A light certificate has exactly one odd component, a single edge.
    pub fn is_light(&self) -> bool {
        self.odd_count == 1 && self.odd_component().map_or(false, |c| c.edge_count == 1)
    }

    pub fn has_heavy_odd_component(&self) -> bool {
        self.components.iter().any(|c| c.odd && c.heavy)
    }

    pub fn cotree_acyclic(&self) -> bool {
        self.components.iter().all(|c| !c.is_cycle)
    }
}

/// Allocation-free cotree analysis for the exhaustive tree scans:
/// union-find over cotree edges with per-root edge counters.
pub(crate) struct CotreeScan {
    parent: Vec<u32>,
    edge_count: Vec<u32>,
    single_edge: Vec<Edge>,
}

pub(crate) struct CotreeStats {
    pub odd_count: u32,
    pub has_heavy_odd: bool,
    /// Set when exactly one component is odd and it is a single edge.
    pub light_singleton: Option<Edge>,
}

impl CotreeScan {
    pub fn new(n: usize) -> CotreeScan {
        CotreeScan {
            parent: vec![0; n],
            edge_count: vec![0; n],
            single_edge: vec![Edge(0); n],
        }
    }

    fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    pub fn stats(&mut self, g: &Graph, tree: &EdgeSet, beta_parity: u32) -> CotreeStats {
        let n = g.vertex_count();
        for v in 0..n {
            self.parent[v as usize] = v;
            self.edge_count[v as usize] = 0;
        }
        for e in g.edges() {
            if tree.contains(e) {
                continue;
            }
            let (u, v) = g.endpoints(e);
            let (ru, rv) = (self.find(u.0), self.find(v.0));
            let merged = if ru == rv {
                ru
            } else {
                // Union by the smaller root id; path lengths stay tiny
                // at these sizes.
                let (hi, lo) = if ru < rv { (rv, ru) } else { (ru, rv) };
                self.parent[hi as usize] = lo;
                self.edge_count[lo as usize] += self.edge_count[hi as usize];
                lo
            };
            self.edge_count[merged as usize] += 1;
            if self.edge_count[merged as usize] == 1 {
                self.single_edge[merged as usize] = e;
            }
        }
        let mut odd_count = 0;
        let mut has_heavy_odd = false;
        let mut last_odd_singleton = None;
        for v in 0..n {
            if self.parent[v as usize] != v {
                continue;
            }
            let count = self.edge_count[v as usize];
            if count % 2 == 1 {
                odd_count += 1;
                if count >= 3 && count % 2 == beta_parity {
                    has_heavy_odd = true;
                }
                last_odd_singleton = (count == 1).then(|| self.single_edge[v as usize]);
            }
        }
        let light_singleton = if odd_count == 1 { last_odd_singleton } else { None };
        CotreeStats { odd_count, has_heavy_odd, light_singleton }
    }
}

/// Computes the certificate of a given spanning tree.
pub fn certificate_from_tree(g: &Graph, tree: &EdgeSet) -> XuongCertificate {
    let beta_parity = (g.edge_count() + 1 - g.vertex_count()) % 2;
    let cotree = g.all_edges().difference(tree);
    let mut components = Vec::new();
    let mut odd_count = 0;
    for edges in g.edge_subset_components(&cotree) {
        let edge_count = edges.len();
        let mut vertices = VertexSet::EMPTY;
        for e in edges.iter() {
            let (u, v) = g.endpoints(e);
            vertices.insert(u);
            vertices.insert(v);
        }
        let odd = edge_count % 2 == 1;
        if odd {
            odd_count += 1;
        }
        components.push(CotreeComponent {
            edges,
            edge_count,
            odd,
            is_cycle: edge_count == vertices.len(),
            heavy: edge_count >= 3 && edge_count % 2 == beta_parity,
        });
    }
    XuongCertificate { tree: *tree, components, odd_count }
}

/// Independent re-check of a certificate against its graph.
pub fn validate_certificate(g: &Graph, cert: &XuongCertificate) -> Result<(), GenusError> {
    if cert.tree.len() + 1 != g.vertex_count() {
        return Err(GenusError::BadCertificate("tree has wrong size"));
    }
    if !g.is_acyclic(&cert.tree) {
        return Err(GenusError::BadCertificate("tree has a cycle"));
    }
    let report = g.subgraph_report(&g.all_vertices(), &cert.tree);
    if report.components != 1 {
        return Err(GenusError::BadCertificate("tree is not spanning"));
    }
    let recomputed = certificate_from_tree(g, &cert.tree);
    if recomputed.odd_count != cert.odd_count || recomputed.components.len() != cert.components.len()
    {
        return Err(GenusError::BadCertificate("component analysis mismatch"));
    }
    for c in &cert.components {
        let found = recomputed.components.iter().find(|r| r.edges == c.edges);
        match found {
            Some(r) if r == c => {}
            _ => return Err(GenusError::BadCertificate("component flags mismatch")),
        }
    }
    Ok(())
}

/// Exact deficiency by complete spanning-tree enumeration.
#[derive(Clone, Debug)]
pub struct DeficiencyReport {
    pub xi: u32,
    /// Maximum orientable genus `(beta - xi) / 2`.
    pub gamma_max: u32,
    pub certificate: XuongCertificate,
    pub trees_enumerated: u64,
}

pub fn deficiency_exact(g: &CubicGraph) -> Result<DeficiencyReport, GenusError> {
    let report = deficiency_exact_general(g, CubicGraph::SPANNING_TREE_CAP)?;
    Ok(report)
}

/// Deficiency of an arbitrary connected graph, used for the subcubic
/// remainders of removable-pair checks.
pub(crate) fn deficiency_exact_general(
    g: &Graph,
    vertex_cap: u32,
) -> Result<DeficiencyReport, GenusError> {
    if g.vertex_count() > vertex_cap {
        return Err(GenusError::TooLarge);
    }
    let beta = g.betti()?.value;
    let mut scan = CotreeScan::new(g.vertex_count() as usize);
    let mut best: Option<(u32, EdgeSet)> = None;
    let mut trees = 0u64;
    for tree in g.spanning_tree_iter() {
        trees += 1;
        let odd = scan.stats(g, &tree, beta % 2).odd_count;
        let better = match &best {
            None => true,
            Some((b, _)) => odd < *b,
        };
        if better {
            best = Some((odd, tree));
            if odd == beta % 2 {
                // Parity forces odd_count ≡ beta (mod 2); can't improve.
                break;
            }
        }
    }
    let (xi, tree) = best.ok_or(GenusError::Graph(GraphError::Disconnected))?;
    let certificate = certificate_from_tree(g, &tree);
    debug_assert_eq!(certificate.odd_count, xi);
    Ok(DeficiencyReport { xi, gamma_max: (beta - xi) / 2, certificate, trees_enumerated: trees })
}

/// Goal of the budgeted tree search.
#[derive(Clone, Copy, Debug)]
enum Goal {
    OddAtMost(u32),
    OddOneHeavy,
    SingletonAt(Edge),
}

fn goal_score(cert: &XuongCertificate, goal: Goal) -> u64 {
    match goal {
        Goal::OddAtMost(t) => (cert.odd_count.saturating_sub(t)) as u64,
        Goal::OddOneHeavy => {
            if cert.odd_count == 1 {
                if cert.has_heavy_odd_component() {
                    0
                } else {
                    1
                }
            } else {
                1 + cert.odd_count as u64 * 10
            }
        }
        Goal::SingletonAt(e) => {
            if cert.tree.contains(e) {
                return 1_000_000;
            }
            let comp = cert
                .components
                .iter()
                .find(|c| c.edges.contains(e))
                .expect("cotree edge lies in a component");
            let stray_odd = cert.odd_count - u32::from(comp.odd);
            (comp.edge_count as u64 - 1) + 100 * stray_odd as u64 + u64::from(!comp.odd)
        }
    }
}

/// Seeded hill-climb over edge swaps `T -> T + e - f`, with restarts.
fn tree_search(g: &Graph, goal: Goal, budget: &SearchBudget) -> Option<XuongCertificate> {
    let mut rng = SplitMix64::new(budget.seed ^ 0x9E37_79B9);
    let mut tree = g.some_spanning_tree()?;
    let mut cert = certificate_from_tree(g, &tree);
    let mut score = goal_score(&cert, goal);
    let mut best = cert.clone();
    let mut best_score = score;
    let mut stall = 0u32;
    let swappable: Vec<Edge> = g.edges().filter(|&e| !g.is_loop(e)).collect();
    if swappable.len() <= g.vertex_count() as usize - 1 {
        return (best_score == 0).then_some(best);
    }
    let mut steps = 0;
    while steps < budget.steps {
        steps += 1;
        if best_score == 0 {
            return Some(best);
        }
        if stall > 4000 {
            stall = 0;
            tree = g.random_spanning_tree(&mut rng)?;
            cert = certificate_from_tree(g, &tree);
            score = goal_score(&cert, goal);
        } else {
            // Random cotree edge in, random tree-path edge out.
            let e = loop {
                let e = swappable[rng.below(swappable.len())];
                if !tree.contains(e) {
                    break e;
                }
            };
            let (u, v) = g.endpoints(e);
            let path = tree_path(g, &tree, u, v);
            let f = path[rng.below(path.len())];
            let mut cand = tree;
            cand.remove(f);
            cand.insert(e);
            let cand_cert = certificate_from_tree(g, &cand);
            let cand_score = goal_score(&cand_cert, goal);
            if cand_score <= score {
                stall = if cand_score < score { 0 } else { stall + 1 };
                tree = cand;
                cert = cand_cert;
                score = cand_score;
            } else {
                stall += 1;
            }
        }
        if score < best_score {
            best = cert.clone();
            best_score = score;
        }
    }
    (best_score == 0).then_some(best)
}

/// Edges of the tree path between `u` and `v`.
fn tree_path(g: &Graph, tree: &EdgeSet, u: Vertex, v: Vertex) -> Vec<Edge> {
    let n = g.vertex_count() as usize;
    let mut parent: Vec<Option<(Vertex, Edge)>> = vec![None; n];
    let mut seen = VertexSet::single(u);
    let mut queue = vec![u];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        if x == v {
            break;
        }
        for d in g.darts_at(x) {
            let e = d.edge();
            if !tree.contains(e) {
                continue;
            }
            let w = g.dart_at(d.mate());
            if !seen.contains(w) {
                seen.insert(w);
                parent[w.index()] = Some((x, e));
                queue.push(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = v;
    while cur != u {
        let (p, e) = parent[cur.index()].expect("u and v are tree-connected");
        path.push(e);
        cur = p;
    }
    path
}

/// Budgeted search for a spanning tree with at most `target_odd` odd
/// cotree components. `None` means the budget ran out, not nonexistence.
pub fn find_xuong_tree(
    g: &CubicGraph,
    target_odd: u32,
    budget: &SearchBudget,
) -> Option<XuongCertificate> {
    if !g.is_connected() {
        return None;
    }
    tree_search(g, Goal::OddAtMost(target_odd), budget)
}

/// Partition of an edge set into pairs of adjacent edges, with one
/// leftover exactly when the number of edges is odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KotzigPairing {
    /// Each pair records the shared vertex.
    pub pairs: Vec<(Edge, Edge, Vertex)>,
    pub leftover: Option<Edge>,
}

/// Kotzig pairing of a connected edge set, given as `(id, u, v)` triples
/// (`u == v` for loops). Deterministic: edges are paired bottom-up along
/// a BFS tree, children before parents, ties by edge id.
pub fn kotzig_pairing(items: &[(Edge, Vertex, Vertex)]) -> Result<KotzigPairing, GenusError> {
    if items.is_empty() {
        return Ok(KotzigPairing { pairs: Vec::new(), leftover: None });
    }
    let mut vertices: Vec<Vertex> = items.iter().flat_map(|&(_, u, v)| [u, v]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let slot = |v: Vertex| vertices.binary_search(&v).expect("known vertex");

    // Incidence lists, loops once.
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (ix, &(_, u, v)) in items.iter().enumerate() {
        incident[slot(u)].push(ix);
        if v != u {
            incident[slot(v)].push(ix);
        }
    }

    // BFS forest from the smallest vertex; fail if not connected.
    let root = 0usize;
    let mut parent_edge: Vec<Option<usize>> = vec![None; vertices.len()];
    let mut order = vec![root];
    let mut seen = vec![false; vertices.len()];
    seen[root] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &ix in &incident[v] {
            let (_, a, b) = items[ix];
            let w = if slot(a) == v { slot(b) } else { slot(a) };
            if !seen[w] {
                seen[w] = true;
                parent_edge[w] = Some(ix);
                order.push(w);
            }
        }
    }
    if order.len() != vertices.len() {
        return Err(GenusError::Disconnected);
    }

    let mut paired = vec![false; items.len()];
    let mut pairs = Vec::new();
    let mut leftover = None;
    for &v in order.iter().rev() {
        let up = parent_edge[v];
        let mut free: Vec<usize> = incident[v]
            .iter()
            .copied()
            .filter(|&ix| !paired[ix] && Some(ix) != up)
            .collect();
        free.sort_unstable_by_key(|&ix| items[ix].0);
        free.dedup();
        let here = vertices[v];
        while free.len() >= 2 {
            let b = free.pop().unwrap();
            let a = free.pop().unwrap();
            paired[a] = true;
            paired[b] = true;
            pairs.push((items[a].0, items[b].0, here));
        }
        if let Some(last) = free.pop() {
            match up {
                Some(up_ix) => {
                    paired[last] = true;
                    paired[up_ix] = true;
                    pairs.push((items[last].0, items[up_ix].0, here));
                }
                None => {
                    // Root with odd total size.
                    paired[last] = true;
                    leftover = Some(items[last].0);
                }
            }
        }
    }
    debug_assert!(paired.iter().all(|&p| p));
    debug_assert_eq!(leftover.is_some(), items.len() % 2 == 1);
    Ok(KotzigPairing { pairs, leftover })
}

/// Kotzig pairing of an edge subset of a host graph.
pub fn kotzig_on_subset(g: &Graph, edges: &EdgeSet) -> Result<KotzigPairing, GenusError> {
    let items: Vec<(Edge, Vertex, Vertex)> = edges
        .iter()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            (e, u, v)
        })
        .collect();
    kotzig_pairing(&items)
}

/// Rebuilds a certificate with an acyclic cotree, preserving the odd
/// count and any heavy component's parity. Works by the elementary swap
/// that opens a cotree cycle into a path through an adjacent tree edge.
pub fn normalize_acyclic_cotree(
    g: &CubicGraph,
    cert: &XuongCertificate,
) -> Result<XuongCertificate, GenusError> {
    if g.vertices().any(|v| g.has_loop_at(v)) {
        return Err(GenusError::HasLoop);
    }
    if g.vertex_count() < 4 {
        return Err(GenusError::TooSmall);
    }
    validate_certificate(g, cert)?;
    if cert.odd_count > 1 {
        return Err(GenusError::BadCertificate("odd count exceeds 1"));
    }
    let had_heavy = cert.has_heavy_odd_component();
    let mut cur = cert.clone();
    while let Some(cycle) = cur.components.iter().find(|c| c.is_cycle) {
        // Lowest vertex on the cycle, its unique tree edge, and the
        // lowest-id cycle edge at it.
        let mut on_cycle = VertexSet::EMPTY;
        for e in cycle.edges.iter() {
            let (u, v) = g.endpoints(e);
            on_cycle.insert(u);
            on_cycle.insert(v);
        }
        let u1 = on_cycle.first().expect("cycle has vertices");
        let tree_edge = g
            .edges_at(u1)
            .find(|e| cur.tree.contains(*e))
            .expect("cubic vertex on a cotree cycle has one tree edge");
        let cycle_edge = g
            .edges_at(u1)
            .filter(|e| cycle.edges.contains(*e))
            .min()
            .expect("cycle edge at u1");
        let mut tree = cur.tree;
        tree.insert(cycle_edge);
        tree.remove(tree_edge);
        let next = certificate_from_tree(g, &tree);
        debug_assert_eq!(next.odd_count, cur.odd_count);
        cur = next;
    }
    debug_assert_eq!(cur.odd_count, cert.odd_count);
    debug_assert!(!had_heavy || cur.has_heavy_odd_component());
    Ok(cur)
}

/// A set `X` violating Nebeský's inequality, refuting upper
/// embeddability: `ec(G-X) + 2 oc(G-X) - 2 > |X|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NebeskyWitness {
    pub x: EdgeSet,
    pub ec: u32,
    pub oc: u32,
}

impl NebeskyWitness {
    /// `ec + 2 oc - 2 - |X|`; positive for a valid witness.
    pub fn margin(&self) -> i64 {
        self.ec as i64 + 2 * self.oc as i64 - 2 - self.x.len() as i64
    }
}

fn count_parity_components(g: &Graph, removed: &EdgeSet) -> (u32, u32) {
    let (count, comp_of) = g.components_excluding(removed);
    let mut vertices = vec![0u32; count as usize];
    let mut edges = vec![0u32; count as usize];
    for v in g.vertices() {
        vertices[comp_of[v.index()] as usize] += 1;
    }
    for e in g.edges() {
        if !removed.contains(e) {
            edges[comp_of[g.endpoints(e).0.index()] as usize] += 1;
        }
    }
    let mut ec = 0;
    let mut oc = 0;
    for i in 0..count as usize {
        let beta = edges[i] + 1 - vertices[i];
        if beta % 2 == 0 {
            ec += 1;
        } else {
            oc += 1;
        }
    }
    (ec, oc)
}

/// Re-checks a witness by recounting components of `G - X`.
pub fn validate_nebesky(g: &Graph, w: &NebeskyWitness) -> bool {
    let (ec, oc) = count_parity_components(g, &w.x);
    ec == w.ec && oc == w.oc && w.margin() > 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessStrategy {
    /// Tests the single candidate `X` = all edges not lying on a triangle.
    TriangleFreeEdges,
    /// Enumerates all sets with `|X|` at most the given cap.
    ExhaustiveCapped(u32),
}

pub fn find_nebesky_witness(g: &CubicGraph, strategy: WitnessStrategy) -> Option<NebeskyWitness> {
    match strategy {
        WitnessStrategy::TriangleFreeEdges => {
            let mut x = EdgeSet::EMPTY;
            for e in g.edges() {
                let (u, v) = g.endpoints(e);
                let on_triangle = u != v
                    && g.vertices()
                        .any(|w| w != u && w != v && g.are_adjacent(w, u) && g.are_adjacent(w, v));
                if !on_triangle {
                    x.insert(e);
                }
            }
            let (ec, oc) = count_parity_components(g, &x);
            let w = NebeskyWitness { x, ec, oc };
            (w.margin() > 0).then_some(w)
        }
        WitnessStrategy::ExhaustiveCapped(cap) => {
            let m = g.edge_count() as usize;
            for size in 0..=(cap as usize).min(m) {
                let mut ix: Vec<usize> = (0..size).collect();
                loop {
                    let x: EdgeSet = ix.iter().map(|&i| Edge(i as u32)).collect();
                    let (ec, oc) = count_parity_components(g, &x);
                    let w = NebeskyWitness { x, ec, oc };
                    if w.margin() > 0 {
                        return Some(w);
                    }
                    // Advance the combination.
                    let mut i = size;
                    loop {
                        if i == 0 {
                            break;
                        }
                        i -= 1;
                        if ix[i] != i + m - size {
                            break;
                        }
                    }
                    if size == 0 || (i == 0 && ix[0] == m - size) {
                        break;
                    }
                    ix[i] += 1;
                    for j in i + 1..size {
                        ix[j] = ix[j - 1] + 1;
                    }
                }
            }
            None
        }
    }
}

/// Upper-embeddability classification with certificates on both sides.
#[derive(Clone, Debug)]
pub enum Embeddability {
    /// Deficiency 0: a spanning tree with all cotree components even.
    OneFace(XuongCertificate),
    /// Deficiency 1: exactly one odd cotree component.
    TwoFace(XuongCertificate),
    /// A valid Nebeský witness refutes upper embeddability.
    NotUpperEmbeddable(NebeskyWitness),
    /// Both budgets exhausted without an answer.
    Unknown,
}

impl Embeddability {
    pub fn is_upper_embeddable(&self) -> Option<bool> {
        match self {
            Embeddability::OneFace(_) | Embeddability::TwoFace(_) => Some(true),
            Embeddability::NotUpperEmbeddable(_) => Some(false),
            Embeddability::Unknown => None,
        }
    }
}

/// Classifies a connected cubic graph. Exact by enumeration up to the
/// spanning-tree cap; budgeted certificate search plus witness hunting
/// beyond it.
pub fn classify_upper_embeddable(g: &CubicGraph, budget: &SearchBudget) -> Embeddability {
    let beta = match g.betti() {
        Ok(b) => b,
        Err(_) => return Embeddability::Unknown,
    };
    let target = beta.value % 2;
    if g.vertex_count() <= CubicGraph::SPANNING_TREE_CAP {
        let report = deficiency_exact(g).expect("within cap and connected");
        return match report.xi {
            0 => Embeddability::OneFace(report.certificate),
            1 => Embeddability::TwoFace(report.certificate),
            _ => {
                let w = find_nebesky_witness(g, WitnessStrategy::TriangleFreeEdges)
                    .or_else(|| {
                        find_nebesky_witness(
                            g,
                            WitnessStrategy::ExhaustiveCapped(g.edge_count()),
                        )
                    })
                    .expect("Nebeský witness exists for a non-upper-embeddable graph");
                Embeddability::NotUpperEmbeddable(w)
            }
        };
    }
    if let Some(cert) = find_xuong_tree(g, target, budget) {
        debug_assert!(cert.odd_count <= 1);
        return if cert.odd_count == 0 {
            Embeddability::OneFace(cert)
        } else {
            Embeddability::TwoFace(cert)
        };
    }
    if let Some(w) = find_nebesky_witness(g, WitnessStrategy::TriangleFreeEdges) {
        return Embeddability::NotUpperEmbeddable(w);
    }
    if let Some(w) = find_nebesky_witness(g, WitnessStrategy::ExhaustiveCapped(4)) {
        return Embeddability::NotUpperEmbeddable(w);
    }
    Embeddability::Unknown
}

/// Verdict on ample versus tight two-face embeddability.
#[derive(Clone, Debug)]
pub enum AmplyVerdict {
    /// Certificate: a Xuong tree whose single odd component is heavy.
    Amply(XuongCertificate),
    /// Proof that no such tree exists (complete enumeration, or a
    /// supplied exhaustive no-coherent-partition proof).
    Tightly(ExhaustionProof),
    Unknown,
}

/// Classifies a two-face-embeddable cubic graph as amply or tightly
/// upper-embeddable. Exhaustive within the spanning-tree cap. Beyond it,
/// a supplied complete no-coherent-partition proof forces `Tightly`
/// (no coherent partition rules out a heavy Xuong tree); otherwise a
/// budgeted heavy-certificate search may return `Amply` or `Unknown`.
pub fn classify_amply(
    g: &CubicGraph,
    budget: &SearchBudget,
    no_coherent_proof: Option<&ExhaustionProof>,
) -> Result<AmplyVerdict, GenusError> {
    let beta = g.betti()?;
    if beta.cyclically_even {
        return Err(GenusError::WrongParity);
    }
    if g.vertex_count() <= CubicGraph::SPANNING_TREE_CAP {
        let mut scan = CotreeScan::new(g.vertex_count() as usize);
        let mut trees = 0u64;
        for tree in g.spanning_trees()? {
            trees += 1;
            let stats = scan.stats(g, &tree, 1);
            if stats.odd_count == 1 && stats.has_heavy_odd {
                let cert = certificate_from_tree(g, &tree);
                debug_assert!(cert.has_heavy_odd_component());
                return Ok(AmplyVerdict::Amply(cert));
            }
        }
        return Ok(AmplyVerdict::Tightly(ExhaustionProof {
            space: format!("all {trees} spanning trees"),
            nodes: trees,
            complete: true,
        }));
    }
    if let Some(proof) = no_coherent_proof {
        if proof.complete {
            return Ok(AmplyVerdict::Tightly(proof.clone()));
        }
    }
    match tree_search(g, Goal::OddOneHeavy, budget) {
        Some(cert) => Ok(AmplyVerdict::Amply(cert)),
        None => Ok(AmplyVerdict::Unknown),
    }
}

/// True iff `{x, y}` is a removable pair: simply adjacent, `xy` not a
/// bridge, and the remainder connected and upper-embeddable.
pub fn removable_pair(g: &CubicGraph, x: Vertex, y: Vertex) -> bool {
    if x == y || g.multiplicity(x, y) != 1 {
        return false;
    }
    let xy = g
        .edges_at(x)
        .find(|&e| g.other_end(e, x) == y)
        .expect("adjacent");
    if g.components_excluding(&EdgeSet::single(xy)).0 > 1 {
        return false;
    }
    let mut kill = VertexSet::single(x);
    kill.insert(y);
    let (mut rest, _) = g.delete_vertices(&kill);
    if !rest.is_connected() || rest.vertex_count() == 0 {
        return false;
    }
    // Suppress 2-valent vertices; deficiency is a homeomorphism invariant.
    loop {
        match rest.vertices().find(|&v| rest.degree(v) == 2) {
            Some(v) => {
                let s = rest.suppress_vertex(v).expect("degree checked");
                rest = s.graph;
            }
            None => break,
        }
        if rest.vertex_count() == 0 {
            return true;
        }
    }
    match deficiency_exact_general(&rest, CubicGraph::SPANNING_TREE_CAP) {
        Ok(r) => r.xi <= 1,
        Err(_) => false,
    }
}

/// Edges that form the odd cotree component of some light Xuong tree.
/// Exhaustive within the cap; per-edge budgeted search beyond it (the
/// result is then a verified subset of the true odd-edge set).
pub fn odd_edges(g: &CubicGraph, budget: &SearchBudget) -> Result<EdgeSet, GenusError> {
    let beta = g.betti()?;
    if beta.cyclically_even {
        return Err(GenusError::WrongParity);
    }
    let mut out = EdgeSet::EMPTY;
    if g.vertex_count() <= CubicGraph::SPANNING_TREE_CAP {
        let mut scan = CotreeScan::new(g.vertex_count() as usize);
        for tree in g.spanning_trees()? {
            if let Some(e) = scan.stats(g, &tree, 1).light_singleton {
                out.insert(e);
            }
        }
        return Ok(out);
    }
    let per_edge = SearchBudget {
        steps: (budget.steps / g.edge_count() as u64).max(1_000),
        seed: budget.seed,
    };
    for e in g.edges() {
        if g.is_loop(e) {
            continue;
        }
        if tree_search(g, Goal::SingletonAt(e), &per_edge).is_some() {
            out.insert(e);
        }
    }
    Ok(out)
}

/// Largest independent set whose removal keeps the graph connected.
/// Brute force over all vertex subsets; capped at 16 vertices.
pub fn max_nonseparating_independent_set(
    g: &CubicGraph,
) -> Result<(u32, VertexSet), GenusError> {
    let n = g.vertex_count();
    if n > 16 {
        return Err(GenusError::TooLarge);
    }
    if !g.is_connected() {
        return Err(GenusError::Graph(GraphError::Disconnected));
    }
    // Adjacency masks; a vertex with a loop is adjacent to itself and can
    // never be independent.
    let mut adj = vec![0u32; n as usize];
    for e in g.edges() {
        let (u, v) = g.endpoints(e);
        adj[u.index()] |= 1 << v.0;
        adj[v.index()] |= 1 << u.0;
    }
    let full = (1u32 << n) - 1;
    let mut best_mask = 0u32;
    for mask in 1..=full {
        if mask.count_ones() <= best_mask.count_ones() {
            continue;
        }
        let mut independent = true;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            if adj[v as usize] & mask != 0 || g.has_loop_at(Vertex(v)) {
                independent = false;
                break;
            }
        }
        if !independent {
            continue;
        }
        let rest = full & !mask;
        if rest == 0 || !mask_connected(&adj, rest) {
            continue;
        }
        best_mask = mask;
    }
    let set: VertexSet = (0..n).filter(|&v| best_mask >> v & 1 == 1).map(Vertex).collect();
    Ok((best_mask.count_ones(), set))
}

fn mask_connected(adj: &[u32], mask: u32) -> bool {
    let start = mask.trailing_zeros();
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u32;
        let mut bits = frontier;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            next |= adj[v as usize] & mask & !seen;
        }
        seen |= next;
        frontier = next;
    }
    seen == mask
}
