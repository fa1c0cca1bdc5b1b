//! Decycling numbers and stable/coherent decycling partitions, including
//! the constructive conversions between spanning-tree certificates and
//! partitions in both directions.
//!
//! Searches for partitions run a cycle-branching backtrack: every
//! decycling set must hit every cycle, the target size is pinned by the
//! counting law `|J| = ceil((n+2)/4)` for stable partitions, and the
//! number of edges inside `J` is forced by the order mod 4. Completed
//! searches return exhaustion proofs; they never guess.

use crate::genus::{
    self, certificate_from_tree, kotzig_on_subset, normalize_acyclic_cotree, AmplyVerdict,
    Embeddability, GenusError, XuongCertificate,
};
use crate::graph::{CubicGraph, GraphError};
use crate::set::{Edge, EdgeSet, Vertex, VertexSet};
use crate::{ExhaustionProof, SearchBudget, SearchOutcome};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecyclingError {
    Graph(GraphError),
    Genus(GenusError),
    /// The vertex sets do not partition the graph.
    BadPartition,
    /// `G[A]` contains a cycle, so `J` is not a decycling set.
    NotDecycling,
    /// The partition is not stable.
    NotStable,
    /// The operation needs a cyclically 4-edge-connected graph.
    NotC4C,
    /// Exact genus data is unavailable within the budget.
    GenusUnknown,
    /// A guaranteed search failed: an internal bug, not a math outcome.
    InternalSearchFailure,
    /// The certificate is unusable for the construction.
    BadCertificate(&'static str),
    TooLarge,
}

impl From<GraphError> for DecyclingError {
    fn from(e: GraphError) -> Self {
        DecyclingError::Graph(e)
    }
}

impl From<GenusError> for DecyclingError {
    fn from(e: GenusError) -> Self {
        DecyclingError::Genus(e)
    }
}

impl fmt::Display for DecyclingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecyclingError::Graph(e) => write!(f, "{e}"),
            DecyclingError::Genus(e) => write!(f, "{e}"),
            DecyclingError::BadPartition => write!(f, "vertex sets do not partition the graph"),
            DecyclingError::NotDecycling => write!(f, "A side induces a cycle"),
            DecyclingError::NotStable => write!(f, "partition is not stable"),
            DecyclingError::NotC4C => write!(f, "graph is not cyclically 4-edge-connected"),
            DecyclingError::GenusUnknown => write!(f, "maximum genus unknown within budget"),
            DecyclingError::InternalSearchFailure => {
                write!(f, "guaranteed search failed; this is a bug")
            }
            DecyclingError::BadCertificate(why) => write!(f, "unusable certificate: {why}"),
            DecyclingError::TooLarge => write!(f, "graph too large for exhaustive search"),
        }
    }
}

/// The stable partition taxonomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionKind {
    /// `A` induces a tree, `J` is independent.
    TreeIndependent,
    /// `A` induces a tree, `J` spans exactly one edge (possibly a loop).
    TreeNearIndependent,
    /// `A` induces a forest of two trees, `J` is independent.
    TwoTreesIndependent,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionClass {
    pub kind: PartitionKind,
    pub stable: bool,
    /// Stable with `A` inducing a single tree.
    pub coherent: bool,
    /// Edges inside `J`; a loop on a `J` vertex counts once.
    pub e_j: u32,
    pub components_a: u32,
}

/// A decycling bipartition `{A, J}` with its validated classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecyclingPartition {
    pub a: VertexSet,
    pub j: VertexSet,
    pub class: PartitionClass,
}

/// Classifies a bipartition; errors if it does not partition `V` or if
/// `G[A]` has a cycle.
pub fn classify_partition(
    g: &CubicGraph,
    a: &VertexSet,
    j: &VertexSet,
) -> Result<PartitionClass, DecyclingError> {
    if !a.is_disjoint(j) || a.union(j) != g.all_vertices() {
        return Err(DecyclingError::BadPartition);
    }
    let report = g.induced_subgraph(a);
    if !report.acyclic {
        return Err(DecyclingError::NotDecycling);
    }
    let e_j = g.induced_edges(j).len();
    let components_a = report.components;
    let kind = match (components_a, e_j) {
        (1, 0) => PartitionKind::TreeIndependent,
        (1, 1) => PartitionKind::TreeNearIndependent,
        (2, 0) => PartitionKind::TwoTreesIndependent,
        _ => PartitionKind::Other,
    };
    let stable = kind != PartitionKind::Other;
    Ok(PartitionClass { kind, stable, coherent: stable && components_a == 1, e_j, components_a })
}

fn classified(g: &CubicGraph, a: VertexSet, j: VertexSet) -> Result<DecyclingPartition, DecyclingError> {
    let class = classify_partition(g, &a, &j)?;
    Ok(DecyclingPartition { a, j, class })
}

/// The natural lower bound `ceil((n+2)/4)` every decycling set meets.
pub fn decycling_lower_bound(n: u32) -> u32 {
    (n + 2).div_ceil(4)
}

/// Exact decycling number by subset enumeration from the lower bound
/// upward; capped at 20 vertices. Returns the first minimum set in
/// lexicographic order.
pub fn decycling_number_bruteforce(
    g: &CubicGraph,
) -> Result<(u32, VertexSet), DecyclingError> {
    let n = g.vertex_count();
    if n > 20 {
        return Err(DecyclingError::TooLarge);
    }
    let all = g.all_vertices();
    for k in decycling_lower_bound(n)..=n {
        let mut ix: Vec<u32> = (0..k).collect();
        loop {
            let j: VertexSet = ix.iter().map(|&i| Vertex(i)).collect();
            if g.induced_subgraph(&all.difference(&j)).acyclic {
                return Ok((k, j));
            }
            // Next k-combination of 0..n.
            let mut i = k as usize;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if ix[i] != i as u32 + n - k {
                    break;
                }
            }
            if i == 0 && ix[0] == n - k {
                break;
            }
            ix[i] += 1;
            for t in i + 1..k as usize {
                ix[t] = ix[t - 1] + 1;
            }
        }
    }
    Err(DecyclingError::InternalSearchFailure)
}

/// Decycling number through the genus identity `phi = n/2 + 1 - gamma_M`.
pub fn decycling_number_via_genus(
    g: &CubicGraph,
    budget: &SearchBudget,
) -> Result<u32, DecyclingError> {
    let beta = g.betti()?;
    let gamma = if g.vertex_count() <= CubicGraph::SPANNING_TREE_CAP {
        genus::deficiency_exact(g)?.gamma_max
    } else {
        match genus::classify_upper_embeddable(g, budget) {
            Embeddability::OneFace(c) | Embeddability::TwoFace(c) => {
                (beta.value - c.odd_count) / 2
            }
            _ => return Err(DecyclingError::GenusUnknown),
        }
    };
    Ok(g.vertex_count() / 2 + 1 - gamma)
}

/// Builds a stable decycling partition from a certificate with at most
/// one odd cotree component, following the pair-picking constructions.
/// With one odd component the cotree is normalized to be acyclic first;
/// a certificate whose odd component is a loop is routed through the
/// bridge reduction.
pub fn partition_from_xuong(
    g: &CubicGraph,
    cert: &XuongCertificate,
) -> Result<DecyclingPartition, DecyclingError> {
    genus::validate_certificate(g, cert).map_err(DecyclingError::Genus)?;
    if cert.odd_count > 1 {
        return Err(DecyclingError::BadCertificate("more than one odd component"));
    }
    if cert.odd_count == 0 {
        let mut j = VertexSet::EMPTY;
        for comp in &cert.components {
            let pairing = kotzig_on_subset(g, &comp.edges)?;
            debug_assert!(pairing.leftover.is_none());
            for (_, _, v) in pairing.pairs {
                j.insert(v);
            }
        }
        let partition = classified(g, g.all_vertices().difference(&j), j)?;
        debug_assert_eq!(partition.class.kind, PartitionKind::TreeIndependent);
        return Ok(partition);
    }

    let odd = cert.odd_component().expect("odd_count is 1").clone();
    if odd.is_cycle && odd.edge_count == 1 {
        return partition_from_loop_certificate(g, cert, odd.edges.first().unwrap());
    }

    let cert = if cert.cotree_acyclic() {
        cert.clone()
    } else {
        normalize_acyclic_cotree(g, cert)?
    };
    let odd = cert.odd_component().expect("odd_count is 1").clone();

    if odd.edge_count == 1 {
        // Light: one end of the single odd edge joins the paired
        // vertices. Generically A splits into a two-tree forest; when a
        // paired vertex hangs off the chosen end by a tree edge, its
        // branch collapses and the result is a near-independent
        // partition instead. Both are stable.
        let g_edge = odd.edges.first().unwrap();
        let (w1, w2) = g.endpoints(g_edge);
        let w = w1.min(w2);
        let mut j = VertexSet::single(w);
        for comp in cert.components.iter().filter(|c| !c.odd) {
            let pairing = kotzig_on_subset(g, &comp.edges)?;
            debug_assert!(pairing.leftover.is_none());
            for (_, _, v) in pairing.pairs {
                j.insert(v);
            }
        }
        let partition = classified(g, g.all_vertices().difference(&j), j)?;
        debug_assert!(partition.class.stable);
        return Ok(partition);
    }

    // Heavy path: drop a pendant edge of the odd path, pair the rest.
    debug_assert!(odd.heavy && !odd.is_cycle);
    let mut degree_in_b: Vec<(Vertex, u32)> = Vec::new();
    for e in odd.edges.iter() {
        let (u, v) = g.endpoints(e);
        for x in [u, v] {
            match degree_in_b.iter_mut().find(|(y, _)| *y == x) {
                Some((_, d)) => *d += 1,
                None => degree_in_b.push((x, 1)),
            }
        }
    }
    let b_degree = |v: Vertex| {
        degree_in_b
            .iter()
            .find(|(y, _)| *y == v)
            .map(|(_, d)| *d)
            .unwrap_or(0)
    };
    let pendant = odd
        .edges
        .iter()
        .filter(|&e| {
            let (u, v) = g.endpoints(e);
            b_degree(u) == 1 || b_degree(v) == 1
        })
        .min()
        .expect("a path has pendant edges");
    let (pu, pv) = g.endpoints(pendant);
    // w1 is the inner end of the pendant edge.
    let w1 = if b_degree(pu) == 1 { pv } else { pu };
    let mut rest = g.all_edges().difference(&cert.tree);
    rest.remove(pendant);
    let mut j = VertexSet::single(w1);
    for comp in g.edge_subset_components(&rest) {
        let pairing = kotzig_on_subset(g, &comp)?;
        debug_assert!(pairing.leftover.is_none());
        for (_, _, v) in pairing.pairs {
            j.insert(v);
        }
    }
    let partition = classified(g, g.all_vertices().difference(&j), j)?;
    debug_assert_eq!(partition.class.kind, PartitionKind::TreeNearIndependent);
    Ok(partition)
}

/// The loop branch: the loop vertex joins `J`, its neighbour joins `A`,
/// and the rest comes from a one-face partition of the reduced graph.
fn partition_from_loop_certificate(
    g: &CubicGraph,
    cert: &XuongCertificate,
    loop_edge: Edge,
) -> Result<DecyclingPartition, DecyclingError> {
    let (v, _) = g.endpoints(loop_edge);
    let bridge = g
        .edges_at(v)
        .find(|&e| !g.is_loop(e))
        .expect("cubic loop vertex has one plain edge");
    let u = g.other_end(bridge, v);

    // Remove v, then suppress the 2-valent neighbour u.
    let (mid, to_mid) = g.delete_vertices(&VertexSet::single(v));
    let u_mid = to_mid[u.index()].expect("u survives");
    let s = mid.suppress_vertex(u_mid).map_err(DecyclingError::Graph)?;
    let reduced = CubicGraph::from_graph(s.graph.clone())?;

    // Transport the tree: drop the bridge, re-id across both surgeries,
    // and keep the merged edge iff both halves were tree edges.
    let mut mid_tree = EdgeSet::EMPTY;
    let mut mid_of_g = vec![None; g.edge_count() as usize];
    {
        let mut next = 0u32;
        for e in g.edges() {
            let (x, y) = g.endpoints(e);
            if x == v || y == v {
                continue;
            }
            mid_of_g[e.index()] = Some(Edge(next));
            next += 1;
        }
    }
    for e in cert.tree.iter() {
        if let Some(me) = mid_of_g[e.index()] {
            mid_tree.insert(me);
        }
    }
    let mut tree = EdgeSet::EMPTY;
    let merged = s.merged.as_ref().expect("u is not an isolated loop vertex");
    let (h1, h2) = merged.old_halves;
    for me in mid_tree.iter() {
        if let Some(ne) = s.edge_map[me.index()] {
            tree.insert(ne);
        }
    }
    if mid_tree.contains(h1) && mid_tree.contains(h2) {
        tree.insert(merged.edge);
    }
    let reduced_cert = certificate_from_tree(&reduced, &tree);
    debug_assert_eq!(reduced_cert.odd_count, 0);
    let inner = partition_from_xuong(&reduced, &reduced_cert)?;

    // Map back to g: reduced vertex -> mid vertex -> g vertex.
    let mut back = vec![Vertex(0); reduced.vertex_count() as usize];
    for x in g.vertices() {
        if x == v {
            continue;
        }
        let xm = to_mid[x.index()].unwrap();
        if let Some(xr) = s.vertex_map[xm.index()] {
            back[xr.index()] = x;
        }
    }
    let mut a = VertexSet::single(u);
    let mut j = VertexSet::single(v);
    for x in inner.a.iter() {
        a.insert(back[x.index()]);
    }
    for x in inner.j.iter() {
        j.insert(back[x.index()]);
    }
    let partition = classified(g, a, j)?;
    debug_assert_eq!(partition.class.kind, PartitionKind::TreeNearIndependent);
    Ok(partition)
}

/// Rebuilds a certificate from a stable partition, inverting the
/// constructions of `partition_from_xuong`.
pub fn xuong_from_partition(
    g: &CubicGraph,
    p: &DecyclingPartition,
) -> Result<XuongCertificate, DecyclingError> {
    let class = classify_partition(g, &p.a, &p.j)?;
    if !class.stable {
        return Err(DecyclingError::NotStable);
    }
    let mut tree = g.induced_edges(&p.a);
    match class.kind {
        PartitionKind::TreeIndependent => {
            for v in p.j.iter() {
                let t = g
                    .edges_at(v)
                    .filter(|&e| p.a.contains(g.other_end(e, v)))
                    .min()
                    .expect("independent J vertex has a neighbour in A");
                tree.insert(t);
            }
            let cert = certificate_from_tree(g, &tree);
            debug_assert_eq!(cert.odd_count, 0);
            Ok(cert)
        }
        PartitionKind::TreeNearIndependent => {
            for v in p.j.iter() {
                let t = g
                    .edges_at(v)
                    .filter(|&e| {
                        let w = g.other_end(e, v);
                        w != v && p.a.contains(w)
                    })
                    .min()
                    .expect("near-independent J vertex keeps an edge into A");
                tree.insert(t);
            }
            let cert = certificate_from_tree(g, &tree);
            debug_assert_eq!(cert.odd_count, 1);
            Ok(cert)
        }
        PartitionKind::TwoTreesIndependent => {
            let report = g.induced_subgraph(&p.a);
            debug_assert_eq!(report.components, 2);
            // Component ids of A vertices.
            let comps = g.edge_subset_components(&report.edges);
            let side0: VertexSet = match comps.first() {
                Some(set) => {
                    let mut vs = VertexSet::EMPTY;
                    for e in set.iter() {
                        let (x, y) = g.endpoints(e);
                        vs.insert(x);
                        vs.insert(y);
                    }
                    vs
                }
                // An isolated-vertex tree: pick the smallest A vertex.
                None => VertexSet::single(p.a.first().expect("A nonempty")),
            };
            let in_side0 = |v: Vertex| side0.contains(v);
            let bridge_vertex = p
                .j
                .iter()
                .find(|&x| {
                    let mut hit0 = false;
                    let mut hit1 = false;
                    for e in g.edges_at(x) {
                        let w = g.other_end(e, x);
                        if p.a.contains(w) {
                            if in_side0(w) {
                                hit0 = true;
                            } else {
                                hit1 = true;
                            }
                        }
                    }
                    hit0 && hit1
                })
                .expect("connectivity provides a bridging J vertex");
            let mut linked0 = false;
            let mut linked1 = false;
            for e in g
                .edges_at(bridge_vertex)
                .collect::<alloc::collections::BTreeSet<_>>()
            {
                let w = g.other_end(e, bridge_vertex);
                if !p.a.contains(w) {
                    continue;
                }
                if in_side0(w) && !linked0 {
                    tree.insert(e);
                    linked0 = true;
                } else if !in_side0(w) && !linked1 {
                    tree.insert(e);
                    linked1 = true;
                }
            }
            for v in p.j.iter() {
                if v == bridge_vertex {
                    continue;
                }
                let t = g
                    .edges_at(v)
                    .filter(|&e| p.a.contains(g.other_end(e, v)))
                    .min()
                    .expect("independent J vertex has a neighbour in A");
                tree.insert(t);
            }
            let cert = certificate_from_tree(g, &tree);
            debug_assert_eq!(cert.odd_count, 1);
            Ok(cert)
        }
        PartitionKind::Other => unreachable!("stable checked above"),
    }
}

/// Complete cycle-branching search for a stable (optionally coherent,
/// optionally vertex-forced) partition. `n` is capped at 64.
struct PartitionSearch<'a> {
    g: &'a CubicGraph,
    target: u32,
    max_ej: u32,
    want_coherent: bool,
    nodes: u64,
    found: Option<DecyclingPartition>,
}

const PARTITION_SEARCH_CAP: u32 = 64;

impl<'a> PartitionSearch<'a> {
    fn run(
        g: &'a CubicGraph,
        forced: Option<Vertex>,
        want_coherent: bool,
    ) -> SearchOutcome<DecyclingPartition> {
        let n = g.vertex_count();
        if n > PARTITION_SEARCH_CAP {
            return SearchOutcome::Unknown;
        }
        let target = decycling_lower_bound(n);
        // Stable partitions have e_J <= 1; coherent ones have e_J fixed
        // by the order mod 4.
        let max_ej = if want_coherent && n % 4 == 2 { 0 } else { 1 };
        let mut search = PartitionSearch { g, target, max_ej, want_coherent, nodes: 0, found: None };
        let mut j = VertexSet::EMPTY;
        if let Some(v) = forced {
            j.insert(v);
        }
        search.descend(j, VertexSet::EMPTY);
        let kind = if want_coherent { "coherent" } else { "stable" };
        match search.found {
            Some(p) => SearchOutcome::Found(p),
            None => SearchOutcome::NoneExhausted(ExhaustionProof {
                space: format!(
                    "cycle-branching over all {kind} candidates with |J| = {target}, e_J <= {}",
                    search.max_ej
                ),
                nodes: search.nodes,
                complete: true,
            }),
        }
    }

    fn e_j(&self, j: &VertexSet) -> u32 {
        self.g.induced_edges(j).len()
    }

    fn accept(&self, p: &DecyclingPartition) -> bool {
        if self.want_coherent {
            p.class.coherent
        } else {
            p.class.stable
        }
    }

    fn descend(&mut self, j: VertexSet, excluded: VertexSet) {
        if self.found.is_some() {
            return;
        }
        self.nodes += 1;
        if self.e_j(&j) > self.max_ej || j.len() > self.target {
            return;
        }
        match self.find_cycle_avoiding(&j) {
            Some(cycle) => {
                if j.len() == self.target {
                    return;
                }
                let mut shadow = excluded;
                for v in cycle {
                    if !excluded.contains(v) {
                        self.descend(
                            {
                                let mut next = j;
                                next.insert(v);
                                next
                            },
                            shadow,
                        );
                        if self.found.is_some() {
                            return;
                        }
                        shadow.insert(v);
                    }
                }
            }
            None => {
                // Acyclic already: top up J to the target size.
                let missing = self.target - j.len();
                if missing == 0 {
                    let a = self.g.all_vertices().difference(&j);
                    if let Ok(p) = classified(self.g, a, j) {
                        if self.accept(&p) {
                            self.found = Some(p);
                        }
                    }
                    return;
                }
                let candidates: Vec<Vertex> = self
                    .g
                    .vertices()
                    .filter(|&v| !j.contains(v) && !excluded.contains(v))
                    .collect();
                self.top_up(&j, &candidates, 0, missing);
            }
        }
    }

    fn top_up(&mut self, j: &VertexSet, candidates: &[Vertex], from: usize, missing: u32) {
        if self.found.is_some() {
            return;
        }
        self.nodes += 1;
        if missing == 0 {
            let a = self.g.all_vertices().difference(j);
            if let Ok(p) = classified(self.g, a, *j) {
                if self.accept(&p) {
                    self.found = Some(p);
                }
            }
            return;
        }
        if candidates.len() - from < missing as usize {
            return;
        }
        for i in from..candidates.len() {
            let mut next = *j;
            next.insert(candidates[i]);
            if self.e_j(&next) <= self.max_ej {
                self.top_up(&next, candidates, i + 1, missing - 1);
            }
        }
    }

    /// A shortest cycle in `G - banned`, as a vertex list. Loops give a
    /// single vertex, digons two.
    fn find_cycle_avoiding(&self, banned: &VertexSet) -> Option<Vec<Vertex>> {
        let g = self.g;
        let mut best: Option<Vec<Vertex>> = None;
        for v in g.vertices() {
            if banned.contains(v) {
                continue;
            }
            if g.has_loop_at(v) {
                return Some(vec![v]);
            }
        }
        // BFS from every vertex; the first non-tree edge closing a walk
        // through the root yields a short cycle through it.
        for root in g.vertices() {
            if banned.contains(root) {
                continue;
            }
            let n = g.vertex_count() as usize;
            let mut parent: Vec<Option<(Vertex, Edge)>> = vec![None; n];
            let mut depth = vec![u32::MAX; n];
            depth[root.index()] = 0;
            let mut queue = vec![root];
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for d in g.darts_at(x) {
                    let e = d.edge();
                    let w = g.dart_at(d.mate());
                    if banned.contains(w) {
                        continue;
                    }
                    if let Some((_, pe)) = parent[x.index()] {
                        if pe == e {
                            continue;
                        }
                    }
                    if depth[w.index()] == u32::MAX {
                        depth[w.index()] = depth[x.index()] + 1;
                        parent[w.index()] = Some((x, e));
                        queue.push(w);
                    } else {
                        // Closing edge: assemble the cycle through the
                        // two BFS branches.
                        let mut left = trail(&parent, x);
                        let right = trail(&parent, w);
                        let mut seen = VertexSet::EMPTY;
                        for &v in &right {
                            seen.insert(v);
                        }
                        let meet = left.iter().position(|v| seen.contains(*v));
                        let cycle: Vec<Vertex> = match meet {
                            Some(ix) => {
                                let stop = left[ix];
                                left.truncate(ix + 1);
                                let mut c = left;
                                for &v in right.iter().take_while(|&&v| v != stop) {
                                    c.push(v);
                                }
                                c
                            }
                            None => {
                                left.extend(right);
                                left
                            }
                        };
                        let better = match &best {
                            Some(b) => cycle.len() < b.len(),
                            None => true,
                        };
                        if better {
                            best = Some(cycle);
                        }
                    }
                }
            }
            if best.is_some() {
                // One root's BFS is enough to find some short cycle;
                // scanning all roots only sharpens the branching.
                if best.as_ref().unwrap().len() <= 3 {
                    break;
                }
            }
        }
        best
    }
}

fn trail(parent: &[Option<(Vertex, Edge)>], mut v: Vertex) -> Vec<Vertex> {
    let mut out = vec![v];
    while let Some((p, _)) = parent[v.index()] {
        v = p;
        out.push(p);
    }
    out
}

/// Complete backtracking search for a stable partition, bypassing the
/// certificate routes.
pub fn stable_partition_bruteforce(g: &CubicGraph) -> SearchOutcome<DecyclingPartition> {
    PartitionSearch::run(g, None, false)
}

/// Complete backtracking search for a coherent partition, bypassing the
/// certificate routes.
pub fn coherent_partition_bruteforce(g: &CubicGraph) -> SearchOutcome<DecyclingPartition> {
    PartitionSearch::run(g, None, true)
}

/// Finds a stable decycling partition, or proves there is none. Routes
/// through the genus classification first (a refutation there is a proof
/// of nonexistence); falls back to the complete backtracking search.
pub fn find_stable_partition(
    g: &CubicGraph,
    budget: &SearchBudget,
) -> SearchOutcome<DecyclingPartition> {
    if !g.is_connected() {
        return SearchOutcome::Unknown;
    }
    match genus::classify_upper_embeddable(g, budget) {
        Embeddability::OneFace(cert) | Embeddability::TwoFace(cert) => {
            match partition_from_xuong(g, &cert) {
                Ok(p) => SearchOutcome::Found(p),
                Err(_) => PartitionSearch::run(g, None, false),
            }
        }
        Embeddability::NotUpperEmbeddable(w) => {
            debug_assert!(genus::validate_nebesky(g, &w));
            SearchOutcome::NoneExhausted(ExhaustionProof {
                space: format!(
                    "refuted: Nebeský witness with margin {} rules out upper embeddability, \
                     hence any stable partition",
                    w.margin()
                ),
                nodes: 0,
                complete: true,
            })
        }
        Embeddability::Unknown => PartitionSearch::run(g, None, false),
    }
}

/// Finds a coherent decycling partition, or proves there is none.
pub fn find_coherent_partition(
    g: &CubicGraph,
    budget: &SearchBudget,
) -> SearchOutcome<DecyclingPartition> {
    if !g.is_connected() {
        return SearchOutcome::Unknown;
    }
    match genus::classify_upper_embeddable(g, budget) {
        Embeddability::OneFace(cert) => match partition_from_xuong(g, &cert) {
            Ok(p) => {
                debug_assert!(p.class.coherent);
                SearchOutcome::Found(p)
            }
            Err(_) => PartitionSearch::run(g, None, true),
        },
        Embeddability::TwoFace(cert) => {
            let odd_is_loop = cert
                .odd_component()
                .map_or(false, |c| c.is_cycle && c.edge_count == 1);
            if odd_is_loop {
                // One loop plus a one-face remainder always lifts to a
                // coherent partition with the loop as surplus edge.
                return match partition_from_xuong(g, &cert) {
                    Ok(p) => SearchOutcome::Found(p),
                    Err(_) => PartitionSearch::run(g, None, true),
                };
            }
            match genus::classify_amply(g, budget, None) {
                Ok(AmplyVerdict::Amply(heavy)) => match partition_from_xuong(g, &heavy) {
                    Ok(p) => {
                        debug_assert!(p.class.coherent);
                        SearchOutcome::Found(p)
                    }
                    Err(_) => PartitionSearch::run(g, None, true),
                },
                // Loopless and no heavy Xuong tree: no coherent partition.
                Ok(AmplyVerdict::Tightly(proof)) => SearchOutcome::NoneExhausted(proof),
                _ => PartitionSearch::run(g, None, true),
            }
        }
        Embeddability::NotUpperEmbeddable(w) => SearchOutcome::NoneExhausted(ExhaustionProof {
            space: format!(
                "refuted: Nebeský witness with margin {} rules out upper embeddability, \
                 hence any stable partition",
                w.margin()
            ),
            nodes: 0,
            complete: true,
        }),
        Embeddability::Unknown => PartitionSearch::run(g, None, true),
    }
}

/// Stable partition with a pre-assigned vertex in the decycling set.
/// Guaranteed to exist on cyclically 4-edge-connected graphs; a failed
/// search there is an internal error, not a mathematical outcome.
pub fn find_partition_with_vertex(
    g: &CubicGraph,
    v: Vertex,
) -> Result<DecyclingPartition, DecyclingError> {
    if !crate::connectivity::is_c4c(g) {
        return Err(DecyclingError::NotC4C);
    }
    match PartitionSearch::run(g, Some(v), false) {
        SearchOutcome::Found(p) => Ok(p),
        SearchOutcome::NoneExhausted(_) => Err(DecyclingError::InternalSearchFailure),
        SearchOutcome::Unknown => Err(DecyclingError::TooLarge),
    }
}
