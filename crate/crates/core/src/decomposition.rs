//! 3-sums and the canonical decomposition of 3-connected cubic graphs
//! into cyclically 4-edge-connected factors, edge extension/reduction
//! chains, the recursive coherent-partition constructions, and odd
//! 2-sums of tightly embeddable graphs.

use crate::canonical::{canonical_code_capped, CanonicalCode};
use crate::connectivity::{self, is_c4c, nontrivial_three_cuts, CutWitness};
use crate::decycling::{
    self, classify_partition, DecyclingError, DecyclingPartition, PartitionKind,
};
use crate::generators::is_simple;
use crate::genus::{self, GenusError};
use crate::graph::{CubicGraph, Graph, GraphError};
use crate::set::{Dart, Edge, EdgeSet, Vertex, VertexSet};
use crate::SearchBudget;
use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum DecompositionError {
    Graph(GraphError),
    Genus(GenusError),
    Decycling(DecyclingError),
    /// 3-sum roots must be loop-free.
    RootHasLoop,
    /// 3-sum inputs must be bridgeless.
    NotBridgeless,
    /// The cut must leave two nontrivial sides.
    TrivialCut,
    /// The operation needs a 3-connected input.
    NotThreeConnected,
    /// Edge extension needs nonadjacent edges.
    AdjacentEdges,
    NotC4C,
    /// Guaranteed search failed: a bug indicator on verified input.
    InternalSearchFailure,
    /// Composition preconditions (c4c, even Betti, coherent input).
    PreconditionFailed(&'static str),
    /// The designated edge is not a verified odd edge.
    NotOddEdge,
    /// The two joining edges of a 2-sum must be independent.
    DependentJoins,
    /// Reduction would degenerate (too few vertices or a vanishing part).
    TooSmall,
}

impl From<GraphError> for DecompositionError {
    fn from(e: GraphError) -> Self {
        DecompositionError::Graph(e)
    }
}

impl From<GenusError> for DecompositionError {
    fn from(e: GenusError) -> Self {
        DecompositionError::Genus(e)
    }
}

impl From<DecyclingError> for DecompositionError {
    fn from(e: DecyclingError) -> Self {
        DecompositionError::Decycling(e)
    }
}

impl fmt::Display for DecompositionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionError::Graph(e) => write!(f, "{e}"),
            DecompositionError::Genus(e) => write!(f, "{e}"),
            DecompositionError::Decycling(e) => write!(f, "{e}"),
            DecompositionError::RootHasLoop => write!(f, "3-sum root carries a loop"),
            DecompositionError::NotBridgeless => write!(f, "3-sum inputs must be bridgeless"),
            DecompositionError::TrivialCut => write!(f, "cut side is a single vertex"),
            DecompositionError::NotThreeConnected => write!(f, "graph is not 3-connected"),
            DecompositionError::AdjacentEdges => write!(f, "edges share an endpoint"),
            DecompositionError::NotC4C => {
                write!(f, "graph is not cyclically 4-edge-connected")
            }
            DecompositionError::InternalSearchFailure => {
                write!(f, "guaranteed search failed; this is a bug")
            }
            DecompositionError::PreconditionFailed(why) => write!(f, "precondition failed: {why}"),
            DecompositionError::NotOddEdge => write!(f, "edge is not a verified odd edge"),
            DecompositionError::DependentJoins => write!(f, "joining edges share a vertex"),
            DecompositionError::TooSmall => write!(f, "operation would degenerate the graph"),
        }
    }
}

/// A computed 3-sum: the glued graph, the principal cut, and the vertex
/// maps from both summands (roots map to `None`).
#[derive(Clone, Debug)]
pub struct ThreeSum {
    pub graph: CubicGraph,
    pub root1: Vertex,
    pub root2: Vertex,
    /// Far-dart pairs that were identified, in gluing order.
    pub matching: [(Dart, Dart); 3],
    /// The three new edges, an edge cut of the result.
    pub principal_cut: EdgeSet,
    pub map1: Vec<Option<Vertex>>,
    pub map2: Vec<Option<Vertex>>,
}

/// Glues `g1 - v1` to `g2 - v2` across their dangling edges. `matching`
/// pairs the far darts of the roots' edges; `None` pairs them in slot
/// order. Inputs must be bridgeless and the roots loop-free.
pub fn three_sum(
    g1: &CubicGraph,
    v1: Vertex,
    g2: &CubicGraph,
    v2: Vertex,
    matching: Option<[(Dart, Dart); 3]>,
) -> Result<ThreeSum, DecompositionError> {
    if g1.has_loop_at(v1) || g2.has_loop_at(v2) {
        return Err(DecompositionError::RootHasLoop);
    }
    if !connectivity::bridges_and_blocks(g1).bridges.is_empty()
        || !connectivity::bridges_and_blocks(g2).bridges.is_empty()
    {
        return Err(DecompositionError::NotBridgeless);
    }
    let far = |g: &CubicGraph, v: Vertex| -> [Dart; 3] {
        let ds = g.darts_at(v);
        [ds[0].mate(), ds[1].mate(), ds[2].mate()]
    };
    let far1 = far(g1, v1);
    let far2 = far(g2, v2);
    let matching = match matching {
        Some(m) => {
            for (a, b) in m {
                if !far1.contains(&a) || !far2.contains(&b) {
                    return Err(DecompositionError::PreconditionFailed(
                        "matching must pair the dangling darts of the two roots",
                    ));
                }
            }
            m
        }
        None => [(far1[0], far2[0]), (far1[1], far2[1]), (far1[2], far2[2])],
    };

    let (rest1, map1) = g1.delete_vertices(&VertexSet::single(v1));
    let (rest2, map2) = g2.delete_vertices(&VertexSet::single(v2));
    let offset = rest1.vertex_count();
    let mut edges = rest1.edge_list();
    for (u, v) in rest2.edge_list() {
        edges.push((u + offset, v + offset));
    }
    let shifted_map2: Vec<Option<Vertex>> = map2
        .iter()
        .map(|m| m.map(|v| Vertex(v.0 + offset)))
        .collect();
    let mut principal_cut = EdgeSet::EMPTY;
    for (d1, d2) in matching {
        let a = map1[g1.dart_at(d1).index()].expect("far end survives");
        let b = shifted_map2[g2.dart_at(d2).index()].expect("far end survives");
        principal_cut.insert(Edge(edges.len() as u32));
        edges.push((a.0, b.0));
    }
    let graph = CubicGraph::build(rest1.vertex_count() + rest2.vertex_count(), &edges)?;
    if let (Ok(b1), Ok(b2), Ok(b)) = (g1.betti(), g2.betti(), graph.betti()) {
        debug_assert_eq!(b.value, b1.value + b2.value - 2);
    }
    Ok(ThreeSum { graph, root1: v1, root2: v2, matching, principal_cut, map1, map2: shifted_map2 })
}

/// One side of a split, made cubic again by a fresh root vertex.
#[derive(Clone, Debug)]
pub struct SplitPart {
    pub graph: CubicGraph,
    pub root: Vertex,
    /// Vertices of the parent graph to part ids.
    pub vertex_map: Vec<Option<Vertex>>,
}

/// Splits a 3-connected cubic graph at a nontrivial 3-cut into two cubic
/// graphs, each a side plus a root attached to its three dangling edges
/// in cut-id order. A 3-sum of the parts at their roots restores the
/// graph.
pub fn split_at_three_cut(
    g: &CubicGraph,
    cut: &CutWitness,
) -> Result<(SplitPart, SplitPart), DecompositionError> {
    if cut.cut.len() != 3 || !cut.both_sides_nontrivial {
        return Err(DecompositionError::TrivialCut);
    }
    if g.delta_cut(&cut.side_a)? != cut.cut {
        return Err(DecompositionError::PreconditionFailed("witness cut mismatch"));
    }
    let side_b = g.all_vertices().difference(&cut.side_a);
    let build = |side: &VertexSet| -> Result<SplitPart, DecompositionError> {
        let mut vertex_map = vec![None; g.vertex_count() as usize];
        let mut next = 0;
        for v in g.vertices() {
            if side.contains(v) {
                vertex_map[v.index()] = Some(Vertex(next));
                next += 1;
            }
        }
        let root = Vertex(next);
        let mut edges = Vec::new();
        for e in g.edges() {
            let (u, v) = g.endpoints(e);
            if side.contains(u) && side.contains(v) {
                edges.push((vertex_map[u.index()].unwrap().0, vertex_map[v.index()].unwrap().0));
            }
        }
        for e in cut.cut.iter() {
            let (u, v) = g.endpoints(e);
            let anchor = if side.contains(u) { u } else { v };
            edges.push((vertex_map[anchor.index()].unwrap().0, root.0));
        }
        Ok(SplitPart { graph: CubicGraph::build(next + 1, &edges)?, root, vertex_map })
    };
    Ok((build(&cut.side_a)?, build(&side_b)?))
}

/// A factor of the canonical decomposition.
#[derive(Clone, Debug)]
pub struct Factor {
    pub graph: CubicGraph,
    pub code: CanonicalCode,
    /// Per-vertex global labels: original vertex ids of the input, or
    /// fresh labels (from `n` upward) for roots added by splits.
    pub labels: Vec<u32>,
}

/// One split in the log.
#[derive(Clone, Debug)]
pub struct SplitRecord {
    /// Endpoint labels of the three cut edges, side-A label first.
    pub cut_labels: [(u32, u32); 3],
    /// Fresh labels of the two added roots (side A, side B).
    pub roots: (u32, u32),
}

/// How recombination nests, as a binary tree over factor indices.
#[derive(Clone, Debug)]
pub enum DecompShape {
    Leaf(usize),
    Sum {
        left: Box<DecompShape>,
        right: Box<DecompShape>,
        split: usize,
    },
}

#[derive(Clone, Debug)]
pub struct DecompositionTree {
    pub factors: Vec<Factor>,
    pub splits: Vec<SplitRecord>,
    pub shape: DecompShape,
}

impl DecompositionTree {
    /// Sorted factor codes, the invariant fingerprint of the
    /// decomposition.
    pub fn code_multiset(&self) -> Vec<CanonicalCode> {
        let mut codes: Vec<CanonicalCode> = self.factors.iter().map(|f| f.code.clone()).collect();
        codes.sort();
        codes
    }

    /// Rebuilds the original graph by replaying the 3-sums.
    pub fn recombine(&self) -> Result<CubicGraph, DecompositionError> {
        Ok(self.recombine_labeled()?.0)
    }

    fn recombine_labeled(&self) -> Result<(CubicGraph, Vec<u32>), DecompositionError> {
        self.rebuild(&self.shape)
    }

    fn rebuild(&self, node: &DecompShape) -> Result<(CubicGraph, Vec<u32>), DecompositionError> {
        match node {
            DecompShape::Leaf(i) => {
                let f = &self.factors[*i];
                Ok((f.graph.clone(), f.labels.clone()))
            }
            DecompShape::Sum { left, right, split } => {
                let (lg, ll) = self.rebuild(left)?;
                let (rg, rl) = self.rebuild(right)?;
                let rec = &self.splits[*split];
                let lroot = Vertex(find_label(&ll, rec.roots.0)?);
                let rroot = Vertex(find_label(&rl, rec.roots.1)?);
                let mut matching = [(Dart(0), Dart(0)); 3];
                for (i, (la, lb)) in rec.cut_labels.iter().enumerate() {
                    matching[i] = (
                        dangling_dart(&lg, lroot, Vertex(find_label(&ll, *la)?))?,
                        dangling_dart(&rg, rroot, Vertex(find_label(&rl, *lb)?))?,
                    );
                }
                let sum = three_sum(&lg, lroot, &rg, rroot, Some(matching))?;
                let mut labels = vec![0u32; sum.graph.vertex_count() as usize];
                for (old, new) in sum.map1.iter().enumerate() {
                    if let Some(nv) = new {
                        labels[nv.index()] = ll[old];
                    }
                }
                for (old, new) in sum.map2.iter().enumerate() {
                    if let Some(nv) = new {
                        labels[nv.index()] = rl[old];
                    }
                }
                Ok((sum.graph, labels))
            }
        }
    }
}

fn find_label(labels: &[u32], want: u32) -> Result<u32, DecompositionError> {
    labels
        .iter()
        .position(|&l| l == want)
        .map(|i| i as u32)
        .ok_or(DecompositionError::PreconditionFailed("label not present"))
}

/// The far dart at `attach` of the unique `root`–`attach` edge.
fn dangling_dart(
    g: &CubicGraph,
    root: Vertex,
    attach: Vertex,
) -> Result<Dart, DecompositionError> {
    for d in g.darts_at(root) {
        if g.dart_at(d.mate()) == attach {
            return Ok(d.mate());
        }
    }
    Err(DecompositionError::PreconditionFailed("attach vertex not adjacent to root"))
}

/// Which nontrivial cut each recursion step picks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitOrder {
    First,
    Last,
}

/// Iterated splitting at nontrivial 3-cuts until every factor is
/// cyclically 4-edge-connected. The factor code multiset is independent
/// of the split order; factor codes are capped like `canonical_code`.
pub fn canonical_decomposition(
    g: &CubicGraph,
    order: SplitOrder,
) -> Result<DecompositionTree, DecompositionError> {
    if !connectivity::is_three_connected(g) {
        return Err(DecompositionError::NotThreeConnected);
    }
    let mut tree = DecompositionTree {
        factors: Vec::new(),
        splits: Vec::new(),
        shape: DecompShape::Leaf(0),
    };
    let labels: Vec<u32> = (0..g.vertex_count()).collect();
    let mut fresh = g.vertex_count();
    tree.shape = decompose_rec(g, labels, order, &mut tree, &mut fresh)?;
    Ok(tree)
}

fn decompose_rec(
    g: &CubicGraph,
    labels: Vec<u32>,
    order: SplitOrder,
    tree: &mut DecompositionTree,
    fresh: &mut u32,
) -> Result<DecompShape, DecompositionError> {
    let cuts = nontrivial_three_cuts(g);
    let cut = match order {
        SplitOrder::First => cuts.first().cloned(),
        SplitOrder::Last => cuts.last().cloned(),
    };
    match cut {
        None => {
            debug_assert!(is_c4c(g));
            let code = canonical_code_capped(g, 64).map_err(DecompositionError::Graph)?;
            tree.factors.push(Factor { graph: g.clone(), code, labels });
            Ok(DecompShape::Leaf(tree.factors.len() - 1))
        }
        Some(cut) => {
            let (pa, pb) = split_at_three_cut(g, &cut)?;
            let root_a = *fresh;
            let root_b = *fresh + 1;
            *fresh += 2;
            let mut cut_edges: Vec<Edge> = cut.cut.iter().collect();
            cut_edges.sort();
            let mut cut_labels = [(0u32, 0u32); 3];
            for (i, e) in cut_edges.iter().enumerate() {
                let (u, v) = g.endpoints(*e);
                let (a, b) = if cut.side_a.contains(u) { (u, v) } else { (v, u) };
                cut_labels[i] = (labels[a.index()], labels[b.index()]);
            }
            let part_labels = |part: &SplitPart, root_label: u32| -> Vec<u32> {
                let mut out = vec![0u32; part.graph.vertex_count() as usize];
                for v in g.vertices() {
                    if let Some(pv) = part.vertex_map[v.index()] {
                        out[pv.index()] = labels[v.index()];
                    }
                }
                out[part.root.index()] = root_label;
                out
            };
            let la = part_labels(&pa, root_a);
            let lb = part_labels(&pb, root_b);
            tree.splits.push(SplitRecord { cut_labels, roots: (root_a, root_b) });
            let split_ix = tree.splits.len() - 1;
            let left = decompose_rec(&pa.graph, la, order, tree, fresh)?;
            let right = decompose_rec(&pb.graph, lb, order, tree, fresh)?;
            Ok(DecompShape::Sum { left: Box::new(left), right: Box::new(right), split: split_ix })
        }
    }
}

/// Subdivides two nonadjacent edges and joins the new vertices.
pub fn edge_extension(g: &CubicGraph, e: Edge, f: Edge) -> Result<CubicGraph, DecompositionError> {
    if e == f {
        return Err(DecompositionError::AdjacentEdges);
    }
    let (a, b) = g.endpoints(e);
    let (c, d) = g.endpoints(f);
    if a == c || a == d || b == c || b == d {
        return Err(DecompositionError::AdjacentEdges);
    }
    let (g1, u) = g.subdivide_edge(e);
    let (g2, v) = g1.subdivide_edge(f);
    let mut edges = g2.edge_list();
    edges.push((u.0, v.0));
    Ok(CubicGraph::build(g2.vertex_count(), &edges)?)
}

/// Record of one edge reduction `G -> G'`.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub graph: CubicGraph,
    /// The removed edge's endpoints in the parent graph.
    pub suppressed: (Vertex, Vertex),
    /// Parent vertices to reduced ids (`None` for the suppressed pair).
    pub vertex_map: Vec<Option<Vertex>>,
    /// The edge of the reduced graph that the first suppressed vertex
    /// subdivided, and likewise for the second.
    pub merged_a: Edge,
    pub merged_b: Edge,
}

/// Removes `e` and suppresses its two endpoints, undoing an extension.
/// May create loops or parallel edges; the caller decides whether to
/// keep the result.
pub fn edge_reduction(g: &CubicGraph, e: Edge) -> Result<ReductionStep, DecompositionError> {
    let (u, v) = g.endpoints(e);
    if u == v {
        return Err(DecompositionError::PreconditionFailed("cannot reduce a loop"));
    }
    if g.vertex_count() < 6 {
        return Err(DecompositionError::TooSmall);
    }
    let mut edges = Vec::new();
    let mut mid_of_g = vec![None; g.edge_count() as usize];
    for old in g.edges() {
        if old == e {
            continue;
        }
        let (x, y) = g.endpoints(old);
        mid_of_g[old.index()] = Some(Edge(edges.len() as u32));
        edges.push((x.0, y.0));
    }
    let mid = Graph::from_edges(g.vertex_count(), &edges)?;
    let s1 = mid.suppress_vertex(u).map_err(DecompositionError::Graph)?;
    let m1 = s1.merged.as_ref().ok_or(DecompositionError::TooSmall)?;
    let v_in_s1 = s1.vertex_map[v.index()].ok_or(DecompositionError::TooSmall)?;
    let s2 = s1.graph.suppress_vertex(v_in_s1).map_err(DecompositionError::Graph)?;
    let m2 = s2.merged.as_ref().ok_or(DecompositionError::TooSmall)?;
    let merged_a = s2.edge_map[m1.edge.index()].ok_or(DecompositionError::TooSmall)?;
    let merged_b = m2.edge;
    let graph = CubicGraph::from_graph(s2.graph.clone())?;
    let mut vertex_map = vec![None; g.vertex_count() as usize];
    for x in g.vertices() {
        if x == u || x == v {
            continue;
        }
        if let Some(x1) = s1.vertex_map[x.index()] {
            vertex_map[x.index()] = s2.vertex_map[x1.index()];
        }
    }
    Ok(ReductionStep { graph, suppressed: (u, v), vertex_map, merged_a, merged_b })
}

/// Where a reduction chain bottoms out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainTerminal {
    K4,
    Q3,
}

/// A Wormald chain: repeated edge reductions through cyclically
/// 4-edge-connected graphs down to `K4` or `Q3`.
#[derive(Clone, Debug)]
pub struct ReductionChain {
    /// `(edge removed, suppressed endpoints)` per step, in the
    /// coordinates of that step's parent graph.
    pub steps: Vec<(Edge, (Vertex, Vertex))>,
    /// Every stage, from the input down to the terminal graph.
    pub stages: Vec<CubicGraph>,
    pub terminal: ChainTerminal,
}

fn terminal_of(g: &CubicGraph) -> Option<ChainTerminal> {
    if g.vertex_count() == 4 && is_simple(g) {
        return Some(ChainTerminal::K4);
    }
    if g.vertex_count() == 8
        && crate::canonical::is_isomorphic(g, &crate::generators::named(crate::generators::Named::Q3))
    {
        return Some(ChainTerminal::Q3);
    }
    None
}

fn acceptable_reduction(g: &CubicGraph, e: Edge) -> Option<ReductionStep> {
    let step = edge_reduction(g, e).ok()?;
    if !is_simple(&step.graph) || !is_c4c(&step.graph) {
        return None;
    }
    Some(step)
}

/// Greedy chain search: scan edges in id order and keep the first
/// reduction that stays simple and cyclically 4-edge-connected. Existence
/// at every stage is guaranteed for c4c inputs other than the terminals.
pub fn find_reduction_chain(g: &CubicGraph) -> Result<ReductionChain, DecompositionError> {
    if !is_c4c(g) {
        return Err(DecompositionError::NotC4C);
    }
    if terminal_of(g).is_some() {
        return Err(DecompositionError::PreconditionFailed("input is already a terminal"));
    }
    let mut steps = Vec::new();
    let mut stages = vec![g.clone()];
    let mut current = g.clone();
    loop {
        if let Some(t) = terminal_of(&current) {
            return Ok(ReductionChain { steps, stages, terminal: t });
        }
        let step = current
            .edges()
            .find_map(|e| acceptable_reduction(&current, e).map(|s| (e, s)));
        match step {
            Some((e, s)) => {
                steps.push((e, s.suppressed));
                stages.push(s.graph.clone());
                current = s.graph;
            }
            None => return Err(DecompositionError::InternalSearchFailure),
        }
    }
}

/// Coherent decycling partition of a cyclically 4-edge-connected cubic
/// graph, by the reduce-extend recursion: one Wormald step down to order
/// `2 (mod 4)`, a stable partition there with a pre-assigned vertex, and
/// the two-vertex lift back.
pub fn coherent_partition_c4c(g: &CubicGraph) -> Result<DecyclingPartition, DecompositionError> {
    if !is_c4c(g) {
        return Err(DecompositionError::NotC4C);
    }
    let n = g.vertex_count();
    if n % 4 == 2 {
        // Every stable partition is coherent here.
        let p = match decycling::find_stable_partition(g, &SearchBudget::default()) {
            crate::SearchOutcome::Found(p) => p,
            _ => return Err(DecompositionError::InternalSearchFailure),
        };
        debug_assert_eq!(p.class.kind, PartitionKind::TreeIndependent);
        return Ok(p);
    }
    if n <= 8 {
        // Base cases K4 and Q3: complete search stands in for the
        // hardcoded partitions under arbitrary labelings.
        return match decycling::coherent_partition_bruteforce(g) {
            crate::SearchOutcome::Found(p) => Ok(p),
            _ => Err(DecompositionError::InternalSearchFailure),
        };
    }
    // One reduction step lands in the 2 (mod 4) case.
    let step = g
        .edges()
        .find_map(|e| acceptable_reduction(g, e))
        .ok_or(DecompositionError::InternalSearchFailure)?;
    let reduced = &step.graph;
    debug_assert_eq!(reduced.vertex_count() % 4, 2);
    // Pre-assign the lower endpoint of the edge the first suppressed
    // vertex subdivided.
    let x = {
        let (a, b) = reduced.endpoints(step.merged_a);
        a.min(b)
    };
    let inner = decycling::find_partition_with_vertex(reduced, x)?;
    debug_assert_eq!(inner.class.kind, PartitionKind::TreeIndependent);
    // Lift: u (subdividing the J-incident edge) joins J, v joins A.
    let (u, v) = step.suppressed;
    let mut a = VertexSet::single(v);
    let mut j = VertexSet::single(u);
    for w in g.vertices() {
        if let Some(rw) = step.vertex_map[w.index()] {
            if inner.a.contains(rw) {
                a.insert(w);
            } else if inner.j.contains(rw) {
                j.insert(w);
            }
        }
    }
    let class = classify_partition(g, &a, &j)?;
    if class.kind != PartitionKind::TreeNearIndependent {
        return Err(DecompositionError::InternalSearchFailure);
    }
    Ok(DecyclingPartition { a, j, class })
}

/// Composes a coherent partition of `h` across a 3-sum with a cyclically
/// 4-edge-connected, cyclically even factor `k`, returning the sum and a
/// coherent partition of it.
pub fn compose_coherent_over_three_sum(
    h: &CubicGraph,
    x: Vertex,
    k: &CubicGraph,
    y: Vertex,
    matching: Option<[(Dart, Dart); 3]>,
    p_h: &DecyclingPartition,
) -> Result<(ThreeSum, DecyclingPartition), DecompositionError> {
    if !is_c4c(k) {
        return Err(DecompositionError::PreconditionFailed("factor is not c4c"));
    }
    match k.betti() {
        Ok(b) if b.cyclically_even => {}
        _ => return Err(DecompositionError::PreconditionFailed("factor Betti number is odd")),
    }
    let class = classify_partition(h, &p_h.a, &p_h.j)?;
    if !class.coherent {
        return Err(DecompositionError::PreconditionFailed("partition of h is not coherent"));
    }

    let sum = three_sum(h, x, k, y, matching)?;
    // Principal pairs as (x_i in h, y_i in k).
    let pairs: Vec<(Vertex, Vertex)> = sum
        .matching
        .iter()
        .map(|&(dh, dk)| (h.dart_at(dh), k.dart_at(dk)))
        .collect();

    let p_k;
    let (a, j);
    if p_h.j.contains(x) {
        // The factor partition must keep y on the tree side; prescribing
        // a neighbour of y inside J_K forces that. When the surplus edge
        // of h ends at x, the prescribed neighbour sits across from it.
        let surplus_partner = h
            .induced_edges(&p_h.j)
            .first()
            .map(|e| h.endpoints(e))
            .and_then(|(s, t)| {
                if s == x {
                    Some(t)
                } else if t == x {
                    Some(s)
                } else {
                    None
                }
            });
        let target_y = match surplus_partner {
            Some(x3) => {
                pairs
                    .iter()
                    .find(|(xi, _)| *xi == x3)
                    .ok_or(DecompositionError::PreconditionFailed(
                        "surplus partner is not a neighbour of the root",
                    ))?
                    .1
            }
            None => pairs[0].1,
        };
        p_k = decycling::find_partition_with_vertex(k, target_y)?;
        if p_k.j.contains(y) {
            return Err(DecompositionError::InternalSearchFailure);
        }
        let mut aa = VertexSet::EMPTY;
        let mut jj = VertexSet::EMPTY;
        for w in h.vertices() {
            if let Some(gw) = sum.map1[w.index()] {
                if p_h.a.contains(w) {
                    aa.insert(gw);
                } else {
                    jj.insert(gw);
                }
            }
        }
        for w in k.vertices() {
            if let Some(gw) = sum.map2[w.index()] {
                if p_k.a.contains(w) {
                    aa.insert(gw);
                } else {
                    jj.insert(gw);
                }
            }
        }
        (a, j) = (aa, jj);
    } else {
        // Root of h on the tree side: pre-assign y itself to J_K.
        p_k = decycling::find_partition_with_vertex(k, y)?;
        let mut aa = VertexSet::EMPTY;
        let mut jj = VertexSet::EMPTY;
        for w in h.vertices() {
            if let Some(gw) = sum.map1[w.index()] {
                if p_h.a.contains(w) {
                    aa.insert(gw);
                } else {
                    jj.insert(gw);
                }
            }
        }
        for w in k.vertices() {
            if let Some(gw) = sum.map2[w.index()] {
                if p_k.a.contains(w) {
                    aa.insert(gw);
                } else {
                    jj.insert(gw);
                }
            }
        }
        (a, j) = (aa, jj);
    }
    let class = classify_partition(&sum.graph, &a, &j)?;
    if !class.coherent {
        return Err(DecompositionError::InternalSearchFailure);
    }
    Ok((sum.clone(), DecyclingPartition { a, j, class }))
}

/// Outcome of the 3-connected coherent-partition pipeline.
#[derive(Clone, Debug)]
pub struct ThreeConnectedCoherent {
    pub result: crate::SearchOutcome<DecyclingPartition>,
    /// Cyclically odd factors in the canonical decomposition.
    pub odd_factors: u32,
    /// True when the decomposition route produced the partition.
    pub via_decomposition: bool,
    /// Set when the graph is verified upper-embeddable yet an exhaustive
    /// search found no coherent partition; such an instance must be
    /// reported, never suppressed.
    pub conjecture_counterexample: bool,
}

/// A peel step: one cyclically even c4c leaf factor removed from the
/// graph across a nontrivial 3-cut.
struct Peel {
    factor: SplitPart,
    rest: SplitPart,
    /// Cut endpoints, `(rest side, factor side)` per cut edge in id order.
    cut_pairs: Vec<(Vertex, Vertex)>,
}

/// Coherent partition of a 3-connected cubic graph whose canonical
/// decomposition has at most one cyclically odd factor: peel cyclically
/// even c4c leaf factors until the core remains, then rebuild with the
/// composition step. With `allow_fallback`, inapplicable cases run the
/// complete backtracking search instead of returning early.
pub fn coherent_partition_3connected(
    g: &CubicGraph,
    allow_fallback: bool,
    budget: &SearchBudget,
) -> Result<ThreeConnectedCoherent, DecompositionError> {
    if !connectivity::is_three_connected(g) {
        return Err(DecompositionError::NotThreeConnected);
    }
    let tree = canonical_decomposition(g, SplitOrder::First)?;
    let odd_factors = tree
        .factors
        .iter()
        .filter(|f| !f.graph.betti().map(|b| b.cyclically_even).unwrap_or(true))
        .count() as u32;

    if odd_factors >= 2 {
        if !allow_fallback {
            return Ok(ThreeConnectedCoherent {
                result: crate::SearchOutcome::Unknown,
                odd_factors,
                via_decomposition: false,
                conjecture_counterexample: false,
            });
        }
        let result = decycling::find_coherent_partition(g, budget);
        let counterexample = result.is_none_exhausted()
            && matches!(
                genus::classify_upper_embeddable(g, budget),
                genus::Embeddability::OneFace(_) | genus::Embeddability::TwoFace(_)
            );
        return Ok(ThreeConnectedCoherent {
            result,
            odd_factors,
            via_decomposition: false,
            conjecture_counterexample: counterexample,
        });
    }

    // Peel even leaf factors until the core (the odd factor, if any).
    let mut peels: Vec<Peel> = Vec::new();
    let mut current = g.clone();
    loop {
        if is_c4c(&current) {
            break;
        }
        let peel = find_even_leaf_peel(&current)?;
        current = peel.rest.graph.clone();
        peels.push(peel);
    }

    // Rebuild, composing the coherent partition outward.
    let mut partition = coherent_partition_c4c(&current)?;
    // Identity map from composite ids to the ids of `current`.
    let mut to_stage: Vec<Vertex> = (0..current.vertex_count()).map(Vertex).collect();
    let mut composite = current;
    for peel in peels.iter().rev() {
        // The composite plays H; its root is the rest-side root vertex.
        let root_h = {
            let stage_root = peel.rest.root;
            Vertex(
                to_stage
                    .iter()
                    .position(|&v| v == stage_root)
                    .ok_or(DecompositionError::InternalSearchFailure)? as u32,
            )
        };
        let root_k = peel.factor.root;
        let mut matching = [(Dart(0), Dart(0)); 3];
        for (i, (rest_v, fact_v)) in peel.cut_pairs.iter().enumerate() {
            let rest_stage = peel.rest.vertex_map[rest_v.index()]
                .ok_or(DecompositionError::InternalSearchFailure)?;
            let rest_comp = Vertex(
                to_stage
                    .iter()
                    .position(|&v| v == rest_stage)
                    .ok_or(DecompositionError::InternalSearchFailure)? as u32,
            );
            let fact_part = peel.factor.vertex_map[fact_v.index()]
                .ok_or(DecompositionError::InternalSearchFailure)?;
            matching[i] = (
                dangling_dart(&composite, root_h, rest_comp)?,
                dangling_dart(&peel.factor.graph, root_k, fact_part)?,
            );
        }
        let p_h = DecyclingPartition {
            a: partition.a,
            j: partition.j,
            class: partition.class,
        };
        let (sum, p) = compose_coherent_over_three_sum(
            &composite,
            root_h,
            &peel.factor.graph,
            root_k,
            Some(matching),
            &p_h,
        )?;
        // New composite corresponds to the pre-peel stage: map ids.
        let mut next_to_stage = vec![Vertex(0); sum.graph.vertex_count() as usize];
        for (old, new) in sum.map1.iter().enumerate() {
            if let Some(nv) = new {
                // composite vertex -> rest-part stage vertex -> pre-peel vertex
                let stage_v = to_stage[old];
                let pre = peel
                    .rest
                    .vertex_map
                    .iter()
                    .position(|&m| m == Some(stage_v))
                    .ok_or(DecompositionError::InternalSearchFailure)?;
                next_to_stage[nv.index()] = Vertex(pre as u32);
            }
        }
        for (old, new) in sum.map2.iter().enumerate() {
            if let Some(nv) = new {
                let pre = peel
                    .factor
                    .vertex_map
                    .iter()
                    .position(|&m| m == Some(Vertex(old as u32)))
                    .ok_or(DecompositionError::InternalSearchFailure)?;
                next_to_stage[nv.index()] = Vertex(pre as u32);
            }
        }
        composite = sum.graph;
        to_stage = next_to_stage;
        partition = p;
    }

    // Translate the partition back onto g's own vertex ids.
    let mut a = VertexSet::EMPTY;
    let mut j = VertexSet::EMPTY;
    for v in composite.vertices() {
        let orig = to_stage[v.index()];
        if partition.a.contains(v) {
            a.insert(orig);
        } else {
            j.insert(orig);
        }
    }
    let class = classify_partition(g, &a, &j)?;
    if !class.coherent {
        return Err(DecompositionError::InternalSearchFailure);
    }
    Ok(ThreeConnectedCoherent {
        result: crate::SearchOutcome::Found(DecyclingPartition { a, j, class }),
        odd_factors,
        via_decomposition: true,
        conjecture_counterexample: false,
    })
}

/// Finds a nontrivial 3-cut one side of which closes to a cyclically
/// even c4c factor, and splits there.
fn find_even_leaf_peel(g: &CubicGraph) -> Result<Peel, DecompositionError> {
    let cuts = nontrivial_three_cuts(g);
    for cut in &cuts {
        for flip in [false, true] {
            let witness = if flip {
                let side_b = g.all_vertices().difference(&cut.side_a);
                CutWitnessFlip { side: side_b, cut: cut.cut }
            } else {
                CutWitnessFlip { side: cut.side_a, cut: cut.cut }
            };
            let oriented = CutWitness {
                cut: witness.cut,
                side_a: witness.side,
                cycle_separating: cut.cycle_separating,
                both_sides_nontrivial: cut.both_sides_nontrivial,
                side_a_betti_odd: false,
                side_b_betti_odd: false,
            };
            let (fact, rest) = split_at_three_cut(g, &rebuilt_witness(g, &oriented)?)?;
            let beta_even = fact
                .graph
                .betti()
                .map(|b| b.cyclically_even)
                .unwrap_or(false);
            if beta_even && is_c4c(&fact.graph) {
                let mut cut_edges: Vec<Edge> = witness.cut.iter().collect();
                cut_edges.sort();
                let cut_pairs = cut_edges
                    .iter()
                    .map(|&e| {
                        let (u, v) = g.endpoints(e);
                        if witness.side.contains(u) {
                            (v, u)
                        } else {
                            (u, v)
                        }
                    })
                    .collect();
                return Ok(Peel { factor: fact, rest, cut_pairs });
            }
        }
    }
    Err(DecompositionError::InternalSearchFailure)
}

struct CutWitnessFlip {
    side: VertexSet,
    cut: EdgeSet,
}

fn rebuilt_witness(g: &CubicGraph, w: &CutWitness) -> Result<CutWitness, DecompositionError> {
    let cut = g.delta_cut(&w.side_a)?;
    let side_b = g.all_vertices().difference(&w.side_a);
    let ra = g.induced_subgraph(&w.side_a);
    let rb = g.induced_subgraph(&side_b);
    Ok(CutWitness {
        cut,
        side_a: w.side_a,
        cycle_separating: !ra.acyclic && !rb.acyclic,
        both_sides_nontrivial: ra.vertex_count >= 2 && rb.vertex_count >= 2,
        side_a_betti_odd: ra.betti() % 2 == 1,
        side_b_betti_odd: rb.betti() % 2 == 1,
    })
}

/// Joins two tightly two-face-embeddable graphs at verified odd edges:
/// removes both edges and adds two independent edges across. The result
/// is 2-connected with the new edges as its principal 2-edge-cut.
pub fn odd_two_sum(
    g1: &CubicGraph,
    e1: Edge,
    g2: &CubicGraph,
    e2: Edge,
    cross: bool,
    budget: &SearchBudget,
) -> Result<CubicGraph, DecompositionError> {
    for (g, e) in [(g1, e1), (g2, e2)] {
        let odd = genus::odd_edges(g, budget).map_err(DecompositionError::Genus)?;
        if !odd.contains(e) {
            return Err(DecompositionError::NotOddEdge);
        }
    }
    let (a1, b1) = g1.endpoints(e1);
    let (a2, b2) = g2.endpoints(e2);
    if a1 == b1 || a2 == b2 {
        return Err(DecompositionError::DependentJoins);
    }
    let offset = g1.vertex_count();
    let mut edges: Vec<(u32, u32)> = g1
        .edges()
        .filter(|&e| e != e1)
        .map(|e| {
            let (u, v) = g1.endpoints(e);
            (u.0, v.0)
        })
        .collect();
    for e in g2.edges().filter(|&e| e != e2) {
        let (u, v) = g2.endpoints(e);
        edges.push((u.0 + offset, v.0 + offset));
    }
    let (t1, t2) = if cross { (b2, a2) } else { (a2, b2) };
    edges.push((a1.0, t1.0 + offset));
    edges.push((b1.0, t2.0 + offset));
    let graph = CubicGraph::build(g1.vertex_count() + g2.vertex_count(), &edges)?;
    debug_assert!(connectivity::bridges_and_blocks(&graph).bridges.is_empty());
    Ok(graph)
}
