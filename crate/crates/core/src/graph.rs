//! Dart-based multigraphs and the validated cubic wrapper.
//!
//! Every edge `e` owns two darts `2e` and `2e+1`; each dart is attached to
//! exactly one vertex, a loop attaches both darts of its edge to the same
//! vertex. Operations address edges by id, never by endpoint pair, so
//! parallel edges are first-class. Graphs are immutable once built;
//! surgery operations return new graphs together with id maps.

use crate::set::{Dart, Edge, EdgeSet, Vertex, VertexSet, SET_CAPACITY};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// A vertex does not have the required valency.
    DegreeViolation { vertex: Vertex, degree: u32 },
    /// Cubic graphs must have an even number of vertices.
    OddOrder,
    /// The graph exceeds the fixed set capacity or an exhaustive cap.
    TooLarge,
    /// The operation needs a connected graph.
    Disconnected,
    /// `delta_cut` needs a nonempty proper vertex subset.
    EmptySide,
    /// `suppress_vertex` needs a 2-valent vertex.
    NotDegreeTwo { vertex: Vertex, degree: u32 },
    /// An edge or vertex id outside the graph's range.
    BadIndex,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::DegreeViolation { vertex, degree } => {
                write!(f, "vertex {:?} has degree {degree}, expected 3", vertex)
            }
            GraphError::OddOrder => write!(f, "cubic graphs have an even number of vertices"),
            GraphError::TooLarge => write!(f, "graph exceeds the supported size"),
            GraphError::Disconnected => write!(f, "graph is not connected"),
            GraphError::EmptySide => write!(f, "cut side must be a nonempty proper subset"),
            GraphError::NotDegreeTwo { vertex, degree } => {
                write!(f, "vertex {:?} has degree {degree}, expected 2", vertex)
            }
            GraphError::BadIndex => write!(f, "id out of range"),
        }
    }
}

/// Betti number of a connected graph together with its parity class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Betti {
    pub value: u32,
    /// True iff the graph is cyclically even (`value` is even).
    pub cyclically_even: bool,
}

/// General multigraph with loops and parallel edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    dart_vertex: Vec<Vertex>,
    vertex_darts: Vec<Vec<Dart>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for e in self.edges() {
            let (u, v) = self.endpoints(e);
            write!(f, "{}{}-{}", if e.0 > 0 { " " } else { "" }, u.0, v.0)?;
        }
        write!(f, "])")
    }
}

impl Graph {
    /// Builds a multigraph from endpoint pairs. `u == v` denotes a loop;
    /// repeated pairs are parallel edges. Dart numbering is determined by
    /// the input order.
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        if n as usize > SET_CAPACITY || edges.len() > SET_CAPACITY {
            return Err(GraphError::TooLarge);
        }
        let mut dart_vertex = Vec::with_capacity(2 * edges.len());
        let mut vertex_darts = vec![Vec::new(); n as usize];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::BadIndex);
            }
            let (du, dv) = Edge(i as u32).darts();
            dart_vertex.push(Vertex(u));
            dart_vertex.push(Vertex(v));
            vertex_darts[u as usize].push(du);
            vertex_darts[v as usize].push(dv);
        }
        Ok(Graph { n, dart_vertex, vertex_darts })
    }

    #[inline]
    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> u32 {
        (self.dart_vertex.len() / 2) as u32
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.n).map(Vertex)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> {
        (0..self.edge_count()).map(Edge)
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn all_edges(&self) -> EdgeSet {
        self.edges().collect()
    }

    #[inline]
    pub fn dart_at(&self, d: Dart) -> Vertex {
        self.dart_vertex[d.index()]
    }

    #[inline]
    pub fn endpoints(&self, e: Edge) -> (Vertex, Vertex) {
        let (a, b) = e.darts();
        (self.dart_vertex[a.index()], self.dart_vertex[b.index()])
    }

    #[inline]
    pub fn is_loop(&self, e: Edge) -> bool {
        let (u, v) = self.endpoints(e);
        u == v
    }

    /// Given one endpoint, the other one (itself for a loop).
    pub fn other_end(&self, e: Edge, v: Vertex) -> Vertex {
        let (a, b) = self.endpoints(e);
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Darts attached to `v`, in construction order. A loop contributes
    /// both of its darts.
    #[inline]
    pub fn darts_at(&self, v: Vertex) -> &[Dart] {
        &self.vertex_darts[v.index()]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> u32 {
        self.vertex_darts[v.index()].len() as u32
    }

    /// Edges incident with `v`; a loop is reported twice.
    pub fn edges_at(&self, v: Vertex) -> impl Iterator<Item = Edge> + '_ {
        self.darts_at(v).iter().map(|d| d.edge())
    }

    /// Distinct edges incident with `v` (each loop once).
    pub fn distinct_edges_at(&self, v: Vertex) -> EdgeSet {
        self.edges_at(v).collect()
    }

    pub fn loops_at(&self, v: Vertex) -> u32 {
        self.darts_at(v)
            .iter()
            .filter(|d| self.is_loop(d.edge()))
            .count() as u32
            / 2
    }

    pub fn has_loop_at(&self, v: Vertex) -> bool {
        self.loops_at(v) > 0
    }

    /// Number of `u`–`v` edges, not counting loops.
    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        if u == v {
            return 0;
        }
        self.edges_at(u)
            .filter(|&e| self.other_end(e, u) == v)
            .count() as u32
    }

    pub fn are_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.multiplicity(u, v) > 0
    }

    pub fn edge_list(&self) -> Vec<(u32, u32)> {
        self.edges()
            .map(|e| {
                let (u, v) = self.endpoints(e);
                (u.0, v.0)
            })
            .collect()
    }

    /// Component id per vertex plus component count.
    pub fn components(&self) -> (u32, Vec<u32>) {
        self.components_excluding(&EdgeSet::EMPTY)
    }

    /// Components of the graph with `removed` edges deleted.
    pub fn components_excluding(&self, removed: &EdgeSet) -> (u32, Vec<u32>) {
        let mut comp = vec![u32::MAX; self.n as usize];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if comp[start as usize] != u32::MAX {
                continue;
            }
            comp[start as usize] = count;
            stack.push(Vertex(start));
            while let Some(v) = stack.pop() {
                for d in self.darts_at(v) {
                    if removed.contains(d.edge()) {
                        continue;
                    }
                    let w = self.dart_at(d.mate());
                    if comp[w.index()] == u32::MAX {
                        comp[w.index()] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().0 == 1
    }

    /// Betti number `m - n + 1` with its parity flag.
    pub fn betti(&self) -> Result<Betti, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let value = self.edge_count() + 1 - self.n;
        Ok(Betti { value, cyclically_even: value % 2 == 0 })
    }

    /// The edge cut `delta(a)`: all edges with exactly one endpoint in
    /// `a`. Loops are never part of a cut.
    pub fn delta_cut(&self, a: &VertexSet) -> Result<EdgeSet, GraphError> {
        let inside = a.len();
        if inside == 0 || inside >= self.n {
            return Err(GraphError::EmptySide);
        }
        let mut cut = EdgeSet::EMPTY;
        for e in self.edges() {
            let (u, v) = self.endpoints(e);
            if a.contains(u) != a.contains(v) {
                cut.insert(e);
            }
        }
        Ok(cut)
    }

    /// Edges of the subgraph induced by `s` (loops on `s` included).
    pub fn induced_edges(&self, s: &VertexSet) -> EdgeSet {
        let mut edges = EdgeSet::EMPTY;
        for e in self.edges() {
            let (u, v) = self.endpoints(e);
            if s.contains(u) && s.contains(v) {
                edges.insert(e);
            }
        }
        edges
    }

    /// Structural report on the subgraph induced by `s`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> SubgraphReport {
        let edges = self.induced_edges(s);
        self.subgraph_report(s, &edges)
    }

    /// Report on an explicit sub-multigraph `(s, edges)`; every edge must
    /// have both endpoints in `s`.
    pub fn subgraph_report(&self, s: &VertexSet, edges: &EdgeSet) -> SubgraphReport {
        let vertex_count = s.len();
        let edge_count = edges.len();
        let mut dsu = Dsu::new(self.n as usize);
        let mut acyclic = true;
        for e in edges.iter() {
            let (u, v) = self.endpoints(e);
            debug_assert!(s.contains(u) && s.contains(v));
            if !dsu.union(u.index(), v.index()) {
                acyclic = false;
            }
        }
        let mut components = 0;
        for v in s.iter() {
            if dsu.find(v.index()) == v.index() {
                components += 1;
            }
        }
        SubgraphReport {
            vertices: *s,
            edges: *edges,
            vertex_count,
            edge_count,
            components,
            acyclic,
            is_tree: acyclic && components == 1 && vertex_count > 0,
        }
    }

    /// True iff the spanning subgraph on `edges` is acyclic.
    pub fn is_acyclic(&self, edges: &EdgeSet) -> bool {
        let mut dsu = Dsu::new(self.n as usize);
        for e in edges.iter() {
            let (u, v) = self.endpoints(e);
            if !dsu.union(u.index(), v.index()) {
                return false;
            }
        }
        true
    }

    /// Edge sets of the components of the spanning subgraph on `edges`.
    /// Ordered by smallest contained edge id.
    pub fn edge_subset_components(&self, edges: &EdgeSet) -> Vec<EdgeSet> {
        let mut dsu = Dsu::new(self.n as usize);
        for e in edges.iter() {
            let (u, v) = self.endpoints(e);
            dsu.union(u.index(), v.index());
        }
        let mut out: Vec<(usize, EdgeSet)> = Vec::new();
        for e in edges.iter() {
            let root = dsu.find(self.endpoints(e).0.index());
            match out.iter_mut().find(|(r, _)| *r == root) {
                Some((_, set)) => set.insert(e),
                None => out.push((root, EdgeSet::single(e))),
            }
        }
        out.into_iter().map(|(_, set)| set).collect()
    }

    /// Subdivides `e` with a fresh vertex. The `u`-side half keeps the id
    /// of `e`, the `v`-side half becomes the last edge id.
    pub fn subdivide_edge(&self, e: Edge) -> (Graph, Vertex) {
        let (u, v) = self.endpoints(e);
        let w = Vertex(self.n);
        let mut edges = self.edge_list();
        edges[e.index()] = (u.0, w.0);
        edges.push((w.0, v.0));
        let g = Graph::from_edges(self.n + 1, &edges).expect("subdivision stays in capacity");
        (g, w)
    }

    /// Removes a 2-valent vertex and merges its two incident edges.
    /// The merged edge gets the last edge id of the result.
    pub fn suppress_vertex(&self, v: Vertex) -> Result<Suppression, GraphError> {
        if self.degree(v) != 2 {
            return Err(GraphError::NotDegreeTwo { vertex: v, degree: self.degree(v) });
        }
        let darts = self.darts_at(v);
        let (d1, d2) = (darts[0], darts[1]);
        let vertex_map = shift_map(self.n, v);
        let remap = |x: Vertex| vertex_map[x.index()].expect("endpoint survives");
        if d1.edge() == d2.edge() {
            // Isolated loop vertex: the closed curve disappears with it.
            let mut edges = Vec::new();
            let mut edge_map = vec![None; self.edge_count() as usize];
            for e in self.edges() {
                if e == d1.edge() {
                    continue;
                }
                let (a, b) = self.endpoints(e);
                edge_map[e.index()] = Some(Edge(edges.len() as u32));
                edges.push((remap(a).0, remap(b).0));
            }
            let g = Graph::from_edges(self.n - 1, &edges).expect("shrinking stays in capacity");
            return Ok(Suppression { graph: g, vertex_map, edge_map, merged: None });
        }
        let (e1, e2) = (d1.edge(), d2.edge());
        let a = self.dart_at(d1.mate());
        let b = self.dart_at(d2.mate());
        let mut edges = Vec::new();
        let mut edge_map = vec![None; self.edge_count() as usize];
        for e in self.edges() {
            if e == e1 || e == e2 {
                continue;
            }
            let (x, y) = self.endpoints(e);
            edge_map[e.index()] = Some(Edge(edges.len() as u32));
            edges.push((remap(x).0, remap(y).0));
        }
        let merged_edge = Edge(edges.len() as u32);
        edges.push((remap(a).0, remap(b).0));
        let g = Graph::from_edges(self.n - 1, &edges).expect("shrinking stays in capacity");
        Ok(Suppression {
            graph: g,
            vertex_map,
            edge_map,
            merged: Some(MergedEdge {
                edge: merged_edge,
                old_halves: (e1, e2),
                old_far_ends: (a, b),
            }),
        })
    }

    /// Deletes a set of vertices together with all incident edges.
    pub fn delete_vertices(&self, kill: &VertexSet) -> (Graph, Vec<Option<Vertex>>) {
        let mut vertex_map = vec![None; self.n as usize];
        let mut next = 0;
        for v in self.vertices() {
            if !kill.contains(v) {
                vertex_map[v.index()] = Some(Vertex(next));
                next += 1;
            }
        }
        let mut edges = Vec::new();
        for e in self.edges() {
            let (u, v) = self.endpoints(e);
            if let (Some(u2), Some(v2)) = (vertex_map[u.index()], vertex_map[v.index()]) {
                edges.push((u2.0, v2.0));
            }
        }
        let g = Graph::from_edges(next, &edges).expect("shrinking stays in capacity");
        (g, vertex_map)
    }

    /// Enumerates every spanning tree exactly once (include/exclude
    /// recursion over non-loop edges with a rollback union-find). The
    /// caller is responsible for keeping the graph small.
    pub fn spanning_tree_iter(&self) -> SpanningTrees<'_> {
        SpanningTrees::new(self)
    }

    /// One deterministic spanning tree (DFS from vertex 0), if connected.
    pub fn some_spanning_tree(&self) -> Option<EdgeSet> {
        if self.n == 0 {
            return None;
        }
        let mut tree = EdgeSet::EMPTY;
        let mut seen = VertexSet::single(Vertex(0));
        let mut stack = vec![Vertex(0)];
        while let Some(v) = stack.pop() {
            for d in self.darts_at(v) {
                let w = self.dart_at(d.mate());
                if !seen.contains(w) {
                    seen.insert(w);
                    tree.insert(d.edge());
                    stack.push(w);
                }
            }
        }
        (seen.len() == self.n).then_some(tree)
    }

    /// Random spanning tree via a seeded Kruskal pass, if connected.
    pub fn random_spanning_tree(&self, rng: &mut crate::rng::SplitMix64) -> Option<EdgeSet> {
        let mut order: Vec<Edge> = self.edges().filter(|&e| !self.is_loop(e)).collect();
        rng.shuffle(&mut order);
        let mut dsu = Dsu::new(self.n as usize);
        let mut tree = EdgeSet::EMPTY;
        for e in order {
            let (u, v) = self.endpoints(e);
            if dsu.union(u.index(), v.index()) {
                tree.insert(e);
            }
        }
        (tree.len() + 1 == self.n).then_some(tree)
    }
}

/// Result of suppressing a 2-valent vertex.
#[derive(Clone, Debug)]
pub struct Suppression {
    pub graph: Graph,
    /// Old vertex id to new vertex id; `None` for the removed vertex.
    pub vertex_map: Vec<Option<Vertex>>,
    /// Old edge id to new edge id; `None` for the two merged halves.
    pub edge_map: Vec<Option<Edge>>,
    /// The merged edge, absent when an isolated loop vertex vanished.
    pub merged: Option<MergedEdge>,
}

#[derive(Clone, Debug)]
pub struct MergedEdge {
    /// Id of the merged edge in the new graph.
    pub edge: Edge,
    /// The two old edge ids that were merged.
    pub old_halves: (Edge, Edge),
    /// Old ids of the endpoints the merged edge connects.
    pub old_far_ends: (Vertex, Vertex),
}

/// Structural facts about a vertex-induced subgraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubgraphReport {
    pub vertices: VertexSet,
    pub edges: EdgeSet,
    pub vertex_count: u32,
    pub edge_count: u32,
    pub components: u32,
    pub acyclic: bool,
    pub is_tree: bool,
}

impl SubgraphReport {
    pub fn is_forest(&self) -> bool {
        self.acyclic
    }

    /// Betti number of the (possibly disconnected) subgraph,
    /// `m - n + c`.
    pub fn betti(&self) -> u32 {
        self.edge_count + self.components - self.vertex_count
    }
}

fn shift_map(n: u32, removed: Vertex) -> Vec<Option<Vertex>> {
    (0..n)
        .map(|i| match i.cmp(&removed.0) {
            core::cmp::Ordering::Less => Some(Vertex(i)),
            core::cmp::Ordering::Equal => None,
            core::cmp::Ordering::Greater => Some(Vertex(i - 1)),
        })
        .collect()
}

/// A connected or disconnected cubic multigraph: every vertex is incident
/// with exactly 3 dart slots (a loop consumes 2) and the order is even.
#[derive(Clone, PartialEq, Eq)]
pub struct CubicGraph(Graph);

impl fmt::Debug for CubicGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cubic{:?}", self.0)
    }
}

impl core::ops::Deref for CubicGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl CubicGraph {
    /// Validates and wraps a multigraph. Checks 3-regularity (loops count
    /// twice), even order and the implied edge count `m = 3n/2`.
    pub fn build(n: u32, edges: &[(u32, u32)]) -> Result<CubicGraph, GraphError> {
        if n % 2 == 1 {
            return Err(GraphError::OddOrder);
        }
        let g = Graph::from_edges(n, edges)?;
        CubicGraph::from_graph(g)
    }

    pub fn from_graph(g: Graph) -> Result<CubicGraph, GraphError> {
        if g.vertex_count() % 2 == 1 {
            return Err(GraphError::OddOrder);
        }
        for v in g.vertices() {
            if g.degree(v) != 3 {
                return Err(GraphError::DegreeViolation { vertex: v, degree: g.degree(v) });
            }
        }
        debug_assert_eq!(2 * g.edge_count(), 3 * g.vertex_count());
        Ok(CubicGraph(g))
    }

    pub fn as_graph(&self) -> &Graph {
        &self.0
    }

    /// Hard cap for exhaustive spanning-tree work on cubic graphs.
    pub const SPANNING_TREE_CAP: u32 = 14;

    /// Enumerates every spanning tree exactly once. Errors with
    /// `TooLarge` beyond order 14 and `Disconnected` when no tree exists.
    pub fn spanning_trees(&self) -> Result<SpanningTrees<'_>, GraphError> {
        if self.vertex_count() > Self::SPANNING_TREE_CAP {
            return Err(GraphError::TooLarge);
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(self.spanning_tree_iter())
    }
}

/// Union-find with union by size and an undo log.
pub(crate) struct Dsu {
    parent: Vec<u32>,
    size: Vec<u32>,
    log: Vec<(u32, u32)>,
}

impl Dsu {
    pub fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            log: Vec::new(),
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    /// Returns false when both are already in the same class.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.log.push((rb as u32, ra as u32));
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn mark(&self) -> usize {
        self.log.len()
    }

    pub fn rollback(&mut self, mark: usize) {
        while self.log.len() > mark {
            let (child, root) = self.log.pop().unwrap();
            self.parent[child as usize] = child;
            self.size[root as usize] -= self.size[child as usize];
        }
    }
}

/// Lazy spanning-tree enumeration; each call to `next` yields one tree.
pub struct SpanningTrees<'a> {
    g: &'a Graph,
    usable: Vec<Edge>,
    target: u32,
    dsu: Dsu,
    chosen: EdgeSet,
    chosen_count: u32,
    // (edge index, phase): phase 0 explores, phase 1 undoes an inclusion.
    stack: Vec<(usize, u8)>,
    marks: Vec<usize>,
}

impl<'a> SpanningTrees<'a> {
    fn new(g: &'a Graph) -> Self {
        let usable: Vec<Edge> = g.edges().filter(|&e| !g.is_loop(e)).collect();
        let target = g.vertex_count().saturating_sub(1);
        SpanningTrees {
            g,
            usable,
            target,
            dsu: Dsu::new(g.vertex_count() as usize),
            chosen: EdgeSet::EMPTY,
            chosen_count: 0,
            stack: vec![(0, 0)],
            marks: Vec::new(),
        }
    }
}

impl<'a> Iterator for SpanningTrees<'a> {
    type Item = EdgeSet;

    fn next(&mut self) -> Option<EdgeSet> {
        while let Some((i, phase)) = self.stack.pop() {
            if phase == 1 {
                // Undo the inclusion of edge i, then explore its exclusion.
                let mark = self.marks.pop().unwrap();
                self.dsu.rollback(mark);
                self.chosen.remove(self.usable[i]);
                self.chosen_count -= 1;
                self.stack.push((i + 1, 0));
                continue;
            }
            if self.chosen_count == self.target {
                return Some(self.chosen);
            }
            if i >= self.usable.len()
                || self.chosen_count + ((self.usable.len() - i) as u32) < self.target
            {
                continue;
            }
            let e = self.usable[i];
            let (u, v) = self.g.endpoints(e);
            if self.dsu.find(u.index()) == self.dsu.find(v.index()) {
                self.stack.push((i + 1, 0));
                continue;
            }
            self.marks.push(self.dsu.mark());
            self.dsu.union(u.index(), v.index());
            self.chosen.insert(e);
            self.chosen_count += 1;
            self.stack.push((i, 1));
            self.stack.push((i + 1, 0));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;
    use crate::generators::Named;

    fn k4() -> CubicGraph {
        named(Named::K4)
    }

    #[test]
    fn build_k4() {
        let g = k4();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.betti().unwrap(), Betti { value: 3, cyclically_even: false });
    }

    #[test]
    fn build_dipole() {
        let g = CubicGraph::build(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(g.betti().unwrap().value, 2);
        assert!(g.betti().unwrap().cyclically_even);
        assert_eq!(g.multiplicity(Vertex(0), Vertex(1)), 3);
    }

    #[test]
    fn degree_violation() {
        // K4 minus one edge plus a loop: the loop vertex ends up 4-valent.
        let err = CubicGraph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 2)])
            .unwrap_err();
        assert!(matches!(err, GraphError::DegreeViolation { .. }));
        assert!(matches!(
            CubicGraph::build(3, &[]).unwrap_err(),
            GraphError::OddOrder
        ));
    }

    #[test]
    fn loops_count_twice() {
        // Loop at 0 plus bridge, loop at 1: the 2-vertex dumbbell.
        let g = CubicGraph::build(2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(g.degree(Vertex(0)), 3);
        assert_eq!(g.loops_at(Vertex(0)), 1);
        assert!(g.has_loop_at(Vertex(1)));
        assert_eq!(g.multiplicity(Vertex(0), Vertex(1)), 1);
    }

    #[test]
    fn betti_examples() {
        assert_eq!(named(Named::Q3).betti().unwrap().value, 5);
        assert!(!named(Named::Q3).betti().unwrap().cyclically_even);
        assert_eq!(named(Named::Petersen).betti().unwrap().value, 6);
        assert!(named(Named::Petersen).betti().unwrap().cyclically_even);
    }

    #[test]
    fn betti_disconnected() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 1), (2, 3), (2, 3)]).unwrap();
        assert_eq!(g.betti().unwrap_err(), GraphError::Disconnected);
    }

    #[test]
    fn delta_cut_examples() {
        let g = k4();
        let cut = g.delta_cut(&VertexSet::single(Vertex(0))).unwrap();
        assert_eq!(cut.len(), 3);
        // Complement side gives the same cut.
        let rest: VertexSet = [1, 2, 3].into_iter().map(Vertex).collect();
        assert_eq!(g.delta_cut(&rest).unwrap(), cut);
        assert!(g.delta_cut(&VertexSet::EMPTY).is_err());
        assert!(g.delta_cut(&g.all_vertices()).is_err());

        let d2 = named(Named::D2);
        assert_eq!(d2.delta_cut(&VertexSet::single(Vertex(0))).unwrap().len(), 3);

        let prism = named(Named::Prism);
        let tri: VertexSet = [0, 1, 2].into_iter().map(Vertex).collect();
        let cut = prism.delta_cut(&tri).unwrap();
        assert_eq!(cut.len(), 3);
        // The matching between the triangles.
        for e in cut.iter() {
            let (u, v) = prism.endpoints(e);
            assert_eq!(tri.contains(u) as u8 + tri.contains(v) as u8, 1);
        }
    }

    #[test]
    fn induced_subgraph_reports() {
        let g = k4();
        let empty = g.induced_subgraph(&VertexSet::EMPTY);
        assert_eq!(empty.components, 0);
        assert!(empty.acyclic && !empty.is_tree);

        let tri: VertexSet = [0, 1, 2].into_iter().map(Vertex).collect();
        let r = g.induced_subgraph(&tri);
        assert_eq!(r.edge_count, 3);
        assert!(!r.acyclic);

        let q3 = named(Named::Q3);
        let a: VertexSet = [1, 2, 4, 5, 6].into_iter().map(Vertex).collect();
        let r = q3.induced_subgraph(&a);
        assert!(r.is_tree);
    }

    #[test]
    fn subdivide_then_suppress_roundtrip() {
        let g = k4();
        let (h, w) = g.subdivide_edge(Edge(0));
        assert_eq!(h.vertex_count(), 5);
        assert_eq!(h.degree(w), 2);
        let back = h.suppress_vertex(w).unwrap();
        assert!(crate::canonical::is_isomorphic(&back.graph, &g));
    }

    #[test]
    fn subdivide_loop_gives_digon() {
        let g = Graph::from_edges(1, &[(0, 0)]).unwrap();
        let (h, w) = g.subdivide_edge(Edge(0));
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.multiplicity(Vertex(0), w), 2);
    }

    #[test]
    fn suppress_digon_gives_loop() {
        let g = Graph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let s = g.suppress_vertex(Vertex(1)).unwrap();
        assert_eq!(s.graph.vertex_count(), 1);
        assert_eq!(s.graph.edge_count(), 1);
        assert!(s.graph.is_loop(Edge(0)));
    }

    #[test]
    fn suppress_rejects_cubic_vertex() {
        let err = k4().suppress_vertex(Vertex(0)).unwrap_err();
        assert!(matches!(err, GraphError::NotDegreeTwo { .. }));
    }

    #[test]
    fn spanning_tree_counts() {
        assert_eq!(k4().spanning_trees().unwrap().count(), 16);
        assert_eq!(named(Named::D2).spanning_trees().unwrap().count(), 3);
        // A cycle graph has n spanning trees.
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(c5.spanning_tree_iter().count(), 5);
    }

    #[test]
    fn spanning_trees_are_trees() {
        let g = named(Named::Prism);
        let beta = g.betti().unwrap().value;
        for tree in g.spanning_trees().unwrap() {
            assert_eq!(tree.len(), g.vertex_count() - 1);
            assert!(g.is_acyclic(&tree));
            let cotree = g.all_edges().difference(&tree);
            assert_eq!(cotree.len(), beta);
        }
    }

    #[test]
    fn spanning_tree_cap() {
        let big = crate::generators::ring_of_diamonds(4).unwrap();
        assert_eq!(big.vertex_count(), 16);
        assert!(matches!(big.spanning_trees(), Err(GraphError::TooLarge)));
    }
}
