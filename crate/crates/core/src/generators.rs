//! Named graphs and the constructions the library's families are built
//! from: vertex inflation, diamond insertions and strings, rings of
//! diamonds, the triangle/diamond expansions over 4-vertex bases, loop
//! gadgets and configuration-model random cubic graphs.

use crate::genus;
use crate::graph::{CubicGraph, Graph, GraphError};
use crate::rng::SplitMix64;
use crate::set::{Edge, Vertex};
use crate::SearchBudget;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorError {
    Graph(GraphError),
    /// The operation needs a loop-free vertex.
    LoopVertex(Vertex),
    /// Ring of diamonds needs at least two diamonds.
    TooSmall,
    /// Family members need strings of positive length on every edge.
    ZeroLength(Edge),
    /// The gadget base must be verified one-face embeddable.
    NotOneFace,
    /// Edge or vertex id out of range, or wrong number of lengths.
    BadArgument,
}

impl From<GraphError> for GeneratorError {
    fn from(e: GraphError) -> Self {
        GeneratorError::Graph(e)
    }
}

impl fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorError::Graph(e) => write!(f, "{e}"),
            GeneratorError::LoopVertex(v) => write!(f, "vertex {v:?} carries a loop"),
            GeneratorError::TooSmall => write!(f, "ring of diamonds needs k >= 2"),
            GeneratorError::ZeroLength(e) => write!(f, "string length for {e:?} must be positive"),
            GeneratorError::NotOneFace => write!(f, "base graph is not one-face embeddable"),
            GeneratorError::BadArgument => write!(f, "argument out of range"),
        }
    }
}

/// The built-in graphs, with fixed vertex numberings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Named {
    /// Complete graph on 4 vertices.
    K4,
    /// The 3-cube, vertices are 3-bit strings.
    Q3,
    /// Complete bipartite graph with parts {0,1,2} and {3,4,5}.
    K33,
    /// Petersen graph: outer cycle 0..4, inner pentagram 5..9.
    Petersen,
    /// Triangular prism: triangles {0,1,2}, {3,4,5}, matching i - i+3.
    Prism,
    /// Necklace on 4 vertices: 4-cycle with every second edge doubled.
    L4,
    /// Dipole: two vertices joined by three parallel edges.
    D2,
    /// Dipole with a digon inserted into each of its three edges.
    Digon8,
}

impl Named {
    pub const ALL: [Named; 8] = [
        Named::K4,
        Named::Q3,
        Named::K33,
        Named::Petersen,
        Named::Prism,
        Named::L4,
        Named::D2,
        Named::Digon8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Named::K4 => "k4",
            Named::Q3 => "q3",
            Named::K33 => "k33",
            Named::Petersen => "petersen",
            Named::Prism => "prism",
            Named::L4 => "l4",
            Named::D2 => "d2",
            Named::Digon8 => "digon8",
        }
    }

    pub fn from_name(name: &str) -> Option<Named> {
        Named::ALL.into_iter().find(|n| n.name() == name)
    }
}

/// Builds one of the named graphs with its documented numbering.
pub fn named(which: Named) -> CubicGraph {
    let (n, edges): (u32, &[(u32, u32)]) = match which {
        Named::K4 => (4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        Named::Q3 => (
            8,
            &[
                (0, 1),
                (0, 2),
                (0, 4),
                (1, 3),
                (1, 5),
                (2, 3),
                (2, 6),
                (3, 7),
                (4, 5),
                (4, 6),
                (5, 7),
                (6, 7),
            ],
        ),
        Named::K33 => (
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        ),
        Named::Petersen => (
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        ),
        Named::Prism => (
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        ),
        Named::L4 => (4, &[(0, 1), (0, 1), (1, 2), (2, 3), (2, 3), (3, 0)]),
        Named::D2 => (2, &[(0, 1), (0, 1), (0, 1)]),
        Named::Digon8 => (
            8,
            &[
                (0, 2),
                (2, 3),
                (2, 3),
                (3, 1),
                (0, 4),
                (4, 5),
                (4, 5),
                (5, 1),
                (0, 6),
                (6, 7),
                (6, 7),
                (7, 1),
            ],
        ),
    };
    CubicGraph::build(n, edges).expect("named graphs are valid")
}

/// Replaces a loop-free vertex by a triangle; the three former edges of
/// `v` attach to distinct triangle vertices. The triangle uses `v`'s id
/// plus two fresh ids `n`, `n+1`; old edge ids are preserved, the three
/// triangle edges are appended.
pub fn inflate_vertex(g: &CubicGraph, v: Vertex) -> Result<CubicGraph, GeneratorError> {
    if v.0 >= g.vertex_count() {
        return Err(GeneratorError::BadArgument);
    }
    if g.has_loop_at(v) {
        return Err(GeneratorError::LoopVertex(v));
    }
    let n = g.vertex_count();
    let tri = [v.0, n, n + 1];
    let slots = g.darts_at(v).to_vec();
    let mut edges = g.edge_list();
    for (slot, dart) in slots.iter().enumerate() {
        let e = dart.edge();
        let (a, b) = e.darts();
        if *dart == a {
            edges[e.index()].0 = tri[slot];
        } else {
            debug_assert_eq!(*dart, b);
            edges[e.index()].1 = tri[slot];
        }
    }
    edges.push((tri[0], tri[1]));
    edges.push((tri[1], tri[2]));
    edges.push((tri[0], tri[2]));
    Ok(CubicGraph::build(n + 2, &edges)?)
}

/// Where the pieces of one inserted diamond ended up.
#[derive(Clone, Copy, Debug)]
pub struct DiamondInsertion {
    /// The 2-valent diamond vertices adjacent to the old endpoints.
    pub u_side: Vertex,
    pub v_side: Vertex,
    /// The 3-valent diamond vertices.
    pub inner: (Vertex, Vertex),
    /// New edge ids: u-lead, the five diamond edges, v-lead.
    pub lead_in: Edge,
    pub spokes: [Edge; 4],
    pub axis: Edge,
    pub lead_out: Edge,
}

/// Inserts a diamond (K4 minus an edge) into `e`. Edge ids above `e`
/// shift down by one; the seven new edges are appended in a fixed order.
pub fn insert_diamond(g: &CubicGraph, e: Edge) -> Result<(CubicGraph, DiamondInsertion), GeneratorError> {
    if e.0 >= g.edge_count() {
        return Err(GeneratorError::BadArgument);
    }
    let (u, v) = g.endpoints(e);
    let n = g.vertex_count();
    let (us, vs, s, t) = (Vertex(n), Vertex(n + 1), Vertex(n + 2), Vertex(n + 3));
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(g.edge_count() as usize + 6);
    for old in g.edges() {
        if old == e {
            continue;
        }
        let (a, b) = g.endpoints(old);
        edges.push((a.0, b.0));
    }
    let base = edges.len() as u32;
    edges.push((u.0, us.0));
    edges.push((us.0, s.0));
    edges.push((us.0, t.0));
    edges.push((s.0, t.0));
    edges.push((s.0, vs.0));
    edges.push((t.0, vs.0));
    edges.push((vs.0, v.0));
    let info = DiamondInsertion {
        u_side: us,
        v_side: vs,
        inner: (s, t),
        lead_in: Edge(base),
        spokes: [Edge(base + 1), Edge(base + 2), Edge(base + 4), Edge(base + 5)],
        axis: Edge(base + 3),
        lead_out: Edge(base + 6),
    };
    Ok((CubicGraph::build(n + 4, &edges)?, info))
}

/// Replaces `e` by a string of `k` diamonds; `k = 0` is the identity.
pub fn insert_diamond_string(g: &CubicGraph, e: Edge, k: u32) -> Result<CubicGraph, GeneratorError> {
    if e.0 >= g.edge_count() {
        return Err(GeneratorError::BadArgument);
    }
    let mut cur = g.clone();
    let mut target = e;
    for _ in 0..k {
        let (next, info) = insert_diamond(&cur, target)?;
        cur = next;
        target = info.lead_out;
    }
    Ok(cur)
}

/// Even cycle of length `2k` with every second edge replaced by a
/// diamond; `4k` vertices, claw-free.
pub fn ring_of_diamonds(k: u32) -> Result<CubicGraph, GeneratorError> {
    if k < 2 {
        return Err(GeneratorError::TooSmall);
    }
    let cycle = 2 * k;
    let mut edges = Vec::new();
    for i in 0..k {
        let (a, b) = (2 * i, (2 * i + 1) % cycle);
        let (s, t) = (cycle + 2 * i, cycle + 2 * i + 1);
        edges.push((a, s));
        edges.push((a, t));
        edges.push((s, t));
        edges.push((s, b));
        edges.push((t, b));
        edges.push((b, (b + 1) % cycle));
    }
    Ok(CubicGraph::build(4 * k, &edges)?)
}

/// Inflates every vertex of `base` to a triangle, then replaces the image
/// of each original edge with a string of `lengths[edge]` diamonds.
/// Original edge ids key the lengths.
pub fn triangle_diamond_expansion(
    base: &CubicGraph,
    lengths: &[u32],
) -> Result<CubicGraph, GeneratorError> {
    if lengths.len() != base.edge_count() as usize {
        return Err(GeneratorError::BadArgument);
    }
    let mut g = base.clone();
    for v in 0..base.vertex_count() {
        g = inflate_vertex(&g, Vertex(v))?;
    }
    // Original edge ids survive inflation. Insert strings from the
    // highest id down so earlier keys stay valid while ids shift.
    for e in (0..base.edge_count()).rev() {
        g = insert_diamond_string(&g, Edge(e), lengths[e as usize])?;
    }
    Ok(g)
}

/// The two admissible bases of the claw-free family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyBase {
    K4,
    L4,
}

/// Member of the claw-free family over `K4` or `L4`: vertex-triangles
/// plus a positive-length string of diamonds on each non-triangle edge.
/// All-ones lengths give the two smallest members (36 vertices each).
pub fn family_f(base: FamilyBase, lengths: &[u32]) -> Result<CubicGraph, GeneratorError> {
    let g = named(match base {
        FamilyBase::K4 => Named::K4,
        FamilyBase::L4 => Named::L4,
    });
    if lengths.len() != g.edge_count() as usize {
        return Err(GeneratorError::BadArgument);
    }
    if let Some(e) = lengths.iter().position(|&k| k == 0) {
        return Err(GeneratorError::ZeroLength(Edge(e as u32)));
    }
    triangle_diamond_expansion(&g, lengths)
}

/// Subdivides edge 0 of a one-face embeddable graph and hangs a pendant
/// loop vertex off the new vertex. The result is two-face embeddable and
/// tightly so.
pub fn loop_tight_gadget(h: &CubicGraph) -> Result<CubicGraph, GeneratorError> {
    if !verified_one_face(h) {
        return Err(GeneratorError::NotOneFace);
    }
    let (sub, w) = h.subdivide_edge(Edge(0));
    let u = sub.vertex_count();
    let mut edges = sub.edge_list();
    edges.push((w.0, u));
    edges.push((u, u));
    Ok(CubicGraph::build(sub.vertex_count() + 1, &edges)?)
}

fn verified_one_face(h: &CubicGraph) -> bool {
    match h.betti() {
        Ok(b) if b.cyclically_even => {}
        _ => return false,
    }
    if h.vertex_count() <= CubicGraph::SPANNING_TREE_CAP {
        matches!(genus::deficiency_exact(h), Ok(r) if r.xi == 0)
    } else {
        genus::find_xuong_tree(h, 0, &SearchBudget::default()).is_some()
    }
}

/// Configuration-model random cubic graph: pairs the `3n` darts
/// uniformly. With `require_simple`, rejection-samples until the result
/// has no loops or parallel edges. Deterministic per seed.
pub fn random_cubic(n: u32, seed: u64, require_simple: bool) -> Result<CubicGraph, GeneratorError> {
    if n < 4 || n % 2 == 1 {
        return Err(GeneratorError::BadArgument);
    }
    let mut rng = SplitMix64::new(seed);
    loop {
        let mut slots: Vec<u32> = (0..3 * n).collect();
        rng.shuffle(&mut slots);
        let edges: Vec<(u32, u32)> = slots
            .chunks_exact(2)
            .map(|pair| (pair[0] / 3, pair[1] / 3))
            .collect();
        let g = CubicGraph::build(n, &edges)?;
        if !require_simple || is_simple(&g) {
            return Ok(g);
        }
    }
}

pub fn is_simple(g: &Graph) -> bool {
    g.vertices().all(|v| !g.has_loop_at(v))
        && g.edges().all(|e| {
            let (u, v) = g.endpoints(e);
            g.multiplicity(u, v) == 1
        })
}

/// A reproducible construction: a base graph plus a sequence of
/// cubic-preserving operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRecipe {
    pub base: BaseGraph,
    pub ops: Vec<GeneratorOp>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseGraph {
    Named(Named),
    Random { n: u32, seed: u64, simple: bool },
    RingOfDiamonds(u32),
    FamilyF { base: FamilyBase, lengths: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorOp {
    InflateVertex(u32),
    InsertDiamond(u32),
    InsertDiamondString(u32, u32),
    LoopTightGadget,
}

/// Replays a recipe; equal recipes always rebuild isomorphic graphs.
pub fn replay(recipe: &GeneratorRecipe) -> Result<CubicGraph, GeneratorError> {
    let mut g = match &recipe.base {
        BaseGraph::Named(n) => named(*n),
        BaseGraph::Random { n, seed, simple } => random_cubic(*n, *seed, *simple)?,
        BaseGraph::RingOfDiamonds(k) => ring_of_diamonds(*k)?,
        BaseGraph::FamilyF { base, lengths } => family_f(*base, lengths)?,
    };
    for op in &recipe.ops {
        g = match op {
            GeneratorOp::InflateVertex(v) => inflate_vertex(&g, Vertex(*v))?,
            GeneratorOp::InsertDiamond(e) => insert_diamond(&g, Edge(*e))?.0,
            GeneratorOp::InsertDiamondString(e, k) => insert_diamond_string(&g, Edge(*e), *k)?,
            GeneratorOp::LoopTightGadget => loop_tight_gadget(&g)?,
        };
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::is_isomorphic;

    #[test]
    fn named_graphs_are_valid() {
        for which in Named::ALL {
            let g = named(which);
            assert!(g.is_connected(), "{which:?}");
        }
        assert_eq!(named(Named::Petersen).vertex_count(), 10);
        assert_eq!(named(Named::Digon8).vertex_count(), 8);
    }

    #[test]
    fn l4_has_two_digons() {
        let g = named(Named::L4);
        let digons = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .filter(|&(u, v)| g.multiplicity(Vertex(u), Vertex(v)) == 2)
            .count();
        assert_eq!(digons, 2);
    }

    #[test]
    fn digon8_has_three_digons() {
        let g = named(Named::Digon8);
        let digons = (0..8)
            .flat_map(|u| (u + 1..8).map(move |v| (u, v)))
            .filter(|&(u, v)| g.multiplicity(Vertex(u), Vertex(v)) == 2)
            .count();
        assert_eq!(digons, 3);
    }

    #[test]
    fn petersen_has_girth_five() {
        let g = named(Named::Petersen);
        assert!(is_simple(&g));
        for u in g.vertices() {
            for v in g.vertices() {
                if u < v && g.are_adjacent(u, v) {
                    // No triangle or 4-cycle through uv.
                    for w in g.vertices() {
                        if w != u && w != v {
                            assert!(!(g.are_adjacent(w, u) && g.are_adjacent(w, v)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn inflate_all_of_k4() {
        let mut g = named(Named::K4);
        for v in 0..4 {
            g = inflate_vertex(&g, Vertex(v)).unwrap();
        }
        assert_eq!(g.vertex_count(), 12);
        assert!(is_simple(&g));
        // Four vertex-triangles.
        let mut triangles = 0;
        for a in g.vertices() {
            for b in g.vertices() {
                for c in g.vertices() {
                    if a < b
                        && b < c
                        && g.are_adjacent(a, b)
                        && g.are_adjacent(b, c)
                        && g.are_adjacent(a, c)
                    {
                        triangles += 1;
                    }
                }
            }
        }
        assert_eq!(triangles, 4);
    }

    #[test]
    fn inflate_rejects_loops() {
        let d2 = named(Named::D2);
        let gadget = loop_tight_gadget(&d2).unwrap();
        let loop_vertex = gadget
            .vertices()
            .find(|&v| gadget.has_loop_at(v))
            .unwrap();
        assert!(matches!(
            inflate_vertex(&gadget, loop_vertex),
            Err(GeneratorError::LoopVertex(_))
        ));
    }

    #[test]
    fn diamond_insertion_sizes() {
        let k4 = named(Named::K4);
        let (g, info) = insert_diamond(&k4, Edge(0)).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.degree(info.u_side), 3);
        let g2 = insert_diamond_string(&k4, Edge(0), 2).unwrap();
        assert_eq!(g2.vertex_count(), 12);
        let same = insert_diamond_string(&k4, Edge(0), 0).unwrap();
        assert!(is_isomorphic(&same, &k4));
    }

    #[test]
    fn ring_sizes_and_claw_freeness() {
        assert!(matches!(ring_of_diamonds(1), Err(GeneratorError::TooSmall)));
        assert_eq!(ring_of_diamonds(2).unwrap().vertex_count(), 8);
        let r3 = ring_of_diamonds(3).unwrap();
        assert_eq!(r3.vertex_count(), 12);
        assert!(is_claw_free(&r3));
    }

    pub(crate) fn is_claw_free(g: &CubicGraph) -> bool {
        // An induced K_{1,3} in a cubic graph is a vertex whose three
        // neighbours are distinct and pairwise non-adjacent.
        g.vertices().all(|v| {
            let nbrs: Vec<Vertex> = g
                .darts_at(v)
                .iter()
                .map(|d| g.dart_at(d.mate()))
                .collect();
            if nbrs.iter().any(|&w| w == v) {
                return true;
            }
            if nbrs[0] == nbrs[1] || nbrs[1] == nbrs[2] || nbrs[0] == nbrs[2] {
                return true;
            }
            g.are_adjacent(nbrs[0], nbrs[1])
                || g.are_adjacent(nbrs[1], nbrs[2])
                || g.are_adjacent(nbrs[0], nbrs[2])
        })
    }

    #[test]
    fn family_members() {
        let f1 = family_f(FamilyBase::K4, &[1; 6]).unwrap();
        assert_eq!(f1.vertex_count(), 36);
        let f2 = family_f(FamilyBase::L4, &[1; 6]).unwrap();
        assert_eq!(f2.vertex_count(), 36);
        assert!(is_simple(&f1) && is_simple(&f2));
        assert!(is_claw_free(&f1) && is_claw_free(&f2));
        assert!(!is_isomorphic(&f1, &f2));
        assert!(matches!(
            family_f(FamilyBase::K4, &[1, 1, 0, 1, 1, 1]),
            Err(GeneratorError::ZeroLength(_))
        ));
    }

    #[test]
    fn gadget_requires_one_face() {
        let gadget = loop_tight_gadget(&named(Named::D2)).unwrap();
        assert_eq!(gadget.vertex_count(), 4);
        // K4 is two-face embeddable, so it is rejected.
        assert!(matches!(
            loop_tight_gadget(&named(Named::K4)),
            Err(GeneratorError::NotOneFace)
        ));
    }

    #[test]
    fn random_cubic_deterministic() {
        let a = random_cubic(12, 99, false).unwrap();
        let b = random_cubic(12, 99, false).unwrap();
        assert_eq!(a.edge_list(), b.edge_list());
        // The unique simple cubic graph on 4 vertices is K4.
        let g = random_cubic(4, 5, true).unwrap();
        assert!(is_isomorphic(&g, &named(Named::K4)));
    }

    #[test]
    fn replay_reproduces() {
        let recipe = GeneratorRecipe {
            base: BaseGraph::Named(Named::K4),
            ops: alloc::vec![
                GeneratorOp::InflateVertex(0),
                GeneratorOp::InsertDiamond(3)
            ],
        };
        let a = replay(&recipe).unwrap();
        let b = replay(&recipe).unwrap();
        assert!(is_isomorphic(&a, &b));
    }
}
