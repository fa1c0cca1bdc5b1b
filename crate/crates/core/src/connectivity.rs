//! Cycle-separating cuts, cyclic edge connectivity, odd-cyclic
//! connectivity, bridges and the nontrivial 3-cuts that drive the
//! decomposition pipeline.
//!
//! The cut search is plain subset enumeration with a size cap; cubic
//! desk-scale graphs keep that comfortably cheap and every reported cut
//! carries a witness that can be re-checked independently.

use crate::graph::{CubicGraph, Graph};
use crate::set::{Edge, EdgeSet, Vertex, VertexSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Default cap on enumerated cut sizes.
pub const CUT_ENUM_CAP: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectivityError {
    /// The requested cut size exceeds the enumeration cap, or the answer
    /// would need cuts beyond it.
    CapExceeded,
    Disconnected,
}

impl fmt::Display for ConnectivityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnectivityError::CapExceeded => write!(f, "cut enumeration cap exceeded"),
            ConnectivityError::Disconnected => write!(f, "graph is not connected"),
        }
    }
}

/// An edge cut `delta(side_a)` together with the structural facts the
/// callers branch on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutWitness {
    pub cut: EdgeSet,
    pub side_a: VertexSet,
    /// Both sides contain a cycle.
    pub cycle_separating: bool,
    /// Both sides have at least two vertices.
    pub both_sides_nontrivial: bool,
    pub side_a_betti_odd: bool,
    pub side_b_betti_odd: bool,
}

impl CutWitness {
    fn build(g: &Graph, cut: EdgeSet, side_a: VertexSet) -> CutWitness {
        let side_b = g.all_vertices().difference(&side_a);
        let a = g.induced_subgraph(&side_a);
        let b = g.induced_subgraph(&side_b);
        debug_assert_eq!(g.delta_cut(&side_a).unwrap(), cut);
        CutWitness {
            cut,
            side_a,
            cycle_separating: !a.acyclic && !b.acyclic,
            both_sides_nontrivial: a.vertex_count >= 2 && b.vertex_count >= 2,
            side_a_betti_odd: a.betti() % 2 == 1,
            side_b_betti_odd: b.betti() % 2 == 1,
        }
    }
}

/// Walks `(m choose k)` index combinations in lexicographic order.
struct Combinations {
    m: usize,
    k: usize,
    ix: Vec<usize>,
    started: bool,
}

impl Combinations {
    fn new(m: usize, k: usize) -> Combinations {
        Combinations { m, k, ix: (0..k).collect(), started: false }
    }

    fn next(&mut self) -> Option<&[usize]> {
        if self.k > self.m {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.ix);
        }
        let mut i = self.k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if self.ix[i] != i + self.m - self.k {
                break;
            }
        }
        self.ix[i] += 1;
        for j in i + 1..self.k {
            self.ix[j] = self.ix[j - 1] + 1;
        }
        Some(&self.ix)
    }
}

/// Per-component profile of `g` minus an edge set.
struct Profile {
    /// (vertex set, edge count) per component, ordered by smallest vertex.
    comps: Vec<(VertexSet, u32)>,
}

impl Profile {
    fn compute(g: &Graph, removed: &EdgeSet) -> Profile {
        let (count, comp_of) = g.components_excluding(removed);
        let mut comps = vec![(VertexSet::EMPTY, 0u32); count as usize];
        for v in g.vertices() {
            comps[comp_of[v.index()] as usize].0.insert(v);
        }
        for e in g.edges() {
            if removed.contains(e) {
                continue;
            }
            let (u, _) = g.endpoints(e);
            comps[comp_of[u.index()] as usize].1 += 1;
        }
        Profile { comps }
    }

    fn cyclic(&self, i: usize) -> bool {
        // beta >= 1, i.e. m >= n for a connected piece.
        self.comps[i].1 >= self.comps[i].0.len()
    }

    fn betti(&self, i: usize) -> u32 {
        self.comps[i].1 + 1 - self.comps[i].0.len()
    }
}

/// Turns a qualifying removed-edge set into a proper cut witness: finds a
/// union of components `A` with `delta(A)` equal to the removed set and
/// both sides containing cycles. Returns `None` when the set is not an
/// exact two-sided cut (for example when it has an edge inside a side).
fn exact_cut_witness(g: &Graph, removed: &EdgeSet, profile: &Profile) -> Option<CutWitness> {
    let c = profile.comps.len();
    if c < 2 || c > 16 {
        return None;
    }
    // Vertex 0's component stays on side B so each cut is reported once.
    let anchor = profile
        .comps
        .iter()
        .position(|(vs, _)| vs.contains(Vertex(0)))
        .unwrap();
    for mask in 1u32..(1 << c) {
        if mask >> anchor & 1 == 1 {
            continue;
        }
        let mut side = VertexSet::EMPTY;
        let mut side_cyclic = false;
        let mut rest_cyclic = false;
        for i in 0..c {
            if mask >> i & 1 == 1 {
                side = side.union(&profile.comps[i].0);
                side_cyclic |= profile.cyclic(i);
            } else {
                rest_cyclic |= profile.cyclic(i);
            }
        }
        if !side_cyclic || !rest_cyclic {
            continue;
        }
        if g.delta_cut(&side).ok()? == *removed {
            return Some(CutWitness::build(g, *removed, side));
        }
    }
    None
}

/// Every cycle-separating edge cut of size at most `k_max`, each exactly
/// once, in lexicographic edge-id order.
pub fn cycle_separating_cuts(
    g: &CubicGraph,
    k_max: u32,
) -> Result<Vec<CutWitness>, ConnectivityError> {
    if k_max > CUT_ENUM_CAP {
        return Err(ConnectivityError::CapExceeded);
    }
    if !g.is_connected() {
        return Err(ConnectivityError::Disconnected);
    }
    let mut out = Vec::new();
    for size in 1..=k_max {
        collect_cuts_of_size(g, size, &mut out, &mut |w| w.cycle_separating);
    }
    Ok(out)
}

fn collect_cuts_of_size(
    g: &CubicGraph,
    size: u32,
    out: &mut Vec<CutWitness>,
    keep: &mut dyn FnMut(&CutWitness) -> bool,
) {
    let m = g.edge_count() as usize;
    let mut combos = Combinations::new(m, size as usize);
    while let Some(ix) = combos.next() {
        let removed: EdgeSet = ix.iter().map(|&i| Edge(i as u32)).collect();
        let profile = Profile::compute(g, &removed);
        if profile.comps.len() < 2 {
            continue;
        }
        let cyclic = (0..profile.comps.len()).filter(|&i| profile.cyclic(i)).count();
        if cyclic < 2 {
            continue;
        }
        if let Some(w) = exact_cut_witness(g, &removed, &profile) {
            if keep(&w) {
                out.push(w);
            }
        }
    }
}

/// Cyclic edge connectivity: the largest `k <= beta` such that no
/// cycle-separating cut has fewer than `k` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicConnectivity {
    pub zeta: u32,
    /// A smallest cycle-separating cut; absent exactly when saturated.
    pub witness: Option<CutWitness>,
    /// True iff no cycle-separating cut exists at all (`zeta = beta`).
    pub saturated: bool,
}

pub fn cyclic_connectivity(g: &CubicGraph) -> Result<CyclicConnectivity, ConnectivityError> {
    let beta = g.betti().map_err(|_| ConnectivityError::Disconnected)?.value;
    for size in 1..beta.min(CUT_ENUM_CAP + 1) {
        let mut found = Vec::new();
        collect_cuts_of_size(g, size, &mut found, &mut |w| w.cycle_separating);
        if let Some(w) = found.into_iter().next() {
            return Ok(CyclicConnectivity { zeta: size, witness: Some(w), saturated: false });
        }
    }
    if beta <= CUT_ENUM_CAP + 1 {
        Ok(CyclicConnectivity { zeta: beta, witness: None, saturated: true })
    } else {
        Err(ConnectivityError::CapExceeded)
    }
}

/// True iff no cycle-separating cut has fewer than `k` edges.
pub fn is_cyclically_k_edge_connected(g: &CubicGraph, k: u32) -> Result<bool, ConnectivityError> {
    if k > CUT_ENUM_CAP + 1 {
        return Err(ConnectivityError::CapExceeded);
    }
    if !g.is_connected() {
        return Err(ConnectivityError::Disconnected);
    }
    for size in 1..k {
        let mut found = Vec::new();
        collect_cuts_of_size(g, size, &mut found, &mut |w| w.cycle_separating);
        if !found.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cyclically 4-edge-connected: the precondition of the coherent
/// partition pipeline.
pub fn is_c4c(g: &CubicGraph) -> bool {
    is_cyclically_k_edge_connected(g, 4).unwrap_or(false)
}

/// Odd-cyclic `k`-connectivity: every induced subgraph `H` with
/// cycle-separating boundary and odd Betti number has `|delta(H)| >= k`.
/// On failure returns the violating side as a witness.
pub fn is_odd_cyclically_k_connected(
    g: &CubicGraph,
    k: u32,
) -> Result<(bool, Option<CutWitness>), ConnectivityError> {
    if k > CUT_ENUM_CAP + 1 {
        return Err(ConnectivityError::CapExceeded);
    }
    if !g.is_connected() {
        return Err(ConnectivityError::Disconnected);
    }
    let m = g.edge_count() as usize;
    for size in 1..k {
        let mut combos = Combinations::new(m, size as usize);
        while let Some(ix) = combos.next() {
            let removed: EdgeSet = ix.iter().map(|&i| Edge(i as u32)).collect();
            let profile = Profile::compute(g, &removed);
            if profile.comps.len() < 2 {
                continue;
            }
            let cyclic = (0..profile.comps.len()).filter(|&i| profile.cyclic(i)).count();
            if cyclic < 2 {
                continue;
            }
            // A violating induced subgraph always contains a violating
            // single component, so scanning components is complete.
            for i in 0..profile.comps.len() {
                if profile.cyclic(i) && profile.betti(i) % 2 == 1 {
                    let side = profile.comps[i].0;
                    let cut = g.delta_cut(&side).expect("proper side");
                    if cut.len() < k {
                        return Ok((false, Some(CutWitness::build(g, cut, side))));
                    }
                }
            }
        }
    }
    Ok((true, None))
}

/// All 3-edge cuts of a 3-connected cubic graph leaving two nontrivial
/// sides; in cubic graphs these are exactly the cycle-separating 3-cuts.
pub fn nontrivial_three_cuts(g: &CubicGraph) -> Vec<CutWitness> {
    let mut out = Vec::new();
    collect_cuts_of_size(g, 3, &mut out, &mut |w| w.both_sides_nontrivial);
    out
}

/// Bridges and cutvertices. Both endpoints of a bridge incident with a
/// loop vertex are marked as cutvertices, matching the topological
/// convention for graphs with loops.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BridgeReport {
    pub bridges: EdgeSet,
    pub cutvertices: VertexSet,
}

pub fn bridges_and_blocks(g: &Graph) -> BridgeReport {
    let n = g.vertex_count() as usize;
    let mut report = BridgeReport::default();
    if n == 0 {
        return report;
    }
    let mut disc = vec![u32::MAX; n];
    let mut low = vec![u32::MAX; n];
    let mut timer = 0u32;
    // Iterative DFS over darts; `entered` is the dart used to reach the
    // vertex so only that edge instance is skipped, keeping parallel
    // edges intact as back edges.
    for root in g.vertices() {
        if disc[root.index()] != u32::MAX {
            continue;
        }
        let mut root_children = 0;
        let mut stack: Vec<(Vertex, Option<crate::set::Dart>, usize)> = vec![(root, None, 0)];
        disc[root.index()] = timer;
        low[root.index()] = timer;
        timer += 1;
        while let Some(&mut (v, entered, ref mut next)) = stack.last_mut() {
            let darts = g.darts_at(v);
            if *next >= darts.len() {
                stack.pop();
                if let Some(d) = entered {
                    let parent = g.dart_at(d.mate());
                    let e = d.edge();
                    low[parent.index()] = low[parent.index()].min(low[v.index()]);
                    if low[v.index()] > disc[parent.index()] {
                        report.bridges.insert(e);
                    }
                    if parent == root {
                        root_children += 1;
                    } else if low[v.index()] >= disc[parent.index()] {
                        report.cutvertices.insert(parent);
                    }
                }
                continue;
            }
            let d = darts[*next];
            *next += 1;
            if g.is_loop(d.edge()) {
                continue;
            }
            // Skip only the entering edge instance; parallel copies stay
            // usable as back edges.
            if Some(d) == entered {
                continue;
            }
            let w = g.dart_at(d.mate());
            if disc[w.index()] == u32::MAX {
                disc[w.index()] = timer;
                low[w.index()] = timer;
                timer += 1;
                stack.push((w, Some(d.mate()), 0));
            } else {
                low[v.index()] = low[v.index()].min(disc[w.index()]);
            }
        }
        if root_children >= 2 {
            report.cutvertices.insert(root);
        }
    }
    for e in report.bridges.iter() {
        let (u, v) = g.endpoints(e);
        if g.has_loop_at(u) || g.has_loop_at(v) {
            report.cutvertices.insert(u);
            report.cutvertices.insert(v);
        }
    }
    report
}

/// 3-connectivity test for cubic graphs: simple, connected, no cut of
/// fewer than three edges (vertex and edge connectivity agree here).
pub fn is_three_connected(g: &CubicGraph) -> bool {
    if g.vertex_count() < 4 || !g.is_connected() || !crate::generators::is_simple(g) {
        return false;
    }
    let m = g.edge_count() as usize;
    for size in 1..=2usize {
        let mut combos = Combinations::new(m, size);
        while let Some(ix) = combos.next() {
            let removed: EdgeSet = ix.iter().map(|&i| Edge(i as u32)).collect();
            if g.components_excluding(&removed).0 > 1 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named, Named};

    #[test]
    fn prism_cuts() {
        let g = named(Named::Prism);
        let cuts = cycle_separating_cuts(&g, 3).unwrap();
        assert_eq!(cuts.len(), 1);
        let w = &cuts[0];
        assert_eq!(w.cut.len(), 3);
        assert!(w.cycle_separating && w.both_sides_nontrivial);
        // The matching between triangles is independent.
        let edges: Vec<(Vertex, Vertex)> = w.cut.iter().map(|e| g.endpoints(e)).collect();
        for (i, a) in edges.iter().enumerate() {
            for b in &edges[i + 1..] {
                assert!(a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1);
            }
        }
    }

    #[test]
    fn petersen_and_k4_have_no_small_cuts() {
        assert!(cycle_separating_cuts(&named(Named::Petersen), 4).unwrap().is_empty());
        assert!(cycle_separating_cuts(&named(Named::K4), 3).unwrap().is_empty());
    }

    #[test]
    fn cyclic_connectivity_values() {
        let k33 = cyclic_connectivity(&named(Named::K33)).unwrap();
        assert_eq!(k33.zeta, 4);
        assert!(k33.saturated);

        let k4 = cyclic_connectivity(&named(Named::K4)).unwrap();
        assert_eq!(k4.zeta, 3);
        assert!(k4.saturated && k4.witness.is_none());

        let prism = cyclic_connectivity(&named(Named::Prism)).unwrap();
        assert_eq!(prism.zeta, 3);
        assert!(!prism.saturated);
        assert_eq!(prism.witness.as_ref().unwrap().cut.len(), 3);

        let pet = cyclic_connectivity(&named(Named::Petersen)).unwrap();
        assert_eq!(pet.zeta, 5);
        assert!(!pet.saturated);

        let q3 = cyclic_connectivity(&named(Named::Q3)).unwrap();
        assert_eq!(q3.zeta, 4);

        let d2 = cyclic_connectivity(&named(Named::D2)).unwrap();
        assert_eq!(d2.zeta, 2);
        assert!(d2.saturated);
    }

    #[test]
    fn odd_cyclic_connectivity() {
        // Each prism triangle side has odd Betti number 1.
        let (ok, witness) = is_odd_cyclically_k_connected(&named(Named::Prism), 4).unwrap();
        assert!(!ok);
        let w = witness.unwrap();
        assert!(w.side_a_betti_odd);
        assert_eq!(w.cut.len(), 3);

        // Cyclically 4-edge-connected graphs are trivially odd-cyclically
        // 4-connected.
        for which in [Named::Petersen, Named::K33, Named::Q3] {
            assert!(is_odd_cyclically_k_connected(&named(which), 4).unwrap().0);
        }
    }

    #[test]
    fn three_cut_census() {
        assert_eq!(nontrivial_three_cuts(&named(Named::Prism)).len(), 1);
        assert!(nontrivial_three_cuts(&named(Named::Petersen)).is_empty());
    }

    #[test]
    fn bridges_and_loop_convention() {
        assert_eq!(bridges_and_blocks(&named(Named::Petersen)), BridgeReport::default());

        // Loop at 0, bridge 0-1, loop at 1: both ends are cutvertices by
        // the loop convention even though neither separates anything.
        let dumbbell = CubicGraph::build(2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        let r = bridges_and_blocks(&dumbbell);
        assert_eq!(r.bridges.len(), 1);
        assert!(r.cutvertices.contains(Vertex(0)) && r.cutvertices.contains(Vertex(1)));

        let gadget = crate::generators::loop_tight_gadget(&named(Named::D2)).unwrap();
        let r = bridges_and_blocks(&gadget);
        assert_eq!(r.bridges.len(), 1);
        let bridge = r.bridges.first().unwrap();
        let (u, v) = gadget.endpoints(bridge);
        assert!(r.cutvertices.contains(u) && r.cutvertices.contains(v));
    }

    #[test]
    fn three_connectivity() {
        assert!(is_three_connected(&named(Named::K4)));
        assert!(is_three_connected(&named(Named::Petersen)));
        assert!(is_three_connected(&named(Named::Prism)));
        assert!(!is_three_connected(&named(Named::L4)));
        assert!(!is_three_connected(&named(Named::D2)));
    }

    #[test]
    fn c4c_flags() {
        assert!(is_c4c(&named(Named::K4)));
        assert!(is_c4c(&named(Named::Q3)));
        assert!(is_c4c(&named(Named::Petersen)));
        assert!(is_c4c(&named(Named::D2)));
        assert!(!is_c4c(&named(Named::Prism)));
        assert!(!is_c4c(&named(Named::L4)));
    }
}
