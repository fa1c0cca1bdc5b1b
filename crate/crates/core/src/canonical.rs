//! Canonical forms and isomorphism testing for small multigraphs.
//!
//! The canonical code is the lexicographically largest "column" encoding
//! of the adjacency-multiplicity matrix over all vertex orderings, found
//! by backtracking with prefix pruning. Maximising (rather than
//! minimising) keeps placed vertices adjacent to the prefix, which is
//! what makes the pruning bite on connected graphs.

use crate::graph::{Graph, GraphError};
use crate::set::VertexSet;
use alloc::vec;
use alloc::vec::Vec;

/// Default order cap for canonical codes; factors of decompositions stay
/// well below it.
pub const ISO_CAP: u32 = 24;

/// Relabelling-invariant byte string: equal codes iff isomorphic graphs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn hex(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::new();
        for b in &self.0 {
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

struct MultMatrix {
    n: usize,
    mult: Vec<u8>,
    loops: Vec<u8>,
}

impl MultMatrix {
    fn new(g: &Graph) -> MultMatrix {
        let n = g.vertex_count() as usize;
        let mut mult = vec![0u8; n * n];
        let mut loops = vec![0u8; n];
        for e in g.edges() {
            let (u, v) = g.endpoints(e);
            if u == v {
                loops[u.index()] += 1;
            } else {
                mult[u.index() * n + v.index()] += 1;
                mult[v.index() * n + u.index()] += 1;
            }
        }
        MultMatrix { n, mult, loops }
    }

    #[inline]
    fn between(&self, a: usize, b: usize) -> u8 {
        self.mult[a * self.n + b]
    }
}

struct CanonSearch {
    m: MultMatrix,
    best: Vec<u8>,
    have_best: bool,
    cur: Vec<u8>,
    place: Vec<usize>,
    placed: u64,
}

impl CanonSearch {
    /// Extends the current labelling by one vertex and recurses.
    /// `tied` is true while `cur` equals the best prefix.
    fn extend(&mut self, tied: bool) {
        let k = self.place.len();
        if k == self.m.n {
            if !self.have_best || self.cur > self.best {
                self.best = self.cur.clone();
                self.have_best = true;
            }
            return;
        }
        // Candidates ordered by adjacency to the prefix, then id; purely a
        // heuristic to reach large codes early.
        let mut cands: Vec<(u32, usize)> = (0..self.m.n)
            .filter(|w| self.placed >> w & 1 == 0)
            .map(|w| {
                let adj: u32 = self
                    .place
                    .iter()
                    .map(|&p| self.m.between(p, w) as u32)
                    .sum();
                (adj, w)
            })
            .collect();
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        let col_start = self.cur.len();
        for (_, w) in cands {
            self.cur.push(self.m.loops[w]);
            for &p in &self.place {
                self.cur.push(self.m.between(p, w));
            }
            let mut next_tied = tied;
            if self.have_best && tied {
                use core::cmp::Ordering;
                match self.cur[col_start..].cmp(&self.best[col_start..self.cur.len()]) {
                    Ordering::Less => {
                        self.cur.truncate(col_start);
                        continue;
                    }
                    Ordering::Greater => next_tied = false,
                    Ordering::Equal => {}
                }
            }
            self.place.push(w);
            self.placed |= 1 << w;
            self.extend(next_tied);
            self.placed &= !(1 << w);
            self.place.pop();
            self.cur.truncate(col_start);
        }
    }
}

/// Canonical code with the default order cap.
pub fn canonical_code(g: &Graph) -> Result<CanonicalCode, GraphError> {
    canonical_code_capped(g, ISO_CAP)
}

/// Canonical code of any multigraph with at most `cap` (≤ 64) vertices.
pub fn canonical_code_capped(g: &Graph, cap: u32) -> Result<CanonicalCode, GraphError> {
    let n = g.vertex_count();
    if n > cap || n > 64 {
        return Err(GraphError::TooLarge);
    }
    if n == 0 {
        return Ok(CanonicalCode(Vec::new()));
    }
    let mut s = CanonSearch {
        m: MultMatrix::new(g),
        best: Vec::new(),
        have_best: false,
        cur: Vec::new(),
        place: Vec::with_capacity(n as usize),
        placed: 0,
    };
    s.extend(true);
    Ok(CanonicalCode(s.best))
}

fn invariant(g: &Graph) -> (u32, u32, Vec<(u8, u8, Vec<u8>)>) {
    let mut per_vertex: Vec<(u8, u8, Vec<u8>)> = g
        .vertices()
        .map(|v| {
            let mut mults: Vec<u8> = g
                .vertices()
                .filter(|&w| w != v)
                .map(|w| g.multiplicity(v, w) as u8)
                .filter(|&m| m > 0)
                .collect();
            mults.sort_unstable();
            (g.degree(v) as u8, g.loops_at(v) as u8, mults)
        })
        .collect();
    per_vertex.sort();
    (g.vertex_count(), g.edge_count(), per_vertex)
}

/// Exact isomorphism test by refinement-guided backtracking. Works for
/// graphs beyond the canonical-code cap.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    if invariant(a) != invariant(b) {
        return false;
    }
    let n = a.vertex_count() as usize;
    if n == 0 {
        return true;
    }
    let ma = MultMatrix::new(a);
    let mb = MultMatrix::new(b);

    // Map vertices of `a` in an order that keeps the prefix connected
    // whenever possible.
    let order = {
        let mut order = Vec::with_capacity(n);
        let mut seen = VertexSet::EMPTY;
        for start in a.vertices() {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            let mut queue = vec![start];
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                order.push(v.index());
                for d in a.darts_at(v) {
                    let w = a.dart_at(d.mate());
                    if !seen.contains(w) {
                        seen.insert(w);
                        queue.push(w);
                    }
                }
            }
        }
        order
    };

    fn assign(
        k: usize,
        order: &[usize],
        ma: &MultMatrix,
        mb: &MultMatrix,
        map: &mut [usize],
        used: &mut u64,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let va = order[k];
        'cand: for wb in 0..mb.n {
            if *used >> wb & 1 == 1 || ma.loops[va] != mb.loops[wb] {
                continue;
            }
            for &pa in &order[..k] {
                if ma.between(va, pa) != mb.between(wb, map[pa]) {
                    continue 'cand;
                }
            }
            map[va] = wb;
            *used |= 1 << wb;
            if assign(k + 1, order, ma, mb, map, used) {
                return true;
            }
            *used &= !(1 << wb);
        }
        false
    }

    if n > 64 {
        // Beyond what the bitmask handles; not needed at desk scale.
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    assign(0, &order, &ma, &mb, &mut map, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named, Named};
    use crate::rng::SplitMix64;

    fn relabel(g: &Graph, perm: &[u32]) -> Graph {
        let edges: Vec<(u32, u32)> = g
            .edge_list()
            .into_iter()
            .map(|(u, v)| (perm[u as usize], perm[v as usize]))
            .collect();
        Graph::from_edges(g.vertex_count(), &edges).unwrap()
    }

    #[test]
    fn relabelling_invariance() {
        let pet = named(Named::Petersen);
        let mut rng = SplitMix64::new(42);
        let code = canonical_code(&pet).unwrap();
        for _ in 0..5 {
            let mut perm: Vec<u32> = (0..10).collect();
            rng.shuffle(&mut perm);
            let h = relabel(&pet, &perm);
            assert_eq!(canonical_code(&h).unwrap(), code);
            assert!(is_isomorphic(&pet, &h));
        }
    }

    #[test]
    fn distinguishes_simple_from_multigraph() {
        let k4 = named(Named::K4);
        let l4 = named(Named::L4);
        assert_ne!(canonical_code(&k4).unwrap(), canonical_code(&l4).unwrap());
        assert!(!is_isomorphic(&k4, &l4));
    }

    #[test]
    fn cap_is_enforced() {
        let f1 = crate::generators::family_f(crate::generators::FamilyBase::K4, &[1; 6]).unwrap();
        assert!(matches!(
            canonical_code(&f1),
            Err(GraphError::TooLarge)
        ));
    }
}
