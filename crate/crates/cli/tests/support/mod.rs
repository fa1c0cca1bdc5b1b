//! Shared fixtures for the integration suites: the frozen cubic census,
//! the multigraph corpus, and the labeled enumeration used to regenerate
//! both.

#![allow(dead_code)]

use decyc_core::canonical::is_isomorphic;
use decyc_core::graph::{CubicGraph, Graph};
use decyc_core::set::Vertex;

/// Frozen census of connected cubic simple graphs up to 10 vertices,
/// in graph6, generated by `enumerate_connected_cubic` and checked
/// against the known counts 1 / 2 / 5 / 19.
pub const CENSUS_G6: &str = include_str!("../data/cubic_census_le10.g6");

pub fn census() -> Vec<CubicGraph> {
    CENSUS_G6
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let g = decyc::formats::parse_graph6(l).expect("census line parses");
            decyc::formats::cubic_from_graph(g).expect("census graphs are cubic")
        })
        .collect()
}

/// Isomorphism-invariant fingerprint: per-vertex BFS distance profiles
/// plus loop counts, sharpened by one round of neighbourhood hashing.
/// Distinct classes that collide would only ever shrink the census, and
/// the guard test pins the exact class counts, so a collision cannot
/// pass silently.
fn fingerprint(n: u32, edges: &[(u32, u32)]) -> u64 {
    let n = n as usize;
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(3); n];
    let mut loops = vec![0u64; n];
    for &(u, v) in edges {
        if u == v {
            loops[u as usize] += 1;
            continue;
        }
        adj[u as usize].push(v as usize);
        adj[v as usize].push(u as usize);
    }
    let base: Vec<u64> = (0..n)
        .map(|s| {
            let mut dist = vec![u32::MAX; n];
            dist[s] = 0;
            let mut queue = vec![s];
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for &y in &adj[x] {
                    if dist[y] == u32::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push(y);
                    }
                }
            }
            let mut counts = [0u64; 12];
            for &d in &dist {
                counts[(d as usize).min(11)] += 1;
            }
            let mut h = 0xcbf29ce484222325u64 ^ loops[s];
            for c in counts {
                h = (h ^ c).wrapping_mul(0x100000001b3);
            }
            h
        })
        .collect();
    // One refinement round: fold in sorted neighbour hashes.
    let mut vertex_hashes: Vec<u64> = (0..n)
        .map(|v| {
            let mut nbrs: Vec<u64> = adj[v].iter().map(|&w| base[w]).collect();
            nbrs.sort_unstable();
            nbrs.into_iter()
                .fold(base[v], |h, x| (h ^ x).wrapping_mul(0x100000001b3))
        })
        .collect();
    vertex_hashes.sort_unstable();
    vertex_hashes
        .into_iter()
        .fold(0x9E3779B97F4A7C15u64, |h, v| {
            (h ^ v).wrapping_mul(0x100000001b3)
        })
}

/// Labeled enumeration of connected cubic multigraphs on `n` vertices,
/// deduplicated up to isomorphism. `simple` restricts to simple graphs.
/// Exponential; intended for n <= 10 simple or n <= 4 with multi-edges.
pub fn enumerate_connected_cubic(n: u32, simple: bool) -> Vec<CubicGraph> {
    struct State {
        n: u32,
        simple: bool,
        deg: Vec<u32>,
        edges: Vec<(u32, u32)>,
        reps: Vec<(u64, CubicGraph)>,
    }
    fn connected(n: u32, edges: &[(u32, u32)]) -> bool {
        let mut parent: Vec<u32> = (0..n).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        let mut comps = n;
        for &(u, v) in edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru as usize] = rv;
                comps -= 1;
            }
        }
        comps == 1
    }
    fn rec(s: &mut State) {
        // Complete the lowest deficient vertex; its earlier partners are
        // already fixed, so each labeled graph is generated exactly once.
        let u = match (0..s.n).find(|&v| s.deg[v as usize] < 3) {
            Some(u) => u,
            None => {
                if !connected(s.n, &s.edges) {
                    return;
                }
                let fp = fingerprint(s.n, &s.edges);
                if !s.reps.iter().any(|(f, _)| *f == fp) {
                    let g = CubicGraph::build(s.n, &s.edges).expect("degrees are 3");
                    debug_assert!(!s.reps.iter().any(|(_, r)| is_isomorphic(r, &g)));
                    s.reps.push((fp, g));
                }
                return;
            }
        };
        let lo = if s.simple { u + 1 } else { u };
        for w in lo..s.n {
            if w == u {
                // Loop: consumes two slots.
                if s.deg[u as usize] + 2 > 3 {
                    continue;
                }
                s.deg[u as usize] += 2;
                s.edges.push((u, u));
                rec(s);
                s.edges.pop();
                s.deg[u as usize] -= 2;
                continue;
            }
            if s.deg[w as usize] >= 3 {
                continue;
            }
            if s.simple && s.edges.iter().any(|&(a, b)| (a, b) == (u, w)) {
                continue;
            }
            s.deg[u as usize] += 1;
            s.deg[w as usize] += 1;
            s.edges.push((u, w));
            rec(s);
            s.edges.pop();
            s.deg[u as usize] -= 1;
            s.deg[w as usize] -= 1;
        }
    }
    let mut state = State {
        n,
        simple,
        deg: vec![0; n as usize],
        edges: Vec::new(),
        reps: Vec::new(),
    };
    rec(&mut state);
    state.reps.into_iter().map(|(_, g)| g).collect()
}

/// The fixed multigraph corpus: every connected cubic multigraph on 2 or
/// 4 vertices, plus named and constructed graphs with loops, digons and
/// bridges on 6-8 vertices.
pub fn multigraph_corpus() -> Vec<(String, CubicGraph)> {
    let mut out: Vec<(String, CubicGraph)> = Vec::new();
    for n in [2u32, 4] {
        for (i, g) in enumerate_connected_cubic(n, false).into_iter().enumerate() {
            out.push((format!("multi-n{n}-{i}"), g));
        }
    }
    use decyc_core::generators::{loop_tight_gadget, named, Named};
    out.push(("l4".into(), named(Named::L4)));
    out.push(("d2".into(), named(Named::D2)));
    out.push(("digon8".into(), named(Named::Digon8)));
    out.push((
        "loop-gadget".into(),
        loop_tight_gadget(&named(Named::D2)).expect("dipole is one-face embeddable"),
    ));
    out.push((
        "bridged-tight-8".into(),
        bridged_tight_example(),
    ));
    // Deduplicate: the small census already contains L4, D2 and friends.
    let mut unique: Vec<(String, CubicGraph)> = Vec::new();
    for (name, g) in out {
        if !unique.iter().any(|(_, h)| is_isomorphic(h, &g)) {
            unique.push((name, g));
        }
    }
    unique
}

/// A loopless 1-connected cubic graph that is two-face embeddable and
/// has stable but no coherent partitions: a subdivided dipole and a
/// subdivided loop gadget joined by a bridge. Found by complete search
/// over bridged pairs of rooted sides.
pub fn bridged_tight_example() -> CubicGraph {
    CubicGraph::build(
        8,
        &[
            (0, 1),
            (0, 2),
            (1, 2),
            (1, 2),
            (0, 3),
            (3, 4),
            (3, 4),
            (4, 5),
            (5, 6),
            (5, 7),
            (6, 7),
            (6, 7),
        ],
    )
    .expect("fixture is cubic")
}

/// The star of three loops: the smallest non-upper-embeddable cubic
/// multigraph (deficiency 3).
pub fn star_of_loops() -> CubicGraph {
    CubicGraph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)]).expect("cubic")
}

/// Matrix-tree spanning tree count (integer Bareiss elimination on the
/// reduced Laplacian): the independent oracle for tree enumeration.
pub fn matrix_tree_count(g: &Graph) -> i128 {
    let n = g.vertex_count() as usize;
    if n <= 1 {
        return 1;
    }
    // Laplacian over the multigraph, loops ignored.
    let mut lap = vec![vec![0i128; n]; n];
    for e in g.edges() {
        let (u, v) = g.endpoints(e);
        if u == v {
            continue;
        }
        lap[u.index()][u.index()] += 1;
        lap[v.index()][v.index()] += 1;
        lap[u.index()][v.index()] -= 1;
        lap[v.index()][u.index()] -= 1;
    }
    // Delete the last row and column, then fraction-free elimination.
    let m = n - 1;
    let mut a: Vec<Vec<i128>> = (0..m).map(|i| lap[i][..m].to_vec()).collect();
    let mut prev = 1i128;
    let mut sign = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            let swap = (k + 1..m).find(|&r| a[r][k] != 0);
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[m - 1][m - 1]
}

/// Simple-graph check shared by the corpus assertions.
pub fn is_simple(g: &CubicGraph) -> bool {
    decyc_core::generators::is_simple(g)
}

/// Girth-5 vertex-transitive sanity pin used in a few places.
pub fn assert_all_distinct_iso(graphs: &[CubicGraph]) {
    for (i, a) in graphs.iter().enumerate() {
        for b in &graphs[i + 1..] {
            assert!(!is_isomorphic(a, b), "census contains isomorphic duplicates");
        }
    }
}

pub fn vertexset(ids: &[u32]) -> decyc_core::set::VertexSet {
    ids.iter().map(|&v| Vertex(v)).collect()
}
