//! Acceptance suite: one test per gate criterion, each printing a
//! `criterion N: PASS` line with its coverage numbers. Run with
//! `cargo test -p decyc --test acceptance -- --nocapture`.

mod support;

use decyc::envelope::{Envelope, PartitionDto, ResultDto};
use decyc::experiment::run_experiment;
use decyc_core::canonical::is_isomorphic;
use decyc_core::decomposition::{
    canonical_decomposition, coherent_partition_c4c, edge_extension, odd_two_sum, SplitOrder,
};
use decyc_core::decycling::{
    coherent_partition_bruteforce, decycling_lower_bound, decycling_number_bruteforce,
    partition_from_xuong, stable_partition_bruteforce, xuong_from_partition, PartitionKind,
};
use decyc_core::generators::{named, random_cubic, triangle_diamond_expansion, FamilyBase, Named};
use decyc_core::genus::{
    deficiency_exact, find_nebesky_witness, kotzig_pairing,
    validate_nebesky, WitnessStrategy,
};
use decyc_core::graph::CubicGraph;
use decyc_core::rng::SplitMix64;
use decyc_core::set::{Edge, Vertex};
use decyc_core::{SearchBudget, SearchOutcome};
use support::{census, multigraph_corpus};

/// The simple census plus the fixed multigraph corpus (all <= 10
/// vertices).
fn corpus_le10() -> Vec<(String, CubicGraph)> {
    let mut out: Vec<(String, CubicGraph)> = census()
        .into_iter()
        .enumerate()
        .map(|(i, g)| (format!("census-{i}-n{}", g.vertex_count()), g))
        .collect();
    out.extend(multigraph_corpus());
    out
}

/// Deterministic 12-vertex additions for the identity checks.
fn corpus_n12() -> Vec<(String, CubicGraph)> {
    let mut out: Vec<(String, CubicGraph)> = Vec::new();
    let mut inflated = named(Named::K4);
    for v in 0..4 {
        inflated = decyc_core::generators::inflate_vertex(&inflated, Vertex(v)).unwrap();
    }
    out.push(("k4-inflated".into(), inflated));
    out.push((
        "ring-3".into(),
        decyc_core::generators::ring_of_diamonds(3).unwrap(),
    ));
    // Three successive extensions of K33.
    let mut g = named(Named::K33);
    for _ in 0..3 {
        let (e, f) = nonadjacent_edge_pair(&g, 1);
        g = edge_extension(&g, e, f).unwrap();
    }
    out.push(("k33-extended-3".into(), g));
    for seed in 0..20u64 {
        let g = random_cubic(12, 1000 + seed, false).unwrap();
        if g.is_connected() {
            out.push((format!("random-12-{seed}"), g));
        }
    }
    for seed in 0..5u64 {
        let g = random_cubic(12, 2000 + seed, true).unwrap();
        if g.is_connected() {
            out.push((format!("random-simple-12-{seed}"), g));
        }
    }
    out
}

fn nonadjacent_edge_pair(g: &CubicGraph, seed: u64) -> (Edge, Edge) {
    let mut rng = SplitMix64::new(seed);
    loop {
        let e = Edge(rng.below(g.edge_count() as usize) as u32);
        let f = Edge(rng.below(g.edge_count() as usize) as u32);
        if e == f {
            continue;
        }
        let (a, b) = g.endpoints(e);
        let (c, d) = g.endpoints(f);
        if a != c && a != d && b != c && b != d {
            return (e, f);
        }
    }
}

fn is_upper_embeddable_exact(g: &CubicGraph) -> bool {
    deficiency_exact(g).expect("corpus graphs are small and connected").xi <= 1
}

#[test]
fn criterion_1_lower_bound_law() {
    let mut checked = 0;
    for (name, g) in corpus_le10() {
        let n = g.vertex_count();
        let (phi, _) = decycling_number_bruteforce(&g).unwrap();
        let bound = decycling_lower_bound(n);
        if is_upper_embeddable_exact(&g) {
            assert_eq!(phi, bound, "{name}: upper-embeddable but phi != bound");
        } else {
            assert!(phi > bound, "{name}: not upper-embeddable but phi == bound");
        }
        checked += 1;
    }
    println!("criterion 1: PASS — phi = ceil((n+2)/4) iff upper-embeddable on {checked} graphs");
}

#[test]
fn criterion_2_huang_liu_identity() {
    let mut corpus = corpus_le10();
    corpus.extend(corpus_n12());
    let mut checked = 0;
    for (name, g) in corpus {
        let n = g.vertex_count();
        let (phi, _) = decycling_number_bruteforce(&g).unwrap();
        let gamma = deficiency_exact(&g).unwrap().gamma_max;
        assert_eq!(phi + gamma, n / 2 + 1, "{name}");
        checked += 1;
    }
    println!("criterion 2: PASS — phi + gamma_max = n/2 + 1 on {checked} graphs (n <= 12)");
}

#[test]
fn criterion_3_stable_iff_upper_embeddable() {
    let mut checked = 0;
    for (name, g) in corpus_le10() {
        let stable = stable_partition_bruteforce(&g);
        let ue = is_upper_embeddable_exact(&g);
        match (&stable, ue) {
            (SearchOutcome::Found(p), true) => assert!(p.class.stable, "{name}"),
            (SearchOutcome::NoneExhausted(_), false) => {}
            other => panic!("{name}: stable-search/embeddability mismatch: {other:?}"),
        }
        checked += 1;
    }
    println!("criterion 3: PASS — stable partition exists iff upper-embeddable on {checked} graphs");
}

/// Deterministic c4c extension chains from K4 and Q3 up to order 16.
fn random_c4c_extensions(count: usize) -> Vec<(String, CubicGraph)> {
    let mut out = Vec::new();
    let mut rng = SplitMix64::new(0xC4C);
    let mut attempt = 0u64;
    while out.len() < count {
        attempt += 1;
        let base = if rng.next_u64() % 2 == 0 { Named::K4 } else { Named::Q3 };
        let mut g = named(base);
        let target = [12u32, 14, 16][rng.below(3)];
        let mut ok = true;
        while g.vertex_count() < target {
            let mut extended = None;
            for tries in 0..200u64 {
                let (e, f) = nonadjacent_edge_pair(&g, attempt.wrapping_mul(997) + tries);
                let candidate = edge_extension(&g, e, f).unwrap();
                if decyc_core::connectivity::is_c4c(&candidate) {
                    extended = Some(candidate);
                    break;
                }
            }
            match extended {
                Some(next) => g = next,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.push((format!("c4c-ext-{}-n{}", out.len(), g.vertex_count()), g));
        }
    }
    out
}

#[test]
fn criterion_4_coherent_c4c_pipeline() {
    let cases = random_c4c_extensions(50);
    let mut passed = 0;
    for (name, g) in &cases {
        let p = coherent_partition_c4c(g).unwrap_or_else(|e| panic!("{name}: {e}"));
        let env = Envelope::sealed("coherent-c4c", g, ResultDto::Partition(PartitionDto::of(&p)));
        assert_eq!(env.verdict, "pass", "{name}");
        let expected = if g.vertex_count() % 4 == 0 {
            PartitionKind::TreeNearIndependent
        } else {
            PartitionKind::TreeIndependent
        };
        assert_eq!(p.class.kind, expected, "{name}");
        passed += 1;
    }
    assert_eq!(passed, 50);
    println!("criterion 4: PASS — coherent partitions with verified class on 50/50 extended c4c graphs");
}

#[test]
fn criterion_5_roundtrips() {
    let budget = SearchBudget::default();
    let mut partition_trips = 0;
    let mut certificate_trips = 0;
    // Certificates and partitions from the criterion 1-3 corpus.
    for (name, g) in corpus_le10() {
        let report = deficiency_exact(&g).unwrap();
        if report.xi <= 1 {
            let cert = report.certificate;
            let p = partition_from_xuong(&g, &cert).unwrap_or_else(|e| panic!("{name}: {e}"));
            let back = xuong_from_partition(&g, &p).unwrap();
            assert_eq!(back.odd_count, cert.odd_count, "{name}: odd count changed");
            certificate_trips += 1;

            if let SearchOutcome::Found(p) = stable_partition_bruteforce(&g) {
                let cert2 = xuong_from_partition(&g, &p).unwrap();
                let p2 = partition_from_xuong(&g, &cert2).unwrap();
                assert_eq!(p2.class.kind, p.class.kind, "{name}: class changed");
                partition_trips += 1;
            }
        }
    }
    // Partitions from the criterion-4 pipeline.
    for (name, g) in random_c4c_extensions(50) {
        let p = coherent_partition_c4c(&g).unwrap();
        let cert = xuong_from_partition(&g, &p).unwrap();
        let p2 = partition_from_xuong(&g, &cert).unwrap();
        assert_eq!(p2.class.kind, p.class.kind, "{name}: class changed");
        partition_trips += 1;
    }
    let _ = budget;
    println!(
        "criterion 5: PASS — {partition_trips} partition->tree->partition and {certificate_trips} tree->partition->tree round-trips"
    );
}

#[test]
fn criterion_6_decomposition_uniqueness() {
    let bases = [Named::K4, Named::Q3, Named::K33, Named::Petersen];
    let mut rng = SplitMix64::new(0xDEC0);
    let mut done = 0;
    while done < 100 {
        let count = 2 + rng.below(3); // 2..=4 factors
        let mut g = named(bases[rng.below(4)]);
        let mut expected_factors = 1;
        for _ in 1..count {
            let k = named(bases[rng.below(4)]);
            let v1 = Vertex(rng.below(g.vertex_count() as usize) as u32);
            let v2 = Vertex(rng.below(k.vertex_count() as usize) as u32);
            let sum = decyc_core::decomposition::three_sum(&g, v1, &k, v2, None).unwrap();
            g = sum.graph;
            expected_factors += 1;
        }
        let t1 = canonical_decomposition(&g, SplitOrder::First).unwrap();
        let t2 = canonical_decomposition(&g, SplitOrder::Last).unwrap();
        assert_eq!(t1.code_multiset(), t2.code_multiset());
        assert_eq!(t1.factors.len(), expected_factors);
        assert!(is_isomorphic(&t1.recombine().unwrap(), &g));
        assert!(is_isomorphic(&t2.recombine().unwrap(), &g));
        done += 1;
    }
    println!("criterion 6: PASS — split-order-independent factors and isomorphic recombination on 100/100 sums");
}

/// Criterion 7, gating part, implemented exactly as stated: the 4-vertex
/// loop gadget and the odd 2-sum of two necklaces are claimed to admit
/// stable but no coherent partitions under complete enumeration.
///
/// The complete enumeration refutes the nonexistence half on both
/// graphs: the loop gadget has the coherent partition with the loop as
/// its single J-edge, and the necklace 2-sum is amply embeddable (the
/// necklace itself carries a heavy Xuong tree). The assertions are kept
/// faithful to the stated criterion, so this test records an honest
/// failure rather than a weakened check.
#[test]
fn criterion_7_tightness_exhaustion() {
    let budget = SearchBudget::default();
    let mut failures = Vec::new();

    let gadget = decyc_core::generators::loop_tight_gadget(&named(Named::D2)).unwrap();
    assert!(stable_partition_bruteforce(&gadget).is_found());
    if let SearchOutcome::Found(p) = coherent_partition_bruteforce(&gadget) {
        failures.push(format!(
            "loop gadget: complete enumeration finds the coherent partition A={:?} J={:?} (the loop is the single J-edge)",
            p.a, p.j
        ));
    }

    let l4 = named(Named::L4);
    let two_sum = odd_two_sum(&l4, Edge(0), &l4, Edge(0), false, &budget).unwrap();
    assert!(stable_partition_bruteforce(&two_sum).is_found());
    if let SearchOutcome::Found(p) = coherent_partition_bruteforce(&two_sum) {
        failures.push(format!(
            "odd_two_sum(L4, L4): complete enumeration finds the coherent partition A={:?} J={:?} (L4 itself admits a heavy Xuong tree)",
            p.a, p.j
        ));
    }

    if failures.is_empty() {
        println!("criterion 7: PASS — stable but not coherent, proven by complete enumeration");
    } else {
        for f in &failures {
            println!("criterion 7: FAIL — {f}");
        }
        panic!(
            "criterion 7 expected no coherent partitions; complete enumeration found them:\n{}",
            failures.join("\n")
        );
    }
}

/// Criterion 7, extended (non-gating in spirit, green in practice): the
/// two smallest family members have stable but no coherent partitions.
#[test]
fn criterion_7_extended_family_members() {
    let start = std::time::Instant::now();
    for base in [FamilyBase::K4, FamilyBase::L4] {
        let g = decyc_core::generators::family_f(base, &[1; 6]).unwrap();
        assert_eq!(g.vertex_count(), 36);
        let coherent = coherent_partition_bruteforce(&g);
        match coherent {
            SearchOutcome::NoneExhausted(proof) => {
                assert!(proof.complete);
            }
            SearchOutcome::Found(p) => panic!("family member has a coherent partition {p:?}"),
            SearchOutcome::Unknown => {
                println!("criterion 7 extended: UNKNOWN — search cap exceeded");
                return;
            }
        }
        // Stable partitions exist: both members are upper-embeddable.
        assert!(stable_partition_bruteforce(&g).is_found());
    }
    println!(
        "criterion 7 extended: PASS — no coherent partitions for the two 36-vertex family members ({}s)",
        start.elapsed().as_secs()
    );
}

/// Supplementary tightness check on genuinely tight inputs: the
/// digon-expanded dipole is tight, its digon edges are odd, and the odd
/// 2-sum of two copies stays without a coherent partition.
#[test]
fn criterion_7_supplementary_tight_two_sum() {
    let budget = SearchBudget::default();
    let d8 = named(Named::Digon8);
    assert!(matches!(
        decyc_core::genus::classify_amply(&d8, &budget, None).unwrap(),
        decyc_core::genus::AmplyVerdict::Tightly(_)
    ));
    let g = odd_two_sum(&d8, Edge(1), &d8, Edge(1), false, &budget).unwrap();
    assert_eq!(g.vertex_count(), 16);
    assert!(stable_partition_bruteforce(&g).is_found());
    assert!(coherent_partition_bruteforce(&g).is_none_exhausted());
    println!("criterion 7 supplementary: PASS — digon8 2-sum admits stable but no coherent partitions");
}

#[test]
fn criterion_8_nebesky_witness_margin() {
    let base = named(Named::K33);
    let g = triangle_diamond_expansion(&base, &[1; 9]).unwrap();
    assert_eq!(g.vertex_count(), 54);
    let w = find_nebesky_witness(&g, WitnessStrategy::TriangleFreeEdges)
        .expect("triangle-free-edges strategy yields the witness");
    assert!(validate_nebesky(&g, &w));
    assert_eq!(w.oc, 6);
    assert_eq!(w.ec, 9);
    assert_eq!(w.x.len(), 18);
    assert_eq!(w.margin(), 1);
    println!("criterion 8: PASS — witness with ec=9, oc=6, |X|=18, margin 1");
}

#[test]
fn criterion_9_kotzig_property() {
    let mut checked = 0u64;
    // All labeled connected simple graphs on up to 6 vertices with an
    // even number of edges (at most 12 for this family).
    for n in 2..=6u32 {
        let pairs: Vec<(u32, u32)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for mask in 0u32..(1 << pairs.len()) {
            if mask.count_ones() % 2 == 1 || mask.count_ones() > 12 {
                continue;
            }
            let edges: Vec<(Edge, Vertex, Vertex)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(i, &(u, v))| (Edge(i as u32), Vertex(u), Vertex(v)))
                .collect();
            if edges.is_empty() {
                continue;
            }
            // Touch every vertex of 0..n exactly when the graph uses it;
            // connectivity over the touched vertices.
            let pairing = match kotzig_pairing(&edges) {
                Ok(p) => p,
                Err(_) => continue, // disconnected
            };
            assert!(pairing.leftover.is_none());
            assert_eq!(pairing.pairs.len() * 2, edges.len());
            // Every pair is adjacent at its recorded vertex and the
            // pairs partition the edge set.
            let mut seen = std::collections::BTreeSet::new();
            for (e, f, v) in &pairing.pairs {
                assert!(seen.insert(*e) && seen.insert(*f));
                for edge in [e, f] {
                    let (_, a, b) = edges.iter().find(|(id, _, _)| id == edge).unwrap();
                    assert!(a == v || b == v);
                }
            }
            checked += 1;
        }
    }
    // Multigraph side: the connected cubic multigraphs on 2 and 4
    // vertices (6 edges each) plus parallel dipoles.
    for g in support::enumerate_connected_cubic(4, false) {
        let items: Vec<(Edge, Vertex, Vertex)> = g
            .edges()
            .map(|e| {
                let (u, v) = g.endpoints(e);
                (e, u, v)
            })
            .collect();
        let pairing = kotzig_pairing(&items).unwrap();
        assert!(pairing.leftover.is_none());
        assert_eq!(pairing.pairs.len(), 3);
        checked += 1;
    }
    for k in (2..=12u32).step_by(2) {
        let edges: Vec<(Edge, Vertex, Vertex)> =
            (0..k).map(|i| (Edge(i), Vertex(0), Vertex(1))).collect();
        let pairing = kotzig_pairing(&edges).unwrap();
        assert!(pairing.leftover.is_none());
        checked += 1;
    }
    println!("criterion 9: PASS — full adjacent-pair partitions on {checked} even-size connected graphs");
}

#[test]
fn criterion_10_experiment_harness() {
    let a = run_experiment(16, 200, 7, false);
    let b = run_experiment(16, 200, 7, false);
    assert_eq!(a, b, "experiment must be deterministic per seed");
    assert!(a.monotone(), "counter invariants violated");
    assert!(a.connected > 0);
    println!(
        "criterion 10: PASS — deterministic harness; connected={} upper-embeddable={} stable={} coherent={} unknown={}",
        a.connected, a.upper_embeddable, a.stable_found, a.coherent_found, a.unknown
    );
}
