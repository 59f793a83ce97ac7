//! Acceptance suite: one test per criterion, each a single pass/fail line.
//!
//! Criteria 1–8 cover exhaustive soundness at n ≤ 7, labeled round-trips,
//! the backedge normal form, the three applications (coloring, transitive
//! sets, triangle packings), the lemma-level structure properties, and the
//! paving machinery. The exhaustive n ≤ 7 sweep (all 2^21 labeled 7-vertex
//! tournaments through every check) is computed once and shared.

use std::sync::OnceLock;

use delta122::apps;
use delta122::construct::{
    gen_free, gen_paving, p7minus_join, reconstruct, substitute, GenParams,
};
use delta122::decompose::{
    check_paving, classify_components, decompose, paving_ordering, theorem11_ordering,
    ComponentClass, Decomposition,
};
use delta122::oracle::{
    enumerate_labeled, oracle_alpha, oracle_chromatic, oracle_is_free, oracle_nu,
    oracle_paving_ordering, tournament_from_mask, Check, EnumerationReport, ALL_CHECKS,
};
use delta122::patterns::{
    find_basic_copy, find_delta122, is_bridge, is_nice_vertex, pattern, BasicKind,
};
use delta122::{backedge_graph, Tournament, VertexOrdering};

// ---------------------------------------------------------------------------
// Shared corpora
// ---------------------------------------------------------------------------

/// Exhaustive sweep: every labeled tournament with n ≤ 7 through all checks.
fn sweeps() -> &'static [EnumerationReport] {
    static S: OnceLock<Vec<EnumerationReport>> = OnceLock::new();
    S.get_or_init(|| {
        (1..=7)
            .map(|n| enumerate_labeled(n, &ALL_CHECKS, 1).expect("n is within the cap"))
            .collect()
    })
}

/// Total failures of one check across the exhaustive sweep.
fn sweep_failures(check: Check) -> usize {
    sweeps()
        .iter()
        .map(|r| r.failures.iter().filter(|f| f.check == check.name()).count())
        .sum()
}

/// A mixed generated corpus: free tournaments of assorted sizes with their
/// construction trees.
fn gen_corpus() -> &'static [(Tournament, delta122::construct::DecompositionTree)] {
    static C: OnceLock<Vec<(Tournament, delta122::construct::DecompositionTree)>> = OnceLock::new();
    C.get_or_init(|| {
        (0..200u64)
            .map(|i| {
                gen_free(&GenParams {
                    n_target: 1 + (i as usize * 7) % 64,
                    backedge_density: 0.2 + 0.5 * ((i % 5) as f64 / 4.0),
                    seed: i,
                    ..GenParams::default()
                })
                .expect("generation within budget")
            })
            .collect()
    })
}

fn transitive(n: usize) -> Tournament {
    Tournament::from_fn(n, |i, j| i < j)
}

/// P7 substituted into both vertices of the 2-vertex transitive tournament.
fn p7_double_blowup() -> Tournament {
    let p7 = pattern(BasicKind::P7);
    let (step1, _) = substitute(&transitive(2), 0, &p7).expect("valid site");
    let (step2, _) = substitute(&step1, 7, &p7).expect("valid site");
    assert_eq!(step2.n(), 14);
    step2
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

/// Criterion 1: for all labeled tournaments with n ≤ 7, `decompose` returns a
/// tree iff the brute-force oracle says free, every witness validates, and
/// the census matches the frozen fixture counts.
#[test]
fn criterion_1_exhaustive_soundness_n7() {
    assert_eq!(sweep_failures(Check::Freeness), 0, "freeness failures");
    assert_eq!(sweep_failures(Check::RoundTrip), 0, "decompose/witness failures");
    let frozen: serde_json::Value =
        serde_json::from_str(include_str!("data/frozen.json")).expect("fixture parses");
    for r in sweeps() {
        if r.n < 5 {
            continue;
        }
        let key = r.n.to_string();
        assert_eq!(Some(r.total), frozen["total"][&key].as_u64(), "total at n={}", r.n);
        assert_eq!(
            Some(r.free_count),
            frozen["free_count"][&key].as_u64(),
            "free_count at n={}",
            r.n
        );
        assert_eq!(
            Some(r.paving_count),
            frozen["paving_count"][&key].as_u64(),
            "paving_count at n={}",
            r.n
        );
    }
}

/// Criterion 2: `reconstruct(decompose(T)) = T` as labeled tournaments,
/// exhaustively at n ≤ 7 and on 10⁴ generated instances with n up to 200.
#[test]
fn criterion_2_labeled_round_trip() {
    assert_eq!(sweep_failures(Check::RoundTrip), 0, "exhaustive round-trip failures");
    let mut max_n = 0;
    for i in 0..10_000u64 {
        let (t, tree) = gen_free(&GenParams {
            n_target: 1 + (i as usize % 200),
            backedge_density: 0.1 + 0.6 * ((i % 7) as f64 / 6.0),
            seed: i,
            ..GenParams::default()
        })
        .expect("generation within budget");
        max_n = max_n.max(t.n());
        assert_eq!(reconstruct(&tree).expect("generated tree replays"), t, "sample {i}");
        let found = match decompose(&t).expect("free input decomposes") {
            Decomposition::Tree(found) => found,
            Decomposition::Witness(w) => panic!("sample {i}: spurious witness {w:?}"),
        };
        assert_eq!(
            reconstruct(&found).expect("decomposed tree replays"),
            t,
            "sample {i}: decompose round-trip"
        );
    }
    assert!(max_n >= 200, "corpus never reached n = 200 (max {max_n})");
}

/// Criterion 3: the normal form has no unclassified component, H5/H7
/// components and H6 flock halves sit on consecutive positions, and the
/// 5-vertex monotone-path negative control is not free.
#[test]
fn criterion_3_normal_form() {
    assert_eq!(sweep_failures(Check::Classification), 0, "exhaustive normal-form failures");

    for (idx, (t, _)) in gen_corpus().iter().enumerate() {
        let (ordering, classes) = theorem11_ordering(t)
            .unwrap_or_else(|e| panic!("sample {idx}: normal form failed: {e}"));
        let pos = ordering.positions();
        for (comp, class) in &classes {
            let ps: Vec<usize> = comp.vertices.iter().map(|&v| pos[v]).collect();
            let consecutive =
                |w: &[usize]| w.windows(2).all(|pair| pair[1] == pair[0] + 1);
            match class {
                ComponentClass::Other => panic!("sample {idx}: unclassified component"),
                ComponentClass::H5 | ComponentClass::H7 => {
                    assert!(comp.consecutive, "sample {idx}: {class:?} not consecutive")
                }
                ComponentClass::H6 => {
                    // Flocks are the positional halves of the component.
                    assert_eq!(ps.len(), 6);
                    assert!(
                        consecutive(&ps[..3]) && consecutive(&ps[3..]),
                        "sample {idx}: H6 flock split across non-consecutive positions {ps:?}"
                    );
                }
                _ => {}
            }
        }
    }

    // Negative control: backedges {v1v3, v2v4, v3v5} under the identity
    // ordering classify as monotone paths, yet the tournament is not free.
    let backedges = [(0usize, 2usize), (1, 3), (2, 4)];
    let t = Tournament::from_fn(5, |i, j| {
        if backedges.contains(&(i.min(j), i.max(j))) {
            i > j
        } else {
            i < j
        }
    });
    let g = backedge_graph(&t, &VertexOrdering::identity(5));
    let classes = classify_components(&g);
    assert!(
        classes.iter().all(|(_, c)| *c == ComponentClass::MonotonePath),
        "negative control misclassified: {classes:?}"
    );
    assert!(!oracle_is_free(&t), "negative control is unexpectedly free");
}

/// Criterion 4: three transitive classes suffice; two-colorability agrees
/// with the chromatic oracle exhaustively at n ≤ 7; χ(P7) = 3 and χ(T5) = 2.
#[test]
fn criterion_4_coloring() {
    assert_eq!(sweep_failures(Check::Coloring), 0, "exhaustive coloring failures");

    for (idx, (t, _)) in gen_corpus().iter().enumerate() {
        let c = apps::color(t).unwrap_or_else(|e| panic!("sample {idx}: {e}"));
        assert!(c.k <= 3, "sample {idx}: k = {}", c.k);
        for class in 0..c.k {
            let members: Vec<usize> =
                (0..t.n()).filter(|&v| c.color[v] == class).collect();
            if members.is_empty() {
                continue;
            }
            let (sub, _) = t.induced(&members).expect("class induces");
            assert!(sub.is_transitive(), "sample {idx}: class {class} not transitive");
        }
    }

    let p7 = pattern(BasicKind::P7);
    assert_eq!(oracle_chromatic(&p7).unwrap(), 3);
    assert_eq!(apps::color(&p7).unwrap().k, 3);
    assert!(!apps::is_two_colorable(&p7).unwrap());
    let t5 = pattern(BasicKind::T5);
    assert_eq!(oracle_chromatic(&t5).unwrap(), 2);
    assert_eq!(apps::color(&t5).unwrap().k, 2);
    assert!(apps::is_two_colorable(&t5).unwrap());
}

/// Criterion 5: every free tournament carries a transitive set of at least
/// ⌈3n/7⌉ vertices; the double P7 blowup meets the bound with equality 6 and
/// matches the exact oracle.
#[test]
fn criterion_5_transitive_bound() {
    assert_eq!(sweep_failures(Check::Alpha), 0, "exhaustive transitive-set failures");

    for (idx, (t, _)) in gen_corpus().iter().enumerate() {
        let s = apps::transitive_set(t).unwrap_or_else(|e| panic!("sample {idx}: {e}"));
        assert!(
            s.vertices.len() >= (3 * t.n()).div_ceil(7),
            "sample {idx}: |S| = {} below the bound",
            s.vertices.len()
        );
        let (sub, _) = t.induced(&s.vertices).expect("set induces");
        assert!(sub.is_transitive(), "sample {idx}: set not transitive");
    }

    let blowup = p7_double_blowup();
    let s = apps::transitive_set(&blowup).unwrap();
    assert_eq!(s.vertices.len(), 6);
    assert_eq!(oracle_alpha(&blowup).unwrap(), 6);
}

/// Criterion 6: vertex-disjoint cyclic-triangle packings of size ⌈2m/7⌉ with
/// m taken from the natural ordering; exact values on P7 and the double
/// blowup; the paving packer achieves ⌈m/3⌉ on free paving instances.
#[test]
fn criterion_6_packing_bound() {
    assert_eq!(sweep_failures(Check::Packing), 0, "exhaustive packing failures");

    for (idx, (t, _)) in gen_corpus().iter().enumerate() {
        let (p, m) = apps::pack_triangles(t).unwrap_or_else(|e| panic!("sample {idx}: {e}"));
        assert!(
            p.triangles.len() >= (2 * m).div_ceil(7),
            "sample {idx}: |P| = {} below ⌈2·{m}/7⌉",
            p.triangles.len()
        );
        let mut seen = std::collections::HashSet::new();
        for &[a, b, c] in &p.triangles {
            assert!(
                t.edge(a, b) && t.edge(b, c) && t.edge(c, a),
                "sample {idx}: {a},{b},{c} not a cyclic triangle"
            );
            assert!(
                seen.insert(a) && seen.insert(b) && seen.insert(c),
                "sample {idx}: triangles overlap"
            );
        }
    }

    let p7 = pattern(BasicKind::P7);
    let (p, _) = apps::pack_triangles(&p7).unwrap();
    assert_eq!(p.triangles.len(), 2);
    assert_eq!(oracle_nu(&p7).unwrap(), 2);
    let blowup = p7_double_blowup();
    let (p, _) = apps::pack_triangles(&blowup).unwrap();
    assert_eq!(p.triangles.len(), 4);
    assert_eq!(oracle_nu(&blowup).unwrap(), 4);

    for seed in 0..40u64 {
        let (t, sigma) = gen_paving(&GenParams {
            n_target: 6 + (seed as usize % 19),
            backedge_density: 0.5,
            seed,
            ..GenParams::default()
        })
        .expect("generation within budget");
        if find_delta122(&t).is_some() {
            continue;
        }
        let m = backedge_graph(&t, &sigma).edges.len();
        let p = apps::pack_paving(&t, &sigma).expect("free paving input packs");
        assert!(
            p.triangles.len() >= m.div_ceil(3),
            "seed {seed}: |P| = {} below ⌈{m}/3⌉",
            p.triangles.len()
        );
    }
}

/// True iff the homogeneous pair `blocks` sits inside a 7-vertex set
/// inducing P7 (a nested pair).
fn is_nested(t: &Tournament, blocks: &[usize]) -> bool {
    let p7 = pattern(BasicKind::P7);
    (0..t.n()).filter(|w| !blocks.contains(w)).any(|w| {
        let mut vs = blocks.to_vec();
        vs.push(w);
        vs.sort_unstable();
        let (sub, _) = t.induced(&vs).expect("subset induces");
        matches!(delta122::core::isomorphic_tournaments(&sub, &p7), Ok(Some(_)))
    })
}

/// Criterion 7: homogeneity of basic copies (exhaustive at n ≤ 7 and on the
/// generated corpus), the nice-vertex substitution lemma in both directions,
/// and the bridge join lemma in both directions — all against the oracle.
#[test]
fn criterion_7_lemma_properties() {
    assert_eq!(sweep_failures(Check::Homogeneity), 0, "exhaustive homogeneity failures");

    for seed in 0..40u64 {
        let (t, _) = gen_free(&GenParams {
            n_target: 5 + (seed as usize % 8),
            backedge_density: 0.5,
            seed: 9000 + seed,
            ..GenParams::default()
        })
        .expect("generation within budget");

        // Copy homogeneity on this corpus is re-checked through the oracle
        // module's check to keep one definition.
        assert!(
            delta122::oracle::run_single_check(Check::Homogeneity, &t),
            "seed {seed}: a basic copy is not homogeneous"
        );

        // Substituting a 2-vertex tournament preserves freeness exactly at
        // nice vertices.
        for v in 0..t.n() {
            let (nice, _) = is_nice_vertex(&t, v).expect("vertex in range");
            let (grown, _) = substitute(&t, v, &transitive(2)).expect("valid site");
            assert_eq!(
                oracle_is_free(&grown),
                nice,
                "seed {seed}: substitution at vertex {v} contradicts niceness"
            );
        }

        // Joining preserves freeness without nesting exactly at bridges.
        for u in 0..t.n() {
            for v in 0..t.n() {
                if u == v || !t.edge(u, v) {
                    continue;
                }
                let (bridge, _) = is_bridge(&t, u, v).expect("edge in range");
                let (grown, (d1, d2), _) = p7minus_join(&t, u, v).expect("valid edge");
                let blocks: Vec<usize> = d1.iter().chain(d2.iter()).copied().collect();
                let clean = oracle_is_free(&grown) && !is_nested(&grown, &blocks);
                assert_eq!(
                    clean, bridge,
                    "seed {seed}: join at {u}→{v} contradicts the bridge test"
                );
            }
        }
    }
}

/// Criterion 8: on basic-free inputs the constructive paving ordering exists,
/// passes `check_paving`, and agrees with the exact search — exhaustively at
/// n ≤ 7, sound against the exact search at n ≤ 6, and on a strided sample
/// at n = 8.
#[test]
fn criterion_8_paving_machinery() {
    assert_eq!(sweep_failures(Check::Paving), 0, "exhaustive paving failures");

    // At n ≤ 6: every produced ordering is valid and matched by the exact
    // search, and the constructive algorithm only rejects inputs outside its
    // contract (not basic-free — such inputs may still admit an ordering).
    for n in 1..=6usize {
        let bits = n * (n - 1) / 2;
        for mask in 0..(1u64 << bits) {
            let t = tournament_from_mask(n, mask);
            match paving_ordering(&t) {
                Ok(sigma) => {
                    let exact = oracle_paving_ordering(&t).expect("n within cap").is_some();
                    assert!(exact, "n={n} mask={mask}: ordering despite exact none");
                    assert!(check_paving(&t, &sigma), "n={n} mask={mask}: invalid ordering");
                }
                Err(_) => {
                    let basic_free =
                        find_delta122(&t).is_none() && find_basic_copy(&t).is_none();
                    assert!(!basic_free, "n={n} mask={mask}: rejection on basic-free input");
                }
            }
        }
    }

    // Strided sample at n = 8 (stride 1021 over the 2^28 masks).
    let r = enumerate_labeled(8, &[Check::Paving], 1021).expect("sampled cap allows n = 8");
    assert!(r.total > 200_000, "sample unexpectedly small: {}", r.total);
    assert!(r.failures.is_empty(), "n = 8 paving failures: {}", r.failures.len());
}
