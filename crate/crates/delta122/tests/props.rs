//! Property-based tests for the module invariants: format round-trips,
//! ordering algebra, decomposition soundness, and certificate bounds.

use proptest::prelude::*;

use delta122::apps;
use delta122::construct::{gen_free, reconstruct, DecompositionTree, GenParams};
use delta122::decompose::{decompose, theorem11_ordering, ComponentClass, Decomposition};
use delta122::oracle::oracle_is_free;
use delta122::patterns::find_delta122;
use delta122::{backedge_graph, Tournament, VertexOrdering};

/// An arbitrary labeled tournament on 1..=8 vertices.
fn arb_tournament() -> impl Strategy<Value = Tournament> {
    (1usize..=8)
        .prop_flat_map(|n| {
            let bits = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), bits))
        })
        .prop_map(|(n, bits)| {
            let mut k = 0;
            let mut up = vec![vec![false; n]; n];
            for i in 0..n {
                for j in (i + 1)..n {
                    up[i][j] = bits[k];
                    k += 1;
                }
            }
            Tournament::from_fn(n, |i, j| if i < j { up[i][j] } else { !up[j][i] })
        })
}

/// A generated Δ(1,2,2)-free tournament with its construction tree.
fn arb_free() -> impl Strategy<Value = (Tournament, DecompositionTree)> {
    (1usize..=24, any::<u64>(), 0.0f64..=0.8).prop_map(|(n_target, seed, density)| {
        gen_free(&GenParams {
            n_target,
            backedge_density: density,
            subst_weight: 1.0,
            join_weight: 1.0,
            seed,
        })
        .expect("generation within budget")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tmt_round_trips(t in arb_tournament()) {
        let parsed = Tournament::from_tmt(&t.to_tmt()).expect("own output parses");
        prop_assert_eq!(parsed, t);
    }

    #[test]
    fn ordering_positions_invert_the_permutation(t in arb_tournament()) {
        let ordering = VertexOrdering::identity(t.n());
        let pos = ordering.positions();
        for (k, &v) in ordering.perm.iter().enumerate() {
            prop_assert_eq!(pos[v], k);
        }
    }

    #[test]
    fn backedge_count_is_invariant_under_reversal_conjugation(t in arb_tournament()) {
        let sigma = VertexOrdering::identity(t.n());
        let direct = backedge_graph(&t, &sigma);
        let conj = backedge_graph(&t.reverse(), &sigma.reversed());
        prop_assert_eq!(direct.edges, conj.edges);
    }

    #[test]
    fn decompose_is_sound_on_arbitrary_tournaments(t in arb_tournament()) {
        match decompose(&t).expect("decompose never errors on valid input") {
            Decomposition::Tree(tree) => {
                prop_assert!(oracle_is_free(&t));
                prop_assert_eq!(reconstruct(&tree).expect("tree replays"), t);
            }
            Decomposition::Witness(w) => {
                prop_assert!(!oracle_is_free(&t));
                // The witness names an actual Δ(1,2,2) copy.
                for &y in &w.y {
                    prop_assert!(t.edge(w.x, y));
                    for &z in &w.z {
                        prop_assert!(t.edge(y, z));
                    }
                }
                for &z in &w.z {
                    prop_assert!(t.edge(z, w.x));
                }
            }
        }
    }

    #[test]
    fn freeness_detector_agrees_with_the_oracle(t in arb_tournament()) {
        prop_assert_eq!(find_delta122(&t).is_none(), oracle_is_free(&t));
    }

    #[test]
    fn generated_trees_round_trip_and_serialize((t, tree) in arb_free()) {
        prop_assert_eq!(reconstruct(&tree).expect("tree replays"), t.clone());
        let back = DecompositionTree::from_json(&tree.to_json()).expect("own JSON decodes");
        prop_assert_eq!(back, tree);
    }

    #[test]
    fn theorem11_normal_form_is_clean_on_generated_instances((t, _tree) in arb_free()) {
        let (ordering, classes) = theorem11_ordering(&t).expect("free input normalizes");
        prop_assert_eq!(ordering.len(), t.n());
        for (comp, class) in &classes {
            match class {
                ComponentClass::Other => prop_assert!(false, "unclassified component"),
                ComponentClass::H5 | ComponentClass::H7 => prop_assert!(comp.consecutive),
                _ => {}
            }
        }
    }

    #[test]
    fn certificates_meet_their_bounds_on_generated_instances((t, _tree) in arb_free()) {
        let n = t.n();
        let c = apps::color(&t).expect("free input colors");
        prop_assert!(c.k <= 3);
        let s = apps::transitive_set(&t).expect("free input has a transitive set");
        prop_assert!(s.vertices.len() >= (3 * n).div_ceil(7));
        let (p, m) = apps::pack_triangles(&t).expect("free input packs");
        prop_assert!(p.triangles.len() >= (2 * m).div_ceil(7));
    }
}

/// The classification converse caveat: a backedge graph whose components are
/// all monotone paths does not certify freeness. The 5-vertex tournament
/// with backedge set {v1v3, v2v4, v3v5} under the identity ordering
/// classifies as monotone paths, yet contains Δ(1,2,2).
#[test]
fn monotone_path_classification_does_not_imply_freeness() {
    let backedges = [(0usize, 2usize), (1, 3), (2, 4)];
    let t = Tournament::from_fn(5, |i, j| {
        if backedges.contains(&(i.min(j), i.max(j))) {
            i > j
        } else {
            i < j
        }
    });
    let sigma = VertexOrdering::identity(5);
    let g = backedge_graph(&t, &sigma);
    let classes = delta122::decompose::classify_components(&g);
    assert!(classes
        .iter()
        .all(|(_, c)| *c == ComponentClass::MonotonePath));
    assert!(!oracle_is_free(&t));
}
