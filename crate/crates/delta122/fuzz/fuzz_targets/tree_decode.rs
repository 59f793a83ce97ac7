//! Fuzzes the decomposition-tree JSON decoder and its replay: arbitrary
//! bytes must either fail to decode, fail replay validation with an error,
//! or replay into a tournament that the serializer round-trips.

#![no_main]

use delta122::construct::{reconstruct, DecompositionTree};
use delta122::decompose::natural_ordering;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 1 << 16 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(tree) = DecompositionTree::from_json(text) else {
        return;
    };
    // Keep replay work polynomial in a small bound.
    if tree.base.n() > 48 || tree.steps.len() > 24 || tree.final_size() > 192 {
        return;
    }
    let round = DecompositionTree::from_json(&tree.to_json()).expect("own encoding decodes");
    assert_eq!(round, tree, "JSON round-trip changed the tree");
    if let Ok(t) = reconstruct(&tree) {
        // A tree that replays certifies freeness; if the natural ordering
        // exists it must order exactly the replayed vertices.
        if let Ok(ordering) = natural_ordering(&tree) {
            assert_eq!(ordering.len(), t.n());
        }
    }
});
