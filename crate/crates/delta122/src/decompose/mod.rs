//! The inverse direction: paving orderings, structure decomposition, and
//! backedge normal forms.

mod insert;
mod structure;

pub use insert::{eliminate_p1_violations, insert_vertex, paving_ordering, reshuffle_triangle};
pub use structure::{
    classify_components, decompose, natural_ordering, theorem11_ordering, ComponentClass,
    Decomposition,
};
pub(crate) use structure::normalized_base_ordering;

use crate::core::{backedge_graph, Tournament, VertexOrdering};

/// Per-vertex backedge-neighbour counts on each side of a given ordering.
#[derive(Clone, Debug)]
pub struct PavedStatus {
    /// Backedge-neighbours at smaller positions, per vertex.
    pub left: Vec<usize>,
    /// Backedge-neighbours at larger positions, per vertex.
    pub right: Vec<usize>,
}

impl PavedStatus {
    /// At most one backedge-neighbour on each side.
    pub fn paved(&self, v: usize) -> bool {
        self.left[v] <= 1 && self.right[v] <= 1
    }

    /// Exactly two on one side, at most one on the other.
    pub fn nearly_paved(&self, v: usize) -> bool {
        (self.left[v] == 2 && self.right[v] <= 1) || (self.left[v] <= 1 && self.right[v] == 2)
    }
}

/// Counts each vertex's backedge-neighbours on both sides of `sigma`.
pub fn paved_status(t: &Tournament, sigma: &VertexOrdering) -> PavedStatus {
    let g = backedge_graph(t, sigma);
    let pos = sigma.positions();
    let mut left = vec![0; t.n()];
    let mut right = vec![0; t.n()];
    for &(u, v) in &g.edges {
        let (earlier, later) = if pos[u] < pos[v] { (u, v) } else { (v, u) };
        right[earlier] += 1;
        left[later] += 1;
    }
    PavedStatus { left, right }
}

/// Tests the two paving conditions: (P1) no backedge between consecutive
/// positions, (P2) every vertex has at most one backedge-neighbour on each
/// side.
pub fn check_paving(t: &Tournament, sigma: &VertexOrdering) -> bool {
    if sigma.len() != t.n() {
        return false;
    }
    for k in 1..sigma.len() {
        if t.edge(sigma.perm[k], sigma.perm[k - 1]) {
            return false;
        }
    }
    let status = paved_status(t, sigma);
    (0..t.n()).all(|v| status.paved(v))
}
