//! Fixed patterns and structural predicates.
//!
//! The forbidden pattern Δ(1,2,2), the three basic tournaments T5, P7⁻, P7,
//! and the ordered graphs H5, H6, H7 are defined here on canonical labels
//! `0..n`, together with the detectors and predicates the decomposition is
//! built from: copy search, homogeneous sets and pairs, nice vertices, and
//! bridges.

use serde::{Deserialize, Serialize};

use crate::core::{BitRow, OrderedGraph, Tournament, VertexOrdering};
use crate::error::{Error, Result};

/// The three basic tournaments.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum BasicKind {
    T5,
    #[serde(rename = "P7minus")]
    P7Minus,
    P7,
}

impl BasicKind {
    pub fn size(self) -> usize {
        match self {
            BasicKind::T5 => 5,
            BasicKind::P7Minus => 6,
            BasicKind::P7 => 7,
        }
    }
}

/// Five vertices inducing Δ(1,2,2): `x ⇒ {y1,y2} ⇒ {z1,z2} ⇒ x`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Delta122Witness {
    pub x: usize,
    pub y: [usize; 2],
    pub z: [usize; 2],
}

/// An induced copy of a basic tournament. `vertices[k]` plays vertex `k` of
/// the reference pattern; for P7⁻ the degree partition (out-degree-3 part,
/// out-degree-2 part) inside the copy is recorded as well.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasicCopy {
    pub kind: BasicKind,
    pub vertices: Vec<usize>,
    pub degree_partition: Option<([usize; 3], [usize; 3])>,
}

impl BasicCopy {
    /// The vertex set in ascending label order.
    pub fn vertex_set(&self) -> Vec<usize> {
        let mut s = self.vertices.clone();
        s.sort_unstable();
        s
    }
}

/// Δ(1,2,2) on labels 0..5: x = 0, Y = {1,2}, Z = {3,4}.
pub fn delta122() -> Tournament {
    const EDGES: [(usize, usize); 10] = [
        (0, 1),
        (0, 2),
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 3),
        (2, 4),
        (3, 0),
        (3, 4),
        (4, 0),
    ];
    Tournament::from_fn(5, |i, j| EDGES.contains(&(i, j)))
}

/// The reference copy of a basic tournament.
///
/// T5: `i → j` iff `j − i ≡ 1, 2 (mod 5)`. P7: `i → j` iff
/// `j − i ≡ 1, 2, 4 (mod 7)`. P7⁻ is P7 with vertex 6 deleted (same rule on
/// labels 0..6).
pub fn pattern(kind: BasicKind) -> Tournament {
    match kind {
        BasicKind::T5 => Tournament::from_fn(5, |i, j| matches!((j + 5 - i) % 5, 1 | 2)),
        BasicKind::P7 => Tournament::from_fn(7, |i, j| matches!((j + 7 - i) % 7, 1 | 2 | 4)),
        BasicKind::P7Minus => Tournament::from_fn(6, |i, j| matches!((j + 7 - i) % 7, 1 | 2 | 4)),
    }
}

/// The degree partition of the reference P7⁻: D1 (out-degree 3), D2
/// (out-degree 2). D1 induces the cyclic triangle 0 → 1 → 3 → 0 and D2 the
/// cyclic triangle 2 → 4 → 5 → 2.
pub const P7M_D1: [usize; 3] = [0, 1, 3];
pub const P7M_D2: [usize; 3] = [2, 4, 5];

/// The flocks of H6: the first and second halves of its vertex set.
pub const H6_FLOCKS: ([usize; 3], [usize; 3]) = ([0, 1, 2], [3, 4, 5]);

/// The ordered graphs H5, H6, H7 on identity orderings.
pub fn h_pattern(k: usize) -> OrderedGraph {
    let (n, edges): (usize, &[(usize, usize)]) = match k {
        5 => (5, &[(0, 2), (0, 4), (1, 4), (2, 3)]),
        6 => (6, &[(0, 1), (0, 5), (1, 2), (1, 3), (2, 4), (3, 5)]),
        7 => (
            7,
            &[
                (0, 1),
                (0, 5),
                (1, 2),
                (1, 3),
                (2, 4),
                (3, 5),
                (0, 6),
                (1, 6),
                (2, 6),
            ],
        ),
        _ => panic!("h_pattern is defined for k = 5, 6, 7"),
    };
    OrderedGraph::new(n, edges.iter().copied(), VertexOrdering::identity(n))
        .expect("fixed pattern is well-formed")
}

/// Finds the lexicographically least Δ(1,2,2) witness under `(x, sorted Y,
/// sorted Z)`, or `None` iff the tournament is Δ(1,2,2)-free.
///
/// Search: for each `x` and each pair `y1 < y2` of out-neighbours of `x`, the
/// candidate Z-vertices are `N⁻(x) ∩ N⁺(y1) ∩ N⁺(y2)`; any two of them
/// complete a copy.
pub fn find_delta122(t: &Tournament) -> Option<Delta122Witness> {
    let n = t.n();
    for x in 0..n {
        let outs: Vec<usize> = t.out_row(x).iter().collect();
        for (a, &y1) in outs.iter().enumerate() {
            let common = t.in_row(x).and(t.out_row(y1));
            for &y2 in &outs[a + 1..] {
                // Allocation-free gate: materialize the intersection only
                // when it can actually hold two Z-vertices.
                if common.and_count(t.out_row(y2)) < 2 {
                    continue;
                }
                let zs = common.and(t.out_row(y2));
                let mut it = zs.iter();
                if let (Some(z1), Some(z2)) = (it.next(), it.next()) {
                    return Some(Delta122Witness {
                        x,
                        y: [y1, y2],
                        z: [z1, z2],
                    });
                }
            }
        }
    }
    None
}

/// Ordered cyclic triangles (x, y, z) with x → y → z → x: the three rotations
/// of every cyclic triangle.
fn ordered_cyclic_triangles(t: &Tournament) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (a, b, c) in t.cyclic_triangles() {
        let (x, y, z) = if t.edge(a, b) { (a, b, c) } else { (a, c, b) };
        out.push((x, y, z));
        out.push((y, z, x));
        out.push((z, x, y));
    }
    out
}

/// Deduplicates copies by vertex set, keeping the lexicographically least
/// canonical tuple per set, and sorts by vertex set.
fn dedupe_copies(mut copies: Vec<BasicCopy>) -> Vec<BasicCopy> {
    copies.sort_by(|p, q| (p.vertex_set(), &p.vertices).cmp(&(q.vertex_set(), &q.vertices)));
    copies.dedup_by(|p, q| p.vertex_set() == q.vertex_set());
    copies
}

/// All induced copies of T5, one per vertex set, sorted by vertex set.
///
/// Every copy maps the pattern triangle (0, 1, 3) onto some ordered cyclic
/// triangle (x, y, z); the remaining two vertices are determined as
/// `d ∈ N⁺(x) ∩ N⁺(y) ∩ N⁻(z)` (role 2) and `e ∈ N⁻(x) ∩ N⁻(y) ∩ N⁺(z)`
/// (role 4) with d → e, so anchoring the search on cyclic triangles is
/// exhaustive. The thirteen listed relations cover all ten vertex pairs, so
/// every candidate really is a copy.
pub fn t5_copies(t: &Tournament) -> Vec<BasicCopy> {
    let mut found = Vec::new();
    for (x, y, z) in ordered_cyclic_triangles(t) {
        let ds = t.out_row(x).and(t.out_row(y)).and(t.in_row(z));
        let es = t.in_row(x).and(t.in_row(y)).and(t.out_row(z));
        for d in ds.iter() {
            for e in es.iter() {
                if t.edge(d, e) {
                    found.push(BasicCopy {
                        kind: BasicKind::T5,
                        vertices: vec![x, y, d, z, e],
                        degree_partition: None,
                    });
                }
            }
        }
    }
    dedupe_copies(found)
}

/// All induced copies of P7⁻, one per vertex set, sorted by vertex set.
///
/// Every copy maps the D1-triangle (pattern 0 → 1 → 3 → 0) onto some ordered
/// cyclic triangle (x, y, z); the D2 roles are then
/// `d ∈ N⁺(x) ∩ N⁺(y) ∩ N⁻(z)` (role 2), `e ∈ N⁺(x) ∩ N⁻(y) ∩ N⁺(z)`
/// (role 4), `f ∈ N⁻(x) ∩ N⁺(y) ∩ N⁺(z)` (role 5), cyclic as d → e → f → d.
/// The listed relations cover all fifteen vertex pairs.
pub fn p7minus_copies(t: &Tournament) -> Vec<BasicCopy> {
    let mut found = Vec::new();
    for (x, y, z) in ordered_cyclic_triangles(t) {
        let ds = t.out_row(x).and(t.out_row(y)).and(t.in_row(z));
        let es = t.out_row(x).and(t.in_row(y)).and(t.out_row(z));
        let fs = t.in_row(x).and(t.out_row(y)).and(t.out_row(z));
        for d in ds.iter() {
            for e in es.iter() {
                if !t.edge(d, e) {
                    continue;
                }
                for f in fs.iter() {
                    if t.edge(e, f) && t.edge(f, d) {
                        let mut d1 = [x, y, z];
                        let mut d2 = [d, e, f];
                        d1.sort_unstable();
                        d2.sort_unstable();
                        found.push(BasicCopy {
                            kind: BasicKind::P7Minus,
                            vertices: vec![x, y, d, z, e, f],
                            degree_partition: Some((d1, d2)),
                        });
                    }
                }
            }
        }
    }
    dedupe_copies(found)
}

/// All induced copies of P7, one per vertex set, sorted by vertex set.
///
/// Deleting pattern vertex 6 from any P7 copy leaves a P7⁻ copy whose D2 part
/// beats the deleted vertex and whose D1 part is beaten by it, so every P7
/// copy is a P7⁻ copy plus one such vertex.
pub fn p7_copies(t: &Tournament) -> Vec<BasicCopy> {
    let mut found = Vec::new();
    for sub in p7minus_copies(t) {
        let (d1, d2) = sub.degree_partition.expect("P7⁻ copies carry the partition");
        let mut ws = t.in_row(d1[0]).clone();
        for &v in d1.iter().skip(1) {
            ws = ws.and(t.in_row(v));
        }
        for &v in d2.iter() {
            ws = ws.and(t.out_row(v));
        }
        for w in ws.iter() {
            let mut vertices = sub.vertices.clone();
            vertices.push(w);
            found.push(BasicCopy {
                kind: BasicKind::P7,
                vertices,
                degree_partition: None,
            });
        }
    }
    dedupe_copies(found)
}

/// Finds an induced basic tournament, searching kinds in priority
/// P7 > T5 > P7⁻ and returning the copy with the lexicographically least
/// vertex set for the first kind that occurs. `None` iff the tournament
/// contains none of the three.
///
/// P7 is searched first because a P7⁻ copy nested inside a P7 copy does not
/// yield a legal join during decomposition; collapsing the enclosing P7
/// first avoids it.
pub fn find_basic_copy(t: &Tournament) -> Option<BasicCopy> {
    p7_copies(t)
        .into_iter()
        .next()
        .or_else(|| t5_copies(t).into_iter().next())
        .or_else(|| p7minus_copies(t).into_iter().next())
}

fn vertex_bitrow(n: usize, xs: &[usize]) -> Result<BitRow> {
    let mut row = BitRow::zeros(n);
    for &v in xs {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        row.set(v, true);
    }
    Ok(row)
}

/// Tests whether `xs` is a homogeneous set: every outside vertex beats all of
/// `xs` or is beaten by all of it. Returns the verdict together with the list
/// of mixed outside vertices (ascending).
pub fn is_homogeneous_set(t: &Tournament, xs: &[usize]) -> Result<(bool, Vec<usize>)> {
    if xs.is_empty() {
        return Err(Error::EmptySet);
    }
    let row = vertex_bitrow(t.n(), xs)?;
    let size = row.count();
    let mut mixed = Vec::new();
    for v in 0..t.n() {
        if row.get(v) {
            continue;
        }
        let beaten = t.out_row(v).and_count(&row);
        if beaten != 0 && beaten != size {
            mixed.push(v);
        }
    }
    Ok((mixed.is_empty(), mixed))
}

/// Tests whether `(a1, a2)` is a homogeneous pair: `a1` is a homogeneous set
/// of `T ∖ a2` and `a2` one of `T ∖ a1`, i.e. no vertex outside the union is
/// mixed on either part.
pub fn is_homogeneous_pair(t: &Tournament, a1: &[usize], a2: &[usize]) -> Result<bool> {
    if a1.is_empty() || a2.is_empty() {
        return Err(Error::EmptySet);
    }
    let row1 = vertex_bitrow(t.n(), a1)?;
    let row2 = vertex_bitrow(t.n(), a2)?;
    if row1.and_count(&row2) != 0 {
        return Err(Error::Overlap);
    }
    let (s1, s2) = (row1.count(), row2.count());
    for v in 0..t.n() {
        if row1.get(v) || row2.get(v) {
            continue;
        }
        let b1 = t.out_row(v).and_count(&row1);
        let b2 = t.out_row(v).and_count(&row2);
        if (b1 != 0 && b1 != s1) || (b2 != 0 && b2 != s2) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tests whether `v` is nice: there are no vertices `x, y1, y2` such that
/// both `{v, x, y1}` and `{v, x, y2}` induce cyclic triangles. On failure
/// returns the lexicographically least witness `(x, y1, y2)`.
///
/// For a fixed `x`, the triangle-completing vertices are
/// `N⁺(x) ∩ N⁻(v)` if v → x, and `N⁺(v) ∩ N⁻(x)` if x → v; `v` is nice iff
/// every such set has at most one element.
pub fn is_nice_vertex(t: &Tournament, v: usize) -> Result<(bool, Option<(usize, usize, usize)>)> {
    if v >= t.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: t.n() });
    }
    for x in 0..t.n() {
        if x == v {
            continue;
        }
        let closing = if t.edge(v, x) {
            t.out_row(x).and(t.in_row(v))
        } else {
            t.out_row(v).and(t.in_row(x))
        };
        let mut it = closing.iter();
        if let (Some(y1), Some(y2)) = (it.next(), it.next()) {
            return Ok((false, Some((x, y1, y2))));
        }
    }
    Ok((true, None))
}

/// Which bridge condition failed, with a concrete witness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BridgeViolation {
    /// `W = N⁺(u) ∩ N⁻(v)` is nonempty; the witness is one of its vertices.
    B1 { w: usize },
    /// Some `x` in the first listed set has two in-neighbours in the second.
    B2 { x: usize, q: [usize; 2] },
    /// Some `x` in the second listed set has two out-neighbours in the first.
    B3 { x: usize, p: [usize; 2] },
}

/// Tests whether the edge u → v is a bridge.
///
/// With `X = N⁻(u) ∩ N⁻(v)`, `Y = N⁻(u) ∩ N⁺(v)`, `Z = N⁺(u) ∩ N⁺(v)`,
/// `W = N⁺(u) ∩ N⁻(v)`, the edge is a bridge iff
/// (B1) `W = ∅`, and for both splits `(P, Q) ∈ {(X, Y∪Z), (X∪Y, Z)}`:
/// (B2) no `x ∈ P` has two distinct in-neighbours in `Q`, and
/// (B3) no `x ∈ Q` has two distinct out-neighbours in `P`.
/// On failure the first violated condition is reported with a witness.
pub fn is_bridge(t: &Tournament, u: usize, v: usize) -> Result<(bool, Option<BridgeViolation>)> {
    for &w in &[u, v] {
        if w >= t.n() {
            return Err(Error::VertexOutOfRange { vertex: w, n: t.n() });
        }
    }
    if !t.edge(u, v) {
        return Err(Error::NotAnEdge { u, v });
    }
    let x_set = t.in_row(u).and(t.in_row(v));
    let y_set = t.in_row(u).and(t.out_row(v));
    let z_set = t.out_row(u).and(t.out_row(v));
    let w_set = t.out_row(u).and(t.in_row(v));
    if let Some(w) = w_set.first() {
        return Ok((false, Some(BridgeViolation::B1 { w })));
    }
    let splits = [
        (x_set.clone(), y_set.or(&z_set)),
        (x_set.or(&y_set), z_set.clone()),
    ];
    for (p, q) in &splits {
        for x in p.iter() {
            let ins = t.in_row(x).and(q);
            let mut it = ins.iter();
            if let (Some(q1), Some(q2)) = (it.next(), it.next()) {
                return Ok((false, Some(BridgeViolation::B2 { x, q: [q1, q2] })));
            }
        }
    }
    for (p, q) in &splits {
        for x in q.iter() {
            let outs = t.out_row(x).and(p);
            let mut it = outs.iter();
            if let (Some(p1), Some(p2)) = (it.next(), it.next()) {
                return Ok((false, Some(BridgeViolation::B3 { x, p: [p1, p2] })));
            }
        }
    }
    Ok((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transitive(n: usize) -> Tournament {
        Tournament::from_fn(n, |i, j| i < j)
    }

    #[test]
    fn delta122_roles() {
        let d = delta122();
        let w = find_delta122(&d).expect("Δ(1,2,2) contains itself");
        assert_eq!(
            w,
            Delta122Witness {
                x: 0,
                y: [1, 2],
                z: [3, 4]
            }
        );
    }

    #[test]
    fn pattern_edges_match_the_residue_rules() {
        let t5 = pattern(BasicKind::T5);
        assert!(t5.edge(0, 1));
        assert!(t5.edge(3, 0), "v4 → v1 since 1 − 4 ≡ 2 (mod 5)");
        let p7 = pattern(BasicKind::P7);
        assert!(p7.edge(0, 4), "4 ≡ 4 (mod 7)");
        // P7⁻ is P7 with the last vertex deleted.
        let (dropped, _) = p7.induced(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(pattern(BasicKind::P7Minus), dropped);
        // Degree partition constants.
        let p7m = pattern(BasicKind::P7Minus);
        for &v in &P7M_D1 {
            assert_eq!(p7m.out_deg(v), 3);
        }
        for &v in &P7M_D2 {
            assert_eq!(p7m.out_deg(v), 2);
        }
        assert!(p7m.edge(0, 1) && p7m.edge(1, 3) && p7m.edge(3, 0));
        assert!(p7m.edge(2, 4) && p7m.edge(4, 5) && p7m.edge(5, 2));
    }

    #[test]
    fn h_patterns_have_the_fixed_edge_sets() {
        assert_eq!(h_pattern(5).edges.len(), 4);
        let h6 = h_pattern(6);
        assert_eq!(
            h6.edges.iter().copied().collect::<Vec<_>>(),
            vec![(0, 1), (0, 5), (1, 2), (1, 3), (2, 4), (3, 5)]
        );
        let h7 = h_pattern(7);
        assert_eq!(h7.edges.len(), 9);
        assert!(h6.edges.iter().all(|e| h7.edges.contains(e)));
        for &(u, v) in &[(0, 6), (1, 6), (2, 6)] {
            assert!(h7.has_edge(u, v));
        }
        // H7 is realizable: it must be the positional backedge graph of some
        // ordering of P7 (the last vertex picks up backedges to the whole
        // first flock).
        let p7 = pattern(BasicKind::P7);
        let ordering = VertexOrdering::new(vec![0, 3, 1, 2, 4, 5, 6]).unwrap();
        let realized = crate::core::backedge_graph(&p7, &ordering);
        assert!(crate::core::isomorphic_ordered(&realized, &h7).is_some());
    }

    #[test]
    fn basic_tournaments_are_delta_free() {
        assert_eq!(find_delta122(&pattern(BasicKind::T5)), None);
        assert_eq!(find_delta122(&pattern(BasicKind::P7Minus)), None);
        assert_eq!(find_delta122(&pattern(BasicKind::P7)), None);
        assert_eq!(find_delta122(&transitive(8)), None);
    }

    #[test]
    fn delta_detection_agrees_with_reversal() {
        for t in [delta122(), pattern(BasicKind::T5), transitive(6)] {
            assert_eq!(
                find_delta122(&t).is_some(),
                find_delta122(&t.reverse()).is_some()
            );
        }
    }

    #[test]
    fn whole_host_copies() {
        let p7 = pattern(BasicKind::P7);
        let copy = find_basic_copy(&p7).unwrap();
        assert_eq!(copy.kind, BasicKind::P7);
        assert_eq!(copy.vertex_set(), (0..7).collect::<Vec<_>>());

        let t5 = pattern(BasicKind::T5);
        let copy = find_basic_copy(&t5).unwrap();
        assert_eq!(copy.kind, BasicKind::T5);
        assert_eq!(copy.vertices, vec![0, 1, 2, 3, 4]);

        let p7m = pattern(BasicKind::P7Minus);
        let copy = find_basic_copy(&p7m).unwrap();
        assert_eq!(copy.kind, BasicKind::P7Minus);
        assert_eq!(copy.degree_partition, Some((P7M_D1, P7M_D2)));

        assert_eq!(find_basic_copy(&transitive(8)), None);
    }

    #[test]
    fn copy_lists_realize_their_patterns() {
        // Validate the canonical labeling claim on every copy in a few hosts.
        for host in [
            pattern(BasicKind::P7),
            delta122(),
            Tournament::from_fn(8, |i, j| (j + 8 - i) % 8 < 4),
        ] {
            for copy in t5_copies(&host)
                .into_iter()
                .chain(p7minus_copies(&host))
                .chain(p7_copies(&host))
            {
                let pat = pattern(copy.kind);
                for i in 0..copy.vertices.len() {
                    for j in 0..copy.vertices.len() {
                        if i != j {
                            assert_eq!(
                                host.edge(copy.vertices[i], copy.vertices[j]),
                                pat.edge(i, j)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn substituted_t5_is_found_at_the_site() {
        // Transitive 3-chain with T5 substituted for the middle vertex:
        // vertex 0 beats everything, vertices 1..=5 form the copy, 6 loses.
        let host = Tournament::from_fn(7, |i, j| {
            if i == 0 {
                true
            } else if j == 6 {
                true
            } else if i == 6 || j == 0 {
                false
            } else {
                matches!((j + 5 - i) % 5, 1 | 2)
            }
        });
        let copy = find_basic_copy(&host).unwrap();
        assert_eq!(copy.kind, BasicKind::T5);
        assert_eq!(copy.vertices, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn homogeneous_sets_and_pairs() {
        let t5 = pattern(BasicKind::T5);
        assert!(is_homogeneous_set(&t5, &[2]).unwrap().0);
        assert!(is_homogeneous_set(&t5, &[0, 1, 2, 3, 4]).unwrap().0);
        let (ok, mixed) = is_homogeneous_set(&t5, &[0, 1]).unwrap();
        assert!(!ok);
        assert_eq!(mixed, vec![3], "4 → 0 and 4 → 1; 2 loses both; 3 is mixed");
        assert!(is_homogeneous_set(&t5, &[]).is_err());

        assert!(is_homogeneous_pair(&t5, &[0], &[2]).unwrap());
        // v = 3 has 1 → 3 and 3 → 4, so it is mixed on {1, 4}.
        assert!(!is_homogeneous_pair(&t5, &[0], &[1, 4]).unwrap());
        assert!(is_homogeneous_pair(&t5, &[0, 1], &[1, 2]).is_err());
    }

    #[test]
    fn nice_vertices() {
        let tr = transitive(5);
        for v in 0..5 {
            assert!(is_nice_vertex(&tr, v).unwrap().0);
        }
        let t5 = pattern(BasicKind::T5);
        for v in 0..5 {
            assert!(!is_nice_vertex(&t5, v).unwrap().0);
        }
        let (ok, witness) = is_nice_vertex(&delta122(), 0).unwrap();
        assert!(!ok);
        // v = 0 → x = 1 and both 3, 4 close triangles through x.
        assert_eq!(witness, Some((1, 3, 4)));
    }

    #[test]
    fn bridges() {
        // In the cyclic triangle 0 → 1 → 2 → 0 the edge 2 → 0 is an isolated
        // backedge of the identity ordering, hence a bridge.
        let c3 = Tournament::from_matrix(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        assert!(is_bridge(&c3, 2, 0).unwrap().0);

        // No edge of a basic tournament is a bridge.
        let t5 = pattern(BasicKind::T5);
        for u in 0..5 {
            for v in 0..5 {
                if u != v && t5.edge(u, v) {
                    assert!(!is_bridge(&t5, u, v).unwrap().0);
                }
            }
        }
        let (ok, violation) = is_bridge(&t5, 0, 1).unwrap();
        assert!(!ok);
        // W = ∅ here; X = {4} and 4 has in-neighbours 2 and 3 in Y ∪ Z.
        assert_eq!(violation, Some(BridgeViolation::B2 { x: 4, q: [2, 3] }));

        // W nonempty: 0 → 2 with 0 → 1 → 2.
        let tr = transitive(3);
        let (ok, violation) = is_bridge(&tr, 0, 2).unwrap();
        assert!(!ok);
        assert_eq!(violation, Some(BridgeViolation::B1 { w: 1 }));

        assert!(is_bridge(&tr, 2, 0).is_err());
    }
}
