//! Tournament and ordered-graph representations.
//!
//! A tournament is an orientation of a complete graph: for every pair of
//! distinct vertices exactly one of the two directed edges is present.
//! Adjacency is stored as per-vertex bitset rows (both out- and in-rows, kept
//! in sync) so that neighbourhood intersections are word operations.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum vertex count accepted by the isomorphism search.
pub const ISO_CAP: usize = 8;

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A fixed-width bitset over vertex indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(n: usize) -> Self {
        BitRow {
            words: vec![0; words_for(n)],
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Popcount of `self & other` without allocating.
    pub fn and_count(&self, other: &BitRow) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn and(&self, other: &BitRow) -> BitRow {
        BitRow {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn or(&self, other: &BitRow) -> BitRow {
        BitRow {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Indices of set bits, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

/// Complete antisymmetric digraph on labeled vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    out: Vec<BitRow>,
    inn: Vec<BitRow>,
}

impl Tournament {
    /// Tournament with no vertices (used as the insertion seed).
    pub fn empty() -> Self {
        Tournament {
            n: 0,
            out: Vec::new(),
            inn: Vec::new(),
        }
    }

    /// Builds from an explicit edge orientation oracle: `beats(i, j)` must be
    /// antisymmetric. The caller guarantees consistency; used for internal
    /// constructions where the invariant holds by construction.
    pub fn from_fn(n: usize, beats: impl Fn(usize, usize) -> bool) -> Self {
        let mut t = Tournament {
            n,
            out: vec![BitRow::zeros(n); n],
            inn: vec![BitRow::zeros(n); n],
        };
        for i in 0..n {
            for j in (i + 1)..n {
                if beats(i, j) {
                    t.set_edge(i, j);
                } else {
                    t.set_edge(j, i);
                }
            }
        }
        t
    }

    /// Builds and validates from a 0/1 adjacency matrix.
    pub fn from_matrix(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotTournament(format!(
                    "row {i} has length {} but the matrix has {n} rows",
                    row.len()
                )));
            }
        }
        for i in 0..n {
            if rows[i][i] != 0 {
                return Err(Error::NotTournament(format!("diagonal entry ({i},{i}) is nonzero")));
            }
            for j in (i + 1)..n {
                if rows[i][j] + rows[j][i] != 1 {
                    return Err(Error::NotTournament(format!(
                        "entries ({i},{j}) and ({j},{i}) are not complementary"
                    )));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j] == 1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// True iff the edge i→j is present.
    #[inline]
    pub fn edge(&self, i: usize, j: usize) -> bool {
        self.out[i].get(j)
    }

    fn set_edge(&mut self, i: usize, j: usize) {
        self.out[i].set(j, true);
        self.inn[j].set(i, true);
    }

    pub fn out_row(&self, i: usize) -> &BitRow {
        &self.out[i]
    }

    pub fn in_row(&self, i: usize) -> &BitRow {
        &self.inn[i]
    }

    pub fn out_deg(&self, i: usize) -> usize {
        self.out[i].count()
    }

    pub fn in_deg(&self, i: usize) -> usize {
        self.inn[i].count()
    }

    /// Subtournament induced on `xs` (ascending order defines the new labels).
    /// Returns the new tournament together with `old_of_new`: position `k`
    /// holds the original label of new vertex `k`.
    pub fn induced(&self, xs: &[usize]) -> Result<(Tournament, Vec<usize>)> {
        let mut old_of_new: Vec<usize> = xs.to_vec();
        old_of_new.sort_unstable();
        old_of_new.dedup();
        if let Some(&v) = old_of_new.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let t = Tournament::from_fn(old_of_new.len(), |i, j| {
            self.edge(old_of_new[i], old_of_new[j])
        });
        Ok((t, old_of_new))
    }

    /// Every edge orientation flipped.
    pub fn reverse(&self) -> Tournament {
        Tournament {
            n: self.n,
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }

    /// A tournament is transitive iff it has no cyclic triangle, iff its
    /// out-degrees are a permutation of 0..n−1.
    pub fn is_transitive(&self) -> bool {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.out_deg(v)));
        for (pos, &v) in order.iter().enumerate() {
            if self.out_deg(v) != self.n - 1 - pos {
                return false;
            }
        }
        // Degrees alone do not pin orientations; verify edges follow the rank.
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if !self.edge(order[i], order[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// All cyclic triangles as ascending triples (a < b < c).
    pub fn cyclic_triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                // A triple {a,b,c} is cyclic iff c closes the 2-path between
                // a and b, regardless of which of a,b wins their edge.
                let (src, dst) = if self.edge(a, b) { (a, b) } else { (b, a) };
                let closing = self.out[dst].and(&self.inn[src]);
                for c in closing.iter() {
                    if c > b {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// Relabels: vertex `perm[k]` of the result plays vertex `k` of `self`.
    pub fn relabel(&self, perm: &[usize]) -> Tournament {
        debug_assert!(is_permutation(perm, self.n));
        let mut inv = vec![0; self.n];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        Tournament::from_fn(self.n, |i, j| self.edge(inv[i], inv[j]))
    }

    pub fn matrix_rows(&self) -> Vec<String> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if self.edge(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    /// Canonical `.tmt` text form: vertex count, then the 0/1 matrix.
    pub fn to_tmt(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for row in self.matrix_rows() {
            s.push_str(&row);
            s.push('\n');
        }
        s
    }

    /// Parses the `.tmt` format: first significant line is `n`, followed by
    /// `n` rows of `n` characters '0'/'1'. Lines starting with `#` are
    /// comments; blank lines are ignored.
    pub fn from_tmt(text: &str) -> Result<Self> {
        let mut significant = text
            .lines()
            .enumerate()
            .map(|(idx, line)| (idx + 1, line.trim()))
            .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));
        let (n_line, n_text) = significant
            .next()
            .ok_or_else(|| Error::parse(1, 1, "missing vertex count"))?;
        let n: usize = n_text
            .parse()
            .map_err(|_| Error::parse(n_line, 1, "vertex count is not a non-negative integer"))?;
        // Grown row by row: `n` is untrusted input, so no upfront
        // allocation proportional to it.
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for i in 0..n {
            let (line_no, line) = significant
                .next()
                .ok_or_else(|| Error::parse(n_line, 1, format!("expected {n} matrix rows, found {i}")))?;
            if line.chars().count() != n {
                return Err(Error::parse(
                    line_no,
                    line.chars().count() + 1,
                    format!("row {i} must have exactly {n} characters"),
                ));
            }
            let mut row = Vec::with_capacity(n);
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    '0' => row.push(0),
                    '1' => row.push(1),
                    _ => return Err(Error::parse(line_no, col + 1, format!("invalid character {ch:?}"))),
                }
            }
            rows.push(row);
        }
        if let Some((line_no, _)) = significant.next() {
            return Err(Error::parse(line_no, 1, "trailing content after matrix"));
        }
        Tournament::from_matrix(&rows)
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(n={})", self.n)?;
        for row in self.matrix_rows() {
            write!(f, " {row}")?;
        }
        Ok(())
    }
}

pub fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// An enumeration of the vertices: `perm[k]` is the vertex at position `k`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexOrdering {
    pub perm: Vec<usize>,
}

impl VertexOrdering {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        if !is_permutation(&perm, n) {
            return Err(Error::NotPermutation);
        }
        Ok(VertexOrdering { perm })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            perm: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// `position_of[v]` = position of vertex `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.perm.len()];
        for (k, &v) in self.perm.iter().enumerate() {
            pos[v] = k;
        }
        pos
    }

    /// The reversed enumeration (used to transfer left/right-symmetric
    /// arguments: backedges are preserved under reversing both the tournament
    /// and the ordering).
    pub fn reversed(&self) -> Self {
        VertexOrdering {
            perm: self.perm.iter().rev().copied().collect(),
        }
    }
}

/// Undirected graph together with a vertex ordering (a backedge graph, or one
/// of the fixed patterns H5/H6/H7).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderedGraph {
    pub n: usize,
    /// Normalized pairs (u < v by vertex label).
    pub edges: BTreeSet<(usize, usize)>,
    pub ordering: VertexOrdering,
}

/// One connected component of an ordered graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Vertices sorted by position in the ordering.
    pub vertices: Vec<usize>,
    /// True iff the component occupies contiguous positions.
    pub consecutive: bool,
}

impl OrderedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>, ordering: VertexOrdering) -> Result<Self> {
        if ordering.len() != n {
            return Err(Error::NotPermutation);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::NotTournament(format!("self-loop at {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(OrderedGraph {
            n,
            edges: set,
            ordering,
        })
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Maximal connected pieces; each reported with its consecutiveness flag.
    pub fn components(&self) -> Vec<Component> {
        let pos = self.ordering.positions();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        // Scan in ordering positions so the component list is deterministic
        // and left-to-right.
        for &start in &self.ordering.perm {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            let mut verts = Vec::new();
            while let Some(v) = stack.pop() {
                verts.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            verts.sort_by_key(|&v| pos[v]);
            let lo = pos[verts[0]];
            let hi = pos[*verts.last().unwrap()];
            let consecutive = hi - lo + 1 == verts.len();
            comps.push(Component {
                vertices: verts,
                consecutive,
            });
        }
        comps
    }
}

/// The backedge graph B_σ(T): vertices of T, with an (undirected) edge between
/// the vertices at positions i < j iff the tournament edge runs from the
/// later-positioned vertex to the earlier-positioned one.
pub fn backedge_graph(t: &Tournament, ordering: &VertexOrdering) -> OrderedGraph {
    debug_assert_eq!(ordering.len(), t.n());
    let mut edges = Vec::new();
    for i in 0..ordering.len() {
        for j in (i + 1)..ordering.len() {
            let (earlier, later) = (ordering.perm[i], ordering.perm[j]);
            if t.edge(later, earlier) {
                edges.push((earlier, later));
            }
        }
    }
    OrderedGraph::new(t.n(), edges, ordering.clone()).expect("backedge graph is well-formed")
}

/// A pattern→host bijection witnessing an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoMapping {
    /// `map[p]` = host vertex playing pattern vertex `p`.
    pub map: Vec<usize>,
}

/// Tournament isomorphism by degree-sequence pruning plus permutation
/// backtracking. Capped at [`ISO_CAP`] vertices: every fixed pattern in this
/// crate has at most 7.
pub fn isomorphic_tournaments(a: &Tournament, b: &Tournament) -> Result<Option<IsoMapping>> {
    if a.n() != b.n() {
        return Ok(None);
    }
    let n = a.n();
    if n > ISO_CAP {
        return Err(Error::SizeLimitExceeded { n, cap: ISO_CAP });
    }
    let deg_a: Vec<usize> = (0..n).map(|v| a.out_deg(v)).collect();
    let deg_b: Vec<usize> = (0..n).map(|v| b.out_deg(v)).collect();
    {
        let mut sa = deg_a.clone();
        let mut sb = deg_b.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return Ok(None);
        }
    }
    fn extend(
        a: &Tournament,
        b: &Tournament,
        deg_a: &[usize],
        deg_b: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        let n = a.n();
        if depth == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || deg_b[cand] != deg_a[depth] {
                continue;
            }
            let consistent = (0..depth)
                .all(|p| a.edge(depth, p) == b.edge(cand, map[p]) && a.edge(p, depth) == b.edge(map[p], cand));
            if consistent {
                map[depth] = cand;
                used[cand] = true;
                if extend(a, b, deg_a, deg_b, map, used, depth + 1) {
                    return true;
                }
                used[cand] = false;
                map[depth] = usize::MAX;
            }
        }
        false
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &deg_a, &deg_b, &mut map, &mut used, 0) {
        Ok(Some(IsoMapping { map }))
    } else {
        Ok(None)
    }
}

/// Ordered-graph isomorphism: the only order-preserving bijection aligns
/// position k of one ordering with position k of the other, so the test is a
/// position-wise comparison of edge sets. No size cap is needed.
pub fn isomorphic_ordered(a: &OrderedGraph, b: &OrderedGraph) -> Option<IsoMapping> {
    if a.n != b.n {
        return None;
    }
    let pos_a = a.ordering.positions();
    let edges_a: BTreeSet<(usize, usize)> = a
        .edges
        .iter()
        .map(|&(u, v)| {
            let (p, q) = (pos_a[u], pos_a[v]);
            (p.min(q), p.max(q))
        })
        .collect();
    let pos_b = b.ordering.positions();
    let edges_b: BTreeSet<(usize, usize)> = b
        .edges
        .iter()
        .map(|&(u, v)| {
            let (p, q) = (pos_b[u], pos_b[v]);
            (p.min(q), p.max(q))
        })
        .collect();
    if edges_a != edges_b {
        return None;
    }
    // map[p] = vertex of b at the position where pattern vertex p sits in a.
    let map = a
        .ordering
        .perm
        .iter()
        .enumerate()
        .fold(vec![0; a.n], |mut m, (k, &v)| {
            m[v] = b.ordering.perm[k];
            m
        });
    Some(IsoMapping { map })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn cyclic_triangle() -> Tournament {
        Tournament::from_matrix(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap()
    }

    pub fn transitive(n: usize) -> Tournament {
        Tournament::from_fn(n, |i, j| i < j)
    }

    #[test]
    fn matrix_round_trip_and_validation() {
        let t = cyclic_triangle();
        assert_eq!(t.n(), 3);
        assert!(t.edge(0, 1) && t.edge(1, 2) && t.edge(2, 0));
        assert!(transitive(4).is_transitive());
        let bad = Tournament::from_matrix(&[vec![0, 1], vec![1, 0]]);
        assert!(matches!(bad, Err(Error::NotTournament(_))));
    }

    #[test]
    fn tmt_round_trip() {
        let t = transitive(5);
        let text = t.to_tmt();
        assert_eq!(Tournament::from_tmt(&text).unwrap(), t);
        let commented = format!("# a transitive tournament\n\n{text}");
        assert_eq!(Tournament::from_tmt(&commented).unwrap(), t);
        assert!(Tournament::from_tmt("2\n01\n0x\n").is_err());
        assert!(Tournament::from_tmt("3\n010\n001\n").is_err());
    }

    #[test]
    fn transitive_iff_edgeless_backedges() {
        let t = transitive(6);
        let g = backedge_graph(&t, &VertexOrdering::identity(6));
        assert!(g.edges.is_empty());
        assert!(!cyclic_triangle().is_transitive());
    }

    #[test]
    fn reverse_is_involution() {
        let t = cyclic_triangle();
        assert_eq!(t.reverse().reverse(), t);
        assert!(isomorphic_tournaments(&t, &t.reverse()).unwrap().is_some());
    }

    #[test]
    fn induced_identity_and_mapping() {
        let t = transitive(5);
        let (s, old) = t.induced(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(s, t);
        assert_eq!(old, vec![0, 1, 2, 3, 4]);
        let (s, old) = t.induced(&[4, 1]).unwrap();
        assert_eq!(old, vec![1, 4]);
        assert!(s.edge(0, 1));
        assert!(t.induced(&[0, 9]).is_err());
    }

    #[test]
    fn components_and_consecutive_flags() {
        let g = OrderedGraph::new(4, [(0, 2)], VertexOrdering::identity(4)).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].vertices, vec![0, 2]);
        assert!(!comps[0].consecutive);
        assert!(comps[1].consecutive && comps[2].consecutive);

        let edgeless = OrderedGraph::new(4, [], VertexOrdering::identity(4)).unwrap();
        assert_eq!(edgeless.components().len(), 4);
        assert!(edgeless.components().iter().all(|c| c.consecutive));
    }

    #[test]
    fn ordered_iso_is_positionwise() {
        let a = OrderedGraph::new(3, [(0, 2)], VertexOrdering::identity(3)).unwrap();
        let b = OrderedGraph::new(3, [(1, 2)], VertexOrdering::new(vec![1, 0, 2]).unwrap()).unwrap();
        // In b, positions 0 and 2 hold vertices 1 and 2 — same positional edge.
        assert!(isomorphic_ordered(&a, &b).is_some());
        let c = OrderedGraph::new(3, [(0, 1)], VertexOrdering::identity(3)).unwrap();
        assert!(isomorphic_ordered(&a, &c).is_none());
    }

    #[test]
    fn tournament_iso_cap() {
        let t = transitive(9);
        assert!(matches!(
            isomorphic_tournaments(&t, &t),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn backedge_count_complements_forward_count() {
        let t = cyclic_triangle();
        let g = backedge_graph(&t, &VertexOrdering::identity(3));
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges.iter().next(), Some(&(0, 2)));
    }
}
