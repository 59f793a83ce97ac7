//! Structure decomposition and backedge normal forms: collapsing basic
//! copies into a decomposition tree, the natural ordering of a tree, and the
//! normal form whose backedge components are monotone paths or H5/H6/H7.

use std::collections::{BTreeSet, HashSet};

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::construct::{p7minus_join, substitute, DecompositionTree, Step};
use crate::core::{
    backedge_graph, is_permutation, isomorphic_ordered, Component, OrderedGraph, Tournament,
    VertexOrdering,
};
use crate::decompose::{check_paving, eliminate_p1_violations, paving_ordering};
use crate::error::{Error, Result};
use crate::patterns::{
    find_basic_copy, find_delta122, h_pattern, is_bridge, is_homogeneous_pair, is_homogeneous_set,
    is_nice_vertex, pattern, BasicCopy, BasicKind, Delta122Witness, P7M_D1,
};

/// Classification of one backedge-graph component.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ComponentClass {
    MonotonePath,
    H5,
    H6,
    H7,
    Other,
}

impl std::fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ComponentClass::MonotonePath => "MonotonePath",
            ComponentClass::H5 => "H5",
            ComponentClass::H6 => "H6",
            ComponentClass::H7 => "H7",
            ComponentClass::Other => "Other",
        };
        f.write_str(name)
    }
}

/// Result of [`decompose`]: either a replayable construction or a Δ(1,2,2)
/// witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Tree(DecompositionTree),
    Witness(Delta122Witness),
}

/// Orderings of the basic tournaments realizing the fixed backedge shapes.
///
/// `h5`/`h6`/`h7` realize the patterns of the same name; `canonical_p7m` is
/// the canonical ordering of P7⁻ (backedge shape u1u3, u1u6, u2u5, u3u4,
/// u4u6). In `h6` and `canonical_p7m` the first three positions carry the
/// out-degree-3 part D1 of the degree partition, so a join expansion can put
/// the D1 flock at the earlier endpoint slot.
pub(crate) struct Realizers {
    pub h5: VertexOrdering,
    pub h6: VertexOrdering,
    pub h7: VertexOrdering,
    pub canonical_p7m: VertexOrdering,
}

/// Frozen results of the exhaustive realizer search (lexicographically least
/// ordering per pattern); re-verified once at startup and by tests.
const H5_REALIZER: [usize; 5] = [0, 1, 3, 2, 4];
const H6_REALIZER: [usize; 6] = [0, 3, 1, 2, 4, 5];
const H7_REALIZER: [usize; 7] = [0, 3, 1, 2, 4, 5, 6];
const CANONICAL_P7M: [usize; 6] = [0, 1, 3, 2, 4, 5];
/// The canonical backedge shape of P7⁻ as position pairs.
const CANONICAL_P7M_EDGES: [(usize, usize); 5] = [(0, 2), (0, 5), (1, 4), (2, 3), (3, 5)];

/// The edge set of an ordered graph as pairs of positions.
fn positional_edges(g: &OrderedGraph) -> BTreeSet<(usize, usize)> {
    let pos = g.ordering.positions();
    g.edges
        .iter()
        .map(|&(u, v)| {
            let (p, q) = (pos[u], pos[v]);
            (p.min(q), p.max(q))
        })
        .collect()
}

fn verify_realizer(kind: BasicKind, perm: &[usize], target: &OrderedGraph) -> VertexOrdering {
    let ordering = VertexOrdering::new(perm.to_vec()).expect("realizer constant is a permutation");
    let realized = backedge_graph(&pattern(kind), &ordering);
    assert!(
        isomorphic_ordered(&realized, target).is_some(),
        "stored realizer for {kind:?} does not produce the expected backedge shape"
    );
    ordering
}

static REALIZERS: Lazy<Realizers> = Lazy::new(|| {
    let canonical_target = OrderedGraph::new(
        6,
        CANONICAL_P7M_EDGES.iter().copied(),
        VertexOrdering::identity(6),
    )
    .expect("canonical shape is well-formed");
    let r = Realizers {
        h5: verify_realizer(BasicKind::T5, &H5_REALIZER, &h_pattern(5)),
        h6: verify_realizer(BasicKind::P7Minus, &H6_REALIZER, &h_pattern(6)),
        h7: verify_realizer(BasicKind::P7, &H7_REALIZER, &h_pattern(7)),
        canonical_p7m: verify_realizer(BasicKind::P7Minus, &CANONICAL_P7M, &canonical_target),
    };
    for ordering in [&r.h6, &r.canonical_p7m] {
        let mut first: Vec<usize> = ordering.perm[..3].to_vec();
        first.sort_unstable();
        assert_eq!(first, P7M_D1, "first flock of a P7⁻ realizer must be D1");
    }
    r
});

pub(crate) fn realizers() -> &'static Realizers {
    &REALIZERS
}

/// Classifies every component of an ordered graph.
///
/// H-classes require both positional isomorphism to the fixed pattern and the
/// consecutiveness side conditions (H5/H7: the whole component; H6: each
/// flock). A monotone path is a component whose edges connect
/// position-consecutive member ranks. Everything else is `Other`.
pub fn classify_components(g: &OrderedGraph) -> Vec<(Component, ComponentClass)> {
    let pos = g.ordering.positions();
    g.components()
        .into_iter()
        .map(|comp| {
            let class = classify_one(g, &pos, &comp);
            (comp, class)
        })
        .collect()
}

fn classify_one(g: &OrderedGraph, pos: &[usize], comp: &Component) -> ComponentClass {
    let k = comp.vertices.len();
    // Rank = index among the component's vertices ordered by position.
    let rank_of = |v: usize| comp.vertices.iter().position(|&w| w == v);
    let rel: BTreeSet<(usize, usize)> = g
        .edges
        .iter()
        .filter_map(|&(u, v)| match (rank_of(u), rank_of(v)) {
            (Some(a), Some(b)) => Some((a.min(b), a.max(b))),
            _ => None,
        })
        .collect();
    if (5..=7).contains(&k) && rel == positional_edges(&h_pattern(k)) {
        let side_ok = match k {
            5 | 7 => comp.consecutive,
            _ => {
                let run = |vs: &[usize]| {
                    vs.windows(2).all(|w| pos[w[1]] == pos[w[0]] + 1)
                };
                run(&comp.vertices[..3]) && run(&comp.vertices[3..])
            }
        };
        if side_ok {
            return match k {
                5 => ComponentClass::H5,
                6 => ComponentClass::H6,
                _ => ComponentClass::H7,
            };
        }
    }
    let path: BTreeSet<(usize, usize)> = (1..k).map(|r| (r - 1, r)).collect();
    if rel == path {
        ComponentClass::MonotonePath
    } else {
        ComponentClass::Other
    }
}

fn internal(message: impl Into<String>) -> Error {
    Error::Internal(message.into())
}

/// Collapses a copy whose whole vertex set is homogeneous to its least
/// vertex, recording the substitution step that re-expands it.
fn collapse_set(cur: &Tournament, copy: &BasicCopy) -> Result<(Tournament, Step)> {
    let xs = copy.vertex_set();
    let (homog, mixed) = is_homogeneous_set(cur, &xs)?;
    if !homog {
        return Err(internal(format!(
            "{:?} copy {:?} is not a homogeneous set (mixed vertices {:?})",
            copy.kind, xs, mixed
        )));
    }
    let rep = xs[0];
    let kept: Vec<usize> = (0..cur.n())
        .filter(|&v| !xs.contains(&v) || v == rep)
        .collect();
    let (next, _) = cur.induced(&kept)?;
    let at = kept.iter().position(|&v| v == rep).expect("rep is kept");
    if !is_nice_vertex(&next, at)?.0 {
        return Err(internal(format!(
            "collapse target of a {:?} copy is not a nice vertex",
            copy.kind
        )));
    }
    let (grown, sm) = substitute(&next, at, &pattern(copy.kind))?;
    let mut mapping = vec![usize::MAX; cur.n()];
    for (w, &kw) in kept.iter().enumerate() {
        if w != at {
            mapping[sm.host[w]] = kw;
        }
    }
    for (p, &cv) in copy.vertices.iter().enumerate() {
        mapping[sm.inner[p]] = cv;
    }
    if !is_permutation(&mapping, cur.n()) || grown.relabel(&mapping) != *cur {
        return Err(internal("substitution collapse failed its replay check"));
    }
    Ok((
        next,
        Step::Substitute {
            at,
            kind: copy.kind,
            mapping,
        },
    ))
}

/// Collapses a P7⁻ copy along its homogeneous degree partition to a single
/// edge from the D2 representative to the D1 representative, recording the
/// join step that re-expands it.
fn collapse_pair(cur: &Tournament, copy: &BasicCopy) -> Result<(Tournament, Step)> {
    let (d1, d2) = copy
        .degree_partition
        .ok_or_else(|| internal("P7⁻ copy lacks its degree partition"))?;
    if !is_homogeneous_pair(cur, &d1, &d2)? {
        return Err(internal(format!(
            "P7⁻ degree partition ({:?}, {:?}) is not a homogeneous pair",
            d1, d2
        )));
    }
    let (ru, rv) = (d2[0], d1[0]);
    let xs = copy.vertex_set();
    let kept: Vec<usize> = (0..cur.n())
        .filter(|&v| !xs.contains(&v) || v == ru || v == rv)
        .collect();
    // The collapsed edge runs from the D2 slot to the D1 slot so that
    // replaying the join regenerates the copy with its degree partition.
    let next = Tournament::from_fn(kept.len(), |a, b| {
        let (x, y) = (kept[a], kept[b]);
        if x == ru && y == rv {
            true
        } else if x == rv && y == ru {
            false
        } else {
            cur.edge(x, y)
        }
    });
    let u_idx = kept.iter().position(|&v| v == ru).expect("ru is kept");
    let v_idx = kept.iter().position(|&v| v == rv).expect("rv is kept");
    let (bridge, violation) = is_bridge(&next, u_idx, v_idx)?;
    if !bridge {
        return Err(internal(format!(
            "collapsed P7⁻ edge is not a bridge: {violation:?}"
        )));
    }
    let (grown, _, jm) = p7minus_join(&next, u_idx, v_idx)?;
    let mut mapping = vec![usize::MAX; cur.n()];
    for (w, &kw) in kept.iter().enumerate() {
        if w != u_idx && w != v_idx {
            mapping[jm.host[w]] = kw;
        }
    }
    for (p, &cv) in copy.vertices.iter().enumerate() {
        mapping[jm.inner[p]] = cv;
    }
    if !is_permutation(&mapping, cur.n()) || grown.relabel(&mapping) != *cur {
        return Err(internal("join collapse failed its replay check"));
    }
    Ok((
        next,
        Step::Join {
            at: (u_idx, v_idx),
            mapping,
        },
    ))
}

/// Decomposes a tournament: a Δ(1,2,2) witness, or a decomposition tree that
/// [`crate::construct::reconstruct`] replays back to the labeled input.
///
/// While a basic copy exists it is collapsed — T5 and P7 copies (homogeneous
/// sets) to a single vertex, P7⁻ copies to a single vertex when the whole set
/// is homogeneous and otherwise along the homogeneous degree partition to a
/// single edge. Ties break to the lexicographically least vertex set within
/// the priority kind (P7 > T5 > P7⁻). The residue, free of basic copies, gets
/// its paving ordering as the base; steps are recorded innermost-last.
pub fn decompose(t: &Tournament) -> Result<Decomposition> {
    if let Some(w) = find_delta122(t) {
        return Ok(Decomposition::Witness(w));
    }
    let mut cur = t.clone();
    let mut collapsed: Vec<Step> = Vec::new();
    while let Some(copy) = find_basic_copy(&cur) {
        let (next, step) = match copy.kind {
            BasicKind::T5 | BasicKind::P7 => collapse_set(&cur, &copy)?,
            BasicKind::P7Minus => {
                if is_homogeneous_set(&cur, &copy.vertex_set())?.0 {
                    collapse_set(&cur, &copy)?
                } else {
                    collapse_pair(&cur, &copy)?
                }
            }
        };
        collapsed.push(step);
        cur = next;
    }
    let base_ordering = paving_ordering(&cur)
        .map_err(|e| internal(format!("paving the decomposition residue failed: {e}")))?;
    collapsed.reverse();
    Ok(Decomposition::Tree(DecompositionTree::new(
        cur,
        base_ordering,
        collapsed,
    )?))
}

/// The operation sites of a tree traced back to base vertices.
struct Sites {
    /// Substituted base vertices with their kinds, in step order.
    subs: Vec<(usize, BasicKind)>,
    /// Joined base edges (D2-side endpoint, D1-side endpoint), in step order.
    joins: Vec<(usize, usize)>,
}

/// Follows each step's target through the relabelings back to the base.
/// Copy-interior vertices have no base origin, so an operation targeting one
/// cannot be normalized; on trees of Δ(1,2,2)-free tournaments this never
/// happens (basic copies admit no further operations).
fn trace_sites(tree: &DecompositionTree) -> Result<Sites> {
    let mut origin: Vec<Option<usize>> = (0..tree.base.n()).map(Some).collect();
    let mut subs = Vec::new();
    let mut joins = Vec::new();
    let mut used: HashSet<usize> = HashSet::new();
    let not_normalizable =
        |m: &str| Error::NotNormalizable(m.into());
    for (idx, step) in tree.steps.iter().enumerate() {
        let bad_step = |message: String| Error::ReplayPreconditionFailed { step: idx, message };
        let n = origin.len();
        match step {
            Step::Substitute { at, kind, mapping } => {
                let k = kind.size();
                if *at >= n || !is_permutation(mapping, n - 1 + k) {
                    return Err(bad_step("invalid substitution target or mapping".into()));
                }
                let site = origin[*at].ok_or_else(|| {
                    not_normalizable("substitution targets a vertex created by an earlier step")
                })?;
                if !used.insert(site) {
                    return Err(not_normalizable("base vertex targeted by two steps"));
                }
                subs.push((site, *kind));
                let mut next = vec![None; n - 1 + k];
                for (w, &o) in origin.iter().enumerate() {
                    if w != *at {
                        let canonical = if w < *at { w } else { w + k - 1 };
                        next[mapping[canonical]] = o;
                    }
                }
                origin = next;
            }
            Step::Join { at: (u, v), mapping } => {
                if *u >= n || *v >= n || u == v || !is_permutation(mapping, n + 4) {
                    return Err(bad_step("invalid join target or mapping".into()));
                }
                let bu = origin[*u].ok_or_else(|| {
                    not_normalizable("join targets a vertex created by an earlier step")
                })?;
                let bv = origin[*v].ok_or_else(|| {
                    not_normalizable("join targets a vertex created by an earlier step")
                })?;
                if !used.insert(bu) || !used.insert(bv) {
                    return Err(not_normalizable("base vertex targeted by two steps"));
                }
                joins.push((bu, bv));
                let (a, b) = (*u.min(v), *u.max(v));
                let canonical = |w: usize| {
                    if w < a {
                        w
                    } else if w < b {
                        w + 2
                    } else {
                        w + 4
                    }
                };
                let mut next = vec![None; n + 4];
                for (w, &o) in origin.iter().enumerate() {
                    if w != *u && w != *v {
                        next[mapping[canonical(w)]] = o;
                    }
                }
                origin = next;
            }
        }
    }
    Ok(Sites { subs, joins })
}

/// True iff positions `p < q` of `order` carry a backedge.
fn pos_backedge(t: &Tournament, order: &[usize], p: usize, q: usize) -> bool {
    t.edge(order[q], order[p])
}

/// Backedge-neighbour positions of the vertex at position `p`.
fn nbr_positions(t: &Tournament, order: &[usize], p: usize) -> Vec<usize> {
    (0..order.len())
        .filter(|&q| {
            q != p && pos_backedge(t, order, p.min(q), p.max(q))
        })
        .collect()
}

fn assert_paving(t: &Tournament, order: &mut Vec<usize>) -> Result<()> {
    let sigma = VertexOrdering::new(order.clone())?;
    if check_paving(t, &sigma) {
        return Ok(());
    }
    // A local reorder can land a vertex next to an external backedge-neighbour
    // ((P1) violation) while keeping (P2); adjacent swaps restore the paving.
    let broke = || {
        Error::NotNormalizable("a normalization reorder broke the paving conditions".into())
    };
    let fixed = eliminate_p1_violations(t, &sigma).map_err(|_| broke())?;
    if !check_paving(t, &fixed) {
        return Err(broke());
    }
    *order = fixed.perm;
    Ok(())
}

fn not_norm(message: impl Into<String>) -> Error {
    Error::NotNormalizable(message.into())
}

/// Makes every substitution site an isolated vertex of the backedge graph.
///
/// A non-isolated site's component must be a single backedge at positional
/// distance two; the three positions are cyclically reordered so the site
/// becomes isolated (the middle vertex picks up the site's old neighbour).
fn isolate_substitution_sites(
    t: &Tournament,
    order: &mut Vec<usize>,
    s_set: &HashSet<usize>,
) -> Result<()> {
    let n = order.len();
    for _ in 0..(2 * n * n + 16) {
        let target = (0..n).find_map(|p| {
            if !s_set.contains(&order[p]) {
                return None;
            }
            let nb = nbr_positions(t, order, p);
            (!nb.is_empty()).then_some((p, nb))
        });
        let Some((p, nb)) = target else {
            return Ok(());
        };
        if nb.len() != 1 {
            return Err(not_norm("substitution site with two backedge-neighbours"));
        }
        let q = nb[0];
        let i = p.min(q);
        if p.max(q) != i + 2 {
            return Err(not_norm(
                "substitution site's backedge does not span one vertex",
            ));
        }
        if s_set.contains(&order[q]) || s_set.contains(&order[i + 1]) {
            return Err(not_norm("two substitution sites share a cyclic triangle"));
        }
        let triple = if p == i {
            [order[i + 2], order[i], order[i + 1]]
        } else {
            [order[i + 1], order[i + 2], order[i]]
        };
        order[i..=i + 2].copy_from_slice(&triple);
        assert_paving(t, order)?;
    }
    Err(not_norm("site isolation did not converge"))
}

/// One forward join edge at positions `(i, i+1)` turned into a backedge by
/// rotating the unique right-neighbour of the earlier endpoint into place.
fn fix_forward_join(
    t: &Tournament,
    order: &mut Vec<usize>,
    i: usize,
    s_set: &HashSet<usize>,
) -> Result<()> {
    let rights: Vec<usize> = nbr_positions(t, order, i)
        .into_iter()
        .filter(|&q| q > i)
        .collect();
    if rights.len() != 1 {
        return Err(not_norm("join endpoint without a unique outer neighbour"));
    }
    let l = rights[0];
    let (vi, vj) = (order[i], order[i + 1]);
    if l == i + 2 {
        let vl = order[i + 2];
        order[i..=i + 2].copy_from_slice(&[vj, vl, vi]);
    } else if l == i + 3 {
        let (vmid, vl) = (order[i + 2], order[i + 3]);
        if s_set.contains(&vmid) {
            return Err(not_norm("substitution site inside a join reorder window"));
        }
        order[i..=i + 3].copy_from_slice(&[vj, vl, vi, vmid]);
    } else {
        return Err(not_norm("join endpoint's neighbour is too far away"));
    }
    Ok(())
}

/// Makes every traced join edge a backedge of the ordering.
fn make_joins_backedges(
    t: &Tournament,
    order: &mut Vec<usize>,
    s_set: &HashSet<usize>,
    joins: &[(usize, usize)],
) -> Result<()> {
    let n = order.len();
    let t_rev = t.reverse();
    for _ in 0..(joins.len() + 1) {
        let pos: Vec<usize> = {
            let mut p = vec![0; n];
            for (k, &v) in order.iter().enumerate() {
                p[v] = k;
            }
            p
        };
        let Some(&(bu, bv)) = joins.iter().find(|&&(bu, bv)| pos[bu] < pos[bv]) else {
            return Ok(());
        };
        let (i, j) = (pos[bu], pos[bv]);
        if j != i + 1 {
            return Err(not_norm("forward join edge is not position-consecutive"));
        }
        let left_of_i = nbr_positions(t, order, i).into_iter().any(|q| q < i);
        let right_of_j = nbr_positions(t, order, j).into_iter().any(|q| q > j);
        if left_of_i || right_of_j {
            return Err(not_norm("join endpoint has a neighbour on the outer side"));
        }
        let has_right = nbr_positions(t, order, i).into_iter().any(|q| q > i);
        let has_left = nbr_positions(t, order, j).into_iter().any(|q| q < j);
        if has_right {
            fix_forward_join(t, order, i, s_set)?;
        } else if has_left {
            // Mirror case, handled through the reversal conjugation.
            order.reverse();
            let res = fix_forward_join(&t_rev, order, n - 1 - j, s_set);
            order.reverse();
            res?;
        } else {
            return Err(not_norm(
                "both join endpoints are isolated: the pair would be homogeneous",
            ));
        }
        assert_paving(t, order)?;
    }
    Err(not_norm("join backedge phase did not converge"))
}

/// Strips the extra backedge-neighbour off a join endpoint: the neighbour
/// sits two positions to the left; the three positions rotate so the endpoint
/// keeps only its join partner.
fn fix_join_neighbour(
    t: &Tournament,
    order: &mut Vec<usize>,
    j: usize,
    h: usize,
    s_set: &HashSet<usize>,
) -> Result<()> {
    if h > j {
        return Err(not_norm("join endpoint's extra neighbour on the wrong side"));
    }
    if j != h + 2 {
        return Err(not_norm("join endpoint's extra neighbour is too far away"));
    }
    if nbr_positions(t, order, h).into_iter().any(|q| q < h) {
        return Err(not_norm("extra neighbour of a join endpoint is not outermost"));
    }
    if s_set.contains(&order[h + 1]) {
        return Err(not_norm("substitution site inside a join isolation window"));
    }
    let (vh, vmid, vj) = (order[h], order[h + 1], order[j]);
    order[h..=h + 2].copy_from_slice(&[vmid, vj, vh]);
    Ok(())
}

/// Makes every traced join backedge an isolated edge.
fn isolate_join_edges(
    t: &Tournament,
    order: &mut Vec<usize>,
    s_set: &HashSet<usize>,
    joins: &[(usize, usize)],
) -> Result<()> {
    let n = order.len();
    let t_rev = t.reverse();
    for _ in 0..(4 * n * n + 16) {
        let pos: Vec<usize> = {
            let mut p = vec![0; n];
            for (k, &v) in order.iter().enumerate() {
                p[v] = k;
            }
            p
        };
        let mut target = None;
        for &(bu, bv) in joins {
            let (i, j) = (pos[bu], pos[bv]);
            if i < j {
                return Err(not_norm("join edge lost its backedge orientation"));
            }
            if let Some(h) = nbr_positions(t, order, j).into_iter().find(|&q| q != i) {
                target = Some((j, h, false));
                break;
            }
            if let Some(h) = nbr_positions(t, order, i).into_iter().find(|&q| q != j) {
                target = Some((i, h, true));
                break;
            }
        }
        let Some((endpoint, h, mirror)) = target else {
            return Ok(());
        };
        if mirror {
            order.reverse();
            let res = fix_join_neighbour(&t_rev, order, n - 1 - endpoint, n - 1 - h, s_set);
            order.reverse();
            res?;
        } else {
            fix_join_neighbour(t, order, endpoint, h, s_set)?;
        }
        assert_paving(t, order)?;
    }
    Err(not_norm("join isolation did not converge"))
}

/// Reorders the base's paving ordering so every substitution site is an
/// isolated vertex and every join edge an isolated backedge.
fn normalize_base(tree: &DecompositionTree, sites: &Sites) -> Result<Vec<usize>> {
    let t = &tree.base;
    let mut order = tree.base_ordering.perm.clone();
    let s_set: HashSet<usize> = sites.subs.iter().map(|&(v, _)| v).collect();
    isolate_substitution_sites(t, &mut order, &s_set)?;
    make_joins_backedges(t, &mut order, &s_set, &sites.joins)?;
    isolate_join_edges(t, &mut order, &s_set, &sites.joins)?;
    // Final invariant check: sites isolated, join edges isolated backedges.
    let pos: Vec<usize> = {
        let mut p = vec![0; order.len()];
        for (k, &v) in order.iter().enumerate() {
            p[v] = k;
        }
        p
    };
    for &s in &s_set {
        if !nbr_positions(t, &order, pos[s]).is_empty() {
            return Err(not_norm("a substitution site is still not isolated"));
        }
    }
    for &(bu, bv) in &sites.joins {
        let (i, j) = (pos[bu], pos[bv]);
        if i < j
            || nbr_positions(t, &order, i) != vec![j]
            || nbr_positions(t, &order, j) != vec![i]
        {
            return Err(not_norm("a join edge is still not an isolated backedge"));
        }
    }
    Ok(order)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ExpandStyle {
    /// Substitution sites get the minimum-backedge (identity) orderings; join
    /// edges the canonical ordering of P7⁻.
    Natural,
    /// Substitution sites get the H5/H6/H7 realizers; join edges the H6
    /// realizer split into its flocks.
    Theorem11,
}

/// Replays the tree, expanding each site of the normalized base ordering in
/// place with the style's block orderings.
fn expand(tree: &DecompositionTree, order: Vec<usize>, style: ExpandStyle) -> Result<VertexOrdering> {
    let rl = realizers();
    let mut current = tree.base.clone();
    let mut ord = order;
    for step in &tree.steps {
        match step {
            Step::Substitute { at, kind, mapping } => {
                let (grown, sm) = substitute(&current, *at, &pattern(*kind))?;
                let block: Vec<usize> = match style {
                    ExpandStyle::Natural => (0..kind.size()).collect(),
                    ExpandStyle::Theorem11 => match kind {
                        BasicKind::T5 => rl.h5.perm.clone(),
                        BasicKind::P7Minus => rl.h6.perm.clone(),
                        BasicKind::P7 => rl.h7.perm.clone(),
                    },
                };
                let mut next = Vec::with_capacity(grown.n());
                for &e in &ord {
                    if e == *at {
                        next.extend(block.iter().map(|&p| mapping[sm.inner[p]]));
                    } else {
                        next.push(mapping[sm.host[e]]);
                    }
                }
                ord = next;
                current = grown.relabel(mapping);
            }
            Step::Join { at: (u, v), mapping } => {
                let (grown, _, jm) = p7minus_join(&current, *u, *v)?;
                let realizer = match style {
                    ExpandStyle::Natural => &rl.canonical_p7m,
                    ExpandStyle::Theorem11 => &rl.h6,
                };
                let pu = ord.iter().position(|&e| e == *u);
                let pv = ord.iter().position(|&e| e == *v);
                match (pu, pv) {
                    (Some(pu), Some(pv)) if pv < pu => {}
                    _ => return Err(internal("join expansion found its edge misoriented")),
                }
                let mut next = Vec::with_capacity(grown.n());
                for &e in &ord {
                    if e == *v {
                        // Earlier slot: the D1 flock.
                        next.extend(realizer.perm[..3].iter().map(|&p| mapping[jm.inner[p]]));
                    } else if e == *u {
                        next.extend(realizer.perm[3..].iter().map(|&p| mapping[jm.inner[p]]));
                    } else {
                        next.push(mapping[jm.host[e]]);
                    }
                }
                ord = next;
                current = grown.relabel(mapping);
            }
        }
    }
    VertexOrdering::new(ord)
}

fn normalized_ordering(tree: &DecompositionTree, style: ExpandStyle) -> Result<VertexOrdering> {
    let sites = trace_sites(tree)?;
    let order = normalize_base(tree, &sites)?;
    expand(tree, order, style)
}

/// The base's paving ordering after normalization (substitution sites
/// isolated, join edges isolated backedges), for callers that work on the
/// unexpanded base.
pub(crate) fn normalized_base_ordering(tree: &DecompositionTree) -> Result<VertexOrdering> {
    let sites = trace_sites(tree)?;
    let order = normalize_base(tree, &sites)?;
    VertexOrdering::new(order)
}

/// The natural ordering of a decomposition tree: the base's paving ordering,
/// reordered so substitution sites are isolated vertices and join edges are
/// isolated backedges, then expanded in place — substitution sites with the
/// minimum-backedge orderings of their kinds, join edges with the canonical
/// ordering of P7⁻ (flocks at the two endpoint slots).
///
/// `NotNormalizable` never fires on trees produced by [`decompose`] from a
/// Δ(1,2,2)-free tournament; it signals a corrupted tree or an internal bug.
pub fn natural_ordering(tree: &DecompositionTree) -> Result<VertexOrdering> {
    normalized_ordering(tree, ExpandStyle::Natural)
}

/// An ordering of a Δ(1,2,2)-free tournament whose backedge components are
/// monotone paths or copies of H5, H6, H7 with the consecutiveness side
/// conditions, together with the validated classification.
pub fn theorem11_ordering(
    t: &Tournament,
) -> Result<(VertexOrdering, Vec<(Component, ComponentClass)>)> {
    let tree = match decompose(t)? {
        Decomposition::Witness(w) => {
            return Err(Error::NotFree {
                x: w.x,
                y0: w.y[0],
                y1: w.y[1],
                z0: w.z[0],
                z1: w.z[1],
            })
        }
        Decomposition::Tree(tree) => tree,
    };
    let ordering = normalized_ordering(&tree, ExpandStyle::Theorem11)?;
    let g = backedge_graph(t, &ordering);
    let classes = classify_components(&g);
    if let Some((c, _)) = classes
        .iter()
        .find(|(_, class)| *class == ComponentClass::Other)
    {
        return Err(internal(format!(
            "normal form left an unclassified component on vertices {:?}",
            c.vertices
        )));
    }
    Ok((ordering, classes))
}
