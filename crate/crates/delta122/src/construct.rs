//! Forward operations: substitution, the P7⁻-join, decomposition-tree
//! replay, and seeded random generation of Δ(1,2,2)-free tournaments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::core::{is_permutation, Tournament, VertexOrdering};
use crate::decompose::check_paving;
use crate::error::{Error, Result};
use crate::patterns::{
    is_bridge, is_nice_vertex, pattern, BasicKind, P7M_D1, P7M_D2,
};

/// Retry budget for rejection sampling and base resampling.
pub const GEN_ATTEMPTS: usize = 1000;

/// How the labels of the two operands of [`substitute`] map into the result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstMapping {
    /// `host[w]` = new index of host vertex `w`; for the replaced vertex this
    /// is the first index of the inserted block.
    pub host: Vec<usize>,
    /// `inner[p]` = new index of substituted-tournament vertex `p`.
    pub inner: Vec<usize>,
}

/// Substitutes `s` for vertex `v` of `t`: the copy of `s` occupies a block of
/// labels starting at `v` (host vertices above `v` shift up by `|s| − 1`),
/// inherits `v`'s adjacency to the rest, and keeps its internal edges. The
/// image of `V(s)` is a homogeneous set of the result.
pub fn substitute(t: &Tournament, v: usize, s: &Tournament) -> Result<(Tournament, SubstMapping)> {
    let n = t.n();
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let k = s.n();
    let new_n = n - 1 + k;
    // New index i is a host vertex below v, a block member, or a shifted host
    // vertex; `role` recovers which.
    enum Role {
        Host(usize),
        Inner(usize),
    }
    let role = |i: usize| {
        if i < v {
            Role::Host(i)
        } else if i < v + k {
            Role::Inner(i - v)
        } else {
            Role::Host(i - k + 1)
        }
    };
    let result = Tournament::from_fn(new_n, |i, j| match (role(i), role(j)) {
        (Role::Host(a), Role::Host(b)) => t.edge(a, b),
        (Role::Inner(p), Role::Inner(q)) => s.edge(p, q),
        (Role::Host(a), Role::Inner(_)) => t.edge(a, v),
        (Role::Inner(_), Role::Host(b)) => t.edge(v, b),
    });
    let host = (0..n)
        .map(|w| if w < v { w } else if w == v { v } else { w + k - 1 })
        .collect();
    let inner = (0..k).map(|p| v + p).collect();
    Ok((result, SubstMapping { host, inner }))
}

/// How the labels of the host and the P7⁻ copy map into a join result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinMapping {
    /// `host[w]` = new index of host vertex `w`; for the two replaced
    /// endpoints this is the first index of their block.
    pub host: Vec<usize>,
    /// `inner[p]` = new index of reference-P7⁻ vertex `p`.
    pub inner: Vec<usize>,
}

/// Joins a fresh P7⁻ copy to the edge u → v: the degree-partition part D2
/// (out-degree 2) replaces `u` and D1 (out-degree 3) replaces `v`, each
/// inheriting the replaced endpoint's outside adjacency; inside the copy all
/// edges follow the reference P7⁻. Returns the created pair
/// `(A1, A2)` — A1 the three labels replacing `u`, A2 those replacing `v` —
/// which is a homogeneous pair of the result.
pub fn p7minus_join(
    t: &Tournament,
    u: usize,
    v: usize,
) -> Result<(Tournament, ([usize; 3], [usize; 3]), JoinMapping)> {
    let n = t.n();
    for &w in &[u, v] {
        if w >= n {
            return Err(Error::VertexOutOfRange { vertex: w, n });
        }
    }
    if !t.edge(u, v) {
        return Err(Error::NotAnEdge { u, v });
    }
    let s = pattern(BasicKind::P7Minus);
    let (a, b) = (u.min(v), u.max(v));
    // Each endpoint becomes a block of three (blocks at a..a+3 and
    // b+2..b+5); surviving vertices between the endpoints shift by 2, those
    // above both by 4.
    let new_of_host = |w: usize| {
        if w < a {
            w
        } else if w == a {
            a
        } else if w < b {
            w + 2
        } else if w == b {
            b + 2
        } else {
            w + 4
        }
    };
    // The block at u's slot holds the D2 labels ascending; at v's slot, D1.
    let (u_labels, v_labels) = (P7M_D2, P7M_D1);
    let block_of = |w: usize| if w == u { u_labels } else { v_labels };
    enum Role {
        Host(usize),
        Inner(usize),
    }
    let role = move |i: usize| {
        if (a..a + 3).contains(&i) {
            Role::Inner(block_of(a)[i - a])
        } else if (b + 2..b + 5).contains(&i) {
            Role::Inner(block_of(b)[i - b - 2])
        } else if i < a {
            Role::Host(i)
        } else if i < b + 2 {
            Role::Host(i - 2)
        } else {
            Role::Host(i - 4)
        }
    };
    let new_n = n + 4;
    let result = Tournament::from_fn(new_n, |i, j| match (role(i), role(j)) {
        (Role::Host(x), Role::Host(y)) => t.edge(x, y),
        (Role::Inner(p), Role::Inner(q)) => s.edge(p, q),
        (Role::Host(x), Role::Inner(q)) => {
            let anchor = if u_labels.contains(&q) { u } else { v };
            t.edge(x, anchor)
        }
        (Role::Inner(p), Role::Host(y)) => {
            let anchor = if u_labels.contains(&p) { u } else { v };
            t.edge(anchor, y)
        }
    });
    let host: Vec<usize> = (0..n).map(new_of_host).collect();
    let mut inner = vec![0; 6];
    for (off, &p) in u_labels.iter().enumerate() {
        inner[p] = new_of_host(u) + off;
    }
    for (off, &p) in v_labels.iter().enumerate() {
        inner[p] = new_of_host(v) + off;
    }
    let a1 = [host[u], host[u] + 1, host[u] + 2];
    let a2 = [host[v], host[v] + 1, host[v] + 2];
    Ok((result, (a1, a2), JoinMapping { host, inner }))
}

/// One recorded construction step. `mapping` relabels the canonical result of
/// the operation: new-tournament vertex `mapping[k]` plays vertex `k` of the
/// canonical [`substitute`] / [`p7minus_join`] output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op")]
pub enum Step {
    #[serde(rename = "substitute")]
    Substitute {
        at: usize,
        kind: BasicKind,
        mapping: Vec<usize>,
    },
    #[serde(rename = "join")]
    Join {
        at: (usize, usize),
        mapping: Vec<usize>,
    },
}

/// A paving base plus the construction steps that rebuild a Δ(1,2,2)-free
/// tournament from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTree {
    pub base: Tournament,
    pub base_ordering: VertexOrdering,
    pub steps: Vec<Step>,
}

#[derive(Serialize, Deserialize)]
struct BaseRepr {
    n: usize,
    matrix: Vec<String>,
    ordering: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TreeRepr {
    base: BaseRepr,
    steps: Vec<Step>,
}

impl DecompositionTree {
    pub fn new(base: Tournament, base_ordering: VertexOrdering, steps: Vec<Step>) -> Result<Self> {
        if !check_paving(&base, &base_ordering) {
            return Err(Error::NotPavingOrdering);
        }
        Ok(DecompositionTree {
            base,
            base_ordering,
            steps,
        })
    }

    pub fn to_json(&self) -> String {
        let repr = TreeRepr {
            base: BaseRepr {
                n: self.base.n(),
                matrix: self.base.matrix_rows(),
                ordering: self.base_ordering.perm.clone(),
            },
            steps: self.steps.clone(),
        };
        serde_json::to_string_pretty(&repr).expect("tree serialization cannot fail")
    }

    /// Parses and validates the JSON interchange form: the matrix must be a
    /// tournament, the ordering a paving ordering of it, and each step's
    /// mapping a permutation of the correct stage size.
    pub fn from_json(text: &str) -> Result<Self> {
        let repr: TreeRepr = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        if repr.base.matrix.len() != repr.base.n {
            return Err(Error::NotTournament(format!(
                "matrix has {} rows but n = {}",
                repr.base.matrix.len(),
                repr.base.n
            )));
        }
        let rows: Vec<Vec<u8>> = repr
            .base
            .matrix
            .iter()
            .map(|row| {
                row.chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        _ => Err(Error::NotTournament(format!("invalid matrix character {c:?}"))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let base = Tournament::from_matrix(&rows)?;
        let base_ordering = VertexOrdering::new(repr.base.ordering)?;
        let mut size = base.n();
        for (idx, step) in repr.steps.iter().enumerate() {
            let (target_ok, mapping, grown) = match step {
                Step::Substitute { at, kind, mapping } => {
                    (*at < size, mapping, size - 1 + kind.size())
                }
                Step::Join { at: (u, v), mapping } => (*u < size && *v < size && u != v, mapping, size + 4),
            };
            if !target_ok {
                return Err(Error::ReplayPreconditionFailed {
                    step: idx,
                    message: "step target out of range".into(),
                });
            }
            if !is_permutation(mapping, grown) {
                return Err(Error::ReplayPreconditionFailed {
                    step: idx,
                    message: format!("mapping is not a permutation of 0..{grown}"),
                });
            }
            size = grown;
        }
        DecompositionTree::new(base, base_ordering, repr.steps)
    }

    /// Number of vertices of the replayed tournament.
    pub fn final_size(&self) -> usize {
        let mut size = self.base.n();
        for step in &self.steps {
            size = match step {
                Step::Substitute { kind, .. } => size - 1 + kind.size(),
                Step::Join { .. } => size + 4,
            };
        }
        size
    }
}

/// Replays a decomposition tree: starts from the base and applies each step
/// in order, verifying at each stage that a substitution targets a nice
/// vertex and a join targets a bridge. A failed verification signals a
/// corrupted tree.
pub fn reconstruct(tree: &DecompositionTree) -> Result<Tournament> {
    if !check_paving(&tree.base, &tree.base_ordering) {
        return Err(Error::NotPavingOrdering);
    }
    let mut current = tree.base.clone();
    for (idx, step) in tree.steps.iter().enumerate() {
        let fail = |message: String| Error::ReplayPreconditionFailed { step: idx, message };
        current = match step {
            Step::Substitute { at, kind, mapping } => {
                if *at >= current.n() {
                    return Err(fail(format!("vertex {at} out of range")));
                }
                let (nice, _) = is_nice_vertex(&current, *at)?;
                if !nice {
                    return Err(fail(format!("vertex {at} is not nice")));
                }
                let (grown, _) = substitute(&current, *at, &pattern(*kind))?;
                if !is_permutation(mapping, grown.n()) {
                    return Err(fail("mapping is not a permutation".into()));
                }
                grown.relabel(mapping)
            }
            Step::Join { at: (u, v), mapping } => {
                if *u >= current.n() || *v >= current.n() {
                    return Err(fail(format!("edge ({u}, {v}) out of range")));
                }
                if !current.edge(*u, *v) {
                    return Err(fail(format!("({u}, {v}) is not an edge")));
                }
                let (bridge, _) = is_bridge(&current, *u, *v)?;
                if !bridge {
                    return Err(fail(format!("edge ({u}, {v}) is not a bridge")));
                }
                let (grown, _, _) = p7minus_join(&current, *u, *v)?;
                if !is_permutation(mapping, grown.n()) {
                    return Err(fail("mapping is not a permutation".into()));
                }
                grown.relabel(mapping)
            }
        };
    }
    Ok(current)
}

/// Parameters for the random generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenParams {
    pub n_target: usize,
    /// Probability-like knob in [0, 1] steering how many backedge chains the
    /// paving sampler lays down.
    pub backedge_density: f64,
    pub subst_weight: f64,
    pub join_weight: f64,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n_target: 16,
            backedge_density: 0.4,
            subst_weight: 1.0,
            join_weight: 1.0,
            seed: 0,
        }
    }
}

fn sample_paving(n: usize, density: f64, rng: &mut ChaCha8Rng) -> (Tournament, VertexOrdering) {
    // Backedges form vertex-disjoint chains over the transitive base, with
    // consecutive chain elements at distance ≥ 2: (P1) and (P2) hold by
    // construction.
    let mut used = vec![false; n];
    let mut backedges: Vec<(usize, usize)> = Vec::new();
    for start in 0..n {
        if used[start] || !rng.gen_bool(density) {
            continue;
        }
        let mut cur = start;
        loop {
            if !rng.gen_bool(density.max(0.5 * density + 0.25)) {
                break;
            }
            let mut next = cur + 2;
            while next < n && used[next] {
                next += 1;
            }
            if next >= n {
                break;
            }
            used[cur] = true;
            used[next] = true;
            backedges.push((cur, next));
            cur = next;
        }
    }
    let t = Tournament::from_fn(n, |i, j| !backedges.contains(&(i, j)));
    (t, VertexOrdering::identity(n))
}

/// Generates a Δ(1,2,2)-free paving tournament with a paving ordering by
/// laying down random vertex-disjoint backedge chains over a transitive base
/// and rejection-sampling until the result is free. The effective density
/// decays slightly with each rejected attempt: dense chain layouts are
/// rarely free at large n, and the decay makes such requests converge on a
/// sparser paving instead of exhausting the attempt budget.
pub fn gen_paving(params: &GenParams) -> Result<(Tournament, VertexOrdering)> {
    if params.n_target == 0 {
        return Err(Error::PreconditionViolated("n_target must be ≥ 1".into()));
    }
    let density = params.backedge_density.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for attempt in 0..GEN_ATTEMPTS {
        let d = density * 0.97f64.powi(attempt as i32);
        let (t, sigma) = sample_paving(params.n_target, d, &mut rng);
        debug_assert!(check_paving(&t, &sigma));
        if crate::patterns::find_delta122(&t).is_none() {
            return Ok((t, sigma));
        }
    }
    Err(Error::GenerationExhausted { attempts: GEN_ATTEMPTS })
}

/// Generates a Δ(1,2,2)-free tournament together with the decomposition tree
/// that builds it: a paving base expanded by substituting basic tournaments
/// at uniformly random nice vertices and joining P7⁻ copies at uniformly
/// random bridges, with operation choice weighted by the params, until the
/// target size is reached. Deterministic given the seed.
pub fn gen_free(params: &GenParams) -> Result<(Tournament, DecompositionTree)> {
    if params.n_target == 0 {
        return Err(Error::PreconditionViolated("n_target must be ≥ 1".into()));
    }
    let sw = params.subst_weight.max(0.0);
    let jw = params.join_weight.max(0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    if sw + jw == 0.0 {
        let (base, ordering) = gen_paving(params)?;
        let tree = DecompositionTree::new(base.clone(), ordering, Vec::new())?;
        return Ok((base, tree));
    }
    for _ in 0..GEN_ATTEMPTS {
        let base_n = rng.gen_range(1..=params.n_target);
        let base_params = GenParams {
            n_target: base_n,
            seed: rng.gen(),
            ..params.clone()
        };
        let (base, ordering) = match gen_paving(&base_params) {
            Ok(pair) => pair,
            Err(Error::GenerationExhausted { .. }) => continue,
            Err(e) => return Err(e),
        };
        let mut current = base.clone();
        let mut steps = Vec::new();
        let mut stuck = false;
        while current.n() < params.n_target && !stuck {
            let pick_subst = rng.gen_bool(sw / (sw + jw));
            let mut acted = false;
            for attempt_subst in [pick_subst, !pick_subst] {
                if attempt_subst && sw > 0.0 {
                    let nice: Vec<usize> = (0..current.n())
                        .filter(|&v| is_nice_vertex(&current, v).expect("in range").0)
                        .collect();
                    if let Some(&at) = pick(&nice, &mut rng) {
                        let kind = *pick(&[BasicKind::T5, BasicKind::P7Minus, BasicKind::P7], &mut rng)
                            .expect("nonempty");
                        let (grown, _) = substitute(&current, at, &pattern(kind))?;
                        steps.push(Step::Substitute {
                            at,
                            kind,
                            mapping: (0..grown.n()).collect(),
                        });
                        current = grown;
                        acted = true;
                        break;
                    }
                } else if !attempt_subst && jw > 0.0 {
                    let mut bridges = Vec::new();
                    for u in 0..current.n() {
                        for v in current.out_row(u).iter() {
                            if is_bridge(&current, u, v).expect("edge exists").0 {
                                bridges.push((u, v));
                            }
                        }
                    }
                    if let Some(&(u, v)) = pick(&bridges, &mut rng) {
                        let (grown, _, _) = p7minus_join(&current, u, v)?;
                        steps.push(Step::Join {
                            at: (u, v),
                            mapping: (0..grown.n()).collect(),
                        });
                        current = grown;
                        acted = true;
                        break;
                    }
                }
            }
            stuck = !acted;
        }
        if current.n() >= params.n_target {
            let tree = DecompositionTree::new(base, ordering, steps)?;
            return Ok((current, tree));
        }
    }
    Err(Error::GenerationExhausted { attempts: GEN_ATTEMPTS })
}

fn pick<'a, T>(items: &'a [T], rng: &mut ChaCha8Rng) -> Option<&'a T> {
    if items.is_empty() {
        None
    } else {
        Some(&items[rng.gen_range(0..items.len())])
    }
}
