//! Construction of structures: free joins, generic chains that discharge
//! universality and homogeneity obligations fairly, pseudofinite chains,
//! bounded-size approximants of the generic theories of finite index, and
//! the decision procedure built on them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::capacity::{CapacityError, DEFAULT_DECIDE_RANK, DEFAULT_ENUMERATION_CAPACITY};
use crate::formula::{eval_formula, free_variables, quantifier_rank, Formula, FormulaError};
use crate::game::{vertex_value, GameError};
use crate::graph::{
    canonical_code, enumerate_class, enumerate_trees, in_class, ClassIndex, FiniteGraph,
    GraphError, VertexId, VertexSet,
};
use crate::strong::{is_closed, StructureError};

/// Errors raised while building or deciding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuilderError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Capacity(#[from] CapacityError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("vertex {vertex} is shared by both sides but missing from the declared shared part")]
    Overlap { vertex: VertexId },
    #[error("the two sides disagree about the edge {a}-{b} inside the shared part")]
    SharedPartMismatch { a: VertexId, b: VertexId },
    #[error("index {index} exceeds the enumeration, which has {length} members")]
    IndexOutOfRange { index: usize, length: usize },
    #[error("the formula has free variable {variable}, a sentence is required")]
    NotASentence { variable: String },
    #[error("quantifier rank {rank} exceeds the configured ceiling {ceiling}")]
    RankTooHigh { rank: usize, ceiling: usize },
    #[error(
        "approximants with size caps {caps:?} disagree ({verdicts:?}); \
         this signals a construction bug and is never resolved silently"
    )]
    CrossValidation { caps: (usize, usize), verdicts: (bool, bool) },
    #[error("construction invariant violated: {0}")]
    Internal(String),
}

/// The free join of `m1` and `m2` over the shared part `m0`: the union of
/// the vertex sets with the union of the edge sets and nothing else. The
/// two sides must intersect exactly in `m0` (by vertex id) and agree about
/// the structure they induce on it.
pub fn free_join(
    m1: &FiniteGraph,
    m0: &VertexSet,
    m2: &FiniteGraph,
) -> Result<FiniteGraph, BuilderError> {
    for v in m0 {
        if !m1.contains(v) || !m2.contains(v) {
            return Err(BuilderError::Overlap { vertex: v.clone() });
        }
    }
    for v in m1.vertices() {
        if m2.contains(v) && !m0.contains(v) {
            return Err(BuilderError::Overlap { vertex: v.clone() });
        }
    }
    let shared: Vec<&VertexId> = m0.iter().collect();
    for (i, a) in shared.iter().enumerate() {
        for b in &shared[..i] {
            if m1.has_edge(a, b) != m2.has_edge(a, b) {
                return Err(BuilderError::SharedPartMismatch {
                    a: (*b).clone(),
                    b: (*a).clone(),
                });
            }
        }
    }
    let mut names: Vec<String> = Vec::new();
    let mut seen = VertexSet::new();
    for v in m1.vertices().iter().chain(m2.vertices()) {
        if seen.insert(v.clone()) {
            names.push(v.as_str().to_string());
        }
    }
    let mut edges: BTreeSet<(String, String)> = BTreeSet::new();
    for g in [m1, m2] {
        for e in g.edges() {
            let (a, b) = e.endpoints();
            edges.insert((a.as_str().to_string(), b.as_str().to_string()));
        }
    }
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let edges: Vec<(&str, &str)> = edges
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    Ok(FiniteGraph::from_named(&names, &edges)?)
}

/// What a chain step accomplished.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObligationKind {
    /// Embed a class member as a closed copy (disjointly).
    Universality,
    /// Extend an embedded closed copy by a closed extension of it.
    Homogeneity,
}

/// One discharged obligation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    /// 1-based index of the chain step that discharged the obligation.
    pub step: usize,
    /// Global enqueue sequence number; the queue is FIFO, so these appear
    /// in strictly increasing order.
    pub obligation: usize,
    pub kind: ObligationKind,
    /// Index of the embedded member in the enumeration.
    pub member: usize,
    /// For homogeneity: the member the base copy realizes.
    pub base_member: Option<usize>,
    /// Vertices of the base copy in the chain (empty for universality).
    pub base: Vec<VertexId>,
    /// Vertices added by this step.
    pub added: Vec<VertexId>,
}

/// A finite initial segment of a generic chain: structures
/// `A_0 = empty <= A_1 <= ...` with every stage closed in the next and a
/// ledger recording which obligation each step discharged.
#[derive(Clone, Debug)]
pub struct GenericChain {
    /// The enumeration the obligations draw from.
    pub members: Vec<FiniteGraph>,
    /// `stages[i]` is `A_i`; stage 0 is the empty graph.
    pub stages: Vec<FiniteGraph>,
    pub ledger: Vec<LedgerEntry>,
}

impl GenericChain {
    /// The last stage.
    pub fn current(&self) -> &FiniteGraph {
        self.stages.last().expect("stage 0 always exists")
    }
}

/// An obligation waiting in the queue.
enum Pending {
    Universality {
        member: usize,
    },
    Homogeneity {
        member: usize,
        base_member: usize,
        /// Vertices of the extending member that land on the base copy,
        /// aligned index-by-index with `base`.
        subset: Vec<VertexId>,
        /// The base copy inside the chain.
        base: Vec<VertexId>,
    },
}

/// Builds `steps` stages of the generic chain of index `alpha`, drawing
/// obligations from the class members with at most `size_bound` vertices.
/// The queue is FIFO: universality obligations for every nonempty member
/// are enqueued first; whenever a closed copy of a member lands in the
/// chain, homogeneity obligations for each of its closed extensions within
/// the bound are enqueued. One obligation is discharged per step via a
/// free join, and the chain invariants (each stage closed in the next,
/// every stage in the class) are re-verified on every step.
pub fn generic_chain(
    alpha: ClassIndex,
    steps: usize,
    size_bound: usize,
) -> Result<GenericChain, BuilderError> {
    CapacityError::check("generic_chain steps", steps, 500)?;
    let members = enumerate_class(alpha, size_bound)?;
    let member_codes: Vec<String> = members
        .iter()
        .map(|m| canonical_code(m, &[]).expect("members are forests"))
        .collect();
    let code_to_member: BTreeMap<&String, usize> = member_codes
        .iter()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    // In a forest a subset is closed exactly when it is a union of whole
    // components, so the proper nonempty closed subsets of every member are
    // its component unions.
    let mut all_closed: Vec<Vec<Vec<VertexId>>> = Vec::new();
    for member in &members {
        let comps = member.components();
        let mut list = Vec::new();
        for mask in 1u32..(1 << comps.len()) {
            if mask == (1 << comps.len()) - 1 {
                continue;
            }
            let subset: Vec<VertexId> = comps
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .flat_map(|(_, c)| c.iter().cloned())
                .collect();
            list.push(subset);
        }
        all_closed.push(list);
    }
    // The closed extensions of each member, one per marked isomorphism
    // class: (extending member, its subset playing the base, an
    // isomorphism from that subset onto the base member).
    type Iso = BTreeMap<VertexId, VertexId>;
    let mut extensions: Vec<Vec<(usize, Vec<VertexId>, Iso)>> =
        vec![Vec::new(); members.len()];
    // The closed sub-copies living inside each member: (the member the
    // subset realizes, an isomorphism from that member onto the subset).
    let mut sub_copies: Vec<Vec<(usize, Iso)>> = vec![Vec::new(); members.len()];
    for (j, subsets) in all_closed.iter().enumerate() {
        let mut seen_marked = BTreeSet::new();
        for subset in subsets {
            let set: VertexSet = subset.iter().cloned().collect();
            let sub_graph = members[j].induced(&set).expect("subset of member");
            let code = canonical_code(&sub_graph, &[]).expect("forest");
            let i = match code_to_member.get(&code) {
                Some(i) => *i,
                None => continue,
            };
            sub_copies[j].push((
                i,
                find_isomorphism(&members[i], &sub_graph).expect("codes agree"),
            ));
            let marked = canonical_code(&members[j], subset).expect("member is a forest");
            if seen_marked.insert(marked) {
                let tau = find_isomorphism(&sub_graph, &members[i]).expect("codes agree");
                extensions[i].push((j, subset.clone(), tau));
            }
        }
    }

    let mut queue: VecDeque<(usize, Pending)> = VecDeque::new();
    let mut next_seq = 0usize;
    for (i, member) in members.iter().enumerate() {
        if member.vertex_count() > 0 {
            queue.push_back((next_seq, Pending::Universality { member: i }));
            next_seq += 1;
        }
    }
    let mut registered: BTreeSet<(usize, Vec<VertexId>)> = BTreeSet::new();
    // When a closed copy of `member` lands in the chain via `phi`, enqueue
    // the homogeneity obligations of every closed copy it contains
    // (including itself) that has not been seen before.
    let mut register = |queue: &mut VecDeque<(usize, Pending)>, member: usize, phi: &Iso| {
        let mut copies: Vec<(usize, Iso)> = vec![(member, phi.clone())];
        for (i, psi) in &sub_copies[member] {
            let composed: Iso = psi.iter().map(|(k, v)| (k.clone(), phi[v].clone())).collect();
            copies.push((*i, composed));
        }
        for (i, map) in copies {
            let mut image: Vec<VertexId> = map.values().cloned().collect();
            image.sort();
            if !registered.insert((i, image)) {
                continue;
            }
            for (j, subset, tau) in &extensions[i] {
                let base: Vec<VertexId> = subset.iter().map(|s| map[&tau[s]].clone()).collect();
                queue.push_back((
                    next_seq,
                    Pending::Homogeneity {
                        member: *j,
                        base_member: i,
                        subset: subset.clone(),
                        base,
                    },
                ));
                next_seq += 1;
            }
        }
    };

    let mut stages = vec![FiniteGraph::empty()];
    let mut ledger = Vec::new();

    for step in 1..=steps {
        let (seq, pending) = match queue.pop_front() {
            Some(p) => p,
            None => break,
        };
        let current = stages.last().unwrap().clone();
        let (next, entry, new_member, new_map) = match pending {
            Pending::Universality { member } => {
                let map: BTreeMap<VertexId, VertexId> = members[member]
                    .vertices()
                    .iter()
                    .map(|v| (v.clone(), VertexId::new(format!("s{step}_{}", v.as_str()))))
                    .collect();
                let fresh = members[member].relabel(|v| map[v].clone())?;
                let added: Vec<VertexId> = fresh.vertices().iter().cloned().collect();
                let next = free_join(&current, &VertexSet::new(), &fresh)?;
                let entry = LedgerEntry {
                    step,
                    obligation: seq,
                    kind: ObligationKind::Universality,
                    member,
                    base_member: None,
                    base: Vec::new(),
                    added,
                };
                (next, entry, member, map)
            }
            Pending::Homogeneity {
                member,
                base_member,
                subset,
                base,
            } => {
                let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
                for (s, b) in subset.iter().zip(&base) {
                    map.insert(s.clone(), b.clone());
                }
                for v in members[member].vertices() {
                    map.entry(v.clone()).or_insert_with(|| {
                        VertexId::new(format!("s{step}_{}", v.as_str()))
                    });
                }
                let copy = members[member].relabel(|v| map[v].clone())?;
                let base_set: VertexSet = base.iter().cloned().collect();
                let added: Vec<VertexId> = copy
                    .vertices()
                    .iter()
                    .filter(|v| !base_set.contains(*v))
                    .cloned()
                    .collect();
                let next = free_join(&current, &base_set, &copy)?;
                let entry = LedgerEntry {
                    step,
                    obligation: seq,
                    kind: ObligationKind::Homogeneity,
                    member,
                    base_member: Some(base_member),
                    base,
                    added,
                };
                (next, entry, member, map)
            }
        };
        if !is_closed(&next, current.vertices(), None)? {
            return Err(BuilderError::Internal(format!(
                "stage {step} is not a closed extension of its predecessor"
            )));
        }
        if !in_class(&next, alpha) {
            return Err(BuilderError::Internal(format!(
                "stage {step} left the class"
            )));
        }
        register(&mut queue, new_member, &new_map);
        stages.push(next);
        ledger.push(entry);
    }

    Ok(GenericChain {
        members,
        stages,
        ledger,
    })
}

/// First graph isomorphism from `g` onto `h` in lexicographic order of the
/// vertex assignment, if any. Both graphs are small by construction.
fn find_isomorphism(g: &FiniteGraph, h: &FiniteGraph) -> Option<BTreeMap<VertexId, VertexId>> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let gs: Vec<VertexId> = g.vertices().iter().cloned().collect();
    let hs: Vec<VertexId> = h.vertices().iter().cloned().collect();
    let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut used: VertexSet = VertexSet::new();
    fn extend(
        g: &FiniteGraph,
        h: &FiniteGraph,
        gs: &[VertexId],
        hs: &[VertexId],
        map: &mut BTreeMap<VertexId, VertexId>,
        used: &mut VertexSet,
        pos: usize,
    ) -> bool {
        if pos == gs.len() {
            return true;
        }
        let v = &gs[pos];
        'candidates: for w in hs {
            if used.contains(w) {
                continue;
            }
            for (a, b) in map.iter() {
                if g.has_edge(v, a) != h.has_edge(w, b) {
                    continue 'candidates;
                }
            }
            map.insert(v.clone(), w.clone());
            used.insert(w.clone());
            if extend(g, h, gs, hs, map, used, pos + 1) {
                return true;
            }
            map.remove(v);
            used.remove(w);
        }
        false
    }
    if extend(g, h, &gs, &hs, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}

/// The i-th pseudofinite stage: the disjoint union (free join over the
/// empty set) of the first i + 1 members of the enumeration, each copy
/// prefixed by its index.
pub fn pseudofinite_chain(
    alpha: ClassIndex,
    i: usize,
    size_bound: usize,
) -> Result<FiniteGraph, BuilderError> {
    let members = enumerate_class(alpha, size_bound)?;
    if i >= members.len() {
        return Err(BuilderError::IndexOutOfRange {
            index: i,
            length: members.len(),
        });
    }
    let mut acc = FiniteGraph::empty();
    for (j, member) in members.iter().take(i + 1).enumerate() {
        let copy = member.relabel(|v| VertexId::new(format!("m{j}_{}", v.as_str())))?;
        acc = free_join(&acc, &VertexSet::new(), &copy)?;
    }
    Ok(acc)
}

/// One realized value with its chosen representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representative {
    /// Rendering of the realized value.
    pub value: String,
    /// Canonical code of the representative tree.
    pub tree_code: String,
    /// Vertex of the representative realizing the value.
    pub root: VertexId,
    pub size: usize,
}

/// How an approximant was put together.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub radius: u64,
    pub size_cap: usize,
    pub copies: usize,
    pub value_cap: u32,
    pub representatives: Vec<Representative>,
}

/// A finite structure agreeing with the generic theory of index `n` on all
/// sentences of quantifier rank up to `k`.
#[derive(Clone, Debug)]
pub struct Approximant {
    pub graph: FiniteGraph,
    pub n: u32,
    pub k: usize,
    pub provenance: Provenance,
}

/// The default tree-size cap for rank `k`: with r = (3^k - 1) / 2, values
/// only inspect radius r, so trees of 2r + 2 vertices realize everything a
/// bounded neighbourhood can.
pub fn size_cap(k: usize) -> usize {
    let kk = k.clamp(1, 12) as u32;
    let r = (3u64.pow(kk) - 1) / 2;
    (2 * r + 2) as usize
}

/// Builds the rank-`k` approximant of the theory of index `n` at the
/// default size cap. Rank 2 is within the default capacity; rank 3 is not
/// and reports a capacity error rather than degrading.
pub fn build_approximant(n: u32, k: usize) -> Result<Approximant, BuilderError> {
    let cap = size_cap(k);
    CapacityError::check("build_approximant size cap", cap, DEFAULT_ENUMERATION_CAPACITY)?;
    build_approximant_with_cap(n, k, cap)
}

/// As [`build_approximant`] with an explicit tree-size cap (used for
/// cross-validation with perturbed parameters).
pub fn build_approximant_with_cap(
    n: u32,
    k: usize,
    cap: usize,
) -> Result<Approximant, BuilderError> {
    CapacityError::check("build_approximant trees", cap, 13)?;
    let copies = k.max(1);
    let r = (3u64.pow(copies.min(12) as u32) - 1) / 2;
    let value_cap = (copies - 1).max(1) as u32;
    let mut trees: Vec<(usize, String, FiniteGraph)> = enumerate_trees(cap)
        .into_iter()
        .filter(|t| in_class(t, ClassIndex::Finite(n)))
        .map(|t| {
            let code = canonical_code(&t, &[]).expect("trees are forests");
            (t.vertex_count(), code, t)
        })
        .collect();
    trees.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    // First realization of every value, scanning trees in (size, code)
    // order and vertices in id order: the representative is minimal.
    let mut reps: BTreeMap<crate::game::RSValue, usize> = BTreeMap::new();
    let mut chosen: Vec<Representative> = Vec::new();
    let mut used_trees: BTreeSet<usize> = BTreeSet::new();
    for (idx, (size, code, tree)) in trees.iter().enumerate() {
        for v in tree.vertices() {
            let value = vertex_value(tree, v, r as u32, value_cap)?;
            if reps.contains_key(&value) {
                continue;
            }
            reps.insert(value.clone(), idx);
            used_trees.insert(idx);
            chosen.push(Representative {
                value: value.to_string(),
                tree_code: code.clone(),
                root: v.clone(),
                size: *size,
            });
        }
    }

    let mut graph = FiniteGraph::empty();
    for (pos, idx) in used_trees.iter().enumerate() {
        let tree = &trees[*idx].2;
        for c in 0..copies {
            let copy = tree.relabel(|v| VertexId::new(format!("t{pos}c{c}_{}", v.as_str())))?;
            graph = free_join(&graph, &VertexSet::new(), &copy)?;
        }
    }
    if !in_class(&graph, ClassIndex::Finite(n)) {
        return Err(BuilderError::Internal(
            "approximant left its class".to_string(),
        ));
    }
    Ok(Approximant {
        graph,
        n,
        k,
        provenance: Provenance {
            radius: r,
            size_cap: cap,
            copies,
            value_cap,
            representatives: chosen,
        },
    })
}

/// The outcome of the decision procedure, with enough context to audit it.
#[derive(Clone, Debug, Serialize)]
pub struct Decision {
    pub in_theory: bool,
    pub rank: usize,
    /// The size caps of the two independently built approximants that were
    /// required to agree.
    pub caps: (usize, usize),
    pub provenance: Provenance,
}

/// Decides membership of a sentence in the generic theory of index `n` at
/// the default rank ceiling.
pub fn decide(formula: &Formula, n: u32) -> Result<Decision, BuilderError> {
    decide_with_ceiling(formula, n, DEFAULT_DECIDE_RANK)
}

/// Decides membership by evaluating the sentence on a rank-matched
/// approximant, cross-validating against a second approximant built with a
/// perturbed size cap. Disagreement indicates a construction bug and is
/// reported as an error, never resolved silently.
pub fn decide_with_ceiling(
    formula: &Formula,
    n: u32,
    ceiling: usize,
) -> Result<Decision, BuilderError> {
    if let Some(variable) = free_variables(formula).into_iter().next() {
        return Err(BuilderError::NotASentence { variable });
    }
    let rank = quantifier_rank(formula) as usize;
    if rank > ceiling {
        return Err(BuilderError::RankTooHigh { rank, ceiling });
    }
    let cap = size_cap(rank);
    CapacityError::check("decide size cap", cap + 1, 13)?;
    let first = build_approximant_with_cap(n, rank, cap)?;
    let second = build_approximant_with_cap(n, rank, cap + 1)?;
    let empty = BTreeMap::new();
    let v1 = eval_formula(&first.graph, formula, &empty)?;
    let v2 = eval_formula(&second.graph, formula, &empty)?;
    if v1 != v2 {
        return Err(BuilderError::CrossValidation {
            caps: (cap, cap + 1),
            verdicts: (v1, v2),
        });
    }
    Ok(Decision {
        in_theory: v1,
        rank,
        caps: (cap, cap + 1),
        provenance: first.provenance,
    })
}
