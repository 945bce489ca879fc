//! Builders for the standard formulas used throughout the crate: the
//! closedness test γ*, diagrams of finite graphs, class and acyclicity
//! axioms, universality sentences, and rank-k characteristic formulas.
//!
//! All builders name variables with [`canonical_var`] so that the emitted
//! formulas are already in (or trivially close to) normal form, and every
//! sentence-producing builder runs [`normalize`] before returning.

use std::collections::BTreeSet;

use crate::capacity::CapacityError;
use crate::graph::{enumerate_class, ClassIndex, FiniteGraph, VertexId};

use super::{canonical_var, normalize, smart_and, smart_or, Formula, FormulaError};

/// The formula γ*_m over the free variables `x1, ..., xm`: no vertex
/// outside the designated tuple is adjacent to a member of the tuple. On a
/// forest this holds of a tuple exactly when its range is closed.
///
/// `m` must be positive; closedness of the empty set is trivial and has no
/// finite-arity formula in this family.
pub fn build_gamma_star(m: usize) -> Result<Formula, FormulaError> {
    if m == 0 {
        return Err(FormulaError::EmptyGammaStar);
    }
    let outer = canonical_var(m + 1);
    let mut distinct = Vec::with_capacity(m);
    let mut unlinked = Vec::with_capacity(m);
    for i in 1..=m {
        let member = canonical_var(i);
        distinct.push(Formula::Not(Box::new(Formula::Equals(
            outer.clone(),
            member.clone(),
        ))));
        unlinked.push(Formula::Not(Box::new(Formula::Edge(
            member,
            outer.clone(),
        ))));
    }
    let body = Formula::Implies(
        Box::new(smart_and(distinct)),
        Box::new(smart_and(unlinked)),
    );
    Ok(Formula::Forall(outer, Box::new(body)))
}

/// The diagram of `graph` over the free variables `x1, ..., xn`, where
/// `order` fixes which vertex each variable denotes. The conjunction lists
/// all pairwise inequalities first, then an edge or non-edge literal for
/// every vertex pair, so a tuple satisfies it exactly when it is an induced
/// copy of `graph` in the evaluating structure.
pub fn build_diagram(graph: &FiniteGraph, order: &[VertexId]) -> Result<Formula, FormulaError> {
    check_order(graph, &[order])?;
    Ok(smart_and(diagram_conjuncts(graph, order, 0)))
}

/// The relative diagram of `graph` over a base: only the conjuncts that
/// mention at least one of the `new_order` variables are emitted, with the
/// base occupying `x1, ..., xb` and the new vertices the following
/// positions. Conjoining it with the diagram of the base over
/// `x1, ..., xb` yields the full diagram.
pub fn build_diagram_over(
    graph: &FiniteGraph,
    base_order: &[VertexId],
    new_order: &[VertexId],
) -> Result<Formula, FormulaError> {
    check_order(graph, &[base_order, new_order])?;
    let mut order = base_order.to_vec();
    order.extend_from_slice(new_order);
    Ok(smart_and(diagram_conjuncts(
        graph,
        &order,
        base_order.len(),
    )))
}

/// Inequalities, then edge literals, over all index pairs `i < j` with
/// `j >= skip_below` (so `skip_below = 0` emits the full diagram and
/// `skip_below = b` emits only the conjuncts touching a variable past the
/// first `b`).
fn diagram_conjuncts(graph: &FiniteGraph, order: &[VertexId], skip_below: usize) -> Vec<Formula> {
    let n = order.len();
    let mut items = Vec::new();
    for j in skip_below.max(1)..n {
        for i in 0..j {
            items.push(Formula::Not(Box::new(Formula::Equals(
                canonical_var(i + 1),
                canonical_var(j + 1),
            ))));
        }
    }
    for j in skip_below.max(1)..n {
        for i in 0..j {
            let atom = Formula::Edge(canonical_var(i + 1), canonical_var(j + 1));
            items.push(if graph.has_edge(&order[i], &order[j]) {
                atom
            } else {
                Formula::Not(Box::new(atom))
            });
        }
    }
    items
}

/// Validates that the concatenation of the given orders lists each vertex
/// of `graph` exactly once.
pub(super) fn check_order(graph: &FiniteGraph, orders: &[&[VertexId]]) -> Result<(), FormulaError> {
    let mut seen = BTreeSet::new();
    for order in orders {
        for v in *order {
            if !graph.contains(v) || !seen.insert(v.clone()) {
                return Err(FormulaError::BadOrder(v.clone()));
            }
        }
    }
    if seen.len() != graph.vertex_count() {
        let missing = graph
            .vertices()
            .iter()
            .find(|v| !seen.contains(*v))
            .expect("a vertex is missing from the order");
        return Err(FormulaError::BadOrder(missing.clone()));
    }
    Ok(())
}

/// The sentence excluding cycles of length exactly `len` (`len >= 3`): no
/// sequence of `len` pairwise distinct vertices is cyclically linked by
/// edges. Guards are interleaved with the existential prefix so that the
/// evaluator can prune early on sparse graphs.
pub fn acyclicity_axiom(len: usize) -> Result<Formula, FormulaError> {
    if len < 3 {
        return Err(FormulaError::BadCycleLength(len));
    }
    let var = |i: usize| format!("v{i}");
    let mut blocks = Vec::with_capacity(len);
    for i in 1..=len {
        let mut guards = Vec::new();
        for j in 1..i {
            guards.push(Formula::Not(Box::new(Formula::Equals(var(i), var(j)))));
        }
        if i > 1 {
            guards.push(Formula::Edge(var(i - 1), var(i)));
        }
        if i == len {
            guards.push(Formula::Edge(var(len), var(1)));
        }
        blocks.push((var(i), guards));
    }
    Ok(normalize(&Formula::Not(Box::new(exists_chain(
        blocks,
        Formula::True,
    )))))
}

/// The degree/path axiom of the class with finite index `n` as a sentence.
/// For `n >= 1`: no vertex has `n + 2` distinct neighbours and
/// simultaneously starts a simple path of `2n` edges avoiding it. For
/// `n = 0` the axiom bounds every degree by 3 instead.
pub fn class_axiom(n: u32) -> Formula {
    let n = n as usize;
    let degree_bound = if n == 0 { 4 } else { n + 2 };
    let x = || "x".to_string();
    let z = |i: usize| format!("z{i}");
    let y = |i: usize| format!("y{i}");
    let mut blocks = vec![(x(), Vec::new())];
    for i in 1..=degree_bound {
        let mut guards = vec![Formula::Not(Box::new(Formula::Equals(z(i), x())))];
        for j in 1..i {
            guards.push(Formula::Not(Box::new(Formula::Equals(z(i), z(j)))));
        }
        guards.push(Formula::Edge(x(), z(i)));
        blocks.push((z(i), guards));
    }
    for i in 1..=2 * n {
        let mut guards = vec![Formula::Not(Box::new(Formula::Equals(y(i), x())))];
        for j in 1..i {
            guards.push(Formula::Not(Box::new(Formula::Equals(y(i), y(j)))));
        }
        let prev = if i == 1 { x() } else { y(i - 1) };
        guards.push(Formula::Edge(prev, y(i)));
        blocks.push((y(i), guards));
    }
    normalize(&Formula::Not(Box::new(exists_chain(blocks, Formula::True))))
}

/// Wraps `innermost` in an existential prefix, conjoining each variable's
/// guards immediately under its own binder.
fn exists_chain(blocks: Vec<(String, Vec<Formula>)>, innermost: Formula) -> Formula {
    let mut f = innermost;
    for (name, mut guards) in blocks.into_iter().rev() {
        guards.push(f);
        f = Formula::Exists(name, Box::new(smart_and(guards)));
    }
    f
}

/// A finite fragment of the axioms of the generic theory of index `alpha`:
/// cycle exclusions for lengths `3..=path_bound`, the class axiom when
/// `alpha` is finite, and one universality sentence per nonempty class
/// member with at most `size_bound` vertices, asserting a closed induced
/// copy of the member. Sentences are normalized and deterministically
/// ordered.
pub fn univ_axioms(
    alpha: ClassIndex,
    size_bound: usize,
    path_bound: usize,
) -> Result<Vec<Formula>, FormulaError> {
    CapacityError::check("univ_axioms cycle bound", path_bound, 12)?;
    let members = enumerate_class(alpha, size_bound)?;
    let mut out = Vec::new();
    for len in 3..=path_bound {
        out.push(acyclicity_axiom(len)?);
    }
    if let ClassIndex::Finite(n) = alpha {
        out.push(class_axiom(n));
    }
    for member in members {
        let m = member.vertex_count();
        if m == 0 {
            continue;
        }
        let order: Vec<VertexId> = member.vertices().iter().cloned().collect();
        let mut f = smart_and(vec![build_diagram(&member, &order)?, build_gamma_star(m)?]);
        for i in (1..=m).rev() {
            f = Formula::Exists(canonical_var(i), Box::new(f));
        }
        out.push(normalize(&f));
    }
    Ok(out)
}

/// The rank-`k` characteristic formula of `tuple` in `graph`, over the
/// free variables `x1, ..., xm`: a structure satisfies it at a tuple
/// exactly when that tuple agrees with `tuple` on all formulas of
/// quantifier rank at most `k`, equivalently when the second player wins
/// the `k`-round back-and-forth game started from the matched tuples. With
/// an empty tuple this is a sentence axiomatizing rank-`k` equivalence
/// with `graph`.
pub fn characteristic_formula(
    graph: &FiniteGraph,
    tuple: &[VertexId],
    k: usize,
) -> Result<Formula, FormulaError> {
    for v in tuple {
        if !graph.contains(v) {
            return Err(FormulaError::Graph(
                crate::graph::GraphError::UnknownVertex { vertex: v.clone() },
            ));
        }
    }
    let cost = (graph.vertex_count().max(1) as u64).pow(k.min(8) as u32);
    CapacityError::check(
        "characteristic_formula branches",
        cost as usize,
        100_000_000,
    )?;
    Ok(chi(graph, &mut tuple.to_vec(), k))
}

fn chi(graph: &FiniteGraph, tuple: &mut Vec<VertexId>, k: usize) -> Formula {
    if k == 0 {
        let m = tuple.len();
        let mut items = Vec::new();
        for j in 1..m {
            for i in 0..j {
                let eq = Formula::Equals(canonical_var(i + 1), canonical_var(j + 1));
                items.push(if tuple[i] == tuple[j] {
                    eq
                } else {
                    Formula::Not(Box::new(eq))
                });
                let edge = Formula::Edge(canonical_var(i + 1), canonical_var(j + 1));
                items.push(if graph.has_edge(&tuple[i], &tuple[j]) {
                    edge
                } else {
                    Formula::Not(Box::new(edge))
                });
            }
        }
        return smart_and(items);
    }
    let next = canonical_var(tuple.len() + 1);
    // Distinct branches only: extensions with the same lower-rank
    // description contribute one conjunct and one disjunct.
    let mut branches: BTreeSet<Formula> = BTreeSet::new();
    for b in graph.vertices().iter().cloned().collect::<Vec<_>>() {
        tuple.push(b);
        branches.insert(chi(graph, tuple, k - 1));
        tuple.pop();
    }
    let mut parts: Vec<Formula> = branches
        .iter()
        .map(|f| Formula::Exists(next.clone(), Box::new(f.clone())))
        .collect();
    parts.push(Formula::Forall(
        next,
        Box::new(smart_or(branches.into_iter().collect())),
    ));
    smart_and(parts)
}
