//! Components over a base, d-independence, free joins as a predicate, and
//! forking against a caller-supplied algebraic-closure oracle.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{FiniteGraph, GraphError, VertexId, VertexSet};
use crate::strong::{
    closure_star, dimension, is_weakly_closed, unique_path_to, weak_closure, StructureError,
};

/// Errors from the independence calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndependenceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("vertex {0} belongs to the base set")]
    VertexInBase(VertexId),
    #[error("the two sides must intersect exactly in the shared part, {0} is misplaced")]
    BadOverlap(VertexId),
    #[error("base set must contain {0} (subset precondition violated)")]
    BaseNotContained(VertexId),
    #[error("base set is not algebraically closed under the supplied oracle")]
    BaseNotAclClosed,
    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),
    #[error("oracle rejected at registration: {0}")]
    OracleViolation(String),
}

/// The component of `a` over `A`: all vertices reachable from `a` by paths
/// avoiding `A`, including `a` itself. Requires `a` outside `A`.
pub fn component_over(
    g: &FiniteGraph,
    a: &VertexId,
    base: &VertexSet,
) -> Result<VertexSet, IndependenceError> {
    if !g.contains(a) {
        return Err(GraphError::UnknownVertex { vertex: a.clone() }.into());
    }
    g.check_subset(base)?;
    if base.contains(a) {
        return Err(IndependenceError::VertexInBase(a.clone()));
    }
    let mut comp = VertexSet::new();
    comp.insert(a.clone());
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(&u).unwrap() {
            if base.contains(w) || comp.contains(w) {
                continue;
            }
            comp.insert(w.clone());
            queue.push_back(w.clone());
        }
    }
    Ok(comp)
}

/// Outcome of a d-independence test, naming any violated clause.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DIndependenceReport {
    pub independent: bool,
    /// Clause (a): dimension of the left side must not drop when the base
    /// grows from `C` to `A u C`.
    pub dimension_clause: DimensionClause,
    /// Clause (b): the weak closures of the two sides must intersect in the
    /// weak closure of `C`.
    pub closure_clause: ClosureClause,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionClause {
    pub holds: bool,
    pub dim_over_c: i64,
    pub dim_over_ac: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureClause {
    pub holds: bool,
    /// Vertices in the overlap of the two closures that escape the closure
    /// of `C`.
    pub overlap_excess: VertexSet,
}

/// Is `b_side` d-independent from `a_side` over `c_base`?
///
/// Clause (a): `d(b / C) = d(b / A u C)`; clause (b):
/// `cl(b C) n cl(A C) = cl(C)`. Both clauses are reported.
pub fn d_independent(
    g: &FiniteGraph,
    b_side: &VertexSet,
    c_base: &VertexSet,
    a_side: &VertexSet,
) -> Result<DIndependenceReport, IndependenceError> {
    for s in [b_side, c_base, a_side] {
        g.check_subset(s)?;
    }
    let bc: VertexSet = b_side.union(c_base).cloned().collect();
    let ac: VertexSet = a_side.union(c_base).cloned().collect();

    let dim_over_c =
        dimension(g, &bc)? as i64 - dimension(g, c_base)? as i64;
    let abc: VertexSet = bc.union(a_side).cloned().collect();
    let dim_over_ac = dimension(g, &abc)? as i64 - dimension(g, &ac)? as i64;
    let dim_holds = dim_over_c == dim_over_ac;

    let cl_bc = weak_closure(g, &bc)?;
    let cl_ac = weak_closure(g, &ac)?;
    let cl_c = weak_closure(g, c_base)?;
    let overlap: VertexSet = cl_bc.intersection(&cl_ac).cloned().collect();
    let overlap_excess: VertexSet = overlap.difference(&cl_c).cloned().collect();
    // cl(C) always sits inside both closures, so equality is exactly
    // emptiness of the excess.
    let cl_holds = overlap_excess.is_empty();

    Ok(DIndependenceReport {
        independent: dim_holds && cl_holds,
        dimension_clause: DimensionClause {
            holds: dim_holds,
            dim_over_c,
            dim_over_ac,
        },
        closure_clause: ClosureClause {
            holds: cl_holds,
            overlap_excess,
        },
    })
}

/// Is the union of `b1` and `b2` a free join over `c` inside `g`?
///
/// Requires the two sides to intersect exactly in `c`. True when no edge
/// joins `b1 \ c` to `b2 \ c` and the union is weakly closed in `g`.
pub fn is_free_join(
    g: &FiniteGraph,
    b1: &VertexSet,
    c: &VertexSet,
    b2: &VertexSet,
) -> Result<bool, IndependenceError> {
    for s in [b1, c, b2] {
        g.check_subset(s)?;
    }
    let overlap: VertexSet = b1.intersection(b2).cloned().collect();
    if overlap != *c {
        let witness = overlap
            .symmetric_difference(c)
            .next()
            .cloned()
            .unwrap_or_else(|| VertexId::from("?"));
        return Err(IndependenceError::BadOverlap(witness));
    }
    let left: VertexSet = b1.difference(c).cloned().collect();
    let right: VertexSet = b2.difference(c).cloned().collect();
    if g.edge_count_between(&left, &right)? > 0 {
        return Ok(false);
    }
    let union: VertexSet = b1.union(b2).cloned().collect();
    Ok(is_weakly_closed(g, &union, None)?)
}

/// A total algebraic-closure function over a fixed ambient graph, validated
/// at registration by sampled idempotence, extensivity, and monotonicity
/// checks.
pub struct AclOracle {
    f: Box<dyn Fn(&VertexSet) -> VertexSet>,
}

impl fmt::Debug for AclOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("AclOracle")
    }
}

impl AclOracle {
    /// Registers an oracle for `ambient`, running sampled invariant checks:
    /// extensivity and idempotence on the empty set, every singleton, and
    /// every adjacent pair; monotonicity on sampled singleton-pair chains.
    pub fn register(
        ambient: &FiniteGraph,
        f: impl Fn(&VertexSet) -> VertexSet + 'static,
    ) -> Result<Self, IndependenceError> {
        let mut samples: Vec<VertexSet> = vec![VertexSet::new()];
        for v in ambient.vertices() {
            samples.push([v.clone()].into_iter().collect());
        }
        for e in ambient.edges() {
            let (a, b) = e.endpoints();
            samples.push([a.clone(), b.clone()].into_iter().collect());
        }
        for s in &samples {
            let image = f(s);
            if !s.is_subset(&image) {
                return Err(IndependenceError::OracleViolation(format!(
                    "not extensive on {s:?}"
                )));
            }
            if f(&image) != image {
                return Err(IndependenceError::OracleViolation(format!(
                    "not idempotent on {s:?}"
                )));
            }
        }
        for small in &samples {
            for big in &samples {
                if small.is_subset(big) && !f(small).is_subset(&f(big)) {
                    return Err(IndependenceError::OracleViolation(format!(
                        "not monotone between {small:?} and {big:?}"
                    )));
                }
            }
        }
        Ok(AclOracle { f: Box::new(f) })
    }

    /// The identity oracle: every set is its own algebraic closure.
    pub fn identity(ambient: &FiniteGraph) -> Self {
        AclOracle::register(ambient, |s| s.clone()).unwrap()
    }

    /// A table-backed oracle: listed sets map to their closures, everything
    /// else falls back to the union of the closures of its listed subsets
    /// (at least the set itself).
    pub fn from_table(
        ambient: &FiniteGraph,
        table: Vec<(VertexSet, VertexSet)>,
    ) -> Result<Self, IndependenceError> {
        AclOracle::register(ambient, move |s| {
            let mut out = s.clone();
            for (key, value) in &table {
                if key.is_subset(s) {
                    out.extend(value.iter().cloned());
                }
            }
            out
        })
    }

    pub fn closure(&self, s: &VertexSet) -> VertexSet {
        (self.f)(s)
    }
}

/// Does the type of `tuple` over `b_superset` not fork over `base`?
///
/// Requires `base` to be its own algebraic closure and `base` a subset of
/// `b_superset`. True when, for every tuple element outside `base`, its
/// component over `base` avoids `b_superset` entirely.
pub fn nonforking_over(
    g: &FiniteGraph,
    tuple: &[VertexId],
    base: &VertexSet,
    b_superset: &VertexSet,
    acl: &AclOracle,
) -> Result<bool, IndependenceError> {
    g.check_subset(base)?;
    g.check_subset(b_superset)?;
    for v in tuple {
        if !g.contains(v) {
            return Err(GraphError::UnknownVertex { vertex: v.clone() }.into());
        }
    }
    if let Some(v) = base.difference(b_superset).next() {
        return Err(IndependenceError::BaseNotContained(v.clone()));
    }
    if acl.closure(base) != *base {
        return Err(IndependenceError::BaseNotAclClosed);
    }
    for a in tuple {
        if base.contains(a) {
            continue;
        }
        let comp = component_over(g, a, base)?;
        let outside_base: VertexSet = b_superset.difference(base).cloned().collect();
        if comp.intersection(&outside_base).next().is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which of the three forking cases applies to `a` over `base` inside
/// `b_superset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ForkingCase {
    /// `a` lies in the closure of `B` but not of `A`.
    NewClosure,
    /// `a` lies in the closure of `A`, is not algebraic over `A`, and
    /// belongs to `B`.
    InsideB,
    /// `a` lies in the closure of `A` outside `B` and its unique path to
    /// `A` crosses `B \ A` at a non-algebraic vertex.
    PathThroughB,
    /// None of the cases: the type does not fork.
    None,
}

/// Case analysis for forking of `tp(a / B)` over `A`. Requires `A` weakly
/// closed in `B` and `B` weakly closed in the ambient graph.
pub fn forking_case(
    g: &FiniteGraph,
    a: &VertexId,
    base: &VertexSet,
    b_superset: &VertexSet,
    acl: &AclOracle,
) -> Result<ForkingCase, IndependenceError> {
    if !g.contains(a) {
        return Err(GraphError::UnknownVertex { vertex: a.clone() }.into());
    }
    g.check_subset(base)?;
    g.check_subset(b_superset)?;
    if let Some(v) = base.difference(b_superset).next() {
        return Err(IndependenceError::BaseNotContained(v.clone()));
    }
    if !is_weakly_closed(g, b_superset, None)? {
        return Err(IndependenceError::HypothesesViolated(
            "B is not weakly closed in the ambient graph".to_string(),
        ));
    }
    if !is_weakly_closed(g, base, Some(b_superset))? {
        return Err(IndependenceError::HypothesesViolated(
            "A is not weakly closed in B".to_string(),
        ));
    }

    let cl_a = closure_star(g, base)?.closure;
    let cl_b = closure_star(g, b_superset)?.closure;
    let acl_a = acl.closure(base);

    if cl_b.contains(a) && !cl_a.contains(a) {
        return Ok(ForkingCase::NewClosure);
    }
    if cl_a.contains(a) && !acl_a.contains(a) && b_superset.contains(a) {
        return Ok(ForkingCase::InsideB);
    }
    if cl_a.contains(a) && !b_superset.contains(a) && !acl_a.contains(a) {
        // Unique path from a into the base; existence is guaranteed because
        // a lies in the closure of the weakly closed base.
        let path = unique_path_to(g, base, a, false)?;
        let crossing: Vec<&VertexId> = path
            .iter()
            .filter(|v| b_superset.contains(*v) && !base.contains(*v))
            .collect();
        if crossing.iter().any(|v| !acl_a.contains(*v)) {
            return Ok(ForkingCase::PathThroughB);
        }
    }
    Ok(ForkingCase::None)
}
