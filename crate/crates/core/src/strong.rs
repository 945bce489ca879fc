//! Closed and weakly closed subsets, closures, dimension, and the
//! classification of extensions.
//!
//! Throughout, the ambient graph must be a forest; the fast characterizations
//! used here are valid exactly there. A subset `A` is closed in `B` when
//! every strictly larger subset of `B` has strictly larger predimension,
//! which for forests happens iff no edge joins `A` to `B \ A`. It is weakly
//! closed when predimension never drops below `delta(A)`, iff every path of
//! `B` between `A`-vertices stays inside `A`, iff no component of `B \ A`
//! sends two or more edges into `A`.

use serde::Serialize;
use thiserror::Error;

use crate::capacity::CapacityError;
use crate::graph::{predimension, FiniteGraph, GraphError, VertexId, VertexSet};

/// Errors from the closure calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Capacity(#[from] CapacityError),
    #[error("ambient graph must be a forest")]
    NotAForest,
    #[error("{0:?} is not a subset of the reference set")]
    NotASubset(VertexId),
    #[error("base set is not weakly closed, the unique-path guarantee does not apply")]
    BaseNotWeaklyClosed,
    #[error("vertex {0} lies outside the closure of the base set, no path exists")]
    NoPathToBase(VertexId),
    #[error("vertex {0} must not belong to the base set")]
    VertexInBase(VertexId),
}

fn require_forest(g: &FiniteGraph) -> Result<(), StructureError> {
    if g.is_forest() {
        Ok(())
    } else {
        Err(StructureError::NotAForest)
    }
}

fn require_subset(a: &VertexSet, b: &VertexSet) -> Result<(), StructureError> {
    match a.difference(b).next() {
        None => Ok(()),
        Some(v) => Err(StructureError::NotASubset(v.clone())),
    }
}

/// Is `a` closed in `b` (in the whole graph when `b` is `None`)?
///
/// Uses the edge characterization: no edge between `b \ a` and `a`.
pub fn is_closed(
    g: &FiniteGraph,
    a: &VertexSet,
    b: Option<&VertexSet>,
) -> Result<bool, StructureError> {
    require_forest(g)?;
    g.check_subset(a)?;
    let whole;
    let b = match b {
        Some(b) => {
            g.check_subset(b)?;
            b
        }
        None => {
            whole = g.vertices().clone();
            &whole
        }
    };
    require_subset(a, b)?;
    let rest: VertexSet = b.difference(a).cloned().collect();
    Ok(g.edge_count_between(a, &rest)? == 0)
}

/// Is `a` weakly closed in `b` (in the whole graph when `b` is `None`)?
///
/// Uses the path characterization: no component of `b \ a` sends two or more
/// edges into `a`.
pub fn is_weakly_closed(
    g: &FiniteGraph,
    a: &VertexSet,
    b: Option<&VertexSet>,
) -> Result<bool, StructureError> {
    require_forest(g)?;
    g.check_subset(a)?;
    let whole;
    let b = match b {
        Some(b) => {
            g.check_subset(b)?;
            b
        }
        None => {
            whole = g.vertices().clone();
            &whole
        }
    };
    require_subset(a, b)?;
    let rest: VertexSet = b.difference(a).cloned().collect();
    let outside = g.induced(&rest)?;
    for comp in outside.components() {
        if g.edge_count_between(&comp, a)? >= 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One step of a minimal-pair tower: `added` is a single vertex attached to
/// the set built so far.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    /// The set before this step.
    pub base: VertexSet,
    /// The vertex added by this step.
    pub added: VertexId,
}

/// The self-sufficient closure together with a minimal-pair tower witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureResult {
    pub closure: VertexSet,
    /// Tower steps from the base set to the closure; each step adds one
    /// vertex adjacent to the set built so far (smallest id first).
    pub chain: Vec<ChainStep>,
}

/// The least closed superset of `s`: the union of the connected components
/// meeting `s`. The returned chain witnesses that the closure is reached by
/// a tower of minimal pairs.
pub fn closure_star(g: &FiniteGraph, s: &VertexSet) -> Result<ClosureResult, StructureError> {
    require_forest(g)?;
    g.check_subset(s)?;
    let mut closure = s.clone();
    let mut chain = Vec::new();
    loop {
        // Smallest vertex outside the set with a neighbor inside it.
        let next = g
            .vertices()
            .iter()
            .find(|v| {
                !closure.contains(*v)
                    && g.neighbors(v).unwrap().iter().any(|w| closure.contains(w))
            })
            .cloned();
        match next {
            Some(v) => {
                chain.push(ChainStep {
                    base: closure.clone(),
                    added: v.clone(),
                });
                closure.insert(v);
            }
            None => break,
        }
    }
    Ok(ClosureResult { closure, chain })
}

/// The least weakly closed superset of `s`: inside each tree, every vertex on
/// a path between two vertices of `s` joins the closure.
pub fn weak_closure(g: &FiniteGraph, s: &VertexSet) -> Result<VertexSet, StructureError> {
    require_forest(g)?;
    g.check_subset(s)?;
    let mut closure = s.clone();
    loop {
        let mut grew = false;
        // Connect components of the current set pairwise; in a forest the
        // connecting path is unique, all its vertices are forced in.
        let current = g.induced(&closure)?;
        let comps = current.components();
        'pairs: for i in 0..comps.len() {
            for j in (i + 1)..comps.len() {
                let u = comps[i].iter().next().unwrap();
                let v = comps[j].iter().next().unwrap();
                if let Some(path) = unique_forest_path(g, u, v) {
                    let fresh: Vec<VertexId> = path
                        .into_iter()
                        .filter(|p| !closure.contains(p))
                        .collect();
                    if !fresh.is_empty() {
                        closure.extend(fresh);
                        grew = true;
                        break 'pairs;
                    }
                }
            }
        }
        if !grew {
            return Ok(closure);
        }
    }
}

/// The unique simple path between two vertices of a forest, if connected.
pub(crate) fn unique_forest_path(
    g: &FiniteGraph,
    from: &VertexId,
    to: &VertexId,
) -> Option<Vec<VertexId>> {
    let mut parent = std::collections::BTreeMap::new();
    parent.insert(from.clone(), None::<VertexId>);
    let mut queue = std::collections::VecDeque::from([from.clone()]);
    while let Some(u) = queue.pop_front() {
        if &u == to {
            let mut path = vec![u.clone()];
            let mut cur = u;
            while let Some(Some(p)) = parent.get(&cur) {
                path.push(p.clone());
                cur = p.clone();
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbors(&u).unwrap() {
            if !parent.contains_key(w) {
                parent.insert(w.clone(), Some(u.clone()));
                queue.push_back(w.clone());
            }
        }
    }
    None
}

/// Dimension of `s`: the minimum predimension over supersets, which in a
/// forest is the number of connected components meeting `s`.
pub fn dimension(g: &FiniteGraph, s: &VertexSet) -> Result<usize, StructureError> {
    require_forest(g)?;
    g.check_subset(s)?;
    let mut covered = VertexSet::new();
    let mut count = 0;
    for v in s {
        if covered.contains(v) {
            continue;
        }
        covered.extend(g.component_of(v)?);
        count += 1;
    }
    Ok(count)
}

/// Relative dimension `d(s / t) = d(s u t) - d(t)`.
pub fn relative_dimension(
    g: &FiniteGraph,
    s: &VertexSet,
    t: &VertexSet,
) -> Result<i64, StructureError> {
    let union: VertexSet = s.union(t).cloned().collect();
    Ok(dimension(g, &union)? as i64 - dimension(g, t)? as i64)
}

/// How a subset sits inside the ambient graph, strongest tag first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ExtensionKind {
    /// A minimal pair whose relative predimension is zero.
    ZeroMinimalPair,
    /// A minimal pair with negative relative predimension.
    MinimalPair,
    /// A weak minimal pair: the difference is a single path joining two
    /// components of the base.
    WeakMinimalPair,
    /// No proper intermediate set is weakly closed in the ambient graph.
    WeakIntrinsic,
    /// An intrinsic extension of relative predimension zero.
    ZeroIntrinsic,
    /// No proper intermediate set is closed in the ambient graph.
    Intrinsic,
    /// The base is closed in the ambient graph.
    Closed,
    /// The base is weakly closed but not closed.
    WeaklyClosed,
    /// None of the above.
    None,
}

/// Classification of `a` inside the whole of `b`, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub kind: ExtensionKind,
    /// `delta(B) - delta(A)`.
    pub relative_predimension: i64,
    /// For minimal pairs: the single vertex of `B \ A`.
    pub minimal_vertex: Option<VertexId>,
    /// For intrinsic extensions: a minimal-pair tower from `A` to `B`.
    pub chain: Option<Vec<ChainStep>>,
}

/// Classifies the extension `a <= b` where `b` is the full vertex set of
/// `g`. All predicates are checked from their definitions by enumerating
/// intermediate subsets, so the input must stay small.
pub fn classify_extension(g: &FiniteGraph, a: &VertexSet) -> Result<ExtensionReport, StructureError> {
    require_forest(g)?;
    g.check_subset(a)?;
    let b = g.vertices().clone();
    let diff: Vec<VertexId> = b.difference(a).cloned().collect();
    CapacityError::check("classify_extension", diff.len(), 16)?;
    let delta_a = predimension(g, a).unwrap();
    let delta_b = predimension(g, &b).unwrap();
    let relative = delta_b - delta_a;

    // delta over every intermediate set a <= c <= b, keyed by the subset of
    // the difference; the difference is small in intended use.
    let m = diff.len();
    let subset = |mask: usize| -> VertexSet {
        let mut c = a.clone();
        for (i, v) in diff.iter().enumerate() {
            if mask & (1 << i) != 0 {
                c.insert(v.clone());
            }
        }
        c
    };
    let full = (1usize << m) - 1;

    let closed_in = |inner_mask: usize, outer_mask: usize| -> bool {
        // a + inner closed in a + outer, by the edge characterization.
        let inner = subset(inner_mask);
        let outer = subset(outer_mask);
        let rest: VertexSet = outer.difference(&inner).cloned().collect();
        g.edge_count_between(&inner, &rest).unwrap() == 0
    };
    let weakly_closed_in = |inner_mask: usize, outer_mask: usize| -> bool {
        let inner = subset(inner_mask);
        let outer = subset(outer_mask);
        is_weakly_closed(g, &inner, Some(&outer)).unwrap()
    };

    let a_closed = closed_in(0, full);
    let a_weakly_closed = weakly_closed_in(0, full);

    if m == 0 || a_closed {
        let kind = ExtensionKind::Closed;
        return Ok(ExtensionReport {
            kind,
            relative_predimension: relative,
            minimal_vertex: None,
            chain: None,
        });
    }

    // Minimal pair: a closed in every proper intermediate, not closed in b.
    let minimal_pair = !a_closed && (0..full).all(|c| closed_in(0, c));
    if minimal_pair {
        let kind = if relative == 0 {
            ExtensionKind::ZeroMinimalPair
        } else {
            ExtensionKind::MinimalPair
        };
        return Ok(ExtensionReport {
            kind,
            relative_predimension: relative,
            minimal_vertex: diff.first().cloned(),
            chain: Some(tower_chain(g, a)),
        });
    }

    let weak_minimal_pair = !a_weakly_closed && (0..full).all(|c| weakly_closed_in(0, c));
    if weak_minimal_pair {
        return Ok(ExtensionReport {
            kind: ExtensionKind::WeakMinimalPair,
            relative_predimension: relative,
            minimal_vertex: None,
            chain: Some(tower_chain(g, a)),
        });
    }

    // Weak intrinsic: no proper intermediate is weakly closed in b.
    let weak_intrinsic = (0..full).all(|c| !weakly_closed_in(c, full));
    if weak_intrinsic {
        return Ok(ExtensionReport {
            kind: ExtensionKind::WeakIntrinsic,
            relative_predimension: relative,
            minimal_vertex: None,
            chain: Some(tower_chain(g, a)),
        });
    }

    // Intrinsic: no proper intermediate is closed in b.
    let intrinsic = (0..full).all(|c| !closed_in(c, full));
    if intrinsic {
        let kind = if relative == 0 {
            ExtensionKind::ZeroIntrinsic
        } else {
            ExtensionKind::Intrinsic
        };
        return Ok(ExtensionReport {
            kind,
            relative_predimension: relative,
            minimal_vertex: None,
            chain: Some(tower_chain(g, a)),
        });
    }

    if a_weakly_closed {
        return Ok(ExtensionReport {
            kind: ExtensionKind::WeaklyClosed,
            relative_predimension: relative,
            minimal_vertex: None,
            chain: None,
        });
    }

    Ok(ExtensionReport {
        kind: ExtensionKind::None,
        relative_predimension: relative,
        minimal_vertex: None,
        chain: None,
    })
}

/// Greedy minimal-pair tower from `a` to the whole graph: repeatedly add the
/// smallest outside vertex adjacent to the current set, then any remaining
/// isolated-from-the-set vertices are unreachable and the tower stops.
fn tower_chain(g: &FiniteGraph, a: &VertexSet) -> Vec<ChainStep> {
    closure_star(g, a).unwrap().chain
}

/// The unique path from `b` to the base set `a`, touching `a` exactly once.
///
/// Requires `b` outside `a` but inside its closure. When
/// `verify_weakly_closed` is set, the precondition that `a` is weakly closed
/// is checked and a violation reported.
pub fn unique_path_to(
    g: &FiniteGraph,
    a: &VertexSet,
    b: &VertexId,
    verify_weakly_closed: bool,
) -> Result<Vec<VertexId>, StructureError> {
    require_forest(g)?;
    g.check_subset(a)?;
    if !g.contains(b) {
        return Err(StructureError::Graph(GraphError::UnknownVertex {
            vertex: b.clone(),
        }));
    }
    if a.contains(b) {
        return Err(StructureError::VertexInBase(b.clone()));
    }
    if verify_weakly_closed && !is_weakly_closed(g, a, None)? {
        return Err(StructureError::BaseNotWeaklyClosed);
    }
    // BFS from b; the first base vertex reached closes the path, and no
    // earlier layer contains a base vertex, so the path meets `a` once.
    let mut parent = std::collections::BTreeMap::new();
    parent.insert(b.clone(), None::<VertexId>);
    let mut queue = std::collections::VecDeque::from([b.clone()]);
    while let Some(u) = queue.pop_front() {
        if a.contains(&u) {
            let mut path = vec![u.clone()];
            let mut cur = u;
            while let Some(Some(p)) = parent.get(&cur) {
                path.push(p.clone());
                cur = p.clone();
            }
            path.reverse();
            // Path runs from b to the base vertex.
            return Ok(path);
        }
        for w in g.neighbors(&u).unwrap() {
            if !parent.contains_key(w) {
                parent.insert(w.clone(), Some(u.clone()));
                queue.push_back(w.clone());
            }
        }
    }
    Err(StructureError::NoPathToBase(b.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;

    fn g(vertices: &[&str], edges: &[(&str, &str)]) -> FiniteGraph {
        FiniteGraph::from_named(vertices, edges).unwrap()
    }

    fn vs(ids: &[&str]) -> VertexSet {
        ids.iter().map(|s| VertexId::from(*s)).collect()
    }

    #[test]
    fn closedness_is_component_splitting() {
        let f = g(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]);
        assert!(is_closed(&f, &vs(&["a", "b"]), None).unwrap());
        assert!(!is_closed(&f, &vs(&["a"]), None).unwrap());
        assert!(is_closed(&f, &vs(&[]), None).unwrap());
        assert!(is_closed(&f, &vs(&["a", "b", "c", "d"]), None).unwrap());
        // Inside a smaller reference set.
        assert!(is_closed(&f, &vs(&["a"]), Some(&vs(&["a", "c"]))).unwrap());
        assert!(!is_closed(&f, &vs(&["a"]), Some(&vs(&["a", "b"]))).unwrap());
    }

    #[test]
    fn weak_closedness_follows_paths() {
        let p3 = g(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        // Endpoints with the middle missing: the connecting path leaves the set.
        assert!(!is_weakly_closed(&p3, &vs(&["a", "c"]), None).unwrap());
        assert!(is_weakly_closed(&p3, &vs(&["a", "b"]), None).unwrap());
        assert!(is_weakly_closed(&p3, &vs(&["a"]), None).unwrap());
        // Pendant components with one edge into the set are fine.
        let star = g(&["c", "x", "y"], &[("c", "x"), ("c", "y")]);
        assert!(is_weakly_closed(&star, &vs(&["c"]), None).unwrap());
        assert!(!is_closed(&star, &vs(&["c"]), None).unwrap());
    }

    #[test]
    fn closure_star_collects_components_with_chain() {
        let f = g(
            &["a", "b", "c", "z"],
            &[("a", "b"), ("b", "c")],
        );
        let result = closure_star(&f, &vs(&["a"])).unwrap();
        assert_eq!(result.closure, vs(&["a", "b", "c"]));
        assert_eq!(result.chain.len(), 2);
        assert_eq!(result.chain[0].base, vs(&["a"]));
        assert_eq!(result.chain[0].added, VertexId::from("b"));
        assert_eq!(result.chain[1].added, VertexId::from("c"));
        // The isolated vertex is untouched.
        let z = closure_star(&f, &vs(&["z"])).unwrap();
        assert_eq!(z.closure, vs(&["z"]));
        assert!(z.chain.is_empty());
        let empty = closure_star(&f, &vs(&[])).unwrap();
        assert!(empty.closure.is_empty());
    }

    #[test]
    fn weak_closure_is_the_spanning_subtree() {
        let p5 = g(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")],
        );
        assert_eq!(weak_closure(&p5, &vs(&["a", "e"])).unwrap(), vs(&["a", "b", "c", "d", "e"]));
        assert_eq!(weak_closure(&p5, &vs(&["a", "c"])).unwrap(), vs(&["a", "b", "c"]));
        assert_eq!(weak_closure(&p5, &vs(&["b"])).unwrap(), vs(&["b"]));
        // Across components nothing needs to be added.
        let f = g(&["a", "b", "x", "y"], &[("a", "b"), ("x", "y")]);
        assert_eq!(weak_closure(&f, &vs(&["a", "x"])).unwrap(), vs(&["a", "x"]));
        // Star: closing over two leaves pulls in the center.
        let star = g(&["c", "p", "q", "r"], &[("c", "p"), ("c", "q"), ("c", "r")]);
        assert_eq!(weak_closure(&star, &vs(&["p", "q"])).unwrap(), vs(&["c", "p", "q"]));
    }

    #[test]
    fn dimension_counts_components_met() {
        let f = g(&["a", "b", "c", "d", "e"], &[("a", "b"), ("c", "d")]);
        assert_eq!(dimension(&f, &vs(&["a"])).unwrap(), 1);
        assert_eq!(dimension(&f, &vs(&["a", "b"])).unwrap(), 1);
        assert_eq!(dimension(&f, &vs(&["a", "c"])).unwrap(), 2);
        assert_eq!(dimension(&f, &vs(&["a", "c", "e"])).unwrap(), 3);
        assert_eq!(dimension(&f, &vs(&[])).unwrap(), 0);
        assert_eq!(
            relative_dimension(&f, &vs(&["a"]), &vs(&["b"])).unwrap(),
            0
        );
        assert_eq!(
            relative_dimension(&f, &vs(&["a", "c"]), &vs(&["e"])).unwrap(),
            2
        );
    }

    #[test]
    fn classify_pendant_vertex_as_zero_minimal_pair() {
        let f = g(&["a", "b", "x"], &[("a", "b"), ("b", "x")]);
        let report = classify_extension(&f, &vs(&["a", "b"])).unwrap();
        assert_eq!(report.kind, ExtensionKind::ZeroMinimalPair);
        assert_eq!(report.relative_predimension, 0);
        assert_eq!(report.minimal_vertex, Some(VertexId::from("x")));
    }

    #[test]
    fn classify_isolated_extension_as_closed() {
        let f = g(&["a", "b", "z"], &[("a", "b")]);
        let report = classify_extension(&f, &vs(&["a", "b"])).unwrap();
        assert_eq!(report.kind, ExtensionKind::Closed);
        assert_eq!(report.relative_predimension, 1);
    }

    #[test]
    fn classify_pendant_path_as_zero_intrinsic() {
        let f = g(&["a", "p", "q"], &[("a", "p"), ("p", "q")]);
        let report = classify_extension(&f, &vs(&["a"])).unwrap();
        assert_eq!(report.kind, ExtensionKind::ZeroIntrinsic);
        assert_eq!(report.relative_predimension, 0);
        let chain = report.chain.unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(chain[0].added, VertexId::from("p"));
        assert_eq!(chain[1].added, VertexId::from("q"));
    }

    #[test]
    fn classify_bridge_vertex_as_minimal_pair() {
        // One vertex joining two components of the base: a minimal pair with
        // negative relative predimension.
        let f = g(&["a", "z", "m"], &[("a", "m"), ("m", "z")]);
        let report = classify_extension(&f, &vs(&["a", "z"])).unwrap();
        assert_eq!(report.kind, ExtensionKind::MinimalPair);
        assert_eq!(report.relative_predimension, -1);
        assert_eq!(report.minimal_vertex, Some(VertexId::from("m")));
    }

    #[test]
    fn classify_bridge_path_as_weak_minimal_pair() {
        let f = g(&["a", "z", "p", "q"], &[("a", "p"), ("p", "q"), ("q", "z")]);
        let report = classify_extension(&f, &vs(&["a", "z"])).unwrap();
        assert_eq!(report.kind, ExtensionKind::WeakMinimalPair);
        assert_eq!(report.relative_predimension, -1);
    }

    #[test]
    fn classify_mixed_extension_as_intrinsic() {
        // A pendant vertex plus a bridging vertex: intrinsic but not a pair,
        // and not weak intrinsic because base + bridge is weakly closed.
        let f = g(
            &["a", "z", "p", "m"],
            &[("a", "p"), ("a", "m"), ("m", "z")],
        );
        let report = classify_extension(&f, &vs(&["a", "z"])).unwrap();
        assert_eq!(report.kind, ExtensionKind::Intrinsic);
        assert_eq!(report.relative_predimension, -1);
    }

    #[test]
    fn classify_two_bridges_as_weak_intrinsic() {
        // Base of three isolated vertices, joined in a path by two bridges.
        let f = g(
            &["a", "b", "c", "m", "n"],
            &[("a", "m"), ("m", "b"), ("b", "n"), ("n", "c")],
        );
        let report = classify_extension(&f, &vs(&["a", "b", "c"])).unwrap();
        assert_eq!(report.kind, ExtensionKind::WeakIntrinsic);
        assert_eq!(report.relative_predimension, -2);
    }

    #[test]
    fn classify_partial_attachments() {
        // Pendant + isolated extension vertex: weakly closed only.
        let f = g(&["a", "p", "z"], &[("a", "p")]);
        let report = classify_extension(&f, &vs(&["a"])).unwrap();
        assert_eq!(report.kind, ExtensionKind::WeaklyClosed);
        // Bridge + isolated extension vertex: none of the tags.
        let f = g(&["a", "b", "m", "z"], &[("a", "m"), ("m", "b")]);
        let report = classify_extension(&f, &vs(&["a", "b"])).unwrap();
        assert_eq!(report.kind, ExtensionKind::None);
    }

    #[test]
    fn unique_path_to_base() {
        let f = g(
            &["a", "b", "x", "y"],
            &[("a", "b"), ("b", "x"), ("x", "y")],
        );
        let path = unique_path_to(&f, &vs(&["a", "b"]), &VertexId::from("y"), true).unwrap();
        assert_eq!(
            path,
            vec![VertexId::from("y"), VertexId::from("x"), VertexId::from("b")]
        );
        // Vertex outside the closure.
        let f2 = g(&["a", "z"], &[]);
        assert!(matches!(
            unique_path_to(&f2, &vs(&["a"]), &VertexId::from("z"), true),
            Err(StructureError::NoPathToBase(_))
        ));
        // Precondition check can be requested.
        let p3 = g(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]);
        assert!(matches!(
            unique_path_to(&p3, &vs(&["a", "c"]), &VertexId::from("d"), true),
            Err(StructureError::BaseNotWeaklyClosed)
        ));
        assert!(unique_path_to(&p3, &vs(&["a", "c"]), &VertexId::from("d"), false).is_ok());
    }

    #[test]
    fn non_forest_ambient_is_rejected() {
        let t = g(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        assert!(matches!(
            is_closed(&t, &vs(&["a"]), None),
            Err(StructureError::NotAForest)
        ));
        assert!(matches!(
            closure_star(&t, &vs(&["a"])),
            Err(StructureError::NotAForest)
        ));
    }
}
