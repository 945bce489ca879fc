//! Enumeration of class members up to isomorphism.
//!
//! Trees on k vertices are generated by attaching a leaf to every vertex of
//! every tree on k - 1 vertices and deduplicating by canonical code. Forests
//! are multisets of trees. The result is filtered by class membership and
//! ordered by (vertex count, canonical code), starting with the empty graph.

use crate::capacity::{CapacityError, DEFAULT_ENUMERATION_CAPACITY};

use super::{canonical_code, in_class, ClassIndex, FiniteGraph, VertexId};

/// All members of the class of index `alpha` with at most `max_size`
/// vertices, one per isomorphism class, ordered by (size, canonical code).
/// The empty graph is a member of every class.
pub fn enumerate_class(
    alpha: ClassIndex,
    max_size: usize,
) -> Result<Vec<FiniteGraph>, CapacityError> {
    enumerate_class_capped(alpha, max_size, DEFAULT_ENUMERATION_CAPACITY)
}

/// As [`enumerate_class`] with an explicit capacity bound on `max_size`.
pub fn enumerate_class_capped(
    alpha: ClassIndex,
    max_size: usize,
    capacity: usize,
) -> Result<Vec<FiniteGraph>, CapacityError> {
    CapacityError::check("enumerate_class", max_size, capacity)?;
    let trees = enumerate_trees(max_size);
    // Order tree shapes deterministically before combining them.
    let mut keyed: Vec<(usize, String, FiniteGraph)> = trees
        .into_iter()
        .map(|t| {
            let code = canonical_code(&t, &[]).unwrap();
            (t.vertex_count(), code, t)
        })
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    let mut forests = vec![FiniteGraph::empty()];
    let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(0, 0, Vec::new())];
    // Multisets as non-decreasing index sequences over the tree list.
    while let Some((next, used, chosen)) = stack.pop() {
        for (i, (size, _, _)) in keyed.iter().enumerate().skip(next) {
            if used + size > max_size {
                continue;
            }
            let mut c = chosen.clone();
            c.push(i);
            forests.push(assemble(&keyed, &c));
            stack.push((i, used + size, c));
        }
    }

    let mut keyed_forests: Vec<(usize, String, FiniteGraph)> = forests
        .into_iter()
        .filter(|f| in_class(f, alpha))
        .map(|f| {
            let code = canonical_code(&f, &[]).unwrap();
            (f.vertex_count(), code, f)
        })
        .collect();
    keyed_forests.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed_forests.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
    Ok(keyed_forests.into_iter().map(|(_, _, f)| f).collect())
}

/// All trees with 1..=max_size vertices, one per isomorphism class.
pub fn enumerate_trees(max_size: usize) -> Vec<FiniteGraph> {
    let mut by_size: Vec<Vec<FiniteGraph>> = Vec::new();
    if max_size == 0 {
        return Vec::new();
    }
    by_size.push(vec![FiniteGraph::from_named(&["v0"], &[]).unwrap()]);
    for k in 2..=max_size {
        let mut seen = std::collections::BTreeSet::new();
        let mut next = Vec::new();
        let leaf = VertexId::new(format!("v{}", k - 1));
        for t in &by_size[k - 2] {
            for v in t.vertices().clone() {
                let grown = FiniteGraph::new(
                    t.vertices().iter().cloned().chain([leaf.clone()]),
                    t.edges()
                        .iter()
                        .map(|e| (e.endpoints().0.clone(), e.endpoints().1.clone()))
                        .chain([(v.clone(), leaf.clone())]),
                )
                .unwrap();
                let code = canonical_code(&grown, &[]).unwrap();
                if seen.insert(code) {
                    next.push(grown);
                }
            }
        }
        by_size.push(next);
    }
    by_size.into_iter().flatten().collect()
}

/// Disjoint union of the chosen trees with component-indexed vertex names.
fn assemble(keyed: &[(usize, String, FiniteGraph)], chosen: &[usize]) -> FiniteGraph {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (c, &i) in chosen.iter().enumerate() {
        let tree = &keyed[i].2;
        let rename = |v: &VertexId| VertexId::new(format!("c{c}_{v}"));
        vertices.extend(tree.vertices().iter().map(rename));
        edges.extend(
            tree.edges()
                .iter()
                .map(|e| (rename(e.endpoints().0), rename(e.endpoints().1))),
        );
    }
    FiniteGraph::new(vertices, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts_match_the_classic_sequence() {
        // Trees up to isomorphism on 1..=9 vertices.
        let expected = [1usize, 1, 1, 2, 3, 6, 11, 23, 47];
        let trees = enumerate_trees(9);
        for (n, want) in expected.iter().enumerate() {
            let got = trees.iter().filter(|t| t.vertex_count() == n + 1).count();
            assert_eq!(got, *want, "tree count at {} vertices", n + 1);
        }
    }

    #[test]
    fn forest_counts_match_the_classic_sequence() {
        // Forests up to isomorphism on 0..=8 vertices.
        let expected = [1usize, 1, 2, 3, 6, 10, 20, 37, 76];
        let forests = enumerate_class(ClassIndex::Omega, 8).unwrap();
        for (n, want) in expected.iter().enumerate() {
            let got = forests.iter().filter(|t| t.vertex_count() == n).count();
            assert_eq!(got, *want, "forest count at {n} vertices");
        }
    }

    #[test]
    fn enumeration_for_size_two_is_exactly_four_graphs() {
        let forests = enumerate_class(ClassIndex::Omega, 2).unwrap();
        assert_eq!(forests.len(), 4);
        assert_eq!(forests[0].vertex_count(), 0);
        assert_eq!(forests[1].vertex_count(), 1);
        assert_eq!(forests[2].vertex_count(), 2);
        assert_eq!(forests[3].vertex_count(), 2);
        // Size-2 members order by canonical code: the single edge precedes
        // the two isolated vertices.
        let edge_counts: Vec<usize> = forests.iter().map(|f| f.edge_count()).collect();
        assert_eq!(edge_counts, [0, 0, 1, 0]);
    }

    #[test]
    fn class_filter_is_applied() {
        // Index 1 admits paths and stars only; at 5 vertices that is the
        // 5-path and the 5-star out of three tree shapes.
        let all: Vec<FiniteGraph> = enumerate_class(ClassIndex::Omega, 5)
            .unwrap()
            .into_iter()
            .filter(|f| f.vertex_count() == 5 && f.components().len() == 1)
            .collect();
        assert_eq!(all.len(), 3);
        let one: Vec<FiniteGraph> = enumerate_class(ClassIndex::Finite(1), 5)
            .unwrap()
            .into_iter()
            .filter(|f| f.vertex_count() == 5 && f.components().len() == 1)
            .collect();
        assert_eq!(one.len(), 2);
    }

    #[test]
    fn members_are_deduplicated_and_sorted() {
        let forests = enumerate_class(ClassIndex::Omega, 6).unwrap();
        let mut keys: Vec<(usize, String)> = forests
            .iter()
            .map(|f| (f.vertex_count(), canonical_code(f, &[]).unwrap()))
            .collect();
        let sorted = {
            let mut s = keys.clone();
            s.sort();
            s
        };
        assert_eq!(keys, sorted, "output must be ordered by (size, code)");
        keys.dedup();
        assert_eq!(keys.len(), forests.len(), "no isomorphic duplicates");
    }

    #[test]
    fn capacity_is_enforced() {
        let err = enumerate_class(ClassIndex::Omega, 40).unwrap_err();
        assert_eq!(err.operation, "enumerate_class");
        assert!(enumerate_class_capped(ClassIndex::Omega, 3, 3).is_ok());
    }
}
