//! Canonical codes for forests with marked vertices.
//!
//! The code of a tree is computed AHU-style: root the tree at its centroid
//! (taking the lexicographically smaller code when there are two centroids),
//! encode each vertex as its mark positions followed by the sorted codes of
//! its children. A forest's code is the sorted multiset of its tree codes.
//! Two marked forests get equal codes iff there is an isomorphism mapping the
//! i-th mark of one to the i-th mark of the other.

use std::collections::BTreeMap;

use super::{FiniteGraph, GraphError, VertexId};

/// Canonical code of a forest with an ordered mark tuple (repeats allowed).
/// Fails on cyclic graphs and on marks outside the graph.
pub fn canonical_code(g: &FiniteGraph, marks: &[VertexId]) -> Result<String, GraphError> {
    if let Some(cycle) = g.find_cycle() {
        return Err(GraphError::NotAForest {
            vertex: cycle[0].clone(),
        });
    }
    let mut positions: BTreeMap<&VertexId, Vec<usize>> = BTreeMap::new();
    for (i, m) in marks.iter().enumerate() {
        if !g.contains(m) {
            return Err(GraphError::UnknownVertex { vertex: m.clone() });
        }
        positions.entry(m).or_default().push(i);
    }
    let mut component_codes: Vec<String> = g
        .components()
        .iter()
        .map(|comp| {
            let centroids = tree_centroids(g, comp);
            centroids
                .iter()
                .map(|root| rooted_code(g, root, None, &positions))
                .min()
                .unwrap()
        })
        .collect();
    component_codes.sort();
    Ok(component_codes.join("+"))
}

/// Code of the subtree hanging below `v` when entered from `parent`.
fn rooted_code(
    g: &FiniteGraph,
    v: &VertexId,
    parent: Option<&VertexId>,
    positions: &BTreeMap<&VertexId, Vec<usize>>,
) -> String {
    let mut child_codes: Vec<String> = g
        .neighbors(v)
        .unwrap()
        .iter()
        .filter(|w| Some(*w) != parent)
        .map(|w| rooted_code(g, w, Some(v), positions))
        .collect();
    child_codes.sort();
    let tag = positions
        .get(v)
        .map(|ps| {
            ps.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .unwrap_or_default();
    format!("({tag}|{})", child_codes.join(""))
}

/// The one or two centroids of the tree spanned by `comp` (vertices
/// minimizing the largest remaining component after their removal).
fn tree_centroids(g: &FiniteGraph, comp: &super::VertexSet) -> Vec<VertexId> {
    let n = comp.len();
    if n == 1 {
        return vec![comp.iter().next().unwrap().clone()];
    }
    // subtree_size[v] for an arbitrary rooting; the max component after
    // removing v is max(children subtree sizes, n - size[v]).
    let root = comp.iter().next().unwrap().clone();
    let order = {
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![(root.clone(), None::<VertexId>)];
        while let Some((v, parent)) = stack.pop() {
            order.push((v.clone(), parent.clone()));
            for w in g.neighbors(&v).unwrap() {
                if Some(w) != parent.as_ref() {
                    stack.push((w.clone(), Some(v.clone())));
                }
            }
        }
        order
    };
    // Reverse preorder: children are summed before their parent, and the
    // parent is still absent from `size` at that point.
    let mut size: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (v, _) in order.iter().rev() {
        let s = 1 + g
            .neighbors(v)
            .unwrap()
            .iter()
            .filter_map(|w| size.get(w))
            .sum::<usize>();
        size.insert(v.clone(), s);
    }
    // A child w of v has size[w] < size[v]; the parent always has a larger
    // size, so the filter below selects exactly the children.
    let mut best = usize::MAX;
    let mut centroids = Vec::new();
    for v in comp {
        let mut worst = n - size[v];
        for w in g.neighbors(v).unwrap() {
            if size[w] < size[v] {
                worst = worst.max(size[w]);
            }
        }
        match worst.cmp(&best) {
            std::cmp::Ordering::Less => {
                best = worst;
                centroids = vec![v.clone()];
            }
            std::cmp::Ordering::Equal => centroids.push(v.clone()),
            std::cmp::Ordering::Greater => {}
        }
    }
    centroids
}
