//! Search for subdivided cliques.
//!
//! A subdivided clique on `m` branch vertices with subdivision bound `r`
//! consists of `m` distinct vertices pairwise joined by internally disjoint
//! paths, each path using at most `r` interior vertices. The search is a
//! straightforward backtracking enumeration: pick branch vertices in id
//! order, then route the pairs one at a time.

use crate::capacity::{CapacityError, DEFAULT_SUBDIVISION_CAPACITY};

use super::{FiniteGraph, VertexId, VertexSet};

/// Does `g` contain a subdivided `m`-clique with at most `r` interior
/// vertices per edge as a (not necessarily induced) subgraph?
pub fn contains_subdivided_clique(
    g: &FiniteGraph,
    m: usize,
    r: usize,
) -> Result<bool, CapacityError> {
    contains_subdivided_clique_capped(g, m, r, DEFAULT_SUBDIVISION_CAPACITY)
}

/// As [`contains_subdivided_clique`] with an explicit vertex capacity.
pub fn contains_subdivided_clique_capped(
    g: &FiniteGraph,
    m: usize,
    r: usize,
    capacity: usize,
) -> Result<bool, CapacityError> {
    CapacityError::check("contains_subdivided_clique", g.vertex_count(), capacity)?;
    if m < 2 {
        // A 0- or 1-clique needs no paths; it embeds whenever enough
        // vertices exist.
        return Ok(g.vertex_count() >= m);
    }
    if g.vertex_count() < m {
        return Ok(false);
    }
    let vertices: Vec<VertexId> = g.vertices().iter().cloned().collect();
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| ((i + 1)..m).map(move |j| (i, j)))
        .collect();
    let mut search = Search {
        g,
        pairs,
        r,
        branch: Vec::with_capacity(m),
        branch_set: VertexSet::new(),
        interior: VertexSet::new(),
    };
    Ok(search.choose_branches(&vertices, 0, m))
}

struct Search<'a> {
    g: &'a FiniteGraph,
    pairs: Vec<(usize, usize)>,
    r: usize,
    branch: Vec<VertexId>,
    branch_set: VertexSet,
    interior: VertexSet,
}

impl Search<'_> {
    fn choose_branches(&mut self, vertices: &[VertexId], start: usize, m: usize) -> bool {
        if self.branch.len() == m {
            self.interior.clear();
            return self.route(0);
        }
        for i in start..vertices.len() {
            self.branch.push(vertices[i].clone());
            self.branch_set.insert(vertices[i].clone());
            if self.choose_branches(vertices, i + 1, m) {
                return true;
            }
            self.branch.pop();
            self.branch_set.remove(&vertices[i]);
        }
        false
    }

    /// Routes the `next`-th branch pair, then recurses into the rest.
    fn route(&mut self, next: usize) -> bool {
        if next == self.pairs.len() {
            return true;
        }
        let (i, j) = self.pairs[next];
        let from = self.branch[i].clone();
        let to = self.branch[j].clone();
        let mut path = vec![from];
        self.extend_path(&to, next, &mut path)
    }

    /// Grows `path` toward `to`; on arrival commits the interior and moves
    /// to the next pair, undoing on backtrack.
    fn extend_path(&mut self, to: &VertexId, next: usize, path: &mut Vec<VertexId>) -> bool {
        let last = path.last().unwrap().clone();
        if self.g.has_edge(&last, to) {
            let added: Vec<VertexId> = path[1..].to_vec();
            self.interior.extend(added.iter().cloned());
            if self.route(next + 1) {
                return true;
            }
            for v in &added {
                self.interior.remove(v);
            }
        }
        if path.len() - 1 >= self.r {
            return false;
        }
        let neighbors: Vec<VertexId> = self.g.neighbors(&last).unwrap().iter().cloned().collect();
        for w in neighbors {
            if self.branch_set.contains(&w) || self.interior.contains(&w) || path.contains(&w) {
                continue;
            }
            path.push(w.clone());
            if self.extend_path(to, next, path) {
                return true;
            }
            path.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(vertices: &[&str], edges: &[(&str, &str)]) -> FiniteGraph {
        FiniteGraph::from_named(vertices, edges).unwrap()
    }

    fn cycle(n: usize) -> FiniteGraph {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        FiniteGraph::new(
            names.iter().map(|s| VertexId::new(s.clone())),
            (0..n).map(|i| {
                (
                    VertexId::new(names[i].clone()),
                    VertexId::new(names[(i + 1) % n].clone()),
                )
            }),
        )
        .unwrap()
    }

    #[test]
    fn triangle_is_a_subdivided_triangle_at_zero() {
        let t = g(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        assert!(contains_subdivided_clique(&t, 3, 0).unwrap());
        assert!(contains_subdivided_clique(&t, 3, 2).unwrap());
    }

    #[test]
    fn six_cycle_needs_subdivision_bound_one() {
        let c6 = cycle(6);
        assert!(!contains_subdivided_clique(&c6, 3, 0).unwrap());
        assert!(contains_subdivided_clique(&c6, 3, 1).unwrap());
    }

    #[test]
    fn cycles_embed_subdivided_triangles_based_on_length() {
        // A cycle of length L is a subdivided triangle iff L <= 3(r + 1).
        for len in 3..=12 {
            let c = cycle(len);
            for r in 0..=4 {
                let expect = len <= 3 * (r + 1);
                assert_eq!(
                    contains_subdivided_clique(&c, 3, r).unwrap(),
                    expect,
                    "cycle length {len}, bound {r}"
                );
            }
        }
    }

    #[test]
    fn forests_have_no_subdivided_triangles() {
        let p = g(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")],
        );
        for r in 0..=4 {
            assert!(!contains_subdivided_clique(&p, 3, r).unwrap());
        }
        // But a 2-clique is just an edge.
        assert!(contains_subdivided_clique(&p, 2, 0).unwrap());
    }

    #[test]
    fn k4_subdivision_is_found() {
        // K4 with every edge subdivided once: 4 branch + 6 interior vertices.
        let mut vertices: Vec<String> = (0..4).map(|i| format!("b{i}")).collect();
        let mut edges = Vec::new();
        let mut mid = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let m = format!("m{mid}");
                mid += 1;
                edges.push((format!("b{i}"), m.clone()));
                edges.push((m.clone(), format!("b{j}")));
                vertices.push(m);
            }
        }
        let graph = FiniteGraph::new(
            vertices.iter().map(|s| VertexId::new(s.clone())),
            edges
                .iter()
                .map(|(a, b)| (VertexId::new(a.clone()), VertexId::new(b.clone()))),
        )
        .unwrap();
        assert!(contains_subdivided_clique(&graph, 4, 1).unwrap());
        assert!(!contains_subdivided_clique(&graph, 4, 0).unwrap());
        // Disjointness matters: there are not enough vertices for K5.
        assert!(!contains_subdivided_clique(&graph, 5, 1).unwrap());
    }

    #[test]
    fn capacity_is_enforced() {
        let big: Vec<String> = (0..40).map(|i| format!("v{i}")).collect();
        let graph = FiniteGraph::new(big.iter().map(|s| VertexId::new(s.clone())), []).unwrap();
        let err = contains_subdivided_clique(&graph, 3, 1).unwrap_err();
        assert_eq!(err.limit, DEFAULT_SUBDIVISION_CAPACITY);
        assert!(contains_subdivided_clique_capped(&graph, 3, 1, 64).is_ok());
    }
}
