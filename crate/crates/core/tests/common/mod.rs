//! Brute-force oracles and generators shared by the integration suites.
//!
//! Everything here recomputes its answers from first principles over
//! bitmask-indexed subsets, deliberately avoiding the library's own
//! closure and classification code, so agreement between the two is
//! meaningful evidence.

#![allow(dead_code)]

use std::collections::BTreeMap;

use gfl_core::formula::{canonical_var, Formula};
use gfl_core::graph::{FiniteGraph, VertexId, VertexSet};
use rand::Rng;

/// A small graph indexed for subset arithmetic: subsets are `u32` masks
/// over the sorted vertex list.
pub struct SubsetTable {
    vertices: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    edges: Vec<(usize, usize)>,
}

impl SubsetTable {
    pub fn new(g: &FiniteGraph) -> Self {
        let vertices: Vec<VertexId> = g.vertices().iter().cloned().collect();
        assert!(vertices.len() <= 20, "mask tables are for small graphs");
        let index: BTreeMap<VertexId, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let edges = g
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = e.endpoints();
                (index[a], index[b])
            })
            .collect();
        SubsetTable {
            vertices,
            index,
            edges,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn full(&self) -> u32 {
        if self.vertices.is_empty() {
            0
        } else {
            (1u32 << self.vertices.len()) - 1
        }
    }

    pub fn delta(&self, mask: u32) -> i64 {
        let vs = mask.count_ones() as i64;
        let es = self
            .edges
            .iter()
            .filter(|(a, b)| mask & (1 << a) != 0 && mask & (1 << b) != 0)
            .count() as i64;
        vs - es
    }

    /// Definitional closedness: every proper superset of `a` inside
    /// `ambient` has strictly larger predimension.
    pub fn closed_within(&self, a: u32, ambient: u32) -> bool {
        debug_assert_eq!(a & ambient, a);
        let da = self.delta(a);
        let free = ambient & !a;
        let mut s = free;
        while s != 0 {
            if self.delta(a | s) <= da {
                return false;
            }
            s = (s - 1) & free;
        }
        true
    }

    /// Definitional weak closedness: no superset of `a` inside `ambient`
    /// has smaller predimension.
    pub fn weakly_closed_within(&self, a: u32, ambient: u32) -> bool {
        debug_assert_eq!(a & ambient, a);
        let da = self.delta(a);
        let free = ambient & !a;
        let mut s = free;
        while s != 0 {
            if self.delta(a | s) < da {
                return false;
            }
            s = (s - 1) & free;
        }
        true
    }

    /// The subsets of the full vertex set containing `a` that are closed,
    /// restricted to those of minimal size. A well-formed closure operator
    /// makes this a single set.
    pub fn minimal_closed_supersets(&self, a: u32) -> Vec<u32> {
        self.minimal_supersets(a, |t, m| t.closed_within(m, t.full()))
    }

    pub fn minimal_weakly_closed_supersets(&self, a: u32) -> Vec<u32> {
        self.minimal_supersets(a, |t, m| t.weakly_closed_within(m, t.full()))
    }

    fn minimal_supersets(&self, a: u32, pred: impl Fn(&Self, u32) -> bool) -> Vec<u32> {
        let mut best: Vec<u32> = Vec::new();
        let mut best_size = u32::MAX;
        let free = self.full() & !a;
        let mut s = free;
        loop {
            let candidate = a | s;
            if pred(self, candidate) {
                let size = candidate.count_ones();
                if size < best_size {
                    best_size = size;
                    best = vec![candidate];
                } else if size == best_size && !best.contains(&candidate) {
                    best.push(candidate);
                }
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & free;
        }
        best
    }

    pub fn set(&self, mask: u32) -> VertexSet {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn mask(&self, set: &VertexSet) -> u32 {
        set.iter().map(|v| 1u32 << self.index[v]).sum()
    }

    /// All masks over the vertex set, empty and full included.
    pub fn all_masks(&self) -> impl Iterator<Item = u32> {
        0..=self.full()
    }
}

/// A uniformly grown random tree: vertex `i` attaches to a uniformly
/// chosen earlier vertex. `n` must be at least 1; the root is `{prefix}0`.
pub fn random_tree(rng: &mut impl Rng, n: usize, prefix: &str) -> FiniteGraph {
    assert!(n >= 1);
    let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let mut edges: Vec<(&str, &str)> = Vec::new();
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        edges.push((&names[parent], &names[i]));
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    FiniteGraph::from_named(&refs, &edges).expect("grown trees are simple")
}

/// All isomorphisms from `g` onto `h` as vertex maps.
pub fn all_isomorphisms(g: &FiniteGraph, h: &FiniteGraph) -> Vec<BTreeMap<VertexId, VertexId>> {
    let mut out = Vec::new();
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return out;
    }
    let gs: Vec<VertexId> = g.vertices().iter().cloned().collect();
    let hs: Vec<VertexId> = h.vertices().iter().cloned().collect();
    let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut used = vec![false; hs.len()];
    extend(g, h, &gs, &hs, &mut map, &mut used, 0, &mut out);
    return out;

    #[allow(clippy::too_many_arguments)]
    fn extend(
        g: &FiniteGraph,
        h: &FiniteGraph,
        gs: &[VertexId],
        hs: &[VertexId],
        map: &mut BTreeMap<VertexId, VertexId>,
        used: &mut [bool],
        pos: usize,
        out: &mut Vec<BTreeMap<VertexId, VertexId>>,
    ) {
        if pos == gs.len() {
            out.push(map.clone());
            return;
        }
        let v = &gs[pos];
        'candidates: for (i, w) in hs.iter().enumerate() {
            if used[i] || g.degree(v).unwrap() != h.degree(w).unwrap() {
                continue;
            }
            for prev in &gs[..pos] {
                if g.has_edge(v, prev) != h.has_edge(w, &map[prev]) {
                    continue 'candidates;
                }
            }
            map.insert(v.clone(), w.clone());
            used[i] = true;
            extend(g, h, gs, hs, map, used, pos + 1, out);
            used[i] = false;
            map.remove(v);
        }
    }
}

/// The cycle on `k >= 3` vertices named `y0 .. y{k-1}`.
pub fn cycle_graph(k: usize) -> FiniteGraph {
    assert!(k >= 3);
    let names: Vec<String> = (0..k).map(|i| format!("y{i}")).collect();
    let mut edges: Vec<(&str, &str)> = Vec::new();
    for i in 0..k {
        edges.push((&names[i], &names[(i + 1) % k]));
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    FiniteGraph::from_named(&refs, &edges).expect("cycles are simple")
}

/// A clique on `m` branch vertices with every edge subdivided by exactly
/// `t` interior vertices.
pub fn subdivided_clique(m: usize, t: usize) -> FiniteGraph {
    let mut names: Vec<String> = (0..m).map(|b| format!("b{b}")).collect();
    let mut edges: Vec<(String, String)> = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let mut prev = format!("b{i}");
            for step in 0..t {
                let mid = format!("p{i}_{j}_{step}");
                edges.push((prev.clone(), mid.clone()));
                names.push(mid.clone());
                prev = mid;
            }
            edges.push((prev, format!("b{j}")));
        }
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let edge_refs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    FiniteGraph::from_named(&refs, &edge_refs).expect("subdivided cliques are simple")
}

/// A random sentence whose quantifier prefix binds `x1 .. x{vars}`, so its
/// quantifier rank is at most `vars`.
pub fn random_sentence(rng: &mut impl Rng, vars: usize) -> Formula {
    let mut f = random_body(rng, vars, 3);
    for i in (1..=vars).rev() {
        let v = canonical_var(i);
        f = if rng.gen_bool(0.5) {
            Formula::Forall(v, Box::new(f))
        } else {
            Formula::Exists(v, Box::new(f))
        };
    }
    f
}

fn random_body(rng: &mut impl Rng, vars: usize, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        let a = canonical_var(rng.gen_range(1..=vars));
        let b = canonical_var(rng.gen_range(1..=vars));
        return if rng.gen_bool(0.7) {
            Formula::Edge(a, b)
        } else {
            Formula::Equals(a, b)
        };
    }
    match rng.gen_range(0..4) {
        0 => Formula::Not(Box::new(random_body(rng, vars, depth - 1))),
        1 => Formula::And(vec![
            random_body(rng, vars, depth - 1),
            random_body(rng, vars, depth - 1),
        ]),
        2 => Formula::Or(vec![
            random_body(rng, vars, depth - 1),
            random_body(rng, vars, depth - 1),
        ]),
        _ => Formula::Implies(
            Box::new(random_body(rng, vars, depth - 1)),
            Box::new(random_body(rng, vars, depth - 1)),
        ),
    }
}
