//! Finite simple graphs with opaque string vertex ids.
//!
//! A [`FiniteGraph`] is immutable after construction: vertices live in an
//! ordered set, edges are stored once as normalized (smaller id, larger id)
//! pairs, and the adjacency map is derived at build time. Self-loops and
//! duplicate edges are rejected. The JSON wire format is
//! `{"vertices": ["a", ...], "edges": [["a","b"], ...]}`, order-insensitive
//! on read and canonically ordered on write.

mod canonical;
mod enumeration;
mod subdivision;

pub use canonical::canonical_code;
pub use enumeration::{enumerate_class, enumerate_class_capped, enumerate_trees};
pub use subdivision::{contains_subdivided_clique, contains_subdivided_clique_capped};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An opaque, order-comparable vertex identifier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        VertexId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

/// An ordered set of vertex ids.
pub type VertexSet = BTreeSet<VertexId>;

/// A normalized undirected edge; the smaller endpoint is stored first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    /// Normalizes the endpoint order. Fails on self-loops.
    pub fn new(a: VertexId, b: VertexId) -> Result<Self, GraphError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge(a, b)),
            std::cmp::Ordering::Greater => Ok(Edge(b, a)),
            std::cmp::Ordering::Equal => Err(GraphError::SelfLoop { vertex: a }),
        }
    }

    pub fn endpoints(&self) -> (&VertexId, &VertexId) {
        (&self.0, &self.1)
    }
}

/// Errors from graph construction and vertex-addressed operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {vertex}")]
    UnknownVertex { vertex: VertexId },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: VertexId },
    #[error("duplicate edge {a}-{b}")]
    DuplicateEdge { a: VertexId, b: VertexId },
    #[error("duplicate vertex {vertex}")]
    DuplicateVertex { vertex: VertexId },
    #[error("graph contains a cycle through {vertex}")]
    NotAForest { vertex: VertexId },
    #[error("vertex relabeling collides at {vertex}")]
    RelabelCollision { vertex: VertexId },
}

/// An immutable finite simple graph.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    vertices: VertexSet,
    edges: BTreeSet<Edge>,
    adjacency: BTreeMap<VertexId, VertexSet>,
    forest: bool,
}

impl fmt::Debug for FiniteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGraph({})", self.to_json())
    }
}

impl FiniteGraph {
    /// Builds a graph from vertices and edge pairs. Endpoint order within a
    /// pair is irrelevant; unknown endpoints, self-loops, and duplicate edges
    /// are rejected.
    pub fn new<V, E>(vertices: V, edge_pairs: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut vs = VertexSet::new();
        for v in vertices {
            if !vs.insert(v.clone()) {
                return Err(GraphError::DuplicateVertex { vertex: v });
            }
        }
        let mut edges = BTreeSet::new();
        let mut adjacency: BTreeMap<VertexId, VertexSet> =
            vs.iter().map(|v| (v.clone(), VertexSet::new())).collect();
        for (a, b) in edge_pairs {
            for end in [&a, &b] {
                if !vs.contains(end) {
                    return Err(GraphError::UnknownVertex { vertex: end.clone() });
                }
            }
            let edge = Edge::new(a, b)?;
            let (x, y) = (edge.0.clone(), edge.1.clone());
            if !edges.insert(edge) {
                return Err(GraphError::DuplicateEdge { a: x, b: y });
            }
            adjacency.get_mut(&x).unwrap().insert(y.clone());
            adjacency.get_mut(&y).unwrap().insert(x);
        }
        let forest = compute_is_forest(&vs, &adjacency);
        Ok(FiniteGraph {
            vertices: vs,
            edges,
            adjacency,
            forest,
        })
    }

    /// The empty graph.
    pub fn empty() -> Self {
        FiniteGraph::new([], []).unwrap()
    }

    /// Convenience constructor from string ids.
    pub fn from_named(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self, GraphError> {
        FiniteGraph::new(
            vertices.iter().copied().map(VertexId::from),
            edges
                .iter()
                .map(|(a, b)| (VertexId::from(*a), VertexId::from(*b))),
        )
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_edge(&self, a: &VertexId, b: &VertexId) -> bool {
        if a == b {
            return false;
        }
        self.adjacency.get(a).is_some_and(|ns| ns.contains(b))
    }

    pub fn neighbors(&self, v: &VertexId) -> Result<&VertexSet, GraphError> {
        self.adjacency
            .get(v)
            .ok_or_else(|| GraphError::UnknownVertex { vertex: v.clone() })
    }

    pub fn degree(&self, v: &VertexId) -> Result<usize, GraphError> {
        Ok(self.neighbors(v)?.len())
    }

    /// True when the graph is acyclic.
    pub fn is_forest(&self) -> bool {
        self.forest
    }

    /// Checks that every element of `set` is a vertex of the graph.
    pub fn check_subset(&self, set: &VertexSet) -> Result<(), GraphError> {
        for v in set {
            if !self.contains(v) {
                return Err(GraphError::UnknownVertex { vertex: v.clone() });
            }
        }
        Ok(())
    }

    /// The subgraph induced on `set`.
    pub fn induced(&self, set: &VertexSet) -> Result<FiniteGraph, GraphError> {
        self.check_subset(set)?;
        let edges = self
            .edges
            .iter()
            .filter(|e| set.contains(&e.0) && set.contains(&e.1))
            .map(|e| (e.0.clone(), e.1.clone()));
        FiniteGraph::new(set.iter().cloned(), edges)
    }

    /// Number of edges with both endpoints in `set`.
    pub fn edge_count_within(&self, set: &VertexSet) -> Result<usize, GraphError> {
        self.check_subset(set)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| set.contains(&e.0) && set.contains(&e.1))
            .count())
    }

    /// Number of edges with one endpoint in `a` and the other in `b`
    /// (the sets are expected to be disjoint).
    pub fn edge_count_between(&self, a: &VertexSet, b: &VertexSet) -> Result<usize, GraphError> {
        self.check_subset(a)?;
        self.check_subset(b)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| {
                (a.contains(&e.0) && b.contains(&e.1)) || (b.contains(&e.0) && a.contains(&e.1))
            })
            .count())
    }

    /// Connected components, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for v in &self.vertices {
            if seen.contains(v) {
                continue;
            }
            let comp = self.component_of(v).unwrap();
            seen.extend(comp.iter().cloned());
            out.push(comp);
        }
        out
    }

    /// The connected component containing `v`.
    pub fn component_of(&self, v: &VertexId) -> Result<VertexSet, GraphError> {
        if !self.contains(v) {
            return Err(GraphError::UnknownVertex { vertex: v.clone() });
        }
        let mut comp = VertexSet::new();
        comp.insert(v.clone());
        let mut queue = VecDeque::from([v.clone()]);
        while let Some(u) = queue.pop_front() {
            for w in &self.adjacency[&u] {
                if comp.insert(w.clone()) {
                    queue.push_back(w.clone());
                }
            }
        }
        Ok(comp)
    }

    /// A cycle witness, if any: a closed vertex sequence `v0, ..., vk` with
    /// `v0 = vk`. Deterministic (DFS from the smallest vertex, neighbors in
    /// id order).
    pub fn find_cycle(&self) -> Option<Vec<VertexId>> {
        let mut parent: BTreeMap<VertexId, Option<VertexId>> = BTreeMap::new();
        for start in &self.vertices {
            if parent.contains_key(start) {
                continue;
            }
            parent.insert(start.clone(), None);
            let mut stack = vec![(start.clone(), None::<VertexId>)];
            while let Some((u, from)) = stack.pop() {
                for w in &self.adjacency[&u] {
                    if Some(w) == from.as_ref() {
                        continue;
                    }
                    if parent.contains_key(w) {
                        // Back edge u-w: walk both tails up to their meeting point.
                        return Some(close_cycle(&parent, &u, w));
                    }
                    parent.insert(w.clone(), Some(u.clone()));
                    stack.push((w.clone(), Some(u.clone())));
                }
            }
        }
        None
    }

    /// Graph distance between two vertices.
    pub fn dist(&self, a: &VertexId, b: &VertexId) -> Result<Distance, GraphError> {
        for v in [a, b] {
            if !self.contains(v) {
                return Err(GraphError::UnknownVertex { vertex: v.clone() });
            }
        }
        let mut level: BTreeMap<&VertexId, u64> = BTreeMap::new();
        level.insert(a, 0);
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            let d = level[u];
            if u == b {
                return Ok(Distance::Finite(d));
            }
            for w in &self.adjacency[u] {
                if !level.contains_key(w) {
                    level.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(Distance::Infinite)
    }

    /// BFS distances from `a` to every reachable vertex.
    pub fn distances_from(&self, a: &VertexId) -> Result<BTreeMap<VertexId, u64>, GraphError> {
        if !self.contains(a) {
            return Err(GraphError::UnknownVertex { vertex: a.clone() });
        }
        let mut level: BTreeMap<VertexId, u64> = BTreeMap::new();
        level.insert(a.clone(), 0);
        let mut queue = VecDeque::from([a.clone()]);
        while let Some(u) = queue.pop_front() {
            let d = level[&u];
            for w in &self.adjacency[&u] {
                if !level.contains_key(w) {
                    level.insert(w.clone(), d + 1);
                    queue.push_back(w.clone());
                }
            }
        }
        Ok(level)
    }

    /// The induced subgraph on all vertices within distance `r` of `a`,
    /// together with `a` as the distinguished root.
    pub fn neighborhood(&self, a: &VertexId, r: u64) -> Result<RootedGraph, GraphError> {
        let ball: VertexSet = self
            .distances_from(a)?
            .into_iter()
            .filter(|(_, d)| *d <= r)
            .map(|(v, _)| v)
            .collect();
        Ok(RootedGraph {
            graph: self.induced(&ball)?,
            root: a.clone(),
        })
    }

    /// Applies an injective renaming to every vertex.
    pub fn relabel(&self, f: impl Fn(&VertexId) -> VertexId) -> Result<FiniteGraph, GraphError> {
        let mut mapped = VertexSet::new();
        for v in &self.vertices {
            if !mapped.insert(f(v)) {
                return Err(GraphError::RelabelCollision { vertex: v.clone() });
            }
        }
        FiniteGraph::new(
            self.vertices.iter().map(&f),
            self.edges.iter().map(|e| (f(&e.0), f(&e.1))),
        )
    }

    /// Parses the JSON wire format.
    pub fn from_json(text: &str) -> Result<FiniteGraph, GraphJsonError> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| GraphJsonError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut vertices = VertexSet::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            if !vertices.insert(VertexId::new(v.clone())) {
                return Err(GraphJsonError::Invalid {
                    location: format!("vertices[{i}]"),
                    message: format!("duplicate vertex {v:?}"),
                });
            }
        }
        let mut pairs = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, (a, b)) in raw.edges.iter().enumerate() {
            let location = format!("edges[{i}]");
            let (va, vb) = (VertexId::new(a.clone()), VertexId::new(b.clone()));
            for v in [&va, &vb] {
                if !vertices.contains(v) {
                    return Err(GraphJsonError::Invalid {
                        location: location.clone(),
                        message: format!("unknown endpoint {:?}", v.as_str()),
                    });
                }
            }
            if va == vb {
                return Err(GraphJsonError::Invalid {
                    location,
                    message: format!("self-loop at {a:?}"),
                });
            }
            let key = if va < vb {
                (va.clone(), vb.clone())
            } else {
                (vb.clone(), va.clone())
            };
            if !seen.insert(key) {
                return Err(GraphJsonError::Invalid {
                    location,
                    message: format!("duplicate edge {a:?}-{b:?}"),
                });
            }
            pairs.push((va, vb));
        }
        FiniteGraph::new(vertices, pairs).map_err(|e| GraphJsonError::Invalid {
            location: "graph".to_string(),
            message: e.to_string(),
        })
    }

    /// Serializes to the JSON wire format with sorted vertices and edges.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).unwrap()
    }
}

/// A graph with a distinguished root vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedGraph {
    pub graph: FiniteGraph,
    pub root: VertexId,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl From<&FiniteGraph> for GraphJson {
    fn from(g: &FiniteGraph) -> Self {
        GraphJson {
            vertices: g.vertices.iter().map(|v| v.as_str().to_string()).collect(),
            edges: g
                .edges
                .iter()
                .map(|e| (e.0.as_str().to_string(), e.1.as_str().to_string()))
                .collect(),
        }
    }
}

/// Errors from reading the JSON wire format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphJsonError {
    #[error("json syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid graph at {location}: {message}")]
    Invalid { location: String, message: String },
}

fn close_cycle(
    parent: &BTreeMap<VertexId, Option<VertexId>>,
    u: &VertexId,
    w: &VertexId,
) -> Vec<VertexId> {
    let ancestors = |mut v: VertexId| {
        let mut path = vec![v.clone()];
        while let Some(Some(p)) = parent.get(&v) {
            path.push(p.clone());
            v = p.clone();
        }
        path
    };
    let up_u = ancestors(u.clone());
    let up_w = ancestors(w.clone());
    let set_u: BTreeSet<&VertexId> = up_u.iter().collect();
    let meet = up_w.iter().find(|v| set_u.contains(*v)).unwrap().clone();
    let mut cycle: Vec<VertexId> = up_u
        .iter()
        .take_while(|v| **v != meet)
        .cloned()
        .collect();
    cycle.push(meet.clone());
    let mut back: Vec<VertexId> = up_w.iter().take_while(|v| **v != meet).cloned().collect();
    back.reverse();
    cycle.extend(back);
    cycle.push(u.clone());
    cycle
}

fn compute_is_forest(vertices: &VertexSet, adjacency: &BTreeMap<VertexId, VertexSet>) -> bool {
    // A graph is a forest iff every component has exactly size - 1 edges;
    // equivalently BFS never meets a visited vertex except its parent.
    let mut seen = VertexSet::new();
    for start in vertices {
        if seen.contains(start) {
            continue;
        }
        seen.insert(start.clone());
        let mut queue = VecDeque::from([(start.clone(), None::<VertexId>)]);
        while let Some((u, from)) = queue.pop_front() {
            for w in &adjacency[&u] {
                if Some(w) == from.as_ref() {
                    continue;
                }
                if !seen.insert(w.clone()) {
                    return false;
                }
                queue.push_back((w.clone(), Some(u.clone())));
            }
        }
    }
    true
}

/// Graph distance, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u64),
    Infinite,
}

impl Distance {
    pub fn is_finite(&self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

/// The index of a forest class: a natural number or `omega`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassIndex {
    Finite(u32),
    Omega,
}

impl fmt::Display for ClassIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassIndex::Finite(n) => write!(f, "{n}"),
            ClassIndex::Omega => f.write_str("omega"),
        }
    }
}

impl FromStr for ClassIndex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "omega" | "w" => Ok(ClassIndex::Omega),
            _ => s
                .parse::<u32>()
                .map(ClassIndex::Finite)
                .map_err(|_| format!("invalid class index {s:?} (expected a number or \"omega\")")),
        }
    }
}

/// Why a graph fails membership in a class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassViolation {
    /// A cycle (closed vertex sequence) exists, so some subset has
    /// non-positive predimension.
    Cycle { vertices: Vec<VertexId> },
    /// Index 0 only: a vertex has degree above three.
    DegreeExceeded { vertex: VertexId, degree: usize },
    /// Finite index n >= 1: a vertex of degree at least n + 2 starts a
    /// simple path with 2n edges.
    BranchPath {
        vertex: VertexId,
        degree: usize,
        path: Vec<VertexId>,
    },
}

/// Predimension of `subset`: its size minus the number of edges inside it.
pub fn predimension(g: &FiniteGraph, subset: &VertexSet) -> Result<i64, GraphError> {
    Ok(subset.len() as i64 - g.edge_count_within(subset)? as i64)
}

/// Membership check for the class of index `alpha`, with a violation witness
/// on failure. A graph belongs iff it is a forest (every non-empty subset has
/// positive predimension) and, for finite `alpha`, the degree/path axiom for
/// that index holds.
pub fn class_violation(g: &FiniteGraph, alpha: ClassIndex) -> Option<ClassViolation> {
    if let Some(cycle) = g.find_cycle() {
        return Some(ClassViolation::Cycle { vertices: cycle });
    }
    match alpha {
        ClassIndex::Omega => None,
        ClassIndex::Finite(0) => {
            for v in g.vertices() {
                let d = g.degree(v).unwrap();
                if d > 3 {
                    return Some(ClassViolation::DegreeExceeded {
                        vertex: v.clone(),
                        degree: d,
                    });
                }
            }
            None
        }
        ClassIndex::Finite(n) => {
            let need = n as usize + 2;
            let len = 2 * n as usize;
            for v in g.vertices() {
                let d = g.degree(v).unwrap();
                if d < need {
                    continue;
                }
                if let Some(path) = find_simple_path(g, v, len) {
                    return Some(ClassViolation::BranchPath {
                        vertex: v.clone(),
                        degree: d,
                        path,
                    });
                }
            }
            None
        }
    }
}

/// True when `g` belongs to the class of index `alpha`.
pub fn in_class(g: &FiniteGraph, alpha: ClassIndex) -> bool {
    class_violation(g, alpha).is_none()
}

/// Finds a simple path with exactly `edges` edges starting at `start`, all
/// vertices distinct. Returns the vertex sequence (length `edges + 1`).
fn find_simple_path(g: &FiniteGraph, start: &VertexId, edges: usize) -> Option<Vec<VertexId>> {
    fn go(g: &FiniteGraph, path: &mut Vec<VertexId>, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        let last = path.last().unwrap().clone();
        for w in g.neighbors(&last).unwrap() {
            if path.contains(w) {
                continue;
            }
            path.push(w.clone());
            if go(g, path, remaining - 1) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut path = vec![start.clone()];
    if go(g, &mut path, edges) {
        Some(path)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn vs(ids: &[&str]) -> VertexSet {
        ids.iter().map(|s| VertexId::from(*s)).collect()
    }

    fn path(n: usize) -> FiniteGraph {
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        FiniteGraph::new(
            names.iter().map(|s| VertexId::new(s.clone())),
            names
                .windows(2)
                .map(|w| (VertexId::new(w[0].clone()), VertexId::new(w[1].clone()))),
        )
        .unwrap()
    }

    fn star(leaves: usize) -> FiniteGraph {
        let mut vertices = vec![VertexId::from("c")];
        let mut edges = Vec::new();
        for i in 0..leaves {
            let leaf = VertexId::new(format!("l{i}"));
            vertices.push(leaf.clone());
            edges.push((VertexId::from("c"), leaf));
        }
        FiniteGraph::new(vertices, edges).unwrap()
    }

    fn triangle() -> FiniteGraph {
        FiniteGraph::from_named(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        let err = FiniteGraph::from_named(&["a"], &[("a", "a")]).unwrap_err();
        assert!(matches!(err, GraphError::SelfLoop { .. }));
        let err = FiniteGraph::from_named(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, GraphError::DuplicateEdge { .. }));
        let err = FiniteGraph::from_named(&["a"], &[("a", "b")]).unwrap_err();
        assert!(matches!(err, GraphError::UnknownVertex { .. }));
    }

    #[test]
    fn predimension_counts_vertices_minus_edges() {
        let g = path(3);
        assert_eq!(predimension(&g, g.vertices()).unwrap(), 1);
        assert_eq!(predimension(&g, &vs(&["p0", "p2"])).unwrap(), 2);
        assert_eq!(predimension(&g, &VertexSet::new()).unwrap(), 0);
        let t = triangle();
        assert_eq!(predimension(&t, t.vertices()).unwrap(), 0);
        assert!(matches!(
            predimension(&g, &vs(&["zz"])),
            Err(GraphError::UnknownVertex { .. })
        ));
    }

    #[test]
    fn forest_detection_and_cycle_witness() {
        assert!(path(5).is_forest());
        assert!(path(5).find_cycle().is_none());
        let t = triangle();
        assert!(!t.is_forest());
        let cycle = t.find_cycle().unwrap();
        assert_eq!(cycle.first(), cycle.last());
        assert!(cycle.len() >= 4);
        // Each consecutive pair is an edge.
        for w in cycle.windows(2) {
            assert!(t.has_edge(&w[0], &w[1]));
        }
    }

    #[test]
    fn class_membership_omega_is_forest() {
        assert!(in_class(&path(4), ClassIndex::Omega));
        let violation = class_violation(&triangle(), ClassIndex::Omega).unwrap();
        assert!(matches!(violation, ClassViolation::Cycle { .. }));
    }

    #[test]
    fn class_zero_caps_degree_at_three() {
        assert!(in_class(&star(3), ClassIndex::Finite(0)));
        let violation = class_violation(&star(4), ClassIndex::Finite(0)).unwrap();
        assert_eq!(
            violation,
            ClassViolation::DegreeExceeded {
                vertex: VertexId::from("c"),
                degree: 4
            }
        );
    }

    #[test]
    fn class_one_rejects_branch_vertex_with_long_leg() {
        // Star with one leg of length 2: center has degree 3 and starts a
        // 2-edge simple path.
        let g = FiniteGraph::from_named(
            &["c", "a", "b", "d", "e"],
            &[("c", "a"), ("c", "b"), ("c", "d"), ("d", "e")],
        )
        .unwrap();
        let violation = class_violation(&g, ClassIndex::Finite(1)).unwrap();
        match violation {
            ClassViolation::BranchPath { vertex, path, .. } => {
                assert_eq!(vertex, VertexId::from("c"));
                assert_eq!(path.len(), 3);
            }
            other => panic!("unexpected violation {other:?}"),
        }
        // Plain stars are fine: every path from the center has one edge.
        assert!(in_class(&star(5), ClassIndex::Finite(1)));
        // Paths have max degree 2 < 3, so the axiom is vacuous.
        assert!(in_class(&path(9), ClassIndex::Finite(1)));
    }

    #[test]
    fn distance_and_neighborhood() {
        let g = path(5);
        assert_eq!(
            g.dist(&VertexId::from("p0"), &VertexId::from("p3")).unwrap(),
            Distance::Finite(3)
        );
        let mut two = path(2);
        two = two.relabel(|v| VertexId::new(format!("x_{v}"))).unwrap();
        // Disjoint union keeps the components apart.
        let disjoint = FiniteGraph::new(
            g.vertices().iter().cloned().chain(two.vertices().iter().cloned()),
            g.edges()
                .iter()
                .chain(two.edges().iter())
                .map(|e| (e.0.clone(), e.1.clone())),
        )
        .unwrap();
        assert_eq!(
            disjoint
                .dist(&VertexId::from("p0"), &VertexId::from("x_p1"))
                .unwrap(),
            Distance::Infinite
        );
        let ball = g.neighborhood(&VertexId::from("p2"), 1).unwrap();
        assert_eq!(ball.graph.vertex_count(), 3);
        assert_eq!(ball.root, VertexId::from("p2"));
        assert_eq!(ball.graph.edge_count(), 2);
    }

    #[test]
    fn components_are_sorted_and_complete() {
        let g = FiniteGraph::from_named(&["a", "b", "c", "d"], &[("a", "b")]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0], vs(&["a", "b"]));
        assert_eq!(comps[1], vs(&["c"]));
        assert_eq!(comps[2], vs(&["d"]));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let g = FiniteGraph::from_json(r#"{"vertices":["b","a","c"],"edges":[["c","a"],["a","b"]]}"#)
            .unwrap();
        assert_eq!(
            g.to_json(),
            r#"{"vertices":["a","b","c"],"edges":[["a","b"],["a","c"]]}"#
        );
        let back = FiniteGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);

        let err =
            FiniteGraph::from_json(r#"{"vertices":["a","b"],"edges":[["a","b"],["b","a"]]}"#)
                .unwrap_err();
        assert_eq!(
            err.to_string(),
            "invalid graph at edges[1]: duplicate edge \"b\"-\"a\""
        );
        let err = FiniteGraph::from_json(r#"{"vertices":["a"],"edges":[["a","a"]]}"#).unwrap_err();
        assert!(err.to_string().contains("self-loop"));
        let err = FiniteGraph::from_json(r#"{"vertices":["a"],"edges":[["a","z"]]}"#).unwrap_err();
        assert!(err.to_string().contains("unknown endpoint"));
        let err = FiniteGraph::from_json("{").unwrap_err();
        assert!(matches!(err, GraphJsonError::Syntax { .. }));
    }

    #[test]
    fn induced_subgraph_keeps_inner_edges_only() {
        let g = path(4);
        let sub = g.induced(&vs(&["p0", "p1", "p3"])).unwrap();
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edge_count(), 1);
        assert!(sub.has_edge(&VertexId::from("p0"), &VertexId::from("p1")));
    }
}
