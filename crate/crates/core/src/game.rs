//! Rooted trees, (r,s)-values, Ehrenfeucht-Fraisse games in plain and
//! distance-preserving modes, k-similarity of vertices, and a
//! locality-based sufficient condition for Duplicator.
//!
//! The game solver is a memoized minimax over positions. On forests,
//! positions are keyed by canonical codes of the two marked graphs, and
//! candidate moves are deduplicated by the code of the would-be extended
//! position, which collapses automorphic moves; on general graphs the
//! solver falls back to exact-vertex keys. A deliberately naive reference
//! solver double-checks the optimizations.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::capacity::{CapacityError, DEFAULT_GAME_CAPACITY};
use crate::graph::{canonical_code, Distance, FiniteGraph, GraphError, VertexId, VertexSet};

/// Errors raised by the game solvers and value computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Capacity(#[from] CapacityError),
    #[error("graph rooted at {root} must be a connected tree")]
    NotATree { root: VertexId },
    #[error("start pairs must form a partial injection: {0}")]
    BadStartPairs(String),
    #[error("the distance game needs at least one round for the initial selection")]
    ZeroRounds,
    #[error("{0}")]
    BadParameter(String),
}

/// A tree with a distinguished root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    graph: FiniteGraph,
    root: VertexId,
}

impl RootedTree {
    /// Validates that `graph` is a connected forest containing `root`.
    pub fn new(graph: FiniteGraph, root: VertexId) -> Result<Self, GameError> {
        if !graph.contains(&root) {
            return Err(GameError::Graph(GraphError::UnknownVertex {
                vertex: root,
            }));
        }
        if !graph.is_forest() || graph.components().len() != 1 {
            return Err(GameError::NotATree { root });
        }
        Ok(RootedTree { graph, root })
    }

    /// The component of `v` in a forest, rooted at `v`. This is the
    /// canonical way to read a vertex of an unrooted forest as a rooted
    /// tree; value recursions are depth-limited, so no radius cut is
    /// needed.
    pub fn component_at(g: &FiniteGraph, v: &VertexId) -> Result<Self, GameError> {
        let comp = g.component_of(v)?;
        RootedTree::new(g.induced(&comp)?, v.clone())
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    pub fn root(&self) -> &VertexId {
        &self.root
    }
}

/// A child count capped at the parameter `s`: either an exact number in
/// `0..=s` or "more than s".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Finite(u32),
    Many,
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Count::Finite(n) => serializer.serialize_u32(*n),
            Count::Many => serializer.serialize_str("inf"),
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Many => write!(f, "inf"),
        }
    }
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum RSInner {
    /// r = 1: the root's child count, capped.
    Leaf { s: u32, count: Count },
    /// r > 1: for each realized child value, how many children carry it,
    /// capped. Values that do not occur are simply absent (they mean 0).
    Node {
        r: u32,
        s: u32,
        counts: BTreeMap<RSValue, Count>,
    },
}

/// The (r,s)-value of a rooted tree: at r = 1 a capped child count, at
/// larger r a sparse map from child values to capped multiplicities.
/// Shared structurally, compared structurally.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RSValue(Arc<RSInner>);

impl RSValue {
    /// The radius parameter the value was computed at.
    pub fn r(&self) -> u32 {
        match &*self.0 {
            RSInner::Leaf { .. } => 1,
            RSInner::Node { r, .. } => *r,
        }
    }

    /// The cap parameter the value was computed at.
    pub fn s(&self) -> u32 {
        match &*self.0 {
            RSInner::Leaf { s, .. } => *s,
            RSInner::Node { s, .. } => *s,
        }
    }
}

impl fmt::Display for RSValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            RSInner::Leaf { count, .. } => write!(f, "{count}"),
            RSInner::Node { counts, .. } => {
                write!(f, "{{")?;
                for (i, (value, count)) in counts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{value}: {count}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl Serialize for RSValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match &*self.0 {
            RSInner::Leaf { s, count } => {
                let mut st = serializer.serialize_struct("RSValue", 3)?;
                st.serialize_field("r", &1u32)?;
                st.serialize_field("s", s)?;
                st.serialize_field("count", count)?;
                st.end()
            }
            RSInner::Node { r, s, counts } => {
                let pairs: Vec<(&RSValue, &Count)> = counts.iter().collect();
                let mut st = serializer.serialize_struct("RSValue", 3)?;
                st.serialize_field("r", r)?;
                st.serialize_field("s", s)?;
                st.serialize_field("counts", &pairs)?;
                st.end()
            }
        }
    }
}

/// The (r,s)-value of a rooted tree, `r, s >= 1`: at r = 1 the number of
/// children of the root capped at s, at r + 1 the map counting, for each
/// realized (r,s)-value, the children whose subtree carries it, again
/// capped at s.
pub fn rs_value(tree: &RootedTree, r: u32, s: u32) -> Result<RSValue, GameError> {
    if r == 0 || s == 0 {
        return Err(GameError::BadParameter(
            "value parameters r and s must be at least 1".into(),
        ));
    }
    Ok(value_below(&tree.graph, &tree.root, None, r, s))
}

/// The (r,s)-value of the component of `v` in a forest, rooted at `v`.
pub fn vertex_value(g: &FiniteGraph, v: &VertexId, r: u32, s: u32) -> Result<RSValue, GameError> {
    rs_value(&RootedTree::component_at(g, v)?, r, s)
}

fn value_below(g: &FiniteGraph, v: &VertexId, parent: Option<&VertexId>, r: u32, s: u32) -> RSValue {
    let children: Vec<&VertexId> = g
        .neighbors(v)
        .expect("vertex comes from the tree")
        .iter()
        .filter(|n| Some(*n) != parent)
        .collect();
    if r == 1 {
        return RSValue(Arc::new(RSInner::Leaf {
            s,
            count: cap(children.len(), s),
        }));
    }
    let mut tallies: BTreeMap<RSValue, usize> = BTreeMap::new();
    for child in children {
        let value = value_below(g, child, Some(v), r - 1, s);
        *tallies.entry(value).or_insert(0) += 1;
    }
    let counts = tallies
        .into_iter()
        .map(|(value, tally)| (value, cap(tally, s)))
        .collect();
    RSValue(Arc::new(RSInner::Node { r, s, counts }))
}

fn cap(n: usize, s: u32) -> Count {
    if n as u64 > u64::from(s) {
        Count::Many
    } else {
        Count::Finite(n as u32)
    }
}

/// Who wins a game under optimal play.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Spoiler,
    Duplicator,
}

/// Plain back-and-forth or the variant where Duplicator must preserve all
/// pairwise distances exactly (infinite included).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GameMode {
    Plain,
    Distance,
}

/// Whether the initial selection of the distance game consumes the first
/// round (the default reading) or is free, with all rounds played after it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StartPolicy {
    ConsumesRound,
    FreeStart,
}

/// One round of a game transcript.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveRecord {
    pub round: usize,
    /// "left" or "right": the side Spoiler played on.
    pub side: String,
    pub spoiler: VertexId,
    /// Duplicator's reply on the other side; absent when no legal reply
    /// exists.
    pub duplicator: Option<VertexId>,
}

/// The k-round back-and-forth game on two graphs, optionally from matched
/// start pairs. Duplicator wins when, under optimal play, the selected
/// pairs always form a partial isomorphism (equalities, edges, and
/// non-edges) after every round.
pub fn ef_game(
    g1: &FiniteGraph,
    g2: &FiniteGraph,
    k: usize,
    start: Option<&[(VertexId, VertexId)]>,
) -> Result<Winner, GameError> {
    ef_game_capped(g1, g2, k, start, DEFAULT_GAME_CAPACITY)
}

/// As [`ef_game`] with an explicit per-side capacity bound.
pub fn ef_game_capped(
    g1: &FiniteGraph,
    g2: &FiniteGraph,
    k: usize,
    start: Option<&[(VertexId, VertexId)]>,
    capacity: usize,
) -> Result<Winner, GameError> {
    solve(g1, g2, k, start.unwrap_or(&[]), GameMode::Plain, capacity)
}

/// Unmemoized, unoptimized minimax over raw vertices. Exists to keep
/// [`ef_game`] honest; exponential, so keep the inputs small.
pub fn ef_game_reference(
    g1: &FiniteGraph,
    g2: &FiniteGraph,
    k: usize,
    start: Option<&[(VertexId, VertexId)]>,
) -> Result<Winner, GameError> {
    let start = start.unwrap_or(&[]);
    validate_start(g1, g2, start)?;
    let mut pairs = start.to_vec();
    for i in 0..pairs.len() {
        for j in 0..i {
            if !reference_consistent(g1, g2, GameMode::Plain, &pairs[j], &pairs[i])? {
                return Ok(Winner::Spoiler);
            }
        }
    }
    Ok(if reference_wins(g1, g2, GameMode::Plain, &mut pairs, k)? {
        Winner::Duplicator
    } else {
        Winner::Spoiler
    })
}

/// As [`ef_game`], also returning one principal line of play: Spoiler's
/// refutation when Spoiler wins, an illustrative exchange otherwise.
pub fn ef_game_with_transcript(
    g1: &FiniteGraph,
    g2: &FiniteGraph,
    k: usize,
    start: Option<&[(VertexId, VertexId)]>,
) -> Result<(Winner, Vec<MoveRecord>), GameError> {
    let start = start.unwrap_or(&[]);
    CapacityError::check("game side", g1.vertex_count(), DEFAULT_GAME_CAPACITY)?;
    CapacityError::check("game side", g2.vertex_count(), DEFAULT_GAME_CAPACITY)?;
    validate_start(g1, g2, start)?;
    let mut solver = Solver::new(g1, g2, GameMode::Plain);
    let mut pairs = start.to_vec();
    if !solver.start_consistent(&pairs) {
        return Ok((Winner::Spoiler, Vec::new()));
    }
    let winner = if solver.duplicator_wins(&mut pairs, k) {
        Winner::Duplicator
    } else {
        Winner::Spoiler
    };
    let mut line = Vec::new();
    let mut pairs = start.to_vec();
    solver.principal_line(&mut pairs, k, start.len(), &mut line);
    Ok((winner, line))
}

/// The k-round distance game: the pair (a, b) is selected up front and
/// counts as round 1 by default, then play continues with Duplicator
/// obliged to preserve all pairwise distances exactly.
pub fn distance_ef_game(
    g1: &FiniteGraph,
    a: &VertexId,
    g2: &FiniteGraph,
    b: &VertexId,
    k: usize,
) -> Result<Winner, GameError> {
    distance_ef_game_with_policy(g1, a, g2, b, k, StartPolicy::ConsumesRound)
}

/// As [`distance_ef_game`], with the initial-selection reading made
/// explicit. `FreeStart` plays all k rounds after the initial pair, which
/// is the reading under which the textbook examples of the game come out.
pub fn distance_ef_game_with_policy(
    g1: &FiniteGraph,
    a: &VertexId,
    g2: &FiniteGraph,
    b: &VertexId,
    k: usize,
    policy: StartPolicy,
) -> Result<Winner, GameError> {
    if k == 0 {
        return Err(GameError::ZeroRounds);
    }
    let rounds = match policy {
        StartPolicy::ConsumesRound => k - 1,
        StartPolicy::FreeStart => k,
    };
    let start = [(a.clone(), b.clone())];
    solve(g1, g2, rounds, &start, GameMode::Distance, DEFAULT_GAME_CAPACITY)
}

/// Whether `a` and `b` have k-similar r-neighbourhoods: Duplicator wins
/// the k-round distance game on the two neighbourhoods started by
/// selecting `a` and `b`.
pub fn k_similar(
    g1: &FiniteGraph,
    a: &VertexId,
    g2: &FiniteGraph,
    b: &VertexId,
    k: usize,
    r: u64,
) -> Result<bool, GameError> {
    k_similar_with_policy(g1, a, g2, b, k, r, StartPolicy::ConsumesRound)
}

/// As [`k_similar`] with the initial-selection reading made explicit.
pub fn k_similar_with_policy(
    g1: &FiniteGraph,
    a: &VertexId,
    g2: &FiniteGraph,
    b: &VertexId,
    k: usize,
    r: u64,
    policy: StartPolicy,
) -> Result<bool, GameError> {
    let n1 = g1.neighborhood(a, r)?;
    let n2 = g2.neighborhood(b, r)?;
    let winner = distance_ef_game_with_policy(&n1.graph, &n1.root, &n2.graph, &n2.root, k, policy)?;
    Ok(winner == Winner::Duplicator)
}

/// A sufficient condition for Duplicator to win the k-round game on two
/// forests, with r = (3^k - 1) / 2: in both directions, every vertex of
/// one side must admit, against any k - 1 vertices of the other side, a
/// k-similar partner farther than 2r + 1 from all of them. `true` is a
/// certificate; `false` is inconclusive. Similarity is taken in the strong
/// (free-start) reading, which is what the certificate needs.
pub fn duplicator_sufficient(
    g1: &FiniteGraph,
    g2: &FiniteGraph,
    k: usize,
) -> Result<bool, GameError> {
    duplicator_sufficient_capped(g1, g2, k, DEFAULT_GAME_CAPACITY)
}

/// As [`duplicator_sufficient`] with an explicit per-side capacity bound.
pub fn duplicator_sufficient_capped(
    g1: &FiniteGraph,
    g2: &FiniteGraph,
    k: usize,
    capacity: usize,
) -> Result<bool, GameError> {
    if k == 0 {
        return Err(GameError::BadParameter(
            "the sufficiency criterion needs at least one round".into(),
        ));
    }
    CapacityError::check("duplicator_sufficient rounds", k, 12)?;
    CapacityError::check("duplicator_sufficient side", g1.vertex_count(), capacity)?;
    CapacityError::check("duplicator_sufficient side", g2.vertex_count(), capacity)?;
    let r = (3u64.pow(k as u32) - 1) / 2;
    let mut cache = SimilarityCache::new();
    Ok(spread_condition(g1, g2, k, r, false, &mut cache)?
        && spread_condition(g2, g1, k, r, true, &mut cache)?)
}

/// Caches k-similarity verdicts by the canonical codes of the two rooted
/// neighbourhoods (when both are forests), so isomorphic copies are
/// decided once.
struct SimilarityCache {
    verdicts: HashMap<(String, String), bool>,
}

impl SimilarityCache {
    fn new() -> Self {
        SimilarityCache {
            verdicts: HashMap::new(),
        }
    }

    fn similar(
        &mut self,
        gx: &FiniteGraph,
        x: &VertexId,
        gy: &FiniteGraph,
        y: &VertexId,
        k: usize,
        r: u64,
        swapped: bool,
    ) -> Result<bool, GameError> {
        let nx = gx.neighborhood(x, r)?;
        let ny = gy.neighborhood(y, r)?;
        let key = if nx.graph.is_forest() && ny.graph.is_forest() {
            let cx = canonical_code(&nx.graph, &[nx.root.clone()])?;
            let cy = canonical_code(&ny.graph, &[ny.root.clone()])?;
            // Similarity is symmetric; store under a fixed orientation.
            Some(if swapped { (cy, cx) } else { (cx, cy) })
        } else {
            None
        };
        if let Some(key) = &key {
            if let Some(&v) = self.verdicts.get(key) {
                return Ok(v);
            }
        }
        let winner = distance_ef_game_with_policy(
            &nx.graph,
            &nx.root,
            &ny.graph,
            &ny.root,
            k,
            StartPolicy::FreeStart,
        )?;
        let verdict = winner == Winner::Duplicator;
        if let Some(key) = key {
            self.verdicts.insert(key, verdict);
        }
        Ok(verdict)
    }
}

/// One direction of the criterion: for every challenge y in `gy`, the set
/// of k-similar responses in `gx` cannot be blocked by k - 1 balls of
/// radius 2r + 1, i.e. against any k - 1 vertices of `gx` a response
/// farther than 2r + 1 from all of them survives.
fn spread_condition(
    gx: &FiniteGraph,
    gy: &FiniteGraph,
    k: usize,
    r: u64,
    swapped: bool,
    cache: &mut SimilarityCache,
) -> Result<bool, GameError> {
    let threshold = 2 * r + 1;
    let xs: Vec<VertexId> = gx.vertices().iter().cloned().collect();
    let mut reach: HashMap<VertexId, BTreeMap<VertexId, u64>> = HashMap::new();
    for x in &xs {
        reach.insert(x.clone(), gx.distances_from(x)?);
    }
    let near = |a: &VertexId, b: &VertexId| -> bool {
        reach[a].get(b).map(|&d| d <= threshold).unwrap_or(false)
    };
    for y in gy.vertices() {
        let mut responses = Vec::new();
        for x in &xs {
            if cache.similar(gx, x, gy, y, k, r, swapped)? {
                responses.push(x.clone());
            }
        }
        if blockable(&responses, k - 1, &xs, &near) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `budget` balls centred in `xs` can cover all of `targets`.
/// Branches on the centres that could cover the first uncovered target,
/// which keeps the search exact and shallow.
fn blockable(
    targets: &[VertexId],
    budget: usize,
    xs: &[VertexId],
    near: &dyn Fn(&VertexId, &VertexId) -> bool,
) -> bool {
    let first = match targets.first() {
        None => return true,
        Some(f) => f,
    };
    if budget == 0 {
        return false;
    }
    for centre in xs.iter().filter(|c| near(c, first)) {
        let rest: Vec<VertexId> = targets
            .iter()
            .filter(|t| !near(centre, t))
            .cloned()
            .collect();
        if blockable(&rest, budget - 1, xs, near) {
            return true;
        }
    }
    false
}

fn solve(
    g1: &FiniteGraph,
    g2: &FiniteGraph,
    rounds: usize,
    start: &[(VertexId, VertexId)],
    mode: GameMode,
    capacity: usize,
) -> Result<Winner, GameError> {
    CapacityError::check("game side", g1.vertex_count(), capacity)?;
    CapacityError::check("game side", g2.vertex_count(), capacity)?;
    validate_start(g1, g2, start)?;
    let mut solver = Solver::new(g1, g2, mode);
    let mut pairs = start.to_vec();
    if !solver.start_consistent(&pairs) {
        return Ok(Winner::Spoiler);
    }
    Ok(if solver.duplicator_wins(&mut pairs, rounds) {
        Winner::Duplicator
    } else {
        Winner::Spoiler
    })
}

/// Start pairs must name existing vertices and form a partial injection.
fn validate_start(
    g1: &FiniteGraph,
    g2: &FiniteGraph,
    start: &[(VertexId, VertexId)],
) -> Result<(), GameError> {
    for (a, b) in start {
        if !g1.contains(a) {
            return Err(GameError::BadStartPairs(format!(
                "{a} is not a vertex of the left graph"
            )));
        }
        if !g2.contains(b) {
            return Err(GameError::BadStartPairs(format!(
                "{b} is not a vertex of the right graph"
            )));
        }
    }
    for (i, (a, b)) in start.iter().enumerate() {
        for (c, d) in &start[..i] {
            if (a == c) != (b == d) {
                return Err(GameError::BadStartPairs(format!(
                    "pairs ({c}, {d}) and ({a}, {b}) do not respect equality"
                )));
            }
        }
    }
    Ok(())
}

/// Per-graph data the solver precomputes: the vertex list, forest-ness,
/// components with their unmarked canonical codes, and lazily filled
/// single-source distance maps.
struct SideData<'a> {
    graph: &'a FiniteGraph,
    vertices: Vec<VertexId>,
    forest: bool,
    components: Vec<VertexSet>,
    comp_of: BTreeMap<VertexId, usize>,
    comp_codes: Vec<String>,
    distances: HashMap<VertexId, BTreeMap<VertexId, u64>>,
}

impl<'a> SideData<'a> {
    fn new(graph: &'a FiniteGraph) -> Self {
        let vertices: Vec<VertexId> = graph.vertices().iter().cloned().collect();
        let forest = graph.is_forest();
        let components = graph.components();
        let mut comp_of = BTreeMap::new();
        for (i, comp) in components.iter().enumerate() {
            for v in comp {
                comp_of.insert(v.clone(), i);
            }
        }
        let comp_codes = if forest {
            components
                .iter()
                .map(|comp| {
                    let induced = graph.induced(comp).expect("component is a subset");
                    canonical_code(&induced, &[]).expect("component of a forest is a tree")
                })
                .collect()
        } else {
            Vec::new()
        };
        SideData {
            graph,
            vertices,
            forest,
            components,
            comp_of,
            comp_codes,
            distances: HashMap::new(),
        }
    }

    fn distance(&mut self, a: &VertexId, b: &VertexId) -> Distance {
        let map = self.distances.entry(a.clone()).or_insert_with(|| {
            self.graph
                .distances_from(a)
                .expect("vertex comes from the graph")
        });
        match map.get(b) {
            Some(&d) => Distance::Finite(d),
            None => Distance::Infinite,
        }
    }

    /// An isomorphism-complete key for the graph with `marks` as an
    /// ordered tuple: the marked components are re-coded with the marks,
    /// the rest contribute their precomputed unmarked codes. Only valid on
    /// forests.
    fn marked_key(&self, marks: &[VertexId]) -> String {
        let mut marked: BTreeSet<usize> = BTreeSet::new();
        for m in marks {
            marked.insert(self.comp_of[m]);
        }
        let mut union = VertexSet::new();
        for &i in &marked {
            union.extend(self.components[i].iter().cloned());
        }
        let marked_code = if union.is_empty() {
            String::new()
        } else {
            let induced = self.graph.induced(&union).expect("components are subsets");
            canonical_code(&induced, marks).expect("marked part of a forest")
        };
        let mut rest: Vec<&str> = self
            .comp_codes
            .iter()
            .enumerate()
            .filter(|(i, _)| !marked.contains(i))
            .map(|(_, c)| c.as_str())
            .collect();
        rest.sort_unstable();
        format!("{marked_code}#{}", rest.join("+"))
    }

    /// Exact-vertex fallback key for non-forests.
    fn plain_key(&self, marks: &[VertexId]) -> String {
        marks
            .iter()
            .map(|v| v.as_str())
            .collect::<Vec<_>>()
            .join("\u{1f}")
    }

    fn key(&self, marks: &[VertexId]) -> String {
        if self.forest {
            self.marked_key(marks)
        } else {
            self.plain_key(marks)
        }
    }
}

struct Solver<'a> {
    left: SideData<'a>,
    right: SideData<'a>,
    mode: GameMode,
    memo: HashMap<(String, String, usize), bool>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Turn {
    Left,
    Right,
}

impl<'a> Solver<'a> {
    fn new(g1: &'a FiniteGraph, g2: &'a FiniteGraph, mode: GameMode) -> Self {
        Solver {
            left: SideData::new(g1),
            right: SideData::new(g2),
            mode,
            memo: HashMap::new(),
        }
    }

    /// Checks the start position pair by pair (later pairs against earlier
    /// ones), mirroring how positions are grown during play.
    fn start_consistent(&mut self, pairs: &[(VertexId, VertexId)]) -> bool {
        for i in 0..pairs.len() {
            let (a, b) = pairs[i].clone();
            if !self.consistent(&pairs[..i], &a, &b) {
                return false;
            }
        }
        true
    }

    /// Whether appending (a, b) keeps the position a partial isomorphism
    /// (and distance-preserving in distance mode). Earlier pairs are
    /// assumed consistent.
    fn consistent(&mut self, pairs: &[(VertexId, VertexId)], a: &VertexId, b: &VertexId) -> bool {
        for (x, y) in pairs {
            if (a == x) != (b == y) {
                return false;
            }
            match self.mode {
                GameMode::Plain => {
                    if self.left.graph.has_edge(a, x) != self.right.graph.has_edge(b, y) {
                        return false;
                    }
                }
                GameMode::Distance => {
                    if self.left.distance(a, x) != self.right.distance(b, y) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn duplicator_wins(&mut self, pairs: &mut Vec<(VertexId, VertexId)>, rounds: usize) -> bool {
        if rounds == 0 {
            return true;
        }
        if rounds == 1 {
            return self.last_round_survivable(pairs);
        }
        let key = self.position_key(pairs, rounds);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut verdict = true;
        'sides: for turn in [Turn::Left, Turn::Right] {
            let spoiler_moves = self.candidate_reps(pairs, turn);
            let responses = self.candidate_reps(pairs, other(turn));
            for v in &spoiler_moves {
                let mut answered = false;
                for w in &responses {
                    let (a, b) = orient(turn, v, w);
                    if !self.consistent(pairs, a, b) {
                        continue;
                    }
                    pairs.push((a.clone(), b.clone()));
                    let win = self.duplicator_wins(pairs, rounds - 1);
                    pairs.pop();
                    if win {
                        answered = true;
                        break;
                    }
                }
                if !answered {
                    verdict = false;
                    break 'sides;
                }
            }
        }
        self.memo.insert(key, verdict);
        verdict
    }

    /// With one round left, Duplicator survives iff the two sides realize
    /// the same set of relation profiles against the selected tuples:
    /// a candidate's profile (equality/adjacency, or exact distance, to
    /// each selected vertex) decides consistency outright.
    fn last_round_survivable(&mut self, pairs: &[(VertexId, VertexId)]) -> bool {
        let left: BTreeSet<Vec<Distance>> = self.profile_set(pairs, Turn::Left);
        let right: BTreeSet<Vec<Distance>> = self.profile_set(pairs, Turn::Right);
        left == right
    }

    fn profile_set(&mut self, pairs: &[(VertexId, VertexId)], turn: Turn) -> BTreeSet<Vec<Distance>> {
        let candidates = match turn {
            Turn::Left => self.left.vertices.clone(),
            Turn::Right => self.right.vertices.clone(),
        };
        let mut out = BTreeSet::new();
        for v in &candidates {
            let mut profile = Vec::with_capacity(pairs.len());
            for (x, y) in pairs {
                let anchor = match turn {
                    Turn::Left => x,
                    Turn::Right => y,
                };
                let entry = match self.mode {
                    GameMode::Plain => {
                        let side = match turn {
                            Turn::Left => &self.left,
                            Turn::Right => &self.right,
                        };
                        if v == anchor {
                            Distance::Finite(0)
                        } else if side.graph.has_edge(v, anchor) {
                            Distance::Finite(1)
                        } else {
                            Distance::Infinite
                        }
                    }
                    GameMode::Distance => match turn {
                        Turn::Left => self.left.distance(v, anchor),
                        Turn::Right => self.right.distance(v, anchor),
                    },
                };
                profile.push(entry);
            }
            out.insert(profile);
        }
        out
    }

    /// One representative per isomorphism class of extended position: two
    /// candidate moves on the same side are interchangeable when marking
    /// them after the current tuple yields the same canonical code.
    fn candidate_reps(&self, pairs: &[(VertexId, VertexId)], turn: Turn) -> Vec<VertexId> {
        let side = match turn {
            Turn::Left => &self.left,
            Turn::Right => &self.right,
        };
        if !side.forest {
            return side.vertices.clone();
        }
        let mut marks: Vec<VertexId> = pairs
            .iter()
            .map(|(x, y)| match turn {
                Turn::Left => x.clone(),
                Turn::Right => y.clone(),
            })
            .collect();
        let mut reps: BTreeMap<String, VertexId> = BTreeMap::new();
        for v in &side.vertices {
            marks.push(v.clone());
            let key = side.marked_key(&marks);
            marks.pop();
            reps.entry(key).or_insert_with(|| v.clone());
        }
        reps.into_values().collect()
    }

    fn position_key(&self, pairs: &[(VertexId, VertexId)], rounds: usize) -> (String, String, usize) {
        let mut sorted: Vec<(VertexId, VertexId)> = pairs.to_vec();
        sorted.sort();
        sorted.dedup();
        let lefts: Vec<VertexId> = sorted.iter().map(|(a, _)| a.clone()).collect();
        let rights: Vec<VertexId> = sorted.iter().map(|(_, b)| b.clone()).collect();
        if self.left.forest && self.right.forest {
            (self.left.key(&lefts), self.right.key(&rights), rounds)
        } else {
            (
                self.left.plain_key(&lefts),
                self.right.plain_key(&rights),
                rounds,
            )
        }
    }

    /// Reconstructs one line of play: Spoiler's winning move and the most
    /// resilient reply when Spoiler wins, a first legal exchange otherwise.
    fn principal_line(
        &mut self,
        pairs: &mut Vec<(VertexId, VertexId)>,
        rounds: usize,
        start_len: usize,
        out: &mut Vec<MoveRecord>,
    ) {
        if rounds == 0 {
            return;
        }
        for turn in [Turn::Left, Turn::Right] {
            let spoiler_moves = match turn {
                Turn::Left => self.left.vertices.clone(),
                Turn::Right => self.right.vertices.clone(),
            };
            let responses = match turn {
                Turn::Left => self.right.vertices.clone(),
                Turn::Right => self.left.vertices.clone(),
            };
            for v in &spoiler_moves {
                let mut refuting = true;
                let mut best: Option<VertexId> = None;
                for w in &responses {
                    let (a, b) = orient(turn, v, w);
                    if !self.consistent(pairs, a, b) {
                        continue;
                    }
                    pairs.push((a.clone(), b.clone()));
                    let win = self.duplicator_wins(pairs, rounds - 1);
                    pairs.pop();
                    if best.is_none() {
                        best = Some(w.clone());
                    }
                    if win {
                        refuting = false;
                        best = Some(w.clone());
                        break;
                    }
                }
                if refuting {
                    let side = match turn {
                        Turn::Left => "left",
                        Turn::Right => "right",
                    };
                    out.push(MoveRecord {
                        round: pairs.len() - start_len + 1,
                        side: side.to_string(),
                        spoiler: v.clone(),
                        duplicator: best.clone(),
                    });
                    if let Some(w) = best {
                        let (a, b) = orient(turn, v, &w);
                        pairs.push((a.clone(), b.clone()));
                        self.principal_line(pairs, rounds - 1, start_len, out);
                        pairs.pop();
                    }
                    return;
                }
            }
        }
        // Duplicator holds the position: document a first exchange.
        let spoiler_moves = self.left.vertices.clone();
        for v in &spoiler_moves {
            for w in self.right.vertices.clone() {
                if !self.consistent(pairs, v, &w) {
                    continue;
                }
                pairs.push((v.clone(), w.clone()));
                let win = self.duplicator_wins(pairs, rounds - 1);
                if win {
                    out.push(MoveRecord {
                        round: pairs.len() - start_len,
                        side: "left".to_string(),
                        spoiler: v.clone(),
                        duplicator: Some(w.clone()),
                    });
                    self.principal_line(pairs, rounds - 1, start_len, out);
                    pairs.pop();
                    return;
                }
                pairs.pop();
            }
        }
    }
}

fn other(turn: Turn) -> Turn {
    match turn {
        Turn::Left => Turn::Right,
        Turn::Right => Turn::Left,
    }
}

/// Orders a (spoiler, response) pair as (left vertex, right vertex).
fn orient<'v>(turn: Turn, spoiler: &'v VertexId, response: &'v VertexId) -> (&'v VertexId, &'v VertexId) {
    match turn {
        Turn::Left => (spoiler, response),
        Turn::Right => (response, spoiler),
    }
}

fn reference_consistent(
    g1: &FiniteGraph,
    g2: &FiniteGraph,
    mode: GameMode,
    earlier: &(VertexId, VertexId),
    added: &(VertexId, VertexId),
) -> Result<bool, GameError> {
    let (x, y) = earlier;
    let (a, b) = added;
    if (a == x) != (b == y) {
        return Ok(false);
    }
    match mode {
        GameMode::Plain => Ok(g1.has_edge(a, x) == g2.has_edge(b, y)),
        GameMode::Distance => Ok(g1.dist(a, x)? == g2.dist(b, y)?),
    }
}

fn reference_wins(
    g1: &FiniteGraph,
    g2: &FiniteGraph,
    mode: GameMode,
    pairs: &mut Vec<(VertexId, VertexId)>,
    rounds: usize,
) -> Result<bool, GameError> {
    if rounds == 0 {
        return Ok(true);
    }
    for left_turn in [true, false] {
        let (sp, rs) = if left_turn { (g1, g2) } else { (g2, g1) };
        for v in sp.vertices() {
            let mut answered = false;
            for w in rs.vertices() {
                let pair = if left_turn {
                    (v.clone(), w.clone())
                } else {
                    (w.clone(), v.clone())
                };
                let mut ok = true;
                for earlier in pairs.iter() {
                    if !reference_consistent(g1, g2, mode, earlier, &pair)? {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                pairs.push(pair);
                let win = reference_wins(g1, g2, mode, pairs, rounds - 1)?;
                pairs.pop();
                if win {
                    answered = true;
                    break;
                }
            }
            if !answered {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
