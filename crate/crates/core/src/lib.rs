//! Finite combinatorics of generic forest classes.
//!
//! The library works with finite simple graphs under the predimension
//! `delta(A) = |A| - |edges(A)|`. For each class index `alpha` (a natural
//! number or `omega`) the class `K_alpha` consists of the finite graphs in
//! which every non-empty subset has positive predimension (equivalently,
//! forests) and which satisfy an extra degree/path axiom when `alpha` is
//! finite. On top of that sit:
//!
//! * [`graph`]: the graph carrier, predimension, class membership, distance,
//!   neighbourhoods, canonical codes for marked forests, class enumeration,
//!   and subdivided-clique search.
//! * [`strong`]: closed and weakly closed subsets, closures, dimension, and
//!   the classification of extensions into minimal pairs and intrinsic
//!   towers.
//! * [`independence`]: components over a base, d-independence, free joins as
//!   a predicate, and forking/non-forking tests against a caller-supplied
//!   algebraic-closure oracle.
//! * [`formula`]: first-order formulas over the graph signature, a parser and
//!   printer, brute-force evaluation, closedness and diagram builders, the
//!   axioms of the generic theories, and the closure-formula fragment with
//!   its optimized evaluator.
//! * [`game`]: rooted trees, (r,s)-values, Ehrenfeucht-Fraisse games in plain
//!   and distance-preserving modes, and the sufficient-condition certificate
//!   for Duplicator.
//! * [`builder`]: free joins, generic chains with an obligation ledger,
//!   pseudofinite chains, bounded-size elementary approximants, and the
//!   decision procedure for the generic theories of finite index.
//!
//! All operations are deterministic: sets are ordered, enumeration orders are
//! fixed, and ties are broken by vertex id or canonical code.

pub mod builder;
pub mod capacity;
pub mod formula;
pub mod game;
pub mod graph;
pub mod independence;
pub mod strong;

pub use capacity::CapacityError;
pub use graph::{ClassIndex, Distance, FiniteGraph, VertexId, VertexSet};
