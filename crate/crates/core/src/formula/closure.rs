//! Closure formulas: the quantifier-elimination target fragment. Atoms are
//! diagrams of finite graphs; quantifiers range over intrinsic extensions
//! of a designated base and are evaluated by searching the closure of the
//! argument tuple, which is sound because every component of an intrinsic
//! extension attaches to its base.
//!
//! The AST is kept separate from [`Formula`]: each quantifier node carries
//! its (base, extension) certificate, which the optimized evaluator
//! exploits. A total translation to plain formulas backs a reference
//! evaluator used for cross-checking.

use std::collections::BTreeMap;

use crate::graph::{canonical_code, FiniteGraph, GraphError, VertexId, VertexSet};
use crate::strong::{classify_extension, closure_star, ExtensionKind};

use super::build::{build_diagram, build_diagram_over, check_order};
use super::{canonical_var, eval_formula, smart_and, smart_or, Formula, FormulaError};

/// A diagram atom: the designated tuple induces a copy of `graph`, with
/// `order` fixing which variable denotes which vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramNode {
    graph: FiniteGraph,
    order: Vec<VertexId>,
}

impl DiagramNode {
    /// Builds a diagram atom; `order` must list each vertex of `graph`
    /// exactly once.
    pub fn new(graph: FiniteGraph, order: Vec<VertexId>) -> Result<Self, FormulaError> {
        check_order(&graph, &[&order])?;
        Ok(DiagramNode { graph, order })
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }
}

/// A quantifier node: the extension graph contains the base as an induced
/// subgraph, the rest is intrinsic over it, and the body speaks about the
/// concatenated tuple (base variables first, new vertices after).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtNode {
    ext: FiniteGraph,
    base_order: Vec<VertexId>,
    new_order: Vec<VertexId>,
    body: ClosureFormula,
    kind: ExtensionKind,
    /// Indices into `new_order` arranged so that every vertex has a
    /// neighbour among the base or earlier entries; exists because the
    /// extension is intrinsic.
    search_order: Vec<usize>,
}

impl ExtNode {
    /// Validates and builds a quantifier node. `base_order` and
    /// `new_order` must partition the vertices of `ext`, the new part must
    /// form an intrinsic extension (in the wide sense that admits minimal
    /// pairs and their weak variants) of the base, and the body's arity
    /// must fit the concatenated tuple.
    pub fn new(
        ext: FiniteGraph,
        base_order: Vec<VertexId>,
        new_order: Vec<VertexId>,
        body: ClosureFormula,
    ) -> Result<Self, FormulaError> {
        check_order(&ext, &[&base_order, &new_order])?;
        let base_set: VertexSet = base_order.iter().cloned().collect();
        let report = classify_extension(&ext, &base_set)?;
        if !intrinsic_family(report.kind) {
            return Err(FormulaError::NotIntrinsicFamily { kind: report.kind });
        }
        let full = base_order.len() + new_order.len();
        if let Some(found) = body.arity() {
            if found != full {
                return Err(FormulaError::ArityMismatch {
                    expected: full,
                    found,
                });
            }
        }
        let search_order = attachment_order(&ext, &base_order, &new_order);
        Ok(ExtNode {
            ext,
            base_order,
            new_order,
            body,
            kind: report.kind,
            search_order,
        })
    }

    pub fn ext(&self) -> &FiniteGraph {
        &self.ext
    }

    pub fn base_order(&self) -> &[VertexId] {
        &self.base_order
    }

    pub fn new_order(&self) -> &[VertexId] {
        &self.new_order
    }

    pub fn body(&self) -> &ClosureFormula {
        &self.body
    }

    /// The classification recorded when the node was validated.
    pub fn kind(&self) -> ExtensionKind {
        self.kind
    }
}

/// The kinds of extension a quantifier node may carry: minimal pairs and
/// intrinsic extensions, in their plain, zero-predimension, and weak
/// variants. All of them satisfy "the extension equals the closure of the
/// base inside it", which grounds the localized witness search.
fn intrinsic_family(kind: ExtensionKind) -> bool {
    matches!(
        kind,
        ExtensionKind::MinimalPair
            | ExtensionKind::ZeroMinimalPair
            | ExtensionKind::WeakMinimalPair
            | ExtensionKind::WeakIntrinsic
            | ExtensionKind::Intrinsic
            | ExtensionKind::ZeroIntrinsic
    )
}

/// Orders the new vertices so each is adjacent to the base or to an
/// earlier new vertex whenever the graph allows it, putting any stragglers
/// last. For intrinsic extensions the straggler case is empty.
fn attachment_order(
    ext: &FiniteGraph,
    base_order: &[VertexId],
    new_order: &[VertexId],
) -> Vec<usize> {
    let mut placed: VertexSet = base_order.iter().cloned().collect();
    let mut remaining: Vec<usize> = (0..new_order.len()).collect();
    let mut order = Vec::with_capacity(new_order.len());
    while !remaining.is_empty() {
        let next = remaining
            .iter()
            .position(|&j| {
                ext.neighbors(&new_order[j])
                    .map(|ns| ns.iter().any(|n| placed.contains(n)))
                    .unwrap_or(false)
            })
            .unwrap_or(0);
        let j = remaining.remove(next);
        placed.insert(new_order[j].clone());
        order.push(j);
    }
    order
}

/// A formula of the closure fragment.
///
/// Use the validating helpers ([`DiagramNode::new`], [`ExtNode::new`],
/// [`ClosureFormula::and`], [`ClosureFormula::or`]) to build instances;
/// the evaluators re-check arities and report mismatches as errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureFormula {
    True,
    False,
    Diagram(DiagramNode),
    ExistsExt(Box<ExtNode>),
    ForallExt(Box<ExtNode>),
    And(Vec<ClosureFormula>),
    Or(Vec<ClosureFormula>),
    Not(Box<ClosureFormula>),
}

impl ClosureFormula {
    /// Conjunction, validating that the operands agree on arity.
    pub fn and(items: Vec<ClosureFormula>) -> Result<Self, FormulaError> {
        compatible_arity(&items)?;
        Ok(ClosureFormula::And(items))
    }

    /// Disjunction, validating that the operands agree on arity.
    pub fn or(items: Vec<ClosureFormula>) -> Result<Self, FormulaError> {
        compatible_arity(&items)?;
        Ok(ClosureFormula::Or(items))
    }

    /// Negation.
    pub fn not(item: ClosureFormula) -> Self {
        ClosureFormula::Not(Box::new(item))
    }

    /// The length of the designated tuple the formula speaks about, or
    /// `None` when any length fits (pure boolean constants).
    pub fn arity(&self) -> Option<usize> {
        match self {
            ClosureFormula::True | ClosureFormula::False => None,
            ClosureFormula::Diagram(node) => Some(node.order.len()),
            ClosureFormula::ExistsExt(node) | ClosureFormula::ForallExt(node) => {
                Some(node.base_order.len())
            }
            ClosureFormula::And(items) | ClosureFormula::Or(items) => {
                items.iter().find_map(|f| f.arity())
            }
            ClosureFormula::Not(inner) => inner.arity(),
        }
    }

    /// Maximum nesting depth of quantifier nodes.
    pub fn depth(&self) -> usize {
        match self {
            ClosureFormula::True | ClosureFormula::False | ClosureFormula::Diagram(_) => 0,
            ClosureFormula::ExistsExt(node) | ClosureFormula::ForallExt(node) => {
                1 + node.body.depth()
            }
            ClosureFormula::And(items) | ClosureFormula::Or(items) => {
                items.iter().map(|f| f.depth()).max().unwrap_or(0)
            }
            ClosureFormula::Not(inner) => inner.depth(),
        }
    }

    /// Total translation into a plain first-order formula with free
    /// variables `x1, ..., xm` for the designated tuple.
    pub fn to_formula(&self) -> Formula {
        match self {
            ClosureFormula::True => Formula::True,
            ClosureFormula::False => Formula::False,
            ClosureFormula::Diagram(node) => build_diagram(&node.graph, &node.order)
                .expect("diagram node was validated at construction"),
            ClosureFormula::ExistsExt(node) => translate_ext(node, true),
            ClosureFormula::ForallExt(node) => translate_ext(node, false),
            ClosureFormula::And(items) => {
                smart_and(items.iter().map(|f| f.to_formula()).collect())
            }
            ClosureFormula::Or(items) => smart_or(items.iter().map(|f| f.to_formula()).collect()),
            ClosureFormula::Not(inner) => Formula::Not(Box::new(inner.to_formula())),
        }
    }
}

/// Ensures all operands that fix an arity fix the same one.
fn compatible_arity(items: &[ClosureFormula]) -> Result<(), FormulaError> {
    let mut seen: Option<usize> = None;
    for item in items {
        if let Some(m) = item.arity() {
            match seen {
                Some(prev) if prev != m => {
                    return Err(FormulaError::ArityMismatch {
                        expected: prev,
                        found: m,
                    });
                }
                _ => seen = Some(m),
            }
        }
    }
    Ok(())
}

fn translate_ext(node: &ExtNode, exists: bool) -> Formula {
    let m = node.base_order.len();
    let t = node.new_order.len();
    let relative = build_diagram_over(&node.ext, &node.base_order, &node.new_order)
        .expect("extension node was validated at construction");
    let body = node.body.to_formula();
    let mut f = if exists {
        smart_and(vec![relative, body])
    } else {
        Formula::Implies(Box::new(relative), Box::new(body))
    };
    for i in (m + 1..=m + t).rev() {
        f = if exists {
            Formula::Exists(canonical_var(i), Box::new(f))
        } else {
            Formula::Forall(canonical_var(i), Box::new(f))
        };
    }
    f
}

/// Evaluates a closure formula at a tuple by localized witness search:
/// quantifier nodes only consider vertices in the closure of the current
/// tuple, which carries every possible intrinsic extension.
pub fn closure_formula_eval(
    g: &FiniteGraph,
    formula: &ClosureFormula,
    tuple: &[VertexId],
) -> Result<bool, FormulaError> {
    check_tuple(g, formula, tuple)?;
    eval_node(g, formula, &mut tuple.to_vec())
}

/// Reference evaluator: translates to a plain formula and defers to
/// [`eval_formula`]. Agrees with [`closure_formula_eval`] everywhere and
/// exists to keep the optimized search honest.
pub fn closure_formula_eval_reference(
    g: &FiniteGraph,
    formula: &ClosureFormula,
    tuple: &[VertexId],
) -> Result<bool, FormulaError> {
    check_tuple(g, formula, tuple)?;
    let mut env = BTreeMap::new();
    for (i, v) in tuple.iter().enumerate() {
        env.insert(canonical_var(i + 1), v.clone());
    }
    eval_formula(g, &formula.to_formula(), &env)
}

fn check_tuple(
    g: &FiniteGraph,
    formula: &ClosureFormula,
    tuple: &[VertexId],
) -> Result<(), FormulaError> {
    for v in tuple {
        if !g.contains(v) {
            return Err(FormulaError::Graph(GraphError::UnknownVertex {
                vertex: v.clone(),
            }));
        }
    }
    if let Some(m) = formula.arity() {
        if m != tuple.len() {
            return Err(FormulaError::ArityMismatch {
                expected: m,
                found: tuple.len(),
            });
        }
    }
    Ok(())
}

fn eval_node(
    g: &FiniteGraph,
    formula: &ClosureFormula,
    tuple: &mut Vec<VertexId>,
) -> Result<bool, FormulaError> {
    match formula {
        ClosureFormula::True => Ok(true),
        ClosureFormula::False => Ok(false),
        ClosureFormula::Diagram(node) => {
            if node.order.len() != tuple.len() {
                return Err(FormulaError::ArityMismatch {
                    expected: node.order.len(),
                    found: tuple.len(),
                });
            }
            for j in 1..tuple.len() {
                for i in 0..j {
                    if tuple[i] == tuple[j]
                        || g.has_edge(&tuple[i], &tuple[j])
                            != node.graph.has_edge(&node.order[i], &node.order[j])
                    {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        ClosureFormula::ExistsExt(node) => eval_ext(g, node, tuple, true),
        ClosureFormula::ForallExt(node) => eval_ext(g, node, tuple, false),
        ClosureFormula::And(items) => {
            for item in items {
                if !eval_node(g, item, tuple)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        ClosureFormula::Or(items) => {
            for item in items {
                if eval_node(g, item, tuple)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        ClosureFormula::Not(inner) => Ok(!eval_node(g, inner, tuple)?),
    }
}

/// Backtracking search for embeddings of the new part over the current
/// tuple, restricted to the closure of the tuple. `exists` selects the
/// quantifier: first satisfying embedding wins, or every embedding must
/// satisfy the body.
fn eval_ext(
    g: &FiniteGraph,
    node: &ExtNode,
    tuple: &mut Vec<VertexId>,
    exists: bool,
) -> Result<bool, FormulaError> {
    let m = node.base_order.len();
    if tuple.len() != m {
        return Err(FormulaError::ArityMismatch {
            expected: m,
            found: tuple.len(),
        });
    }
    let base_set: VertexSet = tuple.iter().cloned().collect();
    let pool: Vec<VertexId> = closure_star(g, &base_set)?
        .closure
        .into_iter()
        .collect();
    let mut placed: Vec<Option<VertexId>> = vec![None; node.new_order.len()];
    // `search` reports whether a decisive embedding exists: a witness for
    // the existential reading, a counterexample for the universal one.
    let decisive = search(g, node, tuple, &pool, &mut placed, 0, exists)?;
    Ok(decisive == exists)
}

fn search(
    g: &FiniteGraph,
    node: &ExtNode,
    tuple: &mut Vec<VertexId>,
    pool: &[VertexId],
    placed: &mut Vec<Option<VertexId>>,
    step: usize,
    exists: bool,
) -> Result<bool, FormulaError> {
    let t = node.new_order.len();
    if step == t {
        let m = tuple.len();
        for slot in placed.iter() {
            tuple.push(slot.clone().expect("all slots filled at a leaf"));
        }
        let holds = eval_node(g, &node.body, tuple)?;
        tuple.truncate(m);
        return Ok(holds == exists);
    }
    let j = node.search_order[step];
    'candidates: for w in pool {
        if tuple.contains(w) || placed.iter().flatten().any(|p| p == w) {
            continue;
        }
        for (i, base) in node.base_order.iter().enumerate() {
            if g.has_edge(&tuple[i], w) != node.ext.has_edge(base, &node.new_order[j]) {
                continue 'candidates;
            }
        }
        for (q, slot) in placed.iter().enumerate() {
            if let Some(p) = slot {
                if g.has_edge(p, w) != node.ext.has_edge(&node.new_order[q], &node.new_order[j]) {
                    continue 'candidates;
                }
            }
        }
        placed[j] = Some(w.clone());
        let decided = search(g, node, tuple, pool, placed, step + 1, exists)?;
        placed[j] = None;
        if decided {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The closure type of a tuple: canonical code of the induced subgraph on
/// the closure of its range, with the tuple as ordered marks. Equal codes
/// mean the marked closures are isomorphic over the tuples.
pub fn closure_type_code(g: &FiniteGraph, tuple: &[VertexId]) -> Result<String, FormulaError> {
    let set: VertexSet = tuple.iter().cloned().collect();
    let closure = closure_star(g, &set)?.closure;
    let induced = g.induced(&closure)?;
    Ok(canonical_code(&induced, tuple)?)
}

/// A witness for a satisfiable closure formula: the first satisfying tuple
/// of `H` in canonical order, together with the induced structure on the
/// closure of its range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub tuple: Vec<VertexId>,
    pub witness: FiniteGraph,
}

/// Searches `h` for the first tuple (in the lexicographic order induced by
/// the canonical vertex order, repeats allowed) satisfying `formula`, and
/// packages it with the induced structure on its closure. Returns `None`
/// when the formula has no witness in `h`.
pub fn realize_closure_formula(
    formula: &ClosureFormula,
    h: &FiniteGraph,
) -> Result<Option<Realization>, FormulaError> {
    let m = formula.arity().unwrap_or(0);
    let vertices: Vec<VertexId> = h.vertices().iter().cloned().collect();
    let n = vertices.len();
    if n == 0 && m > 0 {
        return Ok(None);
    }
    let space = (n.max(1) as u128).saturating_pow(m as u32);
    crate::capacity::CapacityError::check(
        "realize_closure_formula tuples",
        space.min(usize::MAX as u128) as usize,
        10_000_000,
    )?;
    let mut indices = vec![0usize; m];
    loop {
        let tuple: Vec<VertexId> = indices.iter().map(|&i| vertices[i].clone()).collect();
        if closure_formula_eval(h, formula, &tuple)? {
            let set: VertexSet = tuple.iter().cloned().collect();
            let closure = closure_star(h, &set)?.closure;
            let witness = h.induced(&closure)?;
            return Ok(Some(Realization { tuple, witness }));
        }
        // Advance the odometer, most significant digit first, so tuples
        // appear in lexicographic order.
        let mut pos = m;
        while pos > 0 {
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < n {
                break;
            }
            indices[pos] = 0;
            if pos == 0 {
                return Ok(None);
            }
        }
        if m == 0 {
            return Ok(None);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strong::is_closed;

    fn vid(s: &str) -> VertexId {
        VertexId::new(s)
    }

    /// The node "a point with a pendant neighbour over the point".
    fn pendant_node(body: ClosureFormula) -> ExtNode {
        let ext = FiniteGraph::from_named(&["b", "n"], &[("b", "n")]).unwrap();
        ExtNode::new(ext, vec![vid("b")], vec![vid("n")], body).unwrap()
    }

    #[test]
    fn ext_node_rejects_closed_bases() {
        let ext = FiniteGraph::from_named(&["b", "n"], &[]).unwrap();
        let got = ExtNode::new(ext, vec![vid("b")], vec![vid("n")], ClosureFormula::True);
        assert!(matches!(
            got,
            Err(FormulaError::NotIntrinsicFamily {
                kind: ExtensionKind::Closed
            })
        ));
    }

    #[test]
    fn ext_node_rejects_arity_mismatched_bodies() {
        let ext = FiniteGraph::from_named(&["b", "n"], &[("b", "n")]).unwrap();
        let point = FiniteGraph::from_named(&["p"], &[]).unwrap();
        let body = ClosureFormula::Diagram(DiagramNode::new(point, vec![vid("p")]).unwrap());
        let got = ExtNode::new(ext, vec![vid("b")], vec![vid("n")], body);
        assert!(matches!(
            got,
            Err(FormulaError::ArityMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn pendant_extension_exists_on_a_leaf_but_not_an_isolated_vertex() {
        let formula = ClosureFormula::ExistsExt(Box::new(pendant_node(ClosureFormula::True)));
        let g = FiniteGraph::from_named(&["u", "v", "w"], &[("u", "v")]).unwrap();
        assert!(closure_formula_eval(&g, &formula, &[vid("u")]).unwrap());
        assert!(closure_formula_eval(&g, &formula, &[vid("v")]).unwrap());
        assert!(!closure_formula_eval(&g, &formula, &[vid("w")]).unwrap());
        for v in ["u", "v", "w"] {
            assert_eq!(
                closure_formula_eval(&g, &formula, &[vid(v)]).unwrap(),
                closure_formula_eval_reference(&g, &formula, &[vid(v)]).unwrap()
            );
        }
    }

    #[test]
    fn forall_ext_bounds_neighbour_properties() {
        // Every pendant neighbour of the point is itself extendable: holds
        // at the middle of a path of 5, fails at the middle of a path of 3.
        let inner_ext = FiniteGraph::from_named(&["b", "n", "m"], &[("b", "n"), ("n", "m")])
            .unwrap();
        let inner = ClosureFormula::ExistsExt(Box::new(
            ExtNode::new(
                inner_ext,
                vec![vid("b"), vid("n")],
                vec![vid("m")],
                ClosureFormula::True,
            )
            .unwrap(),
        ));
        let formula = ClosureFormula::ForallExt(Box::new(pendant_node(inner)));
        let p5 = FiniteGraph::from_named(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")],
        )
        .unwrap();
        let p3 = FiniteGraph::from_named(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(closure_formula_eval(&p5, &formula, &[vid("c")]).unwrap());
        assert!(!closure_formula_eval(&p3, &formula, &[vid("b")]).unwrap());
        assert_eq!(
            closure_formula_eval_reference(&p5, &formula, &[vid("c")]).unwrap(),
            true
        );
        assert_eq!(
            closure_formula_eval_reference(&p3, &formula, &[vid("b")]).unwrap(),
            false
        );
    }

    #[test]
    fn diagram_atom_checks_induced_copies() {
        let edge = FiniteGraph::from_named(&["x", "y"], &[("x", "y")]).unwrap();
        let formula =
            ClosureFormula::Diagram(DiagramNode::new(edge, vec![vid("x"), vid("y")]).unwrap());
        let g = FiniteGraph::from_named(&["u", "v", "w"], &[("u", "v")]).unwrap();
        assert!(closure_formula_eval(&g, &formula, &[vid("u"), vid("v")]).unwrap());
        assert!(!closure_formula_eval(&g, &formula, &[vid("u"), vid("w")]).unwrap());
        assert!(!closure_formula_eval(&g, &formula, &[vid("u"), vid("u")]).unwrap());
        assert!(matches!(
            closure_formula_eval(&g, &formula, &[vid("u")]),
            Err(FormulaError::ArityMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn translation_of_pendant_exists_reads_naturally() {
        let formula = ClosureFormula::ExistsExt(Box::new(pendant_node(ClosureFormula::True)));
        assert_eq!(
            formula.to_formula().to_string(),
            "exists x2. ~(x1 = x2) & R(x1, x2)"
        );
    }

    #[test]
    fn closure_type_codes_respect_automorphisms() {
        let star = FiniteGraph::from_named(
            &["c", "l1", "l2", "l3"],
            &[("c", "l1"), ("c", "l2"), ("c", "l3")],
        )
        .unwrap();
        let a = closure_type_code(&star, &[vid("l1")]).unwrap();
        let b = closure_type_code(&star, &[vid("l2")]).unwrap();
        let c = closure_type_code(&star, &[vid("c")]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn realize_finds_the_first_edge_component() {
        let edge = FiniteGraph::from_named(&["x", "y"], &[("x", "y")]).unwrap();
        let formula =
            ClosureFormula::Diagram(DiagramNode::new(edge, vec![vid("x"), vid("y")]).unwrap());
        let h = FiniteGraph::from_named(&["a", "b", "c", "d"], &[("c", "d")]).unwrap();
        let found = realize_closure_formula(&formula, &h).unwrap().unwrap();
        assert_eq!(found.tuple, vec![vid("c"), vid("d")]);
        assert_eq!(found.witness.vertex_count(), 2);
        assert_eq!(found.witness.edge_count(), 1);
        // The witness is closed in the host, as the re-embedding story needs.
        assert!(is_closed(&h, found.witness.vertices(), None).unwrap());
        let unsat = ClosureFormula::and(vec![
            formula.clone(),
            ClosureFormula::not(formula.clone()),
        ])
        .unwrap();
        assert!(realize_closure_formula(&unsat, &h).unwrap().is_none());
    }

    #[test]
    fn boolean_constructors_enforce_arity_agreement() {
        let edge = FiniteGraph::from_named(&["x", "y"], &[("x", "y")]).unwrap();
        let two = ClosureFormula::Diagram(
            DiagramNode::new(edge, vec![vid("x"), vid("y")]).unwrap(),
        );
        let point = FiniteGraph::from_named(&["p"], &[]).unwrap();
        let one = ClosureFormula::Diagram(DiagramNode::new(point, vec![vid("p")]).unwrap());
        assert!(ClosureFormula::and(vec![two.clone(), one.clone()]).is_err());
        assert!(ClosureFormula::or(vec![two.clone(), ClosureFormula::True]).is_ok());
        assert_eq!(
            ClosureFormula::and(vec![ClosureFormula::True, two])
                .unwrap()
                .arity(),
            Some(2)
        );
        assert_eq!(one.depth(), 0);
    }
}
