//! Brute-force satisfaction on finite graphs.

use std::collections::BTreeMap;

use crate::capacity::CapacityError;
use crate::graph::{FiniteGraph, GraphError, VertexId};

use super::{free_variables, quantifier_rank, Formula, FormulaError};

/// Evaluates `formula` on `g` under `assignment`, which must cover every
/// free variable. Quantifiers range over all vertices; existential search
/// tries high-degree vertices first and both quantifiers short-circuit.
pub fn eval_formula(
    g: &FiniteGraph,
    formula: &Formula,
    assignment: &BTreeMap<String, VertexId>,
) -> Result<bool, FormulaError> {
    for vertex in assignment.values() {
        if !g.contains(vertex) {
            return Err(GraphError::UnknownVertex {
                vertex: vertex.clone(),
            }
            .into());
        }
    }
    for name in free_variables(formula) {
        if !assignment.contains_key(&name) {
            return Err(FormulaError::UnboundVariable(name));
        }
    }
    let rank = quantifier_rank(formula);
    let work = (g.vertex_count() as u64)
        .saturating_pow(rank)
        .min(usize::MAX as u64) as usize;
    CapacityError::check("eval_formula", work, 200_000_000)?;

    // High-degree vertices first makes existential witnesses and universal
    // counterexamples surface early on sparse graphs.
    let mut order: Vec<VertexId> = g.vertices().iter().cloned().collect();
    order.sort_by_key(|v| (std::cmp::Reverse(g.degree(v).unwrap()), v.clone()));

    let mut env = assignment.clone();
    Ok(eval(g, formula, &mut env, &order))
}

fn eval(
    g: &FiniteGraph,
    formula: &Formula,
    env: &mut BTreeMap<String, VertexId>,
    order: &[VertexId],
) -> bool {
    match formula {
        Formula::True => true,
        Formula::False => false,
        Formula::Edge(a, b) => g.has_edge(&env[a], &env[b]),
        Formula::Equals(a, b) => env[a] == env[b],
        Formula::Not(inner) => !eval(g, inner, env, order),
        Formula::And(items) => items.iter().all(|item| eval(g, item, env, order)),
        Formula::Or(items) => items.iter().any(|item| eval(g, item, env, order)),
        Formula::Implies(lhs, rhs) => !eval(g, lhs, env, order) || eval(g, rhs, env, order),
        Formula::Forall(x, body) => {
            let saved = env.get(x).cloned();
            let mut holds = true;
            for v in order {
                env.insert(x.clone(), v.clone());
                if !eval(g, body, env, order) {
                    holds = false;
                    break;
                }
            }
            restore(env, x, saved);
            holds
        }
        Formula::Exists(x, body) => {
            let saved = env.get(x).cloned();
            let mut holds = false;
            for v in order {
                env.insert(x.clone(), v.clone());
                if eval(g, body, env, order) {
                    holds = true;
                    break;
                }
            }
            restore(env, x, saved);
            holds
        }
    }
}

fn restore(env: &mut BTreeMap<String, VertexId>, x: &str, saved: Option<VertexId>) {
    match saved {
        Some(old) => {
            env.insert(x.to_string(), old);
        }
        None => {
            env.remove(x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn graph(vertices: &[&str], edges: &[(&str, &str)]) -> FiniteGraph {
        FiniteGraph::from_named(vertices, edges).unwrap()
    }

    fn sat(g: &FiniteGraph, text: &str) -> bool {
        eval_formula(g, &parse_formula(text).unwrap(), &BTreeMap::new()).unwrap()
    }

    #[test]
    fn sentences_on_a_path() {
        let p3 = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert!(sat(&p3, "exists x. R(x, x) | true"));
        assert!(!sat(&p3, "exists x. R(x, x)"), "edges are irreflexive");
        assert!(sat(&p3, "forall x. forall y. R(x, y) -> R(y, x)"));
        assert!(sat(&p3, "exists x. exists y. exists z. ~y = z & R(x, y) & R(x, z)"));
        assert!(!sat(&p3, "forall x. exists y. exists z. ~y = z & R(x, y) & R(x, z)"));
    }

    #[test]
    fn free_variables_need_assignments() {
        let p2 = graph(&["a", "b"], &[("a", "b")]);
        let f = parse_formula("R(x1, x2)").unwrap();
        assert!(matches!(
            eval_formula(&p2, &f, &BTreeMap::new()),
            Err(FormulaError::UnboundVariable(name)) if name == "x1"
        ));
        let mut asg = BTreeMap::new();
        asg.insert("x1".to_string(), VertexId::from("a"));
        asg.insert("x2".to_string(), VertexId::from("b"));
        assert!(eval_formula(&p2, &f, &asg).unwrap());
        asg.insert("x2".to_string(), VertexId::from("a"));
        assert!(!eval_formula(&p2, &f, &asg).unwrap());
    }

    #[test]
    fn assignment_vertices_must_exist() {
        let p2 = graph(&["a", "b"], &[("a", "b")]);
        let f = parse_formula("x1 = x1").unwrap();
        let mut asg = BTreeMap::new();
        asg.insert("x1".to_string(), VertexId::from("zz"));
        assert!(matches!(
            eval_formula(&p2, &f, &asg),
            Err(FormulaError::Graph(GraphError::UnknownVertex { .. }))
        ));
    }

    #[test]
    fn quantifiers_over_the_empty_graph() {
        let empty = FiniteGraph::empty();
        assert!(sat(&empty, "forall x. false"));
        assert!(!sat(&empty, "exists x. true"));
    }

    #[test]
    fn shadowed_binders_restore_cleanly() {
        let p2 = graph(&["a", "b"], &[("a", "b")]);
        // Inner exists shadows outer x; after it finishes the outer value
        // must still be in effect.
        assert!(sat(
            &p2,
            "forall x. (exists x. R(x, x)) | (exists y. R(x, y))"
        ));
    }
}
