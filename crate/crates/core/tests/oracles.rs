//! Cross-checks of the optimized implementations against independent
//! brute-force recomputations and frozen reference values.

mod common;

use std::collections::BTreeMap;

use common::{random_tree, SubsetTable};
use gfl_core::formula::closure::{
    closure_formula_eval, closure_formula_eval_reference, ClosureFormula, DiagramNode, ExtNode,
};
use gfl_core::game::{ef_game, ef_game_reference};
use gfl_core::graph::{
    enumerate_class, enumerate_trees, in_class, predimension, ClassIndex, FiniteGraph, VertexId,
};
use gfl_core::strong::{closure_star, dimension, is_closed, is_weakly_closed, weak_closure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn forests_up_to(n: usize) -> Vec<FiniteGraph> {
    enumerate_class(ClassIndex::Omega, n).expect("enumeration within capacity")
}

#[test]
fn enumeration_counts_match_the_reference_sequences() {
    let mut tree_counts = vec![0usize; 10];
    for t in enumerate_trees(9) {
        tree_counts[t.vertex_count()] += 1;
    }
    assert_eq!(tree_counts, [0, 1, 1, 1, 2, 3, 6, 11, 23, 47]);

    let mut forest_counts = vec![0usize; 9];
    for f in forests_up_to(8) {
        forest_counts[f.vertex_count()] += 1;
    }
    assert_eq!(forest_counts, [1, 1, 2, 3, 6, 10, 20, 37, 76]);
}

#[test]
fn restricted_classes_are_the_membership_filter_of_the_forest_class() {
    let forests = forests_up_to(8);
    for alpha in [
        ClassIndex::Finite(0),
        ClassIndex::Finite(1),
        ClassIndex::Finite(2),
    ] {
        let enumerated = enumerate_class(alpha, 8).unwrap();
        let filtered: Vec<&FiniteGraph> =
            forests.iter().filter(|f| in_class(f, alpha)).collect();
        assert_eq!(enumerated.len(), filtered.len(), "alpha = {alpha:?}");
        for member in &enumerated {
            assert!(member.is_forest());
            assert!(in_class(member, alpha));
        }
    }
}

#[test]
fn closedness_predicates_match_the_subset_definition() {
    for forest in forests_up_to(7) {
        let table = SubsetTable::new(&forest);
        for mask in table.all_masks() {
            let set = table.set(mask);
            assert_eq!(
                is_closed(&forest, &set, None).unwrap(),
                table.closed_within(mask, table.full()),
                "closedness of {set:?} in {}",
                forest.to_json()
            );
            assert_eq!(
                is_weakly_closed(&forest, &set, None).unwrap(),
                table.weakly_closed_within(mask, table.full()),
                "weak closedness of {set:?} in {}",
                forest.to_json()
            );
        }
    }
}

#[test]
fn closures_are_the_unique_minimal_closed_supersets() {
    for forest in forests_up_to(6) {
        let table = SubsetTable::new(&forest);
        for mask in table.all_masks() {
            let set = table.set(mask);

            let minimal = table.minimal_closed_supersets(mask);
            assert_eq!(minimal.len(), 1, "closure must be unique");
            assert_eq!(
                closure_star(&forest, &set).unwrap().closure,
                table.set(minimal[0])
            );

            let weak_minimal = table.minimal_weakly_closed_supersets(mask);
            assert_eq!(weak_minimal.len(), 1, "weak closure must be unique");
            assert_eq!(weak_closure(&forest, &set).unwrap(), table.set(weak_minimal[0]));
        }
    }
}

#[test]
fn dimension_is_the_minimum_predimension_over_supersets() {
    for forest in forests_up_to(7) {
        let table = SubsetTable::new(&forest);
        for mask in table.all_masks() {
            let set = table.set(mask);
            assert_eq!(predimension(&forest, &set).unwrap(), table.delta(mask));

            let mut minimum = i64::MAX;
            for sup in table.all_masks() {
                if sup & mask == mask {
                    minimum = minimum.min(table.delta(sup));
                }
            }
            assert_eq!(dimension(&forest, &set).unwrap() as i64, minimum);
        }
    }
}

#[test]
fn ef_solver_agrees_with_the_unoptimized_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for case in 0..120 {
        let g1 = random_graph(&mut rng, case);
        let g2 = random_graph(&mut rng, case + 1000);
        for k in 0..=3 {
            assert_eq!(
                ef_game(&g1, &g2, k, None).unwrap(),
                ef_game_reference(&g1, &g2, k, None).unwrap(),
                "k = {k}, g1 = {}, g2 = {}",
                g1.to_json(),
                g2.to_json()
            );
        }
    }
}

/// A random graph on up to 5 vertices; forests and non-forests both occur.
fn random_graph(rng: &mut impl Rng, tag: usize) -> FiniteGraph {
    let n = rng.gen_range(0..=5);
    let names: Vec<String> = (0..n).map(|i| format!("g{tag}_{i}")).collect();
    let mut edges: Vec<(&str, &str)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.35) {
                edges.push((&names[i], &names[j]));
            }
        }
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    FiniteGraph::from_named(&refs, &edges).unwrap()
}

#[test]
fn closure_formula_evaluators_agree_on_random_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let ambients: Vec<FiniteGraph> = (0..6)
        .map(|i| {
            let n = rng.gen_range(1..=7);
            random_tree(&mut rng, n, &format!("a{i}_"))
        })
        .collect();

    for round in 0..40 {
        let arity = rng.gen_range(1..=2);
        let base = random_tuple_graph(&mut rng, arity, round);
        let order: Vec<VertexId> = base.vertices().iter().cloned().collect();
        let formula = random_closure_formula(&mut rng, &base, &order, 2);
        for ambient in &ambients {
            let vertices: Vec<VertexId> = ambient.vertices().iter().cloned().collect();
            for _ in 0..12 {
                let tuple: Vec<VertexId> = (0..arity)
                    .map(|_| vertices[rng.gen_range(0..vertices.len())].clone())
                    .collect();
                let fast = closure_formula_eval(ambient, &formula, &tuple);
                let slow = closure_formula_eval_reference(ambient, &formula, &tuple);
                match (fast, slow) {
                    (Ok(a), Ok(b)) => assert_eq!(
                        a,
                        b,
                        "tuple {tuple:?} on {} for {formula:?}",
                        ambient.to_json()
                    ),
                    (a, b) => panic!("evaluators errored differently: {a:?} vs {b:?}"),
                }
            }
        }
    }
}

/// A forest on `arity` vertices named like a designated tuple; edges appear
/// with probability 1/3 where they keep the graph a forest.
fn random_tuple_graph(rng: &mut impl Rng, arity: usize, tag: usize) -> FiniteGraph {
    let names: Vec<String> = (0..arity).map(|i| format!("t{tag}_{i}")).collect();
    let mut edges: Vec<(&str, &str)> = Vec::new();
    for i in 1..arity {
        if rng.gen_bool(1.0 / 3.0) {
            let j = rng.gen_range(0..i);
            edges.push((&names[j], &names[i]));
        }
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    FiniteGraph::from_named(&refs, &edges).unwrap()
}

fn random_closure_formula(
    rng: &mut impl Rng,
    base: &FiniteGraph,
    order: &[VertexId],
    depth: usize,
) -> ClosureFormula {
    let roll = rng.gen_range(0..10);
    match roll {
        0 | 1 | 2 => ClosureFormula::Diagram(
            DiagramNode::new(base.clone(), order.to_vec()).expect("order lists the vertices"),
        ),
        3 => ClosureFormula::not(random_closure_formula(rng, base, order, depth)),
        4 | 5 => {
            let items = vec![
                random_closure_formula(rng, base, order, depth),
                random_closure_formula(rng, base, order, depth),
            ];
            if roll == 4 {
                ClosureFormula::and(items).unwrap()
            } else {
                ClosureFormula::or(items).unwrap()
            }
        }
        _ if depth > 0 => {
            // Extend the base by one or two pendant vertices, each attached
            // to something already present: an intrinsic extension.
            let mut ext = base.clone();
            let mut new_order: Vec<VertexId> = Vec::new();
            let added = rng.gen_range(1..=2);
            for i in 0..added {
                let fresh = VertexId::new(format!("q{depth}_{i}"));
                let mut pool: Vec<VertexId> = ext.vertices().iter().cloned().collect();
                if pool.is_empty() {
                    pool.push(fresh.clone());
                }
                let anchor = pool[rng.gen_range(0..pool.len())].clone();
                ext = extend_with(&ext, &fresh, (&anchor != &fresh).then_some(&anchor));
                new_order.push(fresh);
            }
            let full_order: Vec<VertexId> =
                order.iter().chain(new_order.iter()).cloned().collect();
            let body = random_closure_formula(rng, &ext, &full_order, depth - 1);
            let node = ExtNode::new(ext, order.to_vec(), new_order, body)
                .expect("pendant extensions are intrinsic");
            if rng.gen_bool(0.5) {
                ClosureFormula::ExistsExt(Box::new(node))
            } else {
                ClosureFormula::ForallExt(Box::new(node))
            }
        }
        _ => {
            if rng.gen_bool(0.5) {
                ClosureFormula::True
            } else {
                ClosureFormula::False
            }
        }
    }
}

fn extend_with(g: &FiniteGraph, fresh: &VertexId, anchor: Option<&VertexId>) -> FiniteGraph {
    let mut vertices: Vec<&str> = g.vertices().iter().map(|v| v.as_str()).collect();
    vertices.push(fresh.as_str());
    let mut edges: Vec<(&str, &str)> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = e.endpoints();
            (a.as_str(), b.as_str())
        })
        .collect();
    if let Some(anchor) = anchor {
        edges.push((anchor.as_str(), fresh.as_str()));
    }
    FiniteGraph::from_named(&vertices, &edges).unwrap()
}

#[test]
fn closure_chains_step_through_adjacent_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..30 {
        let size = rng.gen_range(2..=12);
        let tree = random_tree(&mut rng, size, &format!("c{i}_"));
        let vertices: Vec<VertexId> = tree.vertices().iter().cloned().collect();
        let start = vertices[rng.gen_range(0..vertices.len())].clone();
        let result = closure_star(&tree, &[start.clone()].into_iter().collect()).unwrap();
        assert_eq!(result.closure, tree.vertices().clone());

        let mut built: BTreeMap<VertexId, ()> = BTreeMap::new();
        built.insert(start, ());
        for step in &result.chain {
            assert!(step
                .base
                .iter()
                .all(|v| built.contains_key(v)));
            assert!(step
                .base
                .iter()
                .any(|v| tree.has_edge(v, &step.added)));
            built.insert(step.added.clone(), ());
        }
        assert_eq!(built.len(), tree.vertex_count());
    }
}
