//! First-order formulas over graphs: a symmetric irreflexive edge relation
//! `R`, equality, boolean connectives, and vertex quantifiers.
//!
//! Printing and parsing are mutually inverse on normalized formulas, and
//! evaluation is exhaustive quantifier search with short-circuiting, so
//! every result can be replayed against the definition.

pub mod build;
pub mod closure;
mod eval;
mod parse;

pub use eval::eval_formula;
pub use parse::{parse_formula, ParseError};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::capacity::CapacityError;
use crate::graph::{GraphError, VertexId};
use crate::strong::{ExtensionKind, StructureError};

/// Errors raised while building or evaluating formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("variable {0} has no assigned vertex")]
    UnboundVariable(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Capacity(#[from] CapacityError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("vertex order must list each vertex of the graph exactly once; {0} is misplaced")]
    BadOrder(VertexId),
    #[error("expected {expected} designated vertices, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("extension nodes require a minimal pair or an intrinsic extension, got {kind:?}")]
    NotIntrinsicFamily { kind: ExtensionKind },
    #[error("the closedness formula needs at least one designated vertex")]
    EmptyGammaStar,
    #[error("cycle exclusion needs a length of at least 3, got {0}")]
    BadCycleLength(usize),
}

/// A first-order formula in the language of graphs.
///
/// `And` and `Or` hold two or more operands in well-formed trees; the
/// printer tolerates shorter lists, and [`normalize`] collapses them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    /// Adjacency of two vertices; symmetric, and false on equal vertices.
    Edge(String, String),
    Equals(String, String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

/// The canonical name of the `i`-th variable (1-based): `x1`, `x2`, ...
pub fn canonical_var(i: usize) -> String {
    format!("x{i}")
}

/// Conjunction that drops `true` operands and collapses empty or singleton
/// lists.
pub fn smart_and(items: Vec<Formula>) -> Formula {
    let mut kept: Vec<Formula> = Vec::new();
    for item in items {
        match item {
            Formula::True => {}
            Formula::False => return Formula::False,
            other => kept.push(other),
        }
    }
    match kept.len() {
        0 => Formula::True,
        1 => kept.pop().unwrap(),
        _ => Formula::And(kept),
    }
}

/// Disjunction that drops `false` operands and collapses empty or singleton
/// lists.
pub fn smart_or(items: Vec<Formula>) -> Formula {
    let mut kept: Vec<Formula> = Vec::new();
    for item in items {
        match item {
            Formula::False => {}
            Formula::True => return Formula::True,
            other => kept.push(other),
        }
    }
    match kept.len() {
        0 => Formula::False,
        1 => kept.pop().unwrap(),
        _ => Formula::Or(kept),
    }
}

/// The set of variables with a free occurrence.
pub fn free_variables(formula: &Formula) -> BTreeSet<String> {
    fn go(formula: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match formula {
            Formula::True | Formula::False => {}
            Formula::Edge(a, b) | Formula::Equals(a, b) => {
                for v in [a, b] {
                    if !bound.iter().any(|w| w == v) {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Not(inner) => go(inner, bound, out),
            Formula::And(items) | Formula::Or(items) => {
                for item in items {
                    go(item, bound, out);
                }
            }
            Formula::Implies(lhs, rhs) => {
                go(lhs, bound, out);
                go(rhs, bound, out);
            }
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                bound.push(x.clone());
                go(body, bound, out);
                bound.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(formula, &mut Vec::new(), &mut out);
    out
}

/// The quantifier rank: deepest nesting of quantifiers.
pub fn quantifier_rank(formula: &Formula) -> u32 {
    match formula {
        Formula::True | Formula::False | Formula::Edge(..) | Formula::Equals(..) => 0,
        Formula::Not(inner) => quantifier_rank(inner),
        Formula::And(items) | Formula::Or(items) => {
            items.iter().map(quantifier_rank).max().unwrap_or(0)
        }
        Formula::Implies(lhs, rhs) => quantifier_rank(lhs).max(quantifier_rank(rhs)),
        Formula::Forall(_, body) | Formula::Exists(_, body) => 1 + quantifier_rank(body),
    }
}

/// Renames bound variables, in preorder, to the first unused canonical
/// names (`x1`, `x2`, ... skipping names that occur free), and collapses
/// degenerate conjunctions and disjunctions. Idempotent; printing a
/// normalized formula and parsing it back is the identity.
pub fn normalize(formula: &Formula) -> Formula {
    fn fresh(counter: &mut usize, avoid: &BTreeSet<String>) -> String {
        loop {
            *counter += 1;
            let name = canonical_var(*counter);
            if !avoid.contains(&name) {
                return name;
            }
        }
    }
    fn go(
        formula: &Formula,
        env: &BTreeMap<String, String>,
        counter: &mut usize,
        avoid: &BTreeSet<String>,
    ) -> Formula {
        let rename = |v: &String| env.get(v).unwrap_or(v).clone();
        match formula {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Edge(a, b) => Formula::Edge(rename(a), rename(b)),
            Formula::Equals(a, b) => Formula::Equals(rename(a), rename(b)),
            Formula::Not(inner) => Formula::Not(Box::new(go(inner, env, counter, avoid))),
            Formula::And(items) => {
                let mut done: Vec<Formula> =
                    items.iter().map(|i| go(i, env, counter, avoid)).collect();
                match done.len() {
                    0 => Formula::True,
                    1 => done.pop().unwrap(),
                    _ => Formula::And(done),
                }
            }
            Formula::Or(items) => {
                let mut done: Vec<Formula> =
                    items.iter().map(|i| go(i, env, counter, avoid)).collect();
                match done.len() {
                    0 => Formula::False,
                    1 => done.pop().unwrap(),
                    _ => Formula::Or(done),
                }
            }
            Formula::Implies(lhs, rhs) => Formula::Implies(
                Box::new(go(lhs, env, counter, avoid)),
                Box::new(go(rhs, env, counter, avoid)),
            ),
            Formula::Forall(x, body) => {
                let name = fresh(counter, avoid);
                let mut inner_env = env.clone();
                inner_env.insert(x.clone(), name.clone());
                Formula::Forall(name, Box::new(go(body, &inner_env, counter, avoid)))
            }
            Formula::Exists(x, body) => {
                let name = fresh(counter, avoid);
                let mut inner_env = env.clone();
                inner_env.insert(x.clone(), name.clone());
                Formula::Exists(name, Box::new(go(body, &inner_env, counter, avoid)))
            }
        }
    }
    let avoid = free_variables(formula);
    go(formula, &BTreeMap::new(), &mut 0, &avoid)
}

impl Formula {
    /// Binding strength: atoms 5, negation 4, conjunction 3, disjunction 2,
    /// implication 1, quantifiers 0.
    fn prec(&self) -> u8 {
        match self {
            Formula::True | Formula::False | Formula::Edge(..) | Formula::Equals(..) => 5,
            Formula::Not(_) => 4,
            Formula::And(_) => 3,
            Formula::Or(_) => 2,
            Formula::Implies(..) => 1,
            Formula::Forall(..) | Formula::Exists(..) => 0,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        // Degenerate operand lists delegate so that printing never emits
        // an empty operand.
        match self {
            Formula::And(items) if items.is_empty() => return write!(f, "true"),
            Formula::Or(items) if items.is_empty() => return write!(f, "false"),
            Formula::And(items) | Formula::Or(items) if items.len() == 1 => {
                return items[0].fmt_prec(f, min)
            }
            _ => {}
        }
        let wrap = self.prec() < min;
        if wrap {
            write!(f, "(")?;
        }
        match self {
            Formula::True => write!(f, "true")?,
            Formula::False => write!(f, "false")?,
            Formula::Edge(a, b) => write!(f, "R({a}, {b})")?,
            Formula::Equals(a, b) => write!(f, "{a} = {b}")?,
            Formula::Not(inner) => match &**inner {
                // `~a = b` would parse correctly, but the parentheses keep
                // the scope of the negation visible.
                Formula::Equals(a, b) => write!(f, "~({a} = {b})")?,
                _ => {
                    write!(f, "~")?;
                    inner.fmt_prec(f, 4)?;
                }
            },
            Formula::And(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    item.fmt_prec(f, 4)?;
                }
            }
            Formula::Or(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    item.fmt_prec(f, 3)?;
                }
            }
            Formula::Implies(lhs, rhs) => {
                lhs.fmt_prec(f, 2)?;
                write!(f, " -> ")?;
                rhs.fmt_prec(f, 1)?;
            }
            Formula::Forall(x, body) => {
                write!(f, "forall {x}. ")?;
                body.fmt_prec(f, 0)?;
            }
            Formula::Exists(x, body) => {
                write!(f, "exists {x}. ")?;
                body.fmt_prec(f, 0)?;
            }
        }
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
