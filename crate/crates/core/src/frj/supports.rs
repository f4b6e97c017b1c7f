use std::collections::HashMap;

use crate::formula::{FormulaSet, GoalUniverse, Node, SubId};

/// Minimal sets `L ⊆ pool` with `f ∈ Cl(base ∪ L)`, in canonical order.
pub fn minimal_supports(
    u: &GoalUniverse,
    f: SubId,
    base: &FormulaSet,
    pool: &FormulaSet,
) -> Vec<FormulaSet> {
    let mut memo = HashMap::new();
    let mut out = supports(u, f, base, pool, &mut memo);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn supports(
    u: &GoalUniverse,
    f: SubId,
    base: &FormulaSet,
    pool: &FormulaSet,
    memo: &mut HashMap<SubId, Vec<FormulaSet>>,
) -> Vec<FormulaSet> {
    if let Some(v) = memo.get(&f) {
        return v.clone();
    }
    let empty = u.empty_set();
    let result = if base.contains(f) {
        vec![empty]
    } else {
        let mut acc = Vec::new();
        if pool.contains(f) {
            acc.push(empty.with(f));
        }
        match *u.node(f) {
            Node::And(a, b) => {
                let left = supports(u, a, base, pool, memo);
                let right = supports(u, b, base, pool, memo);
                for l in &left {
                    for r in &right {
                        acc.push(l.union(r));
                    }
                }
            }
            Node::Or(a, b) => {
                acc.extend(supports(u, a, base, pool, memo));
                acc.extend(supports(u, b, base, pool, memo));
            }
            Node::Imp(_, b) => acc.extend(supports(u, b, base, pool, memo)),
            Node::Var(_) | Node::Falsum => {}
        }
        minimize(acc)
    };
    memo.insert(f, result.clone());
    result
}

/// Drops duplicates and proper supersets.
fn minimize(mut family: Vec<FormulaSet>) -> Vec<FormulaSet> {
    family.sort_by_key(|s| s.len());
    let mut kept: Vec<FormulaSet> = Vec::with_capacity(family.len());
    for s in family {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

/// Minimal sets meeting every member of `family`, in canonical order.
/// An empty member makes the result empty.
pub fn minimal_transversals(width: usize, family: &[FormulaSet]) -> Vec<FormulaSet> {
    let mut current = vec![FormulaSet::empty(width)];
    for edge in family {
        let mut next = Vec::new();
        for t in &current {
            if !t.is_disjoint(edge) {
                next.push(t.clone());
            } else {
                for x in edge.iter() {
                    next.push(t.with(x));
                }
            }
        }
        current = minimize(next);
    }
    current.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    current
}
