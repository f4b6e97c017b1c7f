use thiserror::Error;

use crate::formula::GoalUniverse;
use crate::frj::{
    apply_and, apply_imp_in_irregular, apply_imp_in_regular, apply_imp_notin, apply_join, apply_or,
    axioms, JoinFlavor, Sequent,
};
use crate::saturation::{DerivationStore, NodeId, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("node {node}: {reason}")]
pub struct DerivationError {
    pub node: NodeId,
    pub reason: String,
}

/// Re-applies the recorded rule at every node of the derivation and compares conclusions.
pub fn check_derivation(u: &GoalUniverse, store: &DerivationStore, root: NodeId) -> Result<(), DerivationError> {
    let axioms = axioms(u);
    for id in store.reachable(root) {
        let node = store.node(id);
        let fail = |reason: String| DerivationError { node: id, reason };
        let s = &node.sequent;
        if !s.lhs().is_subset(u.g_bar()) {
            return Err(fail("left side outside the atoms and left implications".into()));
        }
        if !u.sfr().contains(s.rhs) {
            return Err(fail("right side is not a right subformula".into()));
        }
        let premises: Vec<&Sequent> = node.premises.iter().map(|&p| store.sequent(p)).collect();
        let arity = match node.rule {
            Rule::AxRegular | Rule::AxIrregular => Some(0),
            Rule::Or => Some(2),
            Rule::JoinAt | Rule::JoinOr => None,
            _ => Some(1),
        };
        if let Some(n) = arity {
            if premises.len() != n {
                return Err(fail(format!("{} expects {n} premises", node.rule.name())));
            }
        }
        let ok = match node.rule {
            Rule::AxRegular | Rule::AxIrregular => {
                axioms.contains(s) && s.is_regular() == (node.rule == Rule::AxRegular)
            }
            Rule::And => apply_and(u, premises[0], s.rhs).is_ok_and(|c| &c == s),
            Rule::Or => apply_or(u, premises[0], premises[1], s.rhs).is_ok_and(|c| &c == s),
            Rule::ImpInRegular => apply_imp_in_regular(u, premises[0], s.rhs).is_ok_and(|c| &c == s),
            Rule::ImpInIrregular => apply_imp_in_irregular(u, premises[0], s.rhs).contains(s),
            Rule::ImpNotIn => apply_imp_notin(u, premises[0], s.rhs).contains(s),
            Rule::JoinAt | Rule::JoinOr => {
                let flavor = if node.rule == Rule::JoinAt {
                    JoinFlavor::At
                } else {
                    JoinFlavor::Or
                };
                match apply_join(u, &premises, flavor, s.rhs) {
                    Ok(c) => &c == s,
                    Err(e) => return Err(fail(e.to_string())),
                }
            }
        };
        if !ok {
            return Err(fail(format!("conclusion does not follow by {}", node.rule.name())));
        }
    }
    Ok(())
}
