use thiserror::Error;

use super::{minimal_supports, minimal_transversals, Kind, Sequent};
use crate::formula::{FormulaSet, GoalUniverse, Node, SubId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rule not applicable: {0}")]
pub struct RuleError(pub String);

fn fail<T>(msg: impl Into<String>) -> Result<T, RuleError> {
    Err(RuleError(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JoinFlavor {
    At,
    Or,
}

/// One regular and one irregular axiom per prime right subformula.
pub fn axioms(u: &GoalUniverse) -> Vec<Sequent> {
    let mut out = Vec::new();
    for f in u.prime_sfr().iter() {
        let atoms = u.g_at().without(f);
        out.push(Sequent::regular(atoms.clone(), f));
        out.push(Sequent::irregular(u.empty_set(), atoms.union(u.g_imp()), f));
    }
    out
}

fn require_right(u: &GoalUniverse, target: SubId) -> Result<(), RuleError> {
    if !u.sfr().contains(target) {
        return fail(format!("{} is not a right subformula", u.show(target)));
    }
    Ok(())
}

pub fn apply_and(u: &GoalUniverse, premise: &Sequent, target: SubId) -> Result<Sequent, RuleError> {
    require_right(u, target)?;
    let Node::And(a, b) = *u.node(target) else {
        return fail("target is not a conjunction");
    };
    if premise.rhs != a && premise.rhs != b {
        return fail("premise proves neither conjunct");
    }
    Ok(Sequent {
        rhs: target,
        ..premise.clone()
    })
}

pub fn apply_or(
    u: &GoalUniverse,
    p1: &Sequent,
    p2: &Sequent,
    target: SubId,
) -> Result<Sequent, RuleError> {
    require_right(u, target)?;
    let Node::Or(c1, c2) = *u.node(target) else {
        return fail("target is not a disjunction");
    };
    if p1.kind != Kind::Irregular || p2.kind != Kind::Irregular {
        return fail("premises must be irregular");
    }
    if p1.rhs != c1 || p2.rhs != c2 {
        return fail("premises do not prove the disjuncts in order");
    }
    if !p1.sigma.is_subset(&p2.lhs()) || !p2.sigma.is_subset(&p1.lhs()) {
        return fail("stable parts are not contained in the other premise");
    }
    let sigma = p1.sigma.union(&p2.sigma);
    let theta = p1.theta.intersection(&p2.theta).difference(&sigma);
    Ok(Sequent::irregular(sigma, theta, target))
}

pub fn apply_imp_in_regular(
    u: &GoalUniverse,
    premise: &Sequent,
    target: SubId,
) -> Result<Sequent, RuleError> {
    require_right(u, target)?;
    let Node::Imp(a, b) = *u.node(target) else {
        return fail("target is not an implication");
    };
    if premise.kind != Kind::Regular || premise.rhs != b {
        return fail("premise is not a regular sequent for the consequent");
    }
    if !u.closure_member(premise.gamma(), a) {
        return fail("antecedent not in the closure of the premise");
    }
    Ok(Sequent::regular(premise.sigma.clone(), target))
}

/// One conclusion per minimal `Λ ⊆ Θ` whose addition to `Σ` yields the antecedent.
pub fn apply_imp_in_irregular(u: &GoalUniverse, premise: &Sequent, target: SubId) -> Vec<Sequent> {
    let Node::Imp(a, b) = *u.node(target) else {
        return Vec::new();
    };
    if premise.kind != Kind::Irregular || premise.rhs != b || !u.sfr().contains(target) {
        return Vec::new();
    }
    minimal_supports(u, a, &premise.sigma, &premise.theta)
        .into_iter()
        .map(|lambda| {
            Sequent::irregular(
                premise.sigma.union(&lambda),
                premise.theta.difference(&lambda),
                target,
            )
        })
        .collect()
}

/// One conclusion per maximal `Θ ⊆ Cl(Γ) ∩ Ḡ` whose closure misses the antecedent.
pub fn apply_imp_notin(u: &GoalUniverse, premise: &Sequent, target: SubId) -> Vec<Sequent> {
    let Node::Imp(a, b) = *u.node(target) else {
        return Vec::new();
    };
    if premise.kind != Kind::Regular || premise.rhs != b || !u.sfr().contains(target) {
        return Vec::new();
    }
    if !u.closure_member(premise.gamma(), a) {
        return Vec::new();
    }
    let pool = u.closure(premise.gamma()).intersection(u.g_bar());
    maximal_avoiding(u, a, &pool)
        .into_iter()
        .map(|theta| Sequent::irregular(u.empty_set(), theta, target))
        .collect()
}

/// Maximal subsets of `pool` whose closure misses `a`.
pub(crate) fn maximal_avoiding(u: &GoalUniverse, a: SubId, pool: &FormulaSet) -> Vec<FormulaSet> {
    let supports = minimal_supports(u, a, &u.empty_set(), pool);
    minimal_transversals(u.len(), &supports)
        .into_iter()
        .map(|r| pool.difference(&r))
        .collect()
}

/// Builds a single join instance after checking all its side conditions.
pub fn apply_join(
    u: &GoalUniverse,
    premises: &[&Sequent],
    flavor: JoinFlavor,
    target: SubId,
) -> Result<Sequent, RuleError> {
    require_right(u, target)?;
    if premises.is_empty() {
        return fail("a join needs at least one premise");
    }
    if premises.iter().any(|p| p.kind != Kind::Irregular) {
        return fail("join premises must be irregular");
    }
    let upsilon = u.set_of(premises.iter().map(|p| p.rhs));
    for (i, pi) in premises.iter().enumerate() {
        for (j, pj) in premises.iter().enumerate() {
            if i != j && !pi.sigma.is_subset(&pj.lhs()) {
                return fail(format!("premise {} has Σ outside premise {}", i + 1, j + 1));
            }
        }
    }
    let mut sigma_all = u.empty_set();
    let mut common = premises[0].lhs();
    for p in premises {
        sigma_all.union_with(&p.sigma);
        common.intersect_with(&p.lhs());
    }
    for imp in sigma_all.intersection(u.g_imp()).iter() {
        let y = u.antecedent(imp).expect("implication");
        if !upsilon.contains(y) {
            return fail(format!("{} is not supported by any premise", u.show(imp)));
        }
    }
    let mut gamma = common.intersection(u.g_at());
    match flavor {
        JoinFlavor::At => {
            if !u.is_prime(target) {
                return fail("target is not prime");
            }
            if sigma_all.contains(target) {
                return fail("target atom occurs in Σ");
            }
            if !upsilon.is_subset(u.left_antecedents()) {
                return fail("some premise is not an antecedent of a left implication");
            }
            gamma.remove(target);
        }
        JoinFlavor::Or => {
            let Node::Or(c1, c2) = *u.node(target) else {
                return fail("target is not a disjunction");
            };
            if !upsilon.contains(c1) || !upsilon.contains(c2) {
                return fail("both disjuncts must be proved by premises");
            }
            let allowed = u.left_antecedents().union(u.right_disjuncts());
            if !upsilon.is_subset(&allowed) {
                return fail("some premise is neither an antecedent nor a disjunct");
            }
        }
    }
    for imp in common.intersection(u.g_imp()).iter() {
        if upsilon.contains(u.antecedent(imp).expect("implication")) {
            gamma.insert(imp);
        }
    }
    Ok(Sequent::regular(gamma, target))
}
