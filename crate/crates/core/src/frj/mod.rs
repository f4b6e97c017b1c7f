//! Sequents of the refutation calculus, subsumption, weights and single rule applications.
//!
//! A regular sequent `Γ ⇒ C` claims that `C` does not follow from `Γ`.
//! An irregular sequent `Σ ; Θ → C` splits its left side into a part `Σ`
//! that joins keep and a part `Θ` they may lose.

mod rules;
mod supports;

use std::cmp::Ordering;

use crate::formula::{FormulaSet, GoalUniverse, SubId};

pub use rules::{
    apply_and, apply_imp_in_irregular, apply_imp_in_regular, apply_imp_notin, apply_join,
    apply_or, axioms, JoinFlavor, RuleError,
};
pub use supports::{minimal_supports, minimal_transversals};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Regular,
    Irregular,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub kind: Kind,
    /// `Γ` for regular sequents, `Σ` for irregular ones.
    pub sigma: FormulaSet,
    /// Always empty for regular sequents.
    pub theta: FormulaSet,
    pub rhs: SubId,
}

impl Sequent {
    pub fn regular(gamma: FormulaSet, rhs: SubId) -> Self {
        let theta = FormulaSet::empty(gamma.width());
        Sequent {
            kind: Kind::Regular,
            sigma: gamma,
            theta,
            rhs,
        }
    }

    pub fn irregular(sigma: FormulaSet, theta: FormulaSet, rhs: SubId) -> Self {
        debug_assert!(sigma.is_disjoint(&theta));
        Sequent {
            kind: Kind::Irregular,
            sigma,
            theta,
            rhs,
        }
    }

    pub fn is_regular(&self) -> bool {
        self.kind == Kind::Regular
    }

    pub fn gamma(&self) -> &FormulaSet {
        &self.sigma
    }

    pub fn lhs(&self) -> FormulaSet {
        self.sigma.union(&self.theta)
    }

    pub fn render(&self, u: &GoalUniverse) -> String {
        match self.kind {
            Kind::Regular => format!("{} ⇒ {}", u.show_set(&self.sigma), u.show(self.rhs)),
            Kind::Irregular => format!(
                "{} ; {} → {}",
                u.show_set(&self.sigma),
                u.show_set(&self.theta),
                u.show(self.rhs)
            ),
        }
    }
}

impl Sequent {
    pub fn render_latex(&self, u: &GoalUniverse) -> String {
        match self.kind {
            Kind::Regular => format!("{} \\Rightarrow {}", u.show_set_latex(&self.sigma), u.show_latex(self.rhs)),
            Kind::Irregular => format!(
                "{} ; {} \\rightarrow {}",
                u.show_set_latex(&self.sigma),
                u.show_set_latex(&self.theta),
                u.show_latex(self.rhs)
            ),
        }
    }
}

/// Canonical order: kind, right-hand side, then the left sets.
impl Ord for Sequent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind
            .cmp(&other.kind)
            .then(self.rhs.cmp(&other.rhs))
            .then_with(|| self.sigma.cmp(&other.sigma))
            .then_with(|| self.theta.cmp(&other.theta))
    }
}

impl PartialOrd for Sequent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `s1 ⊑ s2`: `s2` subsumes `s1`.
pub fn subsumes(s1: &Sequent, s2: &Sequent) -> bool {
    if s1.kind != s2.kind || s1.rhs != s2.rhs {
        return false;
    }
    match s1.kind {
        Kind::Regular => s1.sigma.is_subset(&s2.sigma),
        Kind::Irregular => s1.sigma == s2.sigma && s1.theta.is_subset(&s2.theta),
    }
}

/// Compared lexicographically in field order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Weight {
    pub closure_count: usize,
    pub type_bit: u8,
    pub rhs_gap: usize,
}

pub fn weight(u: &GoalUniverse, s: &Sequent) -> Weight {
    Weight {
        closure_count: u.closure(&s.lhs()).intersection(u.sfl()).len(),
        type_bit: match s.kind {
            Kind::Regular => 0,
            Kind::Irregular => 1,
        },
        rhs_gap: u.goal_size() - u.size(s.rhs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsumption_examples() {
        let u = GoalUniverse::parse("p & q & r & x & y -> q").unwrap();
        let q = u.find("q").unwrap();
        let a = Sequent::regular(u.set_from_text(&["p"]), q);
        let b = Sequent::regular(u.set_from_text(&["p", "r"]), q);
        assert!(subsumes(&a, &b));
        assert!(!subsumes(&b, &a));
        assert!(subsumes(&a, &a));
        let c = Sequent::irregular(u.set_from_text(&["x"]), u.set_from_text(&["p"]), q);
        let d = Sequent::irregular(u.set_from_text(&["y"]), u.set_from_text(&["p", "r"]), q);
        assert!(!subsumes(&c, &d));
        assert!(!subsumes(&a, &c));
    }

    #[test]
    fn weights() {
        let u = GoalUniverse::parse("p").unwrap();
        let ax = axioms(&u);
        for s in &ax {
            let w = weight(&u, s);
            match s.kind {
                Kind::Regular => assert_eq!(w, Weight { closure_count: 0, type_bit: 0, rhs_gap: 0 }),
                Kind::Irregular => assert_eq!(w.type_bit, 1),
            }
        }
    }
}
