//! The backward calculus for validity, and proof search driven by a saturated database.
//!
//! A regular sequent `Ψ ⇒g C` may use every rule; an irregular one `Ψ →g C` only
//! right rules and the axiom. Search is backtracking-free: at the non-invertible
//! steps the database tells which branch it cannot refute.

mod bsearch;
mod export;
mod g3i;
mod oracle;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{FormulaSet, GoalUniverse, Node, SubId};
use crate::frj::Kind;
use crate::saturation::Database;

pub use bsearch::{bsearch, BsearchError, BsearchStats};
pub use export::{
    g3i_dot, g3i_json, g3i_text, g3i_typeset, gbu_dot, gbu_json, gbu_text, gbu_typeset,
};
pub use g3i::{check_g3i, to_g3i, G3iDerivation, G3iError, G3iRule};
pub use oracle::{oracle_decide, oracle_prove};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GbuSequent {
    pub kind: Kind,
    pub psi: FormulaSet,
    pub rhs: SubId,
}

impl GbuSequent {
    pub fn regular(psi: FormulaSet, rhs: SubId) -> Self {
        GbuSequent { kind: Kind::Regular, psi, rhs }
    }

    pub fn irregular(psi: FormulaSet, rhs: SubId) -> Self {
        GbuSequent { kind: Kind::Irregular, psi, rhs }
    }

    pub fn is_regular(&self) -> bool {
        self.kind == Kind::Regular
    }

    pub fn render(&self, u: &GoalUniverse) -> String {
        let arrow = if self.is_regular() { "⇒g" } else { "→g" };
        format!("{} {} {}", u.show_set(&self.psi), arrow, u.show(self.rhs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GbuRule {
    Ax,
    LBot,
    LAnd,
    RAnd,
    LOr,
    ROr1,
    ROr2,
    LImp,
    ImpRIn,
    ImpRNotIn,
}

impl GbuRule {
    pub fn name(self) -> &'static str {
        match self {
            GbuRule::Ax => "Ax",
            GbuRule::LBot => "L-false",
            GbuRule::LAnd => "L-and",
            GbuRule::RAnd => "R-and",
            GbuRule::LOr => "L-or",
            GbuRule::ROr1 => "R-or1",
            GbuRule::ROr2 => "R-or2",
            GbuRule::LImp => "L-imp",
            GbuRule::ImpRIn => "R-imp-in",
            GbuRule::ImpRNotIn => "R-imp-notin",
        }
    }
}

impl fmt::Display for GbuRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbuDerivation {
    pub sequent: GbuSequent,
    pub rule: GbuRule,
    /// The decomposed left formula of a left rule.
    pub principal: Option<SubId>,
    pub children: Vec<GbuDerivation>,
}

impl GbuDerivation {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(GbuDerivation::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        self.children.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }

    /// Every (conclusion, premise) pair of the tree.
    pub fn edges(&self) -> Vec<(&GbuSequent, &GbuSequent)> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(d) = stack.pop() {
            for c in &d.children {
                out.push((&d.sequent, &c.sequent));
                stack.push(c);
            }
        }
        out
    }
}

/// `DB ▷ τ`: the database refutes `τ`.
pub fn evaluate(u: &GoalUniverse, db: &Database, tau: &GbuSequent) -> bool {
    let entries = db.with_rhs(tau.kind, tau.rhs);
    match tau.kind {
        Kind::Regular => entries
            .iter()
            .any(|&e| tau.psi.iter().all(|f| u.closure_member(db.sequent(e).gamma(), f))),
        Kind::Irregular => entries.iter().any(|&e| {
            let s = db.sequent(e);
            s.sigma.is_subset(&tau.psi) && tau.psi.is_subset(&s.lhs())
        }),
    }
}

/// Only a non-invertible rule applies.
pub fn critical(u: &GoalUniverse, tau: &GbuSequent) -> bool {
    if !tau.psi.is_subset(u.g_bar()) {
        return false;
    }
    matches!(
        (tau.kind, u.node(tau.rhs)),
        (Kind::Regular, Node::Var(_) | Node::Falsum | Node::Or(..)) | (Kind::Irregular, Node::Or(..))
    )
}

pub fn is_axiom(u: &GoalUniverse, tau: &GbuSequent) -> Option<GbuRule> {
    if tau.psi.contains(tau.rhs) {
        return Some(GbuRule::Ax);
    }
    if tau.is_regular() && u.falsum().is_some_and(|b| tau.psi.contains(b)) {
        return Some(GbuRule::LBot);
    }
    None
}

/// Compared lexicographically in field order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GbuWeight {
    pub missing: usize,
    pub type_bit: u8,
    pub size: usize,
}

pub fn gbu_weight(u: &GoalUniverse, tau: &GbuSequent) -> GbuWeight {
    GbuWeight {
        missing: u.sfl().difference(&u.closure(&tau.psi)).len(),
        type_bit: u8::from(tau.is_regular()),
        size: tau.psi.iter().map(|f| u.size(f)).sum::<usize>() + u.size(tau.rhs),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}: {reason}", if path.is_empty() { "root".to_string() } else { format!("node {:?}", path) })]
pub struct GbuError {
    /// Child indices from the root.
    pub path: Vec<usize>,
    pub reason: String,
}

/// The premises a rule produces backwards, given its principal formula.
pub(crate) fn premises(
    u: &GoalUniverse,
    tau: &GbuSequent,
    rule: GbuRule,
    principal: Option<SubId>,
) -> Option<Vec<GbuSequent>> {
    let psi = &tau.psi;
    let regular = tau.is_regular();
    let left = |f: Option<SubId>| f.filter(|&f| regular && psi.contains(f));
    Some(match rule {
        GbuRule::Ax | GbuRule::LBot => {
            if is_axiom(u, tau) != Some(rule) {
                return None;
            }
            vec![]
        }
        GbuRule::LAnd => {
            let p = left(principal)?;
            let Node::And(a, b) = *u.node(p) else { return None };
            vec![GbuSequent::regular(psi.without(p).with(a).with(b), tau.rhs)]
        }
        GbuRule::LOr => {
            let p = left(principal)?;
            let Node::Or(a, b) = *u.node(p) else { return None };
            let rest = psi.without(p);
            vec![
                GbuSequent::regular(rest.with(a), tau.rhs),
                GbuSequent::regular(rest.with(b), tau.rhs),
            ]
        }
        GbuRule::LImp => {
            let p = left(principal)?;
            let Node::Imp(a, b) = *u.node(p) else { return None };
            vec![
                GbuSequent::irregular(psi.clone(), a),
                GbuSequent::regular(psi.without(p).with(b), tau.rhs),
            ]
        }
        GbuRule::RAnd => {
            let Node::And(a, b) = *u.node(tau.rhs) else { return None };
            vec![
                GbuSequent { kind: tau.kind, psi: psi.clone(), rhs: a },
                GbuSequent { kind: tau.kind, psi: psi.clone(), rhs: b },
            ]
        }
        GbuRule::ROr1 | GbuRule::ROr2 => {
            let Node::Or(a, b) = *u.node(tau.rhs) else { return None };
            let c = if rule == GbuRule::ROr1 { a } else { b };
            vec![GbuSequent::irregular(psi.clone(), c)]
        }
        GbuRule::ImpRIn => {
            let Node::Imp(a, b) = *u.node(tau.rhs) else { return None };
            if !u.closure_member(psi, a) {
                return None;
            }
            vec![GbuSequent { kind: tau.kind, psi: psi.clone(), rhs: b }]
        }
        GbuRule::ImpRNotIn => {
            let Node::Imp(a, b) = *u.node(tau.rhs) else { return None };
            if u.closure_member(psi, a) {
                return None;
            }
            vec![GbuSequent::regular(psi.with(a), b)]
        }
    })
}

fn well_formed(u: &GoalUniverse, tau: &GbuSequent) -> bool {
    tau.psi.is_subset(u.sfl()) && u.sfr().contains(tau.rhs)
}

/// Checks every node against its rule schema.
pub fn check_gbu(u: &GoalUniverse, d: &GbuDerivation) -> Result<(), GbuError> {
    fn go(u: &GoalUniverse, d: &GbuDerivation, path: &mut Vec<usize>) -> Result<(), GbuError> {
        let fail = |path: &Vec<usize>, reason: &str| GbuError {
            path: path.clone(),
            reason: reason.to_string(),
        };
        if !well_formed(u, &d.sequent) {
            return Err(fail(path, "sequent outside the subformula universe"));
        }
        let expected = premises(u, &d.sequent, d.rule, d.principal)
            .ok_or_else(|| fail(path, &format!("{} does not apply", d.rule)))?;
        let got: Vec<&GbuSequent> = d.children.iter().map(|c| &c.sequent).collect();
        if got != expected.iter().collect::<Vec<_>>() {
            return Err(fail(path, &format!("premises do not match {}", d.rule)));
        }
        for (i, c) in d.children.iter().enumerate() {
            path.push(i);
            go(u, c, path)?;
            path.pop();
        }
        Ok(())
    }
    go(u, d, &mut Vec::new())
}
