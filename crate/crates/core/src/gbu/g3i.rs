//! Translation into the standard intuitionistic sequent calculus, and its checker.
//!
//! Contexts are sets, so a left rule may keep or drop its principal formula in the
//! premises; both readings are instances of the usual schemas. Axioms are atomic.

use serde::Serialize;
use thiserror::Error;

use super::{GbuDerivation, GbuRule};
use crate::formula::{FormulaSet, GoalUniverse, Node, SubId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum G3iRule {
    Ax,
    LBot,
    LAnd,
    RAnd,
    LOr,
    ROr1,
    ROr2,
    LImp,
    RImp,
}

impl G3iRule {
    pub fn name(self) -> &'static str {
        match self {
            G3iRule::Ax => "Ax",
            G3iRule::LBot => "L-false",
            G3iRule::LAnd => "L-and",
            G3iRule::RAnd => "R-and",
            G3iRule::LOr => "L-or",
            G3iRule::ROr1 => "R-or1",
            G3iRule::ROr2 => "R-or2",
            G3iRule::LImp => "L-imp",
            G3iRule::RImp => "R-imp",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G3iDerivation {
    pub context: FormulaSet,
    pub succedent: SubId,
    pub rule: G3iRule,
    pub principal: Option<SubId>,
    pub children: Vec<G3iDerivation>,
}

impl G3iDerivation {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(G3iDerivation::size).sum::<usize>()
    }

    pub fn render(&self, u: &GoalUniverse) -> String {
        format!("{} ⇒ {}", u.show_set(&self.context), u.show(self.succedent))
    }
}

fn node(
    context: FormulaSet,
    succedent: SubId,
    rule: G3iRule,
    principal: Option<SubId>,
    children: Vec<G3iDerivation>,
) -> G3iDerivation {
    G3iDerivation {
        context,
        succedent,
        rule,
        principal,
        children,
    }
}

/// A derivation of `ctx ⇒ a` for `a ∈ ctx` using atomic axioms only.
fn expand_axiom(u: &GoalUniverse, ctx: &FormulaSet, a: SubId) -> G3iDerivation {
    match *u.node(a) {
        Node::Var(_) => node(ctx.clone(), a, G3iRule::Ax, None, vec![]),
        Node::Falsum => node(ctx.clone(), a, G3iRule::LBot, None, vec![]),
        Node::And(x, y) => {
            let inner = ctx.with(x).with(y);
            let r = node(
                inner.clone(),
                a,
                G3iRule::RAnd,
                None,
                vec![expand_axiom(u, &inner, x), expand_axiom(u, &inner, y)],
            );
            node(ctx.clone(), a, G3iRule::LAnd, Some(a), vec![r])
        }
        Node::Or(x, y) => {
            let (cx, cy) = (ctx.with(x), ctx.with(y));
            let left = node(cx.clone(), a, G3iRule::ROr1, None, vec![expand_axiom(u, &cx, x)]);
            let right = node(cy.clone(), a, G3iRule::ROr2, None, vec![expand_axiom(u, &cy, y)]);
            node(ctx.clone(), a, G3iRule::LOr, Some(a), vec![left, right])
        }
        Node::Imp(x, y) => {
            let cx = ctx.with(x);
            let cxy = cx.with(y);
            let l = node(
                cx.clone(),
                y,
                G3iRule::LImp,
                Some(a),
                vec![expand_axiom(u, &cx, x), expand_axiom(u, &cxy, y)],
            );
            node(ctx.clone(), a, G3iRule::RImp, None, vec![l])
        }
    }
}

pub fn to_g3i(u: &GoalUniverse, d: &GbuDerivation) -> G3iDerivation {
    translate(u, d, &u.empty_set())
}

// `extra` holds antecedents added at earlier R-imp-in steps.
fn translate(u: &GoalUniverse, d: &GbuDerivation, extra: &FormulaSet) -> G3iDerivation {
    let ctx = d.sequent.psi.union(extra);
    let rhs = d.sequent.rhs;
    let kids = |extra: &FormulaSet| d.children.iter().map(|c| translate(u, c, extra)).collect();
    match d.rule {
        GbuRule::Ax => expand_axiom(u, &ctx, rhs),
        GbuRule::LBot => node(ctx, rhs, G3iRule::LBot, None, vec![]),
        GbuRule::LAnd => node(ctx, rhs, G3iRule::LAnd, d.principal, kids(extra)),
        GbuRule::LOr => node(ctx, rhs, G3iRule::LOr, d.principal, kids(extra)),
        GbuRule::LImp => node(ctx, rhs, G3iRule::LImp, d.principal, kids(extra)),
        GbuRule::RAnd => node(ctx, rhs, G3iRule::RAnd, None, kids(extra)),
        GbuRule::ROr1 => node(ctx, rhs, G3iRule::ROr1, None, kids(extra)),
        GbuRule::ROr2 => node(ctx, rhs, G3iRule::ROr2, None, kids(extra)),
        GbuRule::ImpRIn => {
            let a = u.antecedent(rhs).expect("implication");
            node(ctx, rhs, G3iRule::RImp, None, kids(&extra.with(a)))
        }
        GbuRule::ImpRNotIn => node(ctx, rhs, G3iRule::RImp, None, kids(extra)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}: {reason}", if path.is_empty() { "root".to_string() } else { format!("node {:?}", path) })]
pub struct G3iError {
    pub path: Vec<usize>,
    pub reason: String,
}

fn local(u: &GoalUniverse, d: &G3iDerivation) -> Result<(), String> {
    let ctx = &d.context;
    let c = d.succedent;
    let kids: Vec<(&FormulaSet, SubId)> = d.children.iter().map(|k| (&k.context, k.succedent)).collect();
    let arity = match d.rule {
        G3iRule::Ax | G3iRule::LBot => 0,
        G3iRule::RAnd | G3iRule::LOr | G3iRule::LImp => 2,
        _ => 1,
    };
    if kids.len() != arity {
        return Err(format!("{} needs {arity} premises", d.rule.name()));
    }
    // The context below the principal formula, read either way.
    let bases = |p: SubId| [ctx.without(p), ctx.clone()];
    let principal = || -> Result<(SubId, &Node), String> {
        let p = d.principal.ok_or("left rule without principal formula")?;
        if !ctx.contains(p) {
            return Err("principal formula not in the context".into());
        }
        Ok((p, u.node(p)))
    };
    let ok = match d.rule {
        G3iRule::Ax => u.is_var(c) && ctx.contains(c),
        G3iRule::LBot => u.falsum().is_some_and(|f| ctx.contains(f)),
        G3iRule::LAnd => {
            let (p, n) = principal()?;
            let Node::And(a, b) = *n else { return Err("principal is not a conjunction".into()) };
            kids[0].1 == c && bases(p).iter().any(|g| *kids[0].0 == g.with(a).with(b))
        }
        G3iRule::LOr => {
            let (p, n) = principal()?;
            let Node::Or(a, b) = *n else { return Err("principal is not a disjunction".into()) };
            kids[0].1 == c
                && kids[1].1 == c
                && bases(p).iter().any(|g| *kids[0].0 == g.with(a) && *kids[1].0 == g.with(b))
        }
        G3iRule::LImp => {
            let (p, n) = principal()?;
            let Node::Imp(a, b) = *n else { return Err("principal is not an implication".into()) };
            kids[0].0 == ctx
                && kids[0].1 == a
                && kids[1].1 == c
                && bases(p).iter().any(|g| *kids[1].0 == g.with(b))
        }
        G3iRule::RAnd => match *u.node(c) {
            Node::And(a, b) => kids[0] == (ctx, a) && kids[1] == (ctx, b),
            _ => false,
        },
        G3iRule::ROr1 | G3iRule::ROr2 => match *u.node(c) {
            Node::Or(a, b) => {
                let want = if d.rule == G3iRule::ROr1 { a } else { b };
                kids[0] == (ctx, want)
            }
            _ => false,
        },
        G3iRule::RImp => match *u.node(c) {
            Node::Imp(a, b) => *kids[0].0 == ctx.with(a) && kids[0].1 == b,
            _ => false,
        },
    };
    if ok {
        Ok(())
    } else {
        Err(format!("not an instance of {}", d.rule.name()))
    }
}

/// Checks every node locally; reports the path to the first bad one.
pub fn check_g3i(u: &GoalUniverse, d: &G3iDerivation) -> Result<(), G3iError> {
    let mut stack = vec![(d, Vec::new())];
    while let Some((n, path)) = stack.pop() {
        local(u, n).map_err(|reason| G3iError {
            path: path.clone(),
            reason,
        })?;
        for (i, k) in n.children.iter().enumerate().rev() {
            let mut p = path.clone();
            p.push(i);
            stack.push((k, p));
        }
    }
    Ok(())
}
