//! Exhaustive backward search, used as an independent decision procedure.

use std::collections::HashMap;

use super::{is_axiom, premises, GbuDerivation, GbuRule, GbuSequent};
use crate::formula::{GoalUniverse, Node, SubId};

struct Oracle<'a> {
    u: &'a GoalUniverse,
    memo: HashMap<GbuSequent, bool>,
}

impl Oracle<'_> {
    fn instances(&self, tau: &GbuSequent) -> Vec<(GbuRule, Option<SubId>)> {
        let u = self.u;
        let mut out = Vec::new();
        if let Some(rule) = is_axiom(u, tau) {
            out.push((rule, None));
            return out;
        }
        if tau.is_regular() {
            for f in tau.psi.iter() {
                match u.node(f) {
                    Node::And(..) => out.push((GbuRule::LAnd, Some(f))),
                    Node::Or(..) => out.push((GbuRule::LOr, Some(f))),
                    Node::Imp(..) => out.push((GbuRule::LImp, Some(f))),
                    _ => {}
                }
            }
        }
        match *u.node(tau.rhs) {
            Node::And(..) => out.push((GbuRule::RAnd, None)),
            Node::Or(..) => {
                out.push((GbuRule::ROr1, None));
                out.push((GbuRule::ROr2, None));
            }
            Node::Imp(a, _) => out.push((
                if u.closure_member(&tau.psi, a) {
                    GbuRule::ImpRIn
                } else {
                    GbuRule::ImpRNotIn
                },
                None,
            )),
            _ => {}
        }
        out
    }

    fn provable(&mut self, tau: &GbuSequent) -> bool {
        if let Some(&known) = self.memo.get(tau) {
            return known;
        }
        let result = self.instances(tau).into_iter().any(|(rule, principal)| {
            premises(self.u, tau, rule, principal)
                .is_some_and(|ps| ps.iter().all(|p| self.provable(p)))
        });
        self.memo.insert(tau.clone(), result);
        result
    }

    /// Rebuilds a derivation of a sequent already known to be provable.
    fn build(&mut self, tau: GbuSequent) -> GbuDerivation {
        for (rule, principal) in self.instances(&tau) {
            let Some(ps) = premises(self.u, &tau, rule, principal) else {
                continue;
            };
            if ps.iter().all(|p| self.provable(p)) {
                let children = ps.into_iter().map(|p| self.build(p)).collect();
                return GbuDerivation {
                    sequent: tau,
                    rule,
                    principal,
                    children,
                };
            }
        }
        unreachable!("build called on an unprovable sequent")
    }
}

/// A derivation of `⇒g G` found by trying every rule instance, if there is one.
pub fn oracle_prove(u: &GoalUniverse) -> Option<GbuDerivation> {
    let mut o = Oracle {
        u,
        memo: HashMap::new(),
    };
    let root = GbuSequent::regular(u.empty_set(), u.goal());
    if o.provable(&root) {
        Some(o.build(root))
    } else {
        None
    }
}

/// Whether the goal is valid, by exhaustive backward search.
pub fn oracle_decide(u: &GoalUniverse) -> bool {
    let mut o = Oracle {
        u,
        memo: HashMap::new(),
    };
    o.provable(&GbuSequent::regular(u.empty_set(), u.goal()))
}
