use thiserror::Error;

use super::{critical, evaluate, is_axiom, premises, GbuDerivation, GbuRule, GbuSequent};
use crate::formula::{GoalUniverse, Node, SubId};
use crate::saturation::Database;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BsearchError {
    #[error("the database refutes the goal")]
    RootRefuted,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BsearchStats {
    /// Recursive calls; equal to the size of the derivation when nothing is retried.
    pub calls: usize,
    /// Database queries.
    pub queries: usize,
    /// Decisions taken at critical sequents, in search order.
    pub choices: Vec<(GbuSequent, GbuRule, Option<SubId>)>,
}

struct Search<'a> {
    u: &'a GoalUniverse,
    db: &'a Database,
    stats: BsearchStats,
}

/// Builds a derivation of `⇒g G` from a saturated database without backtracking.
pub fn bsearch(u: &GoalUniverse, db: &Database) -> Result<(GbuDerivation, BsearchStats), BsearchError> {
    let root = GbuSequent::regular(u.empty_set(), u.goal());
    let mut s = Search {
        u,
        db,
        stats: BsearchStats::default(),
    };
    if s.refutes(&root) {
        return Err(BsearchError::RootRefuted);
    }
    let d = s.run(root)?;
    Ok((d, s.stats))
}

impl Search<'_> {
    fn refutes(&mut self, tau: &GbuSequent) -> bool {
        self.stats.queries += 1;
        evaluate(self.u, self.db, tau)
    }

    fn first_left(&self, tau: &GbuSequent, want: fn(&Node) -> bool) -> Option<SubId> {
        tau.psi.iter().find(|&f| want(self.u.node(f)))
    }

    /// Invertible rule by fixed priority.
    fn invertible(&self, tau: &GbuSequent) -> Option<(GbuRule, Option<SubId>)> {
        let u = self.u;
        if tau.is_regular() {
            if let Some(f) = self.first_left(tau, |n| matches!(n, Node::And(..))) {
                return Some((GbuRule::LAnd, Some(f)));
            }
        }
        if matches!(u.node(tau.rhs), Node::And(..)) {
            return Some((GbuRule::RAnd, None));
        }
        if tau.is_regular() {
            if let Some(f) = self.first_left(tau, |n| matches!(n, Node::Or(..))) {
                return Some((GbuRule::LOr, Some(f)));
            }
        }
        if let Node::Imp(a, _) = *u.node(tau.rhs) {
            let rule = if u.closure_member(&tau.psi, a) {
                GbuRule::ImpRIn
            } else {
                GbuRule::ImpRNotIn
            };
            return Some((rule, None));
        }
        None
    }

    /// The first move at a critical sequent whose first premise the database does not refute.
    fn choose(&mut self, tau: &GbuSequent) -> Option<(GbuRule, Option<SubId>)> {
        let u = self.u;
        if tau.is_regular() {
            let mut imps: Vec<(SubId, SubId)> = tau
                .psi
                .iter()
                .filter_map(|f| u.antecedent(f).map(|a| (a, f)))
                .collect();
            imps.sort_unstable();
            for (a, f) in imps {
                if !self.refutes(&GbuSequent::irregular(tau.psi.clone(), a)) {
                    return Some((GbuRule::LImp, Some(f)));
                }
            }
        }
        if let Node::Or(c1, c2) = *u.node(tau.rhs) {
            for (rule, c) in [(GbuRule::ROr1, c1), (GbuRule::ROr2, c2)] {
                if !self.refutes(&GbuSequent::irregular(tau.psi.clone(), c)) {
                    return Some((rule, None));
                }
            }
        }
        None
    }

    fn run(&mut self, tau: GbuSequent) -> Result<GbuDerivation, BsearchError> {
        self.stats.calls += 1;
        if let Some(rule) = is_axiom(self.u, &tau) {
            return Ok(GbuDerivation {
                sequent: tau,
                rule,
                principal: None,
                children: vec![],
            });
        }
        let violation = |msg: String| BsearchError::InternalInvariantViolation(msg);
        let (rule, principal) = if critical(self.u, &tau) {
            let pick = self
                .choose(&tau)
                .ok_or_else(|| violation(format!("no unrefuted move at {}", tau.render(self.u))))?;
            self.stats.choices.push((tau.clone(), pick.0, pick.1));
            pick
        } else {
            self.invertible(&tau)
                .ok_or_else(|| violation(format!("no rule applies to {}", tau.render(self.u))))?
        };
        let prems = premises(self.u, &tau, rule, principal)
            .ok_or_else(|| violation(format!("{rule} does not apply to {}", tau.render(self.u))))?;
        let mut children = Vec::with_capacity(prems.len());
        for p in prems {
            children.push(self.run(p)?);
        }
        Ok(GbuDerivation {
            sequent: tau,
            rule,
            principal,
            children,
        })
    }
}
