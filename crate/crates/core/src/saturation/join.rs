//! Enumeration of join instances.
//!
//! For a target, the candidate right-hand sides `Y` are fixed up front and a
//! depth-first search picks at most one live irregular entry per `Y`. A second
//! premise for the same `Y` only shrinks the common left side, so its conclusion
//! would be subsumed. Branches are cut as soon as the stable parts stop fitting
//! into the common left side, as soon as an unsupported implication can no longer
//! be supported, or when even the largest reachable conclusion is already subsumed.

use std::collections::HashSet;

use super::database::Database;
use super::store::{NodeId, Rule};
use crate::formula::{FormulaSet, GoalUniverse, Node, SubId};
use crate::frj::{apply_join, JoinFlavor, Kind, Sequent};

pub(crate) struct JoinInstance {
    pub sequent: Sequent,
    pub rule: Rule,
    pub premises: Vec<NodeId>,
}

struct Ctx<'a> {
    u: &'a GoalUniverse,
    db: &'a Database,
    fresh: &'a HashSet<NodeId>,
    target: SubId,
    flavor: JoinFlavor,
    pool: Vec<SubId>,
    required: FormulaSet,
    out: Vec<JoinInstance>,
    compatible: usize,
}

struct State {
    sigma_all: FormulaSet,
    common: Option<FormulaSet>,
    upsilon: FormulaSet,
    chosen: Vec<NodeId>,
    has_fresh: bool,
}

/// All join conclusions with at least one premise in `fresh`.
/// Returns the instances and the number of compatible premise sets visited.
pub(crate) fn join_instances(
    u: &GoalUniverse,
    db: &Database,
    fresh: &HashSet<NodeId>,
) -> (Vec<JoinInstance>, usize) {
    let mut out = Vec::new();
    let mut compatible = 0;
    if fresh.iter().all(|&id| db.sequent(id).kind != Kind::Irregular) {
        return (out, 0);
    }
    let ants = u.left_antecedents();
    for target in u.sfr().iter() {
        let (flavor, pool, required) = match *u.node(target) {
            Node::Var(_) | Node::Falsum => (JoinFlavor::At, ants.clone(), u.empty_set()),
            Node::Or(c1, c2) => {
                let req = u.set_of([c1, c2]);
                (JoinFlavor::Or, ants.union(&req), req)
            }
            _ => continue,
        };
        let mut ctx = Ctx {
            u,
            db,
            fresh,
            target,
            flavor,
            pool: pool.iter().collect(),
            required,
            out: Vec::new(),
            compatible: 0,
        };
        let state = State {
            sigma_all: u.empty_set(),
            common: None,
            upsilon: u.empty_set(),
            chosen: Vec::new(),
            has_fresh: false,
        };
        ctx.search(0, state);
        compatible += ctx.compatible;
        out.append(&mut ctx.out);
    }
    (out, compatible)
}

impl Ctx<'_> {
    fn search(&mut self, depth: usize, st: State) {
        if depth == self.pool.len() {
            self.leaf(st);
            return;
        }
        let y = self.pool[depth];
        let may_skip = !self.required.contains(y) && self.supported_without(&st, depth + 1);
        for &cand in self.db.with_rhs(Kind::Irregular, y) {
            let s = self.db.sequent(cand);
            if self.flavor == JoinFlavor::At && s.sigma.contains(self.target) {
                continue;
            }
            let lhs = s.lhs();
            if !st.sigma_all.is_subset(&lhs) {
                continue;
            }
            if let Some(common) = &st.common {
                if !s.sigma.is_subset(common) {
                    continue;
                }
            }
            let mut next = State {
                sigma_all: st.sigma_all.union(&s.sigma),
                common: Some(match &st.common {
                    Some(c) => c.intersection(&lhs),
                    None => lhs,
                }),
                upsilon: st.upsilon.with(y),
                chosen: st.chosen.clone(),
                has_fresh: st.has_fresh || self.fresh.contains(&cand),
            };
            next.chosen.push(cand);
            if !self.supported_without(&next, depth + 1) || self.bound_subsumed(&next, depth + 1) {
                continue;
            }
            self.search(depth + 1, next);
        }
        if may_skip {
            self.search(depth + 1, st);
        }
    }

    /// Every implication in the stable parts has its antecedent chosen or still choosable.
    fn supported_without(&self, st: &State, from: usize) -> bool {
        st.sigma_all.intersection(self.u.g_imp()).iter().all(|imp| {
            let y = self.u.antecedent(imp).expect("implication");
            st.upsilon.contains(y) || self.pool[from..].contains(&y)
        })
    }

    /// The largest conclusion any completion could reach is already subsumed.
    fn bound_subsumed(&self, st: &State, from: usize) -> bool {
        let Some(common) = &st.common else {
            return false;
        };
        let mut bound = common.intersection(self.u.g_at());
        if self.flavor == JoinFlavor::At {
            bound.remove(self.target);
        }
        for imp in common.intersection(self.u.g_imp()).iter() {
            let y = self.u.antecedent(imp).expect("implication");
            if st.upsilon.contains(y) || self.pool[from..].contains(&y) {
                bound.insert(imp);
            }
        }
        self.db
            .with_rhs(Kind::Regular, self.target)
            .iter()
            .any(|&e| bound.is_subset(self.db.sequent(e).gamma()))
    }

    fn leaf(&mut self, st: State) {
        if st.chosen.is_empty() || !st.has_fresh {
            return;
        }
        self.compatible += 1;
        let premises: Vec<&Sequent> = st.chosen.iter().map(|&id| self.db.sequent(id)).collect();
        let sequent = apply_join(self.u, &premises, self.flavor, self.target)
            .expect("enumerated join satisfies its side conditions");
        let rule = match self.flavor {
            JoinFlavor::At => Rule::JoinAt,
            JoinFlavor::Or => Rule::JoinOr,
        };
        self.out.push(JoinInstance {
            sequent,
            rule,
            premises: st.chosen,
        });
    }
}
