//! Builds a refutation derivation from a given countermodel.
//!
//! For a world `α` and a right subformula `C` not forced at `α`, we produce an
//! irregular sequent `σ→(α, C)` and a regular sequent `σ⇒(α, C)`. The rank of the
//! former stays below the height of `α`, the rank of the latter at most that height,
//! so the final derivation has rank at most the height of the model.

use std::collections::HashMap;

use thiserror::Error;

use super::{world_data, SemWorldData};
use crate::formula::{FormulaSet, GoalUniverse, Node, SubId};
use crate::frj::{
    apply_and, apply_imp_in_regular, apply_join, apply_or, minimal_supports, JoinFlavor, RuleError,
    Sequent,
};
use crate::kripke::{check_countermodel, Forcing, KripkeModel, ModelError, World};
use crate::saturation::{DerivationStore, NodeId, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinModError {
    #[error("not a countermodel: {0}")]
    NotACountermodel(#[from] ModelError),
    #[error("construction failed: {0}")]
    Internal(String),
}

impl From<RuleError> for MinModError {
    fn from(e: RuleError) -> Self {
        MinModError::Internal(e.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct MinModDerivation {
    pub store: DerivationStore,
    pub root: NodeId,
}

struct Builder<'a> {
    u: &'a GoalUniverse,
    model: &'a KripkeModel,
    forcing: Forcing,
    data: Vec<SemWorldData>,
    store: DerivationStore,
    irregular: HashMap<(World, SubId), NodeId>,
    regular: HashMap<(World, SubId), NodeId>,
}

pub fn derivation_from_model(u: &GoalUniverse, model: &KripkeModel) -> Result<MinModDerivation, MinModError> {
    check_countermodel(model, u)?;
    let forcing = Forcing::new(model, u);
    let data = model.worlds().map(|w| world_data(&forcing, u, w)).collect();
    let mut b = Builder {
        u,
        model,
        forcing,
        data,
        store: DerivationStore::new(),
        irregular: HashMap::new(),
        regular: HashMap::new(),
    };
    let root = b.regular(model.root(), u.goal())?;
    Ok(MinModDerivation { store: b.store, root })
}

impl Builder<'_> {
    fn add(&mut self, s: Sequent, rule: Rule, premises: Vec<NodeId>) -> NodeId {
        match self.store.find(&s) {
            Some(id) => id,
            None => self.store.add(s, rule, premises, 0),
        }
    }

    /// First conjunct not forced at `w`.
    fn failing_conjunct(&self, w: World, c1: SubId, c2: SubId) -> SubId {
        if self.forcing.forces(w, c1) {
            c2
        } else {
            c1
        }
    }

    /// A world above `w` forcing `a` but not `b`, minimal among such worlds; lowest id on ties.
    fn witness(&self, w: World, a: SubId, b: SubId) -> Result<World, MinModError> {
        let cands: Vec<World> = self
            .model
            .up_set(w)
            .filter(|&v| self.forcing.forces(v, a) && !self.forcing.forces(v, b))
            .collect();
        cands
            .iter()
            .copied()
            .filter(|&v| !cands.iter().any(|&x| x != v && self.model.leq(x, v)))
            .min()
            .ok_or_else(|| MinModError::Internal(format!("no witness above world {w}")))
    }

    fn implication_antecedents(&self, w: World) -> FormulaSet {
        let u = self.u;
        u.set_of(
            self.data[w]
                .lambda_star
                .intersection(u.g_imp())
                .iter()
                .map(|f| u.antecedent(f).expect("implication")),
        )
    }

    fn join(&mut self, w: World, upsilon: FormulaSet, flavor: JoinFlavor, target: SubId) -> Result<NodeId, MinModError> {
        let mut ids = Vec::new();
        for y in upsilon.iter() {
            ids.push(self.irregular(w, y)?);
        }
        let premises: Vec<&Sequent> = ids.iter().map(|&id| self.store.sequent(id)).collect();
        let s = apply_join(self.u, &premises, flavor, target)?;
        let rule = match flavor {
            JoinFlavor::At => Rule::JoinAt,
            JoinFlavor::Or => Rule::JoinOr,
        };
        Ok(self.add(s, rule, ids))
    }

    fn irregular(&mut self, w: World, c: SubId) -> Result<NodeId, MinModError> {
        if let Some(&id) = self.irregular.get(&(w, c)) {
            return Ok(id);
        }
        let u = self.u;
        let id = match *u.node(c) {
            Node::Var(_) | Node::Falsum => {
                let theta = u.g_at().without(c).union(u.g_imp());
                self.add(Sequent::irregular(u.empty_set(), theta, c), Rule::AxIrregular, vec![])
            }
            Node::Or(c1, c2) => {
                let p1 = self.irregular(w, c1)?;
                let p2 = self.irregular(w, c2)?;
                let s = apply_or(u, self.store.sequent(p1), self.store.sequent(p2), c)?;
                self.add(s, Rule::Or, vec![p1, p2])
            }
            Node::And(c1, c2) => {
                let p = self.irregular(w, self.failing_conjunct(w, c1, c2))?;
                let s = apply_and(u, self.store.sequent(p), c)?;
                self.add(s, Rule::And, vec![p])
            }
            Node::Imp(a, b) => {
                let eta = self.witness(w, a, b)?;
                if eta == w {
                    let p = self.irregular(w, b)?;
                    let prem = self.store.sequent(p).clone();
                    let pool = self.data[w].lambda_star.difference(&prem.sigma);
                    let lambda = minimal_supports(u, a, &prem.sigma, &pool)
                        .into_iter()
                        .next()
                        .ok_or_else(|| MinModError::Internal("antecedent has no support".into()))?;
                    if !lambda.is_subset(&prem.theta) {
                        return Err(MinModError::Internal("support escapes the losable part".into()));
                    }
                    let s = Sequent::irregular(prem.sigma.union(&lambda), prem.theta.difference(&lambda), c);
                    self.add(s, Rule::ImpInIrregular, vec![p])
                } else {
                    let p = self.regular(eta, b)?;
                    let pool = u.closure(self.store.sequent(p).gamma()).intersection(u.g_bar());
                    let mut theta = self.data[w].lambda_star.clone();
                    if !theta.is_subset(&pool) || u.closure_member(&theta, a) {
                        return Err(MinModError::Internal("strict part does not fit".into()));
                    }
                    for f in pool.iter() {
                        let next = theta.with(f);
                        if !u.closure_member(&next, a) {
                            theta = next;
                        }
                    }
                    self.add(Sequent::irregular(u.empty_set(), theta, c), Rule::ImpNotIn, vec![p])
                }
            }
        };
        self.irregular.insert((w, c), id);
        Ok(id)
    }

    fn regular(&mut self, w: World, c: SubId) -> Result<NodeId, MinModError> {
        if let Some(&id) = self.regular.get(&(w, c)) {
            return Ok(id);
        }
        let u = self.u;
        let id = match *u.node(c) {
            Node::Var(_) | Node::Falsum => {
                let upsilon = self.implication_antecedents(w);
                if upsilon.is_empty() {
                    self.add(Sequent::regular(u.g_at().without(c), c), Rule::AxRegular, vec![])
                } else {
                    self.join(w, upsilon, JoinFlavor::At, c)?
                }
            }
            Node::Or(c1, c2) => {
                let upsilon = self.implication_antecedents(w).with(c1).with(c2);
                self.join(w, upsilon, JoinFlavor::Or, c)?
            }
            Node::And(c1, c2) => {
                let p = self.regular(w, self.failing_conjunct(w, c1, c2))?;
                let s = apply_and(u, self.store.sequent(p), c)?;
                self.add(s, Rule::And, vec![p])
            }
            Node::Imp(a, b) => {
                let eta = self.witness(w, a, b)?;
                let p = self.regular(eta, b)?;
                let s = apply_imp_in_regular(u, self.store.sequent(p), c)?;
                self.add(s, Rule::ImpInRegular, vec![p])
            }
        };
        self.regular.insert((w, c), id);
        Ok(id)
    }
}
