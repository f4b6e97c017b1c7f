//! From refutation derivations to Kripke countermodels, and back.
//!
//! The worlds of an extracted model are the p-sequents of the derivation: regular
//! axioms and join conclusions. A world lies below every p-sequent used to derive it.

mod minmod;
mod verify;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::formula::{FormulaSet, GoalUniverse};
use crate::frj::{Kind, Sequent};
use crate::kripke::{Forcing, KripkeModel, ModelError, World};
use crate::saturation::{DerivationStore, NodeId, Rule};

pub use minmod::{derivation_from_model, MinModDerivation, MinModError};
pub use verify::{check_derivation, DerivationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("node {0} is not a regular sequent for the goal")]
    NotARegularRoot(NodeId),
    #[error("extracted structure is not a countermodel: {0}")]
    Model(#[from] ModelError),
}

/// A regular axiom or the conclusion of a join.
pub fn is_p_sequent(store: &DerivationStore, id: NodeId) -> bool {
    let node = store.node(id);
    node.sequent.is_regular() && (node.rule == Rule::AxRegular || node.rule.is_join())
}

/// Join depth: irregular axioms count -1, regular axioms 0, each join adds one.
pub fn rank(store: &DerivationStore, id: NodeId) -> i64 {
    ranks(store, id)[&id]
}

/// Ranks of every node of the derivation rooted at `root`.
pub fn ranks(store: &DerivationStore, root: NodeId) -> HashMap<NodeId, i64> {
    let mut out = HashMap::new();
    // Premises have smaller ids, so ascending order sees them first.
    for id in store.reachable(root) {
        let node = store.node(id);
        let r = match node.rule {
            Rule::AxIrregular => -1,
            Rule::AxRegular => 0,
            rule => {
                let m = node.premises.iter().map(|p| out[p]).max().unwrap_or(-1);
                if rule.is_join() {
                    m + 1
                } else {
                    m
                }
            }
        };
        out.insert(id, r);
    }
    out
}

/// Line numbers used by [`DerivationStore::linearize`].
pub fn line_numbers(store: &DerivationStore, root: NodeId) -> HashMap<NodeId, usize> {
    store
        .reachable(root)
        .into_iter()
        .enumerate()
        .map(|(i, n)| (n, i + 1))
        .collect()
}

#[derive(Debug, Clone)]
pub struct ExtractedModel {
    pub model: KripkeModel,
    /// The p-sequent node behind each world.
    pub world_node: Vec<NodeId>,
    /// The world assigned to every regular node of the derivation.
    pub phi: HashMap<NodeId, World>,
}

impl ExtractedModel {
    pub fn world_of_sequent(&self, store: &DerivationStore, s: &Sequent) -> Option<World> {
        self.world_node.iter().position(|&n| store.sequent(n) == s)
    }
}

pub fn extract_model(
    u: &GoalUniverse,
    store: &DerivationStore,
    root: NodeId,
) -> Result<ExtractedModel, ExtractError> {
    let rs = store.sequent(root);
    if !rs.is_regular() || rs.rhs != u.goal() {
        return Err(ExtractError::NotARegularRoot(root));
    }
    let nodes = store.reachable(root);
    let lines = line_numbers(store, root);

    // Equal p-sequents met at different nodes are one world.
    let mut by_sequent: HashMap<&Sequent, World> = HashMap::new();
    let mut world_node = Vec::new();
    let mut world_of_node: HashMap<NodeId, World> = HashMap::new();
    for &id in &nodes {
        if is_p_sequent(store, id) {
            let s = store.sequent(id);
            let w = *by_sequent.entry(s).or_insert_with(|| {
                world_node.push(id);
                world_node.len() - 1
            });
            world_of_node.insert(id, w);
        }
    }

    let mut phi: HashMap<NodeId, World> = HashMap::new();
    for &id in &nodes {
        let node = store.node(id);
        if !node.sequent.is_regular() {
            continue;
        }
        let w = match world_of_node.get(&id) {
            Some(&w) => w,
            None => {
                let p = node
                    .premises
                    .iter()
                    .copied()
                    .find(|p| store.sequent(*p).is_regular())
                    .expect("regular non-p-sequent has a regular premise");
                phi[&p]
            }
        };
        phi.insert(id, w);
    }

    // Reachable p-sequents from each p-sequent, through premises.
    let mut above: HashMap<NodeId, BTreeSet<World>> = HashMap::new();
    for &id in &nodes {
        let mut set = BTreeSet::new();
        for p in &store.node(id).premises {
            set.extend(above[p].iter().copied());
            if let Some(&w) = world_of_node.get(p) {
                set.insert(w);
            }
        }
        above.insert(id, set);
    }
    let mut pairs = Vec::new();
    for (&id, &w) in &world_of_node {
        for &v in &above[&id] {
            if v != w {
                pairs.push((w, v));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();

    let val: Vec<BTreeSet<String>> = world_node
        .iter()
        .map(|&n| {
            store
                .sequent(n)
                .lhs()
                .iter()
                .filter_map(|f| u.var_name(f).map(str::to_string))
                .collect()
        })
        .collect();
    let labels = world_node.iter().map(|n| Some(format!("({})", lines[n]))).collect();
    let model = KripkeModel::from_pairs(world_node.len(), &pairs, phi[&root], val)?.with_labels(labels);
    model.validate()?;
    Ok(ExtractedModel {
        model,
        world_node,
        phi,
    })
}

/// A regular node whose world forces the wrong thing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("node {node}: world {world} {}", if *.should_force { "does not force a left formula" } else { "forces the right formula" })]
pub struct AuditFailure {
    pub node: NodeId,
    pub world: World,
    pub formula: usize,
    pub should_force: bool,
}

/// For every regular `Γ ⇒ C` of the derivation, its world forces all of `Γ` and not `C`.
pub fn soundness_audit(
    u: &GoalUniverse,
    store: &DerivationStore,
    root: NodeId,
    extracted: &ExtractedModel,
) -> Result<(), AuditFailure> {
    let forcing = Forcing::new(&extracted.model, u);
    for id in store.reachable(root) {
        let s = store.sequent(id);
        if s.kind != Kind::Regular {
            continue;
        }
        let world = extracted.phi[&id];
        if let Some(f) = s.gamma().iter().find(|&f| !forcing.forces(world, f)) {
            return Err(AuditFailure {
                node: id,
                world,
                formula: f,
                should_force: true,
            });
        }
        if forcing.forces(world, s.rhs) {
            return Err(AuditFailure {
                node: id,
                world,
                formula: s.rhs,
                should_force: false,
            });
        }
    }
    Ok(())
}

/// Left formulas forced at a world, the strictly forced ones among them, and the
/// right formulas not forced there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemWorldData {
    pub lambda: FormulaSet,
    pub lambda_star: FormulaSet,
    pub omega: FormulaSet,
}

pub fn semantic_world_data(model: &KripkeModel, u: &GoalUniverse, world: World) -> SemWorldData {
    world_data(&Forcing::new(model, u), u, world)
}

pub(crate) fn world_data(forcing: &Forcing, u: &GoalUniverse, world: World) -> SemWorldData {
    let forced = forcing.forced(world);
    let lambda = forced.intersection(u.sfl());
    let lambda_star = FormulaSet::from_iter(
        u.len(),
        lambda.iter().filter(|&f| {
            u.is_var(f) || u.antecedent(f).is_some_and(|a| !forced.contains(a))
        }),
    );
    let omega = u.sfr().difference(forced);
    SemWorldData {
        lambda,
        lambda_star,
        omega,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: &str = "((~~p -> p) -> (~p | p)) -> (~~p | ~p)";

    #[test]
    fn scott_world_data() {
        let u = GoalUniverse::parse(S).unwrap();
        // rho = 0, alpha = 1, gamma = 2, beta = 3.
        let m = KripkeModel::build(4, &[(0, 1), (0, 2), (2, 3)], 0, &[&[], &[], &[], &["p"]]).unwrap();
        let alpha = semantic_world_data(&m, &u, 1);
        assert_eq!(alpha.lambda_star, u.set_from_text(&["~p"]));
        assert_eq!(alpha.omega, u.set_from_text(&["false", "p", "~~p"]));
        let gamma = semantic_world_data(&m, &u, 2);
        let h = "(~~p -> p) -> ~p | p";
        assert_eq!(gamma.lambda_star, u.set_from_text(&[h, "~~p"]));
        assert_eq!(gamma.lambda, gamma.lambda_star);
    }

    #[test]
    fn rejects_irregular_root() {
        let u = GoalUniverse::parse("p").unwrap();
        let mut store = DerivationStore::new();
        let id = store.add(
            Sequent::irregular(u.empty_set(), u.empty_set(), u.goal()),
            Rule::AxIrregular,
            vec![],
            0,
        );
        assert_eq!(
            extract_model(&u, &store, id).unwrap_err(),
            ExtractError::NotARegularRoot(id)
        );
        assert_eq!(rank(&store, id), -1);
    }
}
