//! Finite Kripke models and forcing.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::formula::{FormulaSet, GoalUniverse, Node, SubId};

pub type World = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown world {0}")]
    UnknownWorld(World),
    #[error("order is not antisymmetric: worlds {0} and {1} lie above each other")]
    NotAntisymmetric(World, World),
    #[error("root {root} is not below world {world}")]
    RootNotMinimum { root: World, world: World },
    #[error("valuation not monotone: {atom} holds at {lower} but not at {upper}")]
    NotMonotone {
        lower: World,
        upper: World,
        atom: String,
    },
    #[error("root forces the goal")]
    RootForcesGoal,
}

/// A finite rooted poset with a valuation on atom names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    up: Vec<FixedBitSet>,
    root: World,
    val: Vec<BTreeSet<String>>,
    labels: Vec<Option<String>>,
}

impl KripkeModel {
    /// Builds a model from generating pairs `(below, above)`; the order is their
    /// reflexive-transitive closure. Nothing is validated here, see [`check_countermodel`].
    pub fn from_pairs(
        worlds: usize,
        pairs: &[(World, World)],
        root: World,
        val: Vec<BTreeSet<String>>,
    ) -> Result<Self, ModelError> {
        if root >= worlds {
            return Err(ModelError::UnknownWorld(root));
        }
        if val.len() != worlds {
            return Err(ModelError::UnknownWorld(val.len().min(worlds)));
        }
        let mut up: Vec<FixedBitSet> = (0..worlds)
            .map(|w| {
                let mut s = FixedBitSet::with_capacity(worlds);
                s.insert(w);
                s
            })
            .collect();
        for &(a, b) in pairs {
            if a >= worlds || b >= worlds {
                return Err(ModelError::UnknownWorld(a.max(b)));
            }
            up[a].insert(b);
        }
        // Warshall.
        for k in 0..worlds {
            for i in 0..worlds {
                if up[i].contains(k) {
                    let row = up[k].clone();
                    up[i].union_with(&row);
                }
            }
        }
        Ok(KripkeModel {
            up,
            root,
            val,
            labels: vec![None; worlds],
        })
    }

    /// Convenience constructor with valuations given as atom-name slices.
    pub fn build(
        worlds: usize,
        pairs: &[(World, World)],
        root: World,
        val: &[&[&str]],
    ) -> Result<Self, ModelError> {
        let val = val
            .iter()
            .map(|v| v.iter().map(|s| s.to_string()).collect())
            .collect();
        Self::from_pairs(worlds, pairs, root, val)
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Self {
        assert_eq!(labels.len(), self.len());
        self.labels = labels;
        self
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn root(&self) -> World {
        self.root
    }

    pub fn worlds(&self) -> std::ops::Range<World> {
        0..self.len()
    }

    pub fn leq(&self, a: World, b: World) -> bool {
        self.up[a].contains(b)
    }

    pub fn up_set(&self, w: World) -> impl Iterator<Item = World> + '_ {
        self.up[w].ones()
    }

    pub fn valuation(&self, w: World) -> &BTreeSet<String> {
        &self.val[w]
    }

    pub fn label(&self, w: World) -> Option<&str> {
        self.labels[w].as_deref()
    }

    /// Mutable access to a valuation, for building corrupted models in tests.
    pub fn valuation_mut(&mut self, w: World) -> &mut BTreeSet<String> {
        &mut self.val[w]
    }

    /// Worlds with no strict successor.
    pub fn finals(&self) -> Vec<World> {
        self.worlds().filter(|&w| self.up[w].count_ones(..) == 1).collect()
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covering_pairs(&self) -> Vec<(World, World)> {
        let mut out = Vec::new();
        for a in self.worlds() {
            for b in self.up[a].ones().filter(|&b| b != a) {
                let between = self.up[a]
                    .ones()
                    .any(|c| c != a && c != b && self.leq(c, b) && !self.leq(b, c));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Immediate predecessors of `w`.
    pub fn predecessors(&self, w: World) -> Vec<World> {
        self.covering_pairs()
            .into_iter()
            .filter(|&(_, b)| b == w)
            .map(|(a, _)| a)
            .collect()
    }

    fn heights(&self) -> Vec<usize> {
        // Strict successors have strictly smaller up-sets in a partial order.
        let mut order: Vec<World> = self.worlds().collect();
        order.sort_by_key(|&w| self.up[w].count_ones(..));
        let mut h = vec![0usize; self.len()];
        for &w in &order {
            h[w] = self.up[w]
                .ones()
                .filter(|&v| v != w && !self.leq(v, w))
                .map(|v| h[v] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    pub fn height_of(&self, w: World) -> usize {
        self.heights()[w]
    }

    pub fn height(&self) -> usize {
        self.height_of(self.root)
    }

    /// Checks partial order, minimum root and monotone valuation.
    pub fn validate(&self) -> Result<(), ModelError> {
        for a in self.worlds() {
            for b in self.up[a].ones() {
                if a != b && self.leq(b, a) {
                    return Err(ModelError::NotAntisymmetric(a, b));
                }
                if let Some(atom) = self.val[a].difference(&self.val[b]).next() {
                    return Err(ModelError::NotMonotone {
                        lower: a,
                        upper: b,
                        atom: atom.clone(),
                    });
                }
            }
            if !self.leq(self.root, a) {
                return Err(ModelError::RootNotMinimum {
                    root: self.root,
                    world: a,
                });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct WorldOut<'a> {
            id: World,
            val: Vec<&'a str>,
            label: Option<&'a str>,
        }
        #[derive(Serialize)]
        struct ModelOut<'a> {
            worlds: Vec<WorldOut<'a>>,
            order: Vec<[World; 2]>,
            root: World,
        }
        let out = ModelOut {
            worlds: self
                .worlds()
                .map(|w| WorldOut {
                    id: w,
                    val: self.val[w].iter().map(String::as_str).collect(),
                    label: self.label(w),
                })
                .collect(),
            order: self.covering_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            root: self.root,
        };
        serde_json::to_value(out).expect("model serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph countermodel {\n  rankdir=BT;\n  node [shape=box];\n");
        for w in self.worlds() {
            let atoms: Vec<&str> = self.val[w].iter().map(String::as_str).collect();
            let _ = writeln!(s, "  w{w} [label=\"{w}: {}\"];", atoms.join(", "));
        }
        for (a, b) in self.covering_pairs() {
            let _ = writeln!(s, "  w{a} -> w{b};");
        }
        s.push_str("}\n");
        s
    }

    /// TikZ picture with the root at the bottom.
    pub fn to_tikz(&self) -> String {
        let h = self.heights();
        let top = h[self.root];
        let mut per_level = vec![0usize; top + 1];
        let mut s = String::from("\\begin{tikzpicture}[every node/.style={draw, rounded corners}]\n");
        for w in self.worlds() {
            let level = top - h[w];
            let x = per_level[level];
            per_level[level] += 1;
            let atoms: Vec<&str> = self.val[w].iter().map(String::as_str).collect();
            let val = if atoms.is_empty() { "\\emptyset".to_string() } else { atoms.join(", ") };
            let _ = writeln!(s, "  \\node (w{w}) at ({}, {}) {{${w}: {val}$}};", 2 * x, 1.5 * level as f64);
        }
        for (a, b) in self.covering_pairs() {
            let _ = writeln!(s, "  \\draw (w{a}) -- (w{b});");
        }
        s.push_str("\\end{tikzpicture}\n");
        s
    }

    pub fn to_text(&self) -> String {
        let h = self.heights();
        let mut s = format!("root {} height {}\n", self.root, h[self.root]);
        for w in self.worlds() {
            let atoms: Vec<&str> = self.val[w].iter().map(String::as_str).collect();
            let above: Vec<String> = self
                .covering_pairs()
                .into_iter()
                .filter(|&(a, _)| a == w)
                .map(|(_, b)| b.to_string())
                .collect();
            let _ = write!(s, "world {w} [{}]", atoms.join(", "));
            if let Some(l) = self.label(w) {
                let _ = write!(s, " <{l}>");
            }
            if !above.is_empty() {
                let _ = write!(s, " below {}", above.join(" "));
            }
            s.push('\n');
        }
        s
    }
}

/// Forcing table for one model over the subformulas of one goal.
#[derive(Debug, Clone)]
pub struct Forcing {
    table: Vec<FormulaSet>,
}

impl Forcing {
    pub fn new(model: &KripkeModel, u: &GoalUniverse) -> Self {
        let n = model.len();
        let mut table = vec![u.empty_set(); n];
        // Subformulas are indexed children first; worlds evaluated top-down so
        // implications see completed successors.
        let mut order: Vec<World> = model.worlds().collect();
        order.sort_by_key(|&w| model.up[w].count_ones(..));
        for &w in &order {
            for f in 0..u.len() {
                let holds = match u.node(f) {
                    Node::Var(name) => model.val[w].contains(&**name),
                    Node::Falsum => false,
                    Node::And(a, b) => table[w].contains(*a) && table[w].contains(*b),
                    Node::Or(a, b) => table[w].contains(*a) || table[w].contains(*b),
                    Node::Imp(a, b) => model.up[w].ones().all(|v| {
                        let t = if v == w { &table[w] } else { &table[v] };
                        !t.contains(*a) || t.contains(*b)
                    }),
                };
                if holds {
                    table[w].insert(f);
                }
            }
        }
        Forcing { table }
    }

    pub fn forces(&self, w: World, f: SubId) -> bool {
        self.table[w].contains(f)
    }

    /// All subformulas forced at `w`.
    pub fn forced(&self, w: World) -> &FormulaSet {
        &self.table[w]
    }
}

pub fn forces(
    model: &KripkeModel,
    u: &GoalUniverse,
    w: World,
    f: SubId,
) -> Result<bool, ModelError> {
    if w >= model.len() {
        return Err(ModelError::UnknownWorld(w));
    }
    Ok(Forcing::new(model, u).forces(w, f))
}

/// Model invariants plus non-forcing of the goal at the root.
pub fn check_countermodel(model: &KripkeModel, u: &GoalUniverse) -> Result<(), ModelError> {
    model.validate()?;
    if Forcing::new(model, u).forces(model.root(), u.goal()) {
        return Err(ModelError::RootForcesGoal);
    }
    Ok(())
}

/// First `(lower, upper, formula)` with the formula forced below but not above.
pub fn monotone_forcing_audit(
    model: &KripkeModel,
    u: &GoalUniverse,
    set: &FormulaSet,
) -> Result<(), (World, World, SubId)> {
    let forcing = Forcing::new(model, u);
    for a in model.worlds() {
        for b in model.up_set(a) {
            for f in set.iter() {
                if forcing.forces(a, f) && !forcing.forces(b, f) {
                    return Err((a, b, f));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: &str = "((~~p -> p) -> (~p | p)) -> (~~p | ~p)";

    // rho = 0, alpha = 1, gamma = 2, beta = 3.
    fn scott_model() -> KripkeModel {
        KripkeModel::build(4, &[(0, 1), (0, 2), (2, 3)], 0, &[&[], &[], &[], &["p"]]).unwrap()
    }

    #[test]
    fn falsum_never_forced() {
        let u = GoalUniverse::parse("false -> p").unwrap();
        let m = KripkeModel::build(1, &[], 0, &[&["p"]]).unwrap();
        assert!(!forces(&m, &u, 0, u.falsum().unwrap()).unwrap());
        assert_eq!(forces(&m, &u, 3, 0), Err(ModelError::UnknownWorld(3)));
    }

    #[test]
    fn scott_countermodel() {
        let u = GoalUniverse::parse(S).unwrap();
        let m = scott_model();
        assert_eq!(m.height(), 2);
        assert!(!forces(&m, &u, 0, u.goal()).unwrap());
        assert!(forces(&m, &u, 3, u.find("p").unwrap()).unwrap());
        check_countermodel(&m, &u).unwrap();
        monotone_forcing_audit(&m, &u, &u.set_of(0..u.len())).unwrap();
    }

    #[test]
    fn single_world_checks() {
        let u = GoalUniverse::parse("p").unwrap();
        let m = KripkeModel::build(1, &[], 0, &[&[]]).unwrap();
        assert_eq!(m.height(), 0);
        check_countermodel(&m, &u).unwrap();
        let m = KripkeModel::build(1, &[], 0, &[&["p"]]).unwrap();
        assert_eq!(check_countermodel(&m, &u), Err(ModelError::RootForcesGoal));
    }

    #[test]
    fn invalid_models_are_named() {
        let u = GoalUniverse::parse("p").unwrap();
        let m = KripkeModel::build(2, &[(0, 1)], 0, &[&["p"], &[]]).unwrap();
        assert!(matches!(
            check_countermodel(&m, &u),
            Err(ModelError::NotMonotone { .. })
        ));
        let m = KripkeModel::build(2, &[(0, 1), (1, 0)], 0, &[&[], &[]]).unwrap();
        assert!(matches!(
            check_countermodel(&m, &u),
            Err(ModelError::NotAntisymmetric(..))
        ));
        let m = KripkeModel::build(2, &[], 0, &[&[], &[]]).unwrap();
        assert!(matches!(
            check_countermodel(&m, &u),
            Err(ModelError::RootNotMinimum { .. })
        ));
    }

    #[test]
    fn corrupted_valuation_breaks_monotonicity() {
        let u = GoalUniverse::parse(S).unwrap();
        let mut m = KripkeModel::build(
            4,
            &[(0, 1), (0, 2), (2, 3)],
            0,
            &[&[], &[], &["p"], &["p"]],
        )
        .unwrap();
        m.valuation_mut(3).clear();
        let p = u.find("p").unwrap();
        assert_eq!(
            monotone_forcing_audit(&m, &u, &u.set_of([p])),
            Err((2, 3, p))
        );
        assert!(monotone_forcing_audit(&m, &u, &u.empty_set()).is_ok());
    }

    #[test]
    fn exports() {
        let m = scott_model();
        let json = m.to_json();
        assert_eq!(json["root"], 0);
        assert_eq!(json["worlds"].as_array().unwrap().len(), 4);
        assert_eq!(json["order"].as_array().unwrap().len(), 3);
        let dot = m.to_dot();
        assert!(dot.contains("w3 [label=\"3: p\"]"));
        assert!(dot.contains("w2 -> w3;"));
        assert!(!dot.contains("w0 -> w3;"));
    }
}
