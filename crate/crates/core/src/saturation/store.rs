use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::formula::GoalUniverse;
use crate::frj::Sequent;

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    AxRegular,
    AxIrregular,
    And,
    Or,
    ImpInRegular,
    ImpInIrregular,
    ImpNotIn,
    JoinAt,
    JoinOr,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::AxRegular => "Ax=>",
            Rule::AxIrregular => "Ax->",
            Rule::And => "and",
            Rule::Or => "or",
            Rule::ImpInRegular | Rule::ImpInIrregular => "imp-in",
            Rule::ImpNotIn => "imp-notin",
            Rule::JoinAt => "join-at",
            Rule::JoinOr => "join-or",
        }
    }

    pub fn is_join(self) -> bool {
        matches!(self, Rule::JoinAt | Rule::JoinOr)
    }

    pub fn is_axiom(self) -> bool {
        matches!(self, Rule::AxRegular | Rule::AxIrregular)
    }
}

#[derive(Clone, Debug)]
pub struct StoreNode {
    pub sequent: Sequent,
    pub rule: Rule,
    pub premises: Vec<NodeId>,
    pub iteration: usize,
}

/// Append-only record of every derived sequent. A sequent may be recorded
/// more than once if it is re-derived after removal; `find` returns the newest.
#[derive(Clone, Debug, Default)]
pub struct DerivationStore {
    nodes: Vec<StoreNode>,
    index: HashMap<Sequent, NodeId>,
    consumers: Vec<Vec<NodeId>>,
}

impl DerivationStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, sequent: Sequent, rule: Rule, premises: Vec<NodeId>, iteration: usize) -> NodeId {
        let id = self.nodes.len();
        for &p in &premises {
            assert!(p < id, "premise {p} does not precede node {id}");
            self.consumers[p].push(id);
        }
        self.index.insert(sequent.clone(), id);
        self.nodes.push(StoreNode {
            sequent,
            rule,
            premises,
            iteration,
        });
        self.consumers.push(Vec::new());
        id
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &StoreNode {
        &self.nodes[id]
    }

    pub fn sequent(&self, id: NodeId) -> &Sequent {
        &self.nodes[id].sequent
    }

    pub fn find(&self, s: &Sequent) -> Option<NodeId> {
        self.index.get(s).copied()
    }

    pub fn consumers(&self, id: NodeId) -> &[NodeId] {
        &self.consumers[id]
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &StoreNode)> {
        self.nodes.iter().enumerate()
    }

    /// Nodes of the derivation rooted at `root`, in ascending id order.
    pub fn reachable(&self, root: NodeId) -> Vec<NodeId> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![root];
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                stack.extend(self.nodes[n].premises.iter().copied());
            }
        }
        seen.into_iter().collect()
    }

    /// Numbered lines `(n) sequent  rule (premises)`, premises first.
    pub fn linearize(&self, u: &GoalUniverse, root: NodeId) -> String {
        let ids = self.reachable(root);
        let line: HashMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &n)| (n, i + 1)).collect();
        let mut out = String::new();
        for (i, &n) in ids.iter().enumerate() {
            let node = &self.nodes[n];
            let _ = write!(out, "({}) {}  {}", i + 1, node.sequent.render(u), node.rule.name());
            for p in &node.premises {
                let _ = write!(out, " ({})", line[p]);
            }
            out.push('\n');
        }
        out
    }
}

impl DerivationStore {
    /// The numbered lines as `{line, sequent, rule, premises}` records.
    pub fn linear_json(&self, u: &GoalUniverse, root: NodeId) -> serde_json::Value {
        let ids = self.reachable(root);
        let line: HashMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &n)| (n, i + 1)).collect();
        let lines: Vec<serde_json::Value> = ids
            .iter()
            .map(|&n| {
                let node = &self.nodes[n];
                serde_json::json!({
                    "line": line[&n],
                    "sequent": node.sequent.render(u),
                    "rule": node.rule.name(),
                    "premises": node.premises.iter().map(|p| line[p]).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::Value::Array(lines)
    }

    /// Graphviz digraph with edges from premises to conclusions.
    pub fn to_dot(&self, u: &GoalUniverse, root: NodeId) -> String {
        let ids = self.reachable(root);
        let mut out = String::from("digraph derivation {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for (i, &n) in ids.iter().enumerate() {
            let node = &self.nodes[n];
            let label = format!("({}) {}  {}", i + 1, node.sequent.render(u), node.rule.name());
            let _ = writeln!(out, "  n{n} [label={}];", serde_json::Value::String(label));
        }
        for &n in &ids {
            for p in &self.nodes[n].premises {
                let _ = writeln!(out, "  n{p} -> n{n};");
            }
        }
        out.push_str("}\n");
        out
    }

    /// The numbered lines as a LaTeX table.
    pub fn linear_typeset(&self, u: &GoalUniverse, root: NodeId) -> String {
        let ids = self.reachable(root);
        let line: HashMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &n)| (n, i + 1)).collect();
        let mut out = String::from("\\begin{tabular}{rll}\n");
        for (i, &n) in ids.iter().enumerate() {
            let node = &self.nodes[n];
            let prem: Vec<String> = node.premises.iter().map(|p| format!("({})", line[p])).collect();
            let _ = writeln!(
                out,
                "({}) & ${}$ & \\textsf{{{}}} {} \\\\",
                i + 1,
                node.sequent.render_latex(u),
                node.rule.name().replace('>', "\\textgreater{}"),
                prem.join(" ")
            );
        }
        out.push_str("\\end{tabular}\n");
        out
    }
}
