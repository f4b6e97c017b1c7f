use std::collections::VecDeque;

use super::store::{DerivationStore, NodeId, Rule};
use crate::formula::GoalUniverse;
use crate::frj::{subsumes, Kind, Sequent};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InsertResult {
    Added(NodeId),
    ForwardSubsumed(NodeId),
    /// Added, after removing the listed entries (strictly subsumed ones and their consequences).
    BackwardReplaced { added: NodeId, removed: Vec<NodeId> },
}

impl InsertResult {
    pub fn added(&self) -> Option<NodeId> {
        match *self {
            InsertResult::Added(id) | InsertResult::BackwardReplaced { added: id, .. } => Some(id),
            InsertResult::ForwardSubsumed(_) => None,
        }
    }
}

/// The live sequents of a search, indexed by kind and right-hand side.
#[derive(Clone, Debug)]
pub struct Database {
    store: DerivationStore,
    alive: Vec<bool>,
    regular: Vec<Vec<NodeId>>,
    irregular: Vec<Vec<NodeId>>,
    compact: bool,
    live: usize,
}

impl Database {
    pub fn new(u: &GoalUniverse, compact: bool) -> Self {
        Database {
            store: DerivationStore::new(),
            alive: Vec::new(),
            regular: vec![Vec::new(); u.len()],
            irregular: vec![Vec::new(); u.len()],
            compact,
            live: 0,
        }
    }

    pub fn store(&self) -> &DerivationStore {
        &self.store
    }

    pub fn is_compact_mode(&self) -> bool {
        self.compact
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn is_alive(&self, id: NodeId) -> bool {
        self.alive.get(id).copied().unwrap_or(false)
    }

    pub fn sequent(&self, id: NodeId) -> &Sequent {
        self.store.sequent(id)
    }

    /// Live entries in ascending id order.
    pub fn entries(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.alive.len()).filter(|&i| self.alive[i])
    }

    pub fn with_rhs(&self, kind: Kind, rhs: usize) -> &[NodeId] {
        match kind {
            Kind::Regular => &self.regular[rhs],
            Kind::Irregular => &self.irregular[rhs],
        }
    }

    fn bucket(&mut self, kind: Kind, rhs: usize) -> &mut Vec<NodeId> {
        match kind {
            Kind::Regular => &mut self.regular[rhs],
            Kind::Irregular => &mut self.irregular[rhs],
        }
    }

    /// Some live entry subsuming `s`.
    pub fn subsumer(&self, s: &Sequent) -> Option<NodeId> {
        self.with_rhs(s.kind, s.rhs)
            .iter()
            .copied()
            .find(|&e| subsumes(s, self.sequent(e)))
    }

    pub fn insert(&mut self, s: Sequent, rule: Rule, premises: Vec<NodeId>, iteration: usize) -> InsertResult {
        if let Some(by) = self.subsumer(&s) {
            return InsertResult::ForwardSubsumed(by);
        }
        let (kind, rhs) = (s.kind, s.rhs);
        let victims: Vec<NodeId> = if self.compact {
            self.with_rhs(kind, rhs)
                .iter()
                .copied()
                .filter(|&e| subsumes(self.sequent(e), &s))
                .collect()
        } else {
            Vec::new()
        };
        let id = self.store.add(s, rule, premises, iteration);
        self.alive.resize(self.store.len(), false);
        let mut removed = Vec::new();
        for v in victims {
            self.remove_cascade(v, &mut removed);
        }
        debug_assert!(!removed.contains(&id));
        self.alive[id] = true;
        self.live += 1;
        self.bucket(kind, rhs).push(id);
        if removed.is_empty() {
            InsertResult::Added(id)
        } else {
            removed.sort_unstable();
            InsertResult::BackwardReplaced { added: id, removed }
        }
    }

    fn kill(&mut self, id: NodeId) {
        self.alive[id] = false;
        self.live -= 1;
        let (kind, rhs) = {
            let s = self.store.sequent(id);
            (s.kind, s.rhs)
        };
        self.bucket(kind, rhs).retain(|&x| x != id);
    }

    /// Removes `root` and every live entry derived from it.
    fn remove_cascade(&mut self, root: NodeId, removed: &mut Vec<NodeId>) {
        let mut queue = VecDeque::from([root]);
        while let Some(n) = queue.pop_front() {
            if !self.is_alive(n) {
                continue;
            }
            self.kill(n);
            removed.push(n);
            queue.extend(self.store.consumers(n).iter().copied());
        }
    }

    /// Copy holding only the live entries not strictly subsumed by another live entry.
    pub fn minimum_compact(&self) -> Database {
        let mut out = self.clone();
        out.compact = true;
        let doomed: Vec<NodeId> = self
            .entries()
            .filter(|&e| {
                let s = self.sequent(e);
                self.with_rhs(s.kind, s.rhs)
                    .iter()
                    .any(|&o| o != e && subsumes(s, self.sequent(o)) && self.sequent(o) != s)
            })
            .collect();
        for e in doomed {
            out.kill(e);
        }
        out
    }

    /// Every entry of `other` is subsumed by some entry here.
    pub fn is_saturated_against(&self, other: &Database) -> bool {
        other.entries().all(|e| self.subsumer(other.sequent(e)).is_some())
    }

    fn sorted_entries(&self) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = self.entries().collect();
        ids.sort_by(|&a, &b| self.sequent(a).cmp(self.sequent(b)).then(a.cmp(&b)));
        ids
    }

    /// One line per entry in canonical order with rule and premise ids.
    pub fn dump(&self, u: &GoalUniverse) -> String {
        let mut out = String::new();
        for id in self.sorted_entries() {
            let node = self.store.node(id);
            let premises: Vec<String> = node.premises.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!(
                "{}: {}  [{}{}{}]\n",
                id,
                node.sequent.render(u),
                node.rule.name(),
                if premises.is_empty() { "" } else { " " },
                premises.join(" ")
            ));
        }
        out
    }

    /// Sequents only, in canonical order. Independent of how the entries were derived.
    pub fn content_dump(&self, u: &GoalUniverse) -> String {
        self.sorted_entries()
            .into_iter()
            .map(|id| self.sequent(id).render(u) + "\n")
            .collect()
    }
}
