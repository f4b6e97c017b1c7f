use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::database::{Database, InsertResult};
use super::join::join_instances;
use super::store::{NodeId, Rule};
use crate::formula::{GoalUniverse, Node, SubId};
use crate::frj::{
    apply_and, apply_imp_in_irregular, apply_imp_in_regular, apply_imp_notin, apply_or, axioms,
    Kind, Sequent,
};

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub backward_subsumption: bool,
    /// Delay joins: saturate the other rules first, then apply one wave of joins.
    pub min_height: bool,
    pub max_iterations: Option<usize>,
    /// Shuffles the insertion order of every batch.
    pub shuffle_seed: Option<u64>,
}

impl SearchOptions {
    pub fn new() -> Self {
        SearchOptions {
            backward_subsumption: true,
            ..Default::default()
        }
    }

    pub fn min_height(mut self, on: bool) -> Self {
        self.min_height = on;
        self
    }

    pub fn backward_subsumption(mut self, on: bool) -> Self {
        self.backward_subsumption = on;
        self
    }

    pub fn shuffle(mut self, seed: Option<u64>) -> Self {
        self.shuffle_seed = seed;
        self
    }

    pub fn max_iterations(mut self, n: Option<usize>) -> Self {
        self.max_iterations = n;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("iteration budget of {0} exceeded")]
    IterationBudgetExceeded(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A regular sequent with the goal on the right: the goal is not valid.
    Proof(NodeId),
    Saturated,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IterationStats {
    pub iteration: usize,
    pub joins: bool,
    pub generated: usize,
    pub forward_subsumed: usize,
    pub backward_removed: usize,
    pub added: usize,
    pub db_size: usize,
    pub join_sets: usize,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub db: Database,
    pub outcome: SearchOutcome,
    pub stats: Vec<IterationStats>,
}

impl SearchResult {
    pub fn proof(&self) -> Option<NodeId> {
        match self.outcome {
            SearchOutcome::Proof(id) => Some(id),
            SearchOutcome::Saturated => None,
        }
    }
}

/// A conclusion waiting to be inserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub sequent: Sequent,
    pub rule: Rule,
    pub premises: Vec<NodeId>,
}

struct Parents {
    and: Vec<Vec<SubId>>,
    or_left: Vec<Vec<SubId>>,
    or_right: Vec<Vec<SubId>>,
    imp: Vec<Vec<SubId>>,
}

impl Parents {
    fn new(u: &GoalUniverse) -> Self {
        let mut p = Parents {
            and: vec![Vec::new(); u.len()],
            or_left: vec![Vec::new(); u.len()],
            or_right: vec![Vec::new(); u.len()],
            imp: vec![Vec::new(); u.len()],
        };
        for t in u.sfr().iter() {
            match *u.node(t) {
                Node::And(a, b) => {
                    p.and[a].push(t);
                    if b != a {
                        p.and[b].push(t);
                    }
                }
                Node::Or(a, b) => {
                    p.or_left[a].push(t);
                    p.or_right[b].push(t);
                }
                Node::Imp(_, b) => p.imp[b].push(t),
                _ => {}
            }
        }
        p
    }
}

/// Forward saturation. Construct with [`Saturator::new`], then call [`Saturator::step`]
/// for single iterations or [`Saturator::run`] to reach a verdict.
pub struct Saturator<'u> {
    u: &'u GoalUniverse,
    opts: SearchOptions,
    parents: Parents,
    db: Database,
    last: Vec<NodeId>,
    since_wave: HashSet<NodeId>,
    iteration: usize,
    stats: Vec<IterationStats>,
    rng: Option<ChaCha8Rng>,
    proof: Option<NodeId>,
}

impl<'u> Saturator<'u> {
    pub fn new(u: &'u GoalUniverse, opts: SearchOptions) -> Self {
        let rng = opts.shuffle_seed.map(ChaCha8Rng::seed_from_u64);
        let mut sat = Saturator {
            u,
            db: Database::new(u, opts.backward_subsumption),
            opts,
            parents: Parents::new(u),
            last: Vec::new(),
            since_wave: HashSet::new(),
            iteration: 0,
            stats: Vec::new(),
            rng,
            proof: None,
        };
        let batch = axioms(u)
            .into_iter()
            .map(|s| Candidate {
                rule: match s.kind {
                    Kind::Regular => Rule::AxRegular,
                    Kind::Irregular => Rule::AxIrregular,
                },
                sequent: s,
                premises: Vec::new(),
            })
            .collect();
        sat.insert_batch(batch, 0, false);
        sat
    }

    pub fn db(&self) -> &Database {
        &self.db
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn proof(&self) -> Option<NodeId> {
        self.proof
    }

    /// Entries added by the latest iteration that are still live.
    pub fn last_added(&self) -> Vec<NodeId> {
        self.last.iter().copied().filter(|&id| self.db.is_alive(id)).collect()
    }

    /// One iteration with every rule, joins included. Returns the ids added.
    pub fn step(&mut self) -> Vec<NodeId> {
        let fresh: HashSet<NodeId> = self.last_added().into_iter().collect();
        let mut batch = self.nonjoin_conclusions(&fresh);
        let (joins, sets) = join_instances(self.u, &self.db, &fresh);
        batch.extend(joins.into_iter().map(|j| Candidate {
            sequent: j.sequent,
            rule: j.rule,
            premises: j.premises,
        }));
        self.iteration += 1;
        self.insert_batch(batch, sets, true)
    }

    fn nonjoin_step(&mut self) -> Vec<NodeId> {
        let fresh: HashSet<NodeId> = self.last_added().into_iter().collect();
        let batch = self.nonjoin_conclusions(&fresh);
        self.iteration += 1;
        self.insert_batch(batch, 0, false)
    }

    fn join_wave(&mut self) -> Vec<NodeId> {
        let fresh: HashSet<NodeId> = self
            .since_wave
            .drain()
            .filter(|&id| self.db.is_alive(id))
            .collect();
        let (joins, sets) = join_instances(self.u, &self.db, &fresh);
        let batch = joins
            .into_iter()
            .map(|j| Candidate {
                sequent: j.sequent,
                rule: j.rule,
                premises: j.premises,
            })
            .collect();
        self.iteration += 1;
        self.insert_batch(batch, sets, true)
    }

    fn nonjoin_conclusions(&self, fresh: &HashSet<NodeId>) -> Vec<Candidate> {
        let u = self.u;
        let mut out = Vec::new();
        let mut ids: Vec<NodeId> = fresh.iter().copied().collect();
        ids.sort_unstable();
        for id in ids {
            let s = self.db.sequent(id);
            for &t in &self.parents.and[s.rhs] {
                if let Ok(c) = apply_and(u, s, t) {
                    out.push(Candidate { sequent: c, rule: Rule::And, premises: vec![id] });
                }
            }
            if s.kind == Kind::Irregular {
                for &t in &self.parents.or_left[s.rhs] {
                    let Node::Or(_, c2) = *u.node(t) else { unreachable!() };
                    for &q in self.db.with_rhs(Kind::Irregular, c2) {
                        if let Ok(c) = apply_or(u, s, self.db.sequent(q), t) {
                            out.push(Candidate { sequent: c, rule: Rule::Or, premises: vec![id, q] });
                        }
                    }
                }
                for &t in &self.parents.or_right[s.rhs] {
                    let Node::Or(c1, _) = *u.node(t) else { unreachable!() };
                    for &q in self.db.with_rhs(Kind::Irregular, c1) {
                        if let Ok(c) = apply_or(u, self.db.sequent(q), s, t) {
                            out.push(Candidate { sequent: c, rule: Rule::Or, premises: vec![q, id] });
                        }
                    }
                }
            }
            for &t in &self.parents.imp[s.rhs] {
                match s.kind {
                    Kind::Regular => {
                        if let Ok(c) = apply_imp_in_regular(u, s, t) {
                            out.push(Candidate { sequent: c, rule: Rule::ImpInRegular, premises: vec![id] });
                        }
                        for c in apply_imp_notin(u, s, t) {
                            out.push(Candidate { sequent: c, rule: Rule::ImpNotIn, premises: vec![id] });
                        }
                    }
                    Kind::Irregular => {
                        for c in apply_imp_in_irregular(u, s, t) {
                            out.push(Candidate { sequent: c, rule: Rule::ImpInIrregular, premises: vec![id] });
                        }
                    }
                }
            }
        }
        out
    }

    fn insert_batch(&mut self, mut batch: Vec<Candidate>, join_sets: usize, joins: bool) -> Vec<NodeId> {
        let mut st = IterationStats {
            iteration: self.iteration,
            joins,
            generated: batch.len(),
            join_sets,
            ..Default::default()
        };
        batch.sort_by(|a, b| {
            a.sequent
                .cmp(&b.sequent)
                .then(a.rule.cmp(&b.rule))
                .then_with(|| a.premises.cmp(&b.premises))
        });
        batch.dedup_by(|b, a| a.sequent == b.sequent);
        if let Some(rng) = &mut self.rng {
            batch.shuffle(rng);
        }
        let goal = self.u.goal();
        let mut added = Vec::new();
        for c in batch {
            // Irregular sequents for the goal itself can never be used by any rule.
            if c.sequent.kind == Kind::Irregular && c.sequent.rhs == goal {
                continue;
            }
            if c.premises.iter().any(|&p| !self.db.is_alive(p)) {
                continue;
            }
            match self.db.insert(c.sequent, c.rule, c.premises, self.iteration) {
                InsertResult::Added(id) => added.push(id),
                InsertResult::BackwardReplaced { added: id, removed } => {
                    st.backward_removed += removed.len();
                    added.push(id);
                }
                InsertResult::ForwardSubsumed(_) => st.forward_subsumed += 1,
            }
        }
        added.retain(|&id| self.db.is_alive(id));
        st.added = added.len();
        st.db_size = self.db.len();
        self.stats.push(st);
        for &id in &added {
            let s = self.db.sequent(id);
            if s.kind == Kind::Irregular {
                self.since_wave.insert(id);
            }
            if self.proof.is_none() && s.kind == Kind::Regular && s.rhs == goal {
                self.proof = Some(id);
            }
        }
        self.last = added.clone();
        added
    }

    fn budget_left(&self) -> Result<(), SearchError> {
        match self.opts.max_iterations {
            Some(n) if self.iteration >= n => Err(SearchError::IterationBudgetExceeded(n)),
            _ => Ok(()),
        }
    }

    pub fn run(mut self) -> Result<SearchResult, SearchError> {
        if self.opts.min_height {
            self.run_staged()?;
        } else {
            while self.proof.is_none() && !self.last_added().is_empty() {
                self.budget_left()?;
                self.step();
            }
        }
        let outcome = match self.proof {
            Some(id) => SearchOutcome::Proof(id),
            None => SearchOutcome::Saturated,
        };
        Ok(SearchResult {
            db: self.db,
            outcome,
            stats: self.stats,
        })
    }

    fn run_staged(&mut self) -> Result<(), SearchError> {
        loop {
            while self.proof.is_none() && !self.last_added().is_empty() {
                self.budget_left()?;
                self.nonjoin_step();
            }
            if self.proof.is_some() || self.since_wave.iter().all(|&id| !self.db.is_alive(id)) {
                return Ok(());
            }
            self.budget_left()?;
            self.join_wave();
            if self.proof.is_some() {
                return Ok(());
            }
        }
    }
}

pub fn fsearch(u: &GoalUniverse, opts: SearchOptions) -> Result<SearchResult, SearchError> {
    Saturator::new(u, opts).run()
}
