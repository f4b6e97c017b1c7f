//! Cross-checks of a single goal: both procedures, every certificate, and the
//! structural laws relating derivations to models.

use std::fmt;

use crate::extraction::{check_derivation, derivation_from_model, extract_model, rank, soundness_audit};
use crate::formula::GoalUniverse;
use crate::frj::weight;
use crate::gbu::{bsearch, check_g3i, check_gbu, gbu_weight, oracle_decide, to_g3i, GbuDerivation};
use crate::kripke::{check_countermodel, monotone_forcing_audit};
use crate::saturation::{fsearch, DerivationStore, NodeId, SearchOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub goal: String,
    pub valid: bool,
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record<E: fmt::Display>(&mut self, name: impl Into<String>, outcome: Result<(), E>) -> bool {
        let passed = outcome.is_ok();
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: outcome.err().map(|e| e.to_string()),
        });
        passed
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "goal: {}", self.goal)?;
        writeln!(f, "verdict: {}", if self.valid { "valid" } else { "not valid" })?;
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Edges `(conclusion, premise)` of the derivation at `root` where the weight of the
/// conclusion is not strictly below that of the premise.
pub fn frj_weight_violations(u: &GoalUniverse, store: &DerivationStore, root: NodeId) -> Vec<(NodeId, NodeId)> {
    let mut bad = Vec::new();
    for id in store.reachable(root) {
        let w = weight(u, store.sequent(id));
        for &p in &store.node(id).premises {
            if w >= weight(u, store.sequent(p)) {
                bad.push((id, p));
            }
        }
    }
    bad
}

/// Edges where the premise is not strictly lighter than the conclusion.
pub fn gbu_weight_violations(u: &GoalUniverse, d: &GbuDerivation) -> usize {
    d.edges()
        .into_iter()
        .filter(|(c, p)| gbu_weight(u, p) >= gbu_weight(u, c))
        .count()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs every check that applies to the goal. Shuffle seeds drive the
/// order-independence check on valid goals.
pub fn audit(u: &GoalUniverse, shuffle_seeds: &[u64]) -> AuditReport {
    let oracle = oracle_decide(u);
    let mut report = AuditReport {
        goal: u.show(u.goal()),
        valid: oracle,
        checks: Vec::new(),
    };
    let mut heights = Vec::new();
    for min_height in [false, true] {
        let mode = if min_height { "minimal-height" } else { "default" };
        let result = match fsearch(u, SearchOptions::new().min_height(min_height)) {
            Ok(r) => r,
            Err(e) => {
                report.record(format!("{mode}: search terminates"), Err(e));
                continue;
            }
        };
        let refuted = result.proof().is_some();
        report.record(
            format!("{mode}: verdict agrees with exhaustive search"),
            ensure(refuted != oracle, || {
                format!("saturation says {}, exhaustive search says {}", !refuted, oracle)
            }),
        );
        if let Some(root) = result.proof() {
            let store = result.db.store();
            report.record(format!("{mode}: derivation checks"), check_derivation(u, store, root));
            let bad = frj_weight_violations(u, store, root);
            report.record(
                format!("{mode}: weight decreases towards the conclusion"),
                ensure(bad.is_empty(), || format!("{} bad edges, first {:?}", bad.len(), bad[0])),
            );
            let extracted = match extract_model(u, store, root) {
                Ok(m) => m,
                Err(e) => {
                    report.record(format!("{mode}: model extraction"), Err(e));
                    continue;
                }
            };
            let model = &extracted.model;
            report.record(format!("{mode}: countermodel checks"), check_countermodel(model, u));
            report.record(
                format!("{mode}: forcing is monotone"),
                monotone_forcing_audit(model, u, &u.set_of(0..u.len()))
                    .map_err(|(a, b, f)| format!("{} at {a} but not at {b}", u.show(f))),
            );
            report.record(format!("{mode}: soundness audit"), soundness_audit(u, store, root, &extracted));
            let r = rank(store, root);
            report.record(
                format!("{mode}: rank equals model height"),
                ensure(r == model.height() as i64, || format!("rank {r}, height {}", model.height())),
            );
            report.record(
                format!("{mode}: height bounded by goal size"),
                ensure(model.height() <= u.goal_size(), || format!("height {}", model.height())),
            );
            heights.push(model.height());
            let rebuilt = derivation_from_model(u, model).map_err(|e| e.to_string()).and_then(|d| {
                check_derivation(u, &d.store, d.root).map_err(|e| e.to_string())?;
                let r = rank(&d.store, d.root);
                ensure(r <= model.height() as i64, || format!("rank {r} above height {}", model.height()))
            });
            report.record(format!("{mode}: derivation rebuilt from the model"), rebuilt);
        } else {
            let (d, stats) = match bsearch(u, &result.db) {
                Ok(x) => x,
                Err(e) => {
                    report.record(format!("{mode}: backward search"), Err(e));
                    continue;
                }
            };
            report.record(format!("{mode}: backward derivation checks"), check_gbu(u, &d));
            report.record(
                format!("{mode}: backward search never retries"),
                ensure(stats.calls == d.size(), || format!("{} calls for {} nodes", stats.calls, d.size())),
            );
            let bad = gbu_weight_violations(u, &d);
            report.record(
                format!("{mode}: backward weight decreases towards premises"),
                ensure(bad == 0, || format!("{bad} bad edges")),
            );
            report.record(format!("{mode}: sequent calculus translation checks"), check_g3i(u, &to_g3i(u, &d)));
        }
    }
    if let [default, minimal] = heights[..] {
        report.record(
            "minimal-height model is no higher",
            ensure(minimal <= default, || format!("{minimal} above {default}")),
        );
    }
    if oracle && !shuffle_seeds.is_empty() {
        let dump = |seed: Option<u64>| {
            fsearch(u, SearchOptions::new().shuffle(seed))
                .map(|r| r.db.minimum_compact().content_dump(u))
                .map_err(|e| e.to_string())
        };
        let outcome = dump(None).and_then(|base| {
            for &s in shuffle_seeds {
                ensure(dump(Some(s))? == base, || format!("seed {s} gives a different database"))?;
            }
            Ok(())
        });
        report.record("compact database is order independent", outcome);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn audits_pass_on_small_goals() {
        for text in ["p -> p", "p | ~p", "(p -> q) -> (~q -> ~p)", "~~(p | ~p)"] {
            let u = GoalUniverse::parse(text).unwrap();
            let r = audit(&u, &[1, 2]);
            assert!(r.passed(), "{r}");
        }
    }
}
