use std::collections::BTreeSet;

use ipl_core::formula::GoalUniverse;
use ipl_core::frj::{Kind, Sequent};
use ipl_core::gen::random_formulas;
use ipl_core::saturation::{fsearch, Database, InsertResult, Rule, Saturator, SearchOptions};

const S: &str = "((~~p -> p) -> (~p | p)) -> (~~p | ~p)";
const H: &str = "(~~p -> p) -> ~p | p";
const E: &str = "p & (p -> q1 | q2) & (q1 -> r1 | r2) & (q2 -> r1 | r2) -> r1 | r2";

fn reg(u: &GoalUniverse, gamma: &[&str], c: &str) -> Sequent {
    Sequent::regular(u.set_from_text(gamma), u.find(c).unwrap())
}

fn irr(u: &GoalUniverse, sigma: &[&str], theta: &[&str], c: &str) -> Sequent {
    Sequent::irregular(u.set_from_text(sigma), u.set_from_text(theta), u.find(c).unwrap())
}

fn live(db: &Database) -> Vec<Sequent> {
    db.entries().map(|e| db.sequent(e).clone()).collect()
}

#[test]
fn scott_iterations_follow_the_worked_derivation() {
    let u = GoalUniverse::parse(S).unwrap();
    let mut sat = Saturator::new(&u, SearchOptions::new());
    sat.step();
    let start = live(sat.db());
    assert!(start.contains(&irr(&u, &[], &["p", H, "~~p", "~p"], "false")));
    assert!(start.contains(&irr(&u, &[], &[H, "~~p", "~p"], "p")));

    sat.step();
    let first = live(sat.db());
    assert!(first.contains(&irr(&u, &["p"], &[H, "~~p", "~p"], "~p")));
    assert!(first.contains(&irr(&u, &["~~p"], &[H, "~p"], "~~p -> p")));
    assert!(first.contains(&reg(&u, &["~p"], "false")));

    sat.step();
    let second = live(sat.db());
    assert!(second.contains(&reg(&u, &["p", "~~p"], "false")));
    assert!(second.contains(&irr(&u, &[], &[H], "~~p")));
}

#[test]
fn scott_proof_ends_with_the_goal() {
    let u = GoalUniverse::parse(S).unwrap();
    let r = fsearch(&u, SearchOptions::new()).unwrap();
    let root = r.proof().unwrap();
    let store = r.db.store();
    assert_eq!(store.sequent(root), &reg(&u, &[H], S));
    let premise = store.node(root).premises[0];
    assert_eq!(store.sequent(premise), &reg(&u, &[H], "~~p | ~p"));
    assert_eq!(store.node(premise).rule, Rule::JoinOr);
}

#[test]
fn irregular_part_of_the_compact_database_of_e() {
    let u = GoalUniverse::parse(E).unwrap();
    let r = fsearch(&u, SearchOptions::new()).unwrap();
    assert!(r.proof().is_none());
    let db = r.db.minimum_compact();
    let got: BTreeSet<Sequent> = live(&db).into_iter().filter(|s| s.kind == Kind::Irregular).collect();
    let (a, b, c) = ("p -> q1 | q2", "q1 -> r1 | r2", "q2 -> r1 | r2");
    let want: BTreeSet<Sequent> = [
        irr(&u, &[], &["q1", "q2", "r1", "r2", a, b, c], "p"),
        irr(&u, &[], &["p", "q2", "r1", "r2", a, b, c], "q1"),
        irr(&u, &[], &["p", "q1", "r1", "r2", a, b, c], "q2"),
        irr(&u, &[], &["p", "q1", "q2", "r2", a, b, c], "r1"),
        irr(&u, &[], &["p", "q1", "q2", "r1", a, b, c], "r2"),
        irr(&u, &[], &["p", "q1", "q2", a, b, c], "r1 | r2"),
    ]
    .into_iter()
    .collect();
    assert_eq!(got, want);
}

#[test]
fn backward_subsumption_removes_consequences() {
    let u = GoalUniverse::parse("x & a & b -> q | r").unwrap();
    let mut db = Database::new(&u, true);
    let base = db.insert(irr(&u, &["x"], &["a"], "q"), Rule::AxIrregular, vec![], 0).added().unwrap();
    let mid = db.insert(irr(&u, &["x"], &["a"], "q | r"), Rule::Or, vec![base], 1).added().unwrap();
    let top = db.insert(reg(&u, &["x", "a"], "q | r"), Rule::JoinOr, vec![mid], 2).added().unwrap();
    let other = db.insert(irr(&u, &["x"], &["b"], "r"), Rule::AxIrregular, vec![], 0).added().unwrap();

    let res = db.insert(irr(&u, &["x"], &["a", "b"], "q"), Rule::AxIrregular, vec![], 3);
    match res {
        InsertResult::BackwardReplaced { removed, .. } => assert_eq!(removed, vec![base, mid, top]),
        other => panic!("expected a backward replacement, got {other:?}"),
    }
    assert!(db.is_alive(other));
    assert!(!db.is_alive(top));
    assert_eq!(db.len(), 2);

    let again = db.insert(irr(&u, &["x"], &["a"], "q"), Rule::AxIrregular, vec![], 4);
    assert!(matches!(again, InsertResult::ForwardSubsumed(_)));
}

fn valid_corpus() -> Vec<String> {
    let mut out = vec![E.to_string()];
    for t in random_formulas(11, 3, 12, 300) {
        let u = GoalUniverse::parse(&t).unwrap();
        if fsearch(&u, SearchOptions::new()).unwrap().proof().is_none() {
            out.push(t);
        }
    }
    out
}

#[test]
fn equal_seeds_give_equal_runs() {
    for t in valid_corpus().iter().take(8) {
        let u = GoalUniverse::parse(t).unwrap();
        let run = |seed| fsearch(&u, SearchOptions::new().shuffle(Some(seed))).unwrap().db.dump(&u);
        assert_eq!(run(5), run(5), "{t}");
    }
}

#[test]
fn compact_database_does_not_depend_on_order() {
    for t in valid_corpus() {
        let u = GoalUniverse::parse(&t).unwrap();
        let base = fsearch(&u, SearchOptions::new()).unwrap().db.minimum_compact().content_dump(&u);
        for seed in 0..4 {
            let db = fsearch(&u, SearchOptions::new().shuffle(Some(seed))).unwrap().db;
            assert_eq!(db.minimum_compact().content_dump(&u), base, "{t} seed {seed}");
        }
    }
}

#[test]
fn with_and_without_backward_subsumption_agree() {
    for t in valid_corpus() {
        let u = GoalUniverse::parse(&t).unwrap();
        let compact = fsearch(&u, SearchOptions::new()).unwrap().db;
        let loose = fsearch(&u, SearchOptions::new().backward_subsumption(false)).unwrap().db;
        assert!(loose.len() >= compact.len(), "{t}");
        assert!(compact.is_saturated_against(&loose), "{t}");
        assert!(loose.is_saturated_against(&compact), "{t}");
        let kept: BTreeSet<Sequent> = live(&loose).into_iter().collect();
        for s in live(&compact.minimum_compact()) {
            assert!(kept.contains(&s), "{t}: {}", s.render(&u));
        }
        assert_eq!(loose.minimum_compact().content_dump(&u), compact.minimum_compact().content_dump(&u));
    }
}

#[test]
fn every_nonvalid_search_ends_with_a_regular_goal_sequent() {
    for t in random_formulas(12, 3, 12, 100) {
        let u = GoalUniverse::parse(&t).unwrap();
        for mh in [false, true] {
            let r = fsearch(&u, SearchOptions::new().min_height(mh)).unwrap();
            if let Some(root) = r.proof() {
                let s = r.db.sequent(root);
                assert!(s.is_regular() && s.rhs == u.goal(), "{t}");
                assert!(r.db.is_alive(root));
            }
        }
    }
}
