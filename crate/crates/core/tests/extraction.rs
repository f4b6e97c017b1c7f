use std::collections::BTreeSet;

use ipl_core::extraction::{
    check_derivation, derivation_from_model, extract_model, rank, soundness_audit, ExtractedModel,
};
use ipl_core::formula::{GoalUniverse, Node, SubId};
use ipl_core::gen::random_formulas;
use ipl_core::kripke::{KripkeModel, World};
use ipl_core::saturation::{fsearch, Rule, SearchOptions};
use proptest::prelude::*;

const S: &str = "((~~p -> p) -> (~p | p)) -> (~~p | ~p)";
const T: &str = "(((~~p -> p) -> (~p | p)) -> (~~p | ~p)) -> (~~p -> p) | ~~p";
const K: &str = "(~a -> b | c) -> (~a -> b) | (~a -> c)";
const C: &str = "((p1 -> p2) | (p2 -> p1)) | ((q1 -> q2) | (q2 -> q1))";

/// Forcing straight from the definition.
fn forces(m: &KripkeModel, u: &GoalUniverse, w: World, f: SubId) -> bool {
    match *u.node(f) {
        Node::Var(_) => m.valuation(w).contains(u.var_name(f).unwrap()),
        Node::Falsum => false,
        Node::And(a, b) => forces(m, u, w, a) && forces(m, u, w, b),
        Node::Or(a, b) => forces(m, u, w, a) || forces(m, u, w, b),
        Node::Imp(a, b) => m.up_set(w).all(|v| !forces(m, u, v, a) || forces(m, u, v, b)),
    }
}

/// Truth-table evaluation over every assignment.
fn classically_valid(u: &GoalUniverse) -> bool {
    let vars: Vec<SubId> = (0..u.len()).filter(|&f| u.is_var(f)).collect();
    fn eval(u: &GoalUniverse, f: SubId, on: &BTreeSet<SubId>) -> bool {
        match *u.node(f) {
            Node::Var(_) => on.contains(&f),
            Node::Falsum => false,
            Node::And(a, b) => eval(u, a, on) && eval(u, b, on),
            Node::Or(a, b) => eval(u, a, on) || eval(u, b, on),
            Node::Imp(a, b) => !eval(u, a, on) || eval(u, b, on),
        }
    }
    (0..1u32 << vars.len()).all(|mask| {
        let on = vars.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
        eval(u, u.goal(), &on)
    })
}

fn minimal_model(text: &str) -> (GoalUniverse, ExtractedModel) {
    let u = GoalUniverse::parse(text).unwrap();
    let r = fsearch(&u, SearchOptions::new().min_height(true)).unwrap();
    let root = r.proof().expect("not valid");
    let m = extract_model(&u, r.db.store(), root).unwrap();
    (u, m)
}

fn valuations(m: &KripkeModel) -> Vec<Vec<String>> {
    let mut v: Vec<Vec<String>> = m.worlds().map(|w| m.valuation(w).iter().cloned().collect()).collect();
    v.sort();
    v
}

#[test]
fn scott_model() {
    let (u, e) = minimal_model(S);
    let m = &e.model;
    assert_eq!((m.height(), m.len()), (2, 4));
    assert_eq!(valuations(m), vec![vec![], vec![], vec![], vec!["p".to_string()]]);
    assert!(!forces(m, &u, m.root(), u.goal()));
}

#[test]
fn anti_scott_model_is_not_a_tree() {
    let (u, e) = minimal_model(T);
    let m = &e.model;
    assert_eq!((m.height(), m.len()), (2, 5));
    assert!(m.worlds().any(|w| m.predecessors(w).len() >= 2));
    assert!(!forces(m, &u, m.root(), u.goal()));
}

#[test]
fn kreisel_putnam_model() {
    let (u, e) = minimal_model(K);
    let m = &e.model;
    assert_eq!((m.height(), m.len()), (1, 4));
    let mut leaves: Vec<Vec<String>> = m.finals().into_iter().map(|w| m.valuation(w).iter().cloned().collect()).collect();
    leaves.sort();
    let want: Vec<Vec<String>> = vec![vec!["a".into(), "b".into(), "c".into()], vec!["b".into()], vec!["c".into()]];
    assert_eq!(leaves, want);
    assert!(!forces(m, &u, m.root(), u.goal()));
}

#[test]
fn scott_model_rebuilt_into_a_derivation() {
    let u = GoalUniverse::parse(S).unwrap();
    // root 0, then 1 and 2 above it, and 3 above 2 with p true.
    let ks = KripkeModel::build(4, &[(0, 1), (0, 2), (2, 3)], 0, &[&[], &[], &[], &["p"]]).unwrap();
    let d = derivation_from_model(&u, &ks).unwrap();
    check_derivation(&u, &d.store, d.root).unwrap();
    let root = d.store.sequent(d.root);
    assert_eq!(root.render(&u), "(~~p -> p) -> ~p | p ⇒ ((~~p -> p) -> ~p | p) -> ~~p | ~p");
    assert_eq!(rank(&d.store, d.root), 2);
    let e = extract_model(&u, &d.store, d.root).unwrap();
    assert_eq!(e.model.height(), 2);
    soundness_audit(&u, &d.store, d.root, &e).unwrap();
}

#[test]
fn four_disjunct_model_gives_a_wider_model() {
    let u = GoalUniverse::parse(C).unwrap();
    let mc = KripkeModel::build(3, &[(0, 1), (0, 2)], 0, &[&[], &["p1", "q1"], &["p2", "q2"]]).unwrap();
    let d = derivation_from_model(&u, &mc).unwrap();
    check_derivation(&u, &d.store, d.root).unwrap();
    let node = d.store.node(d.root);
    assert!(node.sequent.is_regular() && node.sequent.gamma().is_empty());
    assert_eq!(node.sequent.rhs, u.goal());
    assert_eq!(node.rule, Rule::JoinOr);
    let e = extract_model(&u, &d.store, d.root).unwrap();
    assert_eq!((e.model.len(), e.model.height()), (5, 1));
}

#[test]
fn rejects_models_that_force_the_goal() {
    let u = GoalUniverse::parse("p -> p").unwrap();
    let m = KripkeModel::build(1, &[], 0, &[&[]]).unwrap();
    assert!(derivation_from_model(&u, &m).is_err());
}

#[test]
fn height_zero_exactly_for_classical_non_tautologies() {
    for t in random_formulas(21, 3, 12, 300) {
        let u = GoalUniverse::parse(&t).unwrap();
        let r = fsearch(&u, SearchOptions::new().min_height(true)).unwrap();
        if let Some(root) = r.proof() {
            let m = extract_model(&u, r.db.store(), root).unwrap().model;
            assert_eq!(m.height() == 0, !classically_valid(&u), "{t}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extracted_models_refute_the_goal(seed in any::<u64>(), min_height in any::<bool>()) {
        let t = random_formulas(seed, 3, 12, 1).remove(0);
        let u = GoalUniverse::parse(&t).unwrap();
        let r = fsearch(&u, SearchOptions::new().min_height(min_height)).unwrap();
        if let Some(root) = r.proof() {
            let store = r.db.store();
            let e = extract_model(&u, store, root).unwrap();
            let m = &e.model;
            prop_assert!(!forces(m, &u, m.root(), u.goal()), "{}", t);
            for a in m.worlds() {
                for b in m.up_set(a) {
                    prop_assert!(m.valuation(a).is_subset(m.valuation(b)));
                }
            }
            for id in store.reachable(root) {
                let s = store.sequent(id);
                if s.is_regular() {
                    let w = e.phi[&id];
                    prop_assert!(s.gamma().iter().all(|f| forces(m, &u, w, f)));
                    prop_assert!(!forces(m, &u, w, s.rhs));
                }
            }
            prop_assert_eq!(rank(store, root), m.height() as i64);
            let rebuilt = derivation_from_model(&u, m).unwrap();
            check_derivation(&u, &rebuilt.store, rebuilt.root).unwrap();
            prop_assert!(rank(&rebuilt.store, rebuilt.root) <= m.height() as i64);
        }
    }
}
