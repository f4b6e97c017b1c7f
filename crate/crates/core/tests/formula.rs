use ipl_core::formula::{FormulaSet, GoalUniverse, Interner, Node};
use proptest::prelude::*;

const GOALS: &[&str] = &[
    "((~~p -> p) -> (~p | p)) -> (~~p | ~p)",
    "(~a -> b | c) -> (~a -> b) | (~a -> c)",
    "p & (p -> q1 | q2) & (q1 -> r1 | r2) & (q2 -> r1 | r2) -> r1 | r2",
    "(a & b | c -> d) & (d -> a | ~c) -> (b -> c) | (c & a -> false)",
];

/// The closure grammar run to a fixpoint inside the subformulas of the goal.
fn closure_by_fixpoint(u: &GoalUniverse, gamma: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; u.len()];
    for &g in gamma {
        inside[g] = true;
    }
    loop {
        let mut changed = false;
        for f in 0..u.len() {
            if inside[f] {
                continue;
            }
            let now = match *u.node(f) {
                Node::And(a, b) => inside[a] && inside[b],
                Node::Or(a, b) => inside[a] || inside[b],
                Node::Imp(_, b) => inside[b],
                _ => false,
            };
            if now {
                inside[f] = true;
                changed = true;
            }
        }
        if !changed {
            return inside;
        }
    }
}

fn subset_of(u: &GoalUniverse, bits: &[bool]) -> FormulaSet {
    u.set_of((0..u.len()).filter(|&i| bits.get(i).copied().unwrap_or(false)))
}

fn goal_and_sets() -> impl Strategy<Value = (usize, Vec<bool>, Vec<bool>)> {
    (0..GOALS.len(), prop::collection::vec(any::<bool>(), 40), prop::collection::vec(any::<bool>(), 40))
}

proptest! {
    #[test]
    fn closure_matches_the_grammar((g, bits, _) in goal_and_sets()) {
        let u = GoalUniverse::parse(GOALS[g]).unwrap();
        let gamma = subset_of(&u, &bits);
        let expected = closure_by_fixpoint(&u, &gamma.iter().collect::<Vec<_>>());
        let cl = u.closure(&gamma);
        for f in 0..u.len() {
            prop_assert_eq!(cl.contains(f), expected[f], "{}", u.show(f));
            prop_assert_eq!(u.closure_member(&gamma, f), expected[f]);
        }
    }

    #[test]
    fn closure_is_extensive_and_idempotent((g, bits, _) in goal_and_sets()) {
        let u = GoalUniverse::parse(GOALS[g]).unwrap();
        let gamma = subset_of(&u, &bits);
        let cl = u.closure(&gamma);
        prop_assert!(gamma.is_subset(&cl));
        prop_assert_eq!(u.closure(&cl), cl);
    }

    #[test]
    fn closure_is_monotone((g, a, b) in goal_and_sets()) {
        let u = GoalUniverse::parse(GOALS[g]).unwrap();
        let small = subset_of(&u, &a);
        let big = small.union(&subset_of(&u, &b));
        prop_assert!(u.closure(&small).is_subset(&u.closure(&big)));
    }

    #[test]
    fn closure_adds_no_variables((g, bits, _) in goal_and_sets()) {
        let u = GoalUniverse::parse(GOALS[g]).unwrap();
        let gamma = subset_of(&u, &bits);
        let cl = u.closure(&gamma);
        for f in (0..u.len()).filter(|&f| u.is_var(f)) {
            prop_assert_eq!(cl.contains(f), gamma.contains(f));
        }
    }
}

fn formula_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("p".to_string()),
        Just("q".to_string()),
        Just("r1".to_string()),
        Just("false".to_string()),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| format!("~{a}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} & {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} | {b})")),
            (inner.clone(), inner).prop_map(|(a, b)| format!("({a} -> {b})")),
        ]
    })
}

proptest! {
    #[test]
    fn printing_round_trips(text in formula_text()) {
        let mut i = Interner::new();
        let f = i.parse(&text).unwrap();
        let printed = i.display(f);
        prop_assert_eq!(i.parse(&printed).unwrap(), f);
        prop_assert!(printed.len() <= text.len());
    }
}

#[test]
fn scott_polarities() {
    let u = GoalUniverse::parse(GOALS[0]).unwrap();
    let left = ["(~~p -> p) -> ~p | p", "~p | p", "~~p", "~p", "p"];
    let right = ["~~p | ~p", "~~p -> p", "~~p", "~p", "p", "false"];
    for f in left {
        assert!(u.sfl().contains(u.find(f).unwrap()), "{f}");
    }
    for f in right {
        assert!(u.sfr().contains(u.find(f).unwrap()), "{f}");
    }
    assert!(u.sfr().contains(u.goal()));
}
