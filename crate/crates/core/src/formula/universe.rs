use std::collections::HashMap;

use super::{write_formula, Formula, FormulaSet, Interner, ParseError, Shape, View};

/// Position of a subformula of the goal. Children always sit below their parents.
pub type SubId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Var(Box<str>),
    Falsum,
    And(SubId, SubId),
    Or(SubId, SubId),
    Imp(SubId, SubId),
}

/// The subformulas of a goal, re-indexed densely, with the left/right
/// polarity sets every other module works with.
#[derive(Clone, Debug)]
pub struct GoalUniverse {
    nodes: Vec<Node>,
    sizes: Vec<usize>,
    handles: Vec<Formula>,
    positions: HashMap<Node, SubId>,
    goal: SubId,
    sfl: FormulaSet,
    sfr: FormulaSet,
    g_at: FormulaSet,
    g_imp: FormulaSet,
    g_bar: FormulaSet,
    prime_sfr: FormulaSet,
    left_antecedents: FormulaSet,
    right_disjuncts: FormulaSet,
}

impl GoalUniverse {
    pub fn new(interner: &Interner, goal: Formula) -> Self {
        let mut seen = vec![false; interner.len()];
        let mut stack = vec![goal];
        let mut handles = Vec::new();
        while let Some(f) = stack.pop() {
            if std::mem::replace(&mut seen[f.id()], true) {
                continue;
            }
            handles.push(f);
            if let Shape::And(a, b) | Shape::Or(a, b) | Shape::Imp(a, b) = interner.shape(f) {
                stack.push(*a);
                stack.push(*b);
            }
        }
        // Interner order puts children first.
        handles.sort();
        let local: HashMap<Formula, SubId> =
            handles.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let nodes: Vec<Node> = handles
            .iter()
            .map(|&f| match interner.shape(f) {
                Shape::Var(name) => Node::Var(name.clone()),
                Shape::Falsum => Node::Falsum,
                Shape::And(a, b) => Node::And(local[a], local[b]),
                Shape::Or(a, b) => Node::Or(local[a], local[b]),
                Shape::Imp(a, b) => Node::Imp(local[a], local[b]),
            })
            .collect();
        let n = nodes.len();
        let sizes = handles.iter().map(|&f| interner.size(f)).collect();
        let positions = nodes.iter().cloned().enumerate().map(|(i, nd)| (nd, i)).collect();
        let goal = local[&goal];

        let mut sfl = FormulaSet::empty(n);
        let mut sfr = FormulaSet::empty(n);
        sfr.insert(goal);
        for i in (0..n).rev() {
            let (l, r) = (sfl.contains(i), sfr.contains(i));
            match nodes[i] {
                Node::And(a, b) | Node::Or(a, b) => {
                    for c in [a, b] {
                        if l {
                            sfl.insert(c);
                        }
                        if r {
                            sfr.insert(c);
                        }
                    }
                }
                Node::Imp(a, b) => {
                    if l {
                        sfr.insert(a);
                        sfl.insert(b);
                    }
                    if r {
                        sfl.insert(a);
                        sfr.insert(b);
                    }
                }
                Node::Var(_) | Node::Falsum => {}
            }
        }
        let mut g_at = FormulaSet::empty(n);
        let mut g_imp = FormulaSet::empty(n);
        let mut prime_sfr = FormulaSet::empty(n);
        for i in 0..n {
            match nodes[i] {
                Node::Var(_) if sfl.contains(i) => g_at.insert(i),
                Node::Imp(..) if sfl.contains(i) => g_imp.insert(i),
                _ => {}
            }
            if matches!(nodes[i], Node::Var(_) | Node::Falsum) && sfr.contains(i) {
                prime_sfr.insert(i);
            }
        }
        let g_bar = g_at.union(&g_imp);
        let mut left_antecedents = FormulaSet::empty(n);
        let mut right_disjuncts = FormulaSet::empty(n);
        for i in 0..n {
            match nodes[i] {
                Node::Imp(a, _) if sfl.contains(i) => left_antecedents.insert(a),
                Node::Or(a, b) if sfr.contains(i) => {
                    right_disjuncts.insert(a);
                    right_disjuncts.insert(b);
                }
                _ => {}
            }
        }
        GoalUniverse {
            nodes,
            sizes,
            handles,
            positions,
            goal,
            sfl,
            sfr,
            g_at,
            g_imp,
            g_bar,
            prime_sfr,
            left_antecedents,
            right_disjuncts,
        }
    }

    /// Parses `text` into a fresh interner and builds its universe.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut interner = Interner::new();
        let goal = interner.parse(text)?;
        Ok(Self::new(&interner, goal))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn goal(&self) -> SubId {
        self.goal
    }

    pub fn node(&self, f: SubId) -> &Node {
        &self.nodes[f]
    }

    pub fn size(&self, f: SubId) -> usize {
        self.sizes[f]
    }

    pub fn goal_size(&self) -> usize {
        self.sizes[self.goal]
    }

    /// Interner handle of a subformula.
    pub fn handle(&self, f: SubId) -> Formula {
        self.handles[f]
    }

    pub fn sfl(&self) -> &FormulaSet {
        &self.sfl
    }

    pub fn sfr(&self) -> &FormulaSet {
        &self.sfr
    }

    /// Atoms among the left subformulas.
    pub fn g_at(&self) -> &FormulaSet {
        &self.g_at
    }

    /// Implications among the left subformulas.
    pub fn g_imp(&self) -> &FormulaSet {
        &self.g_imp
    }

    pub fn g_bar(&self) -> &FormulaSet {
        &self.g_bar
    }

    /// Variables and `false` among the right subformulas.
    pub fn prime_sfr(&self) -> &FormulaSet {
        &self.prime_sfr
    }

    /// Antecedents `Y` of implications `Y -> Z` among the left subformulas.
    pub fn left_antecedents(&self) -> &FormulaSet {
        &self.left_antecedents
    }

    /// Disjuncts of disjunctions among the right subformulas.
    pub fn right_disjuncts(&self) -> &FormulaSet {
        &self.right_disjuncts
    }

    pub fn empty_set(&self) -> FormulaSet {
        FormulaSet::empty(self.len())
    }

    pub fn set_of<I: IntoIterator<Item = SubId>>(&self, items: I) -> FormulaSet {
        FormulaSet::from_iter(self.len(), items)
    }

    pub fn is_var(&self, f: SubId) -> bool {
        matches!(self.nodes[f], Node::Var(_))
    }

    pub fn is_prime(&self, f: SubId) -> bool {
        matches!(self.nodes[f], Node::Var(_) | Node::Falsum)
    }

    pub fn is_imp(&self, f: SubId) -> bool {
        matches!(self.nodes[f], Node::Imp(..))
    }

    pub fn var_name(&self, f: SubId) -> Option<&str> {
        match &self.nodes[f] {
            Node::Var(name) => Some(name),
            _ => None,
        }
    }

    /// Position of the variable called `name`, if it occurs in the goal.
    pub fn var_named(&self, name: &str) -> Option<SubId> {
        self.positions.get(&Node::Var(name.into())).copied()
    }

    pub fn falsum(&self) -> Option<SubId> {
        self.positions.get(&Node::Falsum).copied()
    }

    /// Antecedent of an implication.
    pub fn antecedent(&self, f: SubId) -> Option<SubId> {
        match self.nodes[f] {
            Node::Imp(a, _) => Some(a),
            _ => None,
        }
    }

    /// Finds the subformula written as `text`, if it is one.
    pub fn find(&self, text: &str) -> Option<SubId> {
        let mut interner = Interner::new();
        let f = interner.parse(text).ok()?;
        self.locate(&interner, f)
    }

    /// Maps a formula from another interner onto this universe.
    pub fn locate(&self, interner: &Interner, f: Formula) -> Option<SubId> {
        let node = match interner.shape(f) {
            Shape::Var(name) => Node::Var(name.clone()),
            Shape::Falsum => Node::Falsum,
            Shape::And(a, b) => Node::And(self.locate(interner, *a)?, self.locate(interner, *b)?),
            Shape::Or(a, b) => Node::Or(self.locate(interner, *a)?, self.locate(interner, *b)?),
            Shape::Imp(a, b) => Node::Imp(self.locate(interner, *a)?, self.locate(interner, *b)?),
        };
        self.positions.get(&node).copied()
    }

    /// Set of subformulas named by their concrete syntax. Panics on unknown text.
    pub fn set_from_text(&self, items: &[&str]) -> FormulaSet {
        self.set_of(items.iter().map(|t| {
            self.find(t)
                .unwrap_or_else(|| panic!("`{t}` is not a subformula of the goal"))
        }))
    }

    /// Whether `f` belongs to the closure of `gamma`.
    pub fn closure_member(&self, gamma: &FormulaSet, f: SubId) -> bool {
        if gamma.contains(f) {
            return true;
        }
        match self.nodes[f] {
            Node::And(a, b) => self.closure_member(gamma, a) && self.closure_member(gamma, b),
            Node::Or(a, b) => self.closure_member(gamma, a) || self.closure_member(gamma, b),
            Node::Imp(_, b) => self.closure_member(gamma, b),
            Node::Var(_) | Node::Falsum => false,
        }
    }

    /// The closure of `gamma` restricted to the subformulas of the goal.
    pub fn closure(&self, gamma: &FormulaSet) -> FormulaSet {
        let mut cl = gamma.clone();
        for i in 0..self.len() {
            let member = match self.nodes[i] {
                Node::And(a, b) => cl.contains(a) && cl.contains(b),
                Node::Or(a, b) => cl.contains(a) || cl.contains(b),
                Node::Imp(_, b) => cl.contains(b),
                Node::Var(_) | Node::Falsum => false,
            };
            if member {
                cl.insert(i);
            }
        }
        cl
    }

    pub fn show(&self, f: SubId) -> String {
        let mut out = String::new();
        write_formula(&mut out, f, 0, &|g: SubId| match &self.nodes[g] {
            Node::Var(name) => View::Var(name),
            Node::Falsum => View::Falsum,
            Node::And(a, b) => View::And(*a, *b),
            Node::Or(a, b) => View::Or(*a, *b),
            Node::Imp(a, b) => match self.nodes[*b] {
                Node::Falsum => View::Not(*a),
                _ => View::Imp(*a, *b),
            },
        })
        .expect("writing to a String cannot fail");
        out
    }

    /// LaTeX math rendering with the usual connective symbols.
    pub fn show_latex(&self, f: SubId) -> String {
        latex_of(&self.show(f))
    }

    /// Comma-separated members in index order; `·` for the empty set.
    pub fn show_set(&self, set: &FormulaSet) -> String {
        if set.is_empty() {
            return "·".into();
        }
        set.iter().map(|f| self.show(f)).collect::<Vec<_>>().join(", ")
    }

    pub fn show_set_latex(&self, set: &FormulaSet) -> String {
        if set.is_empty() {
            return "\\cdot".into();
        }
        set.iter().map(|f| self.show_latex(f)).collect::<Vec<_>>().join(", ")
    }
}

/// Rewrites the plain printer output token by token.
pub(crate) fn latex_of(plain: &str) -> String {
    let mut out = String::new();
    let mut chars = plain.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '~' => out.push_str("\\neg "),
            '&' => out.push_str("\\land"),
            '|' => out.push_str("\\lor"),
            '-' if chars.peek() == Some(&'>') => {
                chars.next();
                out.push_str("\\supset");
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::from(c);
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        word.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if word == "false" {
                    out.push_str("\\bot");
                } else {
                    out.push_str(&word.replace('_', "\\_"));
                }
            }
            c => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: &str = "((~~p -> p) -> (~p | p)) -> (~~p | ~p)";
    const K: &str = "(~a -> b | c) -> (~a -> b) | (~a -> c)";

    fn names(u: &GoalUniverse, s: &FormulaSet) -> Vec<String> {
        s.iter().map(|f| u.show(f)).collect()
    }

    #[test]
    fn atom_goal() {
        let u = GoalUniverse::parse("p").unwrap();
        assert_eq!(names(&u, u.sfr()), ["p"]);
        assert!(u.sfl().is_empty());
        assert!(u.g_bar().is_empty());
    }

    #[test]
    fn scott_polarities() {
        let u = GoalUniverse::parse(S).unwrap();
        for l in ["(~~p -> p) -> ~p | p", "~p | p", "~~p", "~p", "p"] {
            assert!(u.sfl().contains(u.find(l).unwrap()), "{l}");
        }
        for r in [S, "~~p | ~p", "~~p -> p", "~~p", "~p", "p", "false"] {
            assert!(u.sfr().contains(u.find(r).unwrap()), "{r}");
        }
        assert_eq!(
            u.g_bar(),
            &u.set_from_text(&["p", "~p", "~~p", "(~~p -> p) -> ~p | p"])
        );
    }

    #[test]
    fn kreisel_putnam_polarities() {
        let u = GoalUniverse::parse(K).unwrap();
        for l in ["~a -> b | c", "~a", "a", "b", "c"] {
            assert!(u.sfl().contains(u.find(l).unwrap()), "{l}");
        }
        for r in [K, "(~a -> b) | (~a -> c)", "~a -> b", "~a -> c", "a", "b", "c", "false"] {
            assert!(u.sfr().contains(u.find(r).unwrap()), "{r}");
        }
    }

    #[test]
    fn closure_examples() {
        let u = GoalUniverse::parse("p1 & p2 -> p | q").unwrap();
        let both = u.set_from_text(&["p1", "p2"]);
        assert!(u.closure_member(&both, u.find("p1 & p2").unwrap()));
        assert!(!u.closure_member(&u.empty_set(), u.find("p | q").unwrap()));

        let u = GoalUniverse::parse("p & q & r & (r -> p) & (p -> r) -> b").unwrap();
        let pq = u.set_from_text(&["p", "q"]);
        let cl = u.closure(&pq).intersection(u.g_bar());
        assert_eq!(cl, u.set_from_text(&["p", "q", "r -> p"]));
    }

    #[test]
    fn latex_rendering() {
        let u = GoalUniverse::parse("~falsey_1 & q | false -> r").unwrap();
        assert_eq!(
            u.show_latex(u.goal()),
            "\\neg falsey\\_1 \\land q \\lor \\bot \\supset r"
        );
    }
}
