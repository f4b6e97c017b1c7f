//! Formulas over variables, `false`, `&`, `|` and `->`, hash-consed in an [`Interner`].
//!
//! Negation is not a connective: `~A` is stored as `A -> false`.

mod parse;
mod set;
mod universe;

use std::collections::HashMap;
use std::fmt;

pub use parse::ParseError;
pub use set::FormulaSet;
pub use universe::{GoalUniverse, Node, SubId};

/// Handle to an interned formula. Structurally equal formulas share a handle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Formula(u32);

impl Formula {
    pub fn id(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Var(Box<str>),
    Falsum,
    And(Formula, Formula),
    Or(Formula, Formula),
    Imp(Formula, Formula),
}

#[derive(Default, Clone, Debug)]
pub struct Interner {
    shapes: Vec<Shape>,
    sizes: Vec<usize>,
    table: HashMap<Shape, Formula>,
}

impl Interner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn intern(&mut self, shape: Shape) -> Formula {
        if let Some(&f) = self.table.get(&shape) {
            return f;
        }
        let size = match &shape {
            Shape::Var(_) | Shape::Falsum => 1,
            Shape::And(a, b) | Shape::Or(a, b) | Shape::Imp(a, b) => {
                1 + self.sizes[a.id()] + self.sizes[b.id()]
            }
        };
        let f = Formula(self.shapes.len() as u32);
        self.shapes.push(shape.clone());
        self.sizes.push(size);
        self.table.insert(shape, f);
        f
    }

    /// Looks a shape up without interning it.
    pub fn find(&self, shape: &Shape) -> Option<Formula> {
        self.table.get(shape).copied()
    }

    pub fn var(&mut self, name: &str) -> Formula {
        self.intern(Shape::Var(name.into()))
    }

    pub fn falsum(&mut self) -> Formula {
        self.intern(Shape::Falsum)
    }

    pub fn and(&mut self, a: Formula, b: Formula) -> Formula {
        self.intern(Shape::And(a, b))
    }

    pub fn or(&mut self, a: Formula, b: Formula) -> Formula {
        self.intern(Shape::Or(a, b))
    }

    pub fn imp(&mut self, a: Formula, b: Formula) -> Formula {
        self.intern(Shape::Imp(a, b))
    }

    pub fn not(&mut self, a: Formula) -> Formula {
        let f = self.falsum();
        self.imp(a, f)
    }

    pub fn shape(&self, f: Formula) -> &Shape {
        &self.shapes[f.id()]
    }

    /// Number of symbols: variables, `false` and connectives. Parentheses do not count.
    pub fn size(&self, f: Formula) -> usize {
        self.sizes[f.id()]
    }

    pub fn parse(&mut self, text: &str) -> Result<Formula, ParseError> {
        parse::parse(self, text)
    }

    pub fn display(&self, f: Formula) -> String {
        let mut out = String::new();
        write_formula(&mut out, f, 0, &|g| match self.shape(g) {
            Shape::Var(name) => View::Var(name),
            Shape::Falsum => View::Falsum,
            Shape::And(a, b) => View::And(*a, *b),
            Shape::Or(a, b) => View::Or(*a, *b),
            Shape::Imp(a, b) => match self.shape(*b) {
                Shape::Falsum => View::Not(*a),
                _ => View::Imp(*a, *b),
            },
        })
        .expect("writing to a String cannot fail");
        out
    }
}

/// Printer view shared by the interner and the goal universe.
pub(crate) enum View<'a, T> {
    Var(&'a str),
    Falsum,
    Not(T),
    And(T, T),
    Or(T, T),
    Imp(T, T),
}

// Precedence levels: 0 implication, 1 disjunction, 2 conjunction, 3 unary and atoms.
pub(crate) fn write_formula<'a, T: Copy, W: fmt::Write>(
    out: &mut W,
    f: T,
    ctx: u8,
    view: &dyn Fn(T) -> View<'a, T>,
) -> fmt::Result {
    let open = match view(f) {
        View::Var(_) | View::Falsum | View::Not(_) => false,
        View::And(..) => ctx > 2,
        View::Or(..) => ctx > 1,
        View::Imp(..) => ctx > 0,
    };
    if open {
        out.write_char('(')?;
    }
    match view(f) {
        View::Var(name) => out.write_str(name)?,
        View::Falsum => out.write_str("false")?,
        View::Not(a) => {
            out.write_char('~')?;
            write_formula(out, a, 3, view)?;
        }
        View::And(a, b) => {
            write_formula(out, a, 2, view)?;
            out.write_str(" & ")?;
            write_formula(out, b, 3, view)?;
        }
        View::Or(a, b) => {
            write_formula(out, a, 1, view)?;
            out.write_str(" | ")?;
            write_formula(out, b, 2, view)?;
        }
        View::Imp(a, b) => {
            write_formula(out, a, 1, view)?;
            out.write_str(" -> ")?;
            write_formula(out, b, 0, view)?;
        }
    }
    if open {
        out.write_char(')')?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_count_symbols() {
        let mut i = Interner::new();
        let p = i.var("p");
        let q = i.var("q");
        let pq = i.imp(p, q);
        let np = i.not(p);
        assert_eq!(i.size(p), 1);
        assert_eq!(i.size(pq), 3);
        assert_eq!(i.size(np), 3);
    }

    #[test]
    fn hash_consing() {
        let mut i = Interner::new();
        let a = i.parse("(p & q) -> p").unwrap();
        let b = i.parse("p & q -> p").unwrap();
        assert_eq!(a, b);
        let n = i.parse("~p").unwrap();
        let m = i.parse("p -> false").unwrap();
        assert_eq!(n, m);
    }

    #[test]
    fn printing_is_minimal() {
        let mut i = Interner::new();
        for text in [
            "p -> q -> r",
            "(p -> q) -> r",
            "p & q | r",
            "p & (q | r)",
            "~~p -> p",
            "~(p & q)",
            "p | q | r",
            "p | (q | r)",
            "false -> p",
        ] {
            let f = i.parse(text).unwrap();
            assert_eq!(i.display(f), text);
        }
    }
}
