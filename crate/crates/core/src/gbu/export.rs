use std::fmt::Write as _;

use serde_json::{json, Value};

use super::{G3iDerivation, GbuDerivation};
use crate::formula::GoalUniverse;

// Both calculi print through this shape.
struct Tree {
    plain: String,
    latex: String,
    rule: String,
    principal: Option<String>,
    children: Vec<Tree>,
}

impl Tree {
    fn label(&self) -> String {
        match &self.principal {
            Some(p) => format!("{} on {p}", self.rule),
            None => self.rule.clone(),
        }
    }
}

fn gbu_tree(u: &GoalUniverse, d: &GbuDerivation) -> Tree {
    let s = &d.sequent;
    let psi: Vec<String> = s.psi.iter().map(|f| u.show_latex(f)).collect();
    let arrow = if s.is_regular() { "\\Rightarrow_g" } else { "\\rightarrow_g" };
    Tree {
        plain: s.render(u),
        latex: format!("{} {arrow} {}", psi.join(", "), u.show_latex(s.rhs)),
        rule: d.rule.name().to_string(),
        principal: d.principal.map(|p| u.show(p)),
        children: d.children.iter().map(|c| gbu_tree(u, c)).collect(),
    }
}

fn g3i_tree(u: &GoalUniverse, d: &G3iDerivation) -> Tree {
    let ctx: Vec<String> = d.context.iter().map(|f| u.show_latex(f)).collect();
    Tree {
        plain: d.render(u),
        latex: format!("{} \\Rightarrow {}", ctx.join(", "), u.show_latex(d.succedent)),
        rule: d.rule.name().to_string(),
        principal: d.principal.map(|p| u.show(p)),
        children: d.children.iter().map(|c| g3i_tree(u, c)).collect(),
    }
}

/// Indented, conclusion first.
fn text(t: &Tree) -> String {
    fn go(t: &Tree, depth: usize, out: &mut String) {
        let _ = writeln!(out, "{}{}  [{}]", "  ".repeat(depth), t.plain, t.label());
        for c in &t.children {
            go(c, depth + 1, out);
        }
    }
    let mut out = String::new();
    go(t, 0, &mut out);
    out
}

fn to_json(t: &Tree) -> Value {
    json!({
        "sequent": t.plain,
        "rule": t.rule,
        "principal": t.principal,
        "children": t.children.iter().map(to_json).collect::<Vec<_>>(),
    })
}

fn dot(t: &Tree) -> String {
    fn go(t: &Tree, next: &mut usize, out: &mut String) -> usize {
        let me = *next;
        *next += 1;
        let label = format!("{}  [{}]", t.plain, t.label());
        let _ = writeln!(out, "  n{me} [label={}];", Value::String(label));
        for c in &t.children {
            let k = go(c, next, out);
            let _ = writeln!(out, "  n{k} -> n{me};");
        }
        me
    }
    let mut out = String::from("digraph derivation {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    go(t, &mut 0, &mut out);
    out.push_str("}\n");
    out
}

/// bussproofs markup.
fn typeset(t: &Tree) -> String {
    fn go(t: &Tree, out: &mut String) {
        for c in &t.children {
            go(c, out);
        }
        if t.children.is_empty() {
            out.push_str("\\AxiomC{}\n");
        }
        let inf = match t.children.len() {
            0 | 1 => "UnaryInfC",
            2 => "BinaryInfC",
            _ => "TrinaryInfC",
        };
        let _ = writeln!(out, "\\RightLabel{{\\scriptsize {}}}", t.rule);
        let _ = writeln!(out, "\\{inf}{{${}$}}", t.latex);
    }
    let mut out = String::from("\\begin{prooftree}\n");
    go(t, &mut out);
    out.push_str("\\end{prooftree}\n");
    out
}

pub fn gbu_text(u: &GoalUniverse, d: &GbuDerivation) -> String {
    text(&gbu_tree(u, d))
}

pub fn gbu_json(u: &GoalUniverse, d: &GbuDerivation) -> Value {
    to_json(&gbu_tree(u, d))
}

pub fn gbu_dot(u: &GoalUniverse, d: &GbuDerivation) -> String {
    dot(&gbu_tree(u, d))
}

pub fn gbu_typeset(u: &GoalUniverse, d: &GbuDerivation) -> String {
    typeset(&gbu_tree(u, d))
}

pub fn g3i_text(u: &GoalUniverse, d: &G3iDerivation) -> String {
    text(&g3i_tree(u, d))
}

pub fn g3i_json(u: &GoalUniverse, d: &G3iDerivation) -> Value {
    to_json(&g3i_tree(u, d))
}

pub fn g3i_dot(u: &GoalUniverse, d: &G3iDerivation) -> String {
    dot(&g3i_tree(u, d))
}

pub fn g3i_typeset(u: &GoalUniverse, d: &G3iDerivation) -> String {
    typeset(&g3i_tree(u, d))
}
