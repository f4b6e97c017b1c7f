//! Benchmark corpus shared by the criterion targets.

use ipl_core::gen::nishimura_text;

/// Named formulas used as benchmark inputs.
pub const NAMED: &[(&str, &str)] = &[
    ("scott", "((~~p -> p) -> (~p | p)) -> (~~p | ~p)"),
    ("anti_scott", "(((~~p -> p) -> (~p | p)) -> (~~p | ~p)) -> (~~p -> p) | ~~p"),
    ("kreisel_putnam", "(~a -> b | c) -> (~a -> b) | (~a -> c)"),
    ("disjunction_chain", "p & (p -> q1 | q2) & (q1 -> r1 | r2) & (q2 -> r1 | r2) -> r1 | r2"),
    ("four_disjuncts", "((p1 -> p2) | (p2 -> p1)) | ((q1 -> q2) | (q2 -> q1))"),
];

/// The named formulas followed by a few Nishimura formulas.
pub fn corpus() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = NAMED.iter().map(|&(n, f)| (n.to_string(), f.to_string())).collect();
    for i in [7, 9, 11, 13] {
        out.push((format!("nishimura_{i}"), nishimura_text(i)));
    }
    out
}
