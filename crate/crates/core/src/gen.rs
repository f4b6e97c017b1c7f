//! Formula families for testing and benchmarking.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Formula, Interner};

/// The one-variable Nishimura formulas, numbered from 1.
pub fn nishimura(interner: &mut Interner, i: usize) -> Formula {
    assert!(i >= 1, "Nishimura formulas are numbered from 1");
    let p = interner.var("p");
    let mut seq = vec![p, interner.not(p)];
    while seq.len() < i {
        let n = seq.len();
        // Position n + 1 is odd: a disjunction of the two previous ones.
        // Position n + 1 is even: the previous one implies the one two back.
        let next = if n % 2 == 0 {
            interner.or(seq[n - 2], seq[n - 1])
        } else {
            interner.imp(seq[n - 1], seq[n - 3])
        };
        seq.push(next);
    }
    seq[i - 1]
}

pub fn nishimura_text(i: usize) -> String {
    let mut interner = Interner::new();
    let f = nishimura(&mut interner, i);
    interner.display(f)
}

pub fn var_name(i: usize) -> String {
    const NAMES: [&str; 6] = ["p", "q", "r", "s", "t", "u"];
    NAMES.get(i).map_or_else(|| format!("v{i}"), |s| s.to_string())
}

fn random_formula(rng: &mut ChaCha8Rng, interner: &mut Interner, vars: usize, budget: usize) -> Formula {
    if budget < 3 || rng.gen_bool(0.1) {
        if rng.gen_bool(0.08) {
            return interner.falsum();
        }
        let v = rng.gen_range(0..vars);
        return interner.var(&var_name(v));
    }
    match rng.gen_range(0..7) {
        0 => {
            let a = random_formula(rng, interner, vars, budget - 2);
            interner.not(a)
        }
        k => {
            let left = rng.gen_range(1..budget - 1);
            let a = random_formula(rng, interner, vars, left);
            let b = random_formula(rng, interner, vars, budget - 1 - left);
            match k {
                1 | 2 => interner.and(a, b),
                3 | 4 => interner.or(a, b),
                _ => interner.imp(a, b),
            }
        }
    }
}

/// `count` formulas over at most `vars` variables with at most `size` symbols each.
/// Equal arguments give equal lists.
pub fn random_formulas(seed: u64, vars: usize, size: usize, count: usize) -> Vec<String> {
    assert!(vars >= 1 && size >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut interner = Interner::new();
    (0..count)
        .map(|_| {
            let budget = rng.gen_range(size.min(3)..=size);
            let f = random_formula(&mut rng, &mut interner, vars, budget);
            interner.display(f)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_nishimura_formulas() {
        assert_eq!(nishimura_text(1), "p");
        assert_eq!(nishimura_text(2), "~p");
        assert_eq!(nishimura_text(3), "p | ~p");
        assert_eq!(nishimura_text(4), "p | ~p -> p");
        assert_eq!(nishimura_text(5), "p | ~p | (p | ~p -> p)");
        assert_eq!(nishimura_text(6), "p | ~p | (p | ~p -> p) -> p | ~p");
    }

    #[test]
    fn random_is_deterministic_and_bounded() {
        let a = random_formulas(7, 3, 12, 50);
        assert_eq!(a, random_formulas(7, 3, 12, 50));
        assert_ne!(a, random_formulas(8, 3, 12, 50));
        let mut i = Interner::new();
        for text in &a {
            let f = i.parse(text).unwrap();
            assert!(i.size(f) <= 12, "{text}");
        }
    }
}
