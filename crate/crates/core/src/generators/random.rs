//! Seeded random automata for property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atoms::{Constraint, EqType, Var};
use crate::automaton::{joint_vars, type_formula, Automaton, Label, Rule};

fn symbol_names(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + (i % 26) as u8) as char).to_string() + &"'".repeat(i / 26)).collect()
}

fn random_guard(rng: &mut ChaCha8Rng, k: usize) -> Constraint {
    let types = EqType::enumerate(k + 1, true);
    let vars = joint_vars(k);
    if k == 0 {
        return Constraint::True;
    }
    match rng.gen_range(0..4) {
        0 => Constraint::True,
        1 => {
            let x = Var::Reg(rng.gen_range(0..k));
            match rng.gen_range(0..4) {
                0 => Constraint::eq(Var::Input, x),
                1 => Constraint::neq(Var::Input, x),
                2 => Constraint::is_bot(x),
                _ => Constraint::not_bot(x),
            }
        }
        2 => type_formula(types.choose(rng).unwrap(), &vars),
        _ => type_formula(types.choose(rng).unwrap(), &vars).or(type_formula(types.choose(rng).unwrap(), &vars)),
    }
}

fn random_store(rng: &mut ChaCha8Rng, k: usize) -> Vec<usize> {
    (0..k).filter(|_| rng.gen_bool(0.35)).collect()
}

fn random_finals(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.4)).collect()
}

/// A random automaton with `locations` locations `l0, l1, ...` over symbols
/// `a, b, ...`. Each (source, symbol, target) triple gets a rule with
/// probability `density`.
pub fn random_nra(locations: usize, registers: usize, symbols: usize, density: f64, seed: u64) -> Automaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = locations.max(1);
    let mut initial = vec![0];
    if n > 1 && rng.gen_bool(0.2) {
        initial.push(rng.gen_range(1..n));
    }
    let finals = random_finals(&mut rng, n);
    let mut rules = Vec::new();
    for from in 0..n {
        for s in 0..symbols {
            for to in 0..n {
                if rng.gen_bool(density.clamp(0.0, 1.0)) {
                    rules.push(Rule {
                        from,
                        label: Label::Symbol(s),
                        guard: random_guard(&mut rng, registers),
                        store: random_store(&mut rng, registers),
                        to,
                    });
                }
            }
        }
    }
    Automaton {
        registers,
        alphabet: symbol_names(symbols),
        locations: (0..n).map(|i| format!("l{i}")).collect(),
        initial,
        finals,
        rules,
    }
}

/// Adds `count` random ε-rules; their guards only compare registers.
pub fn inject_epsilon(a: &Automaton, count: usize, seed: u64) -> Automaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = a.registers;
    let n = a.locations.len();
    let mut out = a.clone();
    for _ in 0..count {
        let guard = if k == 0 {
            Constraint::True
        } else {
            let x = Var::Reg(rng.gen_range(0..k));
            match rng.gen_range(0..4) {
                0 => Constraint::True,
                1 => Constraint::is_bot(x),
                2 => Constraint::not_bot(x),
                _ => Constraint::eq(x, Var::Reg(rng.gen_range(0..k))),
            }
        };
        out.rules.push(Rule {
            from: rng.gen_range(0..n),
            label: Label::Eps,
            guard,
            store: vec![],
            to: rng.gen_range(0..n),
        });
    }
    out
}

/// A random deterministic automaton: for every location and symbol the
/// joint register/input types are split into random groups, each group
/// either leading to one target or (sometimes) left without a rule.
pub fn random_dra(locations: usize, registers: usize, symbols: usize, seed: u64) -> Automaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = locations.max(1);
    let k = registers;
    let vars = joint_vars(k);
    let types = EqType::enumerate(k + 1, true);
    let finals = random_finals(&mut rng, n);
    let mut rules = Vec::new();
    for from in 0..n {
        for s in 0..symbols {
            let groups = rng.gen_range(1..=types.len().min(3));
            let mut assignment: Vec<Vec<&EqType>> = vec![Vec::new(); groups];
            for t in &types {
                assignment[rng.gen_range(0..groups)].push(t);
            }
            for group in assignment.into_iter().filter(|g| !g.is_empty()) {
                if rng.gen_bool(0.15) {
                    continue;
                }
                let guard = if group.len() == types.len() {
                    Constraint::True
                } else {
                    Constraint::any(group.into_iter().map(|t| type_formula(t, &vars)))
                };
                rules.push(Rule {
                    from,
                    label: Label::Symbol(s),
                    guard,
                    store: random_store(&mut rng, k),
                    to: rng.gen_range(0..n),
                });
            }
        }
    }
    Automaton {
        registers: k,
        alphabet: symbol_names(symbols),
        locations: (0..n).map(|i| format!("l{i}")).collect(),
        initial: vec![0],
        finals,
        rules,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{is_deterministic, validate};

    #[test]
    fn seeded_and_valid() {
        for seed in 0..50 {
            let a = random_nra(4, 2, 2, 0.3, seed);
            assert_eq!(a, random_nra(4, 2, 2, 0.3, seed));
            validate(&a).unwrap();
            validate(&inject_epsilon(&a, 3, seed)).unwrap();
            let d = random_dra(3, 2, 2, seed);
            validate(&d).unwrap();
            assert!(is_deterministic(&d), "{d}");
        }
    }

    #[test]
    fn degenerate_parameters() {
        assert!(random_nra(3, 1, 2, 0.0, 7).rules.is_empty());
        let a = random_nra(3, 0, 2, 0.8, 7);
        assert!(a.rules.iter().all(|r| r.guard == Constraint::True && r.store.is_empty()));
    }
}
