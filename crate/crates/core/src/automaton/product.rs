use super::{eliminate_epsilon, Automaton, Label, Rule};
use crate::atoms::Var;
use crate::error::Error;

/// Synchronous product accepting `L(a) ∩ L(b)`.
///
/// Registers of `b` are renumbered after those of `a`; both guards read the
/// same input. The alphabets must coincide.
pub fn product(a: &Automaton, b: &Automaton) -> Result<Automaton, Error> {
    if a.alphabet != b.alphabet {
        return Err(Error::Precondition("product needs identical alphabets".into()));
    }
    let a = eliminate_epsilon(a);
    let b = eliminate_epsilon(b);
    let ka = a.registers;
    let nb = b.locations.len();
    let pair = |p: usize, q: usize| p * nb + q;
    let mut locations = Vec::new();
    for p in &a.locations {
        for q in &b.locations {
            locations.push(format!("({p},{q})"));
        }
    }
    let mut rules = Vec::new();
    for r1 in &a.rules {
        for r2 in b.rules.iter().filter(|r2| r2.label == r1.label) {
            let g2 = r2.guard.map_vars(&|v| match v {
                Var::Reg(i) => Var::Reg(i + ka),
                v => v,
            });
            let mut store = r1.store.clone();
            store.extend(r2.store.iter().map(|i| i + ka));
            rules.push(Rule {
                from: pair(r1.from, r2.from),
                label: r1.label,
                guard: r1.guard.clone().and(g2),
                store,
                to: pair(r1.to, r2.to),
            });
        }
    }
    debug_assert!(rules.iter().all(|r| r.label != Label::Eps));
    let mut initial = Vec::new();
    for &p in &a.initial {
        for &q in &b.initial {
            initial.push(pair(p, q));
        }
    }
    let mut finals = Vec::new();
    for &p in &a.finals {
        for &q in &b.finals {
            finals.push(pair(p, q));
        }
    }
    initial.sort_unstable();
    finals.sort_unstable();
    Ok(Automaton {
        registers: ka + b.registers,
        alphabet: a.alphabet.clone(),
        locations,
        initial,
        finals,
        rules,
    })
}
