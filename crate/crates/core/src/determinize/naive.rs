//! Exhaustive search for a register-free deterministic automaton over a
//! single-symbol alphabet. Used to cross-check the orbit exploration for
//! `k = 0`.

use crate::atoms::Constraint;
use crate::automaton::{Automaton, Label, Rule};
use crate::error::Error;
use crate::inclusion::equivalent;
use crate::verdict::Verdict;

/// Looks for a deterministic automaton without registers, with at most
/// `max_states` locations, equivalent to `a`.
///
/// Over one symbol every such automaton with all locations reachable is,
/// up to renaming, a path `o0 → o1 → … → o(m-1)` whose last location either
/// has no successor or loops back to some `oj`. All of these are tried with
/// every set of final locations.
pub fn naive_dra0_membership(a: &Automaton, max_states: usize, budget: u64) -> Result<Option<Automaton>, Error> {
    if a.alphabet.len() != 1 {
        return Err(Error::Precondition("exhaustive search needs a one-symbol alphabet".into()));
    }
    for m in 1..=max_states {
        for back in (0..m).map(Some).chain([None]) {
            for finals in 0u64..(1 << m) {
                let mut rules: Vec<Rule> = (1..m)
                    .map(|i| Rule {
                        from: i - 1,
                        label: Label::Symbol(0),
                        guard: Constraint::True,
                        store: vec![],
                        to: i,
                    })
                    .collect();
                if let Some(j) = back {
                    rules.push(Rule {
                        from: m - 1,
                        label: Label::Symbol(0),
                        guard: Constraint::True,
                        store: vec![],
                        to: j,
                    });
                }
                let candidate = Automaton {
                    registers: 0,
                    alphabet: a.alphabet.clone(),
                    locations: (0..m).map(|i| format!("o{i}")).collect(),
                    initial: vec![0],
                    finals: (0..m).filter(|i| finals >> i & 1 == 1).collect(),
                    rules,
                };
                match equivalent(&candidate, a, budget)? {
                    Verdict::Holds(()) => return Ok(Some(candidate)),
                    Verdict::Fails(_) => {}
                    Verdict::BudgetExhausted(s) => return Err(Error::BudgetExhausted(s.generated)),
                }
            }
        }
    }
    Ok(None)
}
