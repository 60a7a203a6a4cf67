//! Language inclusion `L(A) ⊆ L(B)` for a right-hand side with at most one
//! register, equivalence checks built on it, and equality of the languages
//! of two macro-configurations.

mod engine;

use std::collections::BTreeSet;

use crate::automaton::{
    accepts, accepts_from, complement, eliminate_epsilon, initial_configurations, is_deterministic, is_empty,
    product, Automaton, Configuration,
};
use crate::error::Error;
use crate::verdict::{Difference, SearchStats, Side, Verdict, DEFAULT_BUDGET};
use crate::word::DataWord;

use engine::{Outcome, RightMacro, Search};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InclusionOptions {
    /// Maximum number of generated states; 0 means unbounded.
    pub budget: u64,
    /// Discard states subsumed by an already retained one.
    pub subsumption: bool,
}

impl Default for InclusionOptions {
    fn default() -> Self {
        InclusionOptions {
            budget: DEFAULT_BUDGET,
            subsumption: true,
        }
    }
}

impl InclusionOptions {
    pub fn with_budget(budget: u64) -> Self {
        InclusionOptions {
            budget,
            ..Default::default()
        }
    }
}

fn one_register(b: &Automaton) -> Result<Automaton, Error> {
    if b.registers > 1 {
        return Err(Error::Precondition(format!(
            "the right-hand automaton must have at most one register, it has {}",
            b.registers
        )));
    }
    Ok(eliminate_epsilon(b).with_registers(1))
}

/// Decides `L(a) ⊆ L(b)`. `Fails` carries a word of `L(a) ∖ L(b)`.
pub fn includes(a: &Automaton, b: &Automaton, budget: u64) -> Result<Verdict<DataWord>, Error> {
    includes_with(a, b, InclusionOptions::with_budget(budget)).map(|(v, _)| v)
}

/// [`includes`] with explicit options, also returning search statistics.
pub fn includes_with(
    a: &Automaton,
    b: &Automaton,
    opts: InclusionOptions,
) -> Result<(Verdict<DataWord>, SearchStats), Error> {
    let b1 = one_register(b)?;
    let a1 = eliminate_epsilon(a);
    let left_init: Vec<Configuration> = initial_configurations(&a1).into_iter().collect();
    let right_init = RightMacro::from_configs(b1.locations.len(), &initial_configurations(&b1));
    let mut search = Search::new(&a1, &b1, opts.budget, opts.subsumption);
    let verdict = match search.run(&left_init, &right_init) {
        Outcome::Safe => Verdict::Holds(()),
        Outcome::OutOfBudget => Verdict::BudgetExhausted(search.stats),
        Outcome::Bad(w) => {
            if !accepts(a, &w)? || accepts(b, &w)? {
                return Err(Error::Internal(format!("inclusion witness `{w}` does not separate the languages")));
            }
            Verdict::Fails(w)
        }
    };
    Ok((verdict, search.stats))
}

/// `L(a) ⊆ L(b)` by whichever route the shapes allow.
fn included(a: &Automaton, b: &Automaton, budget: u64) -> Result<Verdict<DataWord>, Error> {
    if b.registers <= 1 {
        return includes(a, b, budget);
    }
    let mut alphabet = a.alphabet.clone();
    alphabet.extend(b.alphabet.iter().filter(|s| !a.alphabet.contains(s)).cloned());
    let nb = complement(&b.over_alphabet(&alphabet)?)?;
    let p = product(&a.over_alphabet(&alphabet)?, &nb)?;
    Ok(match is_empty(&p)? {
        Verdict::Holds(()) => Verdict::Holds(()),
        Verdict::Fails(w) => Verdict::Fails(w),
        Verdict::BudgetExhausted(s) => Verdict::BudgetExhausted(s),
    })
}

fn can_contain(b: &Automaton) -> bool {
    b.registers <= 1 || is_deterministic(b)
}

/// Decides `L(a) = L(b)` when each side either has at most one register or
/// is deterministic.
pub fn equivalent(a: &Automaton, b: &Automaton, budget: u64) -> Result<Verdict<Difference>, Error> {
    if !can_contain(a) || !can_contain(b) {
        return Err(Error::Precondition(
            "equivalence needs each automaton to be deterministic or to have at most one register".into(),
        ));
    }
    let check = |w: &DataWord, side: Side| -> Result<Difference, Error> {
        let (in_a, in_b) = (accepts(a, w)?, accepts(b, w)?);
        let ok = match side {
            Side::LeftOnly => in_a && !in_b,
            Side::RightOnly => in_b && !in_a,
        };
        if !ok {
            return Err(Error::Internal(format!("equivalence witness `{w}` does not separate the languages")));
        }
        Ok(Difference { word: w.clone(), side })
    };
    match included(a, b, budget)? {
        Verdict::Holds(()) => {}
        Verdict::Fails(w) => return Ok(Verdict::Fails(check(&w, Side::LeftOnly)?)),
        Verdict::BudgetExhausted(s) => return Ok(Verdict::BudgetExhausted(s)),
    }
    Ok(match included(b, a, budget)? {
        Verdict::Holds(()) => Verdict::Holds(()),
        Verdict::Fails(w) => Verdict::Fails(check(&w, Side::RightOnly)?),
        Verdict::BudgetExhausted(s) => Verdict::BudgetExhausted(s),
    })
}

/// Decides whether two finite sets of configurations of a one-register,
/// ε-free automaton accept the same words. `LeftOnly` words are accepted
/// from `x1` only.
pub fn config_lang_equal(
    a: &Automaton,
    x1: &BTreeSet<Configuration>,
    x2: &BTreeSet<Configuration>,
    budget: u64,
) -> Result<Verdict<Difference>, Error> {
    config_lang_equal_with(a, x1, x2, InclusionOptions::with_budget(budget)).map(|(v, _)| v)
}

pub fn config_lang_equal_with(
    a: &Automaton,
    x1: &BTreeSet<Configuration>,
    x2: &BTreeSet<Configuration>,
    opts: InclusionOptions,
) -> Result<(Verdict<Difference>, SearchStats), Error> {
    if a.registers != 1 || a.has_epsilon() {
        return Err(Error::Precondition(
            "configuration languages are compared for ε-free one-register automata".into(),
        ));
    }
    if x1 == x2 {
        return Ok((Verdict::Holds(()), SearchStats::default()));
    }
    let n = a.locations.len();
    let mut total = SearchStats::default();
    for (from, to, side) in [(x1, x2, Side::LeftOnly), (x2, x1, Side::RightOnly)] {
        let left: Vec<Configuration> = from.iter().cloned().collect();
        let right = RightMacro::from_configs(n, to);
        let mut search = Search::new(a, a, opts.budget, opts.subsumption);
        let outcome = search.run(&left, &right);
        total.generated += search.stats.generated;
        total.explored += search.stats.explored;
        total.pruned += search.stats.pruned;
        match outcome {
            Outcome::Safe => {}
            Outcome::OutOfBudget => return Ok((Verdict::BudgetExhausted(total), total)),
            Outcome::Bad(w) => {
                if !accepts_from(a, from, &w)? || accepts_from(a, to, &w)? {
                    return Err(Error::Internal(format!("witness `{w}` does not separate the configurations")));
                }
                return Ok((Verdict::Fails(Difference { word: w, side }), total));
            }
        }
    }
    Ok((Verdict::Holds(()), total))
}
