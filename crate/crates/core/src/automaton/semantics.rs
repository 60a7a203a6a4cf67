use std::collections::BTreeSet;

use super::{Automaton, Label};
use crate::atoms::{Atom, AtomOrBot, AtomPermutation, Permute};
use crate::error::Error;
use crate::word::{DataWord, Letter};

/// A location together with the register contents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub location: usize,
    pub valuation: Vec<AtomOrBot>,
}

impl Configuration {
    pub fn new(location: usize, valuation: Vec<AtomOrBot>) -> Self {
        Configuration { location, valuation }
    }
}

impl Permute for Configuration {
    fn permute(&self, pi: &AtomPermutation) -> Self {
        Configuration {
            location: self.location,
            valuation: self.valuation.iter().map(|v| v.permute(pi)).collect(),
        }
    }
}

impl Permute for BTreeSet<Configuration> {
    fn permute(&self, pi: &AtomPermutation) -> Self {
        self.iter().map(|c| c.permute(pi)).collect()
    }
}

/// One non-ε step on symbol index `s` and atom `a`, in rule order.
pub fn step_symbol(a: &Automaton, c: &Configuration, s: usize, atom: Atom) -> Vec<Configuration> {
    let mut out: Vec<Configuration> = Vec::new();
    for r in a.rules_on(c.location, s) {
        if r.guard.holds(&c.valuation, Some(atom)) {
            let mut v = c.valuation.clone();
            for &x in &r.store {
                v[x] = Some(atom);
            }
            let next = Configuration::new(r.to, v);
            if !out.contains(&next) {
                out.push(next);
            }
        }
    }
    out
}

/// All configurations reachable from `c` by one non-ε rule reading `letter`.
pub fn step(a: &Automaton, c: &Configuration, letter: &Letter) -> Result<Vec<Configuration>, Error> {
    let s = a
        .symbol_index(&letter.symbol)
        .ok_or_else(|| Error::UnknownSymbol(letter.symbol.clone()))?;
    Ok(step_symbol(a, c, s, letter.atom))
}

/// Saturates `set` under ε-rules.
pub fn epsilon_closure(a: &Automaton, set: &mut BTreeSet<Configuration>) {
    if !a.has_epsilon() {
        return;
    }
    let mut stack: Vec<Configuration> = set.iter().cloned().collect();
    while let Some(c) = stack.pop() {
        for r in a.rules.iter().filter(|r| r.from == c.location && r.label == Label::Eps) {
            if r.guard.holds(&c.valuation, None) {
                let next = Configuration::new(r.to, c.valuation.clone());
                if set.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
}

/// Initial configurations (all registers ⊥), closed under ε-rules.
pub fn initial_configurations(a: &Automaton) -> BTreeSet<Configuration> {
    let mut set = a
        .initial
        .iter()
        .map(|&l| Configuration::new(l, vec![None; a.registers]))
        .collect();
    epsilon_closure(a, &mut set);
    set
}

/// The ε-closed successor of a set of configurations.
pub fn successor_set(a: &Automaton, set: &BTreeSet<Configuration>, s: usize, atom: Atom) -> BTreeSet<Configuration> {
    let mut out = BTreeSet::new();
    for c in set {
        out.extend(step_symbol(a, c, s, atom));
    }
    epsilon_closure(a, &mut out);
    out
}

/// Configurations reached from `start` after reading `w`.
///
/// A symbol outside the alphabet is an error.
pub fn run_from(a: &Automaton, start: &BTreeSet<Configuration>, w: &DataWord) -> Result<BTreeSet<Configuration>, Error> {
    let mut cur = start.clone();
    epsilon_closure(a, &mut cur);
    for l in w.letters() {
        let s = a
            .symbol_index(&l.symbol)
            .ok_or_else(|| Error::UnknownSymbol(l.symbol.clone()))?;
        cur = successor_set(a, &cur, s, l.atom);
    }
    Ok(cur)
}

/// Is `w` accepted when starting from the configurations in `start`?
pub fn accepts_from(a: &Automaton, start: &BTreeSet<Configuration>, w: &DataWord) -> Result<bool, Error> {
    Ok(run_from(a, start, w)?.iter().any(|c| a.is_final(c.location)))
}

pub fn accepts(a: &Automaton, w: &DataWord) -> Result<bool, Error> {
    accepts_from(a, &initial_configurations(a), w)
}
