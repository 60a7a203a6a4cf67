use std::collections::{HashSet, VecDeque};

use super::{accepts, eliminate_epsilon, step_symbol, Automaton, Configuration};
use crate::atoms::{fresh_after, EqType};
use crate::error::Error;
use crate::verdict::Verdict;
use crate::word::{DataWord, Letter};

/// Decides emptiness. `Holds` means the language is empty; `Fails` carries
/// an accepted word over canonical atoms.
///
/// Breadth-first search over (location, register equality type). Each node
/// keeps one concrete valuation reached by a canonical word; the input is
/// either one of the register atoms or the next unused atom, which covers
/// every orbit of successors.
pub fn is_empty(a: &Automaton) -> Result<Verdict<DataWord>, Error> {
    let a = &eliminate_epsilon(a);
    let mut seen: HashSet<(usize, EqType)> = HashSet::new();
    let mut queue: VecDeque<(Configuration, DataWord)> = VecDeque::new();
    let found = |w: DataWord| -> Result<Verdict<DataWord>, Error> {
        if !accepts(a, &w)? {
            return Err(Error::Internal(format!("emptiness witness `{w}` is not accepted")));
        }
        Ok(Verdict::Fails(w))
    };
    for &l in &a.initial {
        let c = Configuration::new(l, vec![None; a.registers]);
        if a.is_final(l) {
            return found(DataWord::empty());
        }
        if seen.insert((l, EqType::of(&c.valuation))) {
            queue.push_back((c, DataWord::empty()));
        }
    }
    while let Some((c, w)) = queue.pop_front() {
        let fresh = fresh_after(w.atoms());
        let mut inputs = Vec::new();
        for x in c.valuation.iter().flatten() {
            if !inputs.contains(x) {
                inputs.push(*x);
            }
        }
        inputs.push(fresh);
        for (s, sym) in a.alphabet.iter().enumerate() {
            for &atom in &inputs {
                for next in step_symbol(a, &c, s, atom) {
                    let w2 = w.pushed(Letter {
                        symbol: sym.clone(),
                        atom,
                    });
                    if a.is_final(next.location) {
                        return found(w2);
                    }
                    if seen.insert((next.location, EqType::of(&next.valuation))) {
                        queue.push_back((next, w2));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds(()))
}
