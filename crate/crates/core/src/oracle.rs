//! Brute-force ground truth over bounded-length words.
//!
//! Acceptance is invariant under atom renaming, so it suffices to look at one
//! word per orbit: the canonical words, in which each new atom is the least
//! unused one. Everything here is exhaustive up to a length bound and nothing
//! more. In particular [`bounded_invariance`] can only refute invariance.

use std::collections::BTreeSet;

use crate::atoms::{fresh_after, Atom, AtomPermutation, Permute, SupportSet};
use crate::automaton::{initial_configurations, successor_set, Automaton, Configuration};
use crate::verdict::{Difference, Side};
use crate::word::{DataWord, Letter};

/// Words of length at most `max_len` over `alphabet`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordBound {
    pub max_len: usize,
    pub alphabet: Vec<String>,
}

impl WordBound {
    pub fn new(max_len: usize, alphabet: &[String]) -> Self {
        WordBound {
            max_len,
            alphabet: alphabet.to_vec(),
        }
    }

    /// The union of both alphabets, left symbols first.
    pub fn for_pair(max_len: usize, a: &Automaton, b: &Automaton) -> Self {
        let mut alphabet = a.alphabet.clone();
        alphabet.extend(b.alphabet.iter().filter(|s| !a.alphabet.contains(s)).cloned());
        WordBound { max_len, alphabet }
    }
}

/// Canonical words in length-lexicographic order, letters ordered by
/// (symbol position in the alphabet, atom).
pub struct WordEnumerator {
    alphabet: Vec<String>,
    max_len: usize,
    /// Current word as (symbol index, atom id); `None` when exhausted.
    cur: Option<Vec<(usize, u32)>>,
}

impl WordEnumerator {
    fn advance(&mut self) {
        let Some(cur) = self.cur.as_mut() else { return };
        let nsym = self.alphabet.len();
        let mut i = cur.len();
        while i > 0 {
            i -= 1;
            let bound = cur[..i].iter().map(|&(_, a)| a + 1).max().unwrap_or(0);
            let (s, a) = cur[i];
            let next = if a < bound {
                Some((s, a + 1))
            } else if s + 1 < nsym {
                Some((s + 1, 0))
            } else {
                None
            };
            if let Some(n) = next {
                cur[i] = n;
                for c in &mut cur[i + 1..] {
                    *c = (0, 0);
                }
                return;
            }
        }
        let len = cur.len() + 1;
        self.cur = (len <= self.max_len && nsym > 0).then(|| vec![(0, 0); len]);
    }
}

impl Iterator for WordEnumerator {
    type Item = DataWord;

    fn next(&mut self) -> Option<DataWord> {
        let cur = self.cur.as_ref()?;
        let w = DataWord(
            cur.iter()
                .map(|&(s, a)| Letter {
                    symbol: self.alphabet[s].clone(),
                    atom: Atom(a),
                })
                .collect(),
        );
        self.advance();
        Some(w)
    }
}

pub fn enumerate_words(b: &WordBound) -> WordEnumerator {
    WordEnumerator {
        alphabet: b.alphabet.clone(),
        max_len: b.max_len,
        cur: Some(Vec::new()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Diff(Difference),
}

/// Tracks the configurations of one automaton along a word; symbols the
/// automaton does not know lead to the empty set.
#[derive(Clone)]
struct Tracker<'a> {
    a: &'a Automaton,
    sym: Vec<Option<usize>>,
}

impl<'a> Tracker<'a> {
    fn new(a: &'a Automaton, alphabet: &[String]) -> Self {
        Tracker {
            a,
            sym: alphabet.iter().map(|s| a.symbol_index(s)).collect(),
        }
    }

    fn step(&self, set: &BTreeSet<Configuration>, s: usize, atom: Atom) -> BTreeSet<Configuration> {
        match self.sym[s] {
            Some(t) => successor_set(self.a, set, t, atom),
            None => BTreeSet::new(),
        }
    }

    fn accepting(&self, set: &BTreeSet<Configuration>) -> bool {
        set.iter().any(|c| self.a.is_final(c.location))
    }
}

/// Breadth-first walk over words built from `fixed` atoms and fresh ones,
/// level by level in length-lexicographic order. `visit` gets every word with
/// the state after it and stops the walk by returning `Some`.
fn walk<S: Clone, R>(
    alphabet: &[String],
    fixed: &[Atom],
    max_len: usize,
    init: S,
    step: impl Fn(&S, usize, Atom) -> S,
    mut visit: impl FnMut(&DataWord, &S) -> Option<R>,
) -> Option<R> {
    let first_new = fresh_after(fixed.iter().copied());
    let mut level = vec![(DataWord::empty(), first_new, init)];
    for len in 0..=max_len {
        for (w, _, st) in &level {
            if let Some(r) = visit(w, st) {
                return Some(r);
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (w, fresh, st) in &level {
            for (s, sym) in alphabet.iter().enumerate() {
                let mut atoms: Vec<Atom> = fixed.to_vec();
                atoms.extend((first_new.0..fresh.0).map(Atom));
                atoms.push(*fresh);
                for a in atoms {
                    let f = if a == *fresh { fresh.next() } else { *fresh };
                    next.push((
                        w.pushed(Letter {
                            symbol: sym.clone(),
                            atom: a,
                        }),
                        f,
                        step(st, s, a),
                    ));
                }
            }
        }
        level = next;
    }
    None
}

/// First canonical word, in enumeration order, accepted by exactly one side.
pub fn compare_bounded(a: &Automaton, b: &Automaton, bound: &WordBound) -> Comparison {
    let ta = Tracker::new(a, &bound.alphabet);
    let tb = Tracker::new(b, &bound.alphabet);
    let init = (initial_configurations(a), initial_configurations(b));
    walk(
        &bound.alphabet,
        &[],
        bound.max_len,
        init,
        |(x, y), s, atom| (ta.step(x, s, atom), tb.step(y, s, atom)),
        |w, (x, y)| match (ta.accepting(x), tb.accepting(y)) {
            (true, false) => Some(Difference {
                word: w.clone(),
                side: Side::LeftOnly,
            }),
            (false, true) => Some(Difference {
                word: w.clone(),
                side: Side::RightOnly,
            }),
            _ => None,
        },
    )
    .map_or(Comparison::Equal, Comparison::Diff)
}

/// Words of length ≤ `bound.max_len` accepted by `a`, canonical, in order.
pub fn accepted_words(a: &Automaton, bound: &WordBound) -> Vec<DataWord> {
    let t = Tracker::new(a, &bound.alphabet);
    let mut out = Vec::new();
    walk::<_, ()>(
        &bound.alphabet,
        &[],
        bound.max_len,
        initial_configurations(a),
        |x, s, atom| t.step(x, s, atom),
        |w, x| {
            if t.accepting(x) {
                out.push(w.clone());
            }
            None
        },
    );
    out
}

/// Looks for evidence that the language of `macro_` is not `s`-invariant:
/// an atom `t` of the macro outside `s` and a word of length ≤ `max_len` on
/// which renaming `t` to a fresh atom changes acceptance.
///
/// `false` is a proof of non-invariance; `true` only means nothing was found
/// within the bound.
pub fn bounded_invariance(a: &Automaton, macro_: &BTreeSet<Configuration>, s: &SupportSet, bound: &WordBound) -> bool {
    bounded_invariance_witness(a, macro_, s, bound).is_none()
}

/// The word and the renamed atom refuting invariance, if any.
pub fn bounded_invariance_witness(
    a: &Automaton,
    macro_: &BTreeSet<Configuration>,
    s: &SupportSet,
    bound: &WordBound,
) -> Option<(DataWord, Atom)> {
    let mut carrier: BTreeSet<Atom> = macro_.iter().flat_map(|c| c.valuation.iter().flatten().copied()).collect();
    carrier.extend(s.iter().copied());
    let movable: Vec<Atom> = carrier.iter().copied().filter(|t| !s.contains(t)).collect();
    if movable.is_empty() {
        return None;
    }
    let b = fresh_after(carrier.iter().copied());
    let mut fixed: Vec<Atom> = carrier.into_iter().collect();
    fixed.push(b);
    let t = Tracker::new(a, &bound.alphabet);
    let mut init = vec![macro_.clone()];
    for &m in &movable {
        init.push(macro_.permute(&AtomPermutation::swap(m, b)));
    }
    walk(
        &bound.alphabet,
        &fixed,
        bound.max_len,
        init,
        |sets, sym, atom| sets.iter().map(|x| t.step(x, sym, atom)).collect::<Vec<_>>(),
        |w, sets| {
            let base = t.accepting(&sets[0]);
            sets[1..]
                .iter()
                .position(|x| t.accepting(x) != base)
                .map(|i| (w.clone(), movable[i]))
        },
    )
}
