//! Equality atoms and the objects built directly on top of them.
//!
//! Atoms are opaque names. Their numeric ids are only ever compared for
//! equality when deciding anything semantic; the derived `Ord` exists so that
//! atoms can live in ordered containers and outputs stay reproducible.

mod constraint;
mod valuation;

pub use constraint::{parse_constraint, satisfiable, Constraint, ParseError, Var};
pub use valuation::{register_extend, Valuation};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An element of the infinite domain of data values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Atom(pub u32);

impl Atom {
    pub fn next(self) -> Atom {
        Atom(self.0 + 1)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A register content: an atom, or `None` for the undefined value ⊥.
pub type AtomOrBot = Option<Atom>;

/// A finite set of atoms.
pub type SupportSet = BTreeSet<Atom>;

/// Smallest atom strictly greater than every atom yielded by `atoms`.
pub fn fresh_after<I: IntoIterator<Item = Atom>>(atoms: I) -> Atom {
    atoms.into_iter().map(Atom::next).max().unwrap_or(Atom(0))
}

/// A finitely described bijection of the atoms.
///
/// The map is a bijection on its carrier (domain = image) and the identity
/// everywhere else.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomPermutation {
    map: BTreeMap<Atom, Atom>,
}

impl AtomPermutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// The transposition swapping `a` and `b`.
    pub fn swap(a: Atom, b: Atom) -> Self {
        let mut map = BTreeMap::new();
        if a != b {
            map.insert(a, b);
            map.insert(b, a);
        }
        Self { map }
    }

    /// Builds a permutation from explicit `atom -> image` pairs.
    ///
    /// Fails unless the pairs are injective and their domain coincides with
    /// their image.
    pub fn from_pairs<I: IntoIterator<Item = (Atom, Atom)>>(pairs: I) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            if let Some(prev) = map.insert(a, b) {
                if prev != b {
                    return Err(Error::InvalidPermutation(format!("{a} mapped twice")));
                }
            }
        }
        let domain: BTreeSet<Atom> = map.keys().copied().collect();
        let image: BTreeSet<Atom> = map.values().copied().collect();
        if image.len() != map.len() {
            return Err(Error::InvalidPermutation("map is not injective".into()));
        }
        if domain != image {
            return Err(Error::InvalidPermutation(
                "domain and image differ; the map is not a bijection of its carrier".into(),
            ));
        }
        map.retain(|a, b| a != b);
        Ok(Self { map })
    }

    pub fn apply(&self, a: Atom) -> Atom {
        self.map.get(&a).copied().unwrap_or(a)
    }

    pub fn inverse(&self) -> Self {
        Self {
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &AtomPermutation) -> Self {
        let carrier: BTreeSet<Atom> = self.map.keys().chain(other.map.keys()).copied().collect();
        let map = carrier
            .into_iter()
            .map(|a| (a, self.apply(other.apply(a))))
            .filter(|(a, b)| a != b)
            .collect();
        Self { map }
    }

    /// Atoms moved by the permutation.
    pub fn carrier(&self) -> impl Iterator<Item = Atom> + '_ {
        self.map.keys().copied()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }
}

/// Pointwise action of atom permutations. ⊥, symbols and locations are fixed.
pub trait Permute {
    fn permute(&self, pi: &AtomPermutation) -> Self;
}

impl Permute for Atom {
    fn permute(&self, pi: &AtomPermutation) -> Self {
        pi.apply(*self)
    }
}

impl Permute for AtomOrBot {
    fn permute(&self, pi: &AtomPermutation) -> Self {
        self.map(|a| pi.apply(a))
    }
}

impl Permute for SupportSet {
    fn permute(&self, pi: &AtomPermutation) -> Self {
        self.iter().map(|&a| pi.apply(a)).collect()
    }
}

/// Applies `pi` to any object carrying atoms.
pub fn apply_permutation<T: Permute>(pi: &AtomPermutation, x: &T) -> T {
    x.permute(pi)
}

/// The orbit of a tuple over `A ∪ {⊥}` under atom automorphisms.
///
/// Position `i` holds `None` for ⊥, otherwise the index of its equality
/// class, classes being numbered by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EqType(Vec<Option<u8>>);

impl EqType {
    pub fn of(values: &[AtomOrBot]) -> Self {
        let mut seen: Vec<Atom> = Vec::new();
        let classes = values
            .iter()
            .map(|v| {
                v.map(|a| match seen.iter().position(|&s| s == a) {
                    Some(i) => i as u8,
                    None => {
                        seen.push(a);
                        (seen.len() - 1) as u8
                    }
                })
            })
            .collect();
        EqType(classes)
    }

    /// Every equality type of an `n`-tuple, in a fixed order.
    ///
    /// When `last_defined` is set, the last position is never ⊥ (used for the
    /// input variable, which always carries an atom).
    pub fn enumerate(n: usize, last_defined: bool) -> Vec<EqType> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn go(n: usize, last_defined: bool, cur: &mut Vec<Option<u8>>, classes: u8, out: &mut Vec<EqType>) {
            if cur.len() == n {
                out.push(EqType(cur.clone()));
                return;
            }
            let last = cur.len() + 1 == n;
            if !(last && last_defined) {
                cur.push(None);
                go(n, last_defined, cur, classes, out);
                cur.pop();
            }
            for c in 0..=classes {
                cur.push(Some(c));
                go(n, last_defined, cur, classes.max(c + 1), out);
                cur.pop();
            }
        }
        go(n, last_defined, &mut cur, 0, &mut out);
        out
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn classes(&self) -> &[Option<u8>] {
        &self.0
    }

    pub fn class_count(&self) -> usize {
        self.0.iter().flatten().map(|&c| c as usize + 1).max().unwrap_or(0)
    }

    /// A tuple in this orbit using atoms `0, 1, ...` for the classes.
    pub fn representative(&self) -> Vec<AtomOrBot> {
        self.0.iter().map(|c| c.map(|c| Atom(c as u32))).collect()
    }

    /// Restriction to the first `n` positions, renumbered canonically.
    pub fn prefix(&self, n: usize) -> EqType {
        EqType::of(&self.representative()[..n])
    }
}
