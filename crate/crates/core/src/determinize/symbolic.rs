//! Macro-configurations invariant under all permutations fixing a finite
//! support, and the steps of the determinization pipeline acting on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::atoms::{fresh_after, Atom, AtomOrBot, AtomPermutation, EqType, Permute};
use crate::automaton::{Automaton, Configuration};
use crate::error::Error;

pub type Locations = BTreeSet<usize>;

/// The set of configurations
/// `⋃ rows[s] × {s}  ∪  fresh × (atoms ∖ support)  ∪  bot × {⊥}`
/// of a one-register automaton.
///
/// Over equality atoms the orbits of atoms under permutations fixing a set
/// `S` are the singletons of `S` and the complement of `S`, so every
/// `S`-invariant macro-configuration has this shape.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymbolicMacroConfig {
    /// Ordered, duplicate-free.
    pub support: Vec<Atom>,
    /// Locations holding each support atom; empty rows are omitted.
    pub rows: BTreeMap<Atom, Locations>,
    /// Locations holding every atom outside the support.
    pub fresh: Locations,
    /// Locations whose register is ⊥.
    pub bot: Locations,
}

impl SymbolicMacroConfig {
    /// The initial macro-configuration: every location in `locs` with ⊥.
    pub fn bottom(locs: impl IntoIterator<Item = usize>) -> Self {
        SymbolicMacroConfig {
            bot: locs.into_iter().collect(),
            ..Default::default()
        }
    }

    pub fn row(&self, a: Atom) -> &Locations {
        static EMPTY: Locations = BTreeSet::new();
        if self.support.contains(&a) {
            self.rows.get(&a).unwrap_or(&EMPTY)
        } else {
            &self.fresh
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bot.is_empty() && self.fresh.is_empty() && self.rows.values().all(BTreeSet::is_empty)
    }

    /// Locations occurring anywhere.
    pub fn locations(&self) -> Locations {
        let mut out = self.bot.clone();
        out.extend(&self.fresh);
        for r in self.rows.values() {
            out.extend(r);
        }
        out
    }

    /// Does the set contain `(l, v)`?
    pub fn contains(&self, l: usize, v: AtomOrBot) -> bool {
        match v {
            None => self.bot.contains(&l),
            Some(a) => self.row(a).contains(&l),
        }
    }

    fn insert(&mut self, l: usize, v: AtomOrBot) {
        match v {
            None => {
                self.bot.insert(l);
            }
            Some(a) => {
                self.rows.entry(a).or_default().insert(l);
            }
        }
    }

    /// Finite sub-macro: the support rows and ⊥ row, plus the fresh row
    /// instantiated at the given atoms (which must lie outside the support).
    pub fn instantiate(&self, fresh_atoms: &[Atom]) -> BTreeSet<Configuration> {
        let mut out = BTreeSet::new();
        for &l in &self.bot {
            out.insert(Configuration::new(l, vec![None]));
        }
        for (a, r) in &self.rows {
            for &l in r {
                out.insert(Configuration::new(l, vec![Some(*a)]));
            }
        }
        for &b in fresh_atoms {
            debug_assert!(!self.support.contains(&b));
            for &l in &self.fresh {
                out.insert(Configuration::new(l, vec![Some(b)]));
            }
        }
        out
    }
}

impl Permute for SymbolicMacroConfig {
    fn permute(&self, pi: &AtomPermutation) -> Self {
        SymbolicMacroConfig {
            support: self.support.iter().map(|&a| pi.apply(a)).collect(),
            rows: self.rows.iter().map(|(&a, r)| (pi.apply(a), r.clone())).collect(),
            fresh: self.fresh.clone(),
            bot: self.bot.clone(),
        }
    }
}

impl fmt::Display for SymbolicMacroConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &Locations| format!("{s:?}");
        write!(f, "{{")?;
        for a in &self.support {
            write!(f, "{a}:{}, ", set(self.row(*a)))?;
        }
        write!(f, "fresh:{}, ⊥:{}}}", set(&self.fresh), set(&self.bot))
    }
}

/// Successor of `x` under symbol `s` and input atom `input`, represented
/// over the support extended by `input`.
///
/// Rows at support atoms and the ⊥ row are stepped exactly. The fresh row
/// stands for every atom outside the support, `input` included when it is
/// new: those configurations holding `input` itself take rules whose guard
/// holds for `x1 = y`, the others rules whose guard holds for `x1 ≠ y`.
pub fn symbolic_successor(a: &Automaton, x: &SymbolicMacroConfig, s: usize, input: Atom) -> SymbolicMacroConfig {
    let mut out = SymbolicMacroConfig {
        support: x.support.clone(),
        ..Default::default()
    };
    if !out.support.contains(&input) {
        out.support.push(input);
    }
    let fire = |l: usize, v: AtomOrBot, out: &mut SymbolicMacroConfig, fresh_result: bool| {
        for r in a.rules_on(l, s) {
            if r.guard.holds(&[v], Some(input)) {
                if !r.store.is_empty() {
                    out.insert(r.to, Some(input));
                } else if fresh_result {
                    out.fresh.insert(r.to);
                } else {
                    out.insert(r.to, v);
                }
            }
        }
    };
    for &l in &x.bot {
        fire(l, None, &mut out, false);
    }
    for (&b, locs) in &x.rows {
        for &l in locs {
            fire(l, Some(b), &mut out, false);
        }
    }
    let other = fresh_after(x.support.iter().copied().chain([input]));
    for &l in &x.fresh {
        if !x.support.contains(&input) {
            fire(l, Some(input), &mut out, false);
        }
        fire(l, Some(other), &mut out, true);
    }
    out.rows.retain(|_, r| !r.is_empty());
    out
}

/// Closure under permutations fixing `keep`: rows of support atoms outside
/// `keep` join the fresh row.
pub fn close_and_normalize(raw: &SymbolicMacroConfig, keep: &BTreeSet<Atom>) -> SymbolicMacroConfig {
    let mut out = SymbolicMacroConfig {
        support: raw.support.iter().copied().filter(|a| keep.contains(a)).collect(),
        rows: BTreeMap::new(),
        fresh: raw.fresh.clone(),
        bot: raw.bot.clone(),
    };
    for (a, r) in &raw.rows {
        if keep.contains(a) {
            out.rows.insert(*a, r.clone());
        } else {
            out.fresh.extend(r);
        }
    }
    out.rows.retain(|_, r| !r.is_empty());
    out
}

/// Register update after reading `input` when the new support is `support`:
/// a register is overwritten with `input` when its value left the support or
/// is repeated in a higher-numbered register.
pub fn register_update(mu: &[AtomOrBot], support: &BTreeSet<Atom>, input: Atom) -> Result<Vec<AtomOrBot>, Error> {
    if support.len() > mu.len() {
        return Err(Error::Precondition(format!(
            "support of size {} does not fit into {} register(s)",
            support.len(),
            mu.len()
        )));
    }
    Ok(mu
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let gone = v.is_none_or(|a| !support.contains(&a));
            let repeated = v.is_some() && mu[i + 1..].contains(v);
            if gone || repeated {
                Some(input)
            } else {
                *v
            }
        })
        .collect())
}

/// Fingerprint of the orbit of a state `(macro, registers)`.
///
/// Register classes are numbered by first occurrence, and each class carries
/// whether its atom is in the support together with the locations holding
/// it. With the fresh and ⊥ rows this determines the state up to renaming.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitKey {
    pub pattern: EqType,
    pub classes: Vec<(bool, Locations)>,
    pub fresh: Locations,
    pub bot: Locations,
}

impl OrbitKey {
    /// Canonical text encoding, e.g. `[0,⊥,0]|s{1,2}|f{}|b{0}`.
    pub fn encode(&self) -> String {
        let set = |s: &Locations| {
            let items: Vec<String> = s.iter().map(|l| l.to_string()).collect();
            format!("{{{}}}", items.join(","))
        };
        let pat: Vec<String> = self
            .pattern
            .classes()
            .iter()
            .map(|c| c.map_or("⊥".to_string(), |c| c.to_string()))
            .collect();
        let mut out = format!("[{}]", pat.join(","));
        for (in_support, locs) in &self.classes {
            out.push('|');
            out.push(if *in_support { 's' } else { 'o' });
            out.push_str(&set(locs));
        }
        out.push_str(&format!("|f{}|b{}", set(&self.fresh), set(&self.bot)));
        out
    }
}

pub fn orbit_key(x: &SymbolicMacroConfig, mu: &[AtomOrBot]) -> OrbitKey {
    let mut seen: Vec<Atom> = Vec::new();
    for a in mu.iter().flatten() {
        if !seen.contains(a) {
            seen.push(*a);
        }
    }
    OrbitKey {
        pattern: EqType::of(mu),
        classes: seen
            .iter()
            .map(|&a| (x.support.contains(&a), x.row(a).clone()))
            .collect(),
        fresh: x.fresh.clone(),
        bot: x.bot.clone(),
    }
}
