//! Forward search over pairs (configuration of the left automaton, set of
//! configurations of a one-register right automaton).
//!
//! A pair is bad when the left side is in a final location and no
//! configuration on the right side is. States are identified up to atom
//! renaming: atoms held by left registers are "rigid" and tracked by
//! position; every other atom on the right is described only by the set of
//! right locations holding it, so the right side abstracts to a multiset of
//! location sets. Pruning keeps only states minimal for the order "same left
//! part, rigid rows and ⊥ row included pointwise, other rows embeddable by an
//! injection", which is a well-quasi-order on these states.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::atoms::{fresh_after, Atom, EqType};
use crate::automaton::{step_symbol, Automaton, Configuration, Label};
use crate::verdict::SearchStats;
use crate::word::{DataWord, Letter};

pub(crate) type LocSet = FixedBitSet;

/// Right-hand macro-configuration of a one-register automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RightMacro {
    pub bot: LocSet,
    /// Only nonempty rows are stored.
    pub rows: BTreeMap<Atom, LocSet>,
}

impl RightMacro {
    pub fn from_configs(n: usize, configs: &BTreeSet<Configuration>) -> Self {
        let mut m = RightMacro {
            bot: LocSet::with_capacity(n),
            rows: BTreeMap::new(),
        };
        for c in configs {
            match c.valuation[0] {
                None => m.bot.insert(c.location),
                Some(a) => m
                    .rows
                    .entry(a)
                    .or_insert_with(|| LocSet::with_capacity(n))
                    .insert(c.location),
            }
        }
        m
    }

    fn has_final(&self, b: &Automaton) -> bool {
        let fin = |s: &LocSet| s.ones().any(|l| b.is_final(l));
        fin(&self.bot) || self.rows.values().any(fin)
    }

    fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.rows.keys().copied()
    }
}

/// Orbit fingerprint of a product state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Key {
    loc: usize,
    pattern: EqType,
    rigid: Vec<LocSet>,
    bot: LocSet,
    /// Rows of non-rigid atoms, sorted.
    free: Vec<LocSet>,
}

impl Key {
    fn new(left: &Configuration, right: &RightMacro, n: usize) -> Self {
        let rigid_atoms = rigid_atoms(left);
        let rigid = rigid_atoms
            .iter()
            .map(|a| right.rows.get(a).cloned().unwrap_or_else(|| LocSet::with_capacity(n)))
            .collect();
        let mut free: Vec<LocSet> = right
            .rows
            .iter()
            .filter(|(a, _)| !rigid_atoms.contains(a))
            .map(|(_, r)| r.clone())
            .collect();
        free.sort();
        Key {
            loc: left.location,
            pattern: EqType::of(&left.valuation),
            rigid,
            bot: right.bot.clone(),
            free,
        }
    }

    /// `self ⊑ other`: every bad continuation of `other` is one of `self`.
    pub fn is_below(&self, other: &Key) -> bool {
        self.loc == other.loc
            && self.pattern == other.pattern
            && self.bot.is_subset(&other.bot)
            && self.rigid.iter().zip(&other.rigid).all(|(a, b)| a.is_subset(b))
            && injects(&self.free, &other.free)
    }
}

fn rigid_atoms(c: &Configuration) -> Vec<Atom> {
    let mut out = Vec::new();
    for a in c.valuation.iter().flatten() {
        if !out.contains(a) {
            out.push(*a);
        }
    }
    out
}

/// Is there an injection `f` with `small[i] ⊆ big[f(i)]`? (bipartite matching)
fn injects(small: &[LocSet], big: &[LocSet]) -> bool {
    if small.len() > big.len() {
        return false;
    }
    fn augment(i: usize, small: &[LocSet], big: &[LocSet], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for j in 0..big.len() {
            if !seen[j] && small[i].is_subset(&big[j]) {
                seen[j] = true;
                if owner[j].is_none_or(|o| augment(o, small, big, owner, seen)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; big.len()];
    (0..small.len()).all(|i| augment(i, small, big, &mut owner, &mut vec![false; big.len()]))
}

struct Node {
    left: Configuration,
    right: RightMacro,
    parent: Option<usize>,
    letter: Option<Letter>,
    fresh: Atom,
    key: Key,
}

pub(crate) enum Outcome {
    /// No bad state is reachable.
    Safe,
    /// A word leading to a bad state.
    Bad(DataWord),
    OutOfBudget,
}

pub(crate) struct Search<'a> {
    left: &'a Automaton,
    right: &'a Automaton,
    /// Right-hand symbol index of each left symbol, if any.
    sym_map: Vec<Option<usize>>,
    /// Right rules by (location, symbol).
    right_rules: Vec<Vec<Vec<usize>>>,
    pub budget: u64,
    pub subsumption: bool,
    pub stats: SearchStats,
}

impl<'a> Search<'a> {
    /// `right` must have exactly one register and neither side ε-rules.
    pub fn new(left: &'a Automaton, right: &'a Automaton, budget: u64, subsumption: bool) -> Self {
        assert_eq!(right.registers, 1);
        let sym_map = left.alphabet.iter().map(|s| right.symbol_index(s)).collect();
        let mut right_rules = vec![vec![Vec::new(); right.alphabet.len()]; right.locations.len()];
        for (i, r) in right.rules.iter().enumerate() {
            if let Label::Symbol(s) = r.label {
                right_rules[r.from][s].push(i);
            }
        }
        Search {
            left,
            right,
            sym_map,
            right_rules,
            budget,
            subsumption,
            stats: SearchStats::default(),
        }
    }

    fn right_succ(&self, m: &RightMacro, s: Option<usize>, a: Atom) -> RightMacro {
        let n = self.right.locations.len();
        let mut out = RightMacro {
            bot: LocSet::with_capacity(n),
            rows: BTreeMap::new(),
        };
        let Some(s) = s else { return out };
        let add = |loc: usize, v: Option<Atom>, out: &mut RightMacro| match v {
            None => out.bot.insert(loc),
            Some(b) => out.rows.entry(b).or_insert_with(|| LocSet::with_capacity(n)).insert(loc),
        };
        let rows = std::iter::once((None, &m.bot)).chain(m.rows.iter().map(|(a, r)| (Some(*a), r)));
        for (v, locs) in rows {
            for q in locs.ones() {
                for &ri in &self.right_rules[q][s] {
                    let r = &self.right.rules[ri];
                    if r.guard.holds(&[v], Some(a)) {
                        let nv = if r.store.is_empty() { v } else { Some(a) };
                        add(r.to, nv, &mut out);
                    }
                }
            }
        }
        out
    }

    fn is_bad(&self, node: &Node) -> bool {
        self.left.is_final(node.left.location) && !node.right.has_final(self.right)
    }

    fn word(nodes: &[Node], mut i: usize) -> DataWord {
        let mut letters = Vec::new();
        while let Some(l) = &nodes[i].letter {
            letters.push(l.clone());
            i = nodes[i].parent.expect("non-root node has a parent");
        }
        letters.reverse();
        DataWord(letters)
    }

    /// Explores from every `(left_init[i], right_init)` pair.
    pub fn run(&mut self, left_init: &[Configuration], right_init: &RightMacro) -> Outcome {
        let n = self.right.locations.len();
        let start_fresh = fresh_after(
            left_init
                .iter()
                .flat_map(|c| c.valuation.iter().flatten().copied())
                .chain(right_init.atoms()),
        );
        let mut nodes: Vec<Node> = Vec::new();
        let mut alive: Vec<bool> = Vec::new();
        let mut seen: HashSet<Key> = HashSet::new();
        let mut groups: HashMap<(usize, EqType), Vec<usize>> = HashMap::new();
        let mut queue: VecDeque<usize> = VecDeque::new();

        let roots = left_init.iter().map(|c| (c.clone(), right_init.clone(), None, None, start_fresh));
        let mut pending: Vec<(Configuration, RightMacro, Option<usize>, Option<Letter>, Atom)> = roots.collect();
        loop {
            for (left, right, parent, letter, fresh) in pending.drain(..) {
                self.stats.generated += 1;
                let key = Key::new(&left, &right, n);
                let node = Node {
                    left,
                    right,
                    parent,
                    letter,
                    fresh,
                    key,
                };
                if self.is_bad(&node) {
                    nodes.push(node);
                    return Outcome::Bad(Self::word(&nodes, nodes.len() - 1));
                }
                if self.budget != 0 && self.stats.generated > self.budget {
                    return Outcome::OutOfBudget;
                }
                if !seen.insert(node.key.clone()) {
                    self.stats.pruned += 1;
                    continue;
                }
                let id = nodes.len();
                if self.subsumption {
                    let group = groups
                        .entry((node.key.loc, node.key.pattern.clone()))
                        .or_default();
                    if group.iter().any(|&s| alive[s] && nodes[s].key.is_below(&node.key)) {
                        self.stats.pruned += 1;
                        continue;
                    }
                    for &u in group.iter() {
                        if alive[u] && node.key.is_below(&nodes[u].key) {
                            alive[u] = false;
                        }
                    }
                    group.retain(|&u| alive[u]);
                    group.push(id);
                }
                nodes.push(node);
                alive.push(true);
                queue.push_back(id);
            }
            let Some(id) = queue.pop_front() else {
                return Outcome::Safe;
            };
            if !alive[id] {
                continue;
            }
            self.stats.explored += 1;
            let node = &nodes[id];
            let rigid = rigid_atoms(&node.left);
            let mut inputs = rigid.clone();
            let mut profiles: Vec<&LocSet> = Vec::new();
            for (a, row) in &node.right.rows {
                if !rigid.contains(a) && !profiles.contains(&row) {
                    profiles.push(row);
                    inputs.push(*a);
                }
            }
            inputs.push(node.fresh);
            for (s, sym) in self.left.alphabet.iter().enumerate() {
                for &a in &inputs {
                    let lefts = step_symbol(self.left, &node.left, s, a);
                    if lefts.is_empty() {
                        continue;
                    }
                    let right = self.right_succ(&node.right, self.sym_map[s], a);
                    let fresh = if a == node.fresh { a.next() } else { node.fresh };
                    for l in lefts {
                        pending.push((
                            l,
                            right.clone(),
                            Some(id),
                            Some(Letter {
                                symbol: sym.clone(),
                                atom: a,
                            }),
                            fresh,
                        ));
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, ls: &[usize]) -> LocSet {
        let mut s = LocSet::with_capacity(n);
        for &l in ls {
            s.insert(l);
        }
        s
    }

    #[test]
    fn injection_needs_distinct_targets() {
        let a = set(3, &[0]);
        let ab = set(3, &[0, 1]);
        assert!(injects(std::slice::from_ref(&a), std::slice::from_ref(&ab)));
        assert!(!injects(&[a.clone(), a.clone()], std::slice::from_ref(&ab)));
        assert!(injects(&[a.clone(), ab.clone()], &[ab.clone(), set(3, &[0, 1, 2])]));
        assert!(!injects(std::slice::from_ref(&ab), &[a]));
    }

    #[test]
    fn per_location_counts_are_not_enough() {
        // {(l1,a),(l2,a)} and {(l1,a),(l2,b)} hold the same number of atoms
        // at each location but are incomparable.
        let together = Key::new(
            &Configuration::new(0, vec![]),
            &RightMacro::from_configs(
                2,
                &[Configuration::new(0, vec![Some(Atom(0))]), Configuration::new(1, vec![Some(Atom(0))])].into(),
            ),
            2,
        );
        let apart = Key::new(
            &Configuration::new(0, vec![]),
            &RightMacro::from_configs(
                2,
                &[Configuration::new(0, vec![Some(Atom(0))]), Configuration::new(1, vec![Some(Atom(1))])].into(),
            ),
            2,
        );
        assert!(!together.is_below(&apart));
        assert!(!apart.is_below(&together));
    }
}
