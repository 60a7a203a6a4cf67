//! Deciding whether the language of a one-register automaton is recognised
//! by a deterministic automaton with `k` registers, and building one when it
//! is.
//!
//! The exploration runs over orbits of states `(X, μ)`: `X` is the set of
//! configurations reached after some word, closed under all permutations
//! fixing its least support, and `μ` holds that support in `k` registers.
//! Each orbit is represented by the state reached after a canonical access
//! word. Alongside the closed set we keep the concrete configurations after
//! the access word; least supports are computed on those with the
//! configuration-language oracle.

mod naive;
mod symbolic;

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigUint;
use serde::Serialize;

use crate::atoms::{fresh_after, Atom, AtomOrBot, AtomPermutation, EqType, Permute, SupportSet};
use crate::automaton::{
    eliminate_epsilon, initial_configurations, joint_vars, successor_set, type_formula, Automaton, Configuration,
    Label, Rule,
};
use crate::error::Error;
use crate::inclusion::{config_lang_equal, equivalent};
use crate::verdict::{SearchStats, Verdict, DEFAULT_BUDGET};
use crate::word::{DataWord, Letter};

pub use naive::naive_dra0_membership;
pub use symbolic::{
    close_and_normalize, orbit_key, register_update, symbolic_successor, Locations, OrbitKey, SymbolicMacroConfig,
};

/// `(k+1)! · 2^(n(k+1))`, the classical bound on the number of orbits of
/// states for `k` registers and `n` locations.
///
/// It does not account for the row of configurations with an empty
/// register, so explored counts can exceed it; see [`orbit_key_bound`].
pub fn f_bound(k: usize, n: usize) -> BigUint {
    let fact: BigUint = (1..=k as u64 + 1).product();
    fact << (n * (k + 1))
}

/// The number of distinct [`OrbitKey`]s possible for `k` registers and `n`
/// locations: per register pattern with `c` classes, each class is either
/// outside the support or carries a row, plus the fresh and ⊥ rows.
pub fn orbit_key_bound(k: usize, n: usize) -> BigUint {
    let per_class = (BigUint::from(1u8) << n) + 1u8;
    EqType::enumerate(k, false)
        .iter()
        .map(|t| per_class.pow(t.class_count() as u32) << (2 * n))
        .sum()
}

/// Least support of the language of a finite set of configurations of an
/// ε-free one-register automaton: the atoms `t` of the set for which
/// renaming `t` to a fresh atom changes the language.
pub fn least_support(a: &Automaton, raw: &BTreeSet<Configuration>, budget: u64) -> Result<SupportSet, Error> {
    let candidates = config_atoms(raw);
    let mut calls = 0;
    least_support_among(a, raw, &candidates, budget, &mut calls)
}

fn config_atoms(x: &BTreeSet<Configuration>) -> SupportSet {
    x.iter().flat_map(|c| c.valuation.iter().flatten().copied()).collect()
}

/// The atoms of `candidates` in the least support of `raw`, which is
/// assumed to be invariant under permutations fixing `candidates`.
fn least_support_among(
    a: &Automaton,
    raw: &BTreeSet<Configuration>,
    candidates: &SupportSet,
    budget: u64,
    calls: &mut u64,
) -> Result<SupportSet, Error> {
    let present = config_atoms(raw);
    let b = fresh_after(present.iter().chain(candidates).copied());
    let mut out = SupportSet::new();
    for &t in candidates.intersection(&present) {
        let renamed = raw.permute(&AtomPermutation::swap(t, b));
        *calls += 1;
        match config_lang_equal(a, raw, &renamed, budget)? {
            Verdict::Holds(()) => {}
            Verdict::Fails(_) => {
                out.insert(t);
            }
            Verdict::BudgetExhausted(s) => return Err(Error::BudgetExhausted(s.generated)),
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MembershipOptions {
    pub k: usize,
    /// Budget of each oracle call, and cap on explored orbits; 0 means
    /// unbounded.
    pub budget: u64,
    /// Check the extracted automaton for equivalence with the input.
    pub verify: bool,
}

impl MembershipOptions {
    pub fn new(k: usize) -> Self {
        MembershipOptions {
            k,
            budget: DEFAULT_BUDGET,
            verify: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verification {
    NotRequested,
    Equivalent,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub k: usize,
    /// Locations after ε-elimination.
    pub locations: usize,
    pub explored_orbits: usize,
    pub oracle_calls: u64,
    pub f_bound: String,
    pub within_f_bound: bool,
    pub orbit_key_bound: String,
    pub within_orbit_key_bound: bool,
    /// Least support of the configurations after the witness word.
    pub witness_support: Option<Vec<Atom>>,
    pub verification: Verification,
}

struct State {
    word: DataWord,
    conc: BTreeSet<Configuration>,
    support: SupportSet,
    mu: Vec<AtomOrBot>,
    sym: SymbolicMacroConfig,
}

/// Decides whether `L(a)` is recognised by a deterministic automaton with
/// `opts.k` registers, for `a` with at most one register.
///
/// `Holds` carries such an automaton, `Fails` a word after which the least
/// support has more than `k` atoms.
pub fn dra_k_membership(
    a: &Automaton,
    opts: MembershipOptions,
) -> Result<(Verdict<DataWord, Automaton>, MembershipReport), Error> {
    if a.registers > 1 {
        return Err(Error::Precondition(format!(
            "the input automaton must have at most one register, it has {}",
            a.registers
        )));
    }
    let m = eliminate_epsilon(a).with_registers(1);
    let k = opts.k;
    let n = m.locations.len();
    let mut report = MembershipReport {
        k,
        locations: n,
        explored_orbits: 0,
        oracle_calls: 0,
        f_bound: f_bound(k, n).to_string(),
        within_f_bound: true,
        orbit_key_bound: orbit_key_bound(k, n).to_string(),
        within_orbit_key_bound: true,
        witness_support: None,
        verification: Verification::NotRequested,
    };

    let conc = initial_configurations(&m);
    let start = State {
        sym: SymbolicMacroConfig::bottom(conc.iter().map(|c| c.location)),
        word: DataWord::empty(),
        conc,
        support: SupportSet::new(),
        mu: vec![None; k],
    };
    let mut states = vec![start];
    let mut index: HashMap<OrbitKey, usize> = HashMap::new();
    index.insert(orbit_key(&states[0].sym, &states[0].mu), 0);
    let mut queue = VecDeque::from([0]);
    let mut rules = Vec::new();
    let vars = joint_vars(k);

    while let Some(id) = queue.pop_front() {
        if opts.budget > 0 && states.len() as u64 > opts.budget {
            report.explored_orbits = states.len();
            return Ok((Verdict::BudgetExhausted(SearchStats::default()), finish(report)));
        }
        let mut inputs: Vec<Atom> = Vec::new();
        for v in states[id].mu.iter().flatten() {
            if !inputs.contains(v) {
                inputs.push(*v);
            }
        }
        inputs.push(fresh_after(states[id].word.atoms()));
        for s in 0..m.alphabet.len() {
            for &input in &inputs {
                let st = &states[id];
                let raw = successor_set(&m, &st.conc, s, input);
                let mut candidates = st.support.clone();
                candidates.insert(input);
                let support = match least_support_among(&m, &raw, &candidates, opts.budget, &mut report.oracle_calls) {
                    Ok(sp) => sp,
                    Err(Error::BudgetExhausted(g)) => {
                        report.explored_orbits = states.len();
                        let stats = SearchStats {
                            generated: g,
                            ..Default::default()
                        };
                        return Ok((Verdict::BudgetExhausted(stats), finish(report)));
                    }
                    Err(e) => return Err(e),
                };
                let word = st.word.pushed(Letter {
                    symbol: m.alphabet[s].clone(),
                    atom: input,
                });
                if support.len() > k {
                    report.explored_orbits = states.len();
                    report.witness_support = Some(support.into_iter().collect());
                    return Ok((Verdict::Fails(word), finish(report)));
                }
                let sym = close_and_normalize(&symbolic_successor(&m, &st.sym, s, input), &support);
                check_consistency(&m, &raw, &sym, &word)?;
                if sym.is_empty() {
                    continue;
                }
                let mu = register_update(&st.mu, &support, input)?;
                if !support.iter().all(|t| mu.contains(&Some(*t))) {
                    return Err(Error::Internal(format!("support of `{word}` escaped the registers")));
                }
                let mut joint = st.mu.clone();
                joint.push(Some(input));
                let guard = type_formula(&EqType::of(&joint), &vars);
                let store: Vec<usize> = (0..k).filter(|&i| mu[i] == Some(input)).collect();
                let key = orbit_key(&sym, &mu);
                let to = match index.get(&key) {
                    Some(&t) => t,
                    None => {
                        let t = states.len();
                        states.push(State {
                            word,
                            conc: raw,
                            support,
                            mu,
                            sym,
                        });
                        index.insert(key, t);
                        queue.push_back(t);
                        t
                    }
                };
                rules.push(Rule {
                    from: id,
                    label: Label::Symbol(s),
                    guard,
                    store,
                    to,
                });
            }
        }
    }

    report.explored_orbits = states.len();
    let dra = Automaton {
        registers: k,
        alphabet: m.alphabet.clone(),
        locations: (0..states.len()).map(|i| format!("o{i}")).collect(),
        initial: vec![0],
        finals: (0..states.len())
            .filter(|&i| states[i].sym.locations().iter().any(|&l| m.is_final(l)))
            .collect(),
        rules,
    };
    let mut report = finish(report);
    if opts.verify {
        report.verification = match equivalent(&dra, a, opts.budget)? {
            Verdict::Holds(()) => Verification::Equivalent,
            Verdict::BudgetExhausted(_) => Verification::BudgetExhausted,
            Verdict::Fails(d) => {
                return Err(Error::Internal(format!(
                    "extracted automaton differs from the input on `{}`",
                    d.word
                )))
            }
        };
    }
    Ok((Verdict::Holds(dra), report))
}

fn finish(mut r: MembershipReport) -> MembershipReport {
    let count = BigUint::from(r.explored_orbits);
    r.within_f_bound = count <= f_bound(r.k, r.locations);
    r.within_orbit_key_bound = count <= orbit_key_bound(r.k, r.locations);
    r
}

/// The closed set must contain the concrete one and agree on acceptance of
/// the empty word.
fn check_consistency(
    m: &Automaton,
    conc: &BTreeSet<Configuration>,
    sym: &SymbolicMacroConfig,
    word: &DataWord,
) -> Result<(), Error> {
    let contained = conc.iter().all(|c| sym.contains(c.location, c.valuation[0]));
    let conc_final = conc.iter().any(|c| m.is_final(c.location));
    let sym_final = sym.locations().iter().any(|&l| m.is_final(l));
    if !contained || conc_final != sym_final {
        return Err(Error::Internal(format!("closed state after `{word}` does not match {sym}")));
    }
    Ok(())
}

