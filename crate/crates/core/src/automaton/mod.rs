//! The register automaton model shared by nondeterministic and deterministic
//! automata, plus the operations that only need its syntax and semantics.

mod det;
mod empty;
mod epsilon;
mod product;
mod semantics;

pub(crate) use det::joint_vars;
pub use det::{complement, is_deterministic, totalize, type_formula};
pub use empty::is_empty;
pub use epsilon::eliminate_epsilon;
pub use product::product;
pub use semantics::{
    accepts, accepts_from, epsilon_closure, initial_configurations, run_from, step, step_symbol, successor_set,
    Configuration,
};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::atoms::{parse_constraint, Constraint, Var};
use crate::error::Error;

/// Label of a transition rule: an alphabet index or ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Eps,
    Symbol(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub from: usize,
    pub label: Label,
    pub guard: Constraint,
    /// Registers (0-based) overwritten with the input atom, sorted.
    pub store: Vec<usize>,
    pub to: usize,
}

/// A register automaton with `registers` registers.
///
/// Locations and symbols are referred to by index; their names only matter
/// for serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    pub registers: usize,
    pub alphabet: Vec<String>,
    pub locations: Vec<String>,
    pub initial: Vec<usize>,
    pub finals: Vec<usize>,
    pub rules: Vec<Rule>,
}

/// Serialized form of an automaton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDesc {
    pub registers: usize,
    pub alphabet: Vec<String>,
    pub locations: Vec<String>,
    pub initial: Vec<String>,
    #[serde(rename = "final")]
    pub finals: Vec<String>,
    pub transitions: Vec<TransitionDesc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDesc {
    pub from: String,
    pub label: String,
    pub guard: String,
    #[serde(default)]
    pub store: Vec<String>,
    pub to: String,
}

pub const EPS_LABEL: &str = "eps";

impl TransitionDesc {
    pub fn new(from: &str, label: &str, guard: &str, store: &[&str], to: &str) -> Self {
        TransitionDesc {
            from: from.into(),
            label: label.into(),
            guard: guard.into(),
            store: store.iter().map(|s| s.to_string()).collect(),
            to: to.into(),
        }
    }
}

fn parse_register(name: &str, k: usize) -> Option<usize> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let i: usize = digits.parse().ok()?;
    (i >= 1 && i <= k).then_some(i - 1)
}

impl AutomatonDesc {
    /// Resolves names and parses guards, reporting every problem found.
    pub fn build(&self) -> Result<Automaton, Error> {
        let mut errs = Vec::new();
        let k = self.registers;
        let mut seen = BTreeSet::new();
        for l in &self.locations {
            if !seen.insert(l) {
                errs.push(format!("duplicate location `{l}`"));
            }
        }
        let mut seen = BTreeSet::new();
        for s in &self.alphabet {
            if !seen.insert(s) {
                errs.push(format!("duplicate symbol `{s}`"));
            }
            if s == EPS_LABEL {
                errs.push(format!("`{EPS_LABEL}` is reserved for ε-rules and cannot be a symbol"));
            }
            if s.is_empty() || s.contains(',') || s.contains(':') {
                errs.push(format!("symbol `{s}` must be nonempty and contain neither `,` nor `:`"));
            }
        }
        let loc = |name: &str, what: &str, errs: &mut Vec<String>| -> usize {
            match self.locations.iter().position(|l| l == name) {
                Some(i) => i,
                None => {
                    errs.push(format!("{what}: unknown location `{name}`"));
                    usize::MAX
                }
            }
        };
        let initial: Vec<usize> = self.initial.iter().map(|n| loc(n, "initial", &mut errs)).collect();
        let finals: Vec<usize> = self.finals.iter().map(|n| loc(n, "final", &mut errs)).collect();
        let mut rules = Vec::new();
        for (i, t) in self.transitions.iter().enumerate() {
            let what = format!("transition {i}");
            let from = loc(&t.from, &what, &mut errs);
            let to = loc(&t.to, &what, &mut errs);
            let label = if t.label == EPS_LABEL {
                Label::Eps
            } else {
                match self.alphabet.iter().position(|s| *s == t.label) {
                    Some(s) => Label::Symbol(s),
                    None => {
                        errs.push(format!("{what}: unknown symbol `{}`", t.label));
                        Label::Eps
                    }
                }
            };
            let guard = match parse_constraint(&t.guard, k) {
                Ok(g) => g,
                Err(e) => {
                    errs.push(format!("{what}: guard `{}`: {e}", t.guard));
                    Constraint::True
                }
            };
            let mut store = Vec::new();
            for r in &t.store {
                match parse_register(r, k) {
                    Some(x) => store.push(x),
                    None => errs.push(format!("{what}: store entry `{r}` is not a register among x1..x{k}")),
                }
            }
            store.sort_unstable();
            store.dedup();
            rules.push(Rule {
                from,
                label,
                guard,
                store,
                to,
            });
        }
        if !errs.is_empty() {
            return Err(Error::Validation(errs));
        }
        let mut initial = initial;
        initial.sort_unstable();
        initial.dedup();
        let mut finals = finals;
        finals.sort_unstable();
        finals.dedup();
        let a = Automaton {
            registers: k,
            alphabet: self.alphabet.clone(),
            locations: self.locations.clone(),
            initial,
            finals,
            rules,
        };
        validate(&a)?;
        Ok(a)
    }
}

/// Checks every structural invariant and reports all violations at once.
pub fn validate(a: &Automaton) -> Result<(), Error> {
    let mut errs = Vec::new();
    let n = a.locations.len();
    for &l in a.initial.iter().chain(&a.finals) {
        if l >= n {
            errs.push(format!("location index {l} out of range"));
        }
    }
    for (i, r) in a.rules.iter().enumerate() {
        if r.from >= n || r.to >= n {
            errs.push(format!("transition {i}: location index out of range"));
        }
        if let Label::Symbol(s) = r.label {
            if s >= a.alphabet.len() {
                errs.push(format!("transition {i}: symbol index {s} out of range"));
            }
        }
        if let Some(m) = r.guard.max_register() {
            if m >= a.registers {
                errs.push(format!(
                    "transition {i}: guard `{}` uses x{} but the automaton has {} register(s)",
                    r.guard,
                    m + 1,
                    a.registers
                ));
            }
        }
        if let Some(&m) = r.store.iter().max() {
            if m >= a.registers {
                errs.push(format!("transition {i}: stores into x{} which does not exist", m + 1));
            }
        }
        if r.label == Label::Eps {
            if r.guard.mentions_input() {
                errs.push(format!("transition {i}: ε-rule guard `{}` mentions the input y", r.guard));
            }
            if !r.store.is_empty() {
                errs.push(format!("transition {i}: ε-rule stores into registers"));
            }
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(errs))
    }
}

impl Automaton {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let desc: AutomatonDesc = serde_json::from_str(text)?;
        desc.build()
    }

    pub fn to_desc(&self) -> AutomatonDesc {
        AutomatonDesc {
            registers: self.registers,
            alphabet: self.alphabet.clone(),
            locations: self.locations.clone(),
            initial: self.initial.iter().map(|&l| self.locations[l].clone()).collect(),
            finals: self.finals.iter().map(|&l| self.locations[l].clone()).collect(),
            transitions: self
                .rules
                .iter()
                .map(|r| TransitionDesc {
                    from: self.locations[r.from].clone(),
                    label: self.label_name(r.label).to_string(),
                    guard: r.guard.to_string(),
                    store: r.store.iter().map(|x| Var::Reg(*x).to_string()).collect(),
                    to: self.locations[r.to].clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_desc()).expect("automaton serialization cannot fail")
    }

    pub fn label_name(&self, l: Label) -> &str {
        match l {
            Label::Eps => EPS_LABEL,
            Label::Symbol(s) => &self.alphabet[s],
        }
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == name)
    }

    pub fn location_index(&self, name: &str) -> Option<usize> {
        self.locations.iter().position(|s| s == name)
    }

    pub fn is_final(&self, l: usize) -> bool {
        self.finals.binary_search(&l).is_ok()
    }

    pub fn has_epsilon(&self) -> bool {
        self.rules.iter().any(|r| r.label == Label::Eps)
    }

    /// Rules leaving `from` labelled with symbol `s`, in rule order.
    pub fn rules_on(&self, from: usize, s: usize) -> impl Iterator<Item = &Rule> {
        self.rules
            .iter()
            .filter(move |r| r.from == from && r.label == Label::Symbol(s))
    }

    /// The same automaton with extra, never-used registers appended.
    pub fn with_registers(&self, k: usize) -> Automaton {
        assert!(k >= self.registers, "cannot drop registers");
        Automaton {
            registers: k,
            ..self.clone()
        }
    }

    /// The same automaton over a larger alphabet. Symbols it did not know
    /// have no rules.
    pub fn over_alphabet(&self, alphabet: &[String]) -> Result<Automaton, Error> {
        let map: Vec<usize> = self
            .alphabet
            .iter()
            .map(|s| {
                alphabet
                    .iter()
                    .position(|t| t == s)
                    .ok_or_else(|| Error::Precondition(format!("symbol `{s}` missing from target alphabet")))
            })
            .collect::<Result<_, _>>()?;
        let mut out = self.clone();
        out.alphabet = alphabet.to_vec();
        for r in &mut out.rules {
            if let Label::Symbol(s) = r.label {
                r.label = Label::Symbol(map[s]);
            }
        }
        Ok(out)
    }

    /// Adds a fresh location whose name does not clash with existing ones.
    pub fn add_location(&mut self, base: &str) -> usize {
        let mut name = base.to_string();
        let mut i = 0;
        while self.locations.contains(&name) {
            i += 1;
            name = format!("{base}{i}");
        }
        self.locations.push(name);
        self.locations.len() - 1
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}
