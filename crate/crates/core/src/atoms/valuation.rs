use std::fmt;

use super::{Atom, AtomOrBot, AtomPermutation, Permute};

/// Register contents, plus an optional binding for the input variable `y`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation {
    regs: Vec<AtomOrBot>,
    input: Option<Atom>,
}

impl Valuation {
    pub fn new(regs: Vec<AtomOrBot>) -> Self {
        Self { regs, input: None }
    }

    /// All `k` registers undefined.
    pub fn bottom(k: usize) -> Self {
        Self::new(vec![None; k])
    }

    pub fn with_input(mut self, a: Atom) -> Self {
        self.input = Some(a);
        self
    }

    pub fn registers(&self) -> &[AtomOrBot] {
        &self.regs
    }

    pub fn input(&self) -> Option<Atom> {
        self.input
    }

    pub fn len(&self) -> usize {
        self.regs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regs.is_empty()
    }

    /// Atoms stored in registers, without repetition, in register order.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        for a in self.regs.iter().flatten() {
            if !out.contains(a) {
                out.push(*a);
            }
        }
        out
    }
}

impl From<Vec<AtomOrBot>> for Valuation {
    fn from(regs: Vec<AtomOrBot>) -> Self {
        Valuation::new(regs)
    }
}

impl Permute for Valuation {
    fn permute(&self, pi: &AtomPermutation) -> Self {
        Self {
            regs: self.regs.iter().map(|v| v.permute(pi)).collect(),
            input: self.input.map(|a| pi.apply(a)),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.regs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match v {
                Some(a) => write!(f, "x{}↦{a}", i + 1)?,
                None => write!(f, "x{}↦⊥", i + 1)?,
            }
        }
        if let Some(a) = self.input {
            write!(f, "; y↦{a}")?;
        }
        f.write_str("}")
    }
}

/// The valuation that is `a` on the registers in `store` and agrees with `mu`
/// elsewhere. Register indices are 0-based.
pub fn register_extend(store: &[usize], a: Atom, mu: &Valuation) -> Valuation {
    let mut regs = mu.regs.clone();
    for &i in store {
        regs[i] = Some(a);
    }
    Valuation { regs, input: mu.input }
}
