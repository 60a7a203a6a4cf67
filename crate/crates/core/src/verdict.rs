//! Outcomes of the decision procedures.

use std::fmt;

use serde::Serialize;

use crate::word::DataWord;

/// Default cap on generated abstract states.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Counters reported by a search. `generated` is the unit budgets are
/// charged in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub generated: u64,
    pub explored: u64,
    pub pruned: u64,
}

/// `Holds`, `Fails` with a checkable witness, or out of budget. A search
/// that runs out of budget never guesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W, H = ()> {
    Holds(H),
    Fails(W),
    BudgetExhausted(SearchStats),
}

impl<W, H> Verdict<W, H> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }

    pub fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V, H> {
        match self {
            Verdict::Holds(h) => Verdict::Holds(h),
            Verdict::Fails(w) => Verdict::Fails(f(w)),
            Verdict::BudgetExhausted(s) => Verdict::BudgetExhausted(s),
        }
    }
}

/// Which language a distinguishing word belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// Accepted by the left automaton only.
    LeftOnly,
    /// Accepted by the right automaton only.
    RightOnly,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::LeftOnly => "left-only",
            Side::RightOnly => "right-only",
        })
    }
}

/// A word in the symmetric difference of two languages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub word: DataWord,
    pub side: Side,
}
