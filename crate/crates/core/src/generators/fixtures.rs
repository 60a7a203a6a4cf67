//! Small hand-written automata used as fixtures.

use crate::automaton::{Automaton, AutomatonDesc, TransitionDesc};

fn build(desc: AutomatonDesc) -> Automaton {
    desc.build().expect("fixture automata are well-formed")
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// One register over `{σ}`: words whose last atom also occurs earlier.
///
/// `p` skips letters, guesses the earlier occurrence and stores it on the way
/// to `q`, which waits for the same atom to reach `r`.
pub fn example_last_atom_repeats() -> Automaton {
    build(AutomatonDesc {
        registers: 1,
        alphabet: strings(&["σ"]),
        locations: strings(&["p", "q", "r"]),
        initial: strings(&["p"]),
        finals: strings(&["r"]),
        transitions: vec![
            TransitionDesc::new("p", "σ", "true", &[], "p"),
            TransitionDesc::new("p", "σ", "true", &["x1"], "q"),
            TransitionDesc::new("q", "σ", "y != x1", &[], "q"),
            TransitionDesc::new("q", "σ", "y == x1", &[], "r"),
        ],
    })
}

/// Nonempty words over `{σ}` whose first and last atoms coincide, as a
/// nondeterministic one-register automaton that guesses whether the first
/// letter is also the last.
pub fn first_equals_last_nra() -> Automaton {
    build(AutomatonDesc {
        registers: 1,
        alphabet: strings(&["σ"]),
        locations: strings(&["p0", "p1", "f"]),
        initial: strings(&["p0"]),
        finals: strings(&["f"]),
        transitions: vec![
            TransitionDesc::new("p0", "σ", "true", &["x1"], "p1"),
            TransitionDesc::new("p0", "σ", "true", &["x1"], "f"),
            TransitionDesc::new("p1", "σ", "true", &[], "p1"),
            TransitionDesc::new("p1", "σ", "y == x1", &[], "f"),
        ],
    })
}

/// The same language as [`first_equals_last_nra`], deterministically.
pub fn first_equals_last_dra() -> Automaton {
    build(AutomatonDesc {
        registers: 1,
        alphabet: strings(&["σ"]),
        locations: strings(&["s0", "s1", "s2"]),
        initial: strings(&["s0"]),
        finals: strings(&["s1"]),
        transitions: vec![
            TransitionDesc::new("s0", "σ", "true", &["x1"], "s1"),
            TransitionDesc::new("s1", "σ", "y == x1", &[], "s1"),
            TransitionDesc::new("s1", "σ", "y != x1", &[], "s2"),
            TransitionDesc::new("s2", "σ", "y == x1", &[], "s1"),
            TransitionDesc::new("s2", "σ", "y != x1", &[], "s2"),
        ],
    })
}

/// Register-free automaton accepting every word over `alphabet`.
pub fn universal(alphabet: &[&str]) -> Automaton {
    build(AutomatonDesc {
        registers: 0,
        alphabet: strings(alphabet),
        locations: strings(&["u"]),
        initial: strings(&["u"]),
        finals: strings(&["u"]),
        transitions: alphabet
            .iter()
            .map(|s| TransitionDesc::new("u", s, "true", &[], "u"))
            .collect(),
    })
}
