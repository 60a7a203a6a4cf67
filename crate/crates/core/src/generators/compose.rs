//! Gluing two automata around a separator symbol.

use crate::atoms::Constraint;
use crate::automaton::{Automaton, Label, Rule};

/// The separator: `$`, or `$1`, `$2`, … if taken.
pub fn separator_for(alphabet: &[String]) -> String {
    std::iter::once("$".to_string())
        .chain((1..).map(|i| format!("${i}")))
        .find(|s| !alphabet.contains(s))
        .expect("some separator is free")
}

/// An automaton for `L·$·Γ* ∪ Σ*·$·M`, where `l` recognises `L` over `Σ`,
/// `m` recognises `M` over `Γ`, and `$` is a new symbol.
///
/// If `L` contains every word over `Σ`, this is `Σ*·$·Γ*`. Otherwise the
/// words continuing some `w ∉ L` after `$` are exactly `M`.
pub fn compose_hardness(l: &Automaton, m: &Automaton) -> Automaton {
    let mut alphabet = l.alphabet.clone();
    alphabet.extend(m.alphabet.iter().filter(|s| !l.alphabet.contains(s)).cloned());
    let sep_name = separator_for(&alphabet);
    alphabet.push(sep_name.clone());
    let sep = alphabet.len() - 1;
    let sym = |a: &Automaton, s: usize| alphabet.iter().position(|x| *x == a.alphabet[s]).expect("symbol in union");

    let mut out = Automaton {
        registers: l.registers.max(m.registers),
        alphabet: alphabet.clone(),
        locations: vec![],
        initial: vec![],
        finals: vec![],
        rules: vec![],
    };
    let copy = |out: &mut Automaton, a: &Automaton, prefix: &str| -> usize {
        let base = out.locations.len();
        out.locations.extend(a.locations.iter().map(|n| format!("{prefix}.{n}")));
        for r in &a.rules {
            out.rules.push(Rule {
                from: base + r.from,
                label: match r.label {
                    Label::Eps => Label::Eps,
                    Label::Symbol(s) => Label::Symbol(sym(a, s)),
                },
                guard: r.guard.clone(),
                store: r.store.clone(),
                to: base + r.to,
            });
        }
        base
    };
    let plain = |from: usize, s: usize, to: usize| Rule {
        from,
        label: Label::Symbol(s),
        guard: Constraint::True,
        store: vec![],
        to,
    };

    // L · $ · Γ*
    let lb = copy(&mut out, l, "L");
    out.initial.extend(l.initial.iter().map(|&i| lb + i));
    let tail = out.locations.len();
    out.locations.push("tail".into());
    out.finals.push(tail);
    for &f in &l.finals {
        out.rules.push(plain(lb + f, sep, tail));
    }
    for s in 0..m.alphabet.len() {
        out.rules.push(plain(tail, sym(m, s), tail));
    }

    // Σ* · $ · M
    let head = out.locations.len();
    out.locations.push("head".into());
    out.initial.push(head);
    for s in 0..l.alphabet.len() {
        out.rules.push(plain(head, sym(l, s), head));
    }
    let mb = copy(&mut out, m, "M");
    for &i in &m.initial {
        out.rules.push(plain(head, sep, mb + i));
    }
    out.finals.extend(m.finals.iter().map(|&f| mb + f));

    out.initial.sort_unstable();
    out.finals.sort_unstable();
    out
}
