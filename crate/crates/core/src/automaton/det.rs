use super::{Automaton, Label, Rule};
use crate::atoms::{satisfiable, Constraint, EqType, Var};
use crate::error::Error;

/// The guard satisfied exactly by tuples of equality type `ty` over `vars`.
///
/// A defined variable is compared with the first earlier variable of its
/// class, or declared distinct from every earlier class. The input is never
/// ⊥, so `y != bot` is left implicit.
pub fn type_formula(ty: &EqType, vars: &[Var]) -> Constraint {
    let classes = ty.classes();
    assert_eq!(classes.len(), vars.len(), "type arity mismatch");
    let mut parts = Vec::new();
    for (i, (&c, &v)) in classes.iter().zip(vars).enumerate() {
        match c {
            None => parts.push(Constraint::is_bot(v)),
            Some(c) => {
                let earlier: Vec<(usize, u8)> = (0..i)
                    .filter_map(|j| classes[j].map(|cj| (j, cj)))
                    .filter(|&(j, cj)| classes[..j].iter().all(|&ck| ck != Some(cj)))
                    .collect();
                if let Some(&(j, _)) = earlier.iter().find(|&&(_, cj)| cj == c) {
                    parts.push(Constraint::eq(v, vars[j]));
                } else {
                    if v != Var::Input {
                        parts.push(Constraint::not_bot(v));
                    }
                    for &(j, _) in &earlier {
                        parts.push(Constraint::neq(v, vars[j]));
                    }
                }
            }
        }
    }
    Constraint::all(parts)
}

/// Registers `x1..xk` followed by `y`.
pub(crate) fn joint_vars(k: usize) -> Vec<Var> {
    (0..k).map(Var::Reg).chain([Var::Input]).collect()
}

/// One initial location, no ε-rules, and no two rules from the same
/// location on the same symbol that can fire together unless they agree on
/// store set and target.
pub fn is_deterministic(a: &Automaton) -> bool {
    if a.initial.len() != 1 || a.has_epsilon() {
        return false;
    }
    let y_defined = Constraint::not_bot(Var::Input);
    for (i, r1) in a.rules.iter().enumerate() {
        for r2 in &a.rules[i + 1..] {
            if r1.from != r2.from || r1.label != r2.label || (r1.store == r2.store && r1.to == r2.to) {
                continue;
            }
            let both = r1.guard.clone().and(r2.guard.clone()).and(y_defined.clone());
            if satisfiable(&both, a.registers) {
                return false;
            }
        }
    }
    true
}

/// Adds a rejecting sink so that every location has a rule for every symbol
/// and every register/input type. Leaves already total automata unchanged.
pub fn totalize(a: &Automaton) -> Result<Automaton, Error> {
    if !is_deterministic(a) {
        return Err(Error::Precondition("totalize needs a deterministic automaton".into()));
    }
    let k = a.registers;
    let types = EqType::enumerate(k + 1, true);
    let mut missing: Vec<(usize, usize, Constraint)> = Vec::new();
    for l in 0..a.locations.len() {
        for s in 0..a.alphabet.len() {
            let guards: Vec<&Constraint> = a.rules_on(l, s).map(|r| &r.guard).collect();
            let covered = types.iter().all(|t| guards.iter().any(|g| g.holds_on_type(t, k)));
            if !covered {
                let any = Constraint::any(guards.into_iter().cloned());
                missing.push((l, s, any.negate()));
            }
        }
    }
    if missing.is_empty() {
        return Ok(a.clone());
    }
    let mut out = a.clone();
    let sink = out.add_location("sink");
    for (l, s, guard) in missing {
        out.rules.push(Rule {
            from: l,
            label: Label::Symbol(s),
            guard,
            store: vec![],
            to: sink,
        });
    }
    for s in 0..a.alphabet.len() {
        out.rules.push(Rule {
            from: sink,
            label: Label::Symbol(s),
            guard: Constraint::True,
            store: vec![],
            to: sink,
        });
    }
    Ok(out)
}

/// Totalize, then swap final and non-final locations.
pub fn complement(a: &Automaton) -> Result<Automaton, Error> {
    let mut t = totalize(a)?;
    t.finals = (0..t.locations.len()).filter(|&l| !a.finals.contains(&l)).collect();
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{AutomatonDesc, TransitionDesc};

    fn one_reg(transitions: Vec<TransitionDesc>) -> Automaton {
        AutomatonDesc {
            registers: 1,
            alphabet: vec!["σ".into()],
            locations: vec!["p".into(), "q".into(), "r".into()],
            initial: vec!["p".into()],
            finals: vec!["q".into()],
            transitions,
        }
        .build()
        .unwrap()
    }

    #[test]
    fn disjoint_guards_are_deterministic() {
        let a = one_reg(vec![
            TransitionDesc::new("p", "σ", "y == x1", &[], "q"),
            TransitionDesc::new("p", "σ", "y != x1", &["x1"], "r"),
        ]);
        assert!(is_deterministic(&a));
        let b = one_reg(vec![
            TransitionDesc::new("p", "σ", "true", &[], "p"),
            TransitionDesc::new("p", "σ", "true", &["x1"], "q"),
        ]);
        assert!(!is_deterministic(&b));
    }

    #[test]
    fn totalize_ruleless_automaton() {
        let a = AutomatonDesc {
            registers: 0,
            alphabet: vec!["a".into(), "b".into()],
            locations: vec!["p".into()],
            initial: vec!["p".into()],
            finals: vec![],
            transitions: vec![],
        }
        .build()
        .unwrap();
        let t = totalize(&a).unwrap();
        assert_eq!(t.locations, vec!["p", "sink"]);
        assert_eq!(t.rules.len(), 4);
        assert!(t.rules.iter().all(|r| r.guard == Constraint::True));
        assert!(is_deterministic(&t));
        assert_eq!(totalize(&t).unwrap(), t);
    }

    #[test]
    fn type_formulas_print_minimally() {
        let vars = joint_vars(2);
        let t = EqType::of(&[Some(crate::atoms::Atom(0)), None, Some(crate::atoms::Atom(0))]);
        assert_eq!(type_formula(&t, &vars).to_string(), "x1 != bot && x2 == bot && y == x1");
        let t = EqType::of(&[Some(crate::atoms::Atom(0)), Some(crate::atoms::Atom(1)), Some(crate::atoms::Atom(2))]);
        assert_eq!(
            type_formula(&t, &vars).to_string(),
            "x1 != bot && x2 != bot && x2 != x1 && y != x1 && y != x2"
        );
        for t in EqType::enumerate(3, true) {
            let f = type_formula(&t, &vars);
            for u in EqType::enumerate(3, true) {
                assert_eq!(f.holds_on_type(&u, 2), t == u);
            }
        }
    }
}
