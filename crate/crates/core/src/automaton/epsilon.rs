use std::collections::BTreeSet;

use super::det::type_formula;
use super::{Automaton, Label, Rule};
use crate::atoms::{satisfiable, Constraint, EqType, Var};

/// For every location `p` and register type `t`, the locations reachable
/// from `p` by ε-rules when the registers have type `t`.
///
/// ε-rules never touch registers, so the type is constant along the path
/// and a plain graph search per type suffices.
fn epsilon_reach(a: &Automaton, types: &[EqType]) -> Vec<Vec<BTreeSet<usize>>> {
    let k = a.registers;
    let n = a.locations.len();
    types
        .iter()
        .map(|t| {
            let enabled: Vec<&Rule> = a
                .rules
                .iter()
                .filter(|r| r.label == Label::Eps && r.guard.holds(&t.representative()[..k], None))
                .collect();
            (0..n)
                .map(|p| {
                    let mut seen = BTreeSet::from([p]);
                    let mut stack = vec![p];
                    while let Some(q) = stack.pop() {
                        for r in enabled.iter().filter(|r| r.from == q) {
                            if seen.insert(r.to) {
                                stack.push(r.to);
                            }
                        }
                    }
                    seen
                })
                .collect()
        })
        .collect()
}

/// Disjunction of the register types in `which`; `true` when all are present.
fn types_formula(types: &[EqType], which: &[usize], k: usize) -> Constraint {
    if which.len() == types.len() {
        return Constraint::True;
    }
    let vars: Vec<Var> = (0..k).map(Var::Reg).collect();
    Constraint::any(which.iter().map(|&i| type_formula(&types[i], &vars)))
}

/// An equivalent automaton without ε-rules.
///
/// Each new rule `p --σ--> r'` stands for an ε-path `p ~> q`, a letter rule
/// `q --σ--> r`, and an ε-path `r ~> r'`. Its guard constrains the register
/// type before the letter (for the first path) and after the store (for the
/// second path, with stored registers read as `y`). The initial set grows by
/// the locations ε-reachable from it with all registers ⊥.
pub fn eliminate_epsilon(a: &Automaton) -> Automaton {
    if !a.has_epsilon() {
        return a.clone();
    }
    let k = a.registers;
    let n = a.locations.len();
    let types = EqType::enumerate(k, false);
    let reach = epsilon_reach(a, &types);
    let types_where = |from: usize, to: usize| -> Vec<usize> {
        (0..types.len()).filter(|&t| reach[t][from].contains(&to)).collect()
    };
    let y_defined = Constraint::not_bot(Var::Input);
    let mut rules: Vec<Rule> = Vec::new();
    for rule in a.rules.iter().filter(|r| r.label != Label::Eps) {
        for p in 0..n {
            let pre_types = types_where(p, rule.from);
            if pre_types.is_empty() {
                continue;
            }
            let pre = types_formula(&types, &pre_types, k);
            for target in 0..n {
                let post_types = types_where(rule.to, target);
                if post_types.is_empty() {
                    continue;
                }
                let store = &rule.store;
                let post = types_formula(&types, &post_types, k).map_vars(&|v| match v {
                    Var::Reg(i) if store.contains(&i) => Var::Input,
                    v => v,
                });
                let guard = pre.clone().and(rule.guard.clone()).and(post);
                if !satisfiable(&guard.clone().and(y_defined.clone()), k) {
                    continue;
                }
                let new = Rule {
                    from: p,
                    label: rule.label,
                    guard,
                    store: rule.store.clone(),
                    to: target,
                };
                if !rules.contains(&new) {
                    rules.push(new);
                }
            }
        }
    }
    let all_bot = types
        .iter()
        .position(|t| t.classes().iter().all(Option::is_none))
        .expect("the all-⊥ type exists");
    let initial: BTreeSet<usize> = a.initial.iter().flat_map(|&p| reach[all_bot][p].iter().copied()).collect();
    Automaton {
        registers: k,
        alphabet: a.alphabet.clone(),
        locations: a.locations.clone(),
        initial: initial.into_iter().collect(),
        finals: a.finals.clone(),
        rules,
    }
}
