use proptest::prelude::*;

use ra_core::atoms::{
    apply_permutation, parse_constraint, register_extend, satisfiable, Atom, AtomOrBot, AtomPermutation, Constraint,
    Valuation, Var,
};
use ra_core::word::{canonical_word, DataWord, Letter};

fn atom_or_bot(max: u32) -> impl Strategy<Value = AtomOrBot> {
    prop_oneof![Just(None), (0..max).prop_map(|a| Some(Atom(a)))]
}

fn permutation() -> impl Strategy<Value = AtomPermutation> {
    Just((0u32..12).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|img| AtomPermutation::from_pairs((0..12).map(|i| (Atom(i), Atom(img[i as usize])))).unwrap())
}

fn constraint(k: usize) -> impl Strategy<Value = Constraint> {
    let var = prop_oneof![(0..k).prop_map(Var::Reg), Just(Var::Input)];
    let leaf = prop_oneof![
        Just(Constraint::True),
        Just(Constraint::False),
        (var.clone(), var.clone()).prop_map(|(a, b)| Constraint::Eq(a, b)),
        (0..k).prop_map(|i| Constraint::IsBot(Var::Reg(i))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|c| Constraint::Not(Box::new(c))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Constraint::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Constraint::Or(Box::new(a), Box::new(b))),
        ]
    })
}

fn word() -> impl Strategy<Value = DataWord> {
    prop::collection::vec((prop::sample::select(vec!["a", "b"]), 0u32..12), 0..8)
        .prop_map(|v| DataWord(v.into_iter().map(|(s, a)| Letter::new(s, a)).collect()))
}

#[test]
fn parsing_and_evaluation() {
    assert_eq!(parse_constraint("y == x1", 1).unwrap(), Constraint::Eq(Var::Input, Var::Reg(0)));
    assert_eq!(
        parse_constraint("x1 == bot && y != x1", 1).unwrap(),
        Constraint::And(
            Box::new(Constraint::IsBot(Var::Reg(0))),
            Box::new(Constraint::Not(Box::new(Constraint::Eq(Var::Input, Var::Reg(0)))))
        )
    );
    assert!(parse_constraint("y == x2", 1).is_err());
    let c = parse_constraint("y==x1", 1).unwrap();
    assert!(c.holds(&[Some(Atom(5))], Some(Atom(5))));
    assert!(parse_constraint("x1==bot", 1).unwrap().holds(&[None], None));
    assert!(!parse_constraint("y==x1 && y!=x1", 1).unwrap().holds(&[Some(Atom(5))], Some(Atom(5))));
    assert!(!satisfiable(&parse_constraint("y==x1 && y!=x1", 1).unwrap(), 1));
    assert!(satisfiable(&parse_constraint("y!=x1 && y!=x2 && x1!=x2", 2).unwrap(), 2));
    assert!(!satisfiable(&parse_constraint("y==x1 && y==x2 && x1!=x2", 2).unwrap(), 2));
}

#[test]
fn permutation_and_extension_examples() {
    let pi = AtomPermutation::swap(Atom(5), Atom(9));
    let w = DataWord::from_pairs([("a", 5), ("b", 7)]);
    assert_eq!(apply_permutation(&pi, &w), DataWord::from_pairs([("a", 9), ("b", 7)]));
    assert_eq!(apply_permutation(&AtomPermutation::identity(), &w), w);
    let v = Valuation::new(vec![Some(Atom(1)), None]);
    let pi = AtomPermutation::swap(Atom(1), Atom(2));
    assert_eq!(apply_permutation(&pi, &v), Valuation::new(vec![Some(Atom(2)), None]));

    let mu = Valuation::new(vec![None, Some(Atom(9))]);
    assert_eq!(register_extend(&[0], Atom(4), &mu), Valuation::new(vec![Some(Atom(4)), Some(Atom(9))]));
    assert_eq!(register_extend(&[], Atom(4), &mu), mu);
    let mu = Valuation::new(vec![Some(Atom(1)), Some(Atom(2))]);
    assert_eq!(register_extend(&[0, 1], Atom(4), &mu), Valuation::new(vec![Some(Atom(4)), Some(Atom(4))]));
}

#[test]
fn canonical_word_examples() {
    let w = DataWord::from_pairs([("a", 7), ("a", 7), ("a", 3)]);
    assert_eq!(canonical_word(&w), DataWord::from_pairs([("a", 0), ("a", 0), ("a", 1)]));
    assert_eq!(canonical_word(&DataWord::empty()), DataWord::empty());
    let c = DataWord::from_pairs([("a", 0), ("a", 1)]);
    assert_eq!(canonical_word(&c), c);
}

proptest! {
    #[test]
    fn evaluation_is_invariant(c in constraint(3), regs in prop::collection::vec(atom_or_bot(5), 3), y in 0u32..5, pi in permutation()) {
        let moved: Vec<AtomOrBot> = regs.iter().map(|r| r.map(|a| pi.apply(a))).collect();
        prop_assert_eq!(c.holds(&regs, Some(Atom(y))), c.holds(&moved, Some(pi.apply(Atom(y)))));
    }

    #[test]
    fn satisfiability_matches_brute_force(c in constraint(2)) {
        // k + 1 distinct atoms realise every equality type of k registers
        // and y; y ranges over ⊥ too, as for register-only guards.
        let vals: Vec<AtomOrBot> = (0..3).map(|a| Some(Atom(a))).chain([None]).collect();
        let mut found = false;
        for &x1 in &vals {
            for &x2 in &vals {
                for &y in &vals {
                    found |= c.holds(&[x1, x2], y);
                }
            }
        }
        prop_assert_eq!(satisfiable(&c, 2), found);
    }

    #[test]
    fn printed_guards_parse_back(c in constraint(2)) {
        let text = c.to_string();
        let back = parse_constraint(&text, 2).unwrap();
        for x1 in [None, Some(Atom(0)), Some(Atom(1))] {
            for x2 in [None, Some(Atom(0)), Some(Atom(2))] {
                for y in 0..3 {
                    prop_assert_eq!(c.holds(&[x1, x2], Some(Atom(y))), back.holds(&[x1, x2], Some(Atom(y))));
                }
            }
        }
    }

    #[test]
    fn canonical_words_name_orbits(w in word(), pi in permutation()) {
        let c = canonical_word(&w);
        prop_assert_eq!(canonical_word(&c), c.clone());
        prop_assert_eq!(canonical_word(&apply_permutation(&pi, &w)), c);
    }

    #[test]
    fn inverse_undoes(w in word(), pi in permutation(), rho in permutation()) {
        prop_assert_eq!(apply_permutation(&pi.inverse(), &apply_permutation(&pi, &w)), w.clone());
        let both = apply_permutation(&pi.compose(&rho), &w);
        let one = apply_permutation(&pi, &apply_permutation(&rho, &w));
        prop_assert_eq!(both, one);
    }
}
