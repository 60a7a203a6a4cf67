//! End-to-end acceptance checks, one line of output per criterion.
//!
//! Runs without the libtest harness so the summary is always printed;
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ra_core::atoms::{apply_permutation, Atom, AtomPermutation, SupportSet};
use ra_core::automaton::{
    accepts, complement, eliminate_epsilon, initial_configurations, is_deterministic, run_from,
    totalize,
};
use ra_core::determinize::{dra_k_membership, f_bound, MembershipOptions, MembershipReport, Verification};
use ra_core::generators::{
    decode_encoding, encode_run, example_last_atom_repeats, first_equals_last_nra, inject_epsilon,
    lcm_bad_encoding_automaton, lcm_counting, lcm_step, lcm_zero_loop, random_dra, random_nra, random_run,
    LcmConfig, COUNTERS,
};
use ra_core::inclusion::{equivalent, includes};
use ra_core::oracle::{bounded_invariance, compare_bounded, enumerate_words, Comparison, WordBound};
use ra_core::verdict::{Verdict, DEFAULT_BUDGET};
use ra_core::word::{DataWord, Letter};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

/// Determinizer reports collected for the bound check.
#[derive(Default)]
struct Reports(Vec<(String, MembershipReport)>);

fn f_bound_values() -> Outcome {
    let got = [f_bound(1, 3), f_bound(0, 1), f_bound(2, 2)];
    let want = [128u32, 2, 384].map(BigUint::from);
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("f(1,3)=128, f(0,1)=2, f(2,2)=384".into())
}

fn subsets_up_to(atoms: &[Atom], k: usize) -> Vec<SupportSet> {
    let mut out = vec![SupportSet::new()];
    for &a in atoms {
        let more: Vec<SupportSet> = out.iter().filter(|s| s.len() < k).map(|s| s.iter().copied().chain([a]).collect()).collect();
        out.extend(more);
    }
    out
}

fn last_atom_repeats_end_to_end(reports: &mut Reports) -> Outcome {
    let a = example_last_atom_repeats();
    let mut lines = Vec::new();
    for k in 0..=2 {
        let start = Instant::now();
        let (v, report) = dra_k_membership(&a, MembershipOptions::new(k)).map_err(|e| e.to_string())?;
        within(Duration::from_secs(120), start)?;
        let Verdict::Fails(w) = v else { return Err(format!("k={k}: expected NO")) };
        // No set of at most k atoms of the word supports the quotient.
        let x = run_from(&a, &initial_configurations(&a), &w).map_err(|e| e.to_string())?;
        let bound = WordBound::new(4, &a.alphabet);
        for s in subsets_up_to(&w.atoms(), k) {
            ensure(!bounded_invariance(&a, &x, &s, &bound), || format!("k={k}: {s:?} supports the quotient of {w}"))?;
        }
        lines.push(format!("k={k} NO ({w})"));
        reports.0.push((format!("last-atom-repeats k={k}"), report));
    }
    Ok(lines.join(", "))
}

fn first_equals_last_end_to_end(reports: &mut Reports) -> Outcome {
    let start = Instant::now();
    let a = first_equals_last_nra();
    let opts = MembershipOptions {
        verify: true,
        ..MembershipOptions::new(1)
    };
    let (v, report) = dra_k_membership(&a, opts).map_err(|e| e.to_string())?;
    let Verdict::Holds(d) = v else { return Err("expected YES".into()) };
    let n = eliminate_epsilon(&a).locations.len();
    ensure(BigUint::from(d.locations.len()) <= f_bound(1, n), || format!("{} locations", d.locations.len()))?;
    ensure(is_deterministic(&d), || "extracted automaton is not deterministic".into())?;
    ensure(report.verification == Verification::Equivalent, || "verification did not run".into())?;
    ensure(equivalent(&d, &a, DEFAULT_BUDGET).map_err(|e| e.to_string())?.holds(), || "equiv failed".into())?;
    ensure(compare_bounded(&d, &a, &WordBound::for_pair(6, &d, &a)) == Comparison::Equal, || "oracle differs".into())?;
    within(Duration::from_secs(120), start)?;
    let msg = format!("YES with {} locations (f(1,{n}) = {})", d.locations.len(), f_bound(1, n));
    reports.0.push(("first-equals-last k=1".into(), report));
    Ok(msg)
}

fn epsilon_elimination() -> Outcome {
    let start = Instant::now();
    for seed in 0..200u64 {
        let locs = 1 + (seed % 4) as usize;
        let base = random_nra(locs, 1, 2, 0.3, seed);
        let a = inject_epsilon(&base, 1 + (seed % 4) as usize, seed);
        let e = eliminate_epsilon(&a);
        ensure(!e.has_epsilon(), || format!("seed {seed}: ε-rules left"))?;
        let cmp = compare_bounded(&a, &e, &WordBound::for_pair(5, &a, &e));
        ensure(cmp == Comparison::Equal, || format!("seed {seed}: {cmp:?}"))?;
    }
    within(Duration::from_secs(600), start)?;
    Ok("200 automata, words ≤ 5".into())
}

fn inclusion_vs_oracle() -> Outcome {
    let start = Instant::now();
    let (mut holds, mut fails) = (0, 0);
    for seed in 0..200u64 {
        let a = random_nra(1 + (seed % 4) as usize, (seed % 3) as usize, 1 + (seed % 2) as usize, 0.3, seed);
        let b = random_nra(1 + (seed % 3) as usize, 1, a.alphabet.len(), 0.4, 5000 + seed);
        match includes(&a, &b, DEFAULT_BUDGET).map_err(|e| e.to_string())? {
            Verdict::Holds(()) => {
                holds += 1;
                let bound = WordBound::for_pair(5, &a, &b);
                let bad = enumerate_words(&bound).find(|w| accepts(&a, w).unwrap() && !accepts(&b, w).unwrap());
                ensure(bad.is_none(), || format!("seed {seed}: Holds but {bad:?} separates"))?;
            }
            Verdict::Fails(w) => {
                fails += 1;
                let ok = accepts(&a, &w).unwrap() && !accepts(&b, &w).unwrap();
                ensure(ok, || format!("seed {seed}: witness {w} does not separate"))?;
            }
            Verdict::BudgetExhausted(s) => return Err(format!("seed {seed}: budget exhausted {s:?}")),
        }
    }
    within(Duration::from_secs(900), start)?;
    Ok(format!("200 pairs ({holds} included, {fails} not), no disagreement"))
}

fn invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for i in 0..1000u64 {
        let k = rng.gen_range(0..=2);
        let a = inject_epsilon(&random_nra(rng.gen_range(1..=4), k, 2, 0.3, i), rng.gen_range(0..3), i);
        let len = rng.gen_range(0..=6);
        let w = DataWord(
            (0..len)
                .map(|_| Letter::new(a.alphabet[rng.gen_range(0..2)].clone(), rng.gen_range(0..5)))
                .collect(),
        );
        let mut img: Vec<u32> = (0..8).collect();
        for j in (1..img.len()).rev() {
            img.swap(j, rng.gen_range(0..=j));
        }
        let pi = AtomPermutation::from_pairs((0..8).map(|j| (Atom(j), Atom(img[j as usize])))).map_err(|e| e.to_string())?;
        let pw = apply_permutation(&pi, &w);
        let (x, y) = (accepts(&a, &w).unwrap(), accepts(&a, &pw).unwrap());
        ensure(x == y, || format!("triple {i}: {w} vs {pw}"))?;
    }
    Ok("1000 triples".into())
}

fn complement_laws() -> Outcome {
    let mut words = 0;
    for seed in 0..50u64 {
        let d = random_dra(1 + (seed % 4) as usize, (seed % 3) as usize, 2, seed);
        let c = complement(&d).map_err(|e| e.to_string())?;
        let cc = complement(&c).map_err(|e| e.to_string())?;
        let t = totalize(&d).map_err(|e| e.to_string())?;
        for w in enumerate_words(&WordBound::new(5, &d.alphabet)) {
            let x = accepts(&d, &w).unwrap();
            let (y, z) = (accepts(&c, &w).unwrap(), accepts(&cc, &w).unwrap());
            ensure(x != y && x == z && x == accepts(&t, &w).unwrap(), || format!("seed {seed}: {w}"))?;
            words += 1;
        }
    }
    Ok(format!("50 automata, {words} words"))
}

/// Single edits of the letter sequence of a correct encoding.
fn break_projection(w: &DataWord, i: usize) -> DataWord {
    let mut letters = w.letters().to_vec();
    let n = letters.len();
    match i % 4 {
        0 => {
            letters.remove((i * 7) % n);
        }
        1 if n > 1 => {
            let p = (i * 3) % (n - 1);
            letters.swap(p, p + 1);
        }
        2 => {
            let p = (i * 5) % (n + 1);
            letters.insert(p, Letter::new(COUNTERS[i % 4], 1));
        }
        _ => {
            let p = (i * 11) % n;
            letters.insert(p, letters[p].clone());
        }
    }
    DataWord(letters)
}

/// Gives one counter letter the atom of another in the same block.
fn duplicate_block_atom(w: &DataWord) -> Option<DataWord> {
    let letters = w.letters();
    let is_counter = |i: usize| COUNTERS.contains(&letters[i].symbol.as_str());
    let i = (0..letters.len().saturating_sub(1)).find(|&i| is_counter(i) && is_counter(i + 1))?;
    let mut out = letters.to_vec();
    out[i + 1].atom = out[i].atom;
    Some(DataWord(out))
}

fn lcm_round_trip() -> Outcome {
    let start = Instant::now();
    let m0 = lcm_zero_loop();
    let a0 = lcm_bad_encoding_automaton(&m0);
    for n in 0..50 {
        // The only run of length n loops through the zero test.
        let mut run = Vec::new();
        let mut cur = LcmConfig::initial(&m0);
        for _ in 0..n {
            let (i, next) = lcm_step(&m0, &cur)[0];
            run.push((i, next));
            cur = next;
        }
        let w = encode_run(&m0, &run).map_err(|e| e.to_string())?;
        ensure(!accepts(&a0, &w).unwrap(), || format!("valid encoding {w} accepted"))?;
        let bad = break_projection(&w, n);
        ensure(decode_encoding(&m0, &bad).is_err(), || format!("mutation {bad} is still valid"))?;
        ensure(accepts(&a0, &bad).unwrap(), || format!("corruption {bad} rejected"))?;
    }
    // Encodings of the zero-test loop have no counter letters, so repeated
    // block atoms are exercised on a machine using all counters.
    let m = lcm_counting();
    let a = lcm_bad_encoding_automaton(&m);
    let mut duplicated = 0;
    let mut seed = 0;
    while duplicated < 50 {
        let w = encode_run(&m, &random_run(&m, 15, seed)).map_err(|e| e.to_string())?;
        seed += 1;
        ensure(!accepts(&a, &w).unwrap(), || format!("valid encoding {w} accepted"))?;
        if let Some(bad) = duplicate_block_atom(&w) {
            ensure(decode_encoding(&m, &bad).is_err(), || format!("mutation {bad} is still valid"))?;
            ensure(accepts(&a, &bad).unwrap(), || format!("duplicated atom in {bad} not caught"))?;
            duplicated += 1;
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!(
        "zero-test loop: 50 encodings rejected, 50 broken projections accepted; all-counter machine: {seed} encodings rejected, 50 duplicated atoms accepted"
    ))
}

fn bound_conformance(reports: &Reports) -> Outcome {
    ensure(!reports.0.is_empty(), || "no determinizer runs recorded".into())?;
    let mut parts = Vec::new();
    for (name, r) in &reports.0 {
        ensure(r.within_f_bound, || format!("{name}: {} orbits > f = {}", r.explored_orbits, r.f_bound))?;
        parts.push(format!("{name}: {} ≤ {}", r.explored_orbits, r.f_bound));
    }
    Ok(parts.join(", "))
}

fn main() -> ExitCode {
    let mut reports = Reports::default();
    let criteria: Vec<(&str, Box<dyn FnOnce(&mut Reports) -> Outcome>)> = vec![
        ("bound formula", Box::new(|_| f_bound_values())),
        ("last-atom-repeats is not DRA-k, k ≤ 2", Box::new(last_atom_repeats_end_to_end)),
        ("first-equals-last determinizes with one register", Box::new(first_equals_last_end_to_end)),
        ("ε-elimination preserves languages", Box::new(|_| epsilon_elimination())),
        ("inclusion agrees with the oracle", Box::new(|_| inclusion_vs_oracle())),
        ("acceptance is invariant under permutations", Box::new(|_| invariance())),
        ("complement and totalization laws", Box::new(|_| complement_laws())),
        ("counter-machine encodings round-trip", Box::new(|_| lcm_round_trip())),
        ("explored orbits within the bound", Box::new(|r: &mut Reports| bound_conformance(r))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check(&mut reports);
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} [{t:.2?}] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{t:.2?}] {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
