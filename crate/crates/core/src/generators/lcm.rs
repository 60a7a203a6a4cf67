//! Lossy counter machines with four counters, and data-word encodings of
//! their runs.
//!
//! A run `(p0,u0) → (p1,u1) → … → (pn,un)` is written last configuration
//! first: `pn δn enc(un) … p1 δ1 enc(u1) p0`, where `enc(u)` lists `u(c1)`
//! letters `c1`, then `u(c2)` letters `c2`, and so on. Atoms link each
//! counter letter to the letter it continues in the next block of the word.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::atoms::{Atom, Constraint, Var};
use crate::automaton::{Automaton, Label, Rule};
use crate::error::Error;
use crate::word::{DataWord, Letter};

pub const COUNTERS: [&str; 4] = ["c1", "c2", "c3", "c4"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CounterOp {
    Inc,
    Dec,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Instruction {
    pub from: usize,
    pub op: CounterOp,
    /// Index into [`COUNTERS`].
    pub counter: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lcm {
    pub locations: Vec<String>,
    pub initial: usize,
    pub instructions: Vec<Instruction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstructionDesc {
    pub from: String,
    pub op: CounterOp,
    pub counter: String,
    pub to: String,
}

/// JSON form of a machine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LcmDesc {
    pub locations: Vec<String>,
    pub initial: String,
    pub instructions: Vec<InstructionDesc>,
}

/// Symbol naming the instruction with the given index.
pub fn instruction_symbol(i: usize) -> String {
    format!("δ{i}")
}

impl LcmDesc {
    pub fn build(&self) -> Result<Lcm, Error> {
        let loc = |name: &str| {
            self.locations
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Error::InvalidMachine(format!("unknown location `{name}`")))
        };
        let mut seen = BTreeSet::new();
        for l in &self.locations {
            if !seen.insert(l) {
                return Err(Error::InvalidMachine(format!("duplicate location `{l}`")));
            }
            if COUNTERS.contains(&l.as_str()) || l.starts_with('δ') || l.is_empty() {
                return Err(Error::InvalidMachine(format!("location name `{l}` is reserved")));
            }
        }
        let instructions = self
            .instructions
            .iter()
            .map(|d| {
                Ok(Instruction {
                    from: loc(&d.from)?,
                    op: d.op,
                    counter: COUNTERS
                        .iter()
                        .position(|c| *c == d.counter)
                        .ok_or_else(|| Error::InvalidMachine(format!("unknown counter `{}`", d.counter)))?,
                    to: loc(&d.to)?,
                })
            })
            .collect::<Result<_, Error>>()?;
        Ok(Lcm {
            locations: self.locations.clone(),
            initial: loc(&self.initial)?,
            instructions,
        })
    }
}

impl Lcm {
    pub fn from_json(text: &str) -> Result<Lcm, Error> {
        serde_json::from_str::<LcmDesc>(text)?.build()
    }

    pub fn to_desc(&self) -> LcmDesc {
        LcmDesc {
            locations: self.locations.clone(),
            initial: self.locations[self.initial].clone(),
            instructions: self
                .instructions
                .iter()
                .map(|i| InstructionDesc {
                    from: self.locations[i.from].clone(),
                    op: i.op,
                    counter: COUNTERS[i.counter].to_string(),
                    to: self.locations[i.to].clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_desc()).expect("machine serialises")
    }

    /// Alphabet of encodings: locations, then instructions, then counters.
    pub fn encoding_alphabet(&self) -> Vec<String> {
        let mut out = self.locations.clone();
        out.extend((0..self.instructions.len()).map(instruction_symbol));
        out.extend(COUNTERS.iter().map(|c| c.to_string()));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LcmConfig {
    pub location: usize,
    pub counters: [u64; 4],
}

impl LcmConfig {
    pub fn new(location: usize, counters: [u64; 4]) -> Self {
        LcmConfig { location, counters }
    }

    pub fn initial(m: &Lcm) -> Self {
        LcmConfig::new(m.initial, [0; 4])
    }

    /// Same location and pointwise smaller or equal counters.
    pub fn below(&self, other: &LcmConfig) -> bool {
        self.location == other.location && self.counters.iter().zip(&other.counters).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for LcmConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.counters;
        write!(f, "(l{}, {a},{b},{c},{d})", self.location)
    }
}

fn apply(ins: &Instruction, u: &[u64; 4]) -> Option<[u64; 4]> {
    let mut v = *u;
    let c = &mut v[ins.counter];
    match ins.op {
        CounterOp::Inc => *c += 1,
        CounterOp::Dec => *c = c.checked_sub(1)?,
        CounterOp::Zero if *c != 0 => return None,
        CounterOp::Zero => {}
    }
    Some(v)
}

/// Successors without loss, one per applicable instruction, tagged with the
/// instruction index.
pub fn lcm_step(m: &Lcm, c: &LcmConfig) -> Vec<(usize, LcmConfig)> {
    m.instructions
        .iter()
        .enumerate()
        .filter(|(_, ins)| ins.from == c.location)
        .filter_map(|(i, ins)| apply(ins, &c.counters).map(|v| (i, LcmConfig::new(ins.to, v))))
        .collect()
}

/// Can the machine move from `c` to `d` by one instruction, counting losses?
pub fn lossy_successor(m: &Lcm, c: &LcmConfig, d: &LcmConfig) -> bool {
    lcm_step(m, c).iter().any(|(_, s)| d.below(s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reach {
    Finite(BTreeSet<LcmConfig>),
    ExceededBudget,
}

/// Configurations reached without loss, except that a zero test may be
/// taken after the tested counter has been lost entirely. Every reachable
/// configuration lies below one of these, so a finite result means the
/// reachability set is finite. More than `limit` configurations gives up.
pub fn lcm_reach_bounded(m: &Lcm, limit: usize) -> Reach {
    let start = LcmConfig::initial(m);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for ins in m.instructions.iter().filter(|i| i.from == c.location) {
            let mut u = c.counters;
            if ins.op == CounterOp::Zero {
                u[ins.counter] = 0;
            }
            if let Some(v) = apply(ins, &u) {
                let d = LcmConfig::new(ins.to, v);
                if seen.insert(d) {
                    if seen.len() > limit {
                        return Reach::ExceededBudget;
                    }
                    queue.push_back(d);
                }
            }
        }
    }
    Reach::Finite(seen)
}

/// Checks that `run` (instruction, configuration after it) is a lossy run
/// from the initial configuration.
pub fn validate_run(m: &Lcm, run: &[(usize, LcmConfig)]) -> Result<(), Error> {
    let mut cur = LcmConfig::initial(m);
    for (n, &(i, next)) in run.iter().enumerate() {
        let ins = m
            .instructions
            .get(i)
            .ok_or_else(|| Error::InvalidRun(format!("step {n}: no instruction {i}")))?;
        let ok = ins.from == cur.location && apply(ins, &cur.counters).is_some_and(|v| next.below(&LcmConfig::new(ins.to, v)));
        if !ok {
            return Err(Error::InvalidRun(format!("step {n}: {} cannot reach {next}", instruction_symbol(i))));
        }
        cur = next;
    }
    Ok(())
}

/// A random run of `steps` steps at most, losing a counter unit now and then.
pub fn random_run(m: &Lcm, steps: usize, seed: u64) -> Vec<(usize, LcmConfig)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = LcmConfig::initial(m);
    let mut run = Vec::new();
    for _ in 0..steps {
        let succ = lcm_step(m, &cur);
        if succ.is_empty() {
            break;
        }
        let (i, mut next) = succ[rng.gen_range(0..succ.len())];
        if rng.gen_bool(0.15) {
            let c = rng.gen_range(0..4);
            next.counters[c] = next.counters[c].saturating_sub(1);
        }
        run.push((i, next));
        cur = next;
    }
    run
}

/// The encoding of a run with canonical atoms: location and instruction
/// letters carry atom 0, counter letters atoms from 1 on. Counter letters
/// reuse the atoms of the previous configuration's block in order; the
/// last letter after an increment gets a new atom.
pub fn encode_run(m: &Lcm, run: &[(usize, LcmConfig)]) -> Result<DataWord, Error> {
    validate_run(m, run)?;
    let mut next_atom = 1u32;
    let mut prev: [Vec<u32>; 4] = Default::default();
    let mut blocks: Vec<[Vec<u32>; 4]> = Vec::new();
    for &(i, cfg) in run {
        let ins = m.instructions[i];
        let mut cur: [Vec<u32>; 4] = Default::default();
        for j in 0..4 {
            let n = cfg.counters[j] as usize;
            if ins.op == CounterOp::Inc && ins.counter == j && n > 0 {
                cur[j] = prev[j][..n - 1].to_vec();
                cur[j].push(next_atom);
                next_atom += 1;
            } else {
                cur[j] = prev[j][..n].to_vec();
            }
        }
        blocks.push(cur.clone());
        prev = cur;
    }
    let mut w = DataWord::empty();
    for (step, block) in run.iter().zip(&blocks).rev() {
        w.push(Letter::new(&m.locations[step.1.location], 0));
        w.push(Letter::new(instruction_symbol(step.0), 0));
        for (j, atoms) in block.iter().enumerate() {
            for &a in atoms {
                w.push(Letter::new(COUNTERS[j], a));
            }
        }
    }
    w.push(Letter::new(&m.locations[m.initial], 0));
    Ok(w)
}

enum Sym {
    Loc(usize),
    Ins(usize),
    Counter(usize),
}

fn classify(m: &Lcm, s: &str) -> Option<Sym> {
    if let Some(j) = COUNTERS.iter().position(|c| *c == s) {
        return Some(Sym::Counter(j));
    }
    if let Some(p) = m.locations.iter().position(|l| l == s) {
        return Some(Sym::Loc(p));
    }
    (0..m.instructions.len())
        .find(|&i| instruction_symbol(i) == s)
        .map(Sym::Ins)
}

/// Reads a data word back as a run of `m`, checking every condition of a
/// correct encoding directly. `Err` names the first violation found.
pub fn decode_encoding(m: &Lcm, w: &DataWord) -> Result<Vec<(usize, LcmConfig)>, String> {
    // Segments in word order: (location, instruction, block).
    let mut segments: Vec<(usize, usize, Vec<(usize, Atom)>)> = Vec::new();
    let letters = w.letters();
    let mut pos = 0;
    let last_loc = loop {
        let Some(l) = letters.get(pos) else { return Err("word does not end with a location".into()) };
        let Some(Sym::Loc(p)) = classify(m, &l.symbol) else {
            return Err(format!("position {pos}: expected a location"));
        };
        pos += 1;
        let Some(l) = letters.get(pos) else { break p };
        let Some(Sym::Ins(i)) = classify(m, &l.symbol) else {
            return Err(format!("position {pos}: expected an instruction"));
        };
        pos += 1;
        let mut block = Vec::new();
        while let Some(Sym::Counter(j)) = letters.get(pos).and_then(|l| classify(m, &l.symbol)) {
            if block.last().is_some_and(|&(k, _)| k > j) {
                return Err(format!("position {pos}: counters out of order"));
            }
            block.push((j, letters[pos].atom));
            pos += 1;
        }
        segments.push((p, i, block));
    };
    if last_loc != m.initial {
        return Err("the run does not start in the initial location".into());
    }
    segments.reverse();
    let mut prev_loc = m.initial;
    let mut prev: Vec<(usize, Atom)> = Vec::new();
    let mut run = Vec::new();
    for (n, (p, i, block)) in segments.into_iter().enumerate() {
        let ins = m.instructions[i];
        if ins.from != prev_loc || ins.to != p {
            return Err(format!("step {n}: {} does not lead from {} to {}", instruction_symbol(i), m.locations[prev_loc], m.locations[p]));
        }
        let atoms: BTreeSet<Atom> = block.iter().map(|&(_, a)| a).collect();
        if atoms.len() != block.len() {
            return Err(format!("step {n}: repeated atom in a block"));
        }
        let mut counters = [0u64; 4];
        for j in 0..4 {
            let cur: Vec<Atom> = block.iter().filter(|&&(k, _)| k == j).map(|&(_, a)| a).collect();
            let before: Vec<Atom> = prev.iter().filter(|&&(k, _)| k == j).map(|&(_, a)| a).collect();
            counters[j] = cur.len() as u64;
            let matched = |xs: &[Atom], pool: &[Atom]| xs.iter().all(|a| pool.contains(a));
            let ok = match (ins.op, ins.counter == j) {
                (CounterOp::Inc, true) => cur.is_empty() || matched(&cur[..cur.len() - 1], &before),
                (CounterOp::Dec, true) => !before.is_empty() && matched(&cur, &before[..before.len() - 1]),
                (CounterOp::Zero, true) => cur.is_empty() && before.is_empty(),
                _ => matched(&cur, &before),
            };
            if !ok {
                return Err(format!("step {n}: counter {} is not carried over correctly", COUNTERS[j]));
            }
        }
        run.push((i, LcmConfig::new(p, counters)));
        prev = block;
        prev_loc = p;
    }
    Ok(run)
}

/// Incrementally assembled automaton over the encoding alphabet.
struct Builder<'a> {
    m: &'a Lcm,
    a: Automaton,
}

impl<'a> Builder<'a> {
    fn loc(&mut self, name: String) -> usize {
        self.a.locations.push(name);
        self.a.locations.len() - 1
    }

    fn rule(&mut self, from: usize, s: usize, guard: Constraint, store: bool, to: usize) {
        self.a.rules.push(Rule {
            from,
            label: Label::Symbol(s),
            guard,
            store: if store { vec![0] } else { vec![] },
            to,
        });
    }

    fn loc_symbols(&self) -> std::ops::Range<usize> {
        0..self.m.locations.len()
    }

    fn ins_symbol(&self, i: usize) -> usize {
        self.m.locations.len() + i
    }

    fn ins_symbols(&self) -> std::ops::Range<usize> {
        self.m.locations.len()..self.m.locations.len() + self.m.instructions.len()
    }

    fn counter_symbol(&self, j: usize) -> usize {
        self.m.locations.len() + self.m.instructions.len() + j
    }

    fn on_all(&mut self, from: usize, to: usize) {
        for s in 0..self.a.alphabet.len() {
            self.rule(from, s, Constraint::True, false, to);
        }
    }

    fn on_locations(&mut self, from: usize, to: usize) {
        for s in self.loc_symbols() {
            self.rule(from, s, Constraint::True, false, to);
        }
    }

    fn on_instructions(&mut self, from: usize, to: usize) {
        for s in self.ins_symbols() {
            self.rule(from, s, Constraint::True, false, to);
        }
    }

    /// Counter letters; `special` gets its own guard, or no rule if `None`.
    fn on_counters(&mut self, from: usize, to: usize, special: usize, guard: Option<Constraint>) {
        for j in 0..4 {
            let g = if j == special { guard.clone() } else { Some(Constraint::True) };
            if let Some(g) = g {
                let s = self.counter_symbol(j);
                self.rule(from, s, g, false, to);
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Shape {
    Start,
    /// Just read a location; `need` is a counter the coming block must hold.
    Loc { p: usize, need: Option<usize> },
    /// Inside a block.
    Block { next: usize, next_need: Option<usize>, need: Option<usize>, stage: usize, met: bool },
    Dead,
}

/// Deterministic recogniser of well-formed finite parts: the shape of the
/// word, matching instruction endpoints, and a decremented counter being
/// non-zero beforehand. Its rejecting states, the dead one included, are
/// final: the fragment accepts malformed words.
fn shape_checker(b: &mut Builder<'_>) {
    let m = b.m;
    let mut index: HashMap<Shape, usize> = HashMap::new();
    let mut order = vec![Shape::Start];
    index.insert(Shape::Start, b.loc("f1.0".into()));
    b.a.initial.push(index[&Shape::Start]);
    let mut k = 0;
    while k < order.len() {
        let st = order[k];
        k += 1;
        let accepting = matches!(st, Shape::Loc { p, need: None } if p == m.initial);
        if !accepting {
            b.a.finals.push(index[&st]);
        }
        for s in 0..b.a.alphabet.len() {
            let next = match (st, classify(m, &b.a.alphabet[s])) {
                (Shape::Start, Some(Sym::Loc(p))) => Shape::Loc { p, need: None },
                (Shape::Loc { p, need }, Some(Sym::Ins(i))) if m.instructions[i].to == p => {
                    let ins = m.instructions[i];
                    Shape::Block {
                        next: ins.from,
                        next_need: (ins.op == CounterOp::Dec).then_some(ins.counter),
                        need,
                        stage: 0,
                        met: need.is_none(),
                    }
                }
                (Shape::Block { next, next_need, need, stage, met }, Some(Sym::Counter(j))) if j >= stage => {
                    Shape::Block {
                        next,
                        next_need,
                        need,
                        stage: j,
                        met: met || need == Some(j),
                    }
                }
                (Shape::Block { next, next_need, met: true, .. }, Some(Sym::Loc(p))) if p == next => {
                    Shape::Loc { p, need: next_need }
                }
                _ => Shape::Dead,
            };
            let to = match index.get(&next) {
                Some(&t) => t,
                None => {
                    let t = b.loc(format!("f1.{}", order.len()));
                    index.insert(next, t);
                    order.push(next);
                    t
                }
            };
            b.rule(index[&st], s, Constraint::True, false, to);
        }
    }
}

/// Some block repeats an atom.
fn repeated_atom(b: &mut Builder<'_>) {
    let scan = b.loc("f2.scan".into());
    let stored = b.loc("f2.stored".into());
    let found = b.loc("f2.found".into());
    b.a.initial.push(scan);
    b.a.finals.push(found);
    b.on_all(scan, scan);
    b.on_all(found, found);
    let eq = Constraint::eq(Var::Input, Var::Reg(0));
    for j in 0..4 {
        let c = b.counter_symbol(j);
        b.rule(scan, c, Constraint::True, true, stored);
        b.rule(stored, c, eq.clone().negate(), false, stored);
        b.rule(stored, c, eq.clone(), false, found);
    }
}

/// The step taken by instruction `i` mishandles counter `j`.
fn bad_step(b: &mut Builder<'_>, i: usize, j: usize) {
    let ins = b.m.instructions[i];
    let name = |s: &str| format!("f3.{i}.{j}.{s}");
    let pre = b.loc(name("pre"));
    let cur = b.loc(name("cur"));
    let done = b.loc(name("bad"));
    b.a.initial.push(pre);
    b.a.finals.push(done);
    b.on_all(pre, pre);
    let d = b.ins_symbol(i);
    b.rule(pre, d, Constraint::True, false, cur);
    b.on_all(done, done);
    let c = b.counter_symbol(j);
    let eq = Constraint::eq(Var::Input, Var::Reg(0));

    if ins.counter == j && ins.op == CounterOp::Zero {
        // The counter occurs in either block around the test.
        let gap = b.loc(name("gap"));
        let before = b.loc(name("before"));
        b.on_counters(cur, cur, j, None);
        b.rule(cur, c, Constraint::True, false, done);
        b.on_locations(cur, gap);
        b.on_instructions(gap, before);
        b.on_counters(before, before, j, None);
        b.rule(before, c, Constraint::True, false, done);
        return;
    }

    // An occurrence in the block after the step (non-last for increments)
    // without a same-atom occurrence in the block before it.
    let stored = b.loc(name("stored"));
    let rest = b.loc(name("rest"));
    let gap = b.loc(name("gap"));
    let before = b.loc(name("before"));
    b.a.finals.extend([gap, before]);
    b.on_counters(cur, cur, j, Some(Constraint::True));
    if ins.counter == j && ins.op == CounterOp::Inc {
        b.rule(cur, c, Constraint::True, true, stored);
        b.rule(stored, c, Constraint::True, false, rest);
    } else {
        b.rule(cur, c, Constraint::True, true, rest);
    }
    b.on_counters(rest, rest, j, Some(Constraint::True));
    b.on_locations(rest, gap);
    b.on_instructions(gap, before);
    b.on_counters(before, before, j, Some(eq.clone().negate()));
    b.on_locations(before, done);

    if ins.counter == j && ins.op == CounterOp::Dec {
        // An occurrence matched by the last occurrence in the block before.
        let rest = b.loc(name("rest-last"));
        let gap = b.loc(name("gap-last"));
        let before = b.loc(name("before-last"));
        let matched = b.loc(name("matched-last"));
        b.a.finals.push(matched);
        b.rule(cur, c, Constraint::True, true, rest);
        b.on_counters(rest, rest, j, Some(Constraint::True));
        b.on_locations(rest, gap);
        b.on_instructions(gap, before);
        b.on_counters(before, before, j, Some(eq.clone().negate()));
        b.rule(before, c, eq, false, matched);
        b.on_counters(matched, matched, j, None);
        b.on_locations(matched, done);
    }
}

/// A one-register automaton accepting exactly the data words over the
/// encoding alphabet that do not encode a run of `m`. It is the union of a
/// register-free shape check, a repeated-atom check, and one fragment per
/// instruction and counter checking how the counter is carried over.
pub fn lcm_bad_encoding_automaton(m: &Lcm) -> Automaton {
    let mut b = Builder {
        m,
        a: Automaton {
            registers: 1,
            alphabet: m.encoding_alphabet(),
            locations: vec![],
            initial: vec![],
            finals: vec![],
            rules: vec![],
        },
    };
    shape_checker(&mut b);
    repeated_atom(&mut b);
    for i in 0..m.instructions.len() {
        for j in 0..4 {
            bad_step(&mut b, i, j);
        }
    }
    let mut a = b.a;
    a.initial.sort_unstable();
    a.finals.sort_unstable();
    a.finals.dedup();
    a
}

fn machine(locations: &[&str], instructions: &[(&str, CounterOp, &str, &str)]) -> Lcm {
    LcmDesc {
        locations: locations.iter().map(|s| s.to_string()).collect(),
        initial: locations[0].to_string(),
        instructions: instructions
            .iter()
            .map(|&(from, op, counter, to)| InstructionDesc {
                from: from.into(),
                op,
                counter: counter.into(),
                to: to.into(),
            })
            .collect(),
    }
    .build()
    .expect("fixture machine is well formed")
}

/// One location with a zero test of `c1` looping on it.
pub fn lcm_zero_loop() -> Lcm {
    machine(&["q0"], &[("q0", CounterOp::Zero, "c1", "q0")])
}

/// One location incrementing `c1` forever.
pub fn lcm_inc_loop() -> Lcm {
    machine(&["q0"], &[("q0", CounterOp::Inc, "c1", "q0")])
}

/// A machine touching every counter with every operation.
pub fn lcm_counting() -> Lcm {
    use CounterOp::*;
    machine(
        &["q0", "q1", "q2"],
        &[
            ("q0", Inc, "c1", "q0"),
            ("q0", Inc, "c2", "q1"),
            ("q1", Dec, "c1", "q1"),
            ("q1", Inc, "c3", "q2"),
            ("q2", Zero, "c4", "q0"),
            ("q2", Dec, "c2", "q2"),
            ("q2", Inc, "c4", "q1"),
            ("q1", Zero, "c1", "q0"),
            ("q0", Dec, "c3", "q2"),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steps() {
        let m1 = lcm_inc_loop();
        let c = LcmConfig::initial(&m1);
        assert_eq!(lcm_step(&m1, &c), vec![(0, LcmConfig::new(0, [1, 0, 0, 0]))]);
        assert!(lossy_successor(&m1, &c, &LcmConfig::new(0, [0, 0, 0, 0])));
        assert!(!lossy_successor(&m1, &c, &LcmConfig::new(0, [2, 0, 0, 0])));
        let m0 = lcm_zero_loop();
        assert!(lcm_step(&m0, &LcmConfig::new(0, [1, 0, 0, 0])).is_empty());
        let dec = machine(&["q0"], &[("q0", CounterOp::Dec, "c1", "q0")]);
        assert!(lcm_step(&dec, &LcmConfig::initial(&dec)).is_empty());
    }

    #[test]
    fn reachability() {
        assert_eq!(
            lcm_reach_bounded(&lcm_zero_loop(), 10),
            Reach::Finite([LcmConfig::new(0, [0; 4])].into())
        );
        assert_eq!(lcm_reach_bounded(&lcm_inc_loop(), 5), Reach::ExceededBudget);
        let idle = machine(&["q0"], &[]);
        assert_eq!(lcm_reach_bounded(&idle, 1), Reach::Finite([LcmConfig::initial(&idle)].into()));
    }

    #[test]
    fn encodings() {
        let m0 = lcm_zero_loop();
        assert_eq!(encode_run(&m0, &[]).unwrap().to_string(), "q0:0");
        let m1 = lcm_inc_loop();
        let w = encode_run(&m1, &[(0, LcmConfig::new(0, [1, 0, 0, 0]))]).unwrap();
        assert_eq!(w.to_string(), "q0:0,δ0:0,c1:1,q0:0");
        let m = machine(
            &["q0"],
            &[("q0", CounterOp::Inc, "c1", "q0"), ("q0", CounterOp::Dec, "c1", "q0")],
        );
        let run = [(0, LcmConfig::new(0, [1, 0, 0, 0])), (1, LcmConfig::new(0, [0; 4]))];
        let w = encode_run(&m, &run).unwrap();
        assert_eq!(w.to_string(), "q0:0,δ1:0,q0:0,δ0:0,c1:1,q0:0");
        assert_eq!(decode_encoding(&m, &w).unwrap(), run.to_vec());
        assert!(encode_run(&m, &[(1, LcmConfig::new(0, [0; 4]))]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = lcm_counting();
        assert_eq!(Lcm::from_json(&m.to_json()).unwrap(), m);
        let bad = r#"{"locations":["q0"],"initial":"q0","instructions":[{"from":"q0","op":"inc","counter":"c5","to":"q0"}]}"#;
        assert!(matches!(Lcm::from_json(bad), Err(Error::InvalidMachine(_))));
    }
}
