//! Fixtures, counter-machine encodings, composition, and random automata.

mod compose;
mod fixtures;
mod lcm;
mod random;

pub use compose::{compose_hardness, separator_for};
pub use fixtures::{example_last_atom_repeats, first_equals_last_dra, first_equals_last_nra, universal};
pub use lcm::{
    decode_encoding, encode_run, instruction_symbol, lcm_bad_encoding_automaton, lcm_counting, lcm_inc_loop,
    lcm_reach_bounded, lcm_step, lcm_zero_loop, lossy_successor, random_run, validate_run, CounterOp, Instruction,
    InstructionDesc, Lcm, LcmConfig, LcmDesc, Reach, COUNTERS,
};
pub use random::{inject_epsilon, random_dra, random_nra};
