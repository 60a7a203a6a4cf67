//! `ra`: command-line front end for register automata.
//!
//! Exit codes: 0 when the property holds (accepted, included, yes), 1 when
//! it fails with the witness word printed on stdout, 2 for usage or input
//! errors, 3 when the search budget runs out.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ra_core::automaton::{accepts, eliminate_epsilon, is_empty, Automaton};
use ra_core::determinize::{dra_k_membership, MembershipOptions};
use ra_core::generators::{compose_hardness, example_last_atom_repeats, lcm_bad_encoding_automaton, Lcm};
use ra_core::inclusion::{equivalent, includes};
use ra_core::oracle::{compare_bounded, Comparison, WordBound};
use ra_core::verdict::{SearchStats, Verdict, DEFAULT_BUDGET};
use ra_core::word::DataWord;

#[derive(Parser)]
#[command(name = "ra", version, about = "Register automata over equality atoms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an automaton on a data word such as "σ:1,σ:2,σ:1".
    Simulate {
        automaton: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Decide emptiness; prints an accepted word if there is one.
    Empty { automaton: PathBuf },
    /// Remove ε-rules.
    ElimEps {
        automaton: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide L(A) ⊆ L(B) for B with at most one register.
    Include {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Decide L(A) = L(B).
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Decide whether a one-register automaton has a deterministic
    /// equivalent with K registers.
    Member {
        automaton: PathBuf,
        #[arg(long)]
        k: usize,
        /// Check the extracted automaton against the input.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Where to write the deterministic automaton.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the JSON report.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build the automaton of incorrect run encodings of a counter machine.
    GenLcm {
        machine: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the "last atom repeats" automaton.
    GenExample {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build L·$·Γ* ∪ Σ*·$·M from automata for L and M.
    Compose {
        left: PathBuf,
        right: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare two automata on all words up to a length.
    OracleCompare {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
}

const HOLDS: u8 = 0;
const FAILS: u8 = 1;
const BUDGET: u8 = 3;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<Automaton, String> {
    Automaton::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), String> {
    match output {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn exhausted(stats: &SearchStats) -> u8 {
    eprintln!("budget exhausted after {} generated states", stats.generated);
    BUDGET
}

fn verdict(v: Verdict<DataWord>, holds: &str) -> u8 {
    match v {
        Verdict::Holds(()) => {
            println!("{holds}");
            HOLDS
        }
        Verdict::Fails(w) => {
            println!("{w}");
            FAILS
        }
        Verdict::BudgetExhausted(s) => exhausted(&s),
    }
}

fn run(cmd: Command) -> Result<u8, String> {
    let err = |e: ra_core::Error| e.to_string();
    Ok(match cmd {
        Command::Simulate { automaton, word } => {
            let a = load(&automaton)?;
            let w: DataWord = word.parse().map_err(err)?;
            if accepts(&a, &w).map_err(err)? {
                println!("accept");
                HOLDS
            } else {
                println!("reject");
                FAILS
            }
        }
        Command::Empty { automaton } => {
            // A witness here is an accepted word: non-emptiness is the failure.
            verdict(is_empty(&load(&automaton)?).map_err(err)?, "empty")
        }
        Command::ElimEps { automaton, output } => {
            emit(&eliminate_epsilon(&load(&automaton)?).to_json(), output.as_deref())?;
            HOLDS
        }
        Command::Include { left, right, budget } => {
            let (a, b) = (load(&left)?, load(&right)?);
            verdict(includes(&a, &b, budget).map_err(err)?, "included")
        }
        Command::Equiv { left, right, budget } => {
            let (a, b) = (load(&left)?, load(&right)?);
            match equivalent(&a, &b, budget).map_err(err)? {
                Verdict::Holds(()) => {
                    println!("equivalent");
                    HOLDS
                }
                Verdict::Fails(d) => {
                    println!("{}", d.word);
                    eprintln!("accepted by the {} automaton only", if d.side == ra_core::verdict::Side::LeftOnly { "left" } else { "right" });
                    FAILS
                }
                Verdict::BudgetExhausted(s) => exhausted(&s),
            }
        }
        Command::Member {
            automaton,
            k,
            verify,
            budget,
            output,
            report,
        } => {
            let a = load(&automaton)?;
            let (v, rep) = dra_k_membership(&a, MembershipOptions { k, budget, verify }).map_err(err)?;
            if let Some(p) = &report {
                let text = serde_json::to_string_pretty(&rep).map_err(|e| e.to_string())?;
                emit(&text, Some(p))?;
            }
            match v {
                Verdict::Holds(d) => {
                    match &output {
                        Some(p) => emit(&d.to_json(), Some(p))?,
                        None => println!("yes"),
                    }
                    HOLDS
                }
                Verdict::Fails(w) => {
                    println!("{w}");
                    FAILS
                }
                Verdict::BudgetExhausted(s) => exhausted(&s),
            }
        }
        Command::GenLcm { machine, output } => {
            let m = Lcm::from_json(&read(&machine)?).map_err(|e| format!("{}: {e}", machine.display()))?;
            emit(&lcm_bad_encoding_automaton(&m).to_json(), output.as_deref())?;
            HOLDS
        }
        Command::GenExample { output } => {
            emit(&example_last_atom_repeats().to_json(), output.as_deref())?;
            HOLDS
        }
        Command::Compose { left, right, output } => {
            let (l, m) = (load(&left)?, load(&right)?);
            emit(&compose_hardness(&l, &m).to_json(), output.as_deref())?;
            HOLDS
        }
        Command::OracleCompare { left, right, max_len } => {
            let (a, b) = (load(&left)?, load(&right)?);
            match compare_bounded(&a, &b, &WordBound::for_pair(max_len, &a, &b)) {
                Comparison::Equal => {
                    println!("equal");
                    HOLDS
                }
                Comparison::Diff(d) => {
                    println!("{}", d.word);
                    eprintln!("accepted by the {} automaton only", if d.side == ra_core::verdict::Side::LeftOnly { "left" } else { "right" });
                    FAILS
                }
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
