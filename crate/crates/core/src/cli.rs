//! Command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::amalgam::{amalgam_wp, AmalgamInstance, PSolver, SyllableWord};
use crate::conjugacy::{conjugate, cyclically_reduce};
use crate::dependence::{emit_dot, DependenceGraph};
use crate::error::{Error, Result};
use crate::normal_form::{normal_word, shortlex_symbols, word_problem};
use crate::oracles::{brute_conjugate, enumerate_geodesics, naive_normal_form, naive_word_problem, OracleBudget};
use crate::spec::{GraphProductSpec, NodeId};
use crate::word::GWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Wp,
    Nf,
    Shortlex,
    Geodesic,
    Cycred,
    Conj,
    AmalgamWp,
    Dot,
}

impl Command {
    pub fn word_count(self) -> usize {
        if self == Command::Conj {
            2
        } else {
            1
        }
    }
}

/// One query against one spec file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub command: Command,
    pub spec_path: PathBuf,
    pub words: Vec<String>,
    /// Base node for `amalgam-wp`; defaults to the last node.
    pub base: Option<String>,
    /// `dot`: print every arc instead of the Hasse diagram.
    pub full: bool,
    /// Answer with the brute-force oracles instead.
    pub oracle: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn answer(stdout: String, code: i32) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }
}

/// Runs an invocation. Exit codes: 0 and 1 encode the answer, 2 means a
/// spec or word failed to parse or validate, 3 an internal cross-check
/// failure.
pub fn run(inv: &Invocation) -> Outcome {
    let text = match std::fs::read_to_string(&inv.spec_path) {
        Ok(t) => t,
        Err(e) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: cannot read {}: {e}\n", inv.spec_path.display()),
                code: 2,
            }
        }
    };
    run_on_text(inv, &text)
}

/// As [`run`], with the spec given as text.
pub fn run_on_text(inv: &Invocation, spec_text: &str) -> Outcome {
    match execute(inv, spec_text) {
        Ok(out) => out,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: if matches!(e, Error::CrossCheck(_)) { 3 } else { 2 },
        },
    }
}

fn execute(inv: &Invocation, spec_text: &str) -> Result<Outcome> {
    if inv.words.len() != inv.command.word_count() {
        return Err(Error::InvalidWord(format!(
            "expected {} word(s), got {}",
            inv.command.word_count(),
            inv.words.len()
        )));
    }
    let spec = GraphProductSpec::parse(spec_text)?;
    let words = inv
        .words
        .iter()
        .map(|w| GWord::parse(&spec, w))
        .collect::<Result<Vec<_>>>()?;
    let w = &words[0];
    let budget = OracleBudget::default();
    let yes_no = |b: bool, yes: &str, no: &str| Outcome::answer(format!("{}\n", if b { yes } else { no }), i32::from(!b));
    Ok(match inv.command {
        Command::Wp => {
            let trivial = if inv.oracle {
                naive_word_problem(&spec, w)
            } else {
                word_problem(&spec, w)
            };
            yes_no(trivial, "TRIVIAL", "NONTRIVIAL")
        }
        Command::AmalgamWp => {
            let base = match &inv.base {
                Some(name) => spec.node_by_name(name)?,
                None => NodeId(spec.len() - 1),
            };
            let trivial = if spec.len() == 1 {
                word_problem(&spec, w)
            } else {
                let d = spec.decompose(base)?;
                let inst = AmalgamInstance::from_decomposition(&d, PSolver::Decomposition);
                amalgam_wp(&inst, &SyllableWord::from_word(&d, w))?
            };
            yes_no(trivial, "TRIVIAL", "NONTRIVIAL")
        }
        Command::Nf => {
            let nf = if inv.oracle {
                naive_normal_form(&spec, w, 0, &budget)?
            } else {
                normal_word(&spec, w)
            };
            Outcome::answer(format!("{}\n", nf.display(&spec)), 0)
        }
        Command::Shortlex => Outcome::answer(format!("{}\n", shortlex_symbols(&spec, w).join(" ")), 0),
        Command::Geodesic => {
            let symbols = if inv.oracle {
                let all = enumerate_geodesics(&spec, w, &budget)?;
                all[0].iter().map(|&g| spec.sigma()[g].symbol.clone()).collect()
            } else {
                shortlex_symbols(&spec, w)
            };
            Outcome::answer(format!("{}\n{}\n", symbols.join(" "), symbols.len()), 0)
        }
        Command::Cycred => Outcome::answer(format!("{}\n", cyclically_reduce(&spec, w).display(&spec)), 0),
        Command::Conj => {
            let yes = if inv.oracle {
                brute_conjugate(&spec, w, &words[1], &budget)?
            } else {
                conjugate(&spec, w, &words[1])
            };
            yes_no(yes, "CONJUGATE", "NOT-CONJUGATE")
        }
        Command::Dot => {
            let mut out = String::new();
            let _ = write!(out, "{}", emit_dot(&spec, &DependenceGraph::build(&spec, w), inv.full));
            Outcome::answer(out, 0)
        }
    })
}

#[derive(Parser, Debug)]
#[command(name = "graphprod", version, about = "Word problem, normal forms and conjugacy in graph products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Decide whether a word is trivial.
    Wp(OneWord),
    /// Print the reduced normal form.
    Nf(OneWord),
    /// Print the shortlex normal form over the generators.
    Shortlex(OneWord),
    /// Print a geodesic and its length.
    Geodesic(OneWord),
    /// Print a cyclically reduced conjugate.
    Cycred(OneWord),
    /// Decide whether two words are conjugate.
    Conj {
        spec: PathBuf,
        u: String,
        v: String,
        #[arg(long, hide = true)]
        oracle: bool,
    },
    /// Decide triviality through the amalgamated product decomposition.
    AmalgamWp {
        spec: PathBuf,
        word: String,
        /// Node to split off; defaults to the last node.
        #[arg(long)]
        base: Option<String>,
    },
    /// Print the dependence graph in DOT.
    Dot {
        spec: PathBuf,
        word: String,
        /// Include transitive arcs.
        #[arg(long)]
        full: bool,
    },
}

#[derive(clap::Args, Debug)]
pub struct OneWord {
    pub spec: PathBuf,
    pub word: String,
    #[arg(long, hide = true)]
    pub oracle: bool,
}

impl From<Cli> for Invocation {
    fn from(cli: Cli) -> Self {
        let one = |command, a: OneWord| Invocation {
            command,
            spec_path: a.spec,
            words: vec![a.word],
            base: None,
            full: false,
            oracle: a.oracle,
        };
        match cli.command {
            CliCommand::Wp(a) => one(Command::Wp, a),
            CliCommand::Nf(a) => one(Command::Nf, a),
            CliCommand::Shortlex(a) => one(Command::Shortlex, a),
            CliCommand::Geodesic(a) => one(Command::Geodesic, a),
            CliCommand::Cycred(a) => one(Command::Cycred, a),
            CliCommand::Conj { spec, u, v, oracle } => Invocation {
                command: Command::Conj,
                spec_path: spec,
                words: vec![u, v],
                base: None,
                full: false,
                oracle,
            },
            CliCommand::AmalgamWp { spec, word, base } => Invocation {
                command: Command::AmalgamWp,
                spec_path: spec,
                words: vec![word],
                base,
                full: false,
                oracle: false,
            },
            CliCommand::Dot { spec, word, full } => Invocation {
                command: Command::Dot,
                spec_path: spec,
                words: vec![word],
                base: None,
                full,
                oracle: false,
            },
        }
    }
}
