//! Command-line driver. Exit codes: 0 success (any verdict), 2 usage or
//! input error, 3 state-space limit exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::elementary::DEFAULT_STATE_CAP;
use crate::emit::{to_dot, to_hoa};
use crate::error::BuildError;
use crate::gnba::Gnba;
use crate::letter::Alphabet;
use crate::model::{parse_model, verdict_with_cap};
use crate::oracle::{eval_lasso, LassoWord};
use crate::syntax::{parse_core, CoreFormula};
use crate::truth::TruthValue;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_STATE_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "kleene-ltl", version, about = "Three-valued LTL to generalized Büchi automata")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build A(formula, value) and write it as DOT and/or HOA.
    Translate(TranslateArgs),
    /// Model check a formula on a three-valued transition model.
    Check(CheckArgs),
    /// Evaluate a formula on a lasso word.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
pub struct TranslateArgs {
    #[arg(long)]
    pub formula: String,
    /// Comma-separated atoms, e.g. `a,b`.
    #[arg(long)]
    pub alphabet: String,
    /// top|bot|uu (aliases t/true, f/false, u/undef).
    #[arg(long)]
    pub value: TruthValue,
    #[arg(long)]
    pub out_dot: Option<PathBuf>,
    #[arg(long)]
    pub out_hoa: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_STATE_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub state_cap: u64,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub formula: String,
    /// Defaults to the atoms of the formula.
    #[arg(long)]
    pub alphabet: Option<String>,
    #[arg(long, default_value_t = DEFAULT_STATE_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub state_cap: u64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub formula: String,
    /// Letters separated by `;`, literals by `,`, e.g. `a;!a,b`.
    #[arg(long, default_value = "")]
    pub stem: String,
    #[arg(long = "loop")]
    pub cycle: String,
    /// Defaults to the atoms of the formula and of the word.
    #[arg(long)]
    pub alphabet: Option<String>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        let code = match e {
            BuildError::StateSpaceLimit { .. } => EXIT_STATE_CAP,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Translate(a) => translate(a, out),
        Command::Check(a) => check(a, out),
        Command::Eval(a) => eval(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn formula(text: &str) -> Result<CoreFormula, Failure> {
    parse_core(text).map_err(|e| Failure::usage(format!("formula: {e}")))
}

fn translate(a: TranslateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if a.out_dot.is_none() && a.out_hoa.is_none() {
        return Err(Failure::usage("at least one of --out-dot and --out-hoa is required"));
    }
    let psi = formula(&a.formula)?;
    let alphabet = Alphabet::parse_list(&a.alphabet)?;
    let g = Gnba::build_with_cap(&psi, &alphabet, a.value, a.state_cap)?;
    if let Some(path) = &a.out_dot {
        fs::write(path, to_dot(&g).0).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    if let Some(path) = &a.out_hoa {
        fs::write(path, to_hoa(&g).0).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    writeln!(out, "states={} initial={} accsets={}", g.state_count(), g.initial().len(), g.acceptance().len())
        .map_err(Failure::usage)?;
    Ok(())
}

fn check(a: CheckArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let psi = formula(&a.formula)?;
    let alphabet = match &a.alphabet {
        Some(list) => Alphabet::parse_list(list)?,
        None => Alphabet::new(psi.atoms())?,
    };
    let text = fs::read_to_string(&a.model).map_err(|e| Failure::usage(format!("{}: {e}", a.model.display())))?;
    let model = parse_model(&text).map_err(|e| Failure::usage(format!("model: {e}")))?;
    let v = verdict_with_cap(&model, &psi, &alphabet, a.state_cap)?;
    writeln!(out, "{}", v.value).map_err(Failure::usage)?;
    if let Some(w) = v.witness_text(&model) {
        writeln!(out, "witness: {w}").map_err(Failure::usage)?;
    }
    Ok(())
}

fn eval(a: EvalArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let psi = formula(&a.formula)?;
    let alphabet = match &a.alphabet {
        Some(list) => Alphabet::parse_list(list)?,
        None => {
            let mut atoms = psi.atoms();
            for lit in a.stem.split([';', ',']).chain(a.cycle.split([';', ','])) {
                let name = lit.trim().trim_start_matches('!').trim();
                if !name.is_empty() && name != "{}" {
                    atoms.insert(name.to_string());
                }
            }
            Alphabet::new(atoms)?
        }
    };
    let word = LassoWord::parse(&a.stem, &a.cycle, &alphabet).map_err(|e| Failure::usage(format!("lasso: {e}")))?;
    let value: TruthValue = eval_lasso(&psi, &word, &alphabet).map_err(Failure::usage)?;
    writeln!(out, "{value}").map_err(Failure::usage)?;
    Ok(())
}
