use std::{
    fs,
    path::{Path, PathBuf},
    process::ExitCode,
    time::Instant,
};

use aggsolve::{
    analysis::{build_signature, Signature},
    classical::{build_vc, emit_tptp, TptpOptions},
    folog::Semantics,
    semantics::{
        answer_sets, check_strong_equivalence, CheckOptions, Mode, PropInterp, Scope, Verdict,
        DEFAULT_MAX_SUBSET,
    },
    syntax::{parse_program, Program},
    translate::Translation,
};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Translate, solve and compare logic programs with aggregates
#[derive(Parser, Debug)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the first-order translation of a program
    Translate {
        #[arg(long, value_enum)]
        semantics: SemanticsArg,
        #[command(flatten)]
        common: TranslationArgs,
        file: PathBuf,
    },
    /// Enumerate the answer sets of a program over a finite scope
    Answersets {
        #[arg(long, value_enum)]
        semantics: SemanticsArg,
        #[command(flatten)]
        scope: ScopeArgs,
        /// Program appended to the input
        #[arg(long)]
        context: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Search for a Here-and-There pair that tells two programs apart
    Check {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(flatten)]
        scope: ScopeArgs,
        #[command(flatten)]
        common: TranslationArgs,
        /// Program appended to both inputs
        #[arg(long)]
        context: Option<PathBuf>,
        /// Worker threads for the search
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Largest number of pairs to enumerate
        #[arg(long, default_value_t = CheckOptions::default().max_pairs)]
        max_pairs: u128,
        left: PathBuf,
        right: PathBuf,
    },
    /// Write a TPTP problem whose validity implies strong equivalence
    Verify {
        #[arg(long, value_enum)]
        semantics: SemanticsArg,
        #[command(flatten)]
        common: TranslationArgs,
        /// Program appended to both inputs
        #[arg(long)]
        context: Option<PathBuf>,
        /// Leave out the axioms approximating standard interpretations
        #[arg(long)]
        no_standardness: bool,
        /// List the axioms in readable form
        #[arg(long)]
        print_axioms: bool,
        /// Output file; standard output by default
        #[arg(short, long)]
        output: Option<PathBuf>,
        left: PathBuf,
        right: PathBuf,
    },
}

#[derive(Args, Debug)]
struct TranslationArgs {
    /// Translate a single `not` before an aggregate with the clingo set
    /// function under dlv semantics
    #[arg(long)]
    strict_item3: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ScopeArgs {
    /// Integers to instantiate variables with, as `min..max`
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    ints: Option<(i64, i64)>,
    /// Symbolic constants to instantiate variables with
    #[arg(long, value_delimiter = ',')]
    consts: Vec<String>,
    /// Largest number of instances of an aggregate element
    #[arg(long, env = "AGGSOLVE_MAX_SUBSET", default_value_t = DEFAULT_MAX_SUBSET)]
    max_subset: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SemanticsArg {
    Cli,
    Dlv,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Cli => Semantics::Cli,
            SemanticsArg::Dlv => Semantics::Dlv,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    CliCli,
    DlvDlv,
    CliDlv,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::CliCli => Mode::CliCli,
            ModeArg::DlvDlv => Mode::DlvDlv,
            ModeArg::CliDlv => Mode::CliDlv,
        }
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (min, max) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `min..max`, found `{s}`"))?;
    let bound = |b: &str| {
        b.trim()
            .parse::<i64>()
            .map_err(|e| format!("invalid bound `{b}`: {e}"))
    };
    Ok((bound(min)?, bound(max)?))
}

impl ScopeArgs {
    fn scope(&self) -> Result<Scope> {
        if self.ints.is_none() && self.consts.is_empty() {
            bail!("a scope is required: pass --ints, --consts or both");
        }
        let scope = Scope::new(
            self.consts.iter().map(String::as_str),
            self.ints.map(|(a, b)| (a.into(), b.into())),
        )?;
        Ok(scope.with_max_subset(self.max_subset))
    }
}

fn load(path: &Path) -> Result<Program> {
    let source =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_program(&source).map_err(|e| anyhow::anyhow!("{}:{e}", path.display()))
}

fn load_with(path: &Path, context: Option<&Program>) -> Result<Program> {
    let mut program = load(path)?;
    if let Some(context) = context {
        program.rules.extend(context.rules.iter().cloned());
    }
    Ok(program)
}

fn atoms_json(i: &PropInterp) -> Value {
    i.atoms.iter().map(|a| a.to_string()).collect()
}

fn set_symbol_lines(sig: &Signature) -> Vec<String> {
    sig.set_symbols()
        .map(|(symbol, name)| {
            let globals: Vec<&str> = symbol.globals.iter().map(|v| v.name()).collect();
            format!("{name} = {{{}}} / ({})", symbol.element, globals.join(", "))
        })
        .collect()
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

fn run(cli: Cli) -> Result<ExitCode> {
    let start = Instant::now();
    match cli.command {
        Command::Translate {
            semantics,
            common,
            file,
        } => {
            let program = load(&file)?;
            let sig = build_signature([&program]);
            let theory = Translation::new(semantics.into())
                .strict_item3(common.strict_item3)
                .tau_program(&program, &sig)?;
            if common.json {
                let out = json!({
                    "semantics": Semantics::from(semantics).name(),
                    "set_symbols": set_symbol_lines(&sig),
                    "sentences": theory.sentences().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "elapsed_ms": elapsed_ms(start),
                });
                println!("{out:#}");
            } else {
                for line in set_symbol_lines(&sig) {
                    println!("% {line}");
                }
                print!("{theory}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Answersets {
            semantics,
            scope,
            context,
            json,
            file,
        } => {
            let scope = scope.scope()?;
            let context = context.as_deref().map(load).transpose()?;
            let program = load_with(&file, context.as_ref())?;
            let sets = answer_sets(&program, &scope, semantics.into())?;
            if json {
                let out = json!({
                    "semantics": Semantics::from(semantics).name(),
                    "answer_sets": sets.iter().map(atoms_json).collect::<Vec<_>>(),
                    "elapsed_ms": elapsed_ms(start),
                });
                println!("{out:#}");
            } else {
                for set in &sets {
                    println!("{set}");
                }
                println!("% {} answer set(s)", sets.len());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            mode,
            scope,
            common,
            context,
            jobs,
            max_pairs,
            left,
            right,
        } => {
            let scope = scope.scope()?;
            let context = context.as_deref().map(load).transpose()?;
            let left = load_with(&left, context.as_ref())?;
            let right = load_with(&right, context.as_ref())?;
            let options = CheckOptions {
                jobs: jobs.max(1),
                max_pairs,
                strict_item3: common.strict_item3,
            };
            let mode = Mode::from(mode);
            let verdict = check_strong_equivalence(&left, &right, &scope, mode, &options)?;
            let code = match &verdict {
                Verdict::EquivalentWithinScope { .. } => ExitCode::SUCCESS,
                Verdict::Counterexample { .. } => ExitCode::from(1),
            };
            if common.json {
                let out = match &verdict {
                    Verdict::EquivalentWithinScope { pairs_checked } => json!({
                        "mode": mode.to_string(),
                        "verdict": "equivalent-within-scope",
                        "pairs_checked": pairs_checked.to_string(),
                        "elapsed_ms": elapsed_ms(start),
                    }),
                    Verdict::Counterexample { pair, left } => json!({
                        "mode": mode.to_string(),
                        "verdict": "counterexample",
                        "here": atoms_json(pair.here()),
                        "there": atoms_json(pair.there()),
                        "satisfied_by": if *left { "left" } else { "right" },
                        "elapsed_ms": elapsed_ms(start),
                    }),
                };
                println!("{out:#}");
            } else {
                match &verdict {
                    Verdict::EquivalentWithinScope { pairs_checked } => {
                        println!("equivalent within scope ({mode}, {pairs_checked} pairs)");
                        println!("% a bounded check; this does not prove strong equivalence");
                    }
                    Verdict::Counterexample { pair, left } => {
                        let side = if *left { "left" } else { "right" };
                        println!("counterexample ({mode}): satisfies the {side} program only");
                        println!("here:  {}", pair.here());
                        println!("there: {}", pair.there());
                    }
                }
            }
            Ok(code)
        }
        Command::Verify {
            semantics,
            common,
            context,
            no_standardness,
            print_axioms,
            output,
            left,
            right,
        } => {
            let context = context.as_deref().map(load).transpose()?;
            let left = load_with(&left, context.as_ref())?;
            let right = load_with(&right, context.as_ref())?;
            let translation = Translation::new(semantics.into()).strict_item3(common.strict_item3);
            let vc = build_vc(&left, &right, translation)?;
            let options = TptpOptions {
                standardness: !no_standardness,
            };
            let problem = emit_tptp(&vc, &options);
            if print_axioms {
                println!("% HT axioms\n{}", vc.ht_axioms);
                println!("% AGG axioms\n{}", vc.agg_axioms);
                if options.standardness {
                    println!("% standardness axioms\n{}", vc.standardness_axioms);
                }
            }
            match &output {
                Some(path) => fs::write(path, &problem)
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => print!("{problem}"),
            }
            if common.json {
                let out = json!({
                    "semantics": vc.semantics.name(),
                    "output": output.as_ref().map(|p| p.display().to_string()),
                    "ht_axioms": vc.ht_axioms.len(),
                    "agg_axioms": vc.agg_axioms.len(),
                    "standardness_axioms": if options.standardness { vc.standardness_axioms.len() } else { 0 },
                    "elapsed_ms": elapsed_ms(start),
                });
                // the problem itself occupies standard output without `-o`
                if output.is_some() {
                    println!("{out:#}");
                } else {
                    eprintln!("{out:#}");
                }
            }
            eprintln!(
                "note: a countermodel reported by a prover may interpret the order, \
                 tuples, count or sum nonstandardly and needs manual inspection"
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
