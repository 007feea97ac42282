//! `parwreath`: orders, closures, ranks and verification checks for
//! partition-preserving transformation monoids.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use parwreath::io::{parse_element_set, write_closure, write_word_log};
use parwreath::rank::{DEFAULT_BUDGET, DEFAULT_CLOSURE_LIMIT};
use parwreath::structures::structure_generators;
use parwreath::verify::{verify, Check, Theorem};
use parwreath::{
    closure, order_formula, rank_exhaustive, rank_via_lemma1, ClosureOptions, Error, RankValue,
    SearchOptions, StructureKind,
};
use serde_json::{json, Map, Value};

use report::{RankOut, Report, Status};

#[derive(Parser, Debug)]
#[command(name = "parwreath", version, about)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads; 0 uses all cores, 1 runs sequentially.
    #[arg(long, env = "PARWREATH_THREADS", default_value_t = 0, global = true)]
    threads: usize,
    /// Maximum number of elements in any closure.
    #[arg(long, default_value_t = DEFAULT_CLOSURE_LIMIT, global = true)]
    limit: usize,
    /// Maximum number of candidate closures in a rank search.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    budget: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Structure {
    Txp,
    Sigma,
    Gamma,
    Sxp,
}

impl From<Structure> for StructureKind {
    fn from(s: Structure) -> Self {
        match s {
            Structure::Txp => Self::Txp,
            Structure::Sigma => Self::Sigma,
            Structure::Gamma => Self::Gamma,
            Structure::Sxp => Self::Sxp,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoremArg {
    Main,
    Wreath,
    Lemma2,
    Kernel,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::Main => Self::Main,
            TheoremArg::Wreath => Self::Wreath,
            TheoremArg::Lemma2 => Self::Lemma2,
            TheoremArg::Kernel => Self::Kernel,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Exhaustive,
    Lemma1,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order of a structure from its closed formula.
    Order {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        structure: Structure,
        /// Also enumerate the structure and compare.
        #[arg(long)]
        enumerate: bool,
    },
    /// Check the rank and generation results for one (n, m).
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Run a single verification instead of all of them.
        #[arg(long, value_enum)]
        theorem: Option<TheoremArg>,
    },
    /// Rank of a structure.
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        structure: Structure,
        /// Largest generating-set size to try.
        #[arg(long, default_value_t = 5)]
        max_k: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Lemma1)]
        method: MethodArg,
    },
    /// Enumerate the monoid generated by a file or a built-in generating set.
    Closure {
        /// Element-set file: degree line, then one transformation per line.
        #[arg(long, conflicts_with = "generators")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, requires_all = ["n", "m"])]
        generators: Option<Structure>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Write every element to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Write a generator word for every element to this file.
        #[arg(long)]
        words: Option<PathBuf>,
    },
}

/// Anything that stops a command before it produces a report.
enum Failure {
    Input(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Library(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let started = Instant::now();
    let (name, params) = describe(&cli.command);
    let mut report = Report::new(name, params);
    match run(&cli, &mut report) {
        Ok(()) => report.settle(),
        Err(Failure::Library(e)) => match Status::for_error(&e) {
            Some(status) => {
                report.status = status;
                report.message = Some(e.to_string());
                if let Error::BudgetExceeded { partial, .. } = &e {
                    report.set(
                        "partial_certificate",
                        json!({
                            "search_space": partial.search_space,
                            "rejected_count": partial.rejected_count,
                            "per_size": partial.per_size,
                        }),
                    );
                }
                if let Error::LimitExceeded { partial, limit } = &e {
                    report.set("limit", *limit);
                    report.set("partial_order", *partial);
                }
            }
            None => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    }
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    match cli.global.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.status.exit_code() as u8)
}

fn describe(command: &Command) -> (&'static str, Map<String, Value>) {
    let value = match command {
        Command::Order {
            n,
            m,
            structure,
            enumerate,
        } => {
            json!({ "n": n, "m": m, "structure": kind_name(*structure), "enumerate": enumerate })
        }
        Command::Verify { n, m, theorem } => json!({
            "n": n,
            "m": m,
            "theorem": theorem.map(|t| Theorem::from(t).to_string()),
        }),
        Command::Rank {
            n,
            m,
            structure,
            max_k,
            method,
        } => json!({
            "n": n,
            "m": m,
            "structure": kind_name(*structure),
            "max_k": max_k,
            "method": match method {
                MethodArg::Exhaustive => "exhaustive",
                MethodArg::Lemma1 => "lemma1",
            },
        }),
        Command::Closure {
            input,
            generators,
            n,
            m,
            dump,
            words,
        } => json!({
            "input": input.as_ref().map(|p| p.display().to_string()),
            "generators": generators.map(kind_name),
            "n": n,
            "m": m,
            "dump": dump.as_ref().map(|p| p.display().to_string()),
            "words": words.as_ref().map(|p| p.display().to_string()),
        }),
    };
    let name = match command {
        Command::Order { .. } => "order",
        Command::Verify { .. } => "verify",
        Command::Rank { .. } => "rank",
        Command::Closure { .. } => "closure",
    };
    let Value::Object(params) = value else {
        unreachable!()
    };
    (name, params)
}

fn kind_name(s: Structure) -> &'static str {
    StructureKind::from(s).name()
}

fn search_options(global: &Global) -> SearchOptions {
    SearchOptions {
        threads: global.threads,
        budget: global.budget,
        closure_limit: Some(global.limit),
        ..SearchOptions::default()
    }
}

fn closure_options(global: &Global) -> ClosureOptions {
    ClosureOptions::default()
        .with_threads(global.threads)
        .with_limit(global.limit)
}

fn big_value(v: &BigUint) -> Value {
    match u64::try_from(v) {
        Ok(small) => small.into(),
        Err(_) => v.to_string().into(),
    }
}

fn run(cli: &Cli, report: &mut Report) -> Result<(), Failure> {
    let global = &cli.global;
    match &cli.command {
        Command::Order {
            n,
            m,
            structure,
            enumerate,
        } => {
            let kind = StructureKind::from(*structure);
            let gens = structure_generators(*n, *m, kind)?;
            let formula = order_formula(*n, *m, kind);
            report.set("formula_order", big_value(&formula));
            if *enumerate {
                let result = closure(&gens, &closure_options(global))?.complete()?;
                report.set("enumerated_order", result.order());
                report.set("equal", formula == BigUint::from(result.order()));
                report.push_check(&Check::new(
                    "order formula = enumerated order",
                    &formula,
                    result.order(),
                ));
            }
        }
        Command::Verify { n, m, theorem } => {
            let outcome = verify(*n, *m, theorem.map(Theorem::from), &search_options(global))?;
            for c in &outcome.checks {
                report.push_check(c);
            }
            report.set("passed", outcome.checks.iter().filter(|c| c.pass).count());
            report.set("failed", outcome.checks.iter().filter(|c| !c.pass).count());
        }
        Command::Rank {
            n,
            m,
            structure,
            max_k,
            method,
        } => {
            let kind = StructureKind::from(*structure);
            let gens = structure_generators(*n, *m, kind)?;
            let options = search_options(global);
            let s = closure(&gens, &closure_options(global))?.complete()?;
            let rank = match method {
                MethodArg::Exhaustive => rank_exhaustive(&s, *max_k, &options)?,
                MethodArg::Lemma1 => rank_via_lemma1(&s, *max_k, &options)?,
            }
            .with_structure(kind, *n, *m);
            report.set("monoid_order", s.order());
            if let RankValue::Exceeds(bound) = rank.value {
                report.set("exceeds", bound);
            }
            report.rank = Some(RankOut::from(&rank));
        }
        Command::Closure {
            input,
            generators,
            n,
            m,
            dump,
            words,
        } => {
            let gens = match (input, generators) {
                (Some(path), None) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    parse_element_set(&text)
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
                }
                (None, Some(kind)) => {
                    let (n, m) = (n.unwrap_or_default(), m.unwrap_or_default());
                    structure_generators(n, m, (*kind).into())?
                }
                _ => {
                    return Err(Failure::Input(
                        "give either --input or --generators".to_owned(),
                    ))
                }
            };
            let mut options = closure_options(global);
            options.word_log = words.is_some();
            let result = closure(&gens, &options)?.complete()?;
            report.set("degree", result.degree());
            report.set("generator_count", result.generator_count());
            report.set("order", result.order());
            report.set("is_group", result.is_group());
            if let Some(path) = dump {
                write_file(path, &write_closure(&result))?;
            }
            if let Some(path) = words {
                write_file(path, &write_word_log(&result).unwrap_or_default())?;
            }
        }
    }
    Ok(())
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}
