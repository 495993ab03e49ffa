use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use scasc::admissibility::{classify, refute_sc, RefuteBudget, RefuteOutcome};
use scasc::discriminator::{
    find_discriminator_term, murskii_survey, quasivariety_minimality_consequence, sc_verdict, VerdictOptions,
    DEFAULT_SEED,
};
use scasc::free::{free_algebra, GeneratingClass};
use scasc::io::{parse_algebra_file, parse_class, verify_verdict_report, ClassificationReport, FreeReport, RefutationReport, VerdictReport};
use scasc::term::parse_quasi_identity;
use scasc::{Error, Limits};

/// Structural completeness of quasivarieties generated by finite algebras.
#[derive(Parser)]
#[command(name = "scasc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args)]
struct Caps {
    /// Maximum number of elements of a free or finitely presented algebra.
    #[arg(long, global = true, default_value_t = Limits::default().free_elements)]
    cap: usize,
    /// Largest carrier whose subsets may be enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().subset_carrier)]
    subset_cap: usize,
    /// Maximum number of operation applications while closing a free or
    /// finitely presented algebra.
    #[arg(long, global = true, default_value_t = Limits::default().closure_steps)]
    max_steps: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an algebra file.
    Validate { file: PathBuf },
    /// Size (and optionally the witness terms) of the free algebra of rank k.
    Free {
        file: PathBuf,
        #[arg(short = 'k')]
        k: usize,
        /// Print the witness term of every element.
        #[arg(long)]
        terms: bool,
        #[arg(long)]
        json: bool,
    },
    /// A discriminator term, `none`, or `unknown(budget)`.
    Disc { file: PathBuf },
    /// The SC/ASC verdict with certificates.
    Verdict {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also search for a refuting quasi-identity with this many variables.
        #[arg(long, requires_all = ["refute_premises", "refute_depth"])]
        refute_vars: Option<usize>,
        #[arg(long)]
        refute_premises: Option<usize>,
        #[arg(long)]
        refute_depth: Option<usize>,
    },
    /// Classify a quasi-identity as valid, admissible, active or passive.
    Classify {
        file: PathBuf,
        #[arg(short = 'q')]
        quasi_identity: String,
        #[arg(long)]
        json: bool,
    },
    /// Search for a passive admissible quasi-identity that fails in the class.
    RefuteSc {
        file: PathBuf,
        #[arg(long)]
        max_vars: usize,
        #[arg(long)]
        max_premises: usize,
        #[arg(long)]
        max_depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Statistics over random algebras of a given size and signature.
    Survey {
        #[arg(long)]
        size: usize,
        /// Comma-separated operation arities.
        #[arg(long, value_delimiter = ',', required = true)]
        arity: Vec<usize>,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Failure {
    Input(String),
    Capacity(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapacityExceeded { .. } => Failure::Capacity(e.to_string()),
            Error::Consistency(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read(file: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))
}

fn load(file: &PathBuf) -> Result<(Vec<String>, GeneratingClass), Failure> {
    let text = read(file)?;
    parse_class(&text).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn run(cli: Cli) -> Outcome {
    let limits = Limits {
        free_elements: cli.caps.cap,
        subset_carrier: cli.caps.subset_cap,
        closure_steps: cli.caps.max_steps,
        ..Limits::default()
    };
    match cli.command {
        Command::Validate { file } => {
            let text = read(&file)?;
            let algs = parse_algebra_file(&text).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
            println!("ok: {} algebra(s) over {}", algs.len(), algs[0].algebra.signature());
            for a in &algs {
                println!("{}: size {}", a.name, a.algebra.size());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Free { file, k, terms, json: as_json } => {
            let (_, class) = load(&file)?;
            let f = free_algebra(&class, k, &limits)?;
            let report = FreeReport::new(&f, terms);
            if as_json {
                println!("{}", json(&report));
            } else {
                print!("{}", report.to_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Disc { file } => {
            let (_, class) = load(&file)?;
            match find_discriminator_term(&class, &limits) {
                Ok(Some(t)) => println!("{}", t.to_string_with(class.signature())),
                Ok(None) => println!("none"),
                Err(e) if e.is_capacity() => {
                    println!("unknown(budget)");
                    eprintln!("{e}");
                    return Ok(ExitCode::from(2));
                }
                Err(e) => return Err(e.into()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verdict {
            file,
            json: as_json,
            refute_vars,
            refute_premises,
            refute_depth,
        } => {
            let (names, class) = load(&file)?;
            let refutation = match (refute_vars, refute_premises, refute_depth) {
                (Some(max_vars), Some(max_premises), Some(max_depth)) => Some(RefuteBudget {
                    max_vars,
                    max_premises,
                    max_depth,
                }),
                _ => None,
            };
            let verdict = sc_verdict(&class, &VerdictOptions { limits, refutation })?;
            let report = VerdictReport::new(&verdict, &names, class.signature());
            verify_verdict_report(&report, &class, &limits)?;
            if let (Some(t), Some(m)) = (&verdict.discriminator_term, &verdict.minimality) {
                if m.minimal {
                    let check = quasivariety_minimality_consequence(&class, t, &limits)?;
                    if let Some(f) = check.failure {
                        return Err(Failure::Internal(format!(
                            "FAILURE: homomorphisms from {} into subalgebra {:?} of {} do not separate {:?}",
                            names[f.source_member], f.subuniverse, names[f.member], f.pair
                        )));
                    }
                }
            }
            if as_json {
                println!("{}", json(&report));
            } else {
                print!("{}", report.to_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify {
            file,
            quasi_identity,
            json: as_json,
        } => {
            let (names, class) = load(&file)?;
            let q = parse_quasi_identity(&quasi_identity, class.signature()).map_err(|e| Failure::Input(e.to_string()))?;
            let c = classify(&class, &q, &limits)?;
            let report = ClassificationReport::new(&q, &c, &names, class.signature());
            if as_json {
                println!("{}", json(&report));
            } else {
                print!("{}", report.to_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::RefuteSc {
            file,
            max_vars,
            max_premises,
            max_depth,
            json: as_json,
        } => {
            let (_, class) = load(&file)?;
            let budget = RefuteBudget {
                max_vars,
                max_premises,
                max_depth,
            };
            let outcome = refute_sc(&class, budget, &limits)?;
            let report = RefutationReport::new(&outcome, class.signature());
            if as_json {
                println!("{}", json(&report));
            } else {
                println!("{}", report.to_text());
            }
            Ok(match outcome {
                RefuteOutcome::Capacity { .. } => ExitCode::from(2),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Survey {
            size,
            arity,
            samples,
            seed,
        } => {
            let report = murskii_survey(size, &arity, samples, seed, &limits)?;
            println!("{}", json(&report));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Capacity(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
