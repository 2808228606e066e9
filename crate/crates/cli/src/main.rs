//! `eqtree` command-line front end.
//!
//! Exit codes: 0 success (or isomorphic), 1 non-isomorphic, 2 invalid input,
//! 3 internal error.

mod io;

use std::io::Write as _;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eqtree::automorphism::normalize;
use eqtree::generate::{gen_equipped, GenSpec};
use eqtree::isomorphism::BRUTE_LIMIT;
use eqtree::{
    bench, build_dynamics_quotient, build_quotient, check_structure_laws, compute_orbits,
    compute_ranks, equipped_code, expand_quotient, iso_brute, iso_decide, iso_decide_via_reduction,
    ms_report, recover_quotient, reduce_to_graph, EquippedColoredTree, IsoError, Mode,
};
use serde_json::json;

use crate::io::{
    quotient_error, read_json, to_json, CliError, GraphDocument, InstanceDocument, ModeDoc,
    QuotientDocument,
};

#[derive(Parser)]
#[command(name = "eqtree", version, about = "Equipped colored tree isomorphism")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Canon,
    Brute,
    Reduction,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance document
    Validate { file: PathBuf },
    /// Ranks, strip sequence and centers
    Ranks { file: PathBuf },
    /// Orbits of the automorphism
    Orbits { file: PathBuf },
    /// Weighted quotient of an instance
    Quotient {
        file: PathBuf,
        /// Allow a center-swapping automorphism (adds a loop)
        #[arg(long)]
        dynamics: bool,
    },
    /// Expand a quotient document into an instance
    Expand { file: PathBuf },
    /// Reduce a quotient document to a simple graph
    Reduce { file: PathBuf },
    /// Recover a quotient from a reduction graph
    Recover { file: PathBuf },
    /// Canonical code as lowercase hex
    Canon { file: PathBuf },
    /// Decide isomorphism of two instances
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value = "canon")]
        method: Method,
    },
    /// Morse-Smale saddle and domain report
    Report { file: PathBuf },
    /// Generate a random instance
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_orbit: usize,
        #[arg(long, default_value_t = 0.25)]
        loop_prob: f64,
        #[arg(long, value_enum, default_value = "generic")]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time iso_decide across sizes (CSV plus a slope summary)
    Bench {
        /// Comma-separated ascending sizes
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Generic,
    MorseSmale,
}

/// Result of a command: text for stdout and the exit code.
struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn load_instance(path: &Path) -> Result<EquippedColoredTree, CliError> {
    let doc: InstanceDocument = read_json(path)?;
    doc.to_equipped(&path.display().to_string())
}

fn load_quotient(path: &Path) -> Result<eqtree::QuotientTree, CliError> {
    let doc: QuotientDocument = read_json(path)?;
    doc.to_quotient(&path.display().to_string())
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Validate { file } => {
            let et = load_instance(&file)?;
            let ranks = compute_ranks(et.tree());
            let orbits = compute_orbits(&et);
            let laws = check_structure_laws(&et, &ranks, &orbits);
            if !laws.passed() {
                return Err(CliError::Internal(format!(
                    "valid automorphism breaks the orbit laws: {:?}",
                    laws.violations
                )));
            }
            Ok(Outcome::ok(to_json(&json!({
                "valid": true,
                "n": et.n(),
                "k": et.tree().k(),
                "mode": et.tree().mode().as_str(),
                "case": normalize(&et).tag().as_str(),
                "orbit_pairs_checked": laws.pairs_checked,
            }))))
        }
        Command::Ranks { file } => {
            let et = load_instance(&file)?;
            let r = compute_ranks(et.tree());
            Ok(Outcome::ok(to_json(&json!({
                "rank": r.rank,
                "strip_sequence": r.strip_sequence,
                "centers": r.centers,
                "central_edge": r.central_edge,
            }))))
        }
        Command::Orbits { file } => {
            let et = load_instance(&file)?;
            let o = compute_orbits(&et);
            Ok(Outcome::ok(to_json(&json!({
                "orbits": o.orbits,
                "sizes": o.sizes,
                "cycle_type": o.cycle_type(),
            }))))
        }
        Command::Quotient { file, dynamics } => {
            let et = load_instance(&file)?;
            let name = file.display().to_string();
            let q = if dynamics {
                build_dynamics_quotient(&et)
            } else {
                build_quotient(&et).map_err(|e| quotient_error(&name, &e))?
            };
            Ok(Outcome::ok(to_json(&QuotientDocument::from_quotient(&q))))
        }
        Command::Expand { file } => {
            let q = load_quotient(&file)?;
            let et =
                expand_quotient(&q).map_err(|e| quotient_error(&file.display().to_string(), &e))?;
            Ok(Outcome::ok(to_json(&InstanceDocument::from_equipped(&et))))
        }
        Command::Reduce { file } => {
            let q = load_quotient(&file)?;
            let img = reduce_to_graph(&q).map_err(|e| {
                CliError::input(
                    &file.display().to_string(),
                    Some("$.loop".into()),
                    e.kind(),
                    e.to_string(),
                )
            })?;
            Ok(Outcome::ok(to_json(&GraphDocument::from_image(&img))))
        }
        Command::Recover { file } => {
            let doc: GraphDocument = read_json(&file)?;
            let q = recover_quotient(&doc.to_graph()).map_err(|e| {
                CliError::input(&file.display().to_string(), None, e.kind(), e.to_string())
            })?;
            Ok(Outcome::ok(to_json(&QuotientDocument::from_quotient(&q))))
        }
        Command::Canon { file } => {
            let et = load_instance(&file)?;
            Ok(Outcome::ok(equipped_code(&et).to_hex()))
        }
        Command::Iso {
            first,
            second,
            method,
        } => {
            let a = load_instance(&first)?;
            let b = load_instance(&second)?;
            let (isomorphic, witness) = match method {
                Method::Canon => (iso_decide(&a, &b), None),
                Method::Reduction => {
                    let r = iso_decide_via_reduction(&a, &b).map_err(|e| {
                        CliError::Internal(format!("reduction of a valid instance failed: {e}"))
                    })?;
                    (r, None)
                }
                Method::Brute => match iso_brute(&a, &b, BRUTE_LIMIT) {
                    Ok(w) => (w.is_some(), w.map(|w| w.mapping)),
                    Err(e @ IsoError::TooLarge { .. }) => {
                        return Err(CliError::input(
                            &first.display().to_string(),
                            Some("$.n".into()),
                            "TooLarge",
                            e.to_string(),
                        ))
                    }
                },
            };
            let body = match witness {
                Some(w) => json!({ "isomorphic": isomorphic, "witness": w }),
                None => json!({ "isomorphic": isomorphic }),
            };
            Ok(Outcome {
                stdout: to_json(&body),
                code: if isomorphic { 0 } else { 1 },
            })
        }
        Command::Report { file } => {
            let et = load_instance(&file)?;
            let r = ms_report(&et).map_err(|e| quotient_error(&file.display().to_string(), &e))?;
            let orbits: Vec<_> = r
                .saddle_orbits
                .iter()
                .map(|s| {
                    json!({
                        "edge": [s.edge.0, s.edge.1],
                        "color": s.color,
                        "type": s.tag,
                        "period": s.period,
                        "negative_orientation": s.negative_orientation,
                    })
                })
                .collect();
            Ok(Outcome::ok(to_json(&json!({
                "saddles": r.saddles,
                "domains": r.domains,
                "saddle_orbits": orbits,
                "negative_orientation_saddles": r.negative_orientation_saddles,
                "has_loop": r.has_loop,
            }))))
        }
        Command::Gen {
            n,
            k,
            seed,
            max_orbit,
            loop_prob,
            mode,
            out,
        } => {
            let mode = match mode {
                ModeArg::Generic => ModeDoc::Generic,
                ModeArg::MorseSmale => ModeDoc::MorseSmale,
            };
            let spec = GenSpec {
                n,
                k,
                max_orbit,
                seed,
                loop_prob,
                mode: Mode::from(mode),
            };
            let et = gen_equipped(&spec)
                .map_err(|e| CliError::input("arguments", None, "InfeasibleSpec", e.to_string()))?;
            let text = to_json(&InstanceDocument::from_equipped(&et));
            match out {
                Some(path) => {
                    std::fs::write(&path, text + "\n").map_err(|e| {
                        CliError::input(&path.display().to_string(), None, "Io", e.to_string())
                    })?;
                    Ok(Outcome {
                        stdout: String::new(),
                        code: 0,
                    })
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Bench {
            sizes,
            trials,
            seed,
        } => {
            if sizes.windows(2).any(|w| w[0] > w[1]) || sizes.contains(&0) || trials == 0 {
                return Err(CliError::input(
                    "arguments",
                    None,
                    "InvalidArgument",
                    "sizes must be positive and ascending, trials at least 1",
                ));
            }
            let report = bench(&sizes, trials, seed);
            let mut text = report.to_csv();
            text.push_str(&report.summary());
            Ok(Outcome::ok(text))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    panic::set_hook(Box::new(|info| {
        eprintln!("internal error: {info}");
    }));
    let result = panic::catch_unwind(AssertUnwindSafe(|| run(cli.command)));
    match result {
        Ok(Ok(outcome)) => {
            if !outcome.stdout.is_empty() {
                let mut out = std::io::stdout().lock();
                let _ = writeln!(out, "{}", outcome.stdout);
            }
            ExitCode::from(outcome.code)
        }
        Ok(Err(e)) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => ExitCode::from(3),
    }
}
