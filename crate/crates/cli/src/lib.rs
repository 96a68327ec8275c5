//! The `maxsub` command line.
//!
//! Results go to stdout, diagnostics to stderr. Exit status is 0 on success,
//! 1 for domain errors and 2 for usage or parse errors.

use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maxsub_core::formulas;
use maxsub_core::pipeline::{consistency_checks, count_maximal_subbundles};
use maxsub_core::presets;
use maxsub_core::ring::{load_presentation, GradedElement, RingPresentation};
use maxsub_core::scalar::fmt_rational;
use maxsub_core::Error;
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "maxsub",
    version,
    about = "Exact counts of maximal subbundles on curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Record,
}

#[derive(Args, Debug)]
struct PresetArgs {
    /// Built-in preset: g2-rank2 or jacobian.
    #[arg(long)]
    preset: String,
    /// Genus of the curve (required for jacobian).
    #[arg(long)]
    genus: Option<u32>,
}

#[derive(Args, Debug)]
struct RingArgs {
    /// Presentation file. A built-in name such as `g2-rank2.ring` or
    /// `jacobian-g3.ring` is accepted when no such file exists.
    #[arg(long)]
    ring: String,
    /// Expression in the generators and parameters.
    expr: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count maximal subbundles for a preset.
    Count {
        #[command(flatten)]
        preset: PresetArgs,
        /// Also print the intermediate characters and classes.
        #[arg(long)]
        verbose: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the normal form of an expression.
    Reduce(RingArgs),
    /// Integrate an expression over the base.
    Integrate(RingArgs),
    /// Closed-form invariants.
    Formulas {
        #[command(subcommand)]
        formula: Formula,
        #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
        format: Format,
    },
    /// Run the consistency suite of a preset.
    Check(PresetArgs),
}

#[derive(Subcommand, Debug)]
enum Formula {
    /// s(E, E') = n'd - nd'.
    SInvariant {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        sub_rank: i64,
        #[arg(long, allow_hyphen_values = true)]
        sub_degree: i64,
    },
    /// Generic value of s_{n'}(E).
    HirschowitzSmax {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        sub_rank: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        genus: i64,
    },
    /// Dimension of the stratum with s_{n'}(E) = s.
    StratumDim {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        sub_rank: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        genus: i64,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
    },
    /// Expected dimension of a Quot scheme of subsheaves.
    QuotDim {
        #[arg(long, allow_hyphen_values = true)]
        n_g: i64,
        #[arg(long, allow_hyphen_values = true)]
        d_g: i64,
        #[arg(long, allow_hyphen_values = true)]
        n_q: i64,
        #[arg(long, allow_hyphen_values = true)]
        d_q: i64,
        #[arg(long, allow_hyphen_values = true)]
        genus: i64,
    },
    /// Number of maximal line subbundles, n^g.
    M1 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        genus: u32,
    },
    /// Number of rank-2 maximal subbundles in genus 2.
    M2 {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
    /// A report that belongs on stdout but signals failure.
    Report(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_syntax() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = write!(out, "{text}");
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Report(text)) => {
            let _ = write!(out, "{text}");
            let _ = writeln!(err, "error: consistency checks failed");
            EXIT_DOMAIN
        }
    }
}

fn dispatch(command: Command) -> Result<String, Failure> {
    match command {
        Command::Count {
            preset,
            verbose,
            format,
        } => {
            let p = presets::by_name(&preset.preset, preset.genus)?;
            let result = count_maximal_subbundles(&p)?;
            Ok(match format {
                Format::Text => result.to_text(verbose),
                Format::Record => {
                    record(&serde_json::to_value(result.to_record()).expect("serialisable"))
                }
            })
        }
        Command::Reduce(args) => {
            let ring = open_ring(&args.ring)?;
            let x = GradedElement::parse(&ring, &args.expr)?;
            Ok(format!("{x}\n"))
        }
        Command::Integrate(args) => {
            let ring = open_ring(&args.ring)?;
            let x = GradedElement::parse(&ring, &args.expr)?;
            Ok(format!("{}\n", x.integrate()?))
        }
        Command::Formulas { formula, format } => run_formula(formula, format),
        Command::Check(preset) => {
            let p = presets::by_name(&preset.preset, preset.genus)?;
            let checks = consistency_checks(&p)?;
            let mut text = String::new();
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("{status} {}: {}\n", c.name, c.detail));
            }
            if checks.iter().all(|c| c.passed) {
                Ok(text)
            } else {
                Err(Failure::Report(text))
            }
        }
    }
}

fn record(value: &serde_json::Value) -> String {
    format!(
        "{}\n",
        serde_json::to_string_pretty(value).expect("serialisable")
    )
}

fn open_ring(spec: &str) -> Result<Arc<RingPresentation>, Failure> {
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read `{spec}`: {e}")))?;
        return load_presentation(&text).map_err(|e| with_file(spec, e));
    }
    let stem = spec.strip_suffix(".ring").unwrap_or(spec);
    if stem == "g2-rank2" {
        return Ok(presets::g2_rank2()?.ring().clone());
    }
    if let Some(g) = stem.strip_prefix("jacobian-g").and_then(|g| g.parse().ok()) {
        return Ok(presets::jacobian(g)?.ring().clone());
    }
    Err(Failure::Usage(format!("no such ring file `{spec}`")))
}

fn with_file(file: &str, e: Error) -> Failure {
    match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{file}: {m}")),
        Failure::Domain(m) => Failure::Domain(format!("{file}: {m}")),
        other => other,
    }
}

fn run_formula(formula: Formula, format: Format) -> Result<String, Failure> {
    let (name, value) = match formula {
        Formula::SInvariant {
            n,
            d,
            sub_rank,
            sub_degree,
        } => (
            "s_invariant",
            json!(formulas::s_invariant(n, d, sub_rank, sub_degree)?),
        ),
        Formula::HirschowitzSmax {
            n,
            sub_rank,
            d,
            genus,
        } => (
            "hirschowitz_smax",
            json!(formulas::hirschowitz_smax(n, sub_rank, d, genus)?),
        ),
        Formula::StratumDim {
            n,
            sub_rank,
            d,
            genus,
            s,
        } => (
            "stratum_dim",
            json!(formulas::stratum_dim(n, sub_rank, d, genus, s)?),
        ),
        Formula::QuotDim {
            n_g,
            d_g,
            n_q,
            d_q,
            genus,
        } => (
            "quot_dim",
            json!(formulas::quot_dim(n_g, d_g, n_q, d_q, genus)?),
        ),
        Formula::M1 { n, genus } => (
            "m1_closed",
            json!(formulas::m1_closed(n, genus).to_string()),
        ),
        Formula::M2 { n } => {
            let r = formulas::m2_closed(n);
            let value = fmt_rational(&r.value);
            return Ok(match format {
                Format::Text => format!(
                    "{value}\nadmissible: {}\n",
                    if r.admissible { "yes" } else { "no" }
                ),
                Format::Record => record(&json!({
                    "formula": "m2_closed",
                    "n": n,
                    "value": value,
                    "induced_degree": fmt_rational(&r.induced_degree),
                    "admissible": r.admissible,
                })),
            });
        }
    };
    Ok(match format {
        Format::Text => match &value {
            serde_json::Value::String(s) => format!("{s}\n"),
            v => format!("{v}\n"),
        },
        Format::Record => record(&json!({ "formula": name, "value": value })),
    })
}
