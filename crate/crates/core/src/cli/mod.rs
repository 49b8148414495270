//! Command-line front end. Every command prints one JSON document carrying
//! `"schema": 1`, with rationals as `"p/q"` strings; `portrait` prints SVG.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 on domain errors.

mod portrait;
mod suite;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::families::{self, RootPattern, SearchConfig};
use crate::lienard::{bounds, certify, derive_system, HyperellipticCurve, LienardSystem};
use crate::polyx::{parse_poly, parse_rational, Poly};
use crate::recover::{recover_curve, RecoveryOutcome};
use crate::rootclass::{count_roots, discriminant_sequence, isolate_real_roots, revised_sign_list};

pub use portrait::{render_portrait, PortraitError, PortraitSpec, Window};
pub use suite::{random_system, run_suite, SuiteReport};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "lienard-cycles",
    version,
    about = "Exact hyperelliptic limit cycles of Liénard systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify the cycles carried by (y + P)^2 = Q.
    Certify {
        #[arg(
            long = "P",
            allow_hyphen_values = true,
            required_unless_present = "stdin"
        )]
        p: Option<String>,
        #[arg(
            long = "Q",
            allow_hyphen_values = true,
            required_unless_present = "stdin"
        )]
        q: Option<String>,
        /// Read a curve (or a construct result) as JSON from standard input.
        #[arg(long, conflicts_with_all = ["p", "q"])]
        stdin: bool,
    },
    /// Recover the hyperelliptic invariant curve of x' = y, y' = -f y - g.
    Reconstruct {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "stdin")]
        f: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "stdin")]
        g: Option<String>,
        #[arg(long, conflicts_with_all = ["f", "g"])]
        stdin: bool,
    },
    /// Build a system of type (m, n) realizing the lower bound.
    Construct {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// JSON root pattern for the case (i) template.
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Largest s tried by the doubling searches.
        #[arg(long = "s-cap")]
        s_cap: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Discriminant sequence, root counts and isolating intervals.
    Roots {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Known lower and upper bounds on the number of cycles for (m, n).
    Bounds {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// SVG phase portrait with the curve overlaid.
    Portrait {
        #[arg(long = "P", allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long = "Q", allow_hyphen_values = true, requires = "p")]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "p")]
        f: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "f")]
        g: Option<String>,
        #[arg(long, conflicts_with_all = ["p", "f"])]
        stdin: bool,
        /// x_min,x_max,y_min,y_max
        #[arg(long, allow_hyphen_values = true, default_value = "-5,5,-5,5")]
        window: String,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, default_value_t = 4000)]
        steps: usize,
        /// Trajectory seeds as x,y;x,y;...
        #[arg(long, allow_hyphen_values = true)]
        seeds: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Batch run of the construction families and negative controls.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain { kind: &'static str, message: String },
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(msg.to_string())
}

fn domain(kind: &'static str, msg: impl std::fmt::Display) -> Failure {
    Failure::Domain {
        kind,
        message: msg.to_string(),
    }
}

fn poly_arg(name: &str, text: &str) -> Result<Poly, Failure> {
    parse_poly(text).map_err(|e| usage(format!("--{name}: {e}")))
}

fn stamp<T: Serialize>(value: &T) -> Value {
    let mut v = serde_json::to_value(value).expect("report types serialize");
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    v
}

fn read_json(stdin: &mut dyn Read) -> Result<Value, Failure> {
    let mut text = String::new();
    stdin
        .read_to_string(&mut text)
        .map_err(|e| usage(format!("reading standard input: {e}")))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("standard input is not JSON: {e}")))
}

fn curve_from_json(v: &Value) -> Result<HyperellipticCurve, Failure> {
    let inner = v.get("curve").unwrap_or(v);
    serde_json::from_value(inner.clone()).map_err(|e| usage(format!("expected P and Q: {e}")))
}

fn system_from_json(v: &Value) -> Result<LienardSystem, Failure> {
    let inner = v.get("system").unwrap_or(v);
    serde_json::from_value(inner.clone()).map_err(|e| usage(format!("expected f and g: {e}")))
}

fn write_out(path: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| usage(format!("writing {}: {e}", p.display())))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("writing output: {e}"))),
    }
}

fn reconstruct_json(outcome: &RecoveryOutcome) -> Value {
    match outcome {
        RecoveryOutcome::Curve {
            curve,
            exact_match,
            schedule,
            branches,
        } => json!({
            "schema": SCHEMA,
            "P": curve.p,
            "Q": curve.q,
            "verified": exact_match,
            "schedule": schedule,
            "branches": branches,
        }),
        RecoveryOutcome::NoCurve { witness, branches } => json!({
            "schema": SCHEMA,
            "no_curve": true,
            "witness_degree": witness.degree,
            "witness": witness.to_string(),
            "branches": branches,
        }),
    }
}

fn parse_window(text: &str) -> Result<Window, Failure> {
    let parts: Vec<_> = text
        .split(',')
        .map(parse_rational)
        .collect::<Result<_, _>>()
        .map_err(usage)?;
    let [x_min, x_max, y_min, y_max]: [_; 4] = parts
        .try_into()
        .map_err(|_| usage("--window needs four values x_min,x_max,y_min,y_max"))?;
    Ok(Window {
        x_min,
        x_max,
        y_min,
        y_max,
    })
}

fn parse_seeds(text: &str) -> Result<Vec<(f64, f64)>, Failure> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (x, y) = pair
                .split_once(',')
                .ok_or_else(|| usage(format!("seed `{pair}` is not x,y")))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| usage(format!("bad seed `{pair}`")))
            };
            Ok((num(x)?, num(y)?))
        })
        .collect()
}

fn execute(cmd: Command, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<(), Failure> {
    let emit = |v: Value, out: &mut dyn Write| -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(&v).expect("JSON values print");
        writeln!(out, "{text}").map_err(|e| usage(format!("writing output: {e}")))
    };
    match cmd {
        Command::Certify {
            p,
            q,
            stdin: from_stdin,
        } => {
            let curve = if from_stdin {
                curve_from_json(&read_json(stdin)?)?
            } else {
                HyperellipticCurve::new(
                    poly_arg("P", p.as_deref().unwrap_or_default())?,
                    poly_arg("Q", q.as_deref().unwrap_or_default())?,
                )
            };
            let report = certify(&curve).map_err(|e| domain("NonPolynomialSystem", e))?;
            emit(stamp(&report), stdout)
        }
        Command::Reconstruct {
            f,
            g,
            stdin: from_stdin,
        } => {
            let sys = if from_stdin {
                system_from_json(&read_json(stdin)?)?
            } else {
                LienardSystem::new(
                    poly_arg("f", f.as_deref().unwrap_or_default())?,
                    poly_arg("g", g.as_deref().unwrap_or_default())?,
                )
            };
            let outcome = recover_curve(&sys).map_err(|e| {
                let kind = match e {
                    crate::recover::RecoverError::UndeterminedType { .. } => "UndeterminedType",
                    crate::recover::RecoverError::DegenerateLeadingCoefficient(_) => {
                        "DegenerateLeadingCoefficient"
                    }
                    crate::recover::RecoverError::InvalidSystem(_) => "InvalidSystem",
                    crate::recover::RecoverError::MultipleCurves(_) => "MultipleCurves",
                };
                domain(kind, e)
            })?;
            emit(reconstruct_json(&outcome), stdout)
        }
        Command::Construct {
            m,
            n,
            pattern,
            s_cap,
            seed,
        } => {
            let mut cfg = SearchConfig::default();
            if let Some(cap) = s_cap {
                cfg.s_cap = cap
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|_| usage(format!("--s-cap `{cap}` is not an integer")))?;
            }
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            let result = match pattern {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| usage(format!("reading {}: {e}", path.display())))?;
                    let pat: RootPattern = serde_json::from_str(&text)
                        .map_err(|e| usage(format!("pattern file: {e}")))?;
                    families::construct_case_i_with(m, n, &pat, &cfg)
                }
                None => families::construct(m, n, &cfg),
            };
            let result = result.map_err(|e| {
                let kind = match e {
                    families::FamilyError::Precondition(_) => "Precondition",
                    families::FamilyError::SearchExhausted { .. } => "SearchExhausted",
                    families::FamilyError::PatternNotAchieved(_) => "PatternNotAchieved",
                    families::FamilyError::Lienard(_) => "NonPolynomialSystem",
                    families::FamilyError::Defect(_) => "Defect",
                };
                domain(kind, e)
            })?;
            emit(stamp(&result), stdout)
        }
        Command::Roots { poly } => {
            let f = poly_arg("poly", &poly)?;
            let seq = discriminant_sequence(&f).map_err(|e| domain("DegreeZero", e))?;
            let count = count_roots(&f).map_err(|e| domain("DegreeZero", e))?;
            let signs = seq.sign_list();
            let revised = revised_sign_list(&signs);
            emit(
                json!({
                    "schema": SCHEMA,
                    "polynomial": f,
                    "discriminant_sequence": seq.values.iter().map(crate::polyx::rat_to_string).collect::<Vec<_>>(),
                    "sign_list": signs.signs,
                    "revised_sign_list": revised.signs,
                    "distinct_real": count.distinct_real,
                    "imaginary_pairs": count.imaginary_pairs,
                    "intervals": isolate_real_roots(&f),
                }),
                stdout,
            )
        }
        Command::Bounds { m, n } => {
            let b = bounds(m, n);
            let mut v = stamp(&b);
            v["m"] = json!(m);
            v["n"] = json!(n);
            emit(v, stdout)
        }
        Command::Portrait {
            p,
            q,
            f,
            g,
            stdin: from_stdin,
            window,
            step,
            steps,
            seeds,
            out,
        } => {
            let (system, curve) = if from_stdin {
                let v = read_json(stdin)?;
                let curve = curve_from_json(&v).ok();
                let system = match (system_from_json(&v), &curve) {
                    (Ok(s), _) => s,
                    (Err(_), Some(c)) => {
                        derive_system(c).map_err(|e| domain("NonPolynomialSystem", e))?
                    }
                    (Err(e), None) => return Err(e),
                };
                (system, curve)
            } else if let (Some(p), Some(q)) = (&p, &q) {
                let curve = HyperellipticCurve::new(poly_arg("P", p)?, poly_arg("Q", q)?);
                let sys = derive_system(&curve).map_err(|e| domain("NonPolynomialSystem", e))?;
                (sys, Some(curve))
            } else if let (Some(f), Some(g)) = (&f, &g) {
                (
                    LienardSystem::new(poly_arg("f", f)?, poly_arg("g", g)?),
                    None,
                )
            } else {
                return Err(usage("portrait needs --P/--Q, --f/--g or --stdin"));
            };
            let seeds = match seeds {
                Some(s) => parse_seeds(&s)?,
                None => Vec::new(),
            };
            let spec = PortraitSpec::new(system, curve, parse_window(&window)?, step, steps, seeds)
                .map_err(usage)?;
            write_out(&out, &render_portrait(&spec), stdout)
        }
        Command::Suite { seed, out } => {
            let report = run_suite(seed);
            let ok = report.all_passed;
            let text =
                serde_json::to_string_pretty(&stamp(&report)).expect("JSON values print") + "\n";
            write_out(&out, &text, stdout)?;
            if ok {
                Ok(())
            } else {
                Err(domain("SuiteFailure", "at least one suite job failed"))
            }
        }
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    1
                }
            };
        }
    };
    match execute(cli.command, stdin, stdout) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Domain { kind, message }) => {
            let v = json!({"schema": SCHEMA, "error": {"kind": kind, "message": message}});
            let _ = writeln!(
                stdout,
                "{}",
                serde_json::to_string_pretty(&v).expect("JSON values print")
            );
            let _ = writeln!(stderr, "error: {message}");
            2
        }
    }
}
