//! The `arclimit` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corpus;
use crate::decider::{decide, ArcVerdict, Outcome, DEFAULT_DEPTH};
use crate::dynamics::fixed_set;
use crate::error::Error;
use crate::format::{read_certificate, read_plmap, write_certificate, write_plmap};
use crate::interval::IntervalQ;
use crate::invlim::{endpoint_test, project, EndpointVerdict};
use crate::plmap::PLMap;
use crate::render::{render_csv, render_svg};
use crate::report::write_report;
use crate::rational::{fmt_frac, parse, Rational};
use crate::splitting::{certificate_from_period_gt2, pair_certificate_search, verify_certificate, DEFAULT_K_MAX};

pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "arclimit", version, about = "Exact arc tests for inverse limits of piecewise-linear interval maps")]
struct Cli {
    /// Exit with status 3 when a verdict is UNDECIDED.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Budget {
    /// Largest certificate order searched.
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    kmax: usize,
    /// Replay length used to check certificates.
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print an arcreport for a map.
    Analyze {
        map: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Decide whether the inverse limit is an arc; writes the certificate on NOT_ARC.
    Decide {
        map: String,
        #[command(flatten)]
        budget: Budget,
        /// Where to write the certificate.
        #[arg(long, default_value = "cert.txt")]
        cert: PathBuf,
    },
    /// Search for a splitting certificate only.
    Certify {
        map: String,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        kmax: usize,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a certificate; exit 0 iff it is valid.
    Verify {
        map: String,
        cert: PathBuf,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Print the forward orbit of a point.
    Orbit {
        map: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        steps: usize,
    },
    /// Write a coordinate projection of the graph complex.
    Project {
        map: String,
        #[arg(long)]
        depth: usize,
        /// Comma-separated coordinate indices, two or three of them.
        #[arg(long)]
        axes: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = PlotFormat::Csv)]
        format: PlotFormat,
        /// Decimal places in CSV output.
        #[arg(long, default_value_t = 6)]
        places: usize,
    },
    /// Finite-depth endpoint test at the backward orbit of a point.
    Crooked {
        map: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        eps: String,
    },
    /// Built-in example maps.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    List,
    Emit {
        name: String,
        #[arg(long)]
        notches: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PlotFormat {
    Csv,
    Svg,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_INVALID, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_INVALID, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, message: message.into() }
}

/// `corpus:<name>` or a path to a `plmap v1` file.
pub fn load_map(source: &str) -> Result<PLMap, Error> {
    match source.strip_prefix("corpus:") {
        Some(name) => corpus::lookup(name),
        None => {
            let text = fs::read_to_string(source)
                .map_err(|e| Error::PreconditionViolated(format!("cannot read {source}: {e}")))?;
            read_plmap(&text)
        }
    }
}

fn rational_arg(name: &str, s: &str) -> Result<Rational, Failure> {
    parse(s).ok_or_else(|| invalid(format!("--{name}: bad rational `{s}`")))
}

fn undecided_code(strict: bool, v: &ArcVerdict) -> i32 {
    if strict && v.outcome == Outcome::Undecided {
        EXIT_UNDECIDED
    } else {
        0
    }
}

/// Runs one command line; returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let first = e.to_string().lines().next().unwrap_or("invalid arguments").to_string();
                    let _ = writeln!(err, "{first}");
                    EXIT_INVALID
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Analyze { map, budget } => {
            let f = load_map(&map)?;
            let v = decide(&f, budget.kmax, budget.depth)?;
            write!(out, "{}", write_report(&f, &v, None)?)?;
            Ok(undecided_code(cli.strict, &v))
        }
        Command::Decide { map, budget, cert } => {
            let f = load_map(&map)?;
            let v = decide(&f, budget.kmax, budget.depth)?;
            let path = match &v.certificate {
                Some(c) => {
                    fs::write(&cert, write_certificate(c))?;
                    Some(cert.display().to_string())
                }
                None => None,
            };
            write!(out, "{}", write_report(&f, &v, path.as_deref())?)?;
            Ok(undecided_code(cli.strict, &v))
        }
        Command::Certify { map, kmax, out: path } => {
            let f = load_map(&map)?;
            let found = match pair_certificate_search(&f, kmax)? {
                Some(c) => Some(c),
                None => certificate_from_period_gt2(&f)?,
            };
            match found {
                Some(c) => {
                    let text = write_certificate(&c);
                    match path {
                        Some(p) => {
                            fs::write(&p, text)?;
                            writeln!(out, "certificate {}", p.display())?;
                        }
                        None => write!(out, "{text}")?,
                    }
                    Ok(0)
                }
                None => {
                    writeln!(out, "no certificate for k <= {kmax}")?;
                    Ok(if cli.strict { EXIT_UNDECIDED } else { 0 })
                }
            }
        }
        Command::Verify { map, cert, terms } => {
            let f = load_map(&map)?;
            let text = fs::read_to_string(&cert)?;
            let c = read_certificate(&text)?;
            match verify_certificate(&f, &c, terms) {
                Ok(trace) => {
                    writeln!(out, "valid k={} terms={} witnesses={}", c.k, trace.tight.terms.len(), trace.witnesses.len())?;
                    Ok(0)
                }
                Err(Error::ReplayFailure { step, condition }) => Err(Failure {
                    code: EXIT_VERIFY_FAILED,
                    message: format!("invalid at step {step}: {condition}"),
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::Orbit { map, x, steps } => {
            let f = load_map(&map)?;
            let mut x = rational_arg("x", &x)?;
            writeln!(out, "{}", fmt_frac(&x))?;
            for _ in 0..steps {
                x = f.eval(&x)?;
                writeln!(out, "{}", fmt_frac(&x))?;
            }
            Ok(0)
        }
        Command::Project { map, depth, axes, out: path, format, places } => {
            let f = load_map(&map)?;
            let axes: Vec<usize> = axes
                .split(',')
                .map(|a| a.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| invalid(format!("--axes: expected indices like 1,0, got `{axes}`")))?;
            let lines = project(&f, depth, &axes)?;
            let text = match format {
                PlotFormat::Csv => render_csv(&lines, places),
                PlotFormat::Svg if axes.len() == 2 => render_svg(&lines),
                PlotFormat::Svg => return Err(invalid("svg output takes exactly two axes")),
            };
            fs::write(&path, text)?;
            writeln!(out, "wrote {} polylines to {}", lines.len(), path.display())?;
            Ok(0)
        }
        Command::Crooked { map, p, depth, eps } => {
            let f = load_map(&map)?;
            let p = rational_arg("p", &p)?;
            let eps = rational_arg("eps", &eps)?;
            let orbit = backward_orbit(&f, p, 2 * depth.max(1))?;
            match endpoint_test(&f, &orbit, depth, &eps)? {
                EndpointVerdict::Pass { checked } => writeln!(out, "pass checked={checked}")?,
                EndpointVerdict::Fail(w) => {
                    let j = w.j_nk.as_ref().map_or_else(|| "none".to_string(), IntervalQ::to_string);
                    writeln!(out, "fail n={} J_n={} k={} J_n+k={}", w.n, w.j_n, w.k, j)?
                }
            }
            Ok(0)
        }
        Command::Corpus { action: CorpusAction::List } => {
            for e in corpus::entries(3) {
                let expected = e.expected.map_or("-", |o| o.label());
                writeln!(out, "{:<12} {:<9} {}", e.name, expected, e.note)?;
            }
            writeln!(out, "{:<12} {:<9} any notch count; surrogate only", "henderson:<N>", "-")?;
            Ok(0)
        }
        Command::Corpus { action: CorpusAction::Emit { name, notches } } => {
            let f = match (name.as_str(), notches) {
                ("henderson", Some(n)) => corpus::henderson_approximant(n)?,
                (_, Some(_)) => return Err(invalid("--notches applies to henderson only")),
                (n, None) => corpus::lookup(n)?,
            };
            write!(out, "{}", write_plmap(&f))?;
            Ok(0)
        }
    }
}

/// `p_0 = p` and `p_{i+1}` the least preimage of `p_i`; constant when `p`
/// is fixed.
fn backward_orbit(f: &PLMap, p: Rational, len: usize) -> Result<Vec<Rational>, Failure> {
    if !IntervalQ::unit().contains(&p) {
        return Err(Error::DomainError(p).into());
    }
    if fixed_set(f).contains(&p) {
        return Ok(vec![p; len]);
    }
    let mut orbit = vec![p];
    while orbit.len() < len {
        let last = IntervalQ::point(orbit.last().unwrap().clone())?;
        let pre = f.preimage_components(&last);
        let next = pre.first().ok_or(Error::NotSurjective)?.lo().clone();
        orbit.push(next);
    }
    Ok(orbit)
}
