//! Command-line front end. [`run`] is pure (arguments in, text and exit
//! status out) so it can be tested without spawning a process.
//!
//! Exit status: 0 on success, 1 when a check finds a mismatch, 2 on usage
//! or input errors.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::euclid_group::PlatycosmPresentation;
use crate::exact::{self, Rat, Q};
use crate::geodesics;
use crate::selberg::{self, format_real, HeatTraceConfig};
use crate::spectrum::{self, IsospectralVerdict, SpectrumTable};

pub const WORKERS_ENV: &str = "PLATYCOSM_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "platycosm", version, about = "Spectra, twisted geodesics and heat traces of flat 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Space {
    /// Built-in space: cubical_torocosm, two_tall, tetra or didi.
    #[arg(long, conflicts_with = "space_file")]
    space: Option<String>,
    /// JSON file describing a space.
    #[arg(long)]
    space_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Pair {
    #[arg(long, conflicts_with = "left_file")]
    left: Option<String>,
    #[arg(long)]
    left_file: Option<PathBuf>,
    #[arg(long, conflicts_with = "right_file")]
    right: Option<String>,
    #[arg(long)]
    right_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Times {
    /// A single heat time.
    #[arg(long, conflicts_with = "t_grid")]
    t: Option<f64>,
    /// Comma-separated heat times.
    #[arg(long, value_delimiter = ',')]
    t_grid: Option<Vec<f64>>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalue multiplicities up to a norm key (eigenvalue = π²·key).
    Spectrum {
        #[command(flatten)]
        space: Space,
        /// Circle R/cZ instead of a 3-manifold.
        #[arg(long, conflicts_with_all = ["space", "space_file"])]
        circle: Option<String>,
        #[arg(long)]
        max_key: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Twisted closed geodesics up to a length.
    Geodesics {
        #[command(flatten)]
        space: Space,
        /// Decimal or p/q.
        #[arg(long)]
        max_length: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Twisted-geodesic weights of two spaces, length by length.
    Balance {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        max_length: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Spectral and geometric heat traces.
    HeatTrace {
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        times: Times,
        #[arg(long, default_value_t = 1e-10)]
        eps: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact comparison of two spectra.
    Verify {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        max_key: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// K_Tetra − ¼K_TwoTall against K_{R/½Z} − ¼K_{R/2Z}.
    Exercise {
        #[command(flatten)]
        times: Times,
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        CliOutput {
            status: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(message: impl std::fmt::Display) -> Self {
        CliOutput {
            status: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

struct Failure(String);

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(bool, String), Failure>;

fn load(name: &Option<String>, file: &Option<PathBuf>, flag: &str) -> Result<PlatycosmPresentation, Failure> {
    match (name, file) {
        (Some(n), None) => Ok(PlatycosmPresentation::preset(n)?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
            Ok(PlatycosmPresentation::from_json(&text)?)
        }
        _ => Err(Failure(format!("exactly one of --{flag} or --{flag}-file is required"))),
    }
}

fn positive_rational(text: &str, flag: &str) -> Result<Q, Failure> {
    let x = exact::parse_rational(text)?;
    if x <= Q::from_integer(0) {
        return Err(Failure(format!("--{flag} must be positive, got {text}")));
    }
    Ok(x)
}

fn times(t: &Times) -> Result<Vec<f64>, Failure> {
    let list = match (&t.t, &t.t_grid) {
        (Some(x), None) => vec![*x],
        (None, Some(g)) if !g.is_empty() => g.clone(),
        _ => return Err(Failure("one of --t or --t-grid is required".into())),
    };
    if let Some(bad) = list.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Failure(format!("heat times must be positive, got {bad}")));
    }
    Ok(list)
}

fn render(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

fn table_json(name: &str, table: &SpectrumTable) -> Value {
    json!({
        "space": name,
        "max_key": table.max_key(),
        "entries": table.entries().iter().map(|(k, m)| [*k, *m]).collect::<Vec<_>>(),
    })
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Spectrum {
            space,
            circle,
            max_key,
            format,
        } => {
            let (name, table) = match circle {
                Some(c) => {
                    let c = positive_rational(&c, "circle")?;
                    (format!("circle:{}", Rat(&c)), spectrum::circle_spectrum(c, max_key)?)
                }
                None => {
                    let p = load(&space.space, &space.space_file, "space")?;
                    (p.name().to_string(), spectrum::spectrum_table(&p, max_key)?)
                }
            };
            Ok((
                true,
                match format {
                    Format::Json => render(table_json(&name, &table)),
                    Format::Csv => table.to_csv(),
                },
            ))
        }
        Command::Geodesics {
            space,
            max_length,
            format,
        } => {
            let p = load(&space.space, &space.space_file, "space")?;
            let lmax = positive_rational(&max_length, "max-length")?;
            let classes = geodesics::twisted_classes(&p, lmax)?;
            Ok((
                true,
                match format {
                    Format::Json => render(json!({
                        "space": p.name(),
                        "max_length": Rat(&lmax).to_string(),
                        "classes": geodesics::classes_to_json(&classes)?,
                    })),
                    Format::Csv => geodesics::classes_to_csv(&classes)?,
                },
            ))
        }
        Command::Balance {
            pair,
            max_length,
            format,
        } => {
            let left = load(&pair.left, &pair.left_file, "left")?;
            let right = load(&pair.right, &pair.right_file, "right")?;
            let lmax = positive_rational(&max_length, "max-length")?;
            let table = geodesics::balance_table(&left, &right, lmax)?;
            Ok((
                table.is_balanced(),
                match format {
                    Format::Json => render(table.to_json()),
                    Format::Csv => table.to_csv(),
                },
            ))
        }
        Command::HeatTrace {
            space,
            times: ts,
            eps,
            format,
        } => {
            let p = load(&space.space, &space.space_file, "space")?;
            let mut rows = Vec::new();
            for t in times(&ts)? {
                let cfg = HeatTraceConfig::new(t, eps);
                let spec = selberg::spectral_heat_trace(&p, &cfg)?;
                let geom = selberg::geometric_heat_trace(&p, &cfg)?;
                rows.push((t, spec.value, geom.value, (spec.value - geom.value).abs(), spec.bound + geom.bound));
            }
            let agree = rows.iter().all(|r| r.3 <= r.4);
            let out = match format {
                Format::Json => render(json!({
                    "space": p.name(),
                    "eps": format_real(eps),
                    "agree": agree,
                    "rows": rows.iter().map(|r| json!({
                        "t": format_real(r.0),
                        "spectral": format_real(r.1),
                        "geometric": format_real(r.2),
                        "abs_diff": format_real(r.3),
                        "bound": format_real(r.4),
                    })).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    let mut s = String::from("t,spectral,geometric,abs_diff,bound\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{},{},{},{},{}\n",
                            format_real(r.0),
                            format_real(r.1),
                            format_real(r.2),
                            format_real(r.3),
                            format_real(r.4)
                        ));
                    }
                    s
                }
            };
            Ok((agree, out))
        }
        Command::Verify { pair, max_key, format } => {
            let left = load(&pair.left, &pair.left_file, "left")?;
            let right = load(&pair.right, &pair.right_file, "right")?;
            let verdict = spectrum::is_isospectral(&left, &right, max_key)?;
            let (word, key, lm, rm) = match verdict {
                IsospectralVerdict::Equal => ("equal", None, None, None),
                IsospectralVerdict::Differs { key, left, right } => ("differs", Some(key), Some(left), Some(right)),
            };
            let out = match format {
                Format::Json => render(json!({
                    "left": left.name(),
                    "right": right.name(),
                    "max_key": max_key,
                    "verdict": word,
                    "key": key,
                    "left_multiplicity": lm,
                    "right_multiplicity": rm,
                })),
                Format::Csv => {
                    let cell = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_default();
                    format!(
                        "left,right,max_key,verdict,key,left_multiplicity,right_multiplicity\n{},{},{},{},{},{},{}\n",
                        left.name(),
                        right.name(),
                        max_key,
                        word,
                        cell(key),
                        cell(lm),
                        cell(rm)
                    )
                }
            };
            Ok((verdict == IsospectralVerdict::Equal, out))
        }
        Command::Exercise { times: ts, eps, format } => {
            let mut rows = Vec::new();
            for t in times(&ts)? {
                rows.push((t, selberg::exercise_identity(t, eps)?));
            }
            let holds = rows.iter().all(|(_, e)| e.residual().abs() <= e.bound);
            let out = match format {
                Format::Json => render(json!({
                    "eps": format_real(eps),
                    "holds": holds,
                    "rows": rows.iter().map(|(t, e)| json!({
                        "t": format_real(*t),
                        "lhs": format_real(e.lhs),
                        "rhs": format_real(e.rhs),
                        "residual": format_real(e.residual()),
                        "bound": format_real(e.bound),
                    })).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    let mut s = String::from("t,lhs,rhs,residual,bound\n");
                    for (t, e) in &rows {
                        s.push_str(&format!(
                            "{},{},{},{},{}\n",
                            format_real(*t),
                            format_real(e.lhs),
                            format_real(e.rhs),
                            format_real(e.residual()),
                            format_real(e.bound)
                        ));
                    }
                    s
                }
            };
            Ok((holds, out))
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    status: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput::ok(text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok((true, out)) => CliOutput::ok(out),
        Ok((false, out)) => CliOutput {
            status: 1,
            stdout: out,
            stderr: String::new(),
        },
        Err(Failure(msg)) => CliOutput::error(msg),
    }
}

/// Sizes the global worker pool from `PLATYCOSM_WORKERS`, then runs the
/// process arguments.
pub fn main() -> i32 {
    if let Ok(raw) = std::env::var(WORKERS_ENV) {
        match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    eprintln!("error: {e}");
                    return 2;
                }
            }
            _ => {
                eprintln!("error: {WORKERS_ENV} must be a positive integer, got {raw:?}");
                return 2;
            }
        }
    }
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.status
}
