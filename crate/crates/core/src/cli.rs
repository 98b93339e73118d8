//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a claim failed or an internal error occurred,
//! 2 usage error or unsupported parameters, 3 enumeration size guard hit.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::agcode::LinearCode;
use crate::curve::{HermitianCurve, OrbitSpec};
use crate::error::Error;
use crate::verify::{counts_json, ClaimReport, Status, Verifier};
use crate::weights::{self, Method};

/// Field sizes covered by `--suite all`.
pub const SUITE_QS: [u32; 5] = [3, 4, 5, 7, 8];

/// Orbit-choice comparisons are limited to codes with at most this many
/// scalar-normalized messages.
const ORBIT_CHOICE_LIMIT: u128 = 1 << 24;

#[derive(Debug, Parser)]
#[command(name = "hermicode", version, about = "Cyclic AG codes on the Hermitian curve")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the rational points, the chord and the canonical orbit.
    Points {
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Export the generator matrix.
    Build {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Compute the weight enumerator.
    Weights {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value = "auto")]
        method: Method,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        output: Output,
    },
    /// Check code parameters against their closed forms.
    Verify {
        #[arg(long, required_unless_present = "suite", conflicts_with = "suite")]
        q: Option<u32>,
        #[arg(long, requires = "q")]
        m: Option<usize>,
        #[arg(long)]
        suite: Option<Suite>,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        output: Output,
    },
    /// Consolidated enumerators and claim statuses; deterministic output.
    Report {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub m: usize,
    /// Orbit base point as two element encodings "u,v".
    #[arg(long, value_parser = parse_pair)]
    pub base: Option<(u32, u32)>,
}

#[derive(Debug, Args)]
pub struct Jobs {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "HERMICODE_JOBS")]
    pub jobs: Option<usize>,
}

impl Jobs {
    fn get(&self) -> usize {
        self.jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or("expected \"u,v\"")?;
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| e.to_string());
    Ok((parse(a)?, parse(b)?))
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(std::io::Error),
    Claims(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return e.exit_code();
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Lib(e) => (exit_code(&e), e.to_string()),
                Failure::Io(e) => (1, e.to_string()),
                Failure::Claims(n) => (1, format!("{n} claim(s) failed")),
            };
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotPrime(_)
        | Error::FieldSizeOutOfRange { .. }
        | Error::MultiplicityOutOfRange { .. }
        | Error::InvalidBasePoint(_) => 2,
        Error::SizeGuard { .. } => 3,
        _ => 1,
    }
}

fn execute(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Points { q, output } => {
            let curve = HermitianCurve::with_q(q)?;
            let text = match output.format {
                Format::Json => to_json(&points_json(&curve)),
                Format::Csv => points_csv(&curve),
            };
            emit(&output, &text, stdout)
        }
        Command::Build { code, output } => {
            let code = build_code(&code)?;
            let export = code.export();
            let text = match output.format {
                Format::Json => to_json(&export),
                Format::Csv => export.to_csv(),
            };
            emit(&output, &text, stdout)
        }
        Command::Weights {
            code,
            method,
            jobs,
            output,
        } => {
            let code = build_code(&code)?;
            let method = weights::resolve_method(&code, method);
            let start = Instant::now();
            let we = weights::weight_enumerator(&code, method, jobs.get())?;
            let elapsed_ms = start.elapsed().as_millis() as u64;
            let text = match output.format {
                Format::Json => to_json(&json!({
                    "q": code.q(),
                    "m": code.m(),
                    "n": code.n(),
                    "k": code.k(),
                    "counts": counts_json(&we.counts),
                    "method": method,
                    "elapsed_ms": elapsed_ms,
                })),
                Format::Csv => {
                    let mut s = String::from("weight,count\n");
                    for (w, c) in &we.counts {
                        s += &format!("{w},{c}\n");
                    }
                    s
                }
            };
            emit(&output, &text, stdout)
        }
        Command::Verify {
            q,
            m,
            suite,
            jobs,
            output,
        } => {
            let mut v = Verifier::new(jobs.get());
            let qs = match (q, suite) {
                (Some(q), _) => vec![q],
                _ => SUITE_QS.to_vec(),
            };
            let mut claims = Vec::new();
            for q in qs {
                claims.extend(v.suite(q, m)?);
            }
            let text = match output.format {
                Format::Json => to_json(&json!({ "claims": claims })),
                Format::Csv => claims_csv(&claims),
            };
            emit(&output, &text, stdout)?;
            check_claims(&claims)
        }
        Command::Report {
            suite: Suite::All,
            jobs,
            output,
        } => {
            let start = Instant::now();
            let report = report_all(jobs.get())?;
            let claims: Vec<ClaimReport> = serde_json::from_value(report["claims"].clone())
                .expect("claims round-trip");
            let text = match output.format {
                Format::Json => to_json(&report),
                Format::Csv => claims_csv(&claims),
            };
            emit(&output, &text, stdout)?;
            let _ = writeln!(stderr, "elapsed_ms: {}", start.elapsed().as_millis());
            check_claims(&claims)
        }
    }
}

fn check_claims(claims: &[ClaimReport]) -> Result<(), Failure> {
    let failed = claims.iter().filter(|c| c.status == Status::Fail).count();
    if failed > 0 {
        Err(Failure::Claims(failed))
    } else {
        Ok(())
    }
}

fn build_code(args: &CodeArgs) -> Result<LinearCode, Error> {
    let curve = HermitianCurve::with_q(args.q)?;
    crate::rrspace::check_multiplicity(args.q, args.m)?;
    let spec = match args.base {
        None => curve.canonical_orbit_spec(),
        Some((u, v)) => {
            let f = curve.field();
            let el = |e: u32| {
                f.element(e)
                    .ok_or_else(|| Error::InvalidBasePoint(format!("{e} is not a field element")))
            };
            OrbitSpec::new(f, el(u)?, el(v)?)?
        }
    };
    LinearCode::build(&curve, args.m, spec)
}

/// Sorted-key pretty JSON with a trailing newline.
fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn emit(output: &Output, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn points_json(curve: &HermitianCurve) -> Value {
    let f = curve.field();
    let spec = curve.canonical_orbit_spec();
    let encs = |pts: &[crate::curve::CurvePoint]| -> Vec<[u32; 3]> { pts.iter().map(|p| p.encs()).collect() };
    json!({
        "q": f.q(),
        "p": f.p(),
        "k_ext": f.k(),
        "irreducible": f.irreducible(),
        "omega": f.omega().enc(),
        "points": encs(&curve.points()),
        "chord": encs(&curve.chord_points()),
        "orbit": {
            "base_point": [spec.u.enc(), spec.v.enc()],
            "tau": spec.tau.enc(),
            "points": encs(&curve.orbit_of(&spec)),
        },
        "orbit_representatives": curve
            .orbit_representatives()
            .iter()
            .map(|s| [s.u.enc(), s.v.enc()])
            .collect::<Vec<_>>(),
    })
}

fn points_csv(curve: &HermitianCurve) -> String {
    let mut s = String::from("x1,x2,x3\n");
    for p in curve.points() {
        let [a, b, c] = p.encs();
        s += &format!("{a},{b},{c}\n");
    }
    s
}

fn claims_csv(claims: &[ClaimReport]) -> String {
    let mut s = String::from("claim_id,q,m,status,expected,observed\n");
    for c in claims {
        let m = c.m.map_or(String::new(), |m| m.to_string());
        let quote = |v: &Value| format!("\"{}\"", v.to_string().replace('"', "\"\""));
        s += &format!(
            "{},{},{},{},{},{}\n",
            c.claim_id,
            c.q,
            m,
            c.status,
            quote(&c.expected),
            quote(&c.observed)
        );
    }
    s
}

/// Enumerators for m = 2, 3 over [`SUITE_QS`], orbit-choice comparisons and
/// every claim. Contains no timings, so it is byte-stable across job counts.
pub fn report_all(jobs: usize) -> Result<Value, Error> {
    let mut v = Verifier::new(jobs);
    let mut claims = Vec::new();
    for q in SUITE_QS {
        claims.extend(v.suite(q, None)?);
    }

    let mut enumerators = Vec::new();
    for q in SUITE_QS {
        for m in 2..=3.min(q as usize - 1) {
            let e = v.enumerate(q, m)?;
            let we = &e.enumerator;
            enumerators.push(json!({
                "q": q,
                "m": m,
                "n": e.code.n(),
                "k": e.code.k(),
                "method": e.method,
                "d": we.min_distance(),
                "counts": counts_json(&we.counts),
            }));
        }
    }

    let mut orbit_choices = Vec::new();
    for q in SUITE_QS {
        let curve = v.curve(q)?;
        for m in 2..q as usize {
            let k = (m * (m - 1) / 2 + 1) as u32;
            let order = (q as u128).pow(2);
            if order.saturating_pow(k) / (order - 1) > ORBIT_CHOICE_LIMIT {
                continue;
            }
            let mut tables = Vec::new();
            for spec in curve.orbit_representatives() {
                let code = LinearCode::build(&curve, m, spec)?;
                let we = weights::weight_enumerator(&code, Method::Auto, jobs)?;
                tables.push((spec, we));
            }
            let all_equal = tables.windows(2).all(|w| w[0].1 == w[1].1);
            orbit_choices.push(json!({
                "q": q,
                "m": m,
                "base_points": tables.iter().map(|(s, _)| [s.u.enc(), s.v.enc()]).collect::<Vec<_>>(),
                "all_equal": all_equal,
            }));
        }
    }

    Ok(json!({
        "suite": "all",
        "qs": SUITE_QS,
        "enumerators": enumerators,
        "orbit_choices": orbit_choices,
        "claims": claims,
    }))
}
