//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input or error, 2 inconclusive
//! certification or failed replay.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::derivation::{check_script, LemmaSet, ScriptLibrary};
use crate::error::{Error, Result};
use crate::normal_form::{eliminate_t, normal_form};
use crate::obstruction::{replay, Certification, Certifier, ObstructionCertificate, RefutationReason, TheoremParams};
use crate::presentation::{cable_presentation, peripheral_invariance_check, torus_presentation, CableMode};
use crate::slope::{beta_slope, lspace_window_check, Slope};
use crate::word::{Gen, Word};

pub const SCRIPT_DIR_VAR: &str = "CABLE_ORDER_SCRIPT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cable-order", version, about = "Non-left-orderability certificates for surgeries on cables of torus knots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the torus or cable knot group presentation.
    Present(PresentArgs),
    /// Certify that one surgery has a non-left-orderable group.
    Certify(CertifyArgs),
    /// Certify every point of a parameter grid.
    Sweep(SweepArgs),
    /// Cross-check the identities the certificates rely on.
    VerifyIdentities(IdentityArgs),
    /// Re-verify a certificate file.
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Args, Debug)]
pub struct PresentArgs {
    #[arg(long)]
    pub x: i64,
    #[arg(long)]
    pub y: i64,
    /// Cable parameter; omit for the torus knot group.
    #[arg(long)]
    pub p: Option<i64>,
    /// Defaults to p·x·y - 1.
    #[arg(long, requires = "p")]
    pub q: Option<i64>,
    /// Allow any q coprime to p.
    #[arg(long)]
    pub general: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub x: i64,
    #[arg(long)]
    pub y: i64,
    #[arg(long)]
    pub p: i64,
    /// Must equal p·x·y - 1 if given.
    #[arg(long)]
    pub q: Option<i64>,
    /// Certify the slope pq - 1/beta.
    #[arg(long, conflicts_with = "slope", required_unless_present = "slope")]
    pub beta: Option<i64>,
    /// Certify the slope M/N (or M).
    #[arg(long)]
    pub slope: Option<String>,
    /// Attempt slopes outside [pq - 1, pq]; the result is expected to be inconclusive.
    #[arg(long)]
    pub experimental: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Also write the certificate to this file.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// e.g. `x=2..5,y=2..5,p=2..3,beta=1..5` or `...,mode=slope`.
    #[arg(long)]
    pub grid: String,
    /// Directory for certificate files.
    #[arg(long, default_value = "certs")]
    pub out: PathBuf,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write the summary as JSON to this file.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct IdentityArgs {
    #[arg(long)]
    pub x: i64,
    #[arg(long)]
    pub y: i64,
    #[arg(long)]
    pub p: i64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReplayArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Script library honouring `CABLE_ORDER_SCRIPT_DIR`.
pub fn script_library() -> Result<ScriptLibrary> {
    match std::env::var_os(SCRIPT_DIR_VAR) {
        Some(dir) if !dir.is_empty() => ScriptLibrary::from_dir(Path::new(&dir)),
        _ => Ok(ScriptLibrary::builtin()),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Present(a) => present(a),
        Command::Certify(a) => certify(a),
        Command::Sweep(a) => sweep(a),
        Command::VerifyIdentities(a) => verify_identities(a),
        Command::Replay(a) => replay_cmd(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_ERROR
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::InvalidParams(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn present(a: PresentArgs) -> Result<i32> {
    let mode = if a.general { CableMode::General } else { CableMode::Theorem };
    let pres = match a.p {
        None => torus_presentation(a.x, a.y)?,
        Some(p) => {
            let q = match a.q {
                Some(q) => q,
                None => p * a.x * a.y - 1,
            };
            cable_presentation(a.x, a.y, p, q, mode)?
        }
    };
    let doc = pres.to_document();
    let json = to_json(&doc);
    if let Some(path) = &a.json {
        write_file(path, &json)?;
    }
    match a.format {
        Format::Json => println!("{json}"),
        Format::Human => {
            let mut out = String::new();
            let tb = pres.torus_bezout();
            let _ = writeln!(out, "generators: {}", pres.alphabet().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "));
            let _ = write!(out, "bezout: i = {}, j = {}", tb.i, tb.j);
            if let Some(cb) = pres.cable_bezout() {
                let _ = write!(out, ", u = {}, v = {}", cb.u, cb.v);
            }
            out.push('\n');
            for r in pres.relations() {
                let _ = writeln!(out, "relation {}: {} = {}", r.id, r.lhs, r.rhs);
            }
            for n in pres.named_elements() {
                let _ = writeln!(out, "{} = {} = {}", n.name, n.definition, n.word);
            }
            print!("{out}");
        }
    }
    Ok(EXIT_OK)
}

fn human_certificate(cert: &ObstructionCertificate) -> String {
    let mut out = String::new();
    let p = &cert.params;
    let _ = writeln!(out, "certified: ({},{})-torus knot, ({},{})-cable, slope {}", p.x, p.y, p.p, p.q, p.slope);
    if let Some(beta) = p.beta {
        let _ = writeln!(out, "beta = {beta}");
    }
    if let Some(c) = &cert.cramer {
        let _ = writeln!(out, "cramer: d0 = {}, d1 = {}, d = {}", c.d0, c.d1, c.d);
    }
    let _ = writeln!(out, "equations:");
    for eq in &cert.equations {
        let _ = writeln!(out, "  [{}] {} = {}   in {}", eq.id, eq.lhs, eq.rhs, eq.context);
    }
    let _ = writeln!(out, "refutations:");
    for r in &cert.refutations {
        let why = match &r.reason {
            RefutationReason::Clash { equation, lhs, rhs } => format!("{equation}: {lhs} vs {rhs}"),
            RefutationReason::NontrivialityAxiom => "nontrivial group".into(),
        };
        let _ = writeln!(out, "  {}  {why}", r.assignment);
    }
    out
}

fn certify(a: CertifyArgs) -> Result<i32> {
    let params = TheoremParams::new(a.x, a.y, a.p)?;
    if let Some(q) = a.q {
        if q != params.q {
            return Err(Error::InvalidParams(format!("q = {q}: theorem mode requires q = pxy - 1 = {}", params.q)));
        }
    }
    let certifier = Certifier::new(script_library()?);
    let outcome = match (a.beta, &a.slope) {
        (Some(beta), _) => certifier.beta(a.x, a.y, a.p, beta)?,
        (None, Some(s)) => certifier.slope(a.x, a.y, a.p, s.parse()?, a.experimental)?,
        (None, None) => return Err(Error::InvalidParams("one of --beta or --slope is required".into())),
    };
    match outcome {
        Certification::Certified(cert) => {
            let json = cert.to_json();
            if let Some(path) = &a.json {
                write_file(path, &json)?;
            }
            match a.format {
                Format::Json => println!("{json}"),
                Format::Human => print!("{}", human_certificate(&cert)),
            }
            Ok(EXIT_OK)
        }
        Certification::Inconclusive(inc) => {
            match a.format {
                Format::Json => println!("{}", to_json(&inc)),
                Format::Human => {
                    println!("inconclusive: slope {} ({} assignments survive)", inc.params.slope, inc.survivors.len());
                    for s in &inc.survivors {
                        println!("  survivor {s}");
                    }
                }
            }
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

/// What a sweep certifies at each `(x, y, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Beta,
    Slope,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub x: (i64, i64),
    pub y: (i64, i64),
    pub p: (i64, i64),
    pub beta: (i64, i64),
    pub mode: SweepMode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Target {
    Beta(i64),
    Slope(Slope),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
    pub p: i64,
    pub target: Target,
}

impl GridPoint {
    pub fn file_name(&self) -> String {
        match &self.target {
            Target::Beta(b) => format!("cert_x{}_y{}_p{}_beta{b}.json", self.x, self.y, self.p),
            Target::Slope(s) => format!("cert_x{}_y{}_p{}_slope{}_{}.json", self.x, self.y, self.p, s.m(), s.n()),
        }
    }
}

fn parse_range(key: &str, v: &str) -> Result<(i64, i64)> {
    let err = || Error::Parse(format!("grid {key}={v}: expected N or A..B"));
    let (lo, hi) = match v.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse().map_err(|_| err())?, hi.trim().parse().map_err(|_| err())?),
        None => {
            let n = v.trim().parse().map_err(|_| err())?;
            (n, n)
        }
    };
    Ok((lo, hi))
}

impl std::str::FromStr for Grid {
    type Err = Error;

    /// Comma-separated `key=A..B` items (inclusive ranges) for `x`, `y`,
    /// `p`, `beta`, plus `mode=beta|slope`.
    fn from_str(s: &str) -> Result<Grid> {
        let mut grid = Grid { x: (1, 0), y: (1, 0), p: (1, 0), beta: (1, 0), mode: SweepMode::Beta };
        let (mut seen_x, mut seen_y, mut seen_p, mut seen_beta) = (false, false, false, false);
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::Parse(format!("grid item {item:?}: expected key=value")))?;
            match k.trim() {
                "x" => (grid.x, seen_x) = (parse_range(k, v)?, true),
                "y" => (grid.y, seen_y) = (parse_range(k, v)?, true),
                "p" => (grid.p, seen_p) = (parse_range(k, v)?, true),
                "beta" => (grid.beta, seen_beta) = (parse_range(k, v)?, true),
                "mode" => {
                    grid.mode = match v.trim() {
                        "beta" => SweepMode::Beta,
                        "slope" => SweepMode::Slope,
                        other => return Err(Error::Parse(format!("grid mode {other:?}: expected beta or slope"))),
                    }
                }
                other => return Err(Error::Parse(format!("grid key {other:?}: expected x, y, p, beta or mode"))),
            }
        }
        if !(seen_x && seen_y && seen_p) {
            return Err(Error::Parse(format!("grid {s:?}: x, y and p ranges are required")));
        }
        if grid.mode == SweepMode::Beta && !seen_beta {
            return Err(Error::Parse(format!("grid {s:?}: beta range is required in beta mode")));
        }
        Ok(grid)
    }
}

impl Grid {
    /// Grid points in a fixed order. `(x, y)` runs over coprime pairs with
    /// `x < y`; in slope mode each `(x, y, p)` contributes both endpoints,
    /// `(2pq - 1)/2`, `(3pq - 2)/3` and every `pq - 1/β` with `β >= 2` in
    /// the beta range.
    pub fn points(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for x in self.x.0..=self.x.1 {
            for y in self.y.0..=self.y.1 {
                if x >= y || num_integer::gcd(x, y) != 1 {
                    continue;
                }
                for p in self.p.0..=self.p.1 {
                    let push = |out: &mut Vec<GridPoint>, target| out.push(GridPoint { x, y, p, target });
                    match self.mode {
                        SweepMode::Beta => {
                            for b in self.beta.0..=self.beta.1 {
                                push(&mut out, Target::Beta(b));
                            }
                        }
                        SweepMode::Slope => {
                            // invalid (x, y, p) still yield one point so the failure is reported
                            let Ok(params) = TheoremParams::new(x, y, p) else {
                                push(&mut out, Target::Slope(Slope::integer(0)));
                                continue;
                            };
                            let pq = params.pq();
                            let mut slopes = vec![(pq - 1, 1), (pq, 1), (2 * pq - 1, 2), (3 * pq - 2, 3)];
                            slopes.extend((self.beta.0.max(2)..=self.beta.1).map(|b| (pq * b - 1, b)));
                            let mut seen = Vec::new();
                            for (m, n) in slopes {
                                if !seen.contains(&(m, n)) {
                                    seen.push((m, n));
                                    let s = Slope::new(m, n).expect("window slopes are in lowest terms");
                                    push(&mut out, Target::Slope(s));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointStatus {
    Certified,
    Inconclusive,
    Unsupported,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointResult {
    pub point: GridPoint,
    pub status: PointStatus,
    pub file: Option<String>,
    pub message: Option<String>,
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub total: usize,
    pub certified: usize,
    pub inconclusive: usize,
    pub failed: usize,
    pub points: Vec<PointResult>,
}

impl SweepSummary {
    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 || self.total == 0 {
            EXIT_ERROR
        } else if self.inconclusive > 0 {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_OK
        }
    }
}

fn sweep_point(certifier: &Certifier, point: &GridPoint, out: &Path) -> PointResult {
    let start = Instant::now();
    let outcome = match &point.target {
        Target::Beta(b) => certifier.beta(point.x, point.y, point.p, *b),
        Target::Slope(s) => certifier.slope(point.x, point.y, point.p, *s, false),
    };
    let (status, file, message) = match outcome {
        Ok(Certification::Certified(cert)) => {
            let name = point.file_name();
            match write_file(&out.join(&name), &cert.to_json()) {
                Ok(()) => (PointStatus::Certified, Some(name), None),
                Err(e) => (PointStatus::Error, None, Some(e.to_string())),
            }
        }
        Ok(Certification::Inconclusive(inc)) => {
            (PointStatus::Inconclusive, None, Some(format!("{} assignments survive", inc.survivors.len())))
        }
        Err(e @ (Error::Unsupported(_) | Error::InvalidParams(_))) => (PointStatus::Unsupported, None, Some(e.to_string())),
        Err(e) => (PointStatus::Error, None, Some(e.to_string())),
    };
    PointResult { point: point.clone(), status, file, message, seconds: start.elapsed().as_secs_f64() }
}

/// Certifies every grid point into `out`, writing timings to `out/sweep.log`.
pub fn run_sweep(grid: &Grid, out: &Path, jobs: Option<usize>, library: ScriptLibrary) -> Result<SweepSummary> {
    let points = grid.points();
    std::fs::create_dir_all(out).map_err(|e| Error::InvalidParams(format!("{}: {e}", out.display())))?;
    let certifier = Certifier::new(library);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidParams(format!("worker pool: {e}")))?;
    let results: Vec<PointResult> = pool.install(|| points.par_iter().map(|pt| sweep_point(&certifier, pt, out)).collect());
    let count = |s: PointStatus| results.iter().filter(|r| r.status == s).count();
    let summary = SweepSummary {
        total: results.len(),
        certified: count(PointStatus::Certified),
        inconclusive: count(PointStatus::Inconclusive),
        failed: count(PointStatus::Unsupported) + count(PointStatus::Error),
        points: results,
    };
    let mut log = String::new();
    for r in &summary.points {
        let name = r.file.clone().unwrap_or_else(|| r.point.file_name());
        let _ = writeln!(log, "{name}\t{:?}\t{:.6}s", r.status, r.seconds);
    }
    write_file(&out.join("sweep.log"), &log)?;
    Ok(summary)
}

fn sweep(a: SweepArgs) -> Result<i32> {
    let grid: Grid = a.grid.parse()?;
    if grid.points().is_empty() {
        return Err(Error::InvalidParams(format!("grid {:?} has no points", a.grid)));
    }
    let summary = run_sweep(&grid, &a.out, a.jobs, script_library()?)?;
    if let Some(path) = &a.json {
        write_file(path, &to_json(&summary))?;
    }
    match a.format {
        Format::Json => println!("{}", to_json(&summary)),
        Format::Human => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            for r in &summary.points {
                let name = r.point.file_name();
                let msg = r.message.as_deref().unwrap_or("");
                let _ = writeln!(lock, "{:<13} {name} {msg}", format!("{:?}", r.status).to_lowercase());
            }
            let _ = writeln!(
                lock,
                "{} points: {} certified, {} inconclusive, {} failed",
                summary.total, summary.certified, summary.inconclusive, summary.failed
            );
        }
    }
    Ok(summary.exit_code())
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// The identity checks behind `verify-identities`.
pub fn identity_checks(x: i64, y: i64, p: i64, library: &ScriptLibrary) -> Result<Vec<IdentityCheck>> {
    let params = TheoremParams::new(x, y, p)?;
    let pres = params.presentation()?;
    let vars = params.vars()?;
    let tb = pres.torus_bezout();
    let mut checks = Vec::new();

    let expected = Word::letter(Gen::A, x * p - tb.i).concat(&Word::letter(Gen::B, -tb.j));
    let oracle = eliminate_t(&Word::letter(Gen::T, p), &pres)
        .and_then(|w| Ok(normal_form(&w, x, y)? == normal_form(&expected, x, y)?));
    checks.push(IdentityCheck {
        name: "same_sign_normal_form".into(),
        passed: matches!(oracle, Ok(true)),
        detail: match oracle {
            Ok(ok) => format!("t^{p} = {expected} in the torus knot group: {ok}"),
            Err(e) => e.to_string(),
        },
    });

    let mut lemmas = LemmaSet::new();
    for id in ["lemma_same_sign", "grand_total_product"] {
        let checked = library.instantiate(id, &vars).and_then(|s| check_script(&s, &pres, &lemmas));
        let (passed, detail) = match checked {
            Ok(eq) => {
                let detail = format!("{} = {}", eq.lhs, eq.rhs);
                let agrees = id != "lemma_same_sign" || (eq.lhs == Word::letter(Gen::T, p) && eq.rhs == expected);
                lemmas.push(eq);
                (agrees, detail)
            }
            Err(e) => (false, e.to_string()),
        };
        checks.push(IdentityCheck { name: format!("script_{id}"), passed, detail });
    }

    for k in -3..=3 {
        let r = peripheral_invariance_check(x, y, p, params.q, k)?;
        checks.push(IdentityCheck {
            name: format!("peripheral_invariance_k{k}"),
            passed: r.passed(),
            detail: format!("torus meridian {}, cable meridian {}", r.torus_meridian, r.cable_meridian),
        });
    }

    let w = lspace_window_check(x, y, p);
    checks.push(IdentityCheck {
        name: "lspace_window".into(),
        passed: w.passed(),
        detail: format!("2g - 1 = {} = (pq - 1) - [p(x + y) - 2] = {} - {}", w.threshold, w.rearranged + w.margin, w.margin),
    });

    let slope = beta_slope(params.p, params.q, 1)?;
    checks.push(IdentityCheck {
        name: "beta_one_is_lower_endpoint".into(),
        passed: slope == params.window().0,
        detail: format!("pq - 1/1 = {slope}"),
    });
    Ok(checks)
}

fn verify_identities(a: IdentityArgs) -> Result<i32> {
    let checks = identity_checks(a.x, a.y, a.p, &script_library()?)?;
    let all = checks.iter().all(|c| c.passed);
    let json = to_json(&checks);
    if let Some(path) = &a.json {
        write_file(path, &json)?;
    }
    match a.format {
        Format::Json => println!("{json}"),
        Format::Human => {
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
        }
    }
    Ok(if all { EXIT_OK } else { EXIT_ERROR })
}

fn replay_cmd(a: ReplayArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&a.path).map_err(|e| Error::Parse(format!("{}: {e}", a.path.display())))?;
    let cert = ObstructionCertificate::from_json(&text)?;
    let report = replay(&cert);
    match a.format {
        Format::Json => println!("{}", to_json(&report)),
        Format::Human => {
            if report.valid {
                println!("valid: {} equations replayed, 27 assignments refuted", report.equations_checked);
            } else {
                println!("invalid:");
                for d in &report.diagnostics {
                    println!("  {d}");
                }
            }
        }
    }
    Ok(if report.valid { EXIT_OK } else { EXIT_INCONCLUSIVE })
}
