//! Command-line front end.
//!
//! Matrices are read from CSV (one row per line, comma separated, no header)
//! or JSON (`{"n": 2, "rows": [[1, 4], [5, 3]]}`); `-` reads standard input.
//! Exit codes: `0` for a definite answer, `2` for `undecided`/`no_verdict`,
//! `1` for usage and input errors.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::analysis;
use crate::certificate::{Certificate, Method, Verdict};
use crate::cone::{self, Tolerances};
use crate::decision::{decide, DecideOptions};
use crate::geometry::{self, ConeDescriptor};
use crate::linalg;
use crate::oracle::{self, SamplerConfig};
use crate::{Error, Matrix, Vector};

#[derive(Debug, Parser)]
#[command(
    name = "lorentz-semipos",
    version,
    about = "Lorentz-cone semipositivity with verifiable certificates"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Membership tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_mem: f64,
    /// Strict (interior) tolerance.
    #[arg(long, global = true, default_value_t = 1e-7)]
    tol_strict: f64,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Iterations per start of the projected ascent.
    #[arg(long, global = true, default_value_t = 2000)]
    max_iters: usize,
    /// Machine-readable output.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Human-readable output (default).
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide semipositivity: structural screens, then the general search.
    Check { file: String },
    /// Classify a vector against the cone, and its image under the matrix.
    Membership {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Detect structure and run the matching closed-form test.
    Classify { file: String },
    /// Ellipsoidal cones `X·L`.
    Cone {
        #[command(subcommand)]
        command: ConeCommand,
    },
    /// Invariance and monotonicity of the matrix.
    Monotone { file: String },
    /// Brute-force reference decision (n <= 4).
    Oracle {
        file: String,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long, default_value_t = 2000)]
        count: usize,
    },
}

#[derive(Debug, Subcommand)]
enum ConeCommand {
    /// Quadratic representation of `X·L`.
    Rep { file: String },
    /// Whether the vector is an extreme ray of `L`, and its preimage under `A`.
    Extremal {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
}

/// JSON matrix input.
#[derive(Debug, Deserialize)]
struct MatrixJson {
    n: usize,
    rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancesJson {
    pub eps_mem: f64,
    pub eps_strict: f64,
    pub eps_eq: f64,
}

/// The certificate object written by `check`, `classify` and `oracle`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub verdict: String,
    pub method: String,
    pub primal: Option<Vec<f64>>,
    pub dual: Option<Vec<f64>>,
    pub margin: f64,
    pub n: usize,
    pub tolerances: TolerancesJson,
    pub seed: u64,
}

impl CertificateJson {
    fn new(cert: &Certificate, n: usize, tol: &Tolerances, seed: u64) -> Self {
        let to_vec = |v: &Option<Vector>| v.as_ref().map(|v| v.iter().copied().collect());
        Self {
            verdict: cert.verdict.as_str().to_string(),
            method: cert.method.as_str().to_string(),
            primal: to_vec(&cert.primal),
            dual: to_vec(&cert.dual),
            margin: cert.margin,
            n,
            tolerances: TolerancesJson {
                eps_mem: tol.eps_mem,
                eps_strict: tol.eps_strict,
                eps_eq: tol.eps_eq,
            },
            seed,
        }
    }

    pub fn primal_vector(&self) -> Option<Vector> {
        self.primal.as_ref().map(|v| Vector::from_row_slice(v))
    }

    pub fn dual_vector(&self) -> Option<Vector> {
        self.dual.as_ref().map(|v| Vector::from_row_slice(v))
    }
}

#[derive(Debug, Serialize)]
struct MembershipJson {
    class: &'static str,
    margin: f64,
    image_class: &'static str,
    image_margin: f64,
}

#[derive(Debug, Serialize)]
struct RepJson {
    q: Vec<Vec<f64>>,
    u: Vec<f64>,
    lambda: f64,
    inertia: geometry::Inertia,
}

#[derive(Debug, Serialize)]
struct ExtremalJson {
    extremal: bool,
    pushforward: Option<Vec<f64>>,
}

#[derive(Debug, Serialize)]
struct MonotoneJson {
    invariant: bool,
    monotone: bool,
    coincides: bool,
    separator: Option<Vec<f64>>,
}

/// Exit code and rendered output of one invocation.
struct Outcome {
    code: i32,
    json: String,
    text: String,
}

impl Outcome {
    fn new(code: i32, json: &impl Serialize, text: String) -> Result<Self, String> {
        let json = serde_json::to_string_pretty(json).map_err(|e| e.to_string())?;
        Ok(Self { code, json, text })
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Output goes to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let to_stdout = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if to_stdout {
                let _ = write!(stdout, "{rendered}");
                return 0;
            }
            let _ = write!(stderr, "{rendered}");
            return 1;
        }
    };
    match execute(&cli, stdin) {
        Ok(out) => {
            let body = if cli.global.json { out.json } else { out.text };
            let _ = writeln!(stdout, "{}", body.trim_end());
            out.code
        }
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, String> {
    let g = &cli.global;
    let tol =
        Tolerances::new(g.tol_mem, g.tol_strict, Tolerances::default().eps_eq).map_err(err)?;
    let opts = DecideOptions {
        max_iters: g.max_iters,
        seed: g.seed,
        tol,
        ..DecideOptions::default()
    };
    opts.validate().map_err(err)?;
    let mut load = |path: &str| read_matrix(path, stdin);

    match &cli.command {
        Command::Check { file } => {
            let a = load(file)?;
            certificate_outcome(&check(&a, &opts)?, &a, &opts)
        }
        Command::Classify { file } => {
            let a = load(file)?;
            certificate_outcome(&classify(&a, &opts)?, &a, &opts)
        }
        Command::Oracle {
            file,
            resolution,
            count,
        } => {
            let a = load(file)?;
            let cfg = SamplerConfig {
                seed: g.seed,
                count: *count,
                resolution: *resolution,
            };
            let cert = oracle::brute_force_decide_with(&a, &cfg, &tol).map_err(err)?;
            certificate_outcome(&cert, &a, &opts)
        }
        Command::Membership { file, vector } => {
            let a = load(file)?;
            let v = parse_vector(vector, a.nrows())?;
            let own = cone::membership(&v, &crate::LorentzCone::new(v.len()).map_err(err)?, &tol)
                .map_err(err)?;
            let image = geometry::preimage_membership(
                &a,
                &ConeDescriptor::lorentz(a.nrows()).map_err(err)?,
                &v,
                &tol,
            )
            .map_err(err)?;
            let out = MembershipJson {
                class: own.class.as_str(),
                margin: own.margin,
                image_class: image.class.as_str(),
                image_margin: image.margin,
            };
            let text = format!(
                "{}\nmargin: {}\nimage: {} (margin {})",
                out.class, out.margin, out.image_class, out.image_margin
            );
            Outcome::new(0, &out, text)
        }
        Command::Cone {
            command: ConeCommand::Rep { file },
        } => {
            let x = load(file)?;
            let rep = geometry::ellipsoidal_rep_from_map(&x, &tol).map_err(err)?;
            let inertia = geometry::inertia(&rep.q, &tol).map_err(err)?;
            let out = RepJson {
                q: rows(&rep.q),
                u: rep.u.iter().copied().collect(),
                lambda: rep.lambda,
                inertia,
            };
            let text = format!(
                "Q = {:?}\nu = {:?}\nlambda = {}\ninertia = ({}, {}, {})",
                out.q, out.u, out.lambda, inertia.n_plus, inertia.n_zero, inertia.n_minus
            );
            Outcome::new(0, &out, text)
        }
        Command::Cone {
            command: ConeCommand::Extremal { file, vector },
        } => {
            let a = load(file)?;
            let v = parse_vector(vector, a.nrows())?;
            let k = ConeDescriptor::lorentz(a.nrows()).map_err(err)?;
            let extremal = geometry::is_extremal(&k, &v, &tol).map_err(err)?;
            let pushforward = if extremal {
                let p = geometry::extremal_pushforward(&a, &k, &v, &tol).map_err(err)?;
                Some(p.iter().copied().collect::<Vec<_>>())
            } else {
                None
            };
            let text = match &pushforward {
                Some(p) => format!("extremal\npreimage: {p:?}"),
                None => "not extremal".to_string(),
            };
            Outcome::new(
                0,
                &ExtremalJson {
                    extremal,
                    pushforward,
                },
                text,
            )
        }
        Command::Monotone { file } => {
            let a = load(file)?;
            let invariant = geometry::is_invariant(&a, &tol).map_err(err)?;
            let cmp = geometry::k_cone_under_monotone(&a, &tol).map_err(err)?;
            let out = MonotoneJson {
                invariant,
                monotone: cmp.monotone,
                coincides: cmp.coincides,
                separator: cmp.separator.map(|s| s.iter().copied().collect()),
            };
            let mut text = format!(
                "{}\ninvariant: {}\ncones coincide: {}",
                if out.monotone {
                    "monotone"
                } else {
                    "not monotone"
                },
                out.invariant,
                out.coincides
            );
            if let Some(s) = &out.separator {
                text.push_str(&format!("\nseparator: {s:?}"));
            }
            Outcome::new(0, &out, text)
        }
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn rows(m: &Matrix) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn certificate_outcome(
    cert: &Certificate,
    a: &Matrix,
    opts: &DecideOptions,
) -> Result<Outcome, String> {
    let code = if cert.is_definite() { 0 } else { 2 };
    let json = CertificateJson::new(cert, a.nrows(), &opts.tol, opts.seed);
    let mut text = format!("{} (method: {})", json.verdict, json.method);
    if let Some(x) = &json.primal {
        text.push_str(&format!("\nprimal: {x:?}"));
    }
    if let Some(y) = &json.dual {
        text.push_str(&format!("\ndual: {y:?}"));
    }
    text.push_str(&format!("\nmargin: {}", json.margin));
    Outcome::new(code, &json, text)
}

/// Structural screens first, then [`decide`].
pub fn check(a: &Matrix, opts: &DecideOptions) -> Result<Certificate, String> {
    let screen = analysis::structural_screen(a, &opts.tol).map_err(err)?;
    if screen.is_definite() {
        return Ok(screen);
    }
    decide(a, opts).map_err(err)
}

/// Runs the closed-form test for the first structure that matches
/// (diagonal, orthogonal, lower triangular, rank one) and falls back to
/// [`check`] when none does.
pub fn classify(a: &Matrix, opts: &DecideOptions) -> Result<Certificate, String> {
    let n = linalg::ensure_square(a).map_err(err)?;
    let tol = &opts.tol;
    let eps = tol.eps_eq * (1.0 + a.norm());
    let specialist = if linalg::is_diagonal(a, eps) {
        Some(analysis::diagonal_certificate(a, tol))
    } else if linalg::is_orthogonal(a, tol.eps_eq.max(1e-12 * n as f64)) {
        Some(analysis::orthogonal_certificate(a, tol))
    } else if linalg::is_lower_triangular(a, eps) {
        Some(analysis::lower_triangular_certificate(a, tol))
    } else if let Some((u, v)) = linalg::rank_one_factors(a, tol.eps_eq) {
        let (u, v) = if u[n - 1] < 0.0 { (-u, -v) } else { (u, v) };
        Some(analysis::rank_one_certificate(&u, &v, tol))
    } else {
        None
    };
    match specialist {
        // the specialists verify against their own reconstruction of `a`
        Some(Ok(c)) if !c.is_definite() || c.verify(a, tol) => Ok(c),
        Some(Ok(c)) => Ok(rerun_unverified(a, opts, c.method)?),
        Some(Err(e)) => Err(err(e)),
        None => check(a, opts),
    }
}

fn rerun_unverified(
    a: &Matrix,
    opts: &DecideOptions,
    method: Method,
) -> Result<Certificate, String> {
    let c = check(a, opts)?;
    Ok(if c.verdict == Verdict::Undecided {
        Certificate::no_verdict(method)
    } else {
        c
    })
}

fn read_matrix(path: &str, stdin: &mut dyn Read) -> Result<Matrix, String> {
    let mut content = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut content)
            .map_err(|e| format!("cannot read standard input: {e}"))?;
    } else {
        content = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    }
    let m = parse_matrix(&content)?;
    linalg::ensure_square(&m).map_err(err)?;
    Ok(m)
}

/// Parses CSV or JSON matrix text. JSON is recognized by a leading `{`.
pub fn parse_matrix(content: &str) -> Result<Matrix, String> {
    let rows: Vec<Vec<f64>> = if content.trim_start().starts_with('{') {
        let m: MatrixJson =
            serde_json::from_str(content).map_err(|e| format!("malformed JSON matrix: {e}"))?;
        if m.rows.len() != m.n {
            return Err(format!("expected {} rows, found {}", m.n, m.rows.len()));
        }
        m.rows
    } else {
        content
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .enumerate()
            .map(|(i, line)| {
                line.split(',')
                    .map(|f| parse_number(f).map_err(|e| format!("row {}: {e}", i + 1)))
                    .collect()
            })
            .collect::<Result<_, _>>()?
    };
    if rows.is_empty() {
        return Err("empty matrix".into());
    }
    let cols = rows[0].len();
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
        return Err(format!(
            "row {} has {} entries, expected {cols}",
            i + 1,
            r.len()
        ));
    }
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err("matrix entries must be finite".into());
    }
    Ok(Matrix::from_row_iterator(
        rows.len(),
        cols,
        rows.into_iter().flatten(),
    ))
}

fn parse_number(field: &str) -> Result<f64, String> {
    let field = field.trim();
    let v: f64 = field
        .parse()
        .map_err(|_| format!("not a number: {field:?}"))?;
    if !v.is_finite() {
        return Err(format!("not a finite number: {field:?}"));
    }
    Ok(v)
}

/// Parses a comma-separated vector of length `n`.
pub fn parse_vector(text: &str, n: usize) -> Result<Vector, String> {
    let v = text
        .split(',')
        .map(parse_number)
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != n {
        return Err(err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        }));
    }
    Ok(Vector::from_vec(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut stdin = input.as_bytes();
        let (mut out, mut errs) = (Vec::new(), Vec::new());
        let mut argv = vec!["lorentz-semipos"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut stdin, &mut out, &mut errs);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(errs).unwrap(),
        )
    }

    #[test]
    fn parses_csv_and_json() {
        let a = parse_matrix("1,4\n\n 5 , 3e0 \n").unwrap();
        assert_eq!(a, Matrix::from_row_slice(2, 2, &[1.0, 4.0, 5.0, 3.0]));
        let b = parse_matrix(r#"{"n": 2, "rows": [[1, 4], [5, 3]]}"#).unwrap();
        assert_eq!(a, b);
        assert!(parse_matrix("1,2\n3").is_err());
        assert!(parse_matrix("1,x\n2,3").is_err());
        assert!(parse_matrix("1,2\n3,NaN").is_err());
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix(r#"{"n": 3, "rows": [[1, 4], [5, 3]]}"#).is_err());
    }

    #[test]
    fn check_examples() {
        let (code, out, _) = call(&["check", "-", "--json"], "1,4\n5,3\n");
        assert_eq!(code, 0);
        let c: CertificateJson = serde_json::from_str(&out).unwrap();
        assert_eq!(c.verdict, "semipositive");

        let (code, out, _) = call(&["check", "-", "--json"], "5,7\n6,5\n");
        assert_eq!(code, 0);
        let c: CertificateJson = serde_json::from_str(&out).unwrap();
        assert_eq!(c.verdict, "not_semipositive");
        let y = c.dual.unwrap();
        assert!(
            (y[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-4
                && (y[1] + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-4
        );
    }

    #[test]
    fn membership_example() {
        let (code, out, _) = call(
            &["membership", "-", "--vector", "3,4,5"],
            "1,0,0\n0,1,0\n0,0,1",
        );
        assert_eq!(code, 0);
        assert!(out.starts_with("boundary"));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&[], "").0, 1);
        assert_eq!(call(&["check"], "").0, 1);
        assert_eq!(call(&["check", "-", "--json", "--text"], "1,0\n0,1").0, 1);
        assert_eq!(call(&["check", "/nonexistent/a.csv"], "").0, 1);
        assert_eq!(call(&["check", "-", "--tol-mem", "-1"], "1,0\n0,1").0, 1);
        assert_eq!(call(&["check", "-"], "1,2,3\n4,5,6").0, 1);
        assert_eq!(call(&["--help"], "").0, 0);
    }
}
