use std::ffi::OsString;
use std::f64::consts::PI;
use std::io::{IsTerminal, Read};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::classifier::{
    classify_region, enumerate_s2_nonminimal_with, solve_minimal_s2_with, sweep_regions_with, t2_beta_window,
    RangeSpec, SolutionRecord, SolverConfig, SweepRow, WindowKind,
};
use crate::epsring::parse_decimal;
use crate::geometry::{slice_curve, topology_of};
use crate::ncalgebra::AlgebraContext;
use crate::representations::{
    build_fuzzy_sphere, build_nc_torus, check_irreducible, epsilon_of_alpha, verify_relations, BuildConfig, Family,
    ReprSpec,
};
use crate::shell::emit::{self, matrix_rows};
use crate::shell::parser::{parse_expr, ExprError};

#[derive(Debug, Parser)]
#[command(name = "spheretorus", version, about = "Algebra, representations and classification for A(R)")]
struct Cli {
    /// Output format (each subcommand picks a sensible default).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Topology of the surface M(R).
    Topology {
        #[arg(long = "R", allow_hyphen_values = true)]
        r: f64,
    },
    /// The y = 0 slice of M(R).
    Slice {
        #[arg(long = "R", allow_hyphen_values = true)]
        r: f64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Minimal S² representation for (R, n).
    SolveMinS2 {
        #[arg(long = "R", allow_hyphen_values = true)]
        r: f64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// All non-minimal S² candidates for (R, n).
    EnumS2 {
        #[arg(long = "R", allow_hyphen_values = true)]
        r: f64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Admissible β′ for a finite T² representation.
    T2Window {
        #[arg(long = "R", allow_hyphen_values = true)]
        r: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Region label and available families for (R, ε).
    Classify {
        #[arg(long = "R", allow_hyphen_values = true)]
        r: f64,
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Build representation matrices and write them as JSON.
    Build {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute relation residuals of a representation file (stdin if no path).
    Verify {
        path: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Reduce an expression to normal form.
    Reduce {
        #[arg(long = "R", allow_hyphen_values = true)]
        r: String,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Poisson bracket {π(f), π(g)}.
    Poisson {
        #[arg(long = "R", allow_hyphen_values = true)]
        r: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Classifier rows over a range of R (`start:stop:count`).
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long = "R", allow_hyphen_values = true)]
        r: RangeSpec,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Circle diagram of the vertices β′ + mα as SVG.
    Diagram {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct SolverArgs {
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        let d = SolverConfig::default();
        SolverConfig { grid: self.grid.unwrap_or(d.grid), tol: self.tol.unwrap_or(d.tol) }
    }
}

#[derive(Debug, Args)]
struct RepArgs {
    /// s2min, s2nonmin, t2finite, t2window, fuzzysphere or nctorus
    family: String,
    #[arg(long = "R", allow_hyphen_values = true, default_value_t = 0.0)]
    r: f64,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta_prime: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    nu_phase: f64,
    /// Half-width M of a truncated T² window.
    #[arg(long, default_value_t = 16)]
    m_half: usize,
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Algebra(a) => CliError::Domain(a.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// What a subcommand produced: text for stdout, and whether the result
/// signals non-existence (exit code 1).
struct Output {
    text: String,
    negative: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, negative: false }
    }
}

fn to_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap_or_default() + "\n"
}

fn finite(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

fn record_json(rec: &SolutionRecord) -> Value {
    json!({
        "family": rec.family.as_str(),
        "R": rec.r,
        "n": rec.n,
        "k": rec.k,
        "alpha": finite(rec.alpha),
        "beta_prime": finite(rec.beta_prime),
        "beta": finite(rec.beta_prime + 0.5 * rec.alpha),
        "eps": finite(epsilon_of_alpha(rec.alpha).unwrap_or(f64::NAN)),
        "exists": rec.exists,
        "reject_reason": rec.reject_reason,
    })
}

fn record_text(rec: &SolutionRecord) -> String {
    if rec.exists {
        format!(
            "{} n={} k={} alpha={} beta'={} beta={}\n",
            rec.family.as_str(),
            rec.n,
            rec.k.map(|k| k.to_string()).unwrap_or_else(|| "-".into()),
            rec.alpha,
            rec.beta_prime,
            rec.beta_prime + 0.5 * rec.alpha
        )
    } else {
        format!(
            "{} n={} rejected: {}\n",
            rec.family.as_str(),
            rec.n,
            rec.reject_reason.as_deref().unwrap_or("no solution")
        )
    }
}

fn sweep_rows_from(recs: &[SolutionRecord]) -> Vec<SweepRow> {
    recs.iter()
        .map(|r| SweepRow {
            r: r.r,
            n: r.n,
            family: r.family,
            k: r.k,
            alpha: r.alpha.is_finite().then_some(r.alpha),
            beta_lo: r.beta_prime.is_finite().then_some(r.beta_prime),
            beta_hi: r.beta_prime.is_finite().then_some(r.beta_prime),
            exists: r.exists,
            reject_reason: r.reject_reason.clone(),
        })
        .collect()
}

fn exact_r(src: &str) -> Result<AlgebraContext, CliError> {
    parse_decimal(src)
        .map(AlgebraContext::new)
        .ok_or_else(|| CliError::Usage(format!("--R must be a decimal literal, got {src:?}")))
}

fn resolve_spec(rep: &RepArgs) -> Result<ReprSpec, CliError> {
    let family = Family::parse(&rep.family)
        .ok_or_else(|| CliError::Usage(format!("unknown family {:?}", rep.family)))?;
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| CliError::Usage(format!("--{name} is required for {}", rep.family)));
    let need_n = || rep.n.ok_or_else(|| CliError::Usage(format!("--n is required for {}", rep.family)));
    let nu = Complex64::from_polar(1.0, rep.nu_phase);
    Ok(match family {
        Family::S2Min => {
            let n = need_n()?;
            let alpha = match rep.alpha {
                Some(a) => a,
                None => {
                    let rec = solve_minimal_s2_with(rep.r, n, &SolverConfig::default());
                    if !rec.exists {
                        return Err(CliError::Domain(format!(
                            "no minimal S2 representation for R = {}, n = {n}",
                            rep.r
                        )));
                    }
                    rec.alpha
                }
            };
            let bp = rep.beta_prime.unwrap_or(-0.5 * n as f64 * alpha);
            ReprSpec::s2(family, rep.r, n, alpha, bp)
        }
        Family::S2NonMin => ReprSpec::s2(family, rep.r, need_n()?, need(rep.alpha, "alpha")?, need(rep.beta_prime, "beta-prime")?),
        Family::T2Finite => {
            let n = need_n()?;
            let k = rep.k.ok_or_else(|| CliError::Usage("--k is required for t2finite".into()))?;
            let bp = match rep.beta_prime {
                Some(b) => b,
                None => t2_beta_window(rep.r, n, k)
                    .map_err(|e| CliError::Domain(e.to_string()))?
                    .midpoint()
                    .ok_or_else(|| CliError::Domain(format!("no T2 window for R = {}, n = {n}, k = {k}", rep.r)))?,
            };
            ReprSpec::t2_finite(rep.r, n, k, bp, nu)
        }
        Family::T2Window => ReprSpec::t2_window(rep.r, need(rep.alpha, "alpha")?, need(rep.beta_prime, "beta-prime")?, rep.m_half),
        Family::FuzzySphere | Family::NCTorusFinite => {
            let mut s = ReprSpec::s2(family, rep.r, need_n()?, rep.alpha.unwrap_or(f64::NAN), rep.beta_prime.unwrap_or(0.0));
            s.k = rep.k;
            s.nu = nu;
            s
        }
    })
}

fn build_reference(spec: &ReprSpec) -> Result<Value, CliError> {
    let domain = |e: crate::representations::ReprError| CliError::Domain(e.to_string());
    if spec.family == Family::FuzzySphere {
        let s = build_fuzzy_sphere(spec.n).map_err(domain)?;
        let res = s.verify();
        Ok(json!({
            "family": "fuzzysphere",
            "n": s.n,
            "eps": s.eps,
            "matrices": {"ap": matrix_rows(&s.ap), "am": matrix_rows(&s.am), "z": matrix_rows(&s.z)},
            "residuals": res,
        }))
    } else {
        let k = spec.k.ok_or_else(|| CliError::Usage("--k is required for nctorus".into()))?;
        let t = build_nc_torus(spec.n, k, spec.beta_prime, spec.nu).map_err(domain)?;
        Ok(json!({
            "family": "nctorus",
            "n": t.n,
            "k": t.k,
            "q": [t.q.re, t.q.im],
            "matrices": {"u": matrix_rows(&t.u), "v": matrix_rows(&t.v)},
            "residuals": {"commutation": t.commutation_residual(), "unitarity": t.unitarity_residual()},
        }))
    }
}

fn write_or_return(out: &Option<PathBuf>, text: String) -> Result<Output, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(io_err)?;
            Ok(Output::ok(String::new()))
        }
        None => Ok(Output::ok(text)),
    }
}

fn no_csv(format: Format, what: &str) -> Result<(), CliError> {
    if format == Format::Csv {
        Err(CliError::Usage(format!("{what} has no CSV output")))
    } else {
        Ok(())
    }
}

fn execute(cmd: Command, format: Option<Format>) -> Result<Output, CliError> {
    let fmt = format.unwrap_or(Format::Json);
    match cmd {
        Command::Topology { r } => {
            no_csv(fmt, "topology")?;
            let label = topology_of(r);
            Ok(Output::ok(match fmt {
                Format::Text => format!("{label:?}\n"),
                _ => serde_json::to_string(&json!({ "label": label })).unwrap_or_default() + "\n",
            }))
        }
        Command::Slice { r, samples } => {
            let pts = slice_curve(r, samples).map_err(|e| CliError::Domain(e.to_string()))?;
            Ok(Output::ok(match fmt {
                Format::Json => to_json(&json!({ "R": r, "points": pts })),
                _ => {
                    let mut s = String::from("x,z\n");
                    for (x, z) in pts {
                        s.push_str(&format!("{x},{z}\n"));
                    }
                    s
                }
            }))
        }
        Command::SolveMinS2 { r, n, solver } => {
            no_csv(fmt, "solve-min-s2")?;
            let rec = solve_minimal_s2_with(r, n, &solver.config());
            let text = match fmt {
                Format::Text => record_text(&rec),
                _ => to_json(&record_json(&rec)),
            };
            Ok(Output { text, negative: !rec.exists })
        }
        Command::EnumS2 { r, n, solver } => {
            let recs = enumerate_s2_nonminimal_with(r, n, &solver.config());
            let text = match fmt {
                Format::Json => to_json(&Value::Array(recs.iter().map(record_json).collect())),
                Format::Csv => emit::sweep_to_csv(&sweep_rows_from(&recs)).map_err(io_err)?,
                Format::Text => recs.iter().map(record_text).collect(),
            };
            Ok(Output { text, negative: !recs.iter().any(|r| r.exists) })
        }
        Command::T2Window { r, n, k } => {
            no_csv(fmt, "t2-window")?;
            let w = t2_beta_window(r, n, k).map_err(|e| CliError::Domain(e.to_string()))?;
            let text = match fmt {
                Format::Text => match w.kind {
                    WindowKind::None => "none\n".to_string(),
                    WindowKind::Full => format!("full: beta' in ({}, {}]\n", w.lower, w.upper),
                    WindowKind::Restricted => {
                        format!("restricted: beta' in ({}, {}), delta = {}\n", w.lower, w.upper, w.delta)
                    }
                },
                _ => to_json(&json!({
                    "R": r, "n": n, "k": k,
                    "alpha": 2.0 * PI * k as f64 / n as f64,
                    "kind": w.kind,
                    "lower": finite(w.lower),
                    "upper": finite(w.upper),
                    "delta": finite(w.delta),
                })),
            };
            Ok(Output { text, negative: !w.exists() })
        }
        Command::Classify { r, eps, tol } => {
            no_csv(fmt, "classify")?;
            let c = match tol {
                Some(t) => crate::classifier::classify_region_with_tol(r, eps, t),
                None => classify_region(r, eps),
            }
            .map_err(|e| CliError::Domain(e.to_string()))?;
            Ok(Output::ok(match fmt {
                Format::Text => format!("{:?} (R_eps = {})\n{:#?}\n", c.label, c.r_eps, c.flags),
                _ => to_json(&json!({ "R": r, "eps": eps, "label": c.label, "R_eps": c.r_eps, "families": c.flags })),
            }))
        }
        Command::Build { rep, out } => {
            no_csv(fmt, "build")?;
            let spec = resolve_spec(&rep)?;
            if matches!(spec.family, Family::FuzzySphere | Family::NCTorusFinite) {
                return write_or_return(&out, to_json(&build_reference(&spec)?));
            }
            let m = BuildConfig::default().build(&spec).map_err(|e| CliError::Domain(e.to_string()))?;
            let text = match fmt {
                Format::Text => format!(
                    "{} n={} eps={} max residual={:e}\n",
                    m.spec.family.as_str(),
                    m.dim(),
                    m.eps,
                    verify_relations(&m).max()
                ),
                _ => emit::rep_to_json(&m).map_err(io_err)?,
            };
            write_or_return(&out, text)
        }
        Command::Verify { path, tol } => {
            no_csv(fmt, "verify")?;
            let src = match &path {
                Some(p) => std::fs::read_to_string(p).map_err(io_err)?,
                None => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
                    s
                }
            };
            let m = emit::rep_from_json(&src).map_err(|e| CliError::Usage(e.to_string()))?;
            let report = verify_relations(&m);
            let tol = tol.unwrap_or(1e-10 * m.dim() as f64);
            let pass = report.max() < tol;
            let text = match fmt {
                Format::Text => {
                    let mut s = String::new();
                    for (name, v) in report.entries() {
                        s.push_str(&format!("{name:<10} {v:e}\n"));
                    }
                    s.push_str(&format!("{} (max {:e}, tol {:e})\n", if pass { "ok" } else { "FAILED" }, report.max(), tol));
                    s
                }
                _ => to_json(&json!({
                    "residuals": report,
                    "max": report.max(),
                    "tol": tol,
                    "pass": pass,
                    "irreducible": check_irreducible(&m),
                })),
            };
            Ok(Output { text, negative: !pass })
        }
        Command::Reduce { r, expr } => {
            no_csv(fmt, "reduce")?;
            let ctx = exact_r(&r)?;
            let nf = parse_expr(&expr, &ctx)?;
            Ok(Output::ok(match fmt {
                Format::Text => format!("{nf}\n"),
                _ => to_json(&json!({ "R": r, "expr": expr, "normal_form": nf.to_string(), "zero": nf.is_zero() })),
            }))
        }
        Command::Poisson { r, f, g } => {
            no_csv(fmt, "poisson")?;
            let ctx = exact_r(&r)?;
            let pf = parse_expr(&f, &ctx)?;
            let pg = parse_expr(&g, &ctx)?;
            let bracket = pf.poisson(&pg).map_err(|e| CliError::Domain(e.to_string()))?;
            Ok(Output::ok(match fmt {
                Format::Text => format!("{bracket}\n"),
                _ => to_json(&json!({ "R": r, "f": f, "g": g, "bracket": bracket.to_string() })),
            }))
        }
        Command::Sweep { n, r, out, solver } => {
            let rows = sweep_regions_with(n, &r, &solver.config());
            let text = match format.unwrap_or(Format::Csv) {
                Format::Json => to_json(&serde_json::to_value(&rows).map_err(io_err)?),
                _ => emit::sweep_to_csv(&rows).map_err(io_err)?,
            };
            write_or_return(&out, text)
        }
        Command::Diagram { rep, out } => {
            let spec = resolve_spec(&rep)?;
            if matches!(spec.family, Family::FuzzySphere | Family::NCTorusFinite) {
                return Err(CliError::Usage("diagrams are drawn for s2 and t2 families only".into()));
            }
            if !(spec.alpha > 0.0 && spec.alpha < PI) {
                return Err(CliError::Usage(format!("alpha = {} outside (0, pi)", spec.alpha)));
            }
            write_or_return(&out, emit::diagram_svg(&spec))
        }
    }
}

fn report_error(err: &CliError, format: Option<Format>) {
    let (kind, msg) = match err {
        CliError::Usage(m) => ("usage", m),
        CliError::Domain(m) => ("domain", m),
    };
    if format == Some(Format::Text) {
        let colored = std::env::var_os("NO_COLOR").is_none() && std::io::stderr().is_terminal();
        if colored {
            eprintln!("\x1b[31merror\x1b[0m: {msg}");
        } else {
            eprintln!("error: {msg}");
        }
    } else {
        eprintln!("{}", json!({ "error": { "kind": kind, "message": msg } }));
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let format = cli.format;
    match execute(cli.cmd, format) {
        Ok(out) => {
            print!("{}", out.text);
            i32::from(out.negative)
        }
        Err(e) => {
            report_error(&e, format);
            e.code()
        }
    }
}
