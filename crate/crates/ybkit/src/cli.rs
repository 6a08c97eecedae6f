//! Command-line front end. Exit codes: 0 all checks pass, 1 a check failed,
//! 2 usage or configuration error.

use crate::curve_oracle::{run_oracle, Case, TFrame, Trivialization};
use crate::serial::{HandleDescriptor, TensorRecord};
use crate::series::{classify_scalar, normalize_scalar_r0, r0_laurent, CValue, ScalarClassification};
use crate::solutions::{Family, Kind, SolutionHandle};
use crate::special::{j_invariant, ModularParam};
use crate::tensor::{rank_as_map, Tensor2};
use crate::verification::{all_pass, run_suite, unitarity_residual, Check, SuiteConfig};
use crate::{Error, Result, C64};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Parse `re+imj`, `re-imi`, `2i`, `-i`, `0.5` and similar tokens.
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("not a complex number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let num = |x: &str| -> Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| bad()),
        }
    };
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return Ok(C64::new(t.parse::<f64>().map_err(|_| bad())?, 0.0));
    };
    // The real/imaginary split is the last sign that is not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(C64::new(body[..k].parse::<f64>().map_err(|_| bad())?, num(&body[k..])?)),
        None => Ok(C64::new(0.0, num(body)?)),
    }
}

fn complex_arg(s: &str) -> std::result::Result<C64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "ybkit", version, about = "Evaluate and verify associative and classical Yang-Baxter solutions")]
pub struct Cli {
    /// JSON file supplying defaults for any flag (keys as the long flag names, with underscores).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    /// Comma-separated table instead of structured text.
    #[arg(long, global = true)]
    pub csv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a solution on a grid of (u, v) points.
    Eval(EvalArgs),
    /// Run the residual checks.
    Verify(VerifyArgs),
    /// Classify a scalar solution by C(r₀).
    Classify(FamilyArgs),
    /// Compare the nodal-curve construction with the trigonometric closed forms.
    Oracle(OracleArgs),
    /// Tabulate a quantity over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    #[value(alias = "elliptic")]
    EllipticAybe,
    EllipticCybe,
    #[value(alias = "trig1")]
    TrigAybe1,
    #[value(alias = "trig2")]
    TrigAybe2,
    #[value(alias = "trig2-reduced")]
    TrigAybe2Reduced,
    TrigCybe1,
    TrigCybe2,
    ScalarKronecker,
    ScalarTrig,
    ScalarRational,
}

#[derive(Debug, Clone, Default, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// JSON handle descriptor; overrides --family and its parameters.
    #[arg(long)]
    pub descriptor: Option<PathBuf>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub tau: Option<C64>,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub a: Option<C64>,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub b: Option<C64>,
    /// Add ε·1⊗1 to every value (a deliberately broken control).
    #[arg(long)]
    pub perturb: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// u values (repeatable); ignored for CYBE families.
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub u: Vec<C64>,
    /// v values (repeatable).
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub v: Vec<C64>,
    /// λ values, u = log λ.
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub lambda: Vec<C64>,
    /// μ values, v = log μ.
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub mu: Vec<C64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    Aybe,
    Cybe,
    Unitarity,
    Nondegeneracy,
    Commutator,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Restrict to these checks (repeatable). `cybe` on an AYBE family checks its CYBE partner.
    #[arg(long, value_enum)]
    pub check: Vec<CheckName>,
    /// Samples per equation check.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Tolerance override, e.g. `aybe=1e-9` (repeatable; keys aybe, cybe, unitarity).
    #[arg(long)]
    pub tol: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrivName {
    HalfPower,
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FrameName {
    Structural,
    Display,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub case: Option<u8>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub trivialization: Option<TrivName>,
    #[arg(long, value_enum)]
    pub frame: Option<FrameName>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// C(r₀) of the Kronecker function against −20/49·(1 − 1/j(τ)), over τ.
    C,
    /// |C(r₀) − (−20/49)(1 − 1/j(τ))| over τ.
    JDeviation,
    /// Rank of r(u, v) as a map, over v.
    Rank,
    /// Unitarity residual, over v.
    Unitarity,
    /// Largest relative AYBE or CYBE residual of the elliptic family, over τ.
    Residual,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    /// Grid values (repeatable): τ for c, j-deviation and residual; v otherwise.
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub at: Vec<C64>,
    /// Linear grid `start:end:count`, appended to --at.
    #[arg(long)]
    pub range: Option<String>,
    /// Fixed u for rank and unitarity sweeps.
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub u: Option<C64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Keys a config file may supply. Command-line flags take precedence.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub family: Option<FamilyName>,
    pub descriptor: Option<HandleDescriptor>,
    pub d: Option<usize>,
    pub r: Option<usize>,
    pub tau: Option<String>,
    pub a: Option<String>,
    pub b: Option<String>,
    pub perturb: Option<f64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub tol: Option<Vec<String>>,
    pub case: Option<u8>,
    pub csv: Option<bool>,
    pub out: Option<PathBuf>,
}

fn read_config(path: &Option<PathBuf>) -> Result<ConfigFile> {
    match path {
        None => Ok(ConfigFile::default()),
        Some(p) => Ok(serde_json::from_str(&std::fs::read_to_string(p)?)?),
    }
}

fn opt_complex(s: &Option<String>) -> Result<Option<C64>> {
    s.as_deref().map(parse_complex).transpose()
}

fn build_handle(f: &FamilyArgs, cfg: &ConfigFile) -> Result<SolutionHandle> {
    let descriptor = match &f.descriptor {
        Some(p) => Some(HandleDescriptor::from_json(&std::fs::read_to_string(p)?)?),
        None if f.family.is_none() => cfg.descriptor.clone(),
        None => None,
    };
    let mut h = if let Some(desc) = descriptor {
        desc.build()?
    } else {
        let name = f.family.or(cfg.family).ok_or_else(|| Error::InvalidParameter("--family is required".into()))?;
        let d = f.d.or(cfg.d).unwrap_or(2);
        let r = f.r.or(cfg.r).unwrap_or(1);
        let tau = match f.tau {
            Some(t) => t,
            None => opt_complex(&cfg.tau)?.unwrap_or(C64::new(0.0, 1.0)),
        };
        let a = match f.a {
            Some(t) => t,
            None => opt_complex(&cfg.a)?.unwrap_or(C64::new(1.0, 0.0)),
        };
        let b = match f.b {
            Some(t) => t,
            None => opt_complex(&cfg.b)?.unwrap_or(C64::new(1.0, 0.0)),
        };
        let family = match name {
            FamilyName::EllipticAybe => Family::EllipticAybe { d, r, tau },
            FamilyName::EllipticCybe => Family::EllipticCybe { d, r, tau },
            FamilyName::TrigAybe1 => Family::TrigAybe1,
            FamilyName::TrigAybe2 => Family::TrigAybe2,
            FamilyName::TrigAybe2Reduced => Family::TrigAybe2Reduced,
            FamilyName::TrigCybe1 => Family::TrigCybe1,
            FamilyName::TrigCybe2 => Family::TrigCybe2,
            FamilyName::ScalarKronecker => Family::ScalarKronecker { tau },
            FamilyName::ScalarTrig => Family::ScalarTrig,
            FamilyName::ScalarRational => Family::ScalarRational { a, b },
        };
        SolutionHandle::new(family)?
    };
    if let Some(eps) = f.perturb.or(cfg.perturb) {
        let n = h.n();
        h = h.with_perturbation(Tensor2::one(n).scale(C64::new(eps, 0.0)))?;
    }
    Ok(h)
}

fn fmt_c(z: C64) -> String {
    format!("{},{}", z.re, z.im)
}

#[derive(Serialize)]
struct EvalPoint {
    u: C64,
    v: C64,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<TensorRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct EvalOutput {
    handle: HandleDescriptor,
    points: Vec<EvalPoint>,
}

fn cmd_eval(a: &EvalArgs, cfg: &ConfigFile, csv: bool) -> Result<(String, i32)> {
    let h = build_handle(&a.family, cfg)?;
    let mut us: Vec<C64> = a.u.clone();
    us.extend(a.lambda.iter().map(|l| l.ln()));
    let mut vs: Vec<C64> = a.v.clone();
    vs.extend(a.mu.iter().map(|m| m.ln()));
    if vs.is_empty() {
        return Err(Error::InvalidParameter("give at least one --v or --mu".into()));
    }
    if h.kind() == Kind::Cybe {
        us = vec![C64::new(0.0, 0.0)];
    } else if us.is_empty() {
        return Err(Error::InvalidParameter("give at least one --u or --lambda".into()));
    }
    let mut points = Vec::new();
    for &u in &us {
        for &v in &vs {
            let (value, error) = match h.eval_any(u, v) {
                Ok(t) => (Some(TensorRecord::from(&t)), None),
                Err(e) => (None, Some(e.to_string())),
            };
            points.push(EvalPoint { u, v, value, error });
        }
    }
    if csv {
        let n = h.n();
        let mut s = String::from("u_re,u_im,v_re,v_im");
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        s += &format!(",c{i}{j}{k}{l}_re,c{i}{j}{k}{l}_im");
                    }
                }
            }
        }
        s += ",error\n";
        for p in &points {
            s += &format!("{},{}", fmt_c(p.u), fmt_c(p.v));
            match &p.value {
                Some(t) => {
                    for c in &t.coeffs {
                        s += &format!(",{},{}", c[0], c[1]);
                    }
                    s += ",\n";
                }
                None => {
                    s += &",,".repeat(n.pow(4));
                    s += &format!(",{}\n", p.error.as_deref().unwrap_or("").replace(',', ";"));
                }
            }
        }
        return Ok((s, EXIT_PASS));
    }
    let out = EvalOutput { handle: HandleDescriptor::of(&h), points };
    Ok((serde_json::to_string_pretty(&out)? + "\n", EXIT_PASS))
}

fn apply_tol(cfg: &mut SuiteConfig, item: &str) -> Result<()> {
    let (k, v) = item.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value: {item:?}")))?;
    let x: f64 = v.parse().map_err(|_| Error::Parse(format!("bad tolerance {v:?}")))?;
    match k {
        "aybe" => cfg.tol_aybe = x,
        "cybe" => cfg.tol_cybe = x,
        "unitarity" => cfg.tol_unitarity = x,
        _ => return Err(Error::Parse(format!("unknown tolerance key {k:?}"))),
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, cfg: &ConfigFile, csv: bool) -> Result<(String, i32)> {
    let mut h = build_handle(&a.family, cfg)?;
    let mut sc = SuiteConfig { seed: a.seed.or(cfg.seed).unwrap_or(0), ..SuiteConfig::default() };
    if let Some(n) = a.samples.or(cfg.samples) {
        sc.equation_samples = n;
        sc.unitarity_samples = n;
    }
    for t in cfg.tol.iter().flatten().chain(&a.tol) {
        apply_tol(&mut sc, t)?;
    }
    if !a.check.is_empty() {
        let checks: Vec<Check> = a
            .check
            .iter()
            .map(|c| match c {
                CheckName::Aybe => Check::Aybe,
                CheckName::Cybe => Check::Cybe,
                CheckName::Unitarity => Check::Unitarity,
                CheckName::Nondegeneracy => Check::Nondegeneracy,
                CheckName::Commutator => Check::Commutator,
            })
            .collect();
        if checks.contains(&Check::Cybe) && h.kind() == Kind::Aybe {
            let p = h.perturbation().cloned();
            h = h.cybe_partner()?;
            if let Some(p) = p {
                h = h.with_perturbation(p)?;
            }
        }
        sc.checks = Some(checks);
    }
    let reports = run_suite(&h, &sc)?;
    let code = if all_pass(&reports) { EXIT_PASS } else { EXIT_FAIL };
    if csv {
        let mut s = String::from("equation,points,skipped,max_abs,max_rel,tolerance,pass\n");
        for r in &reports {
            s += &format!(
                "{},{},{},{:e},{:e},{:e},{}\n",
                r.equation,
                r.points.len(),
                r.skipped.len(),
                r.max_abs,
                r.max_rel,
                r.tolerance,
                r.pass
            );
        }
        return Ok((s, code));
    }
    Ok((serde_json::to_string_pretty(&reports)? + "\n", code))
}

#[derive(Serialize)]
struct ClassifyOutput {
    handle: HandleDescriptor,
    classification: ScalarClassification,
    /// Laurent coefficients b₋₁, b₀, …, b₅ of r₀(v) in the normal form.
    r0_normal_form: Vec<C64>,
}

fn cmd_classify(f: &FamilyArgs, cfg: &ConfigFile, csv: bool) -> Result<(String, i32)> {
    let h = build_handle(f, cfg)?;
    let classification = classify_scalar(&h)?;
    let nf = normalize_scalar_r0(&h)?;
    let coeffs = r0_laurent(&nf.handle, 5)?;
    if csv {
        let c = match classification.c {
            Some(CValue::Finite(z)) => fmt_c(z),
            Some(CValue::Infinity) => "inf,".into(),
            None => ",".into(),
        };
        let verdict = serde_json::to_value(classification.verdict)?;
        let s = format!(
            "c3_re,c3_im,c5_re,c5_im,C_re,C_im,verdict\n{},{},{},{}\n",
            fmt_c(classification.c3),
            fmt_c(classification.c5),
            c,
            verdict.as_str().unwrap_or("")
        );
        return Ok((s, EXIT_PASS));
    }
    let out = ClassifyOutput { handle: HandleDescriptor::of(&h), classification, r0_normal_form: coeffs };
    Ok((serde_json::to_string_pretty(&out)? + "\n", EXIT_PASS))
}

fn cmd_oracle(a: &OracleArgs, cfg: &ConfigFile, csv: bool) -> Result<(String, i32)> {
    let case = match a.case.or(cfg.case).unwrap_or(1) {
        1 => Case::One,
        2 => Case::Two,
        k => return Err(Error::InvalidParameter(format!("--case must be 1 or 2, got {k}"))),
    };
    let triv = match a.trivialization {
        Some(TrivName::Constant) => Trivialization::Constant,
        _ => Trivialization::HalfPower,
    };
    let frame = match a.frame {
        Some(FrameName::Display) => TFrame::Display,
        _ => TFrame::Structural,
    };
    let samples = a.samples.or(cfg.samples).unwrap_or(20);
    let rep = run_oracle(case, samples, a.seed.or(cfg.seed).unwrap_or(0), triv, frame)?;
    let code = if rep.pass { EXIT_PASS } else { EXIT_FAIL };
    if csv {
        let s = format!(
            "case,trivialization,frame,samples,max_deviation,max_dependence,factors_through_lambda_mu,pass\n{:?},{:?},{:?},{},{:e},{:e},{},{}\n",
            rep.case,
            rep.trivialization,
            rep.frame,
            rep.samples,
            rep.max_deviation,
            rep.max_dependence,
            rep.factors_through_lambda_mu,
            rep.pass
        );
        return Ok((s, code));
    }
    Ok((serde_json::to_string_pretty(&rep)? + "\n", code))
}

fn parse_range(s: &str) -> Result<Vec<C64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected start:end:count, got {s:?}")));
    }
    let (a, b) = (parse_complex(parts[0])?, parse_complex(parts[1])?);
    let n: usize = parts[2].parse().map_err(|_| Error::Parse(format!("bad count {:?}", parts[2])))?;
    Ok(match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|k| a + (b - a) * (k as f64 / (n - 1) as f64)).collect(),
    })
}

/// Target value −20/49·(1 − 1/j(τ)) of C(r₀) for the Kronecker function.
pub fn kronecker_c_target(tau: C64) -> Result<C64> {
    let j = j_invariant(&ModularParam::new(tau)?)?;
    Ok(C64::new(-20.0 / 49.0, 0.0) * (1.0 - 1.0 / j))
}

fn c_value(cl: &ScalarClassification) -> C64 {
    match cl.c {
        Some(CValue::Finite(z)) => z,
        Some(CValue::Infinity) => C64::new(f64::INFINITY, 0.0),
        None => C64::new(f64::NAN, 0.0),
    }
}

/// One sweep row: grid value and the tabulated numbers.
fn sweep_row(a: &SweepArgs, cfg: &ConfigFile, x: C64) -> Result<Vec<f64>> {
    match a.quantity {
        Quantity::C | Quantity::JDeviation => {
            let h = SolutionHandle::new(Family::ScalarKronecker { tau: x })?;
            let c = c_value(&classify_scalar(&h)?);
            let target = kronecker_c_target(x)?;
            Ok(match a.quantity {
                Quantity::C => vec![c.re, c.im, target.re, target.im],
                _ => vec![(c - target).norm()],
            })
        }
        Quantity::Residual => {
            let mut f = a.family.clone();
            f.tau = Some(x);
            if f.family.is_none() && cfg.family.is_none() && f.descriptor.is_none() {
                f.family = Some(FamilyName::EllipticAybe);
            }
            let h = build_handle(&f, cfg)?;
            let check = if h.kind() == Kind::Aybe { Check::Aybe } else { Check::Cybe };
            let sc = SuiteConfig { seed: a.seed.or(cfg.seed).unwrap_or(0), checks: Some(vec![check]), ..SuiteConfig::default() };
            let rep = run_suite(&h, &sc)?;
            Ok(vec![rep[0].max_rel])
        }
        Quantity::Rank | Quantity::Unitarity => {
            let h = build_handle(&a.family, cfg)?;
            let u = a.u.unwrap_or(C64::new(0.3, 0.1));
            match a.quantity {
                Quantity::Rank => Ok(vec![rank_as_map(&h.eval_any(u, x)?) as f64]),
                _ => Ok(vec![unitarity_residual(&h, u, x)?.rel()]),
            }
        }
    }
}

fn cmd_sweep(a: &SweepArgs, cfg: &ConfigFile, csv: bool) -> Result<(String, i32)> {
    let mut grid = a.at.clone();
    if let Some(r) = &a.range {
        grid.extend(parse_range(r)?);
    }
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty grid: give --at or --range".into()));
    }
    // Grid points are independent; evaluate them in parallel and keep grid order.
    let rows: Vec<Result<Vec<f64>>> = std::thread::scope(|s| {
        let handles: Vec<_> = grid.iter().map(|&x| s.spawn(move || sweep_row(a, cfg, x))).collect();
        handles
            .into_iter()
            .map(|j| j.join().unwrap_or_else(|_| Err(Error::Unstable("worker panicked".into()))))
            .collect()
    });
    let cols: &[&str] = match a.quantity {
        Quantity::C => &["C_re", "C_im", "target_re", "target_im"],
        Quantity::JDeviation => &["deviation"],
        Quantity::Rank => &["rank"],
        Quantity::Unitarity => &["unitarity_rel"],
        Quantity::Residual => &["residual_rel"],
    };
    let mut s = format!("x_re,x_im,{},error\n", cols.join(","));
    let mut table = Vec::new();
    for (x, row) in grid.iter().zip(rows) {
        match row {
            Ok(vals) => {
                let joined: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
                s += &format!("{},{},\n", fmt_c(*x), joined.join(","));
                table.push(serde_json::json!({ "x": x, "values": vals }));
            }
            Err(e) => {
                s += &format!("{}{},{}\n", fmt_c(*x), ",".repeat(cols.len()), e.to_string().replace(',', ";"));
                table.push(serde_json::json!({ "x": x, "error": e.to_string() }));
            }
        }
    }
    if csv {
        return Ok((s, EXIT_PASS));
    }
    let out = serde_json::json!({ "quantity": format!("{:?}", a.quantity), "columns": cols, "rows": table });
    Ok((serde_json::to_string_pretty(&out)? + "\n", EXIT_PASS))
}

/// Parse `argv` and run; output goes to `--out` or `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = read_config(&cli.config).and_then(|cfg| {
        let csv = cli.csv || cfg.csv.unwrap_or(false);
        let (text, code) = match &cli.command {
            Command::Eval(a) => cmd_eval(a, &cfg, csv)?,
            Command::Verify(a) => cmd_verify(a, &cfg, csv)?,
            Command::Classify(a) => cmd_classify(a, &cfg, csv)?,
            Command::Oracle(a) => cmd_oracle(a, &cfg, csv)?,
            Command::Sweep(a) => cmd_sweep(a, &cfg, csv)?,
        };
        match cli.out.clone().or(cfg.out.clone()) {
            Some(p) => std::fs::write(p, text)?,
            None => stdout.write_all(text.as_bytes())?,
        }
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_CONFIG
        }
    }
}
