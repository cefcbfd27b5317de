use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nhsym::clifford::{parse_complex, GammaExpr};
use nhsym::model::{
    dirac4, fig5_preset, honeycomb_flake, load_model, model_to_string, pyramid, rt_wheel, ssh_bloch, Dirac4Variant, Model,
    PyramidVariant, Sublattice, SshVariant,
};
use nhsym::spectra::{
    ep_json, ep_locate, figure_family, sweep, sweep_csv, sweep_events_json, write_atomic, EpOutcome, EventKind, Family,
};
use nhsym::symmetry::{
    check, discover, discover_in_basis16, parse_symop, RelationKind, SymOp, TOL_DISCOVERED, TOL_EXACT,
};
use nhsym::C64;
use serde_json::json;

const PRESETS: &str = "dirac4a, dirac4b, pyramid-nochiral, pyramid-chiral, rt_wheel, honeycomb, fig5, ssh-chiral, ssh-pseudo";

#[derive(Parser)]
#[command(name = "nhsym", version, about = "Symmetry analysis of non-Hermitian tight-binding models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check symmetry relations or discover operators for one model.
    Check(CheckArgs),
    /// Sweep a model family and write trajectories and events.
    Sweep(FamilyArgs),
    /// Locate an exceptional point in a model family.
    Ep(EpArgs),
    /// Write a model file.
    Build(BuildArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Named preset
    #[arg(long)]
    preset: Option<String>,
    /// Model file
    #[arg(long)]
    file: Option<PathBuf>,
    /// Figure family evaluated at --param
    #[arg(long)]
    fig: Option<String>,
}

#[derive(Args)]
struct Params {
    #[arg(long)]
    g1: Option<String>,
    #[arg(long)]
    g2: Option<String>,
    #[arg(long)]
    g3: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    /// Flake coupling
    #[arg(long)]
    g: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    t1: Option<f64>,
    #[arg(long)]
    t2: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    /// Pyramid detuning as a gamma expression, e.g. "0.3*g1*g2 + (0.1+0.2i)*g3*g5"
    #[arg(long, allow_hyphen_values = true)]
    detune: Option<String>,
    /// Family parameter for --fig
    #[arg(long, allow_hyphen_values = true)]
    param: Option<f64>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    params: Params,
    /// Operator as a gamma expression or an operator file
    #[arg(long)]
    op: Option<String>,
    /// Relation for --op given as a gamma expression
    #[arg(long, default_value = "chiral")]
    kind: String,
    /// Relation whose operator space to compute
    #[arg(long)]
    discover: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    /// Directory for check.json
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Target {
    /// Figure protocol: 1b, 2b, 2c, 4c, 4d, 5b
    #[arg(long)]
    fig: Option<String>,
    /// Any named family, including jordan2
    #[arg(long)]
    family: Option<String>,
}

impl Target {
    fn resolve(&self) -> Result<Family, Failure> {
        family(self.fig.as_deref().or(self.family.as_deref()).unwrap_or_default())
    }
}

#[derive(Args)]
struct FamilyArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, default_value_t = 400)]
    steps: usize,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
    range: Option<Vec<f64>>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct EpArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
    bracket: Option<Vec<f64>>,
    /// Target eigenvalue
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    eps0: String,
    /// Directory for ep_<family>.json
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    params: Params,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Negative,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn complex(v: &Option<String>, default: C64) -> Result<C64, Failure> {
    match v {
        Some(s) => Ok(parse_complex(s)?),
        None => Ok(default),
    }
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn preset(name: &str, p: &Params) -> Result<Model, Failure> {
    let m = match name {
        "dirac4a" | "dirac4b" => {
            let variant = if name == "dirac4a" { Dirac4Variant::A } else { Dirac4Variant::B };
            dirac4(variant, complex(&p.g1, re(1.0))?, complex(&p.g2, re(0.5))?)
        }
        "pyramid-nochiral" | "pyramid-chiral" => {
            let variant = if name == "pyramid-chiral" { PyramidVariant::Chiral } else { PyramidVariant::NoChiral };
            let detune: Vec<_> = match &p.detune {
                Some(s) => s.parse::<GammaExpr>()?.terms().to_vec(),
                None => Vec::new(),
            };
            pyramid(variant, complex(&p.g1, re(1.0))?, complex(&p.g2, re(1.0))?, complex(&p.g3, re(0.8))?, &detune)?
        }
        "rt_wheel" | "rt-wheel" => rt_wheel(complex(&p.beta, re(0.75))?, complex(&p.g1, re(1.0))?, complex(&p.g2, re(1.5))?),
        "honeycomb" => honeycomb_flake(p.g.unwrap_or(1.0), p.tau.unwrap_or(0.0)),
        "fig5" => fig5_preset(p.delta.unwrap_or(0.0)),
        "ssh-chiral" | "ssh-pseudo" => {
            let variant = if name == "ssh-chiral" { SshVariant::AsymCoupling } else { SshVariant::ImagOnsite };
            let h = ssh_bloch(variant, p.t1.unwrap_or(1.0), p.t2.unwrap_or(0.5), p.tau.unwrap_or(0.3), p.k.unwrap_or(0.0));
            Model::from_matrix(name, &h, vec![Sublattice::A, Sublattice::B], false)?
        }
        _ => return Err(Failure::Usage(format!("unknown preset '{name}' (known: {PRESETS})"))),
    };
    Ok(m)
}

fn family(name: &str) -> Result<Family, Failure> {
    figure_family(name).ok_or_else(|| Failure::Usage(format!("unknown family '{name}'")))
}

fn model(src: &Source, p: &Params) -> Result<Model, Failure> {
    if let Some(name) = &src.preset {
        return preset(name, p);
    }
    if let Some(path) = &src.file {
        return load_model(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())));
    }
    let f = family(src.fig.as_deref().unwrap_or_default())?;
    Ok(f.model(p.param.unwrap_or(f.range.0)))
}

fn operator(arg: &str, kind: &str, n: usize) -> Result<SymOp, Failure> {
    if Path::new(arg).is_file() {
        let text = fs::read_to_string(arg)?;
        return parse_symop(&text).map_err(|e| Failure::Usage(format!("{arg}: {e}")));
    }
    let kind: RelationKind = kind.parse()?;
    let expr: GammaExpr = arg.parse()?;
    if n != 4 {
        return Err(Failure::Usage(format!("gamma expression '{arg}' needs a 4-site model, found {n} sites")));
    }
    Ok(SymOp::new(kind, expr.to_matrix(), arg))
}

/// Zeroes real or imaginary parts below `1e-12` of the largest coefficient.
fn tidy(e: &GammaExpr) -> GammaExpr {
    let top = e.terms().iter().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    let snap = |x: f64| if x.abs() <= 1e-12 * top { 0.0 } else { x };
    let mut out = GammaExpr::new();
    for (label, c) in e.terms() {
        out.push(label.clone(), C64::new(snap(c.re), snap(c.im)));
    }
    out
}

fn run_check(a: &CheckArgs) -> Outcome {
    let m = model(&a.source, &a.params)?;
    let h = m.to_matrix();
    let n = m.n_sites();
    let mut ops = Vec::new();
    if let Some(arg) = &a.op {
        ops.push(operator(arg, &a.kind, n)?);
    }
    let relation = a.discover.as_deref().map(str::parse::<RelationKind>).transpose()?;
    if ops.is_empty() && relation.is_none() {
        if m.hints().is_empty() {
            return Err(Failure::Usage(format!("model '{}' has no built-in operators; pass --op or --discover", m.name)));
        }
        ops = m.hints().to_vec();
    }
    println!("model {} ({n} sites)", m.name);
    let tol = a.tol.unwrap_or(TOL_EXACT);
    let mut pass = true;
    let mut checks = Vec::new();
    for op in &ops {
        let (residual, ok) = match check(&h, op) {
            Ok(r) => (Some(r), r <= tol),
            Err(e) => {
                println!("{} {}  {e}  FAIL", op.kind, op.label);
                (None, false)
            }
        };
        if let Some(r) = residual {
            println!("{} {}  residual {r:.3e}  {}", op.kind, op.label, if ok { "PASS" } else { "FAIL" });
        }
        pass &= ok;
        checks.push(json!({ "relation": op.kind.tag(), "label": op.label, "residual": residual, "pass": ok }));
    }
    let mut discoveries = Vec::new();
    if let Some(kind) = relation {
        let d = if n == 4 { discover_in_basis16(&h, kind) } else { discover(&h, kind, None) };
        let dtol = a.tol.unwrap_or(TOL_DISCOVERED);
        let ok = d.dimension > 0 && d.max_residual() <= dtol;
        println!("discover {kind}: dimension {}  max residual {:.3e}", d.dimension, d.max_residual());
        let basis: Vec<String> = match d.gamma_exprs() {
            Some(e) => e.iter().map(|x| tidy(x).to_string()).collect(),
            None => d.operators.iter().map(|o| o.label.clone()).collect(),
        };
        for b in &basis {
            println!("  {b}");
        }
        pass &= ok;
        discoveries.push(json!({
            "relation": kind.tag(), "dimension": d.dimension, "max_residual": d.max_residual(), "basis": basis, "pass": ok,
        }));
    }
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir)?;
        let doc = json!({ "model": m.name, "n_sites": n, "checks": checks, "discoveries": discoveries, "pass": pass });
        write_atomic(dir.join("check.json"), &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn run_sweep(a: &FamilyArgs) -> Outcome {
    let f = a.target.resolve()?;
    let (lo, hi) = match &a.range {
        Some(r) => (r[0], r[1]),
        None => f.range,
    };
    if a.steps < 2 {
        return Err(Failure::Usage("--steps must be at least 2".into()));
    }
    let r = sweep(&f, lo, hi, a.steps)?;
    fs::create_dir_all(&a.out)?;
    let csv = a.out.join(format!("sweep_{}.csv", f.name));
    let events = a.out.join(format!("events_{}.json", f.name));
    write_atomic(&csv, &sweep_csv(&r))?;
    write_atomic(&events, &sweep_events_json(&r))?;
    println!("family {}  {} in [{lo}, {hi}]  {} steps", f.name, f.param, r.steps.len());
    println!(
        "all steps: origin {}  real_axis {}  imag_axis {}",
        r.all_steps(|s| s.origin),
        r.all_steps(|s| s.real_axis),
        r.all_steps(|s| s.imag_axis)
    );
    for kind in [EventKind::ZeroCrossing, EventKind::Degeneracy, EventKind::EpCandidate] {
        let values: Vec<String> = r.events_of(kind).map(|e| format!("{:.6}", e.value)).collect();
        println!("{kind:?}: {} [{}]", values.len(), values.join(", "));
    }
    println!("wrote {} and {}", csv.display(), events.display());
    Ok(())
}

fn run_ep(a: &EpArgs) -> Outcome {
    let f = a.target.resolve()?;
    let (lo, hi) = match &a.bracket {
        Some(b) => (b[0], b[1]),
        None => f.range,
    };
    let out = ep_locate(&f, lo, hi, parse_complex(&a.eps0)?)?;
    let text = ep_json(&out);
    print!("{text}");
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir)?;
        write_atomic(dir.join(format!("ep_{}.json", f.name)), &text)?;
    }
    match out {
        EpOutcome::Found(_) => Ok(()),
        EpOutcome::NotFound { .. } => Err(Failure::Negative),
    }
}

fn run_build(a: &BuildArgs) -> Outcome {
    let text = model_to_string(&model(&a.source, &a.params)?);
    match &a.out {
        Some(path) => write_atomic(path, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(a) => run_check(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Ep(a) => run_ep(a),
        Command::Build(a) => run_build(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
