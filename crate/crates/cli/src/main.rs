use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use plspan::exact::{parse_rational, Rational};
use plspan::mesh::{export_mesh, import_mesh, EmbedMode};
use plspan::par::Execution;
use plspan::polygon::{format_polygon, read_polygon, write_polygon, Family, FamilySpec};
use plspan::report::{run_bounds, run_span, verify_mesh, SpanOptions, Strategy};
use plspan::seifert::SmoothingRule;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Triangulated surfaces spanning closed polygons, built and checked exactly.
#[derive(Parser)]
#[command(name = "plspan", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a polygon from one of the generator families.
    Generate(GenerateArgs),
    /// Build a spanning surface, verify it and write mesh and report.
    Span(SpanArgs),
    /// Check a mesh, optionally against the polygon it should bound.
    Verify(VerifyArgs),
    /// Lower and upper bounds for a polygon.
    Bounds(BoundsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Torus,
    Twist,
    Ngon,
    Random,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// family parameter for torus and twist
    #[arg(long)]
    m: Option<usize>,
    /// vertex count for ngon and random
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long, env = "PLSPAN_SEED", default_value_t = 0)]
    seed: u64,
    /// defaults to stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpanArgs {
    #[arg(long)]
    input: PathBuf,
    /// mesh output, `.off` or `.obj`
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report, defaults to stdout
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, env = "PLSPAN_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "orientation")]
    rule: SmoothingRule,
    #[arg(long, default_value = "auto")]
    strategy: Strategy,
    #[arg(long)]
    knot_genus: Option<i64>,
    #[arg(long, value_parser = rational)]
    unoriented_genus: Option<Rational>,
    /// verify on one thread
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Embedded,
    ComplementaryImmersed,
}

#[derive(Args)]
struct VerifyArgs {
    mesh: PathBuf,
    poly: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "embedded")]
    mode: ModeArg,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct BoundsArgs {
    poly: PathBuf,
    #[arg(long, default_value_t = 8)]
    projections: usize,
    #[arg(long, env = "PLSPAN_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    knot_genus: Option<i64>,
    #[arg(long, value_parser = rational)]
    unoriented_genus: Option<Rational>,
    #[arg(long)]
    report: Option<PathBuf>,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn exec(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn emit<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct FailureReport<'a> {
    input: String,
    seed: u64,
    strategy: Strategy,
    rule: SmoothingRule,
    error: &'a str,
}

fn generate(a: GenerateArgs) -> Result<bool> {
    let (family, param) = match a.family {
        FamilyArg::Torus => (Family::TorusStick, a.m.context("--m is required for torus")?),
        FamilyArg::Twist => (Family::TwistWrithe, a.m.context("--m is required for twist")?),
        FamilyArg::Ngon => (Family::PlanarNgon, a.n.context("--n is required for ngon")?),
        FamilyArg::Random => (Family::Random, a.n.context("--n is required for random")?),
    };
    let spec = FamilySpec {
        family,
        param,
        dim: a.dim,
        seed: a.seed,
    };
    let p = spec.generate()?;
    match &a.out {
        Some(path) => {
            write_polygon(&p, path)?;
            println!("n={} dim={}", p.n(), p.dim());
        }
        None => print!("{}", format_polygon(&p)),
    }
    Ok(true)
}

fn span(a: SpanArgs) -> Result<bool> {
    let p = read_polygon(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let opts = SpanOptions {
        seed: a.seed,
        rule: a.rule,
        strategy: a.strategy,
        knot_genus: a.knot_genus,
        unoriented_genus: a.unoriented_genus,
        exec: exec(a.sequential),
    };
    let input = a.input.display().to_string();
    let out = match run_span(&p, &input, &opts) {
        Ok(out) => out,
        Err(e) => {
            let msg = e.to_string();
            let failure = FailureReport {
                input,
                seed: a.seed,
                strategy: a.strategy,
                rule: a.rule,
                error: &msg,
            };
            emit(&failure, a.report.as_deref())?;
            bail!(msg);
        }
    };
    if let Some(path) = &a.out {
        export_mesh(&out.mesh, path).with_context(|| format!("writing {}", path.display()))?;
    }
    emit(&out.report, a.report.as_deref())?;
    if let Some(w) = &out.report.witness {
        eprintln!("plspan: {w}");
    }
    Ok(out.report.passed())
}

fn verify(a: VerifyArgs) -> Result<bool> {
    let m = import_mesh(&a.mesh).with_context(|| format!("reading {}", a.mesh.display()))?;
    let p = a.poly.as_ref().map(read_polygon).transpose()?;
    let mode = match a.mode {
        ModeArg::Embedded => EmbedMode::Embedded,
        ModeArg::ComplementaryImmersed => EmbedMode::ComplementaryImmersed,
    };
    let r = verify_mesh(&m, p.as_ref(), mode, exec(a.sequential));
    emit(&r, a.report.as_deref())?;
    if let Some(w) = &r.witness {
        eprintln!("plspan: {w}");
    }
    Ok(r.passed())
}

fn bounds(a: BoundsArgs) -> Result<bool> {
    let p = read_polygon(&a.poly).with_context(|| format!("reading {}", a.poly.display()))?;
    let r = run_bounds(&p, a.projections, a.seed, a.knot_genus, a.unoriented_genus)?;
    emit(&r, a.report.as_deref())?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Generate(a) => generate(a),
        Cmd::Span(a) => span(a),
        Cmd::Verify(a) => verify(a),
        Cmd::Bounds(a) => bounds(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("plspan: {e:#}");
            ExitCode::from(2)
        }
    }
}
