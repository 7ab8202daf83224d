//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdyb_core::block::TensorSpace;
use qdyb_core::cartan::RootSystem;
use qdyb_core::context::Context;
use qdyb_core::diffop::difference_operator;
use qdyb_core::exact::{DynField, Numeric, Symbolic};
use qdyb_core::exchange::exchange_matrix;
use qdyb_core::intertwine::fusion_matrix;
use qdyb_core::repmod::FinModule;
use qdyb_core::trace::{q_matrix, trace_function, weighted_trace};
use serde_json::{json, Value};

use crate::json;
use crate::modules::{parse_algebra, parse_modules};
use crate::suite::{explicit_job, run_job, suite_jobs, Identity, Mode, RunError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GENERICITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "qdyb",
    version,
    about = "Exact fusion and exchange matrices for Verma-module intertwiners"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a matrix, difference operator or trace function as JSON.
    Compute {
        #[arg(value_enum)]
        object: Object,
        #[command(flatten)]
        opts: Opts,
    },
    /// Check identities and print reports.
    Verify {
        #[arg(value_enum)]
        identity: Target,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Object {
    Fusion,
    Exchange,
    Qmatrix,
    Diffop,
    Trace,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Target {
    Cocycle,
    Qdybe,
    FusionExchange,
    DiffopCommute,
    QIdentities,
    Eta,
    Mr,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum ModeArg {
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum TraceKind {
    Psi,
    Weighted,
}

#[derive(Args, Debug)]
pub struct Opts {
    #[arg(long, default_value = "A1")]
    pub algebra: String,
    /// Comma separated, e.g. `L(1),L(2)` or `L(1,0)`.
    #[arg(long, default_value = "L(1)")]
    pub modules: String,
    #[arg(long, value_enum, default_value = "symbolic")]
    pub mode: ModeArg,
    /// Required in numeric mode.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Verma depth for `eta`.
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    /// Series order for `mr` and `trace`.
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    /// Independent numeric samples per identity.
    #[arg(long, default_value_t = 1)]
    pub samples: u64,
    #[arg(long, value_enum, default_value = "psi")]
    pub kind: TraceKind,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

struct Setup {
    rs: RootSystem,
    mods: Vec<FinModule>,
    mode: Mode,
}

fn setup(opts: &Opts) -> Result<Setup, String> {
    let rs = parse_algebra(&opts.algebra)?;
    let mods = parse_modules(&rs, &opts.modules)?;
    let mode = match (opts.mode, opts.seed) {
        (ModeArg::Symbolic, _) => Mode::Symbolic,
        (ModeArg::Numeric, Some(seed)) => Mode::Numeric { seed },
        (ModeArg::Numeric, None) => return Err("--mode numeric requires --seed".into()),
    };
    if opts.samples == 0 {
        return Err("--samples must be positive".into());
    }
    if mode == Mode::Symbolic && rs.rank > 1 {
        eprintln!("warning: symbolic computations beyond rank 1 can be slow");
    }
    Ok(Setup { rs, mods, mode })
}

fn emit(opts: &Opts, v: &Value) -> Result<(), String> {
    let mut text = serde_json::to_string(v).map_err(|e| e.to_string())?;
    text.push('\n');
    match &opts.out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn usage(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn run_error(e: &RunError) -> i32 {
    eprintln!("error: {e}");
    match e {
        RunError::Usage(_) => EXIT_USAGE,
        RunError::Exhausted(_) => EXIT_GENERICITY,
        RunError::Core(c) if c.is_genericity() => EXIT_GENERICITY,
        RunError::Core(_) => EXIT_FAIL,
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match cli.command {
        Command::Compute { object, opts } => compute(object, &opts),
        Command::Verify { identity, opts } => verify(identity, &opts),
    }
}

fn identity_of(t: Target) -> Option<Identity> {
    Some(match t {
        Target::Cocycle => Identity::Cocycle,
        Target::Qdybe => Identity::Qdybe,
        Target::FusionExchange => Identity::FusionExchange,
        Target::DiffopCommute => Identity::DiffopCommute,
        Target::QIdentities => Identity::QIdentities,
        Target::Eta => Identity::Eta,
        Target::Mr => Identity::Mr,
        Target::All => return None,
    })
}

fn verify(target: Target, opts: &Opts) -> i32 {
    let s = match setup(opts) {
        Ok(s) => s,
        Err(e) => return usage(&e),
    };
    let (jobs, skipped) = match identity_of(target) {
        Some(id) => (vec![explicit_job(id, &s.mods, opts.depth, opts.order)], Vec::new()),
        None => suite_jobs(&s.mods, s.mode, opts.depth, opts.order),
    };
    for msg in &skipped {
        eprintln!("skipped {msg}");
    }
    let samples = match s.mode {
        Mode::Symbolic => 1,
        Mode::Numeric { .. } => opts.samples,
    };
    let mut reports = Vec::new();
    let mut all_pass = true;
    for (n, job) in jobs.iter().enumerate() {
        for k in 0..samples {
            let stream = n as u64 * samples + k;
            let out = match run_job(&s.rs, job, s.mode, stream) {
                Ok(o) => o,
                Err(e) => return run_error(&e),
            };
            for r in &out.reports {
                let status = if r.passed() { "pass" } else { "FAIL" };
                eprintln!(
                    "{:<20} {:<28} {} ({} entries, {:.2} s)",
                    r.identity,
                    r.operands,
                    status,
                    r.checked,
                    out.elapsed.as_secs_f64()
                );
                for f in &r.failures {
                    eprintln!("    [{}] {} <- {}: {} != {}", f.block, f.row, f.col, f.lhs, f.rhs);
                }
                reports.push(json::report(r, out.sample.as_deref()));
            }
            all_pass &= out.passed();
        }
    }
    let seed = match s.mode {
        Mode::Symbolic => Value::Null,
        Mode::Numeric { seed } => json!(seed),
    };
    let doc = json!({
        "algebra": opts.algebra,
        "mode": mode_name(s.mode),
        "modules": s.mods.iter().map(|m| m.name.clone()).collect::<Vec<_>>(),
        "reports": reports,
        "seed": seed,
        "skipped": skipped,
        "status": if all_pass { "pass" } else { "fail" },
    });
    if let Err(e) = emit(opts, &doc) {
        return usage(&e);
    }
    if all_pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Symbolic => "symbolic",
        Mode::Numeric { .. } => "numeric",
    }
}

fn matrix_value<F: DynField>(ctx: &Context<F>, object: Object, mods: &[FinModule]) -> qdyb_core::Result<Value> {
    let a = &mods[0];
    let b = &mods[1 % mods.len()];
    let o = ctx.origin();
    Ok(match object {
        Object::Fusion => json::field_matrix(&ctx.k, &TensorSpace::new(&[a, b]), &*fusion_matrix(ctx, a, b, &o)?),
        Object::Exchange => json::field_matrix(&ctx.k, &TensorSpace::new(&[a, b]), &*exchange_matrix(ctx, a, b, &o)?),
        Object::Qmatrix => json::field_matrix(&ctx.k, &TensorSpace::new(&[a]), &*q_matrix(ctx, a, &o)?),
        Object::Diffop | Object::Trace => unreachable!("symbolic only"),
    })
}

fn compute(object: Object, opts: &Opts) -> i32 {
    let s = match setup(opts) {
        Ok(s) => s,
        Err(e) => return usage(&e),
    };
    let result = match (object, s.mode) {
        (Object::Diffop | Object::Trace, Mode::Numeric { .. }) => {
            return usage("diffop and trace need --mode symbolic");
        }
        (Object::Diffop, Mode::Symbolic) => {
            let ctx = Context::new(s.rs.clone(), Symbolic::new(s.rs.rank, "x"));
            let u = &s.mods[1 % s.mods.len()];
            difference_operator(&ctx, &s.mods[0], u).map(|d| json::diffop(&d, u, "x"))
        }
        (Object::Trace, Mode::Symbolic) => {
            let ctx = Context::new(s.rs.clone(), Symbolic::new(s.rs.rank, "m"));
            let v = &s.mods[0];
            let t = match opts.kind {
                TraceKind::Psi => trace_function(&ctx, v, opts.order),
                TraceKind::Weighted => weighted_trace(&ctx, v, opts.order),
            };
            t.map(|t| json::trace(&t, v, "m"))
        }
        (_, Mode::Symbolic) => {
            let ctx = Context::new(s.rs.clone(), Symbolic::new(s.rs.rank, "x"));
            matrix_value(&ctx, object, &s.mods)
        }
        (_, Mode::Numeric { seed }) => {
            match crate::suite::at_generic_point(s.rs.rank, seed, 0, |p| {
                let ctx = Context::new(s.rs.clone(), Numeric::new(p.to_vec()));
                matrix_value(&ctx, object, &s.mods)
            }) {
                Ok((mut v, p)) => {
                    v["sample"] = json::rats(&p);
                    Ok(v)
                }
                Err(e) => return run_error(&e),
            }
        }
    };
    match result {
        Ok(v) => match emit(opts, &v) {
            Ok(()) => EXIT_PASS,
            Err(e) => usage(&e),
        },
        Err(qdyb_core::Error::EmptyZeroWeightSpace) => usage("the last module has no zero weight"),
        Err(e) => run_error(&RunError::Core(e)),
    }
}
