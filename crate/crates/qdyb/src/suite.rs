//! Verification jobs: operand assignment, symbolic or sampled evaluation,
//! and resampling at non-generic points.

use std::time::{Duration, Instant};

use qdyb_core::cartan::RootSystem;
use qdyb_core::context::Context;
use qdyb_core::diffop::verify_commutativity;
use qdyb_core::exact::{DynField, Numeric, Rat, Symbolic};
use qdyb_core::exchange::{verify_fusion_exchange, verify_qdybe};
use qdyb_core::intertwine::verify_cocycle;
use qdyb_core::repmod::FinModule;
use qdyb_core::report::Verification;
use qdyb_core::trace::{verify_eta_relation, verify_mr_equation, verify_q_identities};
use qdyb_core::Error;

use crate::sample::{Sampler, MAX_ATTEMPTS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Identity {
    Cocycle,
    Qdybe,
    FusionExchange,
    DiffopCommute,
    QIdentities,
    Eta,
    Mr,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::Cocycle,
        Identity::Qdybe,
        Identity::FusionExchange,
        Identity::DiffopCommute,
        Identity::QIdentities,
        Identity::Eta,
        Identity::Mr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Cocycle => "cocycle",
            Identity::Qdybe => "qdybe",
            Identity::FusionExchange => "fusion-exchange",
            Identity::DiffopCommute => "diffop-commute",
            Identity::QIdentities => "q-identities",
            Identity::Eta => "eta",
            Identity::Mr => "mr",
        }
    }

    /// Difference operators and trace functions need a symbolic parameter.
    pub fn symbolic_only(self) -> bool {
        matches!(self, Identity::DiffopCommute | Identity::Mr)
    }

    /// Variable prefix used when printing coefficients.
    fn prefix(self) -> &'static str {
        match self {
            Identity::Eta | Identity::Mr => "m",
            _ => "x",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Numeric { seed: u64 },
}

#[derive(Clone, Debug)]
pub struct Job {
    pub identity: Identity,
    pub modules: Vec<FinModule>,
    pub depth: usize,
    pub order: usize,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub identity: Identity,
    pub reports: Vec<Verification>,
    pub sample: Option<Vec<Rat>>,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(Verification::passed)
    }
}

#[derive(Debug)]
pub enum RunError {
    Usage(String),
    /// Every sampled point was non-generic.
    Exhausted(String),
    Core(Error),
}

impl core::fmt::Display for RunError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RunError::Usage(s) => write!(f, "{s}"),
            RunError::Exhausted(s) => write!(f, "no generic point after {MAX_ATTEMPTS} samples: {s}"),
            RunError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn first_with_zero_weight(mods: &[FinModule]) -> Option<&FinModule> {
    mods.iter().find(|m| !m.zero_weight_indices().is_empty())
}

/// Operands for an explicitly requested identity: positions cycle through
/// the module list.
pub fn explicit_job(identity: Identity, mods: &[FinModule], depth: usize, order: usize) -> Job {
    let pick = |i: usize| mods[i % mods.len()].clone();
    let arity = match identity {
        Identity::QIdentities | Identity::Eta | Identity::Mr => 2,
        _ => 3,
    };
    Job {
        identity,
        modules: (0..arity).map(pick).collect(),
        depth,
        order,
    }
}

/// Operands for `verify all`. The difference-operator checks take the
/// first module with a nonzero zero-weight space as `U` (resp. `V`);
/// when there is none they are left out.
pub fn suite_jobs(mods: &[FinModule], mode: Mode, depth: usize, order: usize) -> (Vec<Job>, Vec<String>) {
    let mut jobs = Vec::new();
    let mut skipped = Vec::new();
    for id in Identity::ALL {
        if id.symbolic_only() && mode != Mode::Symbolic {
            skipped.push(format!("{}: needs symbolic mode", id.name()));
            continue;
        }
        let job = match id {
            Identity::DiffopCommute => match first_with_zero_weight(mods) {
                Some(u) => Job {
                    identity: id,
                    modules: vec![mods[0].clone(), mods[1 % mods.len()].clone(), u.clone()],
                    depth,
                    order,
                },
                None => {
                    skipped.push(format!("{}: no module with a zero weight", id.name()));
                    continue;
                }
            },
            Identity::Mr => match first_with_zero_weight(mods) {
                Some(v) => Job {
                    identity: id,
                    modules: vec![v.clone(), mods[0].clone()],
                    depth,
                    order,
                },
                None => {
                    skipped.push(format!("{}: no module with a zero weight", id.name()));
                    continue;
                }
            },
            _ => explicit_job(id, mods, depth, order),
        };
        jobs.push(job);
    }
    (jobs, skipped)
}

fn run_generic<F: DynField>(ctx: &Context<F>, job: &Job) -> qdyb_core::Result<Vec<Verification>> {
    let m = &job.modules;
    let o = ctx.origin();
    Ok(match job.identity {
        Identity::Cocycle => vec![verify_cocycle(ctx, &m[0], &m[1], &m[2], &o)?],
        Identity::Qdybe => vec![verify_qdybe(ctx, &m[0], &m[1], &m[2], &o)?],
        Identity::FusionExchange => verify_fusion_exchange(ctx, &m[0], &m[1], &m[2], &o)?.to_vec(),
        Identity::QIdentities => verify_q_identities(ctx, &m[0], &m[1], &o)?,
        Identity::Eta => vec![verify_eta_relation(ctx, &m[0], &m[1], job.depth)?],
        Identity::DiffopCommute | Identity::Mr => unreachable!("symbolic only"),
    })
}

fn run_symbolic(ctx: &Context<Symbolic>, job: &Job) -> qdyb_core::Result<Vec<Verification>> {
    let m = &job.modules;
    match job.identity {
        Identity::DiffopCommute => Ok(vec![verify_commutativity(ctx, &m[0], &m[1], &m[2])?]),
        Identity::Mr => Ok(vec![verify_mr_equation(ctx, &m[0], &m[1], job.order)?]),
        _ => run_generic(ctx, job),
    }
}

/// Evaluates `f` at sampled points until one is generic.
pub fn at_generic_point<T>(
    rank: usize,
    seed: u64,
    stream: u64,
    mut f: impl FnMut(&[Rat]) -> qdyb_core::Result<T>,
) -> Result<(T, Vec<Rat>), RunError> {
    let mut sampler = Sampler::new(seed, stream);
    let mut last = None;
    for _ in 0..MAX_ATTEMPTS {
        let point = sampler.draw(rank);
        match f(&point) {
            Ok(v) => return Ok((v, point)),
            Err(e) if e.is_genericity() => last = Some(e),
            Err(e) => return Err(RunError::Core(e)),
        }
    }
    Err(RunError::Exhausted(last.map(|e| e.to_string()).unwrap_or_default()))
}

/// Runs one job. In numeric mode `stream` selects an independent sample
/// sequence for the seed.
pub fn run_job(rs: &RootSystem, job: &Job, mode: Mode, stream: u64) -> Result<Outcome, RunError> {
    let start = Instant::now();
    let (reports, sample) = match mode {
        Mode::Symbolic => {
            let ctx = Context::new(rs.clone(), Symbolic::new(rs.rank, job.identity.prefix()));
            let reps = run_symbolic(&ctx, job).map_err(|e| match e {
                Error::EmptyZeroWeightSpace => RunError::Usage(format!("{}: {e}", job.identity.name())),
                e => RunError::Core(e),
            })?;
            (reps, None)
        }
        Mode::Numeric { seed } => {
            if job.identity.symbolic_only() {
                return Err(RunError::Usage(format!(
                    "{} needs --mode symbolic",
                    job.identity.name()
                )));
            }
            let (reps, point) = at_generic_point(rs.rank, seed, stream, |p| {
                let ctx = Context::new(rs.clone(), Numeric::new(p.to_vec()));
                run_generic(&ctx, job)
            })?;
            (reps, Some(point))
        }
    };
    Ok(Outcome {
        identity: job.identity,
        reports,
        sample,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qdyb_core::cartan::root_system;
    use qdyb_core::repmod::irrep;

    #[test]
    fn suite_planning() {
        let rs = root_system(1).unwrap();
        let l1 = irrep(&rs, &[1]).unwrap();
        let l2 = irrep(&rs, &[2]).unwrap();
        let (jobs, skipped) = suite_jobs(&[l1.clone(), l2.clone()], Mode::Symbolic, 4, 10);
        assert_eq!(jobs.len(), 7);
        assert!(skipped.is_empty());
        let mr = jobs.iter().find(|j| j.identity == Identity::Mr).unwrap();
        assert_eq!(mr.modules[0].name, "L(2)");
        assert_eq!(mr.modules[1].name, "L(1)");
        let (jobs, skipped) = suite_jobs(&[l1], Mode::Numeric { seed: 1 }, 4, 10);
        assert_eq!(jobs.len(), 5);
        assert_eq!(skipped.len(), 2);
    }

    #[test]
    fn exhausted_sampling() {
        let r: Result<((), _), _> = at_generic_point(1, 7, 0, |_| Err(Error::SingularSystem));
        assert!(matches!(r, Err(RunError::Exhausted(_))));
        let mut calls = 0;
        let r = at_generic_point(1, 7, 0, |p| {
            calls += 1;
            if calls < 3 {
                Err(Error::PoleAtPoint)
            } else {
                Ok(p.to_vec())
            }
        })
        .unwrap();
        assert_eq!(calls, 3);
        assert_eq!(r.0, r.1);
    }
}
