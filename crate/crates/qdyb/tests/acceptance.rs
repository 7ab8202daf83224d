//! Acceptance run: one line per criterion, exit status 1 if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use qdyb::sample::Sampler;
use qdyb::suite::{explicit_job, run_job, Identity, Mode};
use qdyb_core::cartan::{root_system, LatticeWeight, RootSystem};
use qdyb_core::context::Context;
use qdyb_core::diffop::verify_commutativity;
use qdyb_core::exact::{int, parse_ratfun, Numeric, Rat, RatFun, Symbolic};
use qdyb_core::exchange::exchange_matrix;
use qdyb_core::intertwine::{fusion_matrix, intertwiner};
use qdyb_core::repmod::{dual, irrep, trivial, FinModule};
use qdyb_core::report::Verification;
use qdyb_core::trace::{q_matrix, trace_function, verify_eta_relation, verify_mr_equation, verify_q_identities};

type Outcome = Result<(), String>;
/// Number, check, time limit in seconds.
type Criterion = (u32, fn() -> Outcome, Option<u64>);

fn c(n: i64) -> RatFun {
    RatFun::constant(1, int(n))
}

fn rf(s: &str) -> RatFun {
    parse_ratfun(s, "x", 1).unwrap()
}

fn a1() -> Context<Symbolic> {
    Context::new(root_system(1).unwrap(), Symbolic::new(1, "x"))
}

fn l(rs: &RootSystem, lam: &[i64]) -> FinModule {
    irrep(rs, lam).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(reps: &[Verification]) -> Outcome {
    ensure(!reps.is_empty(), || "no reports".into())?;
    for r in reps {
        ensure(r.checked > 0, || format!("{} compared nothing", r.identity))?;
        if !r.passed() {
            let f = &r.failures[0];
            return Err(format!(
                "{} [{}] failed: {} {} <- {}: {} != {}",
                r.identity, r.operands, f.block, f.row, f.col, f.lhs, f.rhs
            ));
        }
    }
    Ok(())
}

/// `u_k = -e u_{k-1} / (k(μ-k+1))` with `μ = x - wt v`; `Φ(x) = Σ f^k x ⊗ u_k`.
fn o1_payload(v: &FinModule, top: usize) -> Vec<Vec<RatFun>> {
    let n = v.dim();
    let mu = RatFun::var(1, 0).sub(&c(v.weights[top][0]));
    let mut u = vec![vec![c(0); n]];
    u[0][top] = c(1);
    for k in 1i64.. {
        let prev = u.last().unwrap();
        let denom = c(k).mul(&mu.sub(&c(k - 1)));
        let next: Vec<RatFun> = (0..n)
            .map(|t| {
                let s = (0..n).fold(c(0), |s, q| s.add(&prev[q].scale(v.e[0].get(t, q))));
                s.neg().div(&denom).unwrap()
            })
            .collect();
        if next.iter().all(RatFun::is_zero) {
            return u;
        }
        u.push(next);
    }
    unreachable!()
}

fn o1_fusion(w: &FinModule, v: &FinModule) -> Vec<Vec<RatFun>> {
    let (dw, dv) = (w.dim(), v.dim());
    let mut j = vec![vec![c(0); dw * dv]; dw * dv];
    for vi in 0..dv {
        for wi in 0..dw {
            let mut fw: Vec<Rat> = (0..dw).map(|a| int((a == wi) as i64)).collect();
            for uk in o1_payload(v, vi) {
                for a in 0..dw {
                    for t in 0..dv {
                        let e = j[a * dv + t][wi * dv + vi].add(&uk[t].scale(&fw[a]));
                        j[a * dv + t][wi * dv + vi] = e;
                    }
                }
                fw = (0..dw)
                    .map(|a| (0..dw).map(|q| w.f[0].get(a, q) * &fw[q]).sum())
                    .collect();
            }
        }
    }
    j
}

fn criterion_1() -> Outcome {
    let ctx = a1();
    let l1 = l(&ctx.rs, &[1]);
    let phi = intertwiner(&ctx, &ctx.origin(), &l1, 1).map_err(|e| e.to_string())?;
    let corr = phi.payload.get(&(vec![1], 0, 0)).cloned().unwrap_or_else(|| c(0));
    ensure(corr == rf("-1/(x1+1)"), || {
        format!("correction {}", corr.to_string_with("x"))
    })?;
    ensure(o1_payload(&l1, 1)[1][0] == corr, || "oracle disagrees".into())?;

    let mods = [l(&ctx.rs, &[1]), l(&ctx.rs, &[2])];
    let mut sampler = Sampler::new(20261016, 0);
    let mut points = 0;
    while points < 3 {
        let p = sampler.draw(1);
        let num = Context::new(ctx.rs.clone(), Numeric::new(p.clone()));
        let mut ok = true;
        let mut pairs = Vec::new();
        for v in &mods {
            for top in 0..v.dim() {
                let s = intertwiner(&ctx, &ctx.origin(), v, top).map_err(|e| e.to_string())?;
                let n = match intertwiner(&num, &num.origin(), v, top) {
                    Ok(n) => n,
                    Err(_) => {
                        ok = false;
                        break;
                    }
                };
                pairs.push((s, n));
            }
        }
        if !ok {
            continue;
        }
        for (s, n) in &pairs {
            ensure(s.payload.len() == n.payload.len(), || "support differs".into())?;
            for (key, val) in &s.payload {
                let at = val.eval(&p).map_err(|e| e.to_string())?;
                ensure(n.payload.get(key) == Some(&at), || format!("{key:?} at {p:?}"))?;
            }
        }
        points += 1;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let ctx = a1();
    let l1 = l(&ctx.rs, &[1]);
    let j = fusion_matrix(&ctx, &l1, &l1, &ctx.origin()).map_err(|e| e.to_string())?;
    let o = o1_fusion(&l1, &l1);
    for (i, row) in o.iter().enumerate() {
        for (k, e) in row.iter().enumerate() {
            ensure(j.get(i, k) == e, || format!("J({i},{k})"))?;
        }
    }
    ensure(*j.get(2, 1) == rf("-1/(x1+1)"), || "J off-diagonal".into())?;
    let r = exchange_matrix(&ctx, &l1, &l1, &ctx.origin()).map_err(|e| e.to_string())?;
    ensure(*r.get(2, 1) == rf("1/(x1+1)"), || "R(2,1)".into())?;
    ensure(*r.get(2, 2) == rf("1-1/(x1+1)^2"), || "R(2,2)".into())?;
    // J R = P J P, with P the flip on L(1)⊗L(1)
    let p = |i: usize| (i % 2) * 2 + i / 2;
    for i in 0..4 {
        for k in 0..4 {
            let lhs = (0..4).fold(c(0), |s, m| s.add(&o[i][m].mul(r.get(m, k))));
            ensure(lhs == o[p(i)][p(k)], || format!("JR({i},{k})"))?;
        }
    }
    Ok(())
}

/// Runs `id` for the A1 triples symbolically and the A2 triple at 5 samples.
fn triple_suite(id: Identity) -> Outcome {
    let rs1 = root_system(1).unwrap();
    let (a, b) = (l(&rs1, &[1]), l(&rs1, &[2]));
    for mods in [vec![a.clone(), a.clone(), a.clone()], vec![a.clone(), b, a]] {
        let out = run_job(&rs1, &explicit_job(id, &mods, 4, 10), Mode::Symbolic, 0).map_err(|e| e.to_string())?;
        all_pass(&out.reports)?;
    }
    let rs2 = root_system(2).unwrap();
    let w = l(&rs2, &[1, 0]);
    let job = explicit_job(id, &[w.clone(), w.clone(), w], 4, 10);
    let mut seen = Vec::new();
    for stream in 0..5 {
        let out = run_job(&rs2, &job, Mode::Numeric { seed: 42 }, stream).map_err(|e| e.to_string())?;
        all_pass(&out.reports)?;
        let p = out.sample.unwrap();
        ensure(!seen.contains(&p), || "repeated sample".into())?;
        seen.push(p);
    }
    Ok(())
}

fn kostant_a2(b1: u32, b2: u32) -> u64 {
    let mut n = 0;
    for a in 0..=b1 {
        for b in 0..=b2 {
            for c in 0..=b1.min(b2) {
                n += u64::from(a + c == b1 && b + c == b2);
            }
        }
    }
    n
}

fn criterion_6() -> Outcome {
    let rs = root_system(2).unwrap();
    let mut sampler = Sampler::new(6, 0);
    for _ in 0..8 {
        let ctx = Context::new(rs.clone(), Numeric::new(sampler.draw(2)));
        let Ok(m) = ctx.verma(&ctx.origin(), 4) else { continue };
        for h in 0..=4u32 {
            for b1 in 0..=h {
                let got = m.dim(&vec![b1, h - b1]) as u64;
                let want = kostant_a2(b1, h - b1);
                ensure(got == want, || format!("({b1},{}) {got} != {want}", h - b1))?;
            }
        }
        return Ok(());
    }
    Err("no generic point".into())
}

fn criterion_7() -> Outcome {
    let ctx = a1();
    let (l1, l2) = (l(&ctx.rs, &[1]), l(&ctx.rs, &[2]));
    for (v, w) in [(&l1, &l2), (&l1, &l1)] {
        all_pass(&[verify_commutativity(&ctx, v, w, &l2).map_err(|e| e.to_string())?])?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let ctx = a1();
    let (l1, l2) = (l(&ctx.rs, &[1]), l(&ctx.rs, &[2]));
    let q = q_matrix(&ctx, &l1, &ctx.origin()).map_err(|e| e.to_string())?;
    let want = [[rf("(x1+2)/(x1+1)"), c(0)], [c(0), c(1)]];
    // B[a][c] = Σ_b J_{W,W*}[(b,b),(a,c)], Q = B^T
    let j = o1_fusion(&l1, &dual(&l1));
    for a in 0..2 {
        for cc in 0..2 {
            let b = (0..2).fold(c(0), |s, b| s.add(&j[b * 2 + b][a * 2 + cc]));
            ensure(*q.get(cc, a) == b, || format!("Q({cc},{a}) vs oracle"))?;
            ensure(*q.get(a, cc) == want[a][cc], || format!("Q({a},{cc})"))?;
        }
    }
    for (u, w) in [(&l1, &l1), (&l1, &l2), (&l2, &l1), (&l2, &l2)] {
        all_pass(&verify_q_identities(&ctx, u, w, &ctx.origin()).map_err(|e| e.to_string())?)?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let ctx = Context::new(root_system(1).unwrap(), Symbolic::new(1, "m"));
    let mods = [l(&ctx.rs, &[1]), l(&ctx.rs, &[2])];
    for v in &mods {
        for w in &mods {
            let r = verify_eta_relation(&ctx, v, w, 4).map_err(|e| e.to_string())?;
            ensure(r.checked > 0, || "nothing compared".into())?;
            all_pass(&[r])?;
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let ctx = Context::new(root_system(1).unwrap(), Symbolic::new(1, "m"));
    let psi = trace_function(&ctx, &trivial(&ctx.rs), 10).map_err(|e| e.to_string())?;
    let s = &psi.series[0][0];
    ensure(s.len() == 11, || format!("{} terms", s.len()))?;
    for k in 0..=10 {
        ensure(s.coeff(&LatticeWeight::from_ints(&[2 * k])).is_one(), || {
            format!("e^-{k}α")
        })?;
    }
    let (l1, l2) = (l(&ctx.rs, &[1]), l(&ctx.rs, &[2]));
    for w in [&l1, &l2] {
        all_pass(&[verify_mr_equation(&ctx, &l2, w, 10).map_err(|e| e.to_string())?])?;
    }
    Ok(())
}

fn criterion_11() -> Outcome {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    for mode in ["symbolic", "numeric"] {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.join(format!("verify-all-{mode}-{run}.json"));
            let out = Command::new(env!("CARGO_BIN_EXE_qdyb"))
                .args([
                    "verify",
                    "all",
                    "--algebra",
                    "A1",
                    "--modules",
                    "L(1),L(2)",
                    "--mode",
                    mode,
                ])
                .args(["--seed", "2024", "--out"])
                .arg(&path)
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.code() == Some(0), || {
                format!(
                    "{mode} exit {:?}: {}",
                    out.status.code(),
                    String::from_utf8_lossy(&out.stderr)
                )
            })?;
            outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        ensure(outputs[0] == outputs[1], || format!("{mode} output differs"))?;
        ensure(!outputs[0].is_empty(), || "empty output".into())?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, criterion_1, Some(1)),
        (2, criterion_2, Some(1)),
        (3, || triple_suite(Identity::Cocycle), Some(60)),
        (4, || triple_suite(Identity::Qdybe), Some(120)),
        (5, || triple_suite(Identity::FusionExchange), None),
        (6, criterion_6, None),
        (7, criterion_7, Some(30)),
        (8, criterion_8, Some(30)),
        (9, criterion_9, None),
        (10, criterion_10, Some(120)),
        (11, criterion_11, None),
    ];
    let mut failed = 0;
    for (n, run, limit) in criteria {
        let start = Instant::now();
        let mut res = run();
        let t = start.elapsed();
        if let Some(s) = limit {
            if res.is_ok() && t > Duration::from_secs(s) {
                res = Err(format!("took {:.2}s, limit {s}s", t.as_secs_f64()));
            }
        }
        match res {
            Ok(()) => println!("criterion {n:2}: pass ({:.3}s)", t.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {n:2}: FAIL ({:.3}s) {e}", t.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
