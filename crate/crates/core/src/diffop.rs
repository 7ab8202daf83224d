//! Formal difference operators with matrix coefficients on `U[0]`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::context::{int_shift, Context};
use crate::error::{Error, Result};
use crate::exact::ratfun::RatFun;
use crate::exact::scalar::{Field, Symbolic};
use crate::exchange::shifted_exchange;
use crate::intertwine::operands;
use crate::linalg::{self, Mat};
use crate::repmod::{tensor, FinModule};
use crate::report::{weight_string, Failure, Verification};

/// `Σ_ν A_ν(λ) T_ν` where `(T_ν f)(λ) = f(λ+ν)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    /// Name of `U`.
    pub module: String,
    /// Indices of the zero-weight basis vectors of `U`.
    pub zero: Vec<usize>,
    pub coeffs: BTreeMap<Vec<i64>, Mat<RatFun>>,
}

impl DiffOp {
    pub fn identity(k: &Symbolic, u: &FinModule) -> Self {
        let zero = u.zero_weight_indices();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(alloc::vec![0; u.rank()], linalg::identity(k, zero.len()));
        DiffOp {
            module: u.name.clone(),
            zero,
            coeffs,
        }
    }
}

/// `D_V^{λ,U} = Σ_ν Tr|_{V[ν]}(ℝ_{VU}(λ)) T_ν`.
pub fn difference_operator(ctx: &Context<Symbolic>, v: &FinModule, u: &FinModule) -> Result<DiffOp> {
    let zero = u.zero_weight_indices();
    if zero.is_empty() {
        return Err(Error::EmptyZeroWeightSpace);
    }
    let k = &ctx.k;
    let r = shifted_exchange(ctx, v, u)?;
    let du = u.dim();
    let mut coeffs = BTreeMap::new();
    for nu in v.distinct_weights() {
        let mut c = linalg::zeros(k, zero.len(), zero.len());
        for a in v.weight_indices(&nu) {
            for (i, &u1) in zero.iter().enumerate() {
                for (j, &u0) in zero.iter().enumerate() {
                    let x = r.get(a * du + u1, a * du + u0);
                    if !x.is_zero() {
                        let s = c.get(i, j).add(x);
                        c.set(i, j, s);
                    }
                }
            }
        }
        if !linalg::is_zero(k, &c) {
            coeffs.insert(nu, c);
        }
    }
    Ok(DiffOp {
        module: u.name.clone(),
        zero,
        coeffs,
    })
}

/// `(A∘B)_κ = Σ_{μ+ν=κ} A_μ(λ)·B_ν(λ+μ)`.
pub fn compose(k: &Symbolic, a: &DiffOp, b: &DiffOp) -> DiffOp {
    let mut out: BTreeMap<Vec<i64>, Mat<RatFun>> = BTreeMap::new();
    for (mu, am) in &a.coeffs {
        let shift = int_shift(mu, 1);
        for (nu, bm) in &b.coeffs {
            let bs = bm.map(|e| e.shift(&shift));
            let p = linalg::mul(k, am, &bs);
            let kappa: Vec<i64> = mu.iter().zip(nu).map(|(x, y)| x + y).collect();
            let sum = match out.remove(&kappa) {
                Some(prev) => linalg::add(k, &prev, &p),
                None => p,
            };
            out.insert(kappa, sum);
        }
    }
    out.retain(|_, m| !linalg::is_zero(k, m));
    DiffOp {
        module: a.module.clone(),
        zero: a.zero.clone(),
        coeffs: out,
    }
}

fn compare_ops(k: &Symbolic, rep: &mut Verification, u: &FinModule, lhs: &DiffOp, rhs: &DiffOp, what: &str) {
    let zero = k.zero();
    let keys: alloc::collections::BTreeSet<&Vec<i64>> = lhs.coeffs.keys().chain(rhs.coeffs.keys()).collect();
    let n = lhs.zero.len();
    for nu in keys {
        for i in 0..n {
            for j in 0..n {
                rep.checked += 1;
                let a = lhs.coeffs.get(nu).map_or(&zero, |m| m.get(i, j));
                let b = rhs.coeffs.get(nu).map_or(&zero, |m| m.get(i, j));
                if a != b {
                    rep.push(Failure {
                        block: alloc::format!("{} T{}", what, weight_string(nu)),
                        row: u.labels[lhs.zero[i]].clone(),
                        col: u.labels[lhs.zero[j]].clone(),
                        lhs: a.to_string_with(&k.prefix),
                        rhs: b.to_string_with(&k.prefix),
                    });
                }
            }
        }
    }
}

/// `D_V∘D_W = D_W∘D_V = D_{V⊗W} = D_{W⊗V}`.
pub fn verify_commutativity(
    ctx: &Context<Symbolic>,
    v: &FinModule,
    w: &FinModule,
    u: &FinModule,
) -> Result<Verification> {
    let k = &ctx.k;
    let dv = difference_operator(ctx, v, u)?;
    let dw = difference_operator(ctx, w, u)?;
    let vw = compose(k, &dv, &dw);
    let wv = compose(k, &dw, &dv);
    let dvw = difference_operator(ctx, &tensor(v, w), u)?;
    let dwv = difference_operator(ctx, &tensor(w, v), u)?;
    let mut rep = Verification::new("diffop-commute", &operands(&[v, w, u]));
    compare_ops(k, &mut rep, u, &vw, &wv, "DV DW vs DW DV");
    compare_ops(k, &mut rep, u, &vw, &dvw, "DV DW vs D(V⊗W)");
    compare_ops(k, &mut rep, u, &vw, &dwv, "DV DW vs D(W⊗V)");
    Ok(rep)
}
