//! Exchange matrices and the three-factor identities they satisfy.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;

use crate::block::{flip_conj, product, ShiftedMatrixExpr, TensorSpace};
use crate::context::Context;
use crate::error::Result;
use crate::exact::rat::Rat;
use crate::exact::ratfun::RatFun;
use crate::exact::scalar::{DynField, Symbolic};
use crate::intertwine::{apply_intertwiner, fusion_matrix, intertwiner, operands};
use crate::linalg::{self, Mat};
use crate::repmod::{tensor, FinModule};
use crate::report::Verification;
use crate::verma::{height, vec_add, VermaVec};

/// `R_{VW}(λ+shift) = J_{VW}^{-1}·J_{WV}^{21}`.
pub fn exchange_matrix<F: DynField>(
    ctx: &Context<F>,
    v: &FinModule,
    w: &FinModule,
    shift: &[Rat],
) -> Result<Rc<Mat<F::E>>> {
    let key = alloc::format!("{}|{}", v.name, w.name);
    ctx.family("exchange", &key, shift, &|s| {
        let jvw = fusion_matrix(ctx, v, w, s)?;
        let jwv = fusion_matrix(ctx, w, v, s)?;
        let inv = linalg::inverse(&ctx.k, &jvw)?;
        Ok(linalg::mul(&ctx.k, &inv, &flip_conj(&jwv, w.dim(), v.dim())))
    })
}

/// `R_{VU}(-λ-ρ)`, i.e. every coordinate `x_i ↦ -x_i - 1`.
pub fn shifted_exchange(ctx: &Context<Symbolic>, v: &FinModule, u: &FinModule) -> Result<Mat<RatFun>> {
    let r = exchange_matrix(ctx, v, u, &ctx.origin())?;
    Ok(r.map(RatFun::reflect_rho))
}

/// `R_{VU}(-λ-ρ)` with `λ` at a rational point.
pub fn shifted_exchange_at(ctx: &Context<Symbolic>, v: &FinModule, u: &FinModule, point: &[Rat]) -> Result<Mat<Rat>> {
    shifted_exchange(ctx, v, u)?.try_map(|e| e.eval(point))
}

/// `R_{VW}(λ-h^{(3)}) R_{VU}(λ) R_{WU}(λ-h^{(1)}) = R_{WU}(λ) R_{VU}(λ-h^{(2)}) R_{VW}(λ)`
/// on `V⊗W⊗U`.
pub fn verify_qdybe<F: DynField>(
    ctx: &Context<F>,
    v: &FinModule,
    w: &FinModule,
    u: &FinModule,
    shift: &[Rat],
) -> Result<Verification> {
    let space = TensorSpace::new(&[v, w, u]);
    let r_vw = |s: &[Rat]| exchange_matrix(ctx, v, w, s);
    let r_vu = |s: &[Rat]| exchange_matrix(ctx, v, u, s);
    let r_wu = |s: &[Rat]| exchange_matrix(ctx, w, u, s);
    let lhs = product(
        ctx,
        &space,
        shift,
        &[
            ShiftedMatrixExpr::new(&[0, 1], &[(2, -1)], &r_vw),
            ShiftedMatrixExpr::new(&[0, 2], &[], &r_vu),
            ShiftedMatrixExpr::new(&[1, 2], &[(0, -1)], &r_wu),
        ],
    )?;
    let rhs = product(
        ctx,
        &space,
        shift,
        &[
            ShiftedMatrixExpr::new(&[1, 2], &[], &r_wu),
            ShiftedMatrixExpr::new(&[0, 2], &[(1, -1)], &r_vu),
            ShiftedMatrixExpr::new(&[0, 1], &[], &r_vw),
        ],
    )?;
    let mut rep = Verification::new("qdybe", &operands(&[v, w, u]));
    rep.compare(&ctx.k, &space, &lhs, &rhs);
    Ok(rep)
}

/// The two fusion–exchange identities on `U⊗V⊗W`:
/// `J_{VW}(λ)^{-1} R_{U,V⊗W}(λ) J_{VW}(λ-h^{(1)}) = R_{UV}(λ-h^{(3)}) R_{UW}(λ)` and
/// `J_{UV}(λ-h^{(3)})^{-1} R_{U⊗V,W}(λ) J_{UV}(λ) = R_{VW}(λ) R_{UW}(λ-h^{(2)})`.
pub fn verify_fusion_exchange<F: DynField>(
    ctx: &Context<F>,
    u: &FinModule,
    v: &FinModule,
    w: &FinModule,
    shift: &[Rat],
) -> Result<[Verification; 2]> {
    let space = TensorSpace::new(&[u, v, w]);
    let vw = tensor(v, w);
    let uv = tensor(u, v);
    let k = &ctx.k;
    let j_vw = |s: &[Rat]| fusion_matrix(ctx, v, w, s);
    let j_vw_inv = |s: &[Rat]| Ok(Rc::new(linalg::inverse(k, &*fusion_matrix(ctx, v, w, s)?)?));
    let j_uv = |s: &[Rat]| fusion_matrix(ctx, u, v, s);
    let j_uv_inv = |s: &[Rat]| Ok(Rc::new(linalg::inverse(k, &*fusion_matrix(ctx, u, v, s)?)?));
    let r_u_vw = |s: &[Rat]| exchange_matrix(ctx, u, &vw, s);
    let r_uv_w = |s: &[Rat]| exchange_matrix(ctx, &uv, w, s);
    let r_uv = |s: &[Rat]| exchange_matrix(ctx, u, v, s);
    let r_uw = |s: &[Rat]| exchange_matrix(ctx, u, w, s);
    let r_vw = |s: &[Rat]| exchange_matrix(ctx, v, w, s);

    let lhs6 = product(
        ctx,
        &space,
        shift,
        &[
            ShiftedMatrixExpr::new(&[1, 2], &[], &j_vw_inv),
            ShiftedMatrixExpr::new(&[0, 1, 2], &[], &r_u_vw),
            ShiftedMatrixExpr::new(&[1, 2], &[(0, -1)], &j_vw),
        ],
    )?;
    let rhs6 = product(
        ctx,
        &space,
        shift,
        &[
            ShiftedMatrixExpr::new(&[0, 1], &[(2, -1)], &r_uv),
            ShiftedMatrixExpr::new(&[0, 2], &[], &r_uw),
        ],
    )?;
    let lhs7 = product(
        ctx,
        &space,
        shift,
        &[
            ShiftedMatrixExpr::new(&[0, 1], &[(2, -1)], &j_uv_inv),
            ShiftedMatrixExpr::new(&[0, 1, 2], &[], &r_uv_w),
            ShiftedMatrixExpr::new(&[0, 1], &[], &j_uv),
        ],
    )?;
    let rhs7 = product(
        ctx,
        &space,
        shift,
        &[
            ShiftedMatrixExpr::new(&[1, 2], &[], &r_vw),
            ShiftedMatrixExpr::new(&[0, 2], &[(1, -1)], &r_uw),
        ],
    )?;
    let ops = operands(&[u, v, w]);
    let mut a = Verification::new("fusion-exchange-1", &ops);
    a.compare(k, &space, &lhs6, &rhs6);
    let mut b = Verification::new("fusion-exchange-2", &ops);
    b.compare(k, &space, &lhs7, &rhs7);
    Ok([a, b])
}

/// `(Φ^{w_j}_{λ-wt v_i} ⊗ 1)Φ^{v_i}_λ(x_λ)` as coordinates
/// `(level, index, w, v)` in `M ⊗ W ⊗ V`, exact.
pub fn composite_image<F: DynField>(
    ctx: &Context<F>,
    shift: &[Rat],
    w: &FinModule,
    wj: usize,
    v: &FinModule,
    vi: usize,
) -> Result<BTreeMap<(Vec<u32>, usize, usize, usize), F::E>> {
    let k = &ctx.k;
    let pv = intertwiner(ctx, shift, v, vi)?;
    let pw = intertwiner(ctx, &pv.target, w, wj)?;
    let cap = pv.depth + pw.depth;
    let mut out = BTreeMap::new();
    for ((l, y, t), x) in &pv.payload {
        let yv: VermaVec<F::E> = [((l.clone(), *y), k.one())].into_iter().collect();
        for ((l2, y2, s), c) in apply_intertwiner(ctx, &pw, w, &yv, cap)? {
            vec_add(k, &mut out, (l2, y2, s, *t), k.mul(x, &c));
        }
    }
    Ok(out)
}

/// Checks `(Φ^w ⊗ 1)Φ^v = (1⊗P) Σ_i (Φ^{v_i} ⊗ 1)Φ^{w_i}` with
/// `Σ_i v_i⊗w_i = R_{VW}(λ)(v⊗w)`, on `x_λ` and for every pair of basis vectors.
pub fn verify_exchange_lemma<F: DynField>(
    ctx: &Context<F>,
    v: &FinModule,
    w: &FinModule,
    shift: &[Rat],
) -> Result<Verification> {
    let k = &ctx.k;
    let r = exchange_matrix(ctx, v, w, shift)?;
    let dw = w.dim();
    let mut rep = Verification::new("exchange-lemma", &operands(&[v, w]));
    for vi in 0..v.dim() {
        for wj in 0..dw {
            let lhs = composite_image(ctx, shift, w, wj, v, vi)?;
            let mut rhs = BTreeMap::new();
            for row in 0..r.rows() {
                let c = r.get(row, vi * dw + wj);
                if k.is_zero(c) {
                    continue;
                }
                let (a, b) = (row / dw, row % dw);
                for ((l, y, s, t), x) in composite_image(ctx, shift, v, a, w, b)? {
                    // (1⊗P) turns V⊗W into W⊗V
                    vec_add(k, &mut rhs, (l, y, t, s), k.mul(c, &x));
                }
            }
            let keys: alloc::collections::BTreeSet<_> = lhs.keys().chain(rhs.keys()).cloned().collect();
            for key in keys {
                rep.checked += 1;
                let zero = k.zero();
                let (a, b) = (lhs.get(&key).unwrap_or(&zero), rhs.get(&key).unwrap_or(&zero));
                if a != b {
                    rep.push(crate::report::Failure {
                        block: alloc::format!("depth {}", height(&key.0)),
                        row: alloc::format!("{:?},{},{}", key.0, w.labels[key.2], v.labels[key.3]),
                        col: alloc::format!("{},{}", v.labels[vi], w.labels[wj]),
                        lhs: k.render(a),
                        rhs: k.render(b),
                    });
                }
            }
        }
    }
    Ok(rep)
}
