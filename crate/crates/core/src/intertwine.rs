//! Intertwining operators `Φ_λ^v : M_λ → M_{λ-wt v} ⊗ V` and fusion matrices.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::block::{product, ShiftedMatrixExpr, TensorSpace};
use crate::context::{add_shift, int_shift, Context};
use crate::error::{Error, Result};
use crate::exact::rat::Rat;
use crate::exact::scalar::{DynField, Field};
use crate::linalg::{self, Mat};
use crate::repmod::{tensor, FinModule};
use crate::report::Verification;
use crate::verma::{act_e, act_f_tensor, expectation, height, top, vec_add, TensorVec, VermaSlice, VermaVec};

#[derive(Clone, Debug)]
pub struct Intertwiner<E> {
    pub module: String,
    /// Weight of the top vector.
    pub weight: Vec<i64>,
    /// Offset of `λ` from the base parameter.
    pub source: Vec<Rat>,
    /// Offset of `μ = λ - wt v`.
    pub target: Vec<Rat>,
    /// Largest height carrying a component.
    pub depth: usize,
    /// `Φ(x_λ)` in `M_μ ⊗ V`; the top component is `v`.
    pub payload: TensorVec<E>,
}

/// Largest height of `w - wt` over weights `w` of `V` above `wt`.
pub fn intertwiner_depth(rs: &crate::cartan::RootSystem, module: &FinModule, wt: &[i64]) -> usize {
    let mut d = 0;
    for w in &module.weights {
        let diff: Vec<i64> = w.iter().zip(wt).map(|(a, b)| a - b).collect();
        if let Some(c) = rs.cone_coords(&crate::cartan::LatticeWeight::from_ints(&diff)) {
            d = d.max(c.iter().map(|&x| x as usize).sum());
        }
    }
    d
}

/// Solves `e_i·Φ(x_λ) = 0` with top component `v` (a weight vector given by
/// its nonzero coordinates).
pub fn solve_intertwiner<F: DynField>(
    ctx: &Context<F>,
    source: &[Rat],
    module: &FinModule,
    v: &[(usize, Rat)],
) -> Result<Intertwiner<F::E>> {
    let k = &ctx.k;
    let r = ctx.rank();
    let wt = match v.first() {
        Some((i, _)) => module.weights[*i].clone(),
        None => return Err(Error::NonHomogeneousVector),
    };
    if v.iter().any(|(i, _)| module.weights[*i] != wt) {
        return Err(Error::NonHomogeneousVector);
    }
    let target = add_shift(source, &int_shift(&wt, -1));
    let depth = intertwiner_depth(&ctx.rs, module, &wt);
    let m = ctx.verma(&target, depth)?;
    let module_at = |l: &Vec<u32>| -> Vec<usize> {
        let b: Vec<i64> = l.iter().map(|&x| i64::from(x)).collect();
        let sh = ctx.rs.from_simple(&b).to_ints().unwrap();
        let w: Vec<i64> = wt.iter().zip(&sh).map(|(a, s)| a + s).collect();
        module.weight_indices(&w)
    };
    let mut payload: TensorVec<F::E> = BTreeMap::new();
    for (i, c) in v {
        vec_add(k, &mut payload, (top(r), 0, *i), k.lift_rat(c));
    }
    for h in 1..=depth {
        let levels: Vec<&Vec<u32>> = m.q.order.iter().filter(|l| height(l) == h).collect();
        let mut unknowns = Vec::new();
        for l in &levels {
            let ts = module_at(l);
            for y in 0..m.dim(l) {
                for &t in &ts {
                    unknowns.push(((*l).clone(), y, t));
                }
            }
        }
        if unknowns.is_empty() {
            continue;
        }
        let index: BTreeMap<_, usize> = unknowns.iter().cloned().enumerate().map(|(n, u)| (u, n)).collect();
        let mut eqs = Vec::new();
        let mut rhs = Vec::new();
        for g in m.q.order.iter().filter(|l| height(l) == h - 1) {
            for i in 0..r {
                let mut bi = g.clone();
                bi[i] += 1;
                let Some(Some(ei)) = m.q.levels.get(&bi).map(|d| &d.e[i]) else {
                    continue;
                };
                for z in 0..m.dim(g) {
                    for t in module_at(&bi) {
                        let mut row = Vec::new();
                        for y in 0..m.dim(&bi) {
                            let c = ei.get(z, y);
                            if !k.is_zero(c) {
                                row.push((index[&(bi.clone(), y, t)], c.clone()));
                            }
                        }
                        // (e_i v_z)[t]
                        let mut c = k.zero();
                        for s in 0..module.dim() {
                            let e = module.e[i].get(t, s);
                            if e.is_zero() {
                                continue;
                            }
                            if let Some(val) = payload.get(&(g.clone(), z, s)) {
                                c = k.add(&c, &k.mul(&k.lift_rat(e), val));
                            }
                        }
                        eqs.push(row);
                        rhs.push(k.neg(&c));
                    }
                }
            }
        }
        let x = linalg::solve_unique(k, &eqs, &rhs, unknowns.len())?;
        for (u, val) in unknowns.into_iter().zip(x) {
            vec_add(k, &mut payload, u, val);
        }
    }
    Ok(Intertwiner {
        module: module.name.clone(),
        weight: wt,
        source: source.to_vec(),
        target,
        depth,
        payload,
    })
}

/// `Φ_{λ+source}^{v_idx}`, memoised.
pub fn intertwiner<F: DynField>(
    ctx: &Context<F>,
    source: &[Rat],
    module: &FinModule,
    idx: usize,
) -> Result<Rc<Intertwiner<F::E>>> {
    let key = (module.name.clone(), idx, source.to_vec());
    if let Some(p) = ctx.cached_phi(&key) {
        return Ok(p);
    }
    let p = Rc::new(solve_intertwiner(
        ctx,
        source,
        module,
        &[(idx, Rat::from_integer(1.into()))],
    )?);
    ctx.store_phi(key, p.clone());
    Ok(p)
}

/// Applies the f-word of every basis vector of `y` to `base`, dropping slice
/// components above `cap`.
fn apply_words<F: Field>(
    k: &F,
    source: &VermaSlice<F::E>,
    target: &VermaSlice<F::E>,
    module: &FinModule,
    base: &TensorVec<F::E>,
    y: &VermaVec<F::E>,
    cap: usize,
) -> TensorVec<F::E> {
    let start: TensorVec<F::E> = base
        .iter()
        .filter(|((l, _, _), _)| height(l) <= cap)
        .map(|(key, v)| (key.clone(), v.clone()))
        .collect();
    let mut out = BTreeMap::new();
    for (key, c) in y {
        let mut v = start.clone();
        for &j in source.word(key).iter().rev() {
            v = act_f_tensor(k, target, module, j, &v, cap);
        }
        for (kk, x) in v {
            vec_add(k, &mut out, kk, k.mul(c, &x));
        }
    }
    out
}

/// `Φ(y)` for a slice vector `y` of `M_λ`, keeping components of depth at
/// most `cap` (deeper components never feed back into shallower ones).
pub fn apply_intertwiner<F: DynField>(
    ctx: &Context<F>,
    phi: &Intertwiner<F::E>,
    module: &FinModule,
    y: &VermaVec<F::E>,
    cap: usize,
) -> Result<TensorVec<F::E>> {
    let need = y.keys().map(|(l, _)| height(l)).max().unwrap_or(0);
    let source = ctx.verma(&phi.source, need)?;
    let target = ctx.verma(&phi.target, cap.max(phi.depth))?;
    Ok(apply_words(&ctx.k, &source, &target, module, &phi.payload, y, cap))
}

/// Checks `e_i·Φ(x_λ) = 0` for every `i`.
pub fn is_intertwining<F: DynField>(ctx: &Context<F>, phi: &Intertwiner<F::E>, module: &FinModule) -> Result<bool> {
    let k = &ctx.k;
    let m = ctx.verma(&phi.target, phi.depth)?;
    for i in 0..ctx.rank() {
        let mut out: TensorVec<F::E> = BTreeMap::new();
        for ((l, y, t), x) in &phi.payload {
            let single: VermaVec<F::E> = [((l.clone(), *y), x.clone())].into_iter().collect();
            for ((l2, y2), c) in act_e(k, &m, i, &single) {
                vec_add(k, &mut out, (l2, y2, *t), c);
            }
            for s in 0..module.dim() {
                let e = module.e[i].get(s, *t);
                if !e.is_zero() {
                    vec_add(k, &mut out, (l.clone(), *y, s), k.mul(&k.lift_rat(e), x));
                }
            }
        }
        if !out.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `J_{WV}(λ+shift)`: column `w⊗v` is `⟨(Φ^w ⊗ 1)Φ^v(x_λ)⟩`.
pub fn fusion_matrix<F: DynField>(
    ctx: &Context<F>,
    w: &FinModule,
    v: &FinModule,
    shift: &[Rat],
) -> Result<Rc<Mat<F::E>>> {
    let key = alloc::format!("{}|{}", w.name, v.name);
    ctx.family("fusion", &key, shift, &|s| compute_fusion(ctx, w, v, s))
}

fn compute_fusion<F: DynField>(ctx: &Context<F>, w: &FinModule, v: &FinModule, shift: &[Rat]) -> Result<Mat<F::E>> {
    let k = &ctx.k;
    let r = ctx.rank();
    let (dw, dv) = (w.dim(), v.dim());
    let mut out = linalg::zeros(k, dw * dv, dw * dv);
    for vi in 0..dv {
        let phi = intertwiner(ctx, shift, v, vi)?;
        let source = ctx.verma(&phi.target, phi.depth)?;
        // payload regrouped by slice basis vector: y ↦ v_y
        let mut groups: BTreeMap<(Vec<u32>, usize), Vec<(usize, F::E)>> = BTreeMap::new();
        for ((l, y, t), x) in &phi.payload {
            groups.entry((l.clone(), *y)).or_default().push((*t, x.clone()));
        }
        for wi in 0..dw {
            // Φ^w_{μ} truncated to depth 0 is x ⊗ w
            let target_shift = add_shift(&phi.target, &int_shift(&w.weights[wi], -1));
            let target = ctx.verma(&target_shift, 0)?;
            let base: TensorVec<F::E> = [((top(r), 0, wi), k.one())].into_iter().collect();
            for (yk, vy) in &groups {
                let y: VermaVec<F::E> = [(yk.clone(), k.one())].into_iter().collect();
                let img = apply_words(k, &source, &target, w, &base, &y, 0);
                let ww = expectation(k, dw, &img);
                for (a, xa) in ww.iter().enumerate() {
                    if k.is_zero(xa) {
                        continue;
                    }
                    for (t, xt) in vy {
                        let row = a * dv + t;
                        let col = wi * dv + vi;
                        let val = k.add(out.get(row, col), &k.mul(xa, xt));
                        out.set(row, col, val);
                    }
                }
            }
        }
    }
    check_triangular(ctx, w, v, &out)?;
    Ok(out)
}

/// `J(w⊗v) ∈ w⊗v + W[<wt w]⊗V[>wt v]`.
fn check_triangular<F: DynField>(ctx: &Context<F>, w: &FinModule, v: &FinModule, j: &Mat<F::E>) -> Result<()> {
    let k = &ctx.k;
    let dv = v.dim();
    for col in 0..j.cols() {
        for row in 0..j.rows() {
            let x = j.get(row, col);
            let ok = if row == col {
                *x == k.one()
            } else if k.is_zero(x) {
                true
            } else {
                let (a, b) = (w.weight(row / dv), w.weight(col / dv));
                let (c, d) = (v.weight(row % dv), v.weight(col % dv));
                ctx.rs.strictly_below(&a, &b) && a.add(&c) == b.add(&d)
            };
            if !ok {
                return Err(Error::Postcondition(alloc::format!(
                    "fusion matrix {}|{} is not unit triangular at ({}, {})",
                    w.name,
                    v.name,
                    row,
                    col
                )));
            }
        }
    }
    Ok(())
}

/// `J_{U,W⊗V}(λ)·(1⊗J_{WV}(λ)) = J_{U⊗W,V}(λ)·(J_{UW}(λ-h^{(3)})⊗1)`.
pub fn verify_cocycle<F: DynField>(
    ctx: &Context<F>,
    u: &FinModule,
    w: &FinModule,
    v: &FinModule,
    shift: &[Rat],
) -> Result<Verification> {
    let wv = tensor(w, v);
    let uw = tensor(u, w);
    let space = TensorSpace::new(&[u, w, v]);
    let j_u_wv = |s: &[Rat]| fusion_matrix(ctx, u, &wv, s);
    let j_wv = |s: &[Rat]| fusion_matrix(ctx, w, v, s);
    let j_uw_v = |s: &[Rat]| fusion_matrix(ctx, &uw, v, s);
    let j_uw = |s: &[Rat]| fusion_matrix(ctx, u, w, s);
    let lhs = product(
        ctx,
        &space,
        shift,
        &[
            ShiftedMatrixExpr::new(&[0, 1, 2], &[], &j_u_wv),
            ShiftedMatrixExpr::new(&[1, 2], &[], &j_wv),
        ],
    )?;
    let rhs = product(
        ctx,
        &space,
        shift,
        &[
            ShiftedMatrixExpr::new(&[0, 1, 2], &[], &j_uw_v),
            ShiftedMatrixExpr::new(&[0, 1], &[(2, -1)], &j_uw),
        ],
    )?;
    let mut rep = Verification::new("cocycle", &operands(&[u, w, v]));
    rep.compare(&ctx.k, &space, &lhs, &rhs);
    Ok(rep)
}

pub fn operands(mods: &[&FinModule]) -> String {
    let names: Vec<&str> = mods.iter().map(|m| m.name.as_str()).collect();
    names.join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::root_system;
    use crate::exact::{parse_ratfun, Symbolic};
    use crate::repmod::irrep;

    fn a1() -> Context<Symbolic> {
        Context::new(root_system(1).unwrap(), Symbolic::new(1, "x"))
    }

    #[test]
    fn lowest_vector_correction() {
        let ctx = a1();
        let l1 = irrep(&ctx.rs, &[1]).unwrap();
        let phi = intertwiner(&ctx, &ctx.origin(), &l1, 1).unwrap();
        assert_eq!(phi.payload.len(), 2);
        let c = &phi.payload[&(alloc::vec![1], 0, 0)];
        assert_eq!(*c, parse_ratfun("-1/(x1+1)", "x", 1).unwrap());
        assert!(is_intertwining(&ctx, &phi, &l1).unwrap());
        let top = intertwiner(&ctx, &ctx.origin(), &l1, 0).unwrap();
        assert_eq!(top.payload.len(), 1);
    }

    #[test]
    fn apply_on_f_x() {
        let ctx = a1();
        let l1 = irrep(&ctx.rs, &[1]).unwrap();
        let phi = intertwiner(&ctx, &ctx.origin(), &l1, 0).unwrap();
        let y: VermaVec<_> = [((alloc::vec![1], 0), ctx.k.one())].into_iter().collect();
        let img = apply_intertwiner(&ctx, &phi, &l1, &y, 1).unwrap();
        assert_eq!(img.len(), 2);
        assert!(img[&(alloc::vec![1], 0, 0)].is_one());
        assert!(img[&(alloc::vec![0], 0, 1)].is_one());
    }

    #[test]
    fn fusion_l1_l1() {
        let ctx = a1();
        let l1 = irrep(&ctx.rs, &[1]).unwrap();
        let j = fusion_matrix(&ctx, &l1, &l1, &ctx.origin()).unwrap();
        // basis order: ++, +-, -+, --
        assert_eq!(*j.get(2, 1), parse_ratfun("-1/(x1+1)", "x", 1).unwrap());
        for i in 0..4 {
            assert!(j.get(i, i).is_one());
        }
        let nonzero = j.entries().filter(|(_, _, x)| !x.is_zero()).count();
        assert_eq!(nonzero, 5);
    }

    #[test]
    fn cocycle_trivial_modules() {
        let ctx = a1();
        let t = crate::repmod::trivial(&ctx.rs);
        let rep = verify_cocycle(&ctx, &t, &t, &t, &ctx.origin()).unwrap();
        assert!(rep.passed());
    }
}
