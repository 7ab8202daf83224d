//! The pairing matrix `Q_W`, trace functions `Ψ_V` and `F_V` as truncated
//! exponential series, and the difference equation satisfied by `F_V`.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::block::{embed, flip_conj, product, ShiftedMatrixExpr, TensorSpace};
use crate::cartan::LatticeWeight;
use crate::context::{add_shift, int_shift, Context};
use crate::diffop::difference_operator;
use crate::error::{Error, Result};
use crate::exact::rat::{int, Rat};
use crate::exact::ratfun::RatFun;
use crate::exact::scalar::{DynField, Field, Symbolic};
use crate::exact::series::{ExpSeries, Prefactor};
use crate::exchange::exchange_matrix;
use crate::intertwine::{apply_intertwiner, fusion_matrix, intertwiner, operands};
use crate::linalg::{self, Mat};
use crate::repmod::{dual, tensor, FinModule, Sign};
use crate::report::{Failure, Verification};
use crate::verma::{height, vec_add, VermaVec};

/// `B_W(λ)(w_a, w_c^*)`: the pairing of `J_{W,W*}(λ)(w_a⊗w_c^*)` with the
/// evaluation map.
pub fn bilinear_form<F: DynField>(ctx: &Context<F>, w: &FinModule, shift: &[Rat]) -> Result<Mat<F::E>> {
    let k = &ctx.k;
    let wd = dual(w);
    let j = fusion_matrix(ctx, w, &wd, shift)?;
    let n = w.dim();
    Ok(Mat::from_fn(n, n, |a, c| {
        let mut s = k.zero();
        for b in 0..n {
            s = k.add(&s, j.get(b * n + b, a * n + c));
        }
        s
    }))
}

/// `Q_W(λ+shift)`, defined by `B_W(λ)(w, φ) = φ(Q_W(λ)w)`.
pub fn q_matrix<F: DynField>(ctx: &Context<F>, w: &FinModule, shift: &[Rat]) -> Result<Rc<Mat<F::E>>> {
    ctx.family("qmatrix", &w.name, shift, &|s| {
        let q = bilinear_form(ctx, w, s)?.transpose();
        for (i, j, x) in q.entries() {
            if w.weights[i] != w.weights[j] && !ctx.k.is_zero(x) {
                return Err(Error::Postcondition(alloc::format!(
                    "Q of {} is not weight preserving",
                    w.name
                )));
            }
        }
        Ok(q)
    })
}

fn inverse_family<'a, F: DynField>(
    ctx: &'a Context<F>,
    f: impl Fn(&[Rat]) -> Result<Rc<Mat<F::E>>> + 'a,
) -> impl Fn(&[Rat]) -> Result<Rc<Mat<F::E>>> + 'a {
    move |s| Ok(Rc::new(linalg::inverse(&ctx.k, &*f(s)?)?))
}

/// Flip symmetry of `Q_{U⊗W}`, the product formula for `B_{U⊗W}`, the
/// factorisation of `Q_{U⊗W}`, and the dual exchange matrix formula.
pub fn verify_q_identities<F: DynField>(
    ctx: &Context<F>,
    u: &FinModule,
    w: &FinModule,
    shift: &[Rat],
) -> Result<Vec<Verification>> {
    let k = &ctx.k;
    let (du, dw) = (u.dim(), w.dim());
    let space = TensorSpace::new(&[u, w]);
    let ops = operands(&[u, w]);
    let uw = tensor(u, w);
    let wu = tensor(w, u);
    let (ud, wd) = (dual(u), dual(w));
    let q_uw = q_matrix(ctx, &uw, shift)?;
    let q_wu = q_matrix(ctx, &wu, shift)?;

    let mut flip = Verification::new("q-flip", &ops);
    flip.compare(k, &space, &q_uw, &flip_conj(&q_wu, dw, du));

    // B_{U⊗W}(J_{UW}(λ-h^{(U*)}-h^{(W*)}) u⊗w, Y u*⊗w*) = B_U(λ)(u,u*) B_W(λ-h^{(U*)})(w,w*)
    let y = flip_conj(&*fusion_matrix(ctx, &wd, &ud, shift)?, dw, du);
    let b_uw = bilinear_form(ctx, &uw, shift)?;
    let b_u = bilinear_form(ctx, u, shift)?;
    let n = du * dw;
    let mut lhs17 = linalg::zeros(k, n, n);
    let mut rhs17 = linalg::zeros(k, n, n);
    for ui in 0..du {
        for wi in 0..dw {
            let col_uw = ui * dw + wi;
            for us in 0..du {
                let bw = bilinear_form(ctx, w, &add_shift(shift, &int_shift(&ud.weights[us], -1)))?;
                for ws in 0..dw {
                    let col_d = us * dw + ws;
                    let nu: Vec<i64> = ud.weights[us]
                        .iter()
                        .zip(&wd.weights[ws])
                        .map(|(a, b)| -(a + b))
                        .collect();
                    let x = fusion_matrix(ctx, u, w, &add_shift(shift, &int_shift(&nu, 1)))?;
                    let mut s = k.zero();
                    for a in 0..n {
                        let xa = x.get(a, col_uw);
                        if k.is_zero(xa) {
                            continue;
                        }
                        for b in 0..n {
                            let yb = y.get(b, col_d);
                            if !k.is_zero(yb) {
                                s = k.add(&s, &k.mul(&k.mul(xa, yb), b_uw.get(a, b)));
                            }
                        }
                    }
                    lhs17.set(col_uw, col_d, s);
                    rhs17.set(col_uw, col_d, k.mul(b_u.get(ui, us), bw.get(wi, ws)));
                }
            }
        }
    }
    let mut e17 = Verification::new("q-bilinear-product", &ops);
    e17.compare(k, &space, &lhs17, &rhs17);

    // Q_{U⊗W}(λ) = A^{-1}·Q_U(λ)Q_W(λ+h^{(1)})·J_{UW}(λ+h^{(1)}+h^{(2)})^{-1}
    let a = flip_conj(&fusion_matrix(ctx, &wd, &ud, shift)?.transpose(), dw, du);
    let qu = |s: &[Rat]| q_matrix(ctx, u, s);
    let qw = |s: &[Rat]| q_matrix(ctx, w, s);
    let j_inv = inverse_family(ctx, |s: &[Rat]| fusion_matrix(ctx, u, w, s));
    let qq = product(
        ctx,
        &space,
        shift,
        &[
            ShiftedMatrixExpr::new(&[0], &[], &qu),
            ShiftedMatrixExpr::new(&[1], &[(0, 1)], &qw),
        ],
    )?;
    let jsh = embed(
        ctx,
        &space,
        shift,
        &ShiftedMatrixExpr::new(&[0, 1], &[(0, 1), (1, 1)], &j_inv),
    )?;
    let rhs18 = linalg::mul(k, &linalg::mul(k, &linalg::inverse(k, &a)?, &qq), &jsh);
    let mut e18 = Verification::new("q-factorisation", &ops);
    e18.compare(k, &space, &q_uw, &rhs18);

    // R_{U*W*}(λ)^{t1 t2} = Q_U(λ)Q_W(λ+h^{(1)})·R_{UW}(λ+h^{(1)}+h^{(2)})·(Q_U(λ+h^{(2)})Q_W(λ))^{-1}
    let lhs20 = exchange_matrix(ctx, &ud, &wd, shift)?.transpose();
    let r_uw = |s: &[Rat]| exchange_matrix(ctx, u, w, s);
    let rsh = embed(
        ctx,
        &space,
        shift,
        &ShiftedMatrixExpr::new(&[0, 1], &[(0, 1), (1, 1)], &r_uw),
    )?;
    let qq2 = product(
        ctx,
        &space,
        shift,
        &[
            ShiftedMatrixExpr::new(&[0], &[(1, 1)], &qu),
            ShiftedMatrixExpr::new(&[1], &[], &qw),
        ],
    )?;
    let rhs20 = linalg::mul(k, &linalg::mul(k, &qq, &rsh), &linalg::inverse(k, &qq2)?);
    let mut e20 = Verification::new("q-dual-exchange", &ops);
    e20.compare(k, &space, &lhs20, &rhs20);

    Ok(alloc::vec![flip, e17, e18, e20])
}

/// Largest height of a weight of `W` in the root cone.
fn max_weight_height(rs: &crate::cartan::RootSystem, w: &FinModule) -> Rat {
    w.weights
        .iter()
        .map(|x| rs.height(&LatticeWeight::from_ints(x)))
        .max()
        .unwrap_or_else(Rat::zero)
}

/// Exchange relation for intertwiners on Verma vectors: for `y` in
/// `M_{μ+wt w}` of depth at most the reliable depth,
/// `(Φ^{v_c}_μ⊗1)Φ^w(y) = Σ R_{WV}(μ+wt w)[(w',b),(w,c)]·(Φ^{w'}⊗1)Φ^{v_b}(y)`
/// with legs reordered to `M⊗W⊗V`. Components deeper than
/// `depth - span` are not compared, `span` being the largest height
/// difference of weights inside `V` or `W`.
pub fn verify_eta_relation<F: DynField>(
    ctx: &Context<F>,
    v: &FinModule,
    w: &FinModule,
    depth: usize,
) -> Result<Verification> {
    let k = &ctx.k;
    let span = |m: &FinModule| {
        let mut s = 0;
        for a in &m.weights {
            for b in &m.weights {
                let d: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                if let Some(c) = ctx.rs.cone_coords(&LatticeWeight::from_ints(&d)) {
                    s = s.max(c.iter().map(|&x| x as usize).sum());
                }
            }
        }
        s
    };
    let reliable = depth.saturating_sub(span(v).max(span(w)));
    let dv = v.dim();
    let mut rep = Verification::new("eta", &operands(&[v, w]));
    let apply = |src: &[Rat], m: &FinModule, idx: usize, y: &VermaVec<F::E>| -> Result<_> {
        let phi = intertwiner(ctx, src, m, idx)?;
        Ok((apply_intertwiner(ctx, &phi, m, y, depth)?, phi.target.clone()))
    };
    let base = ctx.origin();
    for wi in 0..w.dim() {
        let p = add_shift(&base, &int_shift(&w.weights[wi], 1));
        let r = exchange_matrix(ctx, w, v, &p)?;
        let mp = ctx.verma(&p, depth)?;
        for key in mp.basis(reliable) {
            let y: VermaVec<F::E> = [(key.clone(), k.one())].into_iter().collect();
            let (a, mu) = apply(&p, w, wi, &y)?;
            for c in 0..dv {
                let mut lhs = BTreeMap::new();
                for ((l, kk, ws), val) in &a {
                    let yy: VermaVec<F::E> = [((l.clone(), *kk), k.one())].into_iter().collect();
                    for ((l2, k2, t), v2) in apply(&mu, v, c, &yy)?.0 {
                        vec_add(k, &mut lhs, (l2, k2, *ws, t), k.mul(val, &v2));
                    }
                }
                let mut rhs = BTreeMap::new();
                for b in 0..dv {
                    let (img, pm) = apply(&p, v, b, &y)?;
                    for w2 in 0..w.dim() {
                        let coef = r.get(w2 * dv + b, wi * dv + c);
                        if k.is_zero(coef) {
                            continue;
                        }
                        for ((l1, k1, t), v1) in &img {
                            let yy: VermaVec<F::E> = [((l1.clone(), *k1), k.one())].into_iter().collect();
                            for ((l2, k2, w3), v2) in apply(&pm, w, w2, &yy)?.0 {
                                vec_add(k, &mut rhs, (l2, k2, w3, *t), k.mul(coef, &k.mul(v1, &v2)));
                            }
                        }
                    }
                }
                let keys: alloc::collections::BTreeSet<_> = lhs.keys().chain(rhs.keys()).cloned().collect();
                let zero = k.zero();
                for kk in keys.into_iter().filter(|kk| height(&kk.0) <= reliable) {
                    rep.checked += 1;
                    let (x1, x2) = (lhs.get(&kk).unwrap_or(&zero), rhs.get(&kk).unwrap_or(&zero));
                    if x1 != x2 {
                        rep.push(Failure {
                            block: mp.label(&key),
                            row: alloc::format!("{:?},{},{}", kk.0, w.labels[kk.2], v.labels[kk.3]),
                            col: alloc::format!("{},{}", w.labels[wi], v.labels[c]),
                            lhs: k.render(x1),
                            rhs: k.render(x2),
                        });
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// An element of `V[0]⊗V*[0]` with series coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFunction {
    pub module: String,
    /// Zero-weight basis indices of `V` (also indexing `V*[0]`).
    pub zero: Vec<usize>,
    pub order: Rat,
    pub prefactor: Prefactor,
    /// `series[a][b]`: coordinate along `v_a⊗v_b^*`.
    pub series: Vec<Vec<ExpSeries>>,
}

impl TraceFunction {
    fn empty(
        rs: &crate::cartan::RootSystem,
        v: &FinModule,
        zero: Vec<usize>,
        order: Rat,
        p: Prefactor,
        nvars: usize,
    ) -> Self {
        let n = zero.len();
        let s = ExpSeries::new(order.clone(), p, rs.height_functional(), nvars);
        TraceFunction {
            module: v.name.clone(),
            zero,
            order,
            prefactor: p,
            series: alloc::vec![alloc::vec![s; n]; n],
        }
    }

    /// The matrix of coefficients at exponent `xi`.
    pub fn coefficient(&self, xi: &LatticeWeight) -> Vec<Vec<RatFun>> {
        self.series
            .iter()
            .map(|row| row.iter().map(|s| s.coeff(xi)).collect())
            .collect()
    }

    /// All exponents carrying a term.
    pub fn exponents(&self) -> Vec<LatticeWeight> {
        let mut out: Vec<LatticeWeight> = self
            .series
            .iter()
            .flatten()
            .flat_map(|s| s.terms().keys().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn zero_space(v: &FinModule) -> Result<Vec<usize>> {
    let z = v.zero_weight_indices();
    if z.is_empty() {
        Err(Error::EmptyZeroWeightSpace)
    } else {
        Ok(z)
    }
}

/// `Ψ_V(λ,μ) = Tr|_{M_μ}(Φ_μ^{V[0]} e^λ)` to exponent height `order`,
/// coefficients in `μ`.
pub fn trace_function(ctx: &Context<Symbolic>, v: &FinModule, order: usize) -> Result<TraceFunction> {
    let zero = zero_space(v)?;
    let nvars = ctx.rank();
    let mut out = TraceFunction::empty(&ctx.rs, v, zero.clone(), int(order as i64), Prefactor::Plus, nvars);
    let base = ctx.origin();
    let m = ctx.verma(&base, order)?;
    for (j, &vz) in zero.iter().enumerate() {
        let phi = intertwiner(ctx, &base, v, vz)?;
        for key in m.basis(order) {
            let y: VermaVec<RatFun> = [(key.clone(), ctx.k.one())].into_iter().collect();
            let img = apply_intertwiner(ctx, &phi, v, &y, order)?;
            let beta: Vec<i64> = key.0.iter().map(|&x| i64::from(x)).collect();
            let xi = ctx.rs.from_simple(&beta);
            for (i, &a) in zero.iter().enumerate() {
                if let Some(c) = img.get(&(key.0.clone(), key.1, a)) {
                    out.series[i][j].add_term(xi.clone(), c.clone());
                }
            }
        }
    }
    Ok(out)
}

/// `F_V(λ,μ) = ℚ_{V*}(μ)^{-1} Ψ_V(λ,-μ-ρ) δ(λ)`, with
/// `ℚ_{V*}(μ) = Q_{V*}(-μ-ρ)` acting on the `V*[0]` leg.
pub fn weighted_trace(ctx: &Context<Symbolic>, v: &FinModule, order: usize) -> Result<TraceFunction> {
    let psi = trace_function(ctx, v, order)?;
    let rs = &ctx.rs;
    let nvars = ctx.rank();
    let n = psi.zero.len();
    let rho_h = rs.height(&rs.rho);
    let ord = int(order as i64);
    let delta = rs.weyl_denominator(&ord + &rho_h, nvars);
    let vd = dual(v);
    let q = q_matrix(ctx, &vd, &ctx.origin())?.map(RatFun::reflect_rho);
    let qi = linalg::inverse(&ctx.k, &q.submatrix(&psi.zero, &psi.zero)).map_err(|_| Error::SingularQ)?;
    let mut pre = Vec::with_capacity(n);
    for row in &psi.series {
        let mut r = Vec::with_capacity(n);
        for s in row {
            let t = s
                .map_coeffs(RatFun::reflect_rho)
                .with_prefactor(Prefactor::None)
                .shift_exponents(&rs.rho)
                .mul(&delta)?
                .truncate(ord.clone());
            r.push(t);
        }
        pre.push(r);
    }
    let mut out = TraceFunction::empty(rs, v, psi.zero.clone(), ord.clone(), Prefactor::Minus, nvars);
    for a in 0..n {
        for b2 in 0..n {
            let mut acc = ExpSeries::new(ord.clone(), Prefactor::None, rs.height_functional(), nvars);
            for b in 0..n {
                let c = qi.get(b2, b);
                if !c.is_zero() {
                    acc = acc.add(&pre[a][b].scale(c))?;
                }
            }
            out.series[a][b2] = acc.with_prefactor(Prefactor::Minus);
        }
    }
    Ok(out)
}

/// `D_W^{μ,V*} F_V(λ,μ) = χ_W(e^{-λ}) F_V(λ,μ)`, compared up to height
/// `order - max height of the weights of W`.
pub fn verify_mr_equation(ctx: &Context<Symbolic>, v: &FinModule, w: &FinModule, order: usize) -> Result<Verification> {
    let rs = &ctx.rs;
    let nvars = ctx.rank();
    let f = weighted_trace(ctx, v, order)?;
    let d = difference_operator(ctx, w, &dual(v))?;
    let n = f.zero.len();
    let ord = int(order as i64);
    let limit = &ord - max_weight_height(rs, w);
    let empty = || ExpSeries::new(ord.clone() + int(1000), Prefactor::Minus, rs.height_functional(), nvars);
    let mut lhs = alloc::vec![alloc::vec![empty(); n]; n];
    for (nu, a) in &d.coeffs {
        let nu_w = LatticeWeight::from_ints(nu);
        let shift = int_shift(nu, 1);
        for ai in 0..n {
            for b in 0..n {
                let shifted = f.series[ai][b].map_coeffs(|c| c.shift(&shift)).shift_exponents(&nu_w);
                for b2 in 0..n {
                    let c = a.get(b2, b);
                    if !c.is_zero() {
                        lhs[ai][b2] = lhs[ai][b2].add(&shifted.scale(c))?;
                    }
                }
            }
        }
    }
    let chi = w.character(rs, Sign::Minus, ord.clone() + int(1000), nvars);
    let mut rep = Verification::new("mr", &operands(&[v, w]));
    for ai in 0..n {
        for b in 0..n {
            let rhs = chi.mul(&f.series[ai][b])?.truncate(limit.clone());
            let l = lhs[ai][b].truncate(limit.clone());
            let keys: alloc::collections::BTreeSet<_> = l.terms().keys().chain(rhs.terms().keys()).cloned().collect();
            for xi in keys {
                rep.checked += 1;
                let (x1, x2) = (l.coeff(&xi), rhs.coeff(&xi));
                if x1 != x2 {
                    let e: Vec<String> = xi.0.iter().map(crate::exact::rat_to_string).collect();
                    rep.push(Failure {
                        block: alloc::format!("({})", e.join(",")),
                        row: v.labels[f.zero[ai]].clone(),
                        col: v.labels[f.zero[b]].clone(),
                        lhs: x1.to_string_with(&ctx.k.prefix),
                        rhs: x2.to_string_with(&ctx.k.prefix),
                    });
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::root_system;
    use crate::exact::parse_ratfun;
    use crate::repmod::{irrep, trivial};

    fn a1(prefix: &str) -> Context<Symbolic> {
        Context::new(root_system(1).unwrap(), Symbolic::new(1, prefix))
    }

    #[test]
    fn q_of_l1_and_l2() {
        let ctx = a1("x");
        let l1 = irrep(&ctx.rs, &[1]).unwrap();
        let q = q_matrix(&ctx, &l1, &ctx.origin()).unwrap();
        let rf = |s: &str| parse_ratfun(s, "x", 1).unwrap();
        assert_eq!(*q.get(0, 0), rf("(x1+2)/(x1+1)"));
        assert!(q.get(1, 1).is_one());
        assert!(q.get(0, 1).is_zero() && q.get(1, 0).is_zero());
        let l2 = irrep(&ctx.rs, &[2]).unwrap();
        let q = q_matrix(&ctx, &l2, &ctx.origin()).unwrap();
        assert_eq!(*q.get(0, 0), rf("(x1+3)/(x1+1)"));
        assert_eq!(*q.get(1, 1), rf("(x1+2)/x1"));
        let t = trivial(&ctx.rs);
        assert!(q_matrix(&ctx, &t, &ctx.origin()).unwrap().get(0, 0).is_one());
    }

    #[test]
    fn q_identities_l1() {
        let ctx = a1("x");
        let l1 = irrep(&ctx.rs, &[1]).unwrap();
        for rep in verify_q_identities(&ctx, &l1, &l1, &ctx.origin()).unwrap() {
            assert!(rep.passed(), "{:?}", rep);
        }
    }

    #[test]
    fn eta_l1() {
        let ctx = a1("m");
        let l1 = irrep(&ctx.rs, &[1]).unwrap();
        let rep = verify_eta_relation(&ctx, &l1, &l1, 3).unwrap();
        assert!(rep.passed(), "{:?}", rep);
        assert!(rep.checked > 0);
    }

    #[test]
    fn psi_trivial_is_verma_character() {
        let ctx = a1("m");
        let t = trivial(&ctx.rs);
        let psi = trace_function(&ctx, &t, 5).unwrap();
        let s = &psi.series[0][0];
        assert_eq!(s.len(), 6);
        for k in 0..=5 {
            assert!(s.coeff(&LatticeWeight::from_ints(&[2 * k])).is_one());
        }
    }

    #[test]
    fn f_trivial_telescopes() {
        let ctx = a1("m");
        let t = trivial(&ctx.rs);
        let f = weighted_trace(&ctx, &t, 6).unwrap();
        let s = &f.series[0][0];
        assert_eq!(f.prefactor, Prefactor::Minus);
        assert_eq!(s.len(), 1);
        assert!(s.coeff(&LatticeWeight::from_ints(&[0])).is_one());
    }

    #[test]
    fn psi_l2_depth_one() {
        let ctx = a1("m");
        let l2 = irrep(&ctx.rs, &[2]).unwrap();
        let psi = trace_function(&ctx, &l2, 2).unwrap();
        assert!(psi.series[0][0].coeff(&LatticeWeight::from_ints(&[0])).is_one());
        assert!(!psi.series[0][0].coeff(&LatticeWeight::from_ints(&[2])).is_zero());
    }

    #[test]
    fn mr_small() {
        let ctx = a1("m");
        let l1 = irrep(&ctx.rs, &[1]).unwrap();
        let l2 = irrep(&ctx.rs, &[2]).unwrap();
        let rep = verify_mr_equation(&ctx, &l2, &l1, 5).unwrap();
        assert!(rep.passed(), "{:?}", rep);
        let t = trivial(&ctx.rs);
        assert!(verify_mr_equation(&ctx, &l2, &t, 4).unwrap().passed());
    }
}
