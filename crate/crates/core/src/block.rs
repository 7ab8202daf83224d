//! Operators on tensor products of modules and dynamical shifts.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use crate::context::{add_shift, Context};
use crate::error::Result;
use crate::exact::rat::Rat;
use crate::exact::scalar::DynField;
use crate::linalg::{self, Mat};
use crate::repmod::FinModule;

/// Ordered tensor product `mods[0] ⊗ mods[1] ⊗ ...`; basis index
/// `(i_0, i_1, ...)` is flattened with the last factor fastest.
#[derive(Clone)]
pub struct TensorSpace<'a> {
    pub mods: Vec<&'a FinModule>,
}

impl<'a> TensorSpace<'a> {
    pub fn new(mods: &[&'a FinModule]) -> Self {
        TensorSpace { mods: mods.to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.mods.iter().map(|m| m.dim()).product()
    }

    pub fn split(&self, mut idx: usize) -> Vec<usize> {
        let mut out = alloc::vec![0; self.mods.len()];
        for (k, m) in self.mods.iter().enumerate().rev() {
            out[k] = idx % m.dim();
            idx /= m.dim();
        }
        out
    }

    pub fn join(&self, parts: &[usize]) -> usize {
        parts.iter().zip(&self.mods).fold(0, |acc, (p, m)| acc * m.dim() + p)
    }

    pub fn label(&self, idx: usize) -> String {
        let parts: Vec<String> = self
            .split(idx)
            .iter()
            .zip(&self.mods)
            .map(|(p, m)| m.labels[*p].clone())
            .collect();
        parts.join(",")
    }

    pub fn weight(&self, idx: usize) -> Vec<i64> {
        let r = self.mods[0].rank();
        let mut w = alloc::vec![0; r];
        for (p, m) in self.split(idx).iter().zip(&self.mods) {
            for (a, b) in w.iter_mut().zip(&m.weights[*p]) {
                *a += b;
            }
        }
        w
    }

    pub fn names(&self) -> Vec<String> {
        self.mods.iter().map(|m| m.name.clone()).collect()
    }
}

/// `F(λ + Σ sign·h^{(leg)})` acting on the listed legs.
pub struct ShiftedMatrixExpr<'f, E> {
    pub legs: Vec<usize>,
    pub shifts: Vec<(usize, i64)>,
    pub family: &'f dyn Fn(&[Rat]) -> Result<Rc<Mat<E>>>,
}

impl<'f, E> ShiftedMatrixExpr<'f, E> {
    pub fn new(legs: &[usize], shifts: &[(usize, i64)], family: &'f dyn Fn(&[Rat]) -> Result<Rc<Mat<E>>>) -> Self {
        ShiftedMatrixExpr {
            legs: legs.to_vec(),
            shifts: shifts.to_vec(),
            family,
        }
    }
}

/// The full matrix of a shifted expression on `space`, the parameter being
/// `λ + base`.
pub fn embed<F: DynField>(
    ctx: &Context<F>,
    space: &TensorSpace<'_>,
    base: &[Rat],
    expr: &ShiftedMatrixExpr<'_, F::E>,
) -> Result<Mat<F::E>> {
    let k = &ctx.k;
    let n = space.dim();
    let r = ctx.rank();
    let sub = TensorSpace::new(&expr.legs.iter().map(|&l| space.mods[l]).collect::<Vec<_>>());
    let mut out = linalg::zeros(k, n, n);
    let mut cache: BTreeMap<Vec<i64>, Rc<Mat<F::E>>> = BTreeMap::new();
    for col in 0..n {
        let parts = space.split(col);
        let mut nu = alloc::vec![0i64; r];
        for &(leg, sign) in &expr.shifts {
            for (a, b) in nu.iter_mut().zip(&space.mods[leg].weights[parts[leg]]) {
                *a += sign * b;
            }
        }
        let x = match cache.get(&nu) {
            Some(x) => x.clone(),
            None => {
                let s: Vec<Rat> = nu.iter().map(|&c| Rat::from_integer(c.into())).collect();
                let x = (expr.family)(&add_shift(base, &s))?;
                cache.insert(nu.clone(), x.clone());
                x
            }
        };
        let j = sub.join(&expr.legs.iter().map(|&l| parts[l]).collect::<Vec<_>>());
        for o in 0..x.rows() {
            let v = x.get(o, j);
            if k.is_zero(v) {
                continue;
            }
            let mut np = parts.clone();
            for (l, p) in expr.legs.iter().zip(sub.split(o)) {
                np[*l] = p;
            }
            out.set(space.join(&np), col, v.clone());
        }
    }
    Ok(out)
}

/// Applies a shifted expression to a vector, splitting it into basis vectors
/// (each homogeneous on every leg).
pub fn dynamical_shift_apply<F: DynField>(
    ctx: &Context<F>,
    space: &TensorSpace<'_>,
    base: &[Rat],
    expr: &ShiftedMatrixExpr<'_, F::E>,
    v: &[F::E],
) -> Result<Vec<F::E>> {
    let m = embed(ctx, space, base, expr)?;
    Ok(linalg::mul_vec(&ctx.k, &m, v))
}

/// Product of several embedded expressions, leftmost applied last.
pub fn product<F: DynField>(
    ctx: &Context<F>,
    space: &TensorSpace<'_>,
    base: &[Rat],
    exprs: &[ShiftedMatrixExpr<'_, F::E>],
) -> Result<Mat<F::E>> {
    let mut acc = linalg::identity(&ctx.k, space.dim());
    for e in exprs {
        let m = embed(ctx, space, base, e)?;
        acc = linalg::mul(&ctx.k, &acc, &m);
    }
    Ok(acc)
}

/// Conjugation by the flip: `X` on `A⊗B` becomes `P X P^{-1}` on `B⊗A`.
pub fn flip_conj<E: Clone>(x: &Mat<E>, da: usize, db: usize) -> Mat<E> {
    // index of a⊗b is a·db + b; of b⊗a is b·da + a
    Mat::from_fn(da * db, da * db, |i, j| {
        let (bi, ai) = (i / da, i % da);
        let (bj, aj) = (j / da, j % da);
        x.get(ai * db + bi, aj * db + bj).clone()
    })
}
