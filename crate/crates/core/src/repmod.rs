//! Finite-dimensional weight modules.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::cartan::{LatticeWeight, RootSystem};
use crate::error::{Error, Result};
use crate::exact::rat::{int, Rat};
use crate::exact::scalar::Q;
use crate::exact::{ExpSeries, Prefactor, RatFun};
use crate::hw;
use crate::linalg::{self, Mat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinModule {
    pub name: String,
    pub labels: Vec<String>,
    /// Weights in coroot coordinates.
    pub weights: Vec<Vec<i64>>,
    pub e: Vec<Mat<Rat>>,
    pub f: Vec<Mat<Rat>>,
}

/// Sign of `λ` in a character `χ(e^{±λ})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

pub fn irrep_name(lam: &[i64]) -> String {
    let parts: Vec<String> = lam.iter().map(i64::to_string).collect();
    format!("L({})", parts.join(","))
}

/// The irreducible module with highest weight `lam`.
pub fn irrep(rs: &RootSystem, lam: &[i64]) -> Result<FinModule> {
    if !rs.is_dominant(lam) {
        return Err(Error::NotDominant);
    }
    let r = rs.rank;
    let point: Vec<Rat> = lam.iter().map(|&x| int(x)).collect();
    let q = hw::build(&Q, rs, &point, None, false)?;
    let mut offset = alloc::collections::BTreeMap::new();
    let mut weights = Vec::new();
    for beta in &q.order {
        offset.insert(beta.clone(), weights.len());
        let b: Vec<i64> = beta.iter().map(|&x| i64::from(x)).collect();
        let sh = rs.from_simple(&b).to_ints().unwrap();
        for _ in &q.levels[beta].words {
            weights.push(lam.iter().zip(&sh).map(|(a, s)| a - s).collect::<Vec<i64>>());
        }
    }
    let d = weights.len();
    let mut e: Vec<Mat<Rat>> = (0..r).map(|_| linalg::zeros(&Q, d, d)).collect();
    let mut f: Vec<Mat<Rat>> = (0..r).map(|_| linalg::zeros(&Q, d, d)).collect();
    for beta in &q.order {
        let o = offset[beta];
        for i in 0..r {
            if let Some(m) = &q.levels[beta].e[i] {
                let mut t = beta.clone();
                t[i] -= 1;
                let ot = offset[&t];
                for (a, c, v) in m.entries() {
                    e[i].set(ot + a, o + c, v.clone());
                }
            }
            let mut up = beta.clone();
            up[i] += 1;
            if let (Some(m), Some(&ou)) = (q.f.get(&(i, beta.clone())), offset.get(&up)) {
                for (a, c, v) in m.entries() {
                    f[i].set(ou + a, o + c, v.clone());
                }
            }
        }
    }
    let expected = rs.weyl_dimension(lam);
    if d as u64 != expected {
        return Err(Error::Postcondition(format!(
            "L{:?} has dimension {} instead of {}",
            lam, d, expected
        )));
    }
    Ok(FinModule {
        name: irrep_name(lam),
        labels: (0..d).map(|i| i.to_string()).collect(),
        weights,
        e,
        f,
    })
}

pub fn trivial(rs: &RootSystem) -> FinModule {
    irrep(rs, &alloc::vec![0; rs.rank]).expect("trivial module")
}

fn wrap(name: &str) -> String {
    if name.contains('⊗') {
        format!("({})", name)
    } else {
        name.to_string()
    }
}

pub fn tensor(v: &FinModule, w: &FinModule) -> FinModule {
    let (dv, dw) = (v.dim(), w.dim());
    let iv = linalg::identity(&Q, dv);
    let iw = linalg::identity(&Q, dw);
    let leib = |a: &Mat<Rat>, b: &Mat<Rat>| linalg::add(&Q, &linalg::kron(&Q, a, &iw), &linalg::kron(&Q, &iv, b));
    let mut labels = Vec::with_capacity(dv * dw);
    let mut weights = Vec::with_capacity(dv * dw);
    for a in 0..dv {
        for b in 0..dw {
            labels.push(format!("{},{}", v.labels[a], w.labels[b]));
            weights.push(v.weights[a].iter().zip(&w.weights[b]).map(|(x, y)| x + y).collect());
        }
    }
    FinModule {
        name: format!("{}⊗{}", v.name, w.name),
        labels,
        weights,
        e: v.e.iter().zip(&w.e).map(|(a, b)| leib(a, b)).collect(),
        f: v.f.iter().zip(&w.f).map(|(a, b)| leib(a, b)).collect(),
    }
}

/// Dual module with `(x·φ)(v) = -φ(x·v)`.
pub fn dual(v: &FinModule) -> FinModule {
    let flip = |m: &Mat<Rat>| linalg::neg(&Q, &m.transpose());
    FinModule {
        name: format!("{}*", wrap(&v.name)),
        labels: v.labels.clone(),
        weights: v.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect(),
        e: v.e.iter().map(flip).collect(),
        f: v.f.iter().map(flip).collect(),
    }
}

impl FinModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn weight(&self, i: usize) -> LatticeWeight {
        LatticeWeight::from_ints(&self.weights[i])
    }

    pub fn weight_indices(&self, w: &[i64]) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.weights[i] == w).collect()
    }

    pub fn zero_weight_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.weights[i].iter().all(|&x| x == 0))
            .collect()
    }

    /// Distinct weights in ascending order.
    pub fn distinct_weights(&self) -> Vec<Vec<i64>> {
        let mut w = self.weights.clone();
        w.sort();
        w.dedup();
        w
    }

    pub fn h(&self, i: usize) -> Mat<Rat> {
        Mat::from_fn(self.dim(), self.dim(), |a, b| {
            if a == b {
                int(self.weights[a][i])
            } else {
                Rat::zero()
            }
        })
    }

    /// `Σ_ν dim W[ν]·e^{±⟨λ,ν⟩}` truncated at `order`.
    pub fn character(&self, rs: &RootSystem, sign: Sign, order: Rat, nvars: usize) -> ExpSeries {
        let mut s = ExpSeries::new(order, Prefactor::None, rs.height_functional(), nvars);
        for i in 0..self.dim() {
            let w = self.weight(i);
            let xi = match sign {
                Sign::Minus => w,
                Sign::Plus => w.neg(),
            };
            s.add_term(xi, RatFun::one(nvars));
        }
        s
    }

    /// Checks the Chevalley and Serre relations and the weight grading.
    pub fn relations_hold(&self, rs: &RootSystem) -> bool {
        let r = rs.rank;
        let comm = |a: &Mat<Rat>, b: &Mat<Rat>| linalg::sub(&Q, &linalg::mul(&Q, a, b), &linalg::mul(&Q, b, a));
        let zero = linalg::zeros(&Q, self.dim(), self.dim());
        for i in 0..r {
            for j in 0..r {
                let a = rs.cartan[i][j];
                let ef = comm(&self.e[i], &self.f[j]);
                let expect = if i == j { self.h(i) } else { zero.clone() };
                if ef != expect {
                    return false;
                }
                let s = |m: &Mat<Rat>| linalg::scale(&Q, &int(a), m);
                if comm(&self.h(i), &self.e[j]) != s(&self.e[j]) {
                    return false;
                }
                if comm(&self.h(i), &self.f[j]) != linalg::neg(&Q, &s(&self.f[j])) {
                    return false;
                }
                if i != j {
                    for x in [&self.e, &self.f] {
                        let mut t = x[j].clone();
                        for _ in 0..(1 - a) {
                            t = comm(&x[i], &t);
                        }
                        if t != zero {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}
