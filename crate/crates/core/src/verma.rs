//! Depth-truncated Verma modules.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cartan::RootSystem;
use crate::error::{Error, Result};
use crate::exact::rat::Rat;
use crate::exact::scalar::Field;
use crate::hw::{self, HwQuotient, Level};
use crate::linalg::Mat;
use crate::repmod::FinModule;

/// Basis vector of a slice: level and index within the level.
pub type VKey = (Level, usize);
/// Vector of a slice.
pub type VermaVec<E> = BTreeMap<VKey, E>;
/// Vector of `M ⊗ V`: slice basis vector and module index.
pub type TensorVec<E> = BTreeMap<(Level, usize, usize), E>;

#[derive(Clone, Debug)]
pub struct VermaSlice<E> {
    /// Offset of the highest weight from the base parameter.
    pub shift: Vec<Rat>,
    /// Coordinates `⟨λ, α_i^∨⟩`.
    pub lam: Vec<E>,
    pub q: HwQuotient<E>,
}

/// Builds `M_λ` to height `depth`, failing when some weight space is smaller
/// than its Kostant count.
pub fn build_verma<F: Field>(
    k: &F,
    rs: &RootSystem,
    shift: Vec<Rat>,
    lam: Vec<F::E>,
    depth: usize,
) -> Result<VermaSlice<F::E>> {
    let q = hw::build(k, rs, &lam, Some(depth), true)?;
    Ok(VermaSlice { shift, lam, q })
}

pub fn height(l: &Level) -> usize {
    l.iter().map(|&x| x as usize).sum()
}

pub fn top(r: usize) -> Level {
    alloc::vec![0; r]
}

impl<E: Clone> VermaSlice<E> {
    pub fn depth(&self) -> usize {
        self.q.depth
    }

    pub fn rank(&self) -> usize {
        self.q.rank
    }

    pub fn dim(&self, l: &Level) -> usize {
        self.q.levels.get(l).map_or(0, |d| d.words.len())
    }

    pub fn word(&self, key: &VKey) -> &[usize] {
        &self.q.levels[&key.0].words[key.1]
    }

    /// Basis keys up to height `cap`, in level order.
    pub fn basis(&self, cap: usize) -> Vec<VKey> {
        self.q
            .order
            .iter()
            .filter(|l| height(l) <= cap)
            .flat_map(|l| (0..self.dim(l)).map(move |i| (l.clone(), i)))
            .collect()
    }

    /// Label such as `f1f2x` for a basis vector.
    pub fn label(&self, key: &VKey) -> String {
        let mut s = String::new();
        for j in self.word(key) {
            s.push_str(&alloc::format!("f{}", j + 1));
        }
        s.push('x');
        s
    }

    pub fn f_matrix(&self, j: usize, from: &Level) -> Option<&Mat<E>> {
        self.q.f.get(&(j, from.clone()))
    }
}

fn vadd<F: Field, K: Ord>(k: &F, v: &mut BTreeMap<K, F::E>, key: K, x: F::E) {
    if k.is_zero(&x) {
        return;
    }
    match v.get_mut(&key) {
        Some(y) => {
            *y = k.add(y, &x);
            if k.is_zero(y) {
                v.remove(&key);
            }
        }
        None => {
            v.insert(key, x);
        }
    }
}

pub(crate) fn vec_add<F: Field, K: Ord>(k: &F, v: &mut BTreeMap<K, F::E>, key: K, x: F::E) {
    vadd(k, v, key, x)
}

/// `f_j` on a slice vector; results above `cap` are dropped when `truncate`
/// is set and raise `DepthExceeded` otherwise.
pub fn act_f<F: Field>(
    k: &F,
    m: &VermaSlice<F::E>,
    j: usize,
    v: &VermaVec<F::E>,
    cap: usize,
    truncate: bool,
) -> Result<VermaVec<F::E>> {
    let mut out = BTreeMap::new();
    for ((l, i), x) in v {
        let mut up = l.clone();
        up[j] += 1;
        if height(&up) > cap.min(m.depth()) {
            if truncate {
                continue;
            }
            return Err(Error::DepthExceeded(m.depth()));
        }
        if let Some(fm) = m.f_matrix(j, l) {
            for t in 0..fm.rows() {
                let c = fm.get(t, *i);
                if !k.is_zero(c) {
                    vadd(k, &mut out, (up.clone(), t), k.mul(c, x));
                }
            }
        }
    }
    Ok(out)
}

pub fn act_e<F: Field>(k: &F, m: &VermaSlice<F::E>, i: usize, v: &VermaVec<F::E>) -> VermaVec<F::E> {
    let mut out = BTreeMap::new();
    for ((l, idx), x) in v {
        if let Some(Some(em)) = m.q.levels[l].e.get(i) {
            let mut down = l.clone();
            down[i] -= 1;
            for t in 0..em.rows() {
                let c = em.get(t, *idx);
                if !k.is_zero(c) {
                    vadd(k, &mut out, (down.clone(), t), k.mul(c, x));
                }
            }
        }
    }
    out
}

pub fn act_h<F: Field>(k: &F, rs: &RootSystem, m: &VermaSlice<F::E>, i: usize, v: &VermaVec<F::E>) -> VermaVec<F::E> {
    let mut out = BTreeMap::new();
    for ((l, idx), x) in v {
        let s: i64 = (0..rs.rank).map(|c| rs.cartan[i][c] * i64::from(l[c])).sum();
        let h = k.sub(&m.lam[i], &k.lift_int(s));
        vadd(k, &mut out, (l.clone(), *idx), k.mul(&h, x));
    }
    out
}

/// `f_j` on `M ⊗ V` by the Leibniz rule, dropping slice components above `cap`.
pub fn act_f_tensor<F: Field>(
    k: &F,
    m: &VermaSlice<F::E>,
    module: &FinModule,
    j: usize,
    v: &TensorVec<F::E>,
    cap: usize,
) -> TensorVec<F::E> {
    let mut out = BTreeMap::new();
    let fv = &module.f[j];
    for ((l, i, t), x) in v {
        let mut up = l.clone();
        up[j] += 1;
        if height(&up) <= cap {
            if let Some(fm) = m.f_matrix(j, l) {
                for s in 0..fm.rows() {
                    let c = fm.get(s, *i);
                    if !k.is_zero(c) {
                        vadd(k, &mut out, (up.clone(), s, *t), k.mul(c, x));
                    }
                }
            }
        }
        for s in 0..module.dim() {
            let c = fv.get(s, *t);
            if !num_traits::Zero::is_zero(c) {
                vadd(k, &mut out, (l.clone(), *i, s), k.mul(&k.lift_rat(c), x));
            }
        }
    }
    out
}

/// The `V`-component along the highest-weight vector.
pub fn expectation<F: Field>(k: &F, dim: usize, v: &TensorVec<F::E>) -> Vec<F::E> {
    let mut out = alloc::vec![k.zero(); dim];
    for ((l, i, t), x) in v {
        if height(l) == 0 && *i == 0 {
            out[*t] = k.add(&out[*t], x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::root_system;
    use crate::exact::parse_ratfun;
    use crate::exact::rat::int;
    use crate::exact::{DynField, Symbolic};

    #[test]
    fn sl2_closed_form() {
        let rs = root_system(1).unwrap();
        let k = Symbolic::new(1, "x");
        let m = build_verma(&k, &rs, alloc::vec![int(0)], k.param(&[int(0)]), 3).unwrap();
        for d in 1..=3u32 {
            let e = m.q.levels[&alloc::vec![d]].e[0].as_ref().unwrap();
            // e·f^k x = k(x-k+1) f^{k-1} x
            let expect = parse_ratfun(&alloc::format!("{}*(x1-{}+1)", d, d), "x", 1).unwrap();
            assert_eq!(e.get(0, 0), &expect);
        }
    }

    #[test]
    fn a2_dimensions() {
        let rs = root_system(2).unwrap();
        let k = Symbolic::new(2, "x");
        let m = build_verma(&k, &rs, alloc::vec![int(0), int(0)], k.param(&[int(0), int(0)]), 4).unwrap();
        assert_eq!(m.dim(&alloc::vec![1, 1]), 2);
        assert_eq!(m.dim(&alloc::vec![2, 1]), 2);
        assert_eq!(m.dim(&alloc::vec![2, 2]), 3);
    }
}
