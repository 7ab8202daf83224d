//! Type A root data.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rat::{int, is_nonneg_integer, to_i64, Rat};
use crate::exact::{ExpSeries, Prefactor, RatFun};

/// A weight in coroot coordinates: entry `i` is `⟨ξ, α_i^∨⟩`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticeWeight(pub Vec<Rat>);

impl LatticeWeight {
    pub fn from_ints(c: &[i64]) -> Self {
        LatticeWeight(c.iter().map(|&x| int(x)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, o: &LatticeWeight) -> LatticeWeight {
        LatticeWeight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &LatticeWeight) -> LatticeWeight {
        LatticeWeight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatticeWeight {
        LatticeWeight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Rat) -> LatticeWeight {
        LatticeWeight(self.0.iter().map(|a| a * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(to_i64).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub inv_cartan: Vec<Vec<Rat>>,
    pub positive_roots: Vec<LatticeWeight>,
    /// Positive roots in simple-root coordinates.
    pub positive_simple: Vec<Vec<i64>>,
    pub rho: LatticeWeight,
}

pub fn root_system(r: i64) -> Result<RootSystem> {
    if r <= 0 {
        return Err(Error::UnsupportedRank(r));
    }
    let n = r as usize;
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    // (A^{-1})_{ij} = min(i,j)·(r+1-max(i,j))/(r+1), 1-based
    let inv_cartan = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| Rat::new((i.min(j) * (n + 1 - i.max(j))).into(), (n + 1).into()))
                .collect()
        })
        .collect();
    let mut positive_simple = Vec::new();
    for i in 0..n {
        for j in i..n {
            positive_simple.push((0..n).map(|k| (i <= k && k <= j) as i64).collect::<Vec<_>>());
        }
    }
    let mut rs = RootSystem {
        rank: n,
        cartan,
        inv_cartan,
        positive_roots: Vec::new(),
        positive_simple: positive_simple.clone(),
        rho: LatticeWeight::from_ints(&vec![1; n]),
    };
    rs.positive_roots = positive_simple.iter().map(|b| rs.from_simple(b)).collect();
    Ok(rs)
}

impl RootSystem {
    pub fn simple_root(&self, i: usize) -> LatticeWeight {
        LatticeWeight::from_ints(&self.cartan[i])
    }

    pub fn fundamental_weight(&self, i: usize) -> LatticeWeight {
        let mut c = vec![0; self.rank];
        c[i] = 1;
        LatticeWeight::from_ints(&c)
    }

    /// Coroot coordinates of `Σ beta_j α_j`.
    pub fn from_simple(&self, beta: &[i64]) -> LatticeWeight {
        LatticeWeight(
            (0..self.rank)
                .map(|i| int((0..self.rank).map(|j| self.cartan[i][j] * beta[j]).sum()))
                .collect(),
        )
    }

    pub fn simple_coords(&self, w: &LatticeWeight) -> Vec<Rat> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| &self.inv_cartan[i][j] * &w.0[j]).sum())
            .collect()
    }

    pub fn height(&self, w: &LatticeWeight) -> Rat {
        self.simple_coords(w).into_iter().sum()
    }

    /// Linear functional computing heights from coroot coordinates.
    pub fn height_functional(&self) -> Vec<Rat> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.inv_cartan[j][i].clone()).sum())
            .collect()
    }

    /// Simple-root coordinates when `w` lies in the nonnegative root cone.
    pub fn cone_coords(&self, w: &LatticeWeight) -> Option<Vec<u32>> {
        let c = self.simple_coords(w);
        if c.iter().all(is_nonneg_integer) {
            Some(c.iter().map(|x| to_i64(x).unwrap() as u32).collect())
        } else {
            None
        }
    }

    /// `lo < hi` in the root-cone order.
    pub fn strictly_below(&self, lo: &LatticeWeight, hi: &LatticeWeight) -> bool {
        let d = hi.sub(lo);
        !d.is_zero() && self.cone_coords(&d).is_some()
    }

    /// Number of ways to write `beta` as a sum of positive roots.
    pub fn kostant_partition(&self, beta: &LatticeWeight) -> u64 {
        match self.cone_coords(beta) {
            Some(b) => {
                let b: Vec<i64> = b.into_iter().map(i64::from).collect();
                count_partitions(&self.positive_simple, &b, 0)
            }
            None => 0,
        }
    }

    pub fn is_dominant(&self, lam: &[i64]) -> bool {
        lam.len() == self.rank && lam.iter().all(|&c| c >= 0)
    }

    /// Weyl dimension formula `Π ⟨Λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩`.
    pub fn weyl_dimension(&self, lam: &[i64]) -> u64 {
        let mut num = Rat::one();
        for a in &self.positive_simple {
            let pair: i64 = a.iter().zip(lam).map(|(x, l)| x * (l + 1)).sum();
            let rho: i64 = a.iter().sum();
            num *= Rat::new(pair.into(), rho.into());
        }
        to_i64(&num).expect("Weyl dimension is an integer") as u64
    }

    /// `e^{⟨λ,ρ⟩}·Π_{α>0}(1 - e^{-⟨λ,α⟩})` truncated at height `order`.
    pub fn weyl_denominator(&self, order: Rat, nvars: usize) -> ExpSeries {
        let mut s = ExpSeries::new(order, Prefactor::None, self.height_functional(), nvars);
        let npos = self.positive_roots.len();
        for mask in 0u64..(1 << npos) {
            let mut xi = self.rho.neg();
            let mut sign = 1;
            for (k, a) in self.positive_roots.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    xi = xi.add(a);
                    sign = -sign;
                }
            }
            s.add_term(xi, RatFun::constant(nvars, int(sign)));
        }
        s
    }
}

fn count_partitions(roots: &[Vec<i64>], b: &[i64], idx: usize) -> u64 {
    if b.iter().all(|&x| x == 0) {
        return 1;
    }
    if idx == roots.len() {
        return 0;
    }
    let mut total = 0;
    let mut cur = b.to_vec();
    while cur.iter().all(|&x| x >= 0) {
        total += count_partitions(roots, &cur, idx + 1);
        for (c, a) in cur.iter_mut().zip(&roots[idx]) {
            *c -= a;
        }
    }
    total
}

impl RootSystem {
    /// All `β` in the root cone with `height(β) = h`, in lexicographic order
    /// of simple coordinates.
    pub fn cone_level(&self, h: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.rank];
        compositions(h, 0, &mut cur, &mut out);
        out
    }
}

fn compositions(rem: u32, idx: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if idx + 1 == cur.len() {
        cur[idx] = rem;
        out.push(cur.clone());
        return;
    }
    for k in 0..=rem {
        cur[idx] = k;
        compositions(rem - k, idx + 1, cur, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    #[test]
    fn rank_one_and_two() {
        let a1 = root_system(1).unwrap();
        assert_eq!(a1.positive_roots.len(), 1);
        assert_eq!(a1.rho, a1.fundamental_weight(0));
        let a2 = root_system(2).unwrap();
        assert_eq!(a2.positive_roots.len(), 3);
        assert_eq!(a2.simple_root(0).0[1], int(-1));
        assert!(root_system(0).is_err());
    }

    #[test]
    fn inverse_cartan_is_inverse() {
        for r in 1..=4 {
            let rs = root_system(r).unwrap();
            let n = rs.rank;
            for i in 0..n {
                for j in 0..n {
                    let s: Rat = (0..n).map(|k| int(rs.cartan[i][k]) * &rs.inv_cartan[k][j]).sum();
                    assert_eq!(s, int((i == j) as i64));
                }
            }
        }
    }

    #[test]
    fn heights() {
        let a1 = root_system(1).unwrap();
        assert_eq!(a1.height(&a1.rho), rat(1, 2));
        let a2 = root_system(2).unwrap();
        assert_eq!(a2.height(&a2.rho), int(2));
        for i in 0..2 {
            assert_eq!(a2.height(&a2.simple_root(i)), int(1));
        }
    }

    #[test]
    fn kostant_examples() {
        let a1 = root_system(1).unwrap();
        assert_eq!(a1.kostant_partition(&a1.from_simple(&[3])), 1);
        let a2 = root_system(2).unwrap();
        assert_eq!(a2.kostant_partition(&a2.from_simple(&[1, 1])), 2);
        assert_eq!(a2.kostant_partition(&LatticeWeight::zero(2)), 1);
        assert_eq!(a2.kostant_partition(&a2.fundamental_weight(0)), 0);
    }

    #[test]
    fn weyl_denominator_terms() {
        let a1 = root_system(1).unwrap();
        let d = a1.weyl_denominator(int(3), 1);
        assert_eq!(d.len(), 2);
        assert_eq!(d.coeff(&a1.rho.neg()), RatFun::one(1));
        let d0 = a1.weyl_denominator(int(0), 1);
        assert_eq!(d0.len(), 1);
        let a2 = root_system(2).unwrap();
        // two subsets give exponent 0 (α1+α2 alone, and α1 with α2) and cancel
        assert_eq!(a2.weyl_denominator(int(10), 2).len(), 6);
    }

    #[test]
    fn weyl_dimensions() {
        let a1 = root_system(1).unwrap();
        assert_eq!(a1.weyl_dimension(&[2]), 3);
        let a2 = root_system(2).unwrap();
        assert_eq!(a2.weyl_dimension(&[1, 0]), 3);
        assert_eq!(a2.weyl_dimension(&[1, 1]), 8);
    }
}
