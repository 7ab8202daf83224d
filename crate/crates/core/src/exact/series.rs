//! Truncated series in exponentials `e^{-⟨λ,ξ⟩}` with rational-function
//! coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use super::rat::Rat;
use super::ratfun::RatFun;
use crate::cartan::LatticeWeight;
use crate::error::{Error, Result};

/// Global exponential factor carried outside the sum.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Prefactor {
    None,
    /// `e^{⟨λ,μ⟩}`
    Plus,
    /// `e^{-⟨λ,μ⟩}`
    Minus,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpSeries {
    order: Rat,
    prefactor: Prefactor,
    /// `height(ξ) = Σ height_fn[i]·ξ[i]` on coroot coordinates.
    height_fn: Vec<Rat>,
    nvars: usize,
    terms: BTreeMap<LatticeWeight, RatFun>,
}

impl ExpSeries {
    /// The empty series; `nvars` is the arity of the coefficients.
    pub fn new(order: Rat, prefactor: Prefactor, height_fn: Vec<Rat>, nvars: usize) -> Self {
        ExpSeries {
            order,
            prefactor,
            height_fn,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// The series `1` (a single term at exponent 0).
    pub fn one(order: Rat, height_fn: Vec<Rat>, nvars: usize) -> Self {
        let r = height_fn.len();
        let mut s = Self::new(order, Prefactor::None, height_fn, nvars);
        s.add_term(LatticeWeight::zero(r), RatFun::one(nvars));
        s
    }

    pub fn order(&self) -> &Rat {
        &self.order
    }

    pub fn prefactor(&self) -> Prefactor {
        self.prefactor
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn height_fn(&self) -> &[Rat] {
        &self.height_fn
    }

    pub fn height(&self, xi: &LatticeWeight) -> Rat {
        xi.0.iter().zip(&self.height_fn).map(|(a, b)| a * b).sum()
    }

    pub fn terms(&self) -> &BTreeMap<LatticeWeight, RatFun> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, xi: &LatticeWeight) -> RatFun {
        self.terms.get(xi).cloned().unwrap_or_else(|| RatFun::zero(self.nvars))
    }

    /// Adds `c·e^{-⟨λ,ξ⟩}`; terms above the order are discarded.
    pub fn add_term(&mut self, xi: LatticeWeight, c: RatFun) {
        if c.is_zero() || self.height(&xi) > self.order {
            return;
        }
        match self.terms.get_mut(&xi) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&xi);
                }
            }
            None => {
                self.terms.insert(xi, c);
            }
        }
    }

    /// Exponentwise convolution truncated to the smaller order.
    pub fn mul(&self, other: &ExpSeries) -> Result<ExpSeries> {
        let prefactor = match (self.prefactor, other.prefactor) {
            (Prefactor::None, p) | (p, Prefactor::None) => p,
            _ => return Err(Error::BothPrefactored),
        };
        let order = if self.order <= other.order {
            self.order.clone()
        } else {
            other.order.clone()
        };
        let mut out = ExpSeries::new(order, prefactor, self.height_fn.clone(), self.nvars);
        for (xa, ca) in &self.terms {
            for (xb, cb) in &other.terms {
                out.add_term(xa.add(xb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ExpSeries) -> Result<ExpSeries> {
        if self.prefactor != other.prefactor {
            return Err(Error::PrefactorMismatch);
        }
        let order = if self.order <= other.order {
            self.order.clone()
        } else {
            other.order.clone()
        };
        let mut out = self.truncate(order);
        for (x, c) in &other.terms {
            out.add_term(x.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatFun) -> ExpSeries {
        self.map_coeffs(|v| v.mul(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFun) -> RatFun) -> ExpSeries {
        let mut out = ExpSeries::new(self.order.clone(), self.prefactor, self.height_fn.clone(), self.nvars);
        for (x, c) in &self.terms {
            out.add_term(x.clone(), f(c));
        }
        out
    }

    /// Multiplies by `e^{-⟨λ,ν⟩}`; the order moves with the exponents.
    pub fn shift_exponents(&self, nu: &LatticeWeight) -> ExpSeries {
        let order = &self.order + self.height(nu);
        let mut out = ExpSeries::new(order, self.prefactor, self.height_fn.clone(), self.nvars);
        for (x, c) in &self.terms {
            out.add_term(x.add(nu), c.clone());
        }
        out
    }

    pub fn with_prefactor(mut self, p: Prefactor) -> ExpSeries {
        self.prefactor = p;
        self
    }

    pub fn truncate(&self, order: Rat) -> ExpSeries {
        let order = if order < self.order { order } else { self.order.clone() };
        let mut out = ExpSeries::new(order, self.prefactor, self.height_fn.clone(), self.nvars);
        for (x, c) in &self.terms {
            out.add_term(x.clone(), c.clone());
        }
        out
    }

    pub fn is_zero_series(&self) -> bool {
        self.terms.values().all(RatFun::is_zero)
    }
}

impl LatticeWeight {
    pub fn zero(r: usize) -> Self {
        LatticeWeight(alloc::vec![Rat::zero(); r])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::root_system;
    use crate::exact::rat::int;

    #[test]
    fn geometric_series_telescopes() {
        let rs = root_system(1).unwrap();
        let hf = rs.height_functional();
        let alpha = rs.simple_root(0);
        let n = 6;
        let mut one_minus = ExpSeries::one(int(n), hf.clone(), 1);
        one_minus.add_term(alpha.clone(), RatFun::constant(1, int(-1)));
        let mut geo = ExpSeries::new(int(n), Prefactor::None, hf.clone(), 1);
        for k in 0..=n {
            geo.add_term(alpha.scale(&int(k)), RatFun::one(1));
        }
        let prod = one_minus.mul(&geo).unwrap();
        assert_eq!(prod, ExpSeries::one(int(n), hf, 1));
    }

    #[test]
    fn both_prefactored_is_rejected() {
        let rs = root_system(1).unwrap();
        let a = ExpSeries::one(int(3), rs.height_functional(), 1).with_prefactor(Prefactor::Plus);
        let b = a.clone().with_prefactor(Prefactor::Minus);
        assert_eq!(a.mul(&b), Err(Error::BothPrefactored));
    }

    #[test]
    fn unit_truncates() {
        let rs = root_system(1).unwrap();
        let hf = rs.height_functional();
        let mut b = ExpSeries::new(int(20), Prefactor::None, hf.clone(), 1);
        for k in 0..20 {
            b.add_term(rs.simple_root(0).scale(&int(k)), RatFun::one(1));
        }
        let a = ExpSeries::one(int(10), hf, 1);
        let p = a.mul(&b).unwrap();
        assert_eq!(p, b.truncate(int(10)));
        assert_eq!(p.len(), 11);
    }
}
