//! Scalar fields used by the linear algebra.
//!
//! A field is a small value that knows how to build constants; elements
//! carry no context of their own. [`DynField`] adds the dynamical parameter:
//! either a fixed rational point or free symbols.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_traits::{One, Zero};

use super::rat::{rat_to_string, Rat};
use super::ratfun::RatFun;

pub trait Field: Clone + Debug {
    type E: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn lift_rat(&self, r: &Rat) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;

    fn lift_int(&self, n: i64) -> Self::E {
        self.lift_rat(&Rat::from_integer(n.into()))
    }

    fn div(&self, a: &Self::E, b: &Self::E) -> Option<Self::E> {
        self.inv(b).map(|i| self.mul(a, &i))
    }
}

/// A field together with a dynamical parameter `λ` of rank `r`.
pub trait DynField: Field {
    fn rank(&self) -> usize;
    /// Coordinates `⟨λ + shift, α_i^∨⟩`.
    fn param(&self, shift: &[Rat]) -> Vec<Self::E>;
    /// Re-expresses `f(λ)` as `f(λ + shift)` without recomputation, when the
    /// field is symbolic.
    fn translate(&self, a: &Self::E, shift: &[Rat]) -> Option<Self::E>;
    fn render(&self, a: &Self::E) -> String;
    fn is_symbolic(&self) -> bool;
}

/// Plain rationals.
#[derive(Clone, Debug, Default)]
pub struct Q;

macro_rules! rat_ops {
    () => {
        type E = Rat;
        fn zero(&self) -> Rat {
            Rat::zero()
        }
        fn one(&self) -> Rat {
            Rat::one()
        }
        fn lift_rat(&self, r: &Rat) -> Rat {
            r.clone()
        }
        fn is_zero(&self, a: &Rat) -> bool {
            a.is_zero()
        }
        fn add(&self, a: &Rat, b: &Rat) -> Rat {
            a + b
        }
        fn sub(&self, a: &Rat, b: &Rat) -> Rat {
            a - b
        }
        fn mul(&self, a: &Rat, b: &Rat) -> Rat {
            a * b
        }
        fn neg(&self, a: &Rat) -> Rat {
            -a
        }
        fn inv(&self, a: &Rat) -> Option<Rat> {
            (!a.is_zero()).then(|| a.recip())
        }
    };
}

impl Field for Q {
    rat_ops!();
}

/// Rationals with `λ` fixed at a sample point.
#[derive(Clone, Debug)]
pub struct Numeric {
    pub point: Vec<Rat>,
}

impl Numeric {
    pub fn new(point: Vec<Rat>) -> Self {
        Numeric { point }
    }
}

impl Field for Numeric {
    rat_ops!();
}

impl DynField for Numeric {
    fn rank(&self) -> usize {
        self.point.len()
    }

    fn param(&self, shift: &[Rat]) -> Vec<Rat> {
        self.point.iter().zip(shift).map(|(a, b)| a + b).collect()
    }

    fn translate(&self, _: &Rat, _: &[Rat]) -> Option<Rat> {
        None
    }

    fn render(&self, a: &Rat) -> String {
        rat_to_string(a)
    }

    fn is_symbolic(&self) -> bool {
        false
    }
}

/// Rational functions in `x_1 .. x_r`; the prefix only affects rendering.
#[derive(Clone, Debug)]
pub struct Symbolic {
    pub nvars: usize,
    pub prefix: String,
}

impl Symbolic {
    pub fn new(nvars: usize, prefix: &str) -> Self {
        Symbolic {
            nvars,
            prefix: prefix.into(),
        }
    }
}

impl Field for Symbolic {
    type E = RatFun;

    fn zero(&self) -> RatFun {
        RatFun::zero(self.nvars)
    }
    fn one(&self) -> RatFun {
        RatFun::one(self.nvars)
    }
    fn lift_rat(&self, r: &Rat) -> RatFun {
        RatFun::constant(self.nvars, r.clone())
    }
    fn is_zero(&self, a: &RatFun) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a.add(b)
    }
    fn sub(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a.sub(b)
    }
    fn mul(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a.mul(b)
    }
    fn neg(&self, a: &RatFun) -> RatFun {
        a.neg()
    }
    fn inv(&self, a: &RatFun) -> Option<RatFun> {
        a.inv()
    }
}

impl DynField for Symbolic {
    fn rank(&self) -> usize {
        self.nvars
    }

    fn param(&self, shift: &[Rat]) -> Vec<RatFun> {
        (0..self.nvars)
            .map(|i| RatFun::var(self.nvars, i).add(&self.lift_rat(&shift[i])))
            .collect()
    }

    fn translate(&self, a: &RatFun, shift: &[Rat]) -> Option<RatFun> {
        Some(a.shift(shift))
    }

    fn render(&self, a: &RatFun) -> String {
        a.to_string_with(&self.prefix)
    }

    fn is_symbolic(&self) -> bool {
        true
    }
}
