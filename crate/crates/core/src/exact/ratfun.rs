//! Rational functions in the coordinates of a dynamical parameter.

use alloc::string::String;
use alloc::vec;
use core::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rat::Rat;
use crate::error::{Error, Result};

/// Reduced fraction of polynomials with a monic (graded-lex) denominator.
///
/// The canonical form makes structural equality coincide with equality of
/// rational functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn zero(nvars: usize) -> Self {
        RatFun {
            num: Poly::zero(nvars),
            den: Poly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        RatFun {
            num: Poly::constant(nvars, c),
            den: Poly::one(nvars),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(Poly::var(nvars, i))
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFun {
            num: p,
            den: Poly::one(n),
        }
    }

    /// Builds `num/den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        if let Some(c) = den.as_constant() {
            let inv = c.recip();
            return RatFun {
                num: num.scale(&inv),
                den: Poly::one(n),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.recip();
            RatFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            if self.den.is_one() {
                return RatFun::from_poly(self.num.add(&other.num));
            }
            return Self::canonical(self.num.add(&other.num), self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = other.den.div_exact(&g).unwrap();
        let num = self.num.mul(&b).add(&other.num.mul(&a));
        Self::canonical(num, a.mul(&other.den))
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFun::from_poly(self.num.mul(&other.num));
        }
        // cross-cancel before multiplying to keep degrees down
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading_coeff();
        let inv = lc.recip();
        RatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn scale(&self, c: &Rat) -> RatFun {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Option<RatFun> {
        if self.is_zero() {
            return None;
        }
        Some(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFun) -> Option<RatFun> {
        other.inv().map(|i| self.mul(&i))
    }

    /// `x_i ↦ x_i + nu_i`.
    pub fn shift(&self, nu: &[Rat]) -> RatFun {
        if nu.iter().all(Zero::is_zero) {
            return self.clone();
        }
        let ones = vec![Rat::one(); self.nvars()];
        self.substitute_affine(&ones, nu)
    }

    /// `x_i ↦ -x_i - 1`, the substitution `λ ↦ -λ-ρ` for type A.
    pub fn reflect_rho(&self) -> RatFun {
        let n = self.nvars();
        self.substitute_affine(&vec![-Rat::one(); n], &vec![-Rat::one(); n])
    }

    pub fn substitute_affine(&self, scale: &[Rat], offset: &[Rat]) -> RatFun {
        let num = self.num.substitute_affine(scale, offset);
        let den = self.den.substitute_affine(scale, offset);
        // an invertible affine change keeps the fraction reduced
        let lc = den.leading_coeff();
        let inv = lc.recip();
        RatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Canonical text with variables named `prefix1 .. prefixr`.
    pub fn to_string_with(&self, prefix: &str) -> String {
        let num = self.num.to_string_with(prefix);
        if self.den.is_one() {
            return num;
        }
        let den = self.den.to_string_with(prefix);
        let num = if self.num.num_terms() > 1 {
            alloc::format!("({})", num)
        } else {
            num
        };
        if self.den.is_bare_power() {
            alloc::format!("{}/{}", num, den)
        } else {
            alloc::format!("{}/({})", num, den)
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_ratfun;
    use crate::exact::rat::{int, rat};
    use alloc::string::ToString;

    fn p(s: &str) -> RatFun {
        parse_ratfun(s, "x", 1).unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p("1/(x1+1)").shift(&[int(2)]), p("1/(x1+3)"));
        assert_eq!(p("x1").shift(&[int(0)]), p("x1"));
        assert_eq!(p("(x1+2)/(x1+1)").shift(&[int(-1)]), p("(x1+1)/x1"));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("1/(x1+1)").eval(&[int(3)]).unwrap(), rat(1, 4));
        assert_eq!(p("1/(x1+1)").eval(&[int(-1)]), Err(Error::PoleAtPoint));
        assert_eq!(p("(x1+2)/(x1+1)").eval(&[rat(1, 2)]).unwrap(), rat(5, 3));
    }

    #[test]
    fn canonical_text() {
        let one = RatFun::one(1);
        let r = one.sub(&p("1/(x1+1)").mul(&p("1/(x1+1)")));
        assert_eq!(r.to_string(), "(x1^2+2*x1)/(x1^2+2*x1+1)");
        assert_eq!(p("1/(x1+1)").reflect_rho().to_string(), "-1/x1");
        assert_eq!(p("(2*x1+4)/(2*x1+2)").to_string(), "(x1+2)/(x1+1)");
        assert_eq!(p("x1/(2*x1^2)").to_string(), "1/2/x1");
        assert_eq!(p("1/2/x1"), p("x1/(2*x1^2)"));
    }

    #[test]
    fn reflect_is_involution() {
        let f = p("(x1+2)/(x1^2-3*x1+1)");
        assert_eq!(f.reflect_rho().reflect_rho(), f);
    }
}
