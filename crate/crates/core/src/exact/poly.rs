//! Sparse multivariate polynomials over `Rat`.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors ordered
//! graded-lexicographically, so the leading term is the last entry.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use super::rat::{rat_to_string, Rat};

/// Exponent vector, ordered graded-lexicographically (`x1 > x2 > ...`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), Rat::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if the polynomial has no variables (zero counts).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_arity(&self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable sets");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_arity(other);
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check_arity(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_arity(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rat) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars, "evaluation point arity");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `x_i ↦ scale_i·x_i + offset_i` for every variable.
    pub fn substitute_affine(&self, scale: &[Rat], offset: &[Rat]) -> Poly {
        let n = self.nvars;
        assert!(scale.len() == n && offset.len() == n);
        // powers[i][k] = (scale_i x_i + offset_i)^k, built lazily
        let mut powers: Vec<Vec<Poly>> = (0..n).map(|_| vec![Poly::one(n)]).collect();
        let lin: Vec<Poly> = (0..n)
            .map(|i| {
                Poly::var(n, i)
                    .scale(&scale[i])
                    .add(&Poly::constant(n, offset[i].clone()))
            })
            .collect();
        let mut out = Poly::zero(n);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(n, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&lin[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e]);
            }
            out = out.add(&t);
        }
        out
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    fn max_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.involves(v))
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Poly::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            let k = mm.0[var] as usize;
            mm.0[var] = 0;
            out[k].add_term(mm, c.clone());
        }
        out
    }

    fn lead_coeff_in(&self, var: usize) -> Poly {
        self.coeffs_in(var).pop().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        self.check_arity(d);
        assert!(!d.is_zero(), "division by zero polynomial");
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let tm = rm.div(&dm);
            let tc = rc / &dc;
            rem = rem.sub(&d.mul_term(&tm, &tc));
            quot.add_term(tm, tc);
        }
        Some(quot)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check_arity(other);
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one(self.nvars);
        }
        let v = match (self.max_var(), other.max_var()) {
            (Some(a), Some(b)) => a.max(b),
            _ => unreachable!("non-constant polynomials involve a variable"),
        };
        let univariate = (0..self.nvars)
            .filter(|&i| i != v)
            .all(|i| !self.involves(i) && !other.involves(i));
        if univariate {
            return euclid(self, other);
        }
        let ca = self.content_in(v);
        let cb = other.content_in(v);
        let gc = ca.gcd(&cb);
        let pa = self.div_exact(&ca).expect("content divides");
        let pb = other.div_exact(&cb).expect("content divides");
        let gp = if pa.degree_in(v) == 0 || pb.degree_in(v) == 0 {
            Poly::one(self.nvars)
        } else {
            primitive_prs(pa, pb, v)
        };
        gc.mul(&gp).monic()
    }

    /// Gcd of the coefficients in `var` (a polynomial free of `var`).
    fn content_in(&self, var: usize) -> Poly {
        let mut g = Poly::zero(self.nvars);
        for c in self.coeffs_in(var) {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(&c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_part_in(&self, var: usize) -> Poly {
        let c = self.content_in(var);
        self.div_exact(&c).expect("content divides")
    }
}

/// Euclid over `Q[v]` with monic normalisation at every step.
fn euclid(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.monic(), b.monic());
    if a.total_degree() < b.total_degree() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = rem_univariate(&a, &b);
        a = b;
        b = r.monic();
    }
    a.monic()
}

fn rem_univariate(a: &Poly, b: &Poly) -> Poly {
    let (bm, bc) = b.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let mut r = a.clone();
    while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
        if !bm.divides(&rm) {
            break;
        }
        let tm = rm.div(&bm);
        let tc = rc / &bc;
        r = r.sub(&b.mul_term(&tm, &tc));
    }
    r
}

fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let lb = b.lead_coeff_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.lead_coeff_in(v);
        let mut shift = Monomial::one(a.nvars);
        shift.0[v] = dr - db;
        r = r.mul(&lb).sub(&b.mul(&lr).mul_term(&shift, &Rat::one()));
    }
    r
}

fn primitive_prs(mut a: Poly, mut b: Poly, v: usize) -> Poly {
    if a.degree_in(v) < b.degree_in(v) {
        core::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return b.primitive_part_in(v);
        }
        if r.degree_in(v) == 0 {
            return Poly::one(a.nvars);
        }
        a = b;
        b = r.primitive_part_in(v);
    }
}

impl Poly {
    /// Canonical text: terms in descending graded-lex order, `*` between
    /// coefficient and variables, `^` for powers.
    pub fn to_string_with(&self, prefix: &str) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let term = format_term(m, c, prefix);
            if k > 0 && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }

    /// True when the polynomial is a single variable power with coefficient 1.
    pub(crate) fn is_bare_power(&self) -> bool {
        if self.terms.len() != 1 {
            return false;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        c.is_one() && m.0.iter().filter(|&&e| e > 0).count() == 1
    }
}

fn format_term(m: &Monomial, c: &Rat, prefix: &str) -> String {
    use core::fmt::Write;
    let mut vars = String::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !vars.is_empty() {
            vars.push('*');
        }
        let _ = write!(vars, "{}{}", prefix, i + 1);
        if e > 1 {
            let _ = write!(vars, "^{}", e);
        }
    }
    if vars.is_empty() {
        return rat_to_string(c);
    }
    if c.is_one() {
        vars
    } else if (-c).is_one() {
        alloc::format!("-{}", vars)
    } else {
        alloc::format!("{}*{}", rat_to_string(c), vars)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::int;
    use alloc::string::ToString;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn c(n: usize, v: i64) -> Poly {
        Poly::constant(n, int(v))
    }

    #[test]
    fn grlex_order_puts_higher_degree_last() {
        let p = x(2, 0).mul(&x(2, 0)).add(&x(2, 1)).add(&c(2, 1));
        assert_eq!(p.leading().unwrap().0, &Monomial(vec![2, 0]));
        assert_eq!(p.to_string(), "x1^2+x2+1");
    }

    #[test]
    fn univariate_gcd() {
        // (x+1)(x+2) and (x+1)(x-3)
        let a = x(1, 0).add(&c(1, 1)).mul(&x(1, 0).add(&c(1, 2)));
        let b = x(1, 0).add(&c(1, 1)).mul(&x(1, 0).sub(&c(1, 3)));
        assert_eq!(a.gcd(&b), x(1, 0).add(&c(1, 1)));
        assert!(a.gcd(&c(1, 5)).is_one());
    }

    #[test]
    fn bivariate_gcd() {
        // g = x1*x2 + 2, a = g*(x1 - x2), b = g*(x1 + 3)
        let g = x(2, 0).mul(&x(2, 1)).add(&c(2, 2));
        let a = g.mul(&x(2, 0).sub(&x(2, 1)));
        let b = g.mul(&x(2, 0).add(&c(2, 3)));
        assert_eq!(a.gcd(&b), g.monic());
        let h = x(2, 1).add(&c(2, 1));
        assert_eq!(a.mul(&h).gcd(&b.mul(&h)), g.mul(&h).monic());
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = x(1, 0).mul(&x(1, 0)).sub(&c(1, 1));
        let d = x(1, 0).sub(&c(1, 1));
        assert_eq!(a.div_exact(&d).unwrap(), x(1, 0).add(&c(1, 1)));
        assert!(a.div_exact(&x(1, 0)).is_none());
    }

    #[test]
    fn affine_substitution() {
        // (x+1)^2 with x -> x+2 is (x+3)^2
        let p = x(1, 0).add(&c(1, 1)).pow(2);
        let q = p.substitute_affine(&[int(1)], &[int(2)]);
        assert_eq!(q, x(1, 0).add(&c(1, 3)).pow(2));
    }
}
