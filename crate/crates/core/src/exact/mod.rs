//! Exact scalars: rationals, polynomials, rational functions, series.

pub mod parse;
pub mod poly;
pub mod rat;
pub mod ratfun;
pub mod scalar;
pub mod series;

pub use parse::parse_ratfun;
pub use poly::{Monomial, Poly};
pub use rat::{int, rat, rat_to_string, Rat};
pub use ratfun::RatFun;
pub use scalar::{DynField, Field, Numeric, Symbolic, Q};
pub use series::{ExpSeries, Prefactor};
