//! Exact construction of Verma-module intertwiners, fusion and exchange
//! matrices, difference operators and trace functions for type A.
#![no_std]
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

extern crate alloc;

pub mod block;
pub mod cartan;
pub mod context;
pub mod diffop;
pub mod error;
pub mod exact;
pub mod exchange;
pub mod hw;
pub mod intertwine;
pub mod linalg;
pub mod repmod;
pub mod report;
pub mod trace;
pub mod verma;

pub use error::{Error, Result};
