//! Verification outcomes.

use alloc::string::String;
use alloc::vec::Vec;

use crate::block::TensorSpace;
use crate::exact::scalar::DynField;
use crate::linalg::Mat;

/// Largest number of mismatches recorded per identity.
pub const MAX_FAILURES: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Weight of the column basis vector.
    pub block: String,
    pub row: String,
    pub col: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub identity: String,
    pub operands: String,
    /// Number of entries (or coefficients) compared.
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl Verification {
    pub fn new(identity: &str, operands: &str) -> Self {
        Verification {
            identity: identity.into(),
            operands: operands.into(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn push(&mut self, f: Failure) {
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(f);
        }
    }

    /// Compares two operators on `space` entry by entry.
    pub fn compare<F: DynField>(&mut self, k: &F, space: &TensorSpace<'_>, lhs: &Mat<F::E>, rhs: &Mat<F::E>) {
        for j in 0..lhs.cols() {
            for i in 0..lhs.rows() {
                self.checked += 1;
                let (a, b) = (lhs.get(i, j), rhs.get(i, j));
                if a != b {
                    self.push(Failure {
                        block: weight_string(&space.weight(j)),
                        row: space.label(i),
                        col: space.label(j),
                        lhs: k.render(a),
                        rhs: k.render(b),
                    });
                }
            }
        }
    }
}

pub fn weight_string(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(|x| alloc::format!("{}", x)).collect();
    alloc::format!("({})", parts.join(","))
}
