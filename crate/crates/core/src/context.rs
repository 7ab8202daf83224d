//! Computation context: root system, scalar field and memo tables.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::Zero;

use crate::cartan::RootSystem;
use crate::error::{Error, Result};
use crate::exact::rat::Rat;
use crate::exact::scalar::DynField;
use crate::intertwine::Intertwiner;
use crate::linalg::Mat;
use crate::verma::{build_verma, VermaSlice};

type MatKey = (&'static str, String, Vec<Rat>);

/// Holds the field of the dynamical parameter and caches everything that
/// depends on it. Matrix families are keyed by module names, which are
/// assumed to identify modules.
pub struct Context<F: DynField> {
    pub rs: RootSystem,
    pub k: F,
    vermas: RefCell<BTreeMap<Vec<Rat>, Rc<VermaSlice<F::E>>>>,
    phis: RefCell<BTreeMap<(String, usize, Vec<Rat>), Rc<Intertwiner<F::E>>>>,
    mats: RefCell<BTreeMap<MatKey, Rc<Mat<F::E>>>>,
}

impl<F: DynField> Context<F> {
    pub fn new(rs: RootSystem, k: F) -> Self {
        assert_eq!(rs.rank, k.rank(), "field and root system ranks differ");
        Context {
            rs,
            k,
            vermas: RefCell::new(BTreeMap::new()),
            phis: RefCell::new(BTreeMap::new()),
            mats: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn origin(&self) -> Vec<Rat> {
        alloc::vec![Rat::zero(); self.rs.rank]
    }

    /// `M_{λ+shift}` to at least height `depth`.
    pub fn verma(&self, shift: &[Rat], depth: usize) -> Result<Rc<VermaSlice<F::E>>> {
        if let Some(m) = self.vermas.borrow().get(shift) {
            if m.depth() >= depth {
                return Ok(m.clone());
            }
        }
        let m = Rc::new(build_verma(
            &self.k,
            &self.rs,
            shift.to_vec(),
            self.k.param(shift),
            depth,
        )?);
        self.vermas.borrow_mut().insert(shift.to_vec(), m.clone());
        Ok(m)
    }

    pub(crate) fn cached_phi(&self, key: &(String, usize, Vec<Rat>)) -> Option<Rc<Intertwiner<F::E>>> {
        self.phis.borrow().get(key).cloned()
    }

    pub(crate) fn store_phi(&self, key: (String, usize, Vec<Rat>), phi: Rc<Intertwiner<F::E>>) {
        self.phis.borrow_mut().insert(key, phi);
    }

    /// A matrix-valued function of the parameter, memoised per shift. In
    /// symbolic mode only the unshifted value is computed; shifts are
    /// substitutions.
    pub fn family(
        &self,
        kind: &'static str,
        key: &str,
        shift: &[Rat],
        compute: &dyn Fn(&[Rat]) -> Result<Mat<F::E>>,
    ) -> Result<Rc<Mat<F::E>>> {
        let mk: MatKey = (kind, key.into(), shift.to_vec());
        if let Some(m) = self.mats.borrow().get(&mk) {
            return Ok(m.clone());
        }
        let m = if self.k.is_symbolic() && shift.iter().any(|x| !x.is_zero()) {
            let base = self.family(kind, key, &self.origin(), compute)?;
            base.try_map(|e| {
                self.k
                    .translate(e, shift)
                    .ok_or_else(|| Error::Postcondition("translation unavailable".into()))
            })?
        } else {
            compute(shift)?
        };
        let m = Rc::new(m);
        self.mats.borrow_mut().insert(mk, m.clone());
        Ok(m)
    }
}

pub fn add_shift(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn int_shift(w: &[i64], sign: i64) -> Vec<Rat> {
    w.iter().map(|&x| Rat::from_integer((x * sign).into())).collect()
}
