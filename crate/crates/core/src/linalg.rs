//! Dense matrices over an exact field and Gaussian elimination.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::scalar::Field;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Mat {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<E> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Mat { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut E {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&E) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<T: Clone, X>(
        &self,
        f: impl Fn(&E) -> core::result::Result<T, X>,
    ) -> core::result::Result<Mat<T>, X> {
        let data = self.data.iter().map(f).collect::<core::result::Result<Vec<T>, X>>()?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Rows and columns selected by index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        let c = self.cols;
        self.data.iter().enumerate().map(move |(n, v)| (n / c, n % c, v))
    }
}

pub fn zeros<F: Field>(k: &F, rows: usize, cols: usize) -> Mat<F::E> {
    Mat::filled(rows, cols, k.zero())
}

pub fn identity<F: Field>(k: &F, n: usize) -> Mat<F::E> {
    Mat::from_fn(n, n, |i, j| if i == j { k.one() } else { k.zero() })
}

pub fn mul<F: Field>(k: &F, a: &Mat<F::E>, b: &Mat<F::E>) -> Mat<F::E> {
    assert_eq!(a.cols, b.rows, "shape mismatch in product");
    let mut out = zeros(k, a.rows, b.cols);
    for i in 0..a.rows {
        for l in 0..a.cols {
            let x = a.get(i, l);
            if k.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(l, j);
                if k.is_zero(y) {
                    continue;
                }
                let v = k.add(out.get(i, j), &k.mul(x, y));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn mul_vec<F: Field>(k: &F, a: &Mat<F::E>, v: &[F::E]) -> Vec<F::E> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            let mut acc = k.zero();
            for (x, y) in a.row(i).iter().zip(v) {
                if !k.is_zero(x) && !k.is_zero(y) {
                    acc = k.add(&acc, &k.mul(x, y));
                }
            }
            acc
        })
        .collect()
}

pub fn add<F: Field>(k: &F, a: &Mat<F::E>, b: &Mat<F::E>) -> Mat<F::E> {
    assert!(a.rows == b.rows && a.cols == b.cols, "shape mismatch in sum");
    Mat::from_fn(a.rows, a.cols, |i, j| k.add(a.get(i, j), b.get(i, j)))
}

pub fn sub<F: Field>(k: &F, a: &Mat<F::E>, b: &Mat<F::E>) -> Mat<F::E> {
    assert!(a.rows == b.rows && a.cols == b.cols, "shape mismatch in difference");
    Mat::from_fn(a.rows, a.cols, |i, j| k.sub(a.get(i, j), b.get(i, j)))
}

pub fn neg<F: Field>(k: &F, a: &Mat<F::E>) -> Mat<F::E> {
    a.map(|x| k.neg(x))
}

pub fn scale<F: Field>(k: &F, c: &F::E, a: &Mat<F::E>) -> Mat<F::E> {
    a.map(|x| k.mul(c, x))
}

pub fn is_zero<F: Field>(k: &F, a: &Mat<F::E>) -> bool {
    a.data.iter().all(|x| k.is_zero(x))
}

/// Kronecker product `a ⊗ b` (row index `i·b.rows + k`).
pub fn kron<F: Field>(k: &F, a: &Mat<F::E>, b: &Mat<F::E>) -> Mat<F::E> {
    Mat::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        let x = a.get(i / b.rows, j / b.cols);
        if k.is_zero(x) {
            return k.zero();
        }
        k.mul(x, b.get(i % b.rows, j % b.cols))
    })
}

/// Gauss–Jordan inverse.
pub fn inverse<F: Field>(k: &F, a: &Mat<F::E>) -> Result<Mat<F::E>> {
    assert_eq!(a.rows, a.cols, "inverse of a non-square matrix");
    let n = a.rows;
    let mut m: Vec<Vec<F::E>> = (0..n)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.extend((0..n).map(|j| if i == j { k.one() } else { k.zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !k.is_zero(&m[i][c])).ok_or(Error::SingularSystem)?;
        m.swap(c, p);
        let inv = k.inv(&m[c][c]).ok_or(Error::SingularSystem)?;
        let pivot_row: Vec<F::E> = m[c].iter().map(|x| k.mul(x, &inv)).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == c || k.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !k.is_zero(y) {
                    *x = k.sub(x, &k.mul(&f, y));
                }
            }
        }
        m[c] = pivot_row;
    }
    Ok(Mat::from_rows(m.into_iter().map(|r| r[n..].to_vec()).collect()))
}

/// Solves a (possibly overdetermined) sparse system with a unique solution.
///
/// Each equation is a list of `(unknown, coefficient)` pairs.
pub fn solve_unique<F: Field>(k: &F, eqs: &[Vec<(usize, F::E)>], rhs: &[F::E], n: usize) -> Result<Vec<F::E>> {
    let mut m: Vec<Vec<F::E>> = eqs
        .iter()
        .zip(rhs)
        .map(|(e, b)| {
            let mut r = vec![k.zero(); n + 1];
            for (j, v) in e {
                r[*j] = k.add(&r[*j], v);
            }
            r[n] = b.clone();
            r
        })
        .collect();
    let mut row = 0;
    for c in 0..n {
        let p = (row..m.len())
            .find(|&i| !k.is_zero(&m[i][c]))
            .ok_or(Error::SingularSystem)?;
        m.swap(row, p);
        let inv = k.inv(&m[row][c]).unwrap();
        let pivot_row: Vec<F::E> = m[row].iter().map(|x| k.mul(x, &inv)).collect();
        for (i, r) in m.iter_mut().enumerate() {
            if i == row || k.is_zero(&r[c]) {
                continue;
            }
            let f = r[c].clone();
            for (x, y) in r.iter_mut().zip(&pivot_row) {
                if !k.is_zero(y) {
                    *x = k.sub(x, &k.mul(&f, y));
                }
            }
        }
        m[row] = pivot_row;
        row += 1;
    }
    if m[row..].iter().any(|r| !k.is_zero(&r[n])) {
        return Err(Error::SingularSystem);
    }
    Ok(m[..n].iter().map(|r| r[n].clone()).collect())
}

/// Greedily grown set of linearly independent vectors, able to express
/// vectors of its span in terms of the accepted ones.
pub struct IncrementalBasis<F: Field> {
    k: F,
    /// Echelon rows: (pivot column, reduced vector, combination of accepted vectors).
    rows: Vec<(usize, Vec<F::E>, Vec<F::E>)>,
    accepted: usize,
}

impl<F: Field> IncrementalBasis<F> {
    pub fn new(k: F) -> Self {
        IncrementalBasis {
            k,
            rows: Vec::new(),
            accepted: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.accepted
    }

    pub fn is_empty(&self) -> bool {
        self.accepted == 0
    }

    /// Reduces `v` against the echelon rows; returns the residual and the
    /// coefficients `c` with `v = Σ c_t row_t + residual`.
    fn reduce(&self, v: &[F::E]) -> (Vec<F::E>, Vec<F::E>) {
        let k = &self.k;
        let mut r = v.to_vec();
        let mut coef = vec![k.zero(); self.rows.len()];
        for (t, (p, row, _)) in self.rows.iter().enumerate() {
            if k.is_zero(&r[*p]) {
                continue;
            }
            let f = r[*p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !k.is_zero(y) {
                    *x = k.sub(x, &k.mul(&f, y));
                }
            }
            coef[t] = f;
        }
        (r, coef)
    }

    /// Accepts `v` when it is independent of the accepted vectors.
    pub fn try_add(&mut self, v: &[F::E]) -> bool {
        let (r, coef) = self.reduce(v);
        let Some(p) = r.iter().position(|x| !self.k.is_zero(x)) else {
            return false;
        };
        let k = &self.k;
        let inv = k.inv(&r[p]).unwrap();
        let row: Vec<F::E> = r.iter().map(|x| k.mul(x, &inv)).collect();
        // residual = v - Σ coef_t row_t, expressed through accepted vectors
        let mut comb = vec![k.zero(); self.accepted + 1];
        comb[self.accepted] = k.one();
        for (t, c) in coef.iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            for (x, y) in comb.iter_mut().zip(&self.rows[t].2) {
                *x = k.sub(x, &k.mul(c, y));
            }
        }
        let comb: Vec<F::E> = comb.iter().map(|x| k.mul(x, &inv)).collect();
        for (_, _, c) in &mut self.rows {
            c.push(k.zero());
        }
        self.rows.push((p, row, comb));
        self.accepted += 1;
        true
    }

    /// Coordinates of `v` in the accepted vectors, or `None` outside the span.
    pub fn coords(&self, v: &[F::E]) -> Option<Vec<F::E>> {
        let k = &self.k;
        let (r, coef) = self.reduce(v);
        if r.iter().any(|x| !k.is_zero(x)) {
            return None;
        }
        let mut out = vec![k.zero(); self.accepted];
        for (t, c) in coef.iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            for (x, y) in out.iter_mut().zip(&self.rows[t].2) {
                *x = k.add(x, &k.mul(c, y));
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{int, Rat};
    use crate::exact::scalar::Q;

    fn m(rows: &[&[i64]]) -> Mat<Rat> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let ai = inverse(&Q, &a).unwrap();
        assert_eq!(mul(&Q, &a, &ai), identity(&Q, 3));
        assert!(inverse(&Q, &m(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn overdetermined_solve() {
        // x + y = 3, x - y = 1, 2x = 4
        let eqs = vec![
            vec![(0, int(1)), (1, int(1))],
            vec![(0, int(1)), (1, int(-1))],
            vec![(0, int(2))],
        ];
        let x = solve_unique(&Q, &eqs, &[int(3), int(1), int(4)], 2).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        assert!(solve_unique(&Q, &eqs, &[int(3), int(1), int(5)], 2).is_err());
    }

    #[test]
    fn incremental_basis_coordinates() {
        let mut b = IncrementalBasis::new(Q);
        assert!(b.try_add(&[int(1), int(1), int(0)]));
        assert!(b.try_add(&[int(0), int(1), int(1)]));
        assert!(!b.try_add(&[int(1), int(2), int(1)]));
        assert_eq!(b.coords(&[int(2), int(3), int(1)]).unwrap(), vec![int(2), int(1)]);
        assert!(b.coords(&[int(0), int(0), int(1)]).is_none());
    }
}
