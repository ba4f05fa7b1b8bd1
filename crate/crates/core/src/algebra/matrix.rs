use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::scalar::Scalar;
use super::AlgebraError;

/// Dense matrix of polynomials over a common dimension, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    dim: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn from_entries(rows: usize, cols: usize, dim: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count does not match shape"
        );
        assert!(
            entries.iter().all(|p| p.dim() == dim),
            "entry dimension mismatch"
        );
        PolyMatrix {
            rows,
            cols,
            dim,
            entries,
        }
    }

    /// Builds a matrix from nested rows, checking the shape.
    pub fn from_rows(dim: usize, rows: Vec<Vec<Poly>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch("ragged matrix rows".into()));
        }
        let entries: Vec<Poly> = rows.into_iter().flatten().collect();
        if entries.iter().any(|p| p.dim() != dim) {
            return Err(AlgebraError::DimensionMismatch(
                "matrix entries have different dimensions".into(),
            ));
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            dim,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize, dim: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            dim,
            entries: vec![Poly::zero(dim); rows * cols],
        }
    }

    pub fn identity(n: usize, dim: usize) -> Self {
        let mut m = Self::zero(n, n, dim);
        for i in 0..n {
            m.entries[i * n + i] = Poly::one(dim);
        }
        m
    }

    /// Embeds a constant matrix.
    pub fn from_const(c: &ConstSymMatrix, dim: usize) -> Self {
        let n = c.size();
        let entries = (0..n * n)
            .map(|k| Poly::constant(dim, c.get(k / n, k % n).clone()))
            .collect();
        PolyMatrix {
            rows: n,
            cols: n,
            dim,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert_eq!(p.dim(), self.dim);
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            dim: self.dim,
            entries,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn scale(&self, c: &Scalar) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            dim: self.dim,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.cols != rhs.rows || self.dim != rhs.dim {
            return Err(AlgebraError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = PolyMatrix::zero(self.rows, rhs.cols, self.dim);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `AB - BA`.
    pub fn commutator(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        let ab = self.try_mul(rhs)?;
        let ba = rhs.try_mul(self)?;
        Ok(&ab - &ba)
    }

    /// Left multiplication by a constant matrix.
    pub fn const_left_mul(c: &ConstSymMatrix, m: &PolyMatrix) -> PolyMatrix {
        assert_eq!(c.size(), m.rows, "constant factor does not match");
        let mut out = PolyMatrix::zero(m.rows, m.cols, m.dim);
        for i in 0..m.rows {
            for k in 0..m.rows {
                let a = c.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    out.entries[i * m.cols + j] += &m.get(k, j).scale(a);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero(self.dim);
                for (j, vj) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !vj.is_zero() {
                        acc += &(a * vj);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    fn zip_with(&self, rhs: &PolyMatrix, f: impl Fn(&Poly, &Poly) -> Poly) -> PolyMatrix {
        assert_eq!(
            (self.rows, self.cols, self.dim),
            (rhs.rows, rhs.cols, rhs.dim),
            "shape mismatch"
        );
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl<'a> Add<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &'a PolyMatrix) -> PolyMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &'a PolyMatrix) -> PolyMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;
    /// Panics on a shape mismatch; use [`PolyMatrix::try_mul`] to recover.
    fn mul(self, rhs: &'a PolyMatrix) -> PolyMatrix {
        self.try_mul(rhs).expect("matrix shape mismatch")
    }
}

/// Nondegenerate symmetric matrix of rational constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstSymMatrix {
    size: usize,
    entries: Vec<Scalar>,
}

impl ConstSymMatrix {
    /// Validates symmetry and nondegeneracy. The empty matrix is accepted (its
    /// determinant is the empty product).
    pub fn new(rows: Vec<Vec<Scalar>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::DimensionMismatch(
                "matrix is not square".into(),
            ));
        }
        let entries: Vec<Scalar> = rows.into_iter().flatten().collect();
        for i in 0..n {
            for j in i + 1..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(AlgebraError::NotSymmetric { i, j });
                }
            }
        }
        let m = ConstSymMatrix { size: n, entries };
        if m.determinant().is_zero() {
            return Err(AlgebraError::Singular);
        }
        Ok(m)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, AlgebraError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Scalar::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Scalar::one();
        }
        ConstSymMatrix { size: n, entries }
    }

    /// The `n x n` antidiagonal matrix with unit entries.
    pub fn antidiagonal(n: usize) -> Self {
        let mut entries = vec![Scalar::zero(); n * n];
        for i in 0..n {
            entries[i * n + (n - 1 - i)] = Scalar::one();
        }
        ConstSymMatrix { size: n, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries
            .chunks(self.size.max(1))
            .take(self.size)
            .map(<[Scalar]>::to_vec)
            .collect()
    }

    /// Determinant by Bareiss fraction-free elimination on the matrix scaled
    /// to integer entries.
    pub fn determinant(&self) -> Scalar {
        let n = self.size;
        if n == 0 {
            return Scalar::one();
        }
        let lcm = self
            .entries
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, c| {
                num_integer::lcm(acc, c.denom().clone())
            });
        let mut a: Vec<num_bigint::BigInt> = self
            .entries
            .iter()
            .map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut sign = 1i32;
        let mut prev = num_bigint::BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return Scalar::zero();
                };
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
                a[i * n + k] = num_bigint::BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        let det_scaled = Scalar::from_integer(a[n * n - 1].clone() * sign);
        det_scaled / Scalar::from_integer(num_traits::pow(lcm, n))
    }

    /// Exact inverse by Gauss-Jordan elimination. The inverse of a symmetric
    /// matrix is symmetric, so the result keeps the type.
    pub fn inverse(&self) -> ConstSymMatrix {
        let n = self.size;
        let w = 2 * n;
        let mut a = vec![Scalar::zero(); n * w];
        for i in 0..n {
            for j in 0..n {
                a[i * w + j] = self.get(i, j).clone();
            }
            a[i * w + n + i] = Scalar::one();
        }
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r * w + col].is_zero())
                .expect("nondegenerate by construction");
            if pivot != col {
                for c in 0..w {
                    a.swap(pivot * w + c, col * w + c);
                }
            }
            let inv = Scalar::one() / &a[col * w + col];
            for c in 0..w {
                a[col * w + c] = &a[col * w + c] * &inv;
            }
            for r in 0..n {
                if r == col || a[r * w + col].is_zero() {
                    continue;
                }
                let factor = a[r * w + col].clone();
                for c in 0..w {
                    let v = &a[r * w + c] - &factor * &a[col * w + c];
                    a[r * w + c] = v;
                }
            }
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(a[i * w + n + j].clone());
            }
        }
        ConstSymMatrix { size: n, entries }
    }
}

/// Dense tensor of polynomials with an arbitrary shape (row-major).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyTensor {
    shape: Vec<usize>,
    data: Vec<Poly>,
}

impl PolyTensor {
    pub fn zeros(shape: &[usize], dim: usize) -> Self {
        let len = shape.iter().product();
        PolyTensor {
            shape: shape.to_vec(),
            data: vec![Poly::zero(dim); len],
        }
    }

    /// Fills a tensor by evaluating `f` at every index tuple.
    pub fn from_fn(shape: &[usize], mut f: impl FnMut(&[usize]) -> Poly) -> Self {
        let len: usize = shape.iter().product();
        let mut data = Vec::with_capacity(len);
        let mut idx = vec![0; shape.len()];
        for _ in 0..len {
            data.push(f(&idx));
            for axis in (0..shape.len()).rev() {
                idx[axis] += 1;
                if idx[axis] < shape[axis] {
                    break;
                }
                idx[axis] = 0;
            }
        }
        PolyTensor {
            shape: shape.to_vec(),
            data,
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.shape.len(), "tensor rank mismatch");
        idx.iter().zip(&self.shape).fold(0, |acc, (&i, &s)| {
            assert!(i < s, "tensor index out of range");
            acc * s + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &Poly {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], p: Poly) {
        let o = self.offset(idx);
        self.data[o] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    /// Index tuples and values of the nonzero entries, in index order.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, &Poly)> {
        let mut out = Vec::new();
        for (k, p) in self.data.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let mut idx = vec![0; self.shape.len()];
            let mut rem = k;
            for axis in (0..self.shape.len()).rev() {
                idx[axis] = rem % self.shape[axis];
                rem /= self.shape[axis];
            }
            out.push((idx, p));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, ratio};

    fn u(dim: usize, i: usize) -> Poly {
        Poly::var(dim, i)
    }

    #[test]
    fn commutator_basics() {
        let a = PolyMatrix::from_rows(
            2,
            vec![vec![u(2, 0), u(2, 1)], vec![Poly::one(2), u(2, 0).pow(2)]],
        )
        .unwrap();
        assert!(a.commutator(&a).unwrap().is_zero());
        assert!(PolyMatrix::identity(2, 2).commutator(&a).unwrap().is_zero());
        let b = a.transpose();
        assert!(!a.commutator(&b).unwrap().is_zero());
        assert_eq!(
            a.commutator(&b).unwrap(),
            b.commutator(&a).unwrap().scale(&int(-1))
        );
    }

    #[test]
    fn dimension_mismatch() {
        let a = PolyMatrix::zero(2, 3, 1);
        assert!(matches!(
            a.try_mul(&a),
            Err(AlgebraError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn const_sym_checks() {
        assert_eq!(
            ConstSymMatrix::from_ints(&[&[1, 2], &[3, 4]]),
            Err(AlgebraError::NotSymmetric { i: 0, j: 1 })
        );
        assert_eq!(
            ConstSymMatrix::from_ints(&[&[1, 2], &[2, 4]]),
            Err(AlgebraError::Singular)
        );
        let eta = ConstSymMatrix::antidiagonal(3);
        assert_eq!(eta.determinant(), int(-1));
        assert_eq!(eta.inverse(), eta);
    }

    #[test]
    fn determinant_and_inverse_rational() {
        let m = ConstSymMatrix::new(vec![
            vec![ratio(1, 2), ratio(1, 3), int(0)],
            vec![ratio(1, 3), int(2), int(-1)],
            vec![int(0), int(-1), ratio(5, 7)],
        ])
        .unwrap();
        // cofactor expansion by hand: 1/2*(10/7 - 1) - 1/3*(5/21)
        let want = ratio(1, 2) * (ratio(10, 7) - int(1)) - ratio(1, 3) * ratio(5, 21);
        assert_eq!(m.determinant(), want);
        let inv = m.inverse();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = int(0);
                for k in 0..3 {
                    acc += m.get(i, k) * inv.get(k, j);
                }
                assert_eq!(acc, if i == j { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn det_needs_pivoting() {
        let m = ConstSymMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]).unwrap();
        assert_eq!(m.determinant(), int(-3));
    }

    #[test]
    fn tensor_indexing() {
        let t = PolyTensor::from_fn(&[2, 3], |idx| {
            Poly::constant(1, int((idx[0] * 10 + idx[1]) as i64))
        });
        assert_eq!(t.get(&[1, 2]).as_constant(), Some(int(12)));
        let nz = t.nonzero();
        assert_eq!(nz.len(), 5);
        assert_eq!(nz[0].0, vec![0, 1]);
        assert_eq!(nz[4].0, vec![1, 2]);
    }
}
