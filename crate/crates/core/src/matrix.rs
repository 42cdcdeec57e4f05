//! Dense square matrices acting on blade-coefficient vectors.
//!
//! Storage is dense and row-major. Products skip zero entries, which keeps
//! exact arithmetic affordable: nearly every operator in the calculus is
//! sparse in the blade basis.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![S::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = S::one();
        }
        m
    }

    pub fn diagonal(entries: Vec<S>) -> Self {
        let dim = entries.len();
        let mut m = Self::zeros(dim);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * dim + i] = e;
        }
        m
    }

    /// Build from column vectors (`columns[j]` is the image of basis vector `j`).
    pub fn from_columns(columns: &[Vec<S>]) -> Self {
        let dim = columns.len();
        let mut m = Self::zeros(dim);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), dim, "column length must match matrix dimension");
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.data[i * dim + j] = v.clone();
                }
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: S) {
        self.data[row * self.dim + col] = value;
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &S) {
        self.data[row * self.dim + col].add_assign_ref(value);
    }

    pub fn column(&self, col: usize) -> Vec<S> {
        (0..self.dim).map(|i| self.get(i, col).clone()).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    /// Largest entry magnitude together with the entry achieving it.
    pub fn max_entry(&self) -> (f64, S) {
        let mut best = (0.0, S::zero());
        for v in &self.data {
            let m = v.magnitude();
            if m > best.0 {
                best = (m, v.clone());
            }
        }
        best
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.data.iter().all(|v| v.is_negligible(tol))
    }

    pub fn scale(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Self::zeros(self.dim);
        }
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .map(|v| {
                    if v.is_zero() {
                        S::zero()
                    } else {
                        v.mul_ref(factor)
                    }
                })
                .collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.data[j * self.dim + i] = v.conj();
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.data[j * self.dim + i] = v.clone();
                }
            }
        }
        out
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![S::zero(); self.dim];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self.data[i * self.dim + j];
                if !a.is_zero() {
                    o.add_assign_ref(&a.mul_ref(vj));
                }
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let dim = self.dim;
        let row_support: Vec<Vec<usize>> = (0..dim)
            .map(|k| {
                (0..dim)
                    .filter(|&j| !rhs.data[k * dim + j].is_zero())
                    .collect()
            })
            .collect();
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            for (k, support) in row_support.iter().enumerate() {
                let a = &self.data[i * dim + k];
                if a.is_zero() || support.is_empty() {
                    continue;
                }
                for &j in support {
                    let term = a.mul_ref(&rhs.data[k * dim + j]);
                    out.data[i * dim + j].add_assign_ref(&term);
                }
            }
        }
        out
    }

    fn zip(&self, rhs: &Matrix<S>, f: impl Fn(&S, &S) -> S) -> Matrix<S> {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.zip(rhs, |a, b| {
            let mut s = a.clone();
            s.add_assign_ref(b);
            s
        })
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.zip(rhs, |a, b| {
            if b.is_zero() {
                a.clone()
            } else {
                a.clone() - b.clone()
            }
        })
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.matmul(rhs)
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .map(|v| if v.is_zero() { S::zero() } else { -v.clone() })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    fn m(rows: &[&[i64]]) -> Matrix<Exact> {
        let dim = rows.len();
        let mut out = Matrix::zeros(dim);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                out.set(i, j, Exact::from_int(*v));
            }
        }
        out
    }

    #[test]
    fn matmul_matches_schoolbook() {
        let a = m(&[&[1, 2, 0], &[0, 0, 3], &[4, 0, 5]]);
        let b = m(&[&[0, 1, 0], &[2, 0, 0], &[0, 0, -1]]);
        let c = m(&[&[4, 1, 0], &[0, 0, -3], &[0, 4, -5]]);
        assert_eq!(a.matmul(&b), c);
    }

    #[test]
    fn adjoint_conjugates() {
        let mut a = Matrix::<Exact>::zeros(2);
        a.set(0, 1, Exact::i());
        let adj = a.adjoint();
        assert_eq!(adj.get(1, 0), &(-Exact::i()));
        assert_eq!(adj.adjoint(), a);
    }

    #[test]
    fn apply_is_matrix_vector_product() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let v = vec![Exact::from_int(1), Exact::from_int(-1)];
        assert_eq!(a.apply(&v), vec![Exact::from_int(-1), Exact::from_int(-1)]);
    }
}
