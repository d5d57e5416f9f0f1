//! Small dense square matrices, sized for 8x8 and below.

use alloc::vec;
use alloc::vec::Vec;

use crate::math;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    dim: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] += v;
    }

    /// Set the `(i, j)` entry and its antisymmetric partner in one go.
    pub fn set_skew(&mut self, i: usize, j: usize, v: f64) {
        self.set(i, j, v);
        self.set(j, i, -v);
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// `J * self * J^T` for a square transformation Jacobian `J`.
    pub fn congruence(&self, jac: &Mat) -> Mat {
        debug_assert_eq!(jac.dim, self.dim);
        let n = self.dim;
        Mat::from_fn(n, |a, b| {
            let mut acc = 0.0;
            for i in 0..n {
                if jac.get(a, i) == 0.0 {
                    continue;
                }
                for j in 0..n {
                    acc += jac.get(a, i) * self.get(i, j) * jac.get(b, j);
                }
            }
            acc
        })
    }

    /// Largest `|a_ij + a_ji|`; zero iff the matrix is antisymmetric.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max(math::abs(self.get(i, j) + self.get(j, i)));
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        math::max_abs(&self.data)
    }

    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        math::max_abs_diff(&self.data, &other.data)
    }

    /// Determinant by LU with partial pivoting.
    pub fn determinant(&self) -> f64 {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut pivot = col;
            for row in col + 1..n {
                if math::abs(a[row * n + col]) > math::abs(a[pivot * n + col]) {
                    pivot = row;
                }
            }
            if a[pivot * n + col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for k in 0..n {
                    a.swap(col * n + k, pivot * n + k);
                }
                det = -det;
            }
            det *= a[col * n + col];
            for row in col + 1..n {
                let factor = a[row * n + col] / a[col * n + col];
                for k in col..n {
                    a[row * n + k] -= factor * a[col * n + k];
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan with partial pivoting. Returns `None`
    /// when a pivot vanishes.
    pub fn inverse(&self) -> Option<Mat> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let mut pivot = col;
            for row in col + 1..n {
                if math::abs(a.get(row, col)) > math::abs(a.get(pivot, col)) {
                    pivot = row;
                }
            }
            if a.get(pivot, col) == 0.0 {
                return None;
            }
            if pivot != col {
                for k in 0..n {
                    let (x, y) = (a.get(col, k), a.get(pivot, k));
                    a.set(col, k, y);
                    a.set(pivot, k, x);
                    let (x, y) = (inv.get(col, k), inv.get(pivot, k));
                    inv.set(col, k, y);
                    inv.set(pivot, k, x);
                }
            }
            let d = a.get(col, col);
            for k in 0..n {
                a.set(col, k, a.get(col, k) / d);
                inv.set(col, k, inv.get(col, k) / d);
            }
            for row in 0..n {
                if row == col {
                    continue;
                }
                let factor = a.get(row, col);
                if factor == 0.0 {
                    continue;
                }
                for k in 0..n {
                    let v = a.get(row, k) - factor * a.get(col, k);
                    a.set(row, k, v);
                    let v = inv.get(row, k) - factor * inv.get(col, k);
                    inv.set(row, k, v);
                }
            }
        }
        Some(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_2x2_symplectic_block() {
        let mut c = Mat::zeros(2);
        c.set_skew(0, 1, -3.0);
        let inv = c.inverse().unwrap();
        assert_eq!(inv.get(0, 1), 1.0 / 3.0);
        assert_eq!(inv.get(1, 0), -1.0 / 3.0);
        assert_eq!(c.determinant(), 9.0);
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Mat::from_fn(3, |i, j| (i + j) as f64);
        assert!(m.inverse().is_none() || m.determinant().abs() < 1e-12);
    }

    #[test]
    fn congruence_with_identity_is_identity_map() {
        let p = Mat::from_fn(4, |i, j| (i as f64) - (j as f64));
        let id = Mat::identity(4);
        assert_eq!(p.congruence(&id), p);
    }
}
