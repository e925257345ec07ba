//! Dense matrices over any [`Real`], so the same formulas run on `f64` and on
//! dual numbers.

use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;

use super::dual::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..o.cols {
                    out[(i, j)] += a * o[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows).map(|i| (0..self.cols).fold(T::zero(), |s, j| s + self[(i, j)] * v[j])).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + o[(i, j)])
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * s)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |s, i| s + self[(i, i)])
    }

    /// LU with partial pivoting on the `f64` values; `None` if singular.
    fn lu(&self) -> Option<(Mat<T>, Vec<usize>, bool)> {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd = false;
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| a[(i, k)].value().abs().total_cmp(&a[(j, k)].value().abs()))?;
            if a[(p, k)].value().abs() < 1e-300 {
                return None;
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(p * n + j, k * n + j);
                }
                perm.swap(p, k);
                odd = !odd;
            }
            let inv = T::one() / a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] * inv;
                a[(i, k)] = f;
                for j in k + 1..n {
                    let v = a[(k, j)];
                    a[(i, j)] -= f * v;
                }
            }
        }
        Some((a, perm, odd))
    }

    pub fn det(&self) -> T {
        match self.lu() {
            None => T::zero(),
            Some((a, _, odd)) => {
                let d = (0..self.rows).fold(T::one(), |s, i| s * a[(i, i)]);
                if odd {
                    -d
                } else {
                    d
                }
            }
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        let (a, perm, _) = self.lu()?;
        let mut out = Self::zeros(n, n);
        for col in 0..n {
            // solve L U x = P e_col
            let mut x: Vec<T> = (0..n).map(|i| if perm[i] == col { T::one() } else { T::zero() }).collect();
            for i in 0..n {
                for k in 0..i {
                    let v = x[k];
                    x[i] -= a[(i, k)] * v;
                }
            }
            for i in (0..n).rev() {
                for k in i + 1..n {
                    let v = x[k];
                    x[i] -= a[(i, k)] * v;
                }
                x[i] = x[i] / a[(i, i)];
            }
            for i in 0..n {
                out[(i, col)] = x[i];
            }
        }
        Some(out)
    }

    pub fn map<U: Real>(&self, f: impl Fn(T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| f(*v)).collect() }
    }

    pub fn values(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].value())
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}
