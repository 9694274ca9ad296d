//! Small dense complex matrices.

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex;

use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex::new(T::zero(), T::zero()); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Builds from rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn from_2x2(m: [[Complex<T>; 2]; 2]) -> Self {
        Self::from_rows(&[m[0].to_vec(), m[1].to_vec()])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conj(&self) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.conj()).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut k = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for r in 0..other.rows {
                    for c in 0..other.cols {
                        k[(i * other.rows + r, j * other.cols + c)] = a * other[(r, c)];
                    }
                }
            }
        }
        k
    }

    /// First `k` columns.
    pub fn leading_columns(&self, k: usize) -> Self {
        let mut m = Self::zeros(self.rows, k);
        for i in 0..self.rows {
            for j in 0..k {
                m[(i, j)] = self[(i, j)];
            }
        }
        m
    }

    /// Columns of the inputs placed side by side.
    pub fn hstack(blocks: &[Self]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    m[(i, off + j)] = b[(i, j)];
                }
            }
            off += b.cols;
        }
        m
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn det(&self) -> Complex<T> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Complex::new(T::one(), T::zero());
        for k in 0..n {
            let piv = (k..n)
                .max_by(|&i, &j| a[i * n + k].norm().partial_cmp(&a[j * n + k].norm()).unwrap_or(std::cmp::Ordering::Equal))
                .unwrap_or(k);
            if a[piv * n + k].norm() == T::zero() {
                return Complex::new(T::zero(), T::zero());
            }
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                }
                det = -det;
            }
            let d = a[k * n + k];
            det = det * d;
            for i in k + 1..n {
                let factor = a[i * n + k] / d;
                for j in k..n {
                    let v = a[k * n + j];
                    a[i * n + j] = a[i * n + j] - factor * v;
                }
            }
        }
        det
    }

    /// Inverse of a 2×2 matrix.
    pub fn inverse_2x2(&self) -> Option<Self> {
        assert!(self.rows == 2 && self.cols == 2);
        let d = self.det();
        if d.norm() == T::zero() {
            return None;
        }
        let (a, b, c, e) = (self[(0, 0)], self[(0, 1)], self[(1, 0)], self[(1, 1)]);
        Some(Self::from_2x2([[e / d, -b / d], [-c / d, a / d]]))
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let piv = (k..n).max_by(|&i, &j| {
                a[(i, k)].norm().partial_cmp(&a[(j, k)].norm()).unwrap_or(std::cmp::Ordering::Equal)
            })?;
            if a[(piv, k)].norm() == T::zero() {
                return None;
            }
            for j in 0..n {
                a.data.swap(k * n + j, piv * n + j);
                inv.data.swap(k * n + j, piv * n + j);
            }
            let d = a[(k, k)];
            for j in 0..n {
                a[(k, j)] = a[(k, j)] / d;
                inv[(k, j)] = inv[(k, j)] / d;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = a[(i, k)];
                for j in 0..n {
                    let (x, y) = (a[(k, j)], inv[(k, j)]);
                    a[(i, j)] = a[(i, j)] - factor * x;
                    inv[(i, j)] = inv[(i, j)] - factor * y;
                }
            }
        }
        Some(inv)
    }

    /// Coefficients `c₀..cₙ` of `det(x·I − A) = Σ cₖ xᵏ` (Faddeev-LeVerrier).
    pub fn char_poly(&self) -> Vec<Complex<T>> {
        assert_eq!(self.rows, self.cols, "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); n + 1];
        coeffs[n] = Complex::new(T::one(), T::zero());
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                next[(i, i)] = next[(i, i)] + coeffs[n - k + 1];
            }
            m = next;
            let am = self * &m;
            let kk = T::from_usize(k).expect("small integer");
            coeffs[n - k] = -am.trace() / kk;
        }
        coeffs
    }

    /// Block diagonal matrix with `self` then `other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).fold(Complex::new(T::zero(), T::zero()), |acc, i| acc + self[(i, i)])
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data.iter().zip(&other.data).fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut m = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..rhs.cols {
                    m[(i, j)] = m[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        m
    }
}
