//! Symmetric powers of SL(2,ℂ), their Lie algebra images, invariant-polynomial
//! multipliers, the explicit maps τ and κ, and the table of volume and
//! Chern-Simons multipliers of 4-dimensional representations.

use std::fmt;

use num_complex::Complex;
use num_integer::binomial;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{lit, tol, Real};

/// Tolerance for `det A = 1`.
const DET_TOL: f64 = 1e-9;

fn check_sl2<T: Real>(a: &CMatrix<T>) -> Result<()> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::Domain("expected a 2x2 matrix".into()));
    }
    let d = a.det() - Complex::new(T::one(), T::zero());
    if d.norm() > tol::<T>(DET_TOL) {
        return Err(Error::Domain(format!("det A = 1 fails by {}", d.norm())));
    }
    Ok(())
}

/// Coefficients of `Π (uᵢ e₁ + vᵢ e₂)` in the basis `e₁^{m−j} e₂^j`.
fn poly_product<T: Real>(factors: &[(Complex<T>, Complex<T>)]) -> Vec<Complex<T>> {
    let mut coeffs = vec![Complex::new(T::one(), T::zero())];
    for &(u, v) in factors {
        let mut next = vec![Complex::new(T::zero(), T::zero()); coeffs.len() + 1];
        for (j, &c) in coeffs.iter().enumerate() {
            next[j] = next[j] + c * u;
            next[j + 1] = next[j + 1] + c * v;
        }
        coeffs = next;
    }
    coeffs
}

/// `ρₙ(A)`: the action on homogeneous polynomials of degree `n−1` in the
/// monomial basis `e₁^{n−1−k} e₂^k`.
pub fn sym_power<T: Real>(a: &CMatrix<T>, n: usize) -> Result<CMatrix<T>> {
    check_sl2(a)?;
    if n == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    let col0 = (a[(0, 0)], a[(1, 0)]);
    let col1 = (a[(0, 1)], a[(1, 1)]);
    let mut m = CMatrix::zeros(n, n);
    for k in 0..n {
        let mut factors = vec![col0; n - 1 - k];
        factors.extend(std::iter::repeat_n(col1, k));
        for (j, c) in poly_product(&factors).into_iter().enumerate() {
            m[(j, k)] = c;
        }
    }
    Ok(m)
}

/// Basis of 𝔰𝔩(2,ℂ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LieBasis {
    X,
    Y,
    H,
}

/// Square integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub n: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a != 0 {
                    for j in 0..n {
                        m.data[i * n + j] += a * other.get(k, j);
                    }
                }
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        IntMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.n, other.n);
        let mut k = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                for r in 0..m {
                    for c in 0..m {
                        k.set(i * m + r, j * m + c, self.get(i, j) * other.get(r, c));
                    }
                }
            }
        }
        k
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn is_strictly_upper(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| self.get(i, j) == 0))
    }

    pub fn is_strictly_lower(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| self.get(i, j) == 0))
    }

    pub fn to_complex<T: Real>(&self) -> CMatrix<T> {
        let mut m = CMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = Complex::new(lit::<T>(self.get(i, j) as f64), T::zero());
            }
        }
        m
    }
}

/// `πₙ(X)`, `πₙ(Y)`, `πₙ(H)` in the basis of [`sym_power`].
pub fn lie_image(which: LieBasis, n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n);
    let top = n as i64 - 1;
    for k in 0..n {
        let ki = k as i64;
        match which {
            LieBasis::X if k >= 1 => m.set(k - 1, k, ki),
            LieBasis::Y if k + 1 < n => m.set(k + 1, k, top - ki),
            LieBasis::H => m.set(k, k, top - 2 * ki),
            _ => {}
        }
    }
    m
}

/// `Tr(πₙ(H)²)`, which equals `2·C(n+1, 3)`.
pub fn trace_multiplier(n: usize) -> i64 {
    let h = lie_image(LieBasis::H, n);
    h.mul(&h).trace()
}

/// `Tr(πₙ(X)²)` and `Tr(πₙ(Y)²)`, both zero.
pub fn nilpotent_traces(n: usize) -> (i64, i64) {
    let x = lie_image(LieBasis::X, n);
    let y = lie_image(LieBasis::Y, n);
    (x.mul(&x).trace(), y.mul(&y).trace())
}

/// Coefficients `(α, β)` with `CCS(ρₙ⊗ρ̄ₘ) = α·CCS(ρ) + β·conj(CCS(ρ))`,
/// read off from `Tr((πₙ(H)⊗1ₘ)²)/2` and `Tr((1ₙ⊗πₘ(H))²)/2`. The cross
/// term `2·Tr(πₙ(H))·Tr(πₘ(H))` vanishes.
pub fn mixed_trace_multiplier(n: usize, m: usize) -> (i64, i64) {
    let hn = lie_image(LieBasis::H, n).kron(&IntMatrix::identity(m));
    let hm = IntMatrix::identity(n).kron(&lie_image(LieBasis::H, m));
    debug_assert_eq!(hn.mul(&hm).trace(), 0);
    (hn.mul(&hn).trace() / 2, hm.mul(&hm).trace() / 2)
}

/// `C(n+1, 3)`, the multiplier of ρₙ.
pub fn geometric_multiplier(n: usize) -> i64 {
    binomial(n as i64 + 1, 3)
}

/// τ: PSL(2,ℂ) → SO(3,1) as an explicit real 4×4 matrix: the action
/// `X ↦ A X A*` on Hermitian matrices `tI + xσ₁ + yσ₂ + zσ₃`.
pub fn tau<T: Real>(m: &CMatrix<T>) -> Result<CMatrix<T>> {
    check_sl2(m)?;
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let (ab, bb, cb, db) = (a.conj(), b.conj(), c.conj(), d.conj());
    let n2 = |x: Complex<T>| Complex::new(x.norm_sqr(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let rows = vec![
        vec![
            n2(a) + n2(b) + n2(c) + n2(d),
            ab * b + a * bb + cb * d + c * db,
            i * (ab * b - a * bb + cb * d - c * db),
            n2(a) - n2(b) + n2(c) - n2(d),
        ],
        vec![
            a * cb + ab * c + b * db + bb * d,
            a * db + ab * d + b * cb + bb * c,
            i * (ab * d + b * cb - a * db - bb * c),
            a * cb + ab * c - b * db - bb * d,
        ],
        vec![
            -i * (bb * d + ab * c - a * cb - b * db),
            -i * (ab * d + bb * c - a * db - b * cb),
            a * db + ab * d - b * cb - bb * c,
            -i * (ab * c + b * db - a * cb - bb * d),
        ],
        vec![
            n2(a) + n2(b) - n2(c) - n2(d),
            a * bb + ab * b - c * db - cb * d,
            i * (ab * b + c * db - a * bb - cb * d),
            n2(a) - n2(b) - n2(c) + n2(d),
        ],
    ];
    Ok(CMatrix::from_rows(&rows).scale(Complex::new(lit::<T>(0.5), T::zero())))
}

/// The form `diag(−1, 1, 1, 1)` preserved by τ, with the time coordinate first.
pub fn tau_minkowski_form<T: Real>() -> CMatrix<T> {
    let mut j = CMatrix::identity(4);
    j[(0, 0)] = Complex::new(-T::one(), T::zero());
    j
}

/// κ: SL(2,ℂ) → SL(4,ℝ), each entry `x₁ + x₂i` becoming `[[x₁, x₂], [−x₂, x₁]]`.
pub fn kappa<T: Real>(m: &CMatrix<T>) -> Result<CMatrix<T>> {
    check_sl2(m)?;
    let mut k = CMatrix::zeros(4, 4);
    for r in 0..2 {
        for c in 0..2 {
            let x = m[(r, c)];
            k[(2 * r, 2 * c)] = Complex::new(x.re, T::zero());
            k[(2 * r, 2 * c + 1)] = Complex::new(x.im, T::zero());
            k[(2 * r + 1, 2 * c)] = Complex::new(-x.im, T::zero());
            k[(2 * r + 1, 2 * c + 1)] = Complex::new(x.re, T::zero());
        }
    }
    Ok(k)
}

/// The matrix `M` with rows `(1,0,1,0), (i,0,−i,0), (0,1,0,1), (0,i,0,−i)`,
/// for which `M⁻¹·κ(A)·M = A ⊕ Ā`.
pub fn kappa_conjugator<T: Real>() -> CMatrix<T> {
    let o = Complex::new(T::one(), T::zero());
    let z = Complex::new(T::zero(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    CMatrix::from_rows(&[vec![o, z, o, z], vec![i, z, -i, z], vec![z, o, z, o], vec![z, i, z, -i]])
}

/// Representations of SL(2,ℂ) built from geometric ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepDescriptor {
    Rho(usize),
    Conj(Box<RepDescriptor>),
    DirSum(Box<RepDescriptor>, Box<RepDescriptor>),
    /// `ρₙ ⊗ ρ̄ₘ`
    TensorConjPair(usize, usize),
    Trivial(usize),
}

/// `α·CCS + β·conj(CCS)`; with `CCS = −CS + i·Vol` this has volume
/// multiplier `α − β` and Chern-Simons multiplier `α + β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CCSMultiplier {
    pub ccs: i64,
    pub conj_ccs: i64,
}

impl CCSMultiplier {
    pub fn vol_mult(&self) -> i64 {
        self.ccs - self.conj_ccs
    }

    pub fn cs_mult(&self) -> i64 {
        self.ccs + self.conj_ccs
    }
}

impl RepDescriptor {
    pub fn dim(&self) -> usize {
        match self {
            RepDescriptor::Rho(n) | RepDescriptor::Trivial(n) => *n,
            RepDescriptor::Conj(r) => r.dim(),
            RepDescriptor::DirSum(a, b) => a.dim() + b.dim(),
            RepDescriptor::TensorConjPair(n, m) => n * m,
        }
    }

    /// Multiplier from traces, additivity under direct sums, and conjugation.
    pub fn multiplier(&self) -> CCSMultiplier {
        match self {
            RepDescriptor::Rho(n) => CCSMultiplier { ccs: trace_multiplier(*n) / trace_multiplier(2), conj_ccs: 0 },
            RepDescriptor::Trivial(_) => CCSMultiplier { ccs: 0, conj_ccs: 0 },
            RepDescriptor::Conj(r) => {
                let m = r.multiplier();
                CCSMultiplier { ccs: m.conj_ccs, conj_ccs: m.ccs }
            }
            RepDescriptor::DirSum(a, b) => {
                let (x, y) = (a.multiplier(), b.multiplier());
                CCSMultiplier { ccs: x.ccs + y.ccs, conj_ccs: x.conj_ccs + y.conj_ccs }
            }
            RepDescriptor::TensorConjPair(n, m) => {
                let (a, b) = mixed_trace_multiplier(*n, *m);
                let unit = trace_multiplier(2) / 2;
                CCSMultiplier { ccs: a / unit, conj_ccs: b / unit }
            }
        }
    }

    pub fn conj(self) -> Self {
        RepDescriptor::Conj(Box::new(self))
    }

    pub fn plus(self, other: Self) -> Self {
        RepDescriptor::DirSum(Box::new(self), Box::new(other))
    }
}

impl fmt::Display for RepDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepDescriptor::Rho(n) => write!(f, "rho{n}"),
            RepDescriptor::Conj(r) => write!(f, "conj({r})"),
            RepDescriptor::DirSum(a, b) => write!(f, "{a}+{b}"),
            RepDescriptor::TensorConjPair(n, m) => write!(f, "rho{n}(x)conj(rho{m})"),
            RepDescriptor::Trivial(1) => write!(f, "1"),
            RepDescriptor::Trivial(k) => write!(f, "1^{k}"),
        }
    }
}

/// One row of the table of 4-dimensional representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepRow {
    pub rep: RepDescriptor,
    pub vol_mult: i64,
    pub cs_mult: i64,
}

/// The ten 4-dimensional representations `ρ∘ι`, with multipliers of
/// `Vol(M)` and `CS(M)`.
pub fn rep_table() -> Vec<RepRow> {
    use RepDescriptor::*;
    let one = || Trivial(1);
    let reps = vec![
        Rho(4),
        Rho(4).conj(),
        TensorConjPair(2, 2),
        Rho(3).plus(one()),
        Rho(3).conj().plus(one()),
        Rho(2).plus(Rho(2)),
        Rho(2).plus(Rho(2).conj()),
        Rho(2).plus(one()).plus(one()),
        Rho(2).conj().plus(one()).plus(one()),
        Trivial(4),
    ];
    reps.into_iter()
        .map(|rep| {
            let m = rep.multiplier();
            RepRow { vol_mult: m.vol_mult(), cs_mult: m.cs_mult(), rep }
        })
        .collect()
}

/// `CCS(M₂, ρ) = CCS(M₁, ρ∘f_*)/deg f` for a map `f: M₁ → M₂` of nonzero degree.
pub fn ccs_from_pullback<T: Real>(pulled_back: Complex<T>, degree: i64) -> Result<Complex<T>> {
    if degree == 0 {
        return Err(Error::Domain("degree must be nonzero".into()));
    }
    Ok(pulled_back / lit::<T>(degree as f64))
}
