//! Principal logarithm, dilogarithm, Bloch-Wigner function and the extended
//! Rogers dilogarithm, with values compared modulo 4π²ℤ or π²ℤ.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{int, lit, Real};

/// `B_{2k}/(2k+1)!` for k = 1..=22.
#[allow(clippy::excessive_precision)]
const BERNOULLI_OVER_FACTORIAL: [f64; 22] = [
    2.7777777777777778e-2,
    -2.7777777777777778e-4,
    4.7241118669690098e-6,
    -9.1857730746619636e-8,
    1.8978869988970999e-9,
    -4.0647616451442255e-11,
    8.9216910204564526e-13,
    -1.9939295860721076e-14,
    4.5189800296199182e-16,
    -1.0356517612181247e-17,
    2.3952186210261867e-19,
    -5.5817858743250093e-21,
    1.3091507554183213e-22,
    -3.0874198024267403e-24,
    7.3159756527022034e-26,
    -1.7408456572340007e-27,
    4.1576356446138997e-29,
    -9.9621484882846221e-31,
    2.3940344248961653e-32,
    -5.7683473553673901e-34,
    1.393179479647008e-35,
    -3.3721219654850895e-37,
];

/// Principal logarithm with imaginary part in (−π, π].
///
/// Points on the negative real axis map to `+iπ` regardless of the sign of
/// a zero imaginary part.
pub fn plog<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if z.re == T::zero() && z.im == T::zero() {
        return Err(Error::Domain("logarithm of zero".into()));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain("logarithm of a non-finite value".into()));
    }
    let mut w = z.ln();
    if (z.im == T::zero() && z.re < T::zero()) || w.im <= -T::PI() {
        w.im = T::PI();
    }
    Ok(w)
}

/// Principal logarithm for arguments already known to be nonzero.
pub(crate) fn log_nz<T: Real>(z: Complex<T>) -> Complex<T> {
    plog(z).expect("nonzero argument")
}

fn li2_series<T: Real>(z: Complex<T>) -> Complex<T> {
    let eps = T::epsilon();
    let mut sum = Complex::new(T::zero(), T::zero());
    let mut pow = z;
    for k in 1..400 {
        let kk = int::<T>(k);
        let term = pow / (kk * kk);
        sum = sum + term;
        if term.norm() <= eps * sum.norm() {
            break;
        }
        pow = pow * z;
    }
    sum
}

/// Series in `u = −log(1−z)`; converges quickly for |u| well below 2π.
fn li2_bernoulli<T: Real>(z: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let u = -log_nz(one - z);
    let u2 = u * u;
    let mut sum = u - u2 * lit::<T>(0.25);
    let mut pow = u;
    let eps = T::epsilon();
    for &b in BERNOULLI_OVER_FACTORIAL.iter() {
        pow = pow * u2;
        let term = pow * lit::<T>(b);
        sum = sum + term;
        if term.norm() <= eps * sum.norm() {
            break;
        }
    }
    sum
}

fn li2_unit_disk<T: Real>(z: Complex<T>) -> Complex<T> {
    let half = lit::<T>(0.5);
    if z.norm() <= half {
        li2_series(z)
    } else {
        li2_bernoulli(z)
    }
}

/// Classical dilogarithm Li₂.
///
/// On the cut `[1, ∞)` the value is the limit from the lower half-plane,
/// matching `plog(1−z)` there.
pub fn li2<T: Real>(z: Complex<T>) -> Complex<T> {
    let zero = T::zero();
    let one = Complex::new(T::one(), zero);
    let pi2_6 = T::PI() * T::PI() / int::<T>(6);
    if z.re == zero && z.im == zero {
        return Complex::new(zero, zero);
    }
    if z == one {
        return Complex::new(pi2_6, zero);
    }
    let r = z.norm();
    let half = lit::<T>(0.5);
    if r <= T::one() {
        if z.re <= half {
            li2_unit_disk(z)
        } else {
            // Li₂(z) = π²/6 − log z·log(1−z) − Li₂(1−z)
            let w = one - z;
            Complex::new(pi2_6, zero) - log_nz(z) * log_nz(w) - li2_unit_disk(w)
        }
    } else {
        // Li₂(z) = −π²/6 − ½log²(−z) − Li₂(1/z)
        let l = log_nz(-z);
        let inv = li2(one / z);
        Complex::new(-pi2_6, zero) - l * l * half - inv
    }
}

/// Bloch-Wigner dilogarithm `D₂(z) = Im Li₂(z) + arg(1−z)·ln|z|`.
pub fn bloch_wigner<T: Real>(z: Complex<T>) -> Result<T> {
    let one = Complex::new(T::one(), T::zero());
    if z.norm() == T::zero() || z == one {
        return Err(Error::Domain("Bloch-Wigner function undefined at 0 and 1".into()));
    }
    let a = log_nz(one - z).im;
    Ok(li2(z).im + a * z.norm().ln())
}

/// The lattice a Rogers value is defined modulo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Lattice {
    /// 4π²ℤ: the extended pre-Bloch group.
    FourPiSquared,
    /// π²ℤ: the PSL variant.
    PiSquared,
}

impl Lattice {
    pub fn modulus<T: Real>(self) -> T {
        let pi2 = T::PI() * T::PI();
        match self {
            Lattice::FourPiSquared => pi2 * int::<T>(4),
            Lattice::PiSquared => pi2,
        }
    }

    /// Label used in reports.
    pub fn label(self) -> &'static str {
        match self {
            Lattice::FourPiSquared => "4pi2",
            Lattice::PiSquared => "pi2",
        }
    }

    /// The coarser of two lattices.
    pub fn coarser(self, other: Lattice) -> Lattice {
        if self == Lattice::PiSquared || other == Lattice::PiSquared {
            Lattice::PiSquared
        } else {
            Lattice::FourPiSquared
        }
    }
}

/// A complex number whose real part is only defined modulo a lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModLatticeValue<T> {
    pub value: Complex<T>,
    pub lattice: Lattice,
}

impl<T: Real> ModLatticeValue<T> {
    pub fn new(value: Complex<T>, lattice: Lattice) -> Self {
        ModLatticeValue { value, lattice }
    }

    pub fn zero(lattice: Lattice) -> Self {
        ModLatticeValue::new(Complex::new(T::zero(), T::zero()), lattice)
    }

    pub fn modulus(&self) -> T {
        self.lattice.modulus()
    }

    /// Same value regarded modulo a coarser lattice.
    pub fn coarsen(self, lattice: Lattice) -> Self {
        ModLatticeValue::new(self.value, self.lattice.coarser(lattice))
    }

    /// Representative with real part in `[0, modulus)`; values within
    /// `tol/2` of the modulus wrap to zero.
    pub fn reduced(&self, tol: T) -> Complex<T> {
        let m = self.modulus();
        let mut r = self.value.re - m * (self.value.re / m).floor();
        if m - r < tol * lit::<T>(0.5) {
            r = r - m;
        }
        Complex::new(r, self.value.im)
    }

    /// Representative with real part in `(−modulus/2, modulus/2]`.
    pub fn centered(&self) -> Complex<T> {
        let m = self.modulus();
        let mut r = self.value.re - m * (self.value.re / m).round();
        if r <= -m * lit::<T>(0.5) {
            r = r + m;
        }
        Complex::new(r, self.value.im)
    }

    /// Distance to `other` in ℂ/Λ, Λ the coarser of the two lattices.
    pub fn residual(&self, other: &Self) -> T {
        let lattice = self.lattice.coarser(other.lattice);
        let d = ModLatticeValue::new(self.value - other.value, lattice);
        d.centered().norm()
    }

    /// Distance to zero in ℂ/Λ.
    pub fn residual_to_zero(&self) -> T {
        self.centered().norm()
    }

    pub fn eq_within(&self, other: &Self, tol: T) -> bool {
        self.residual(other) <= tol
    }
}

impl<T: Real> std::ops::Add for ModLatticeValue<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ModLatticeValue::new(self.value + rhs.value, self.lattice.coarser(rhs.lattice))
    }
}

impl<T: Real> std::ops::Sub for ModLatticeValue<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ModLatticeValue::new(self.value - rhs.value, self.lattice.coarser(rhs.lattice))
    }
}

/// `Li₂(z) + ½(log z + Pπi)(log(1−z) − Qπi) − π²/6` for integers P, Q
/// counting half-turns.
///
/// With P = 2p and Q = 2q this is the extended Rogers dilogarithm of
/// `(log z + 2pπi, log(1−z) + 2qπi)`.
pub fn rogers_branch<T: Real>(z: Complex<T>, p_half: i64, q_half: i64) -> Result<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    if z.norm() == T::zero() || z == one {
        return Err(Error::Domain("Rogers dilogarithm undefined at z = 0, 1".into()));
    }
    let pi = T::PI();
    let a = log_nz(z) + Complex::new(T::zero(), pi * int::<T>(p_half));
    let b = log_nz(one - z) - Complex::new(T::zero(), pi * int::<T>(q_half));
    Ok(li2(z) + a * b * lit::<T>(0.5) - Complex::new(pi * pi / int::<T>(6), T::zero()))
}

/// Value of `R(χ(e))`, namely `−πi·e` modulo 4π².
pub fn rogers_of_chi<T: Real>(e: Complex<T>) -> ModLatticeValue<T> {
    let v = Complex::new(T::zero(), -T::PI()) * e;
    ModLatticeValue::new(v, Lattice::FourPiSquared)
}
