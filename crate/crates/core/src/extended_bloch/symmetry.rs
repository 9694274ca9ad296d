//! Behaviour of the Rogers dilogarithm under the cross-ratio symmetries.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{chi_any, FlattenedShape, Flavor, PreBlochElement};
use crate::complex_kernel::plog;
use crate::error::{Error, Result};
use crate::scalar::{int, k_pi_i, lit, pi_i, Real};

/// Symmetries of a shape `(z, p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symmetry {
    /// `z ↦ 1/z`
    Inv,
    /// `z ↦ 1−z`
    Swap,
    /// `z ↦ 1/(1−z)`
    OneMinusInv,
    /// `z ↦ 1 − 1/z`
    SwapInv,
    /// `z ↦ −z/(1−z)`, for `Im z < 0`
    ConjVariant,
}

impl Symmetry {
    pub const ALL: [Symmetry; 5] =
        [Symmetry::Inv, Symmetry::Swap, Symmetry::OneMinusInv, Symmetry::SwapInv, Symmetry::ConjVariant];

    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Inv => "inv",
            Symmetry::Swap => "swap",
            Symmetry::OneMinusInv => "one_minus_inv",
            Symmetry::SwapInv => "swap_inv",
            Symmetry::ConjVariant => "conj_variant",
        }
    }
}

/// `R(shape) = sign·R(original) + R(χ(chi_argument))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryResult<T> {
    pub shape: FlattenedShape<T>,
    pub sign: i64,
    pub chi_argument: Complex<T>,
    pub correction: PreBlochElement<T>,
}

/// Transformed shape, sign and χ-correction for an SL shape with `Im z ≠ 0`.
pub fn apply_symmetry<T: Real>(shape: &FlattenedShape<T>, which: Symmetry) -> Result<SymmetryResult<T>> {
    if shape.flavor() != Flavor::Sl {
        return Err(Error::Inconsistent("symmetries are stated for SL shapes".into()));
    }
    let (z, p, q) = shape.to_zpq()?;
    if z.im == T::zero() {
        return Err(Error::Domain("symmetry corrections need Im z ≠ 0".into()));
    }
    let upper = z.im > T::zero();
    let one = Complex::new(T::one(), T::zero());
    let l = |w: Complex<T>| plog(w);
    let pp = p * p;
    let qq = q * q;
    let sixth = |k: i64| pi_i::<T>() * (int::<T>(k) / int::<T>(6));
    let half = lit::<T>(0.5);
    let (w, e, f, sign, x) = match which {
        Symmetry::Inv => {
            let w = one / z;
            let x = if upper {
                -l(z)? * half + k_pi_i::<T>(2 * pp + p)
            } else {
                l(z)? * half - k_pi_i::<T>(2 * pp + p)
            };
            (w, l(w)? - k_pi_i::<T>(2 * p), l(one - w)? + k_pi_i::<T>(2 * (q - p)), -1, x)
        }
        Symmetry::Swap => (one - z, shape.f(), shape.e(), -1, -sixth(1)),
        Symmetry::OneMinusInv => {
            let w = one / (one - z);
            let x = if upper {
                l(one - z)? * half + k_pi_i::<T>(2 * qq - q) + sixth(1)
            } else {
                -l(one - z)? * half - k_pi_i::<T>(2 * qq - q) + sixth(1)
            };
            (w, l(w)? - k_pi_i::<T>(2 * q), l(one - w)? + k_pi_i::<T>(2 * (p - q)), 1, x)
        }
        Symmetry::SwapInv => {
            let w = one - one / z;
            let x = if upper {
                l(z)? * half + k_pi_i::<T>(2 * pp - p) - sixth(1)
            } else {
                -l(z)? * half + k_pi_i::<T>(2 * pp + p) - sixth(1)
            };
            (w, l(w)? + k_pi_i::<T>(2 * (q - p)), l(one / z)? - k_pi_i::<T>(2 * p), 1, x)
        }
        Symmetry::ConjVariant => {
            if upper {
                return Err(Error::Domain("conj_variant is stated for Im z < 0".into()));
            }
            let w = -z / (one - z);
            let x = l(one - z)? * half + k_pi_i::<T>(2 * qq - q) - sixth(2);
            (w, l(w)? + k_pi_i::<T>(2 * (p - q)), l(one - w)? - k_pi_i::<T>(2 * q), -1, x)
        }
    };
    let shape = FlattenedShape::from_logs(e, f, w, Flavor::Sl)?;
    Ok(SymmetryResult { shape, sign, chi_argument: x, correction: chi_any(x) })
}
