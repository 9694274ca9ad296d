//! Branch rules for principal logarithms of expressions in `z` and `z̄`.
//!
//! Each rule returns the larger residual of its identities, so a correct
//! rule evaluates to zero up to rounding.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::complex_kernel::plog;
use crate::error::Result;
use crate::scalar::{k_pi_i, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LogRule {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
}

impl LogRule {
    pub const ALL: [LogRule; 9] = [
        LogRule::I,
        LogRule::II,
        LogRule::III,
        LogRule::IV,
        LogRule::V,
        LogRule::VI,
        LogRule::VII,
        LogRule::VIII,
        LogRule::IX,
    ];

    pub fn name(self) -> &'static str {
        ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"][self as usize]
    }
}

/// Half-turn correction in `log(z/z̄)`: `log z − log z̄ = log(z/z̄) + kπi`.
pub fn ratio_correction<T: Real>(z: Complex<T>) -> i64 {
    if z.re > T::zero() || (z.re == T::zero() && z.im > T::zero()) {
        0
    } else if z.re < T::zero() && z.im > T::zero() {
        2
    } else {
        -2
    }
}

/// Half-turn correction in `log(1−z) − log(1−z̄) = log((1−z)/(1−z̄)) + kπi`.
pub fn one_minus_ratio_correction<T: Real>(z: Complex<T>) -> i64 {
    if z.re < T::one() || (z.re == T::one() && z.im < T::zero()) {
        0
    } else if z.re > T::one() && z.im < T::zero() {
        2
    } else {
        -2
    }
}

/// Half-turn correction in
/// `log(z̄(1−z)) − log(z(1−z̄)) = log(z̄(1−z)/(z(1−z̄))) + kπi`.
pub fn cross_ratio_correction<T: Real>(z: Complex<T>) -> i64 {
    let n2 = z.norm_sqr();
    if z.im > T::zero() {
        if z.re <= n2 {
            -2
        } else {
            0
        }
    } else if z.re < n2 {
        2
    } else {
        0
    }
}

/// Residual of a rule at a nonreal `z`.
pub fn log_rule_residual<T: Real>(rule: LogRule, z: Complex<T>) -> Result<T> {
    let one = Complex::new(T::one(), T::zero());
    let zb = z.conj();
    let l = |w: Complex<T>| plog(w);
    let m = |a: Complex<T>, b: Complex<T>| a.norm().max(b.norm());
    let r = match rule {
        LogRule::I => (l(z)? - l(zb)? - l(z / zb)? - k_pi_i::<T>(ratio_correction(z))).norm(),
        LogRule::II => m(l(z)? - l(z - zb)? - l(z / (z - zb))?, l(zb)? - l(zb - z)? - l(zb / (zb - z))?),
        LogRule::III => m(l(one - zb)? - l(z)? - l((one - zb) / z)?, l(one - z)? - l(zb)? - l((one - z) / zb)?),
        LogRule::IV => (l(zb - z)? - l(zb - one)? - l((z - zb) / (one - zb))?).norm(),
        LogRule::V => m(l(z)? - l(one - z)? - l(z / (one - z))?, l(zb)? - l(one - zb)? - l(zb / (one - zb))?),
        LogRule::VI => m(l(z)? + l(one - zb)? - l(z * (one - zb))?, l(zb)? + l(one - z)? - l(zb * (one - z))?),
        LogRule::VII => m(
            l(z * (one - zb))? - l(z - zb)? - l(z * (one - zb) / (z - zb))?,
            l(zb * (one - z))? - l(zb - z)? - l(zb * (one - z) / (zb - z))?,
        ),
        LogRule::VIII => {
            (l(one - z)? - l(one - zb)? - l((one - z) / (one - zb))? - k_pi_i::<T>(one_minus_ratio_correction(z)))
                .norm()
        }
        LogRule::IX => (l(zb * (one - z))? - l(z * (one - zb))? - l(zb * (one - z) / (z * (one - zb)))?
            - k_pi_i::<T>(cross_ratio_correction(z)))
        .norm(),
    };
    Ok(r)
}
