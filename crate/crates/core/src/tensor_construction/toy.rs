//! The cancellation identity in the classical Bloch group, tested with D₂.

use num_complex::Complex;

use super::Region;
use crate::complex_kernel::bloch_wigner;
use crate::error::Result;
use crate::scalar::{lit, Real};

/// `|D(4[z̄] + 2[z/z̄] + 2[z(1−z̄)/(z−z̄)] + 2[(z−z̄)/(1−z̄)]) − D(2[z̄] + 2[z])|`.
pub fn toy_bloch_check<T: Real>(z: Complex<T>) -> Result<T> {
    Region::of(z)?;
    let one = Complex::new(T::one(), T::zero());
    let zb = z.conj();
    let d = |w: Complex<T>| bloch_wigner(w);
    let two = lit::<T>(2.0);
    let lhs = lit::<T>(4.0) * d(zb)?
        + two * d(z / zb)?
        + two * d(z * (one - zb) / (z - zb))?
        + two * d((z - zb) / (one - zb))?;
    let rhs = two * d(zb)? + two * d(z)?;
    Ok((lhs - rhs).abs())
}
