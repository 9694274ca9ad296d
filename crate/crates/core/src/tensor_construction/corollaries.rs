//! The χ-corrected subsimplex sum, the five-term instance behind it, and
//! the resulting cancellation.

use std::cmp::Ordering;

use num_complex::Complex;

use super::{cmp_band, zpq_table, Region};
use crate::complex_kernel::plog;
use crate::error::Result;
use crate::extended_bloch::{chi_any, FlattenedShape, Flavor, PreBlochElement};
use crate::scalar::{k_pi_i, lit, Real};

fn shape<T: Real>(e: Complex<T>, f: Complex<T>) -> Result<FlattenedShape<T>> {
    FlattenedShape::new(e, f, Flavor::Sl)
}

/// `(log z̄ − 2pπi, log(1−z̄) − 2qπi)`, the conjugate of `(z, p, q)`.
fn conj_shape<T: Real>(z: Complex<T>, p: i64, q: i64) -> Result<FlattenedShape<T>> {
    FlattenedShape::from_zpq(z.conj(), -p, -q)
}

/// Sum of the ten `(z, p, q)` shapes.
pub fn subsimplex_sum<T: Real>(z: Complex<T>, p: i64, q: i64) -> Result<PreBlochElement<T>> {
    let mut out = PreBlochElement::zero(Flavor::Sl);
    for s in zpq_table(z, p, q)? {
        out.push(1, s);
    }
    Ok(out)
}

/// The χ-argument completing the regrouped subsimplex sum.
pub fn corsum_chi_argument<T: Real>(z: Complex<T>, q: i64) -> Result<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    let zb = z.conj();
    let l = |x: Complex<T>| plog(x);
    let a = l((zb - z) / (zb - one))?;
    let b = l(one - z / zb)?;
    let c = l((one - z) * zb / (zb - z))?;
    let d = l((one - z) / (one - zb))?;
    let two = lit::<T>(2.0);
    let base = -l(zb)?;
    Ok(match Region::of(z)? {
        Region::UpperRight => base - a * lit::<T>(3.0) + k_pi_i::<T>(2 * q),
        Region::UpperMiddle => base - a + k_pi_i::<T>(2 * q),
        Region::UpperLeft => base - b * two - a + k_pi_i::<T>(2 * q),
        Region::LowerRight => base + c * two - d * two + a + k_pi_i::<T>(2 * (q - 1)),
        Region::LowerMiddle => base + c * two - d * two - a + k_pi_i::<T>(2 * (q - 1)),
        Region::LowerLeft => base + b * two + c * two - d * two - a + k_pi_i::<T>(2 * (q - 1)),
    })
}

/// `4(z̄) + 2(z/z̄) + 2(z(1−z̄)/(z−z̄)) + 2((z−z̄)/(1−z̄))` with their branch
/// offsets, plus the χ-correction.
pub fn corsum_rhs<T: Real>(z: Complex<T>, p: i64, q: i64) -> Result<PreBlochElement<T>> {
    let one = Complex::new(T::one(), T::zero());
    let zb = z.conj();
    let l = |x: Complex<T>| plog(x);
    let pi = |k: i64| k_pi_i::<T>(k);
    let mut out = PreBlochElement::zero(Flavor::Sl);
    out.push(4, conj_shape(z, p, q)?);
    out.push(2, shape(l(z / zb)? + pi(4 * p), l(one - z / zb)?)?);
    out.push(2, shape(l(z * (one - zb) / (z - zb))? + pi(2 * (2 * p - q)), l((one - z) * zb / (zb - z))? + pi(2 * q))?);
    out.push(2, shape(l((zb - z) / (zb - one))? + pi(2 * (q - p)), l((one - z) / (one - zb))? + pi(2 * (2 * q + 1)))?);
    out.extend(&chi_any(corsum_chi_argument(z, q)?));
    Ok(out)
}

/// `|R(subsimplex sum) − R(corsum_rhs)|` modulo 4π².
pub fn verify_corsum<T: Real>(z: Complex<T>, p: i64, q: i64) -> Result<T> {
    Ok(subsimplex_sum(z, p, q)?.rogers().residual(&corsum_rhs(z, p, q)?.rogers()))
}

/// The five shapes of the parametrized five-term instance.
pub fn blochsum_tuple<T: Real>(z: Complex<T>, p: i64, q: i64) -> Result<[FlattenedShape<T>; 5]> {
    let one = Complex::new(T::one(), T::zero());
    let zb = z.conj();
    let l = |x: Complex<T>| plog(x);
    let pi = |k: i64| k_pi_i::<T>(k);
    let re1 = cmp_band(z.re, T::one());
    let im0 = cmp_band(z.im, T::zero());
    let k = if re1 == Ordering::Less || (re1 == Ordering::Equal && im0 == Ordering::Less) {
        4 * q
    } else if im0 == Ordering::Less {
        2 * (2 * q + 1)
    } else {
        2 * (2 * q - 1)
    };
    Ok([
        shape(l((z - zb) / (one - zb))? + pi(2 * (q - p)), l((one - z) / (one - zb))? + pi(k))?,
        FlattenedShape::from_zpq(z, p, q)?,
        shape(l(z * (one - zb) / (z - zb))? + pi(2 * (2 * p - q)), l(zb * (one - z) / (zb - z))? + pi(2 * q))?,
        shape(l(z / (z - zb))? + pi(4 * p), l(zb / (zb - z))?)?,
        shape(l(one / (one - zb))? + pi(2 * q), l(zb / (zb - one))? + pi(2 * (q - p)))?,
    ])
}

/// Both sides of the three-term consequence of the five-term instance.
pub fn corfive_sides<T: Real>(z: Complex<T>, p: i64, q: i64) -> Result<(PreBlochElement<T>, PreBlochElement<T>)> {
    let one = Complex::new(T::one(), T::zero());
    let zb = z.conj();
    let l = |x: Complex<T>| plog(x);
    let pi = |k: i64| k_pi_i::<T>(k);
    let half = lit::<T>(0.5);

    let g = l((z - zb) / (one - zb))? + pi(2 * (q - p));
    let mut lhs = PreBlochElement::zero(Flavor::Sl);
    lhs.push(1, shape(g, l((one - z) / (one - zb))? + pi(2 * (2 * q + 1)))?);
    lhs.push(1, shape(l(z * (one - zb) / (z - zb))? + pi(2 * (2 * p - q)), l(zb * (one - z) / (zb - z))? + pi(2 * q))?);
    lhs.push(1, shape(l(z / zb)? + pi(4 * p), l(one - z / zb)?)?);

    let re0 = cmp_band(z.re, T::zero());
    let re1 = cmp_band(z.re, T::one());
    let upper = cmp_band(z.im, T::zero()) == Ordering::Greater;
    let x1 = if re1 == Ordering::Less || (re1 == Ordering::Equal && !upper) {
        g
    } else if !upper {
        Complex::new(T::zero(), T::zero())
    } else {
        g * lit::<T>(2.0)
    };
    let h1 = l(one - zb)? * half;
    let h2 = l(one - zb / z)? * half;
    let h3 = l(z / zb)? * half;
    let s = pi(2 * q * q - q);
    let x2 = if upper && re0 != Ordering::Less {
        h1 - h2 - h3 - s
    } else if upper {
        h1 + h2 + h3 - s
    } else if re0 == Ordering::Greater {
        -h1 + h2 + h3 + s
    } else {
        -h1 - h2 - h3 + s
    };
    let mut rhs = PreBlochElement::from_shape(FlattenedShape::from_zpq(z, p, q)?);
    rhs.push(-1, conj_shape(z, p, q)?);
    rhs.extend(&chi_any(x1));
    rhs.extend(&chi_any(x2));
    Ok((lhs, rhs))
}

pub fn verify_corfive<T: Real>(z: Complex<T>, p: i64, q: i64) -> Result<T> {
    let (lhs, rhs) = corfive_sides(z, p, q)?;
    Ok(lhs.rogers().residual(&rhs.rogers()))
}

/// `|R(subsimplex sum) − R(2(z,p,q) + 2·conj)|` modulo 4π².
pub fn verify_cancellation<T: Real>(z: Complex<T>, p: i64, q: i64) -> Result<T> {
    let lhs = subsimplex_sum(z, p, q)?.rogers();
    let mut rhs = PreBlochElement::zero(Flavor::Sl);
    rhs.push(2, FlattenedShape::from_zpq(z, p, q)?);
    rhs.push(2, conj_shape(z, p, q)?);
    Ok(lhs.residual(&rhs.rogers()))
}
