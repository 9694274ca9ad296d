//! The λ̃-table expressed through `(z, p, q)`.

use std::cmp::Ordering;

use num_complex::Complex;

use super::{cmp_band, Region, StandardSimplexCoords};
use crate::complex_kernel::plog;
use crate::error::{Error, Result};
use crate::extended_bloch::{FlattenedShape, Flavor};
use crate::scalar::{k_pi_i, nearest_int, pi_i, lit, Real};

/// `z = cd/be` with `log c + log d − log b − log e = log z + 2pπi` and
/// `log a + log f − log b − log e = log(1−z) + 2qπi`.
pub fn zpq_of<T: Real>(coords: &StandardSimplexCoords<T>) -> Result<(Complex<T>, i64, i64)> {
    if coords.is_signed() {
        return Err(Error::Inconsistent("(z, p, q) needs unsigned coordinates".into()));
    }
    let one = Complex::new(T::one(), T::zero());
    let l = |x: Complex<T>| plog(x);
    let z = coords.cross_ratio();
    let two_pi_i = pi_i::<T>() * lit::<T>(2.0);
    let dp = (l(coords.c)? + l(coords.d)? - l(coords.b)? - l(coords.e)? - l(z)?) / two_pi_i;
    let dq = (l(coords.a)? + l(coords.f)? - l(coords.b)? - l(coords.e)? - l(one - z)?) / two_pi_i;
    let (p, rp) = nearest_int(dp.re);
    let (q, rq) = nearest_int(dq.re);
    let tol = lit::<T>(1e-6);
    if rp > tol || rq > tol || dp.im.abs() > tol || dq.im.abs() > tol {
        return Err(Error::Inconsistent("branch offsets of the cross ratio are not integral".into()));
    }
    Ok((z, p, q))
}

/// The ten shapes `λ̃(c_α)` as functions of `(z, p, q)`, in the order of
/// [`super::ALPHAS`].
pub fn zpq_table<T: Real>(z: Complex<T>, p: i64, q: i64) -> Result<[FlattenedShape<T>; 10]> {
    let region = Region::of(z)?;
    let upper = region.upper();
    let one = Complex::new(T::one(), T::zero());
    let zb = z.conj();
    let l = |x: Complex<T>| plog(x);
    let pi = |k: i64| k_pi_i::<T>(k);
    let mk = |e: Complex<T>, f: Complex<T>, w: Complex<T>| FlattenedShape::from_logs(e, f, w, Flavor::Sl);

    let s2000 = mk(l(zb)? - pi(2 * p), l(one - zb)? - pi(2 * q), zb)?;
    let s0020 = mk(l(zb)? - pi(2 * p), l(one - zb)? - pi(2 * q + 2), zb)?;

    let k1100 = match (cmp_band(z.re, T::zero()), upper) {
        (Ordering::Greater, _) | (Ordering::Equal, true) => 4 * p,
        (Ordering::Less, true) => 4 * p + 2,
        _ => 4 * p - 2,
    };
    let r = z / zb;
    let s1100 = mk(l(r)? + pi(k1100), l(one - r)?, r)?;

    let k1010 = if upper { 2 * (2 * p - q) } else { 2 * (2 * p - q - 1) };
    let w = z * (one - zb) / (z - zb);
    let s1010 = mk(l(w)? + pi(k1010), l((one - z) * zb / (zb - z))? + pi(2 * q), w)?;

    let a1 = if upper { 2 * (q - p) } else { 2 * (q - p + 1) };
    let b1 = match region {
        Region::UpperLeft | Region::UpperMiddle => 4 * q,
        Region::UpperRight => 4 * q - 2,
        Region::LowerLeft | Region::LowerMiddle => 4 * q,
        Region::LowerRight => 4 * q + 2,
    };
    let u = (zb - z) / (zb - one);
    let s1001 = mk(l(u)? + pi(a1), l((one - z) / (one - zb))? + pi(b1), u)?;
    let s0110 = mk(l(u)? + pi(a1), l((one - z) / (one - zb))? + pi(b1 + 2), u)?;

    Ok([s2000, s1100, s1010, s1001, s2000, s0110, s1010, s0020, s1100, s2000])
}
