//! The rank-4 Ptolemy coordinates of `ρ⊗ρ̄` on a standard-form simplex,
//! their fixed lifts and the resulting λ-shapes.

use std::collections::BTreeMap;

use num_complex::Complex;

use super::{StandardSimplexCoords, ALPHAS};
use crate::complex_kernel::plog;
use crate::error::{Error, Result};
use crate::extended_bloch::{FlattenedShape, Flavor};
use crate::scalar::{k_pi_i, lit, Real};
use crate::triangulation::{lambda_element, Weight};

/// Each entry is `(t, negated, factors)`; lower-case letters are
/// coordinates, upper-case their conjugates. `c₁₁₁₁` has no monomial form.
const TABLE: [(Weight, bool, &str); 31] = [
    ([3, 1, 0, 0], false, "aA"),
    ([3, 0, 1, 0], false, "bB"),
    ([3, 0, 0, 1], false, "cC"),
    ([2, 2, 0, 0], false, "aa"),
    ([2, 1, 1, 0], false, "abD"),
    ([2, 1, 0, 1], false, "acE"),
    ([2, 0, 2, 0], false, "bb"),
    ([2, 0, 1, 1], false, "bcF"),
    ([2, 0, 0, 2], false, "cc"),
    ([1, 3, 0, 0], true, "aA"),
    ([1, 2, 1, 0], true, "aBd"),
    ([1, 2, 0, 1], true, "aCe"),
    ([1, 1, 2, 0], false, "Abd"),
    ([1, 1, 1, 1], false, ""),
    ([1, 1, 0, 2], false, "Ace"),
    ([1, 0, 3, 0], true, "bB"),
    ([1, 0, 2, 1], true, "bCf"),
    ([1, 0, 1, 2], false, "Bcf"),
    ([1, 0, 0, 3], true, "cC"),
    ([0, 3, 1, 0], false, "dD"),
    ([0, 3, 0, 1], false, "eE"),
    ([0, 2, 2, 0], false, "dd"),
    ([0, 2, 1, 1], false, "deF"),
    ([0, 2, 0, 2], false, "ee"),
    ([0, 1, 3, 0], true, "dD"),
    ([0, 1, 2, 1], true, "dEf"),
    ([0, 1, 1, 2], false, "Def"),
    ([0, 1, 0, 3], true, "eE"),
    ([0, 0, 3, 1], false, "fF"),
    ([0, 0, 2, 2], false, "ff"),
    ([0, 0, 1, 3], true, "fF"),
];

/// The 31 non-vertex weights of the rank-4 table, in table order.
pub const TENSOR_WEIGHTS: [Weight; 31] = {
    let mut out = [[0; 4]; 31];
    let mut i = 0;
    while i < 31 {
        out[i] = TABLE[i].0;
        i += 1;
    }
    out
};

fn symbol<T: Real>(coords: &StandardSimplexCoords<T>, ch: char) -> Complex<T> {
    let v = coords.as_array()[(ch.to_ascii_lowercase() as u8 - b'a') as usize];
    if ch.is_ascii_uppercase() {
        v.conj()
    } else {
        v
    }
}

/// `w = b̄·c·d·ē`, whose imaginary part gives `c₁₁₁₁ = 2i·Im w`.
fn w_of<T: Real>(coords: &StandardSimplexCoords<T>) -> Complex<T> {
    coords.b.conj() * coords.c * coords.d * coords.e.conj()
}

/// The rank-4 Ptolemy coordinates as closed expressions in `a..f`.
pub fn tensor_ptolemy<T: Real>(coords: &StandardSimplexCoords<T>) -> BTreeMap<Weight, Complex<T>> {
    let mut out = BTreeMap::new();
    for (t, neg, factors) in TABLE {
        let v = if factors.is_empty() {
            Complex::new(T::zero(), lit::<T>(2.0) * w_of(coords).im)
        } else {
            let p = factors.chars().fold(Complex::new(T::one(), T::zero()), |acc, ch| acc * symbol(coords, ch));
            if neg {
                -p
            } else {
                p
            }
        };
        out.insert(t, v);
    }
    out
}

/// Fixed lifts: sums of logarithms of the factors, `πi` for a sign, and
/// `log(2i·Im w) = πi + log b + log c̄ + log d̄ + log e + log(1 − w/w̄)`.
/// The logarithm of a conjugate `x̄` is taken as the conjugate of `log x`,
/// which differs from the principal value only on the negative real axis.
pub fn tensor_lifts<T: Real>(coords: &StandardSimplexCoords<T>) -> Result<BTreeMap<Weight, Complex<T>>> {
    let one = Complex::new(T::one(), T::zero());
    let lg = |ch: char| -> Result<Complex<T>> {
        let v = plog(symbol(coords, ch.to_ascii_lowercase()))?;
        Ok(if ch.is_ascii_uppercase() { v.conj() } else { v })
    };
    let mut out = BTreeMap::new();
    for (t, neg, factors) in TABLE {
        let v = if factors.is_empty() {
            let w = w_of(coords);
            if w.im.abs() <= lit::<T>(1e-14) * w.norm() {
                return Err(Error::Degenerate("b̄cdē is real, so c₁₁₁₁ vanishes".into()));
            }
            k_pi_i::<T>(1) + lg('b')? + lg('C')? + lg('D')? + lg('e')? + plog(one - w / w.conj())?
        } else {
            let mut acc = k_pi_i::<T>(if neg { 1 } else { 0 });
            for ch in factors.chars() {
                acc = acc + lg(ch)?;
            }
            acc
        };
        out.insert(t, v);
    }
    Ok(out)
}

/// `λ̃(c_α)` for the ten `α`, from the raw formula with the fixed lifts.
pub fn lifted_lambda_table<T: Real>(coords: &StandardSimplexCoords<T>) -> Result<[FlattenedShape<T>; 10]> {
    let lifts = tensor_lifts(coords)?;
    let flavor = if coords.is_signed() { Flavor::Psl } else { Flavor::Sl };
    let shapes: Vec<FlattenedShape<T>> =
        ALPHAS.iter().map(|&al| lambda_element(|t| lifts.get(t).copied(), al, flavor)).collect::<Result<_>>()?;
    Ok(shapes.try_into().expect("ten alphas"))
}

/// Closed forms of `λ̃(c_α)` in terms of logarithms of `a..f` and their
/// conjugates, as `(e, f)` pairs, with the same conjugate-log convention.
pub fn ptolemy_closed_table<T: Real>(coords: &StandardSimplexCoords<T>) -> Result<[(Complex<T>, Complex<T>); 10]> {
    let one = Complex::new(T::one(), T::zero());
    let l = |x: Complex<T>| plog(x);
    let lc = |x: Complex<T>| plog(x).map(|v| v.conj());
    let (a, b, c, d, e, f) = (coords.a, coords.b, coords.c, coords.d, coords.e, coords.f);
    let w = w_of(coords);
    let ell = plog(one - w / w.conj())?;
    let pi = k_pi_i::<T>(1);
    let v = (-lc(b)? + lc(c)? + lc(d)? - lc(e)?, lc(a)? - lc(b)? - lc(e)? + lc(f)?);
    let v20 = (v.0, v.1 - k_pi_i::<T>(2));
    let v11 = (lc(b)? - l(b)? + l(c)? - lc(c)? + l(d)? - lc(d)? + lc(e)? - l(e)?, ell);
    let v1010 = (
        -pi + lc(a)? - l(b)? + l(c)? - lc(c)? + l(d)? - lc(d)? - l(e)? + lc(f)? - ell,
        l(a)? - l(b)? - l(e)? + l(f)? - ell,
    );
    let v1001 = (
        pi - lc(a)? + lc(c)? + lc(d)? - lc(f)? + ell,
        l(a)? - lc(a)? + lc(b)? - l(b)? + lc(e)? - l(e)? + l(f)? - lc(f)?,
    );
    let v0110 = (v1001.0, v1001.1 + k_pi_i::<T>(2));
    Ok([v, v11, v1010, v1001, v, v0110, v1010, v20, v11, v])
}
