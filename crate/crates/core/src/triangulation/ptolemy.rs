//! Ptolemy coordinates of a single decorated simplex.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::extended_bloch::{FlattenedShape, Flavor};
use crate::matrix::CMatrix;
use crate::scalar::{lit, tol, Real};

/// Integer 4-tuple `t = (t₀, t₁, t₂, t₃)`.
pub type Weight = [usize; 4];

/// All `t` with `Σtᵢ = total`, in descending lexicographic order.
fn tuples(total: usize) -> Vec<Weight> {
    let mut out = Vec::new();
    for a in (0..=total).rev() {
        for b in (0..=total - a).rev() {
            for c in (0..=total - a - b).rev() {
                out.push([a, b, c, total - a - b - c]);
            }
        }
    }
    out
}

/// Non-vertex weights `t` with `Σtᵢ = n`, i.e. all `tᵢ < n`.
pub fn weights(n: usize) -> Vec<Weight> {
    tuples(n).into_iter().filter(|t| t.iter().all(|&x| x < n)).collect()
}

/// Subsimplex indices `α` with `Σαᵢ = n − 2`.
pub fn alphas(n: usize) -> Vec<Weight> {
    tuples(n.saturating_sub(2))
}

/// `c_t` for every non-vertex weight of one simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct PtolemyAssignment<T> {
    pub n: usize,
    pub coords: BTreeMap<Weight, Complex<T>>,
}

impl<T: Real> PtolemyAssignment<T> {
    pub fn get(&self, t: &Weight) -> Option<Complex<T>> {
        self.coords.get(t).copied()
    }

    /// `(a, b, c, d, e, f) = (c₁₁₀₀, c₁₀₁₀, c₁₀₀₁, c₀₁₁₀, c₀₁₀₁, c₀₀₁₁)` at rank 2.
    pub fn edge_coords(&self) -> Result<[Complex<T>; 6]> {
        if self.n != 2 {
            return Err(Error::Inconsistent("edge coordinates need rank 2".into()));
        }
        let g = |t: Weight| self.coords[&t];
        Ok([g([1, 1, 0, 0]), g([1, 0, 1, 0]), g([1, 0, 0, 1]), g([0, 1, 1, 0]), g([0, 1, 0, 1]), g([0, 0, 1, 1])])
    }
}

/// `c_t = det(first t₀ columns of g₀ | … | first t₃ columns of g₃)`.
pub fn ptolemy_coords<T: Real>(mats: [&CMatrix<T>; 4], n: usize) -> PtolemyAssignment<T> {
    let mut coords = BTreeMap::new();
    for t in weights(n) {
        let blocks: Vec<CMatrix<T>> = mats.iter().zip(t).map(|(m, k)| m.leading_columns(k)).collect();
        coords.insert(t, CMatrix::hstack(&blocks).det());
    }
    PtolemyAssignment { n, coords }
}

/// Every coordinate exceeds `threshold·max(1, max|c_t|)` in modulus.
pub fn is_generic<T: Real>(assignment: &PtolemyAssignment<T>, threshold: T) -> bool {
    let scale = assignment.coords.values().fold(T::one(), |m, c| m.max(c.norm()));
    assignment.coords.values().all(|c| c.norm() > threshold * scale)
}

/// `|σ₀σ₁·af + σ₀σ₃·cd − σ₀σ₂·be|` for a rank-2 assignment.
pub fn check_ptolemy_relation<T: Real>(assignment: &PtolemyAssignment<T>, signs: [i64; 4]) -> Result<T> {
    let [a, b, c, d, e, f] = assignment.edge_coords()?;
    let s = |k: i64| lit::<T>(k as f64);
    let [s0, s1, s2, s3] = signs;
    Ok((a * f * s(s0 * s1) + c * d * s(s0 * s3) - b * e * s(s0 * s2)).norm())
}

/// Rank-2 coordinates with obstruction signs applied:
/// `(a, σ₂b, σ₃c, d, e, σ₁f)`.
pub fn signed_coords<T: Real>(assignment: &PtolemyAssignment<T>, signs: [i64; 4]) -> Result<PtolemyAssignment<T>> {
    if assignment.n != 2 {
        return Err(Error::Inconsistent("obstruction signs apply at rank 2".into()));
    }
    let mut out = assignment.clone();
    let [_, s1, s2, s3] = signs;
    let flip = |t: Weight, s: i64, out: &mut PtolemyAssignment<T>| {
        if s < 0 {
            let v = out.coords[&t];
            out.coords.insert(t, -v);
        }
    };
    flip([1, 0, 1, 0], s2, &mut out);
    flip([1, 0, 0, 1], s3, &mut out);
    flip([0, 0, 1, 1], s1, &mut out);
    Ok(out)
}

/// `λ(c_α) = (c̃₀₃ + c̃₁₂ − c̃₀₂ − c̃₁₃, c̃₀₁ + c̃₂₃ − c̃₀₂ − c̃₁₃)` where `c̃ᵢⱼ` is
/// the lifted logarithm of `c_{α+eᵢ+eⱼ}`.
pub fn lambda_element<T, F>(lift: F, alpha: Weight, flavor: Flavor) -> Result<FlattenedShape<T>>
where
    T: Real,
    F: Fn(&Weight) -> Option<Complex<T>>,
{
    let c = |i: usize, j: usize| -> Result<Complex<T>> {
        let mut t = alpha;
        t[i] += 1;
        t[j] += 1;
        lift(&t).ok_or_else(|| Error::MissingLift(format!("{t:?}")))
    };
    let e = c(0, 3)? + c(1, 2)? - c(0, 2)? - c(1, 3)?;
    let f = c(0, 1)? + c(2, 3)? - c(0, 2)? - c(1, 3)?;
    FlattenedShape::with_tolerance(e, f, flavor, tol(1e-8))
}
