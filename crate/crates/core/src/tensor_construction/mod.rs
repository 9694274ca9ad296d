//! The ρ⊗ρ̄ construction: tensor decorations, the rank-4 Ptolemy table with
//! its fixed lifts, the `(z, p, q)` tables and the cancellation identities.

mod corollaries;
mod table;
mod theorem;
mod toy;
mod zpq;

pub use corollaries::{
    blochsum_tuple, corfive_sides, corsum_chi_argument, corsum_rhs, subsimplex_sum, verify_cancellation, verify_corfive,
    verify_corsum,
};
pub use table::{lifted_lambda_table, ptolemy_closed_table, tensor_lifts, tensor_ptolemy, TENSOR_WEIGHTS};
pub use theorem::{simplex_cancel, theorem1_check, SimplexCancel, Theorem1Report};
pub use toy::toy_bloch_check;
pub use zpq::{zpq_of, zpq_table};

use std::collections::BTreeMap;
use std::cmp::Ordering;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{lit, tol, Real};
use crate::triangulation::{Decoration, Weight};

/// The ten `α` with `Σαᵢ = 2`, in table order.
pub const ALPHAS: [Weight; 10] = [
    [2, 0, 0, 0],
    [1, 1, 0, 0],
    [1, 0, 1, 0],
    [1, 0, 0, 1],
    [0, 2, 0, 0],
    [0, 1, 1, 0],
    [0, 1, 0, 1],
    [0, 0, 2, 0],
    [0, 0, 1, 1],
    [0, 0, 0, 2],
];

/// Width of the band around `Re z ∈ {0, 1}` and `Im z = 0` treated as the
/// boundary itself.
pub const DEAD_BAND: f64 = 1e-14;

/// Compares `x` with `b`, reporting `Equal` inside the dead band.
pub(crate) fn cmp_band<T: Real>(x: T, b: T) -> Ordering {
    let d = x - b;
    if d.abs() <= lit::<T>(DEAD_BAND) {
        Ordering::Equal
    } else if d < T::zero() {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Case regions of the cross ratio used throughout the `(z, p, q)` analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// `Im z > 0, Re z < 0`
    UpperLeft,
    /// `Im z > 0, 0 ≤ Re z < 1`
    UpperMiddle,
    /// `Im z > 0, Re z ≥ 1`
    UpperRight,
    /// `Im z < 0, Re z ≤ 0`
    LowerLeft,
    /// `Im z < 0, 0 < Re z ≤ 1`
    LowerMiddle,
    /// `Im z < 0, Re z > 1`
    LowerRight,
}

impl Region {
    pub const ALL: [Region; 6] = [
        Region::UpperLeft,
        Region::UpperMiddle,
        Region::UpperRight,
        Region::LowerLeft,
        Region::LowerMiddle,
        Region::LowerRight,
    ];

    pub fn of<T: Real>(z: Complex<T>) -> Result<Region> {
        let re0 = cmp_band(z.re, T::zero());
        let re1 = cmp_band(z.re, T::one());
        match cmp_band(z.im, T::zero()) {
            Ordering::Equal => Err(Error::Degenerate(format!("cross ratio {z} is real"))),
            Ordering::Greater => Ok(if re0 == Ordering::Less {
                Region::UpperLeft
            } else if re1 == Ordering::Less {
                Region::UpperMiddle
            } else {
                Region::UpperRight
            }),
            Ordering::Less => Ok(if re0 != Ordering::Greater {
                Region::LowerLeft
            } else if re1 != Ordering::Greater {
                Region::LowerMiddle
            } else {
                Region::LowerRight
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::UpperLeft => "Im>0,Re<0",
            Region::UpperMiddle => "Im>0,0<=Re<1",
            Region::UpperRight => "Im>0,Re>=1",
            Region::LowerLeft => "Im<0,Re<=0",
            Region::LowerMiddle => "Im<0,0<Re<=1",
            Region::LowerRight => "Im<0,Re>1",
        }
    }

    pub fn upper(self) -> bool {
        matches!(self, Region::UpperLeft | Region::UpperMiddle | Region::UpperRight)
    }
}

/// Rank-2 standard-form coordinates `a..f`, optionally with obstruction
/// signs `σ₀..σ₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardSimplexCoords<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub d: Complex<T>,
    pub e: Complex<T>,
    pub f: Complex<T>,
    pub signs: [i64; 4],
}

impl<T: Real> StandardSimplexCoords<T> {
    /// `f = (be − cd)/a`.
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>, e: Complex<T>) -> Result<Self> {
        Self::with_signs(a, b, c, d, e, [1; 4])
    }

    /// `f` solving `σ₀σ₁·af + σ₀σ₃·cd = σ₀σ₂·be`.
    pub fn with_signs(
        a: Complex<T>,
        b: Complex<T>,
        c: Complex<T>,
        d: Complex<T>,
        e: Complex<T>,
        signs: [i64; 4],
    ) -> Result<Self> {
        if signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::Inconsistent("signs must be ±1".into()));
        }
        let s = |k: i64| lit::<T>(k as f64);
        let [_, s1, s2, s3] = signs;
        let f = (b * e * s(s2) - c * d * s(s3)) / (a * s(s1));
        let out = StandardSimplexCoords { a, b, c, d, e, f, signs };
        out.validate()?;
        Ok(out)
    }

    /// Coordinates taken as given, checked against the signed relation.
    pub fn from_all(coords: [Complex<T>; 6], signs: [i64; 4]) -> Result<Self> {
        let [a, b, c, d, e, f] = coords;
        let out = StandardSimplexCoords { a, b, c, d, e, f, signs };
        let scale = T::one() + (a * f).norm() + (b * e).norm() + (c * d).norm();
        if out.relation_residual() > tol::<T>(1e-9) * scale {
            return Err(Error::Inconsistent("coordinates violate the Ptolemy relation".into()));
        }
        out.validate()?;
        Ok(out)
    }

    fn validate(&self) -> Result<()> {
        if self.as_array().iter().any(|x| x.norm() == T::zero() || !x.re.is_finite() || !x.im.is_finite()) {
            return Err(Error::NonGeneric("Ptolemy coordinates must be nonzero".into()));
        }
        Ok(())
    }

    pub fn as_array(&self) -> [Complex<T>; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn is_signed(&self) -> bool {
        self.signs != [1; 4]
    }

    pub fn relation_residual(&self) -> T {
        let s = |k: i64| lit::<T>(k as f64);
        let [s0, s1, s2, s3] = self.signs;
        (self.a * self.f * s(s0 * s1) + self.c * self.d * s(s0 * s3) - self.b * self.e * s(s0 * s2)).norm()
    }

    /// `z = cd/(be)`.
    pub fn cross_ratio(&self) -> Complex<T> {
        self.c * self.d / (self.b * self.e)
    }

    /// `g₀ = I`, `g₁ = [[0,−1/a],[a,0]]`, `g₂ = [[−d/a,−1/b],[b,0]]`,
    /// `g₃ = [[−e/a,−1/c],[c,0]]`.
    pub fn standard_matrices(&self) -> [CMatrix<T>; 4] {
        let z = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let (a, b, c, d, e) = (self.a, self.b, self.c, self.d, self.e);
        [
            CMatrix::identity(2),
            CMatrix::from_2x2([[z, -one / a], [a, z]]),
            CMatrix::from_2x2([[-d / a, -one / b], [b, z]]),
            CMatrix::from_2x2([[-e / a, -one / c], [c, z]]),
        ]
    }
}

/// `A ↦ A ⊗ Ā` on every coset representative.
pub fn tensor_decoration<T: Real>(dec: &Decoration<T>) -> Result<Decoration<T>> {
    if dec.n != 2 {
        return Err(Error::Inconsistent("tensor decoration needs a rank-2 input".into()));
    }
    let cosets = dec.cosets.iter().map(|(v, m)| (v.clone(), m.kron(&m.conj()))).collect();
    Decoration::new(4, cosets, BTreeMap::new())
}
