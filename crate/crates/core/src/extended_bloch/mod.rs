//! Flattened shapes, formal sums of them, χ-elements, the lifted five-term
//! relation and branch bookkeeping.

mod element;
pub mod log_rules;
mod symmetry;

pub use element::{PreBlochElement, Record};
pub use symmetry::{apply_symmetry, Symmetry, SymmetryResult};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::complex_kernel::{plog, rogers_branch, Lattice, ModLatticeValue};
use crate::error::{Error, Result};
use crate::scalar::{int, k_pi_i, lit, nearest_int, pi_i, tol, Real};

/// Default relative tolerance for `exp(e)+exp(f)=1`.
pub const SHAPE_TOL: f64 = 1e-9;

/// Tolerance for recognising integral branch offsets.
const BRANCH_TOL: f64 = 1e-6;

/// SL shapes satisfy `exp(e)+exp(f)=1`; PSL shapes only `±exp(e)±exp(f)=1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    Sl,
    Psl,
}

impl Flavor {
    pub fn lattice(self) -> Lattice {
        match self {
            Flavor::Sl => Lattice::FourPiSquared,
            Flavor::Psl => Lattice::PiSquared,
        }
    }

    pub fn coarser(self, other: Flavor) -> Flavor {
        if self == Flavor::Psl || other == Flavor::Psl {
            Flavor::Psl
        } else {
            Flavor::Sl
        }
    }
}

/// A generator `(e, f)` of the extended pre-Bloch group.
///
/// Alongside the pair it records the cross ratio `z` and the half-turn
/// counts `P`, `Q` with `e = log z + Pπi` and `f = log(1−z) + Qπi`. SL shapes
/// have even counts, so `(z, P/2, Q/2)` is the usual `(z, p, q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlattenedShape<T> {
    e: Complex<T>,
    f: Complex<T>,
    flavor: Flavor,
    z: Complex<T>,
    p_half: i64,
    q_half: i64,
}

impl<T: Real> FlattenedShape<T> {
    /// Validates `(e, f)` with the default tolerance.
    pub fn new(e: Complex<T>, f: Complex<T>, flavor: Flavor) -> Result<Self> {
        Self::with_tolerance(e, f, flavor, tol(SHAPE_TOL))
    }

    pub fn with_tolerance(e: Complex<T>, f: Complex<T>, flavor: Flavor, tol: T) -> Result<Self> {
        if !(e.re.is_finite() && e.im.is_finite() && f.re.is_finite() && f.im.is_finite()) {
            return Err(Error::Domain("non-finite shape coordinates".into()));
        }
        let one = Complex::new(T::one(), T::zero());
        let ee = e.exp();
        let ef = f.exp();
        let scale = T::one() + ee.norm();
        let signs: &[(i64, i64)] = match flavor {
            Flavor::Sl => &[(1, 1)],
            Flavor::Psl => &[(1, 1), (1, -1), (-1, 1), (-1, -1)],
        };
        let mut best: Option<(T, i64, i64)> = None;
        for &(se, sf) in signs {
            let r = (ee * int::<T>(se) + ef * int::<T>(sf) - one).norm() / scale;
            if best.is_none_or(|(b, _, _)| r < b) {
                best = Some((r, se, sf));
            }
        }
        let (res, se, _) = best.expect("at least one sign pair");
        if res > tol {
            return Err(Error::InvalidShape { residual: res.to_f64().unwrap_or(f64::NAN) });
        }
        let z = ee * int::<T>(se);
        Self::from_logs(e, f, z, flavor)
    }

    /// Builds a shape from logarithms of a known cross ratio `z`, reading off
    /// the branch offsets.
    pub(crate) fn from_logs(e: Complex<T>, f: Complex<T>, z: Complex<T>, flavor: Flavor) -> Result<Self> {
        let one = Complex::new(T::one(), T::zero());
        if z.norm() == T::zero() || (one - z).norm() <= T::epsilon() {
            return Err(Error::Domain("cross ratio equals 0 or 1".into()));
        }
        let de = (e - plog(z)?) / pi_i::<T>();
        let df = (f - plog(one - z)?) / pi_i::<T>();
        let tol = lit::<T>(BRANCH_TOL);
        let (p_half, rp) = nearest_int(de.re);
        let (q_half, rq) = nearest_int(df.re);
        if rp > tol || rq > tol || de.im.abs() > tol || df.im.abs() > tol {
            return Err(Error::Inconsistent(format!(
                "branch offsets not integral (P ≈ {}, Q ≈ {})",
                de.re, df.re
            )));
        }
        if flavor == Flavor::Sl && (p_half % 2 != 0 || q_half % 2 != 0) {
            return Err(Error::Inconsistent("odd half-turn count in an SL shape".into()));
        }
        Ok(FlattenedShape { e, f, flavor, z, p_half, q_half })
    }

    /// `(log z + Pπi, log(1−z) + Qπi)` built exactly from branch data.
    pub fn from_branch(z: Complex<T>, p_half: i64, q_half: i64, flavor: Flavor) -> Result<Self> {
        let one = Complex::new(T::one(), T::zero());
        if z.norm() == T::zero() || (one - z).norm() <= T::epsilon() {
            return Err(Error::Domain("cross ratio equals 0 or 1".into()));
        }
        if flavor == Flavor::Sl && (p_half % 2 != 0 || q_half % 2 != 0) {
            return Err(Error::Inconsistent("odd half-turn count in an SL shape".into()));
        }
        let e = plog(z)? + k_pi_i::<T>(p_half);
        let f = plog(one - z)? + k_pi_i::<T>(q_half);
        Ok(FlattenedShape { e, f, flavor, z, p_half, q_half })
    }

    /// The SL shape `(log z + 2pπi, log(1−z) + 2qπi)`.
    pub fn from_zpq(z: Complex<T>, p: i64, q: i64) -> Result<Self> {
        Self::from_branch(z, 2 * p, 2 * q, Flavor::Sl)
    }

    pub fn e(&self) -> Complex<T> {
        self.e
    }

    pub fn f(&self) -> Complex<T> {
        self.f
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn z(&self) -> Complex<T> {
        self.z
    }

    /// Half-turn counts `(P, Q)`.
    pub fn half_turns(&self) -> (i64, i64) {
        (self.p_half, self.q_half)
    }

    /// `(z, p, q)` with `e = log z + 2pπi`, `f = log(1−z) + 2qπi`.
    pub fn to_zpq(&self) -> Result<(Complex<T>, i64, i64)> {
        if self.p_half % 2 != 0 || self.q_half % 2 != 0 {
            return Err(Error::Inconsistent("shape has odd half-turn counts".into()));
        }
        Ok((self.z, self.p_half / 2, self.q_half / 2))
    }

    /// Same pair regarded in a (possibly coarser) flavor.
    pub fn with_flavor(mut self, flavor: Flavor) -> Result<Self> {
        if flavor == Flavor::Sl && (self.p_half % 2 != 0 || self.q_half % 2 != 0) {
            return Err(Error::Inconsistent("PSL shape is not an SL shape".into()));
        }
        self.flavor = flavor;
        Ok(self)
    }

    /// Extended Rogers dilogarithm of the shape.
    pub fn rogers(&self) -> ModLatticeValue<T> {
        let v = rogers_branch(self.z, self.p_half, self.q_half).expect("validated shape");
        ModLatticeValue::new(v, self.flavor.lattice())
    }

    /// `(ē, f̄)`.
    pub fn conj(&self) -> Self {
        Self::from_logs(self.e.conj(), self.f.conj(), self.z.conj(), self.flavor)
            .expect("conjugate of a valid shape is valid")
    }

    /// Coordinatewise closeness.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        (self.e - other.e).norm() <= tol && (self.f - other.f).norm() <= tol
    }
}

/// Extended Rogers dilogarithm `R(e, f)`.
pub fn rogers_extended<T: Real>(shape: &FlattenedShape<T>) -> ModLatticeValue<T> {
    shape.rogers()
}

/// `χ(e) = (e, f+2πi) − (e, f)` with `f = log(1 − exp e)`.
pub fn chi<T: Real>(e: Complex<T>) -> Result<PreBlochElement<T>> {
    let one = Complex::new(T::one(), T::zero());
    let z = e.exp();
    if (one - z).norm() <= lit::<T>(1e-12) || z.norm() == T::zero() {
        return Err(Error::Domain("χ(e) requires exp(e) ∉ {0, 1}".into()));
    }
    let f = plog(one - z)?;
    let base = FlattenedShape::from_logs(e, f, z, Flavor::Sl)?;
    let shifted = FlattenedShape::from_logs(e, f + k_pi_i::<T>(2), z, Flavor::Sl)?;
    let mut out = PreBlochElement::zero(Flavor::Sl);
    out.push(1, shifted);
    out.push(-1, base);
    Ok(out)
}

/// χ extended to all of ℂ/4πiℤ: zero on 4πiℤ, and split as
/// `χ(e − log 2) + χ(log 2)` where `exp(e) = 1`.
pub fn chi_any<T: Real>(e: Complex<T>) -> PreBlochElement<T> {
    let four_pi = T::PI() * int::<T>(4);
    let one = Complex::new(T::one(), T::zero());
    let k = (e.im / four_pi).round();
    let reduced = Complex::new(e.re, e.im - k * four_pi);
    if reduced.norm() <= lit::<T>(1e-12) {
        return PreBlochElement::zero(Flavor::Sl);
    }
    if (one - reduced.exp()).norm() <= lit::<T>(1e-6) {
        let ln2 = Complex::new(lit::<T>(2.0).ln(), T::zero());
        let mut out = chi(reduced - ln2).expect("shifted argument is nondegenerate");
        out.extend(&chi(ln2).expect("log 2 is nondegenerate"));
        return out;
    }
    chi(reduced).expect("nondegenerate argument")
}

/// `Σ (−1)ⁱ R(shapeᵢ)` for a lifted five-term tuple, after checking the
/// side conditions.
pub fn five_term_defect<T: Real>(shapes: &[FlattenedShape<T>; 5], tol: T) -> Result<ModLatticeValue<T>> {
    let [s0, s1, s2, s3, s4] = shapes;
    let checks: [(&'static str, Complex<T>, Complex<T>); 5] = [
        ("e2 = e1 - e0", s2.e, s1.e - s0.e),
        ("e3 = e1 - e0 - f1 + f0", s3.e, s1.e - s0.e - s1.f + s0.f),
        ("f3 = f2 - f1", s3.f, s2.f - s1.f),
        ("e4 = f0 - f1", s4.e, s0.f - s1.f),
        ("f4 = f2 - f1 + e0", s4.f, s2.f - s1.f + s0.e),
    ];
    for (equation, lhs, rhs) in checks {
        let r = (lhs - rhs).norm();
        if r > tol {
            return Err(Error::FiveTermCondition { equation, residual: r.to_f64().unwrap_or(f64::NAN) });
        }
    }
    let mut acc = ModLatticeValue::zero(Lattice::FourPiSquared);
    for (i, s) in shapes.iter().enumerate() {
        let r = s.rogers();
        acc = if i % 2 == 0 { acc + r } else { acc - r };
    }
    Ok(acc)
}

/// `(e + 2Δp·πi, f + 2Δq·πi)` together with the correction
/// `χ(2ΔpΔq·πi + Δq·e − Δp·f)` relating it to the original shape.
pub fn shift_pq<T: Real>(shape: &FlattenedShape<T>, dp: i64, dq: i64) -> (FlattenedShape<T>, PreBlochElement<T>) {
    let shifted = FlattenedShape::from_logs(
        shape.e + k_pi_i::<T>(2 * dp),
        shape.f + k_pi_i::<T>(2 * dq),
        shape.z,
        shape.flavor,
    )
    .expect("shift of a valid shape is valid");
    if dp == 0 && dq == 0 {
        return (shifted, PreBlochElement::zero(shape.flavor));
    }
    let x = k_pi_i::<T>(2 * dp * dq) + shape.e * int::<T>(dq) - shape.f * int::<T>(dp);
    (shifted, chi_any(x))
}

/// Termwise complex conjugation.
pub fn conjugate_element<T: Real>(x: &PreBlochElement<T>) -> PreBlochElement<T> {
    x.conjugate()
}
