use bloch_core::complex_kernel::{bloch_wigner, li2, plog, rogers_branch, Lattice, ModLatticeValue};
use num_complex::Complex64 as C;
use proptest::prelude::*;
use std::f64::consts::PI;

const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

/// Direct power series, slow but independent of the kernel's acceleration.
fn li2_series(z: C) -> C {
    let mut sum = C::new(0.0, 0.0);
    let mut pw = z;
    for k in 1..200_000u32 {
        let term = pw / (k as f64 * k as f64);
        sum += term;
        if term.norm() < 1e-18 {
            break;
        }
        pw *= z;
    }
    sum
}

/// Clausen function Cl₂(θ) = Σ sin(kθ)/k².
fn clausen(theta: f64) -> f64 {
    (1..400_000).map(|k| (k as f64 * theta).sin() / (k as f64 * k as f64)).sum()
}

#[test]
fn li2_special_values() {
    let ln2 = 2f64.ln();
    let cases = [
        (C::new(-1.0, 0.0), C::new(-PI * PI / 12.0, 0.0)),
        (C::new(0.5, 0.0), C::new(PI * PI / 12.0 - ln2 * ln2 / 2.0, 0.0)),
        (C::new(1.0, 0.0), C::new(PI * PI / 6.0, 0.0)),
        (C::new(0.0, 1.0), C::new(-PI * PI / 48.0, CATALAN)),
        (C::new(2.0, 0.0), C::new(PI * PI / 4.0, -PI * ln2)),
    ];
    for (z, want) in cases {
        assert!((li2(z) - want).norm() < 1e-13, "Li2({z}) = {} want {want}", li2(z));
    }
}

#[test]
fn plog_branch() {
    assert_eq!(plog(C::new(-2.0, 0.0)).unwrap().im, PI);
    assert_eq!(plog(C::new(-2.0, -0.0)).unwrap().im, PI);
    assert!(plog(C::new(0.0, 0.0)).is_err());
}

#[test]
fn bloch_wigner_on_unit_circle_is_clausen() {
    for k in 1..12 {
        let t = k as f64 * 0.5;
        let d = bloch_wigner(C::from_polar(1.0, t)).unwrap();
        assert!((d - clausen(t)).abs() < 1e-5, "θ={t}");
    }
}

#[test]
fn lattice_reduction() {
    let m = 4.0 * PI * PI;
    let v = ModLatticeValue::new(C::new(3.0 * m + 1.0, 2.0), Lattice::FourPiSquared);
    assert!((v.reduced(1e-9) - C::new(1.0, 2.0)).norm() < 1e-12);
    let w = ModLatticeValue::new(C::new(m - 1e-12, 0.0), Lattice::FourPiSquared);
    assert!(w.residual_to_zero() < 1e-11);
    assert!(v.coarsen(Lattice::PiSquared).lattice == Lattice::PiSquared);
}

proptest! {
    #[test]
    fn li2_matches_series_inside_disk(r in 0.0f64..0.9, t in -PI..PI) {
        let z = C::from_polar(r, t);
        prop_assert!((li2(z) - li2_series(z)).norm() < 1e-12);
    }

    #[test]
    fn li2_reflection(x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let z = C::new(x, y);
        prop_assume!(z.norm() > 1e-3 && (C::new(1.0, 0.0) - z).norm() > 1e-3 && y.abs() > 1e-9);
        let lhs = li2(z) + li2(1.0 - z);
        let rhs = PI * PI / 6.0 - z.ln() * (1.0 - z).ln();
        prop_assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn rogers_five_term(x0 in -2.0f64..2.0, y0 in 0.05f64..2.0, x1 in -2.0f64..2.0, y1 in 0.05f64..2.0) {
        // classical five-term relation on the upper half plane
        let x = C::new(x0, y0);
        let y = C::new(x1, y1);
        let d = |z: C| bloch_wigner(z).unwrap();
        let one = C::new(1.0, 0.0);
        let s = d(x) + d(y) + d((one - x) / (one - x * y)) + d(one - x * y) + d((one - y) / (one - x * y));
        prop_assume!((one - x * y).norm() > 1e-3);
        prop_assert!(s.abs() < 1e-9);
    }

    #[test]
    fn rogers_branch_shift(x in -3.0f64..3.0, y in 0.01f64..3.0, p in -3i64..3, q in -3i64..3) {
        // R(e, f+2πi) − R(e, f) = −πi·e
        let z = C::new(x, y);
        let r0 = rogers_branch(z, 2 * p, 2 * q).unwrap();
        let r1 = rogers_branch(z, 2 * p, 2 * q + 2).unwrap();
        let e = plog(z).unwrap() + C::new(0.0, 2.0 * PI * p as f64);
        let d = ModLatticeValue::new(r1 - r0 + C::new(0.0, PI) * e, Lattice::FourPiSquared);
        prop_assert!(d.residual_to_zero() < 1e-10);
    }
}
