use std::f64::consts::PI;

use bloch_core::complex_kernel::{plog, Lattice, ModLatticeValue};
use bloch_core::extended_bloch::{FlattenedShape, Flavor, PreBlochElement};
use bloch_core::matrix::CMatrix;
use bloch_core::tensor_construction::{
    lifted_lambda_table, ptolemy_closed_table, simplex_cancel, tensor_decoration, tensor_lifts, tensor_ptolemy,
    theorem1_check, toy_bloch_check, verify_cancellation, verify_corfive, verify_corsum, zpq_of, zpq_table, Region,
    StandardSimplexCoords, ALPHAS, TENSOR_WEIGHTS,
};
use bloch_core::triangulation::{figure_eight, ptolemy_coords, ClassData};
use bloch_core::Error;
use num_complex::Complex64 as C;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Determinant by cofactor expansion along the first row.
fn det(m: &[Vec<C>]) -> C {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<C>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * m[0][j] * det(&minor)
        })
        .collect::<Vec<C>>()
        .into_iter()
        .sum()
}

/// `A ⊗ Ā` entrywise for a 2×2 matrix given by rows.
fn kron_conj(a: [[C; 2]; 2]) -> [[C; 4]; 4] {
    let mut out = [[C::new(0.0, 0.0); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * a[k][l].conj();
                }
            }
        }
    }
    out
}

/// Rank-4 Ptolemy coordinate `c_t` from the first `tᵢ` columns of each matrix.
fn oracle(mats: &[[[C; 4]; 4]; 4], t: [usize; 4]) -> C {
    let mut cols: Vec<[C; 4]> = Vec::new();
    for (m, &k) in mats.iter().zip(&t) {
        cols.extend((0..k).map(|j| m.map(|row| row[j])));
    }
    let rows: Vec<Vec<C>> = (0..4).map(|i| cols.iter().map(|col| col[i]).collect()).collect();
    det(&rows)
}

fn standard_2x2(co: &StandardSimplexCoords<f64>) -> [[[C; 2]; 2]; 4] {
    let (a, b, cc, d, e) = (co.a, co.b, co.c, co.d, co.e);
    let one = c(1.0, 0.0);
    let z = c(0.0, 0.0);
    [[[one, z], [z, one]], [[z, -one / a], [a, z]], [[-d / a, -one / b], [b, z]], [[-e / a, -one / cc], [cc, z]]]
}

fn mod4(x: C) -> f64 {
    ModLatticeValue::new(x, Lattice::FourPiSquared).residual_to_zero()
}

fn polar() -> impl Strategy<Value = C> {
    (-1.0f64..1.0, -PI..PI).prop_map(|(r, t)| C::from_polar(r.exp(), t))
}

fn coords() -> impl Strategy<Value = StandardSimplexCoords<f64>> {
    (polar(), polar(), polar(), polar(), polar())
        .prop_filter_map("generic", |(a, b, cc, d, e)| {
            let co = StandardSimplexCoords::new(a, b, cc, d, e).ok()?;
            let z = co.cross_ratio();
            (z.im.abs() > 1e-3 * z.norm() && co.f.norm() > 1e-3).then_some(co)
        })
}

fn signed_coords() -> impl Strategy<Value = StandardSimplexCoords<f64>> {
    (polar(), polar(), polar(), polar(), polar(), proptest::array::uniform4(proptest::bool::ANY)).prop_filter_map(
        "generic",
        |(a, b, cc, d, e, s)| {
            let signs = s.map(|x| if x { 1 } else { -1 });
            let co = StandardSimplexCoords::with_signs(a, b, cc, d, e, signs).ok()?;
            let z = co.cross_ratio();
            (z.im.abs() > 1e-3 * z.norm() && co.f.norm() > 1e-3).then_some(co)
        },
    )
}

fn nonreal() -> impl Strategy<Value = C> {
    (-3.0f64..4.0, 0.01f64..3.0, proptest::bool::ANY).prop_map(|(x, y, up)| c(x, if up { y } else { -y }))
}

#[test]
fn tensor_decoration_of_figure_eight_vertex() {
    let (_, dec) = figure_eight::<f64>();
    let d4 = tensor_decoration(&dec).unwrap();
    let m = &d4.cosets["v1"];
    for i in 0..4 {
        for j in 0..4 {
            let want = match (i, j) {
                (0, 3) | (3, 0) => 1.0,
                (1, 2) | (2, 1) => -1.0,
                _ => 0.0,
            };
            assert_eq!(m[(i, j)], c(want, 0.0));
        }
    }
    assert_eq!(d4.cosets["v0"], CMatrix::identity(4));
}

#[test]
fn region_boundaries() {
    assert_eq!(Region::of(c(0.0, 1.0)).unwrap(), Region::UpperMiddle);
    assert_eq!(Region::of(c(1.0, 1.0)).unwrap(), Region::UpperRight);
    assert_eq!(Region::of(c(0.0, -1.0)).unwrap(), Region::LowerLeft);
    assert_eq!(Region::of(c(1.0, -1.0)).unwrap(), Region::LowerMiddle);
    assert!(matches!(Region::of(c(0.5, 0.0)), Err(Error::Degenerate(_))));
}

#[test]
fn table_spot_entries() {
    let co = StandardSimplexCoords::new(c(1.2, 0.3), c(-0.4, 0.9), c(0.7, -1.1), c(2.0, 0.5), c(-0.3, -0.8)).unwrap();
    let t = tensor_ptolemy(&co);
    assert_eq!(t.len(), 31);
    assert!((t[&[2, 1, 1, 0]] - co.a * co.b * co.d.conj()).norm() < 1e-14);
    let w = co.b.conj() * co.c * co.d * co.e.conj();
    assert!((t[&[1, 1, 1, 1]] - c(0.0, 2.0 * w.im)).norm() < 1e-14);
    assert!((t[&[3, 1, 0, 0]] - co.a.norm_sqr()).norm() < 1e-14);
    assert!((t[&[0, 0, 1, 3]] + co.f.norm_sqr()).norm() < 1e-14);
}

#[test]
fn real_cross_ratio_is_degenerate() {
    // z = cd/(be) = 2 with everything real.
    let co = StandardSimplexCoords::new(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)).unwrap();
    assert!(matches!(tensor_lifts(&co), Err(Error::Degenerate(_))));
    assert!(lifted_lambda_table(&co).is_err());
    assert_eq!(tensor_ptolemy(&co)[&[1, 1, 1, 1]], c(0.0, 0.0));
}

#[test]
fn lambda_closed_form_examples() {
    let co = StandardSimplexCoords::new(c(1.2, 0.3), c(-0.4, 0.9), c(0.7, -1.1), c(2.0, 0.5), c(-0.3, -0.8)).unwrap();
    let lam = lifted_lambda_table(&co).unwrap();
    let lc = |x: C| plog(x).unwrap().conj();
    let e = -lc(co.b) + lc(co.c) + lc(co.d) - lc(co.e);
    let f = lc(co.a) - lc(co.b) - lc(co.e) + lc(co.f);
    assert!((lam[0].e() - e).norm() < 1e-13 && (lam[0].f() - f).norm() < 1e-13);
    let (z, p, q) = zpq_of(&co).unwrap();
    let zt = zpq_table(z, p, q).unwrap();
    let zb = z.conj();
    let two_pi_i = c(0.0, 2.0 * PI);
    assert!((zt[0].e() - (plog(zb).unwrap() - p as f64 * two_pi_i)).norm() < 1e-12);
    assert!((zt[0].f() - (plog(1.0 - zb).unwrap() - q as f64 * two_pi_i)).norm() < 1e-12);
    assert_eq!(ALPHAS[7], [0, 0, 2, 0]);
}

#[test]
fn cancellation_examples() {
    assert!(verify_cancellation(c(0.3, 0.4), 0, 0).unwrap() < 1e-8);
    assert!(verify_cancellation(c(0.3, -0.4), 1, -1).unwrap() < 1e-8);
    for z in [c(1.5, 0.2), c(-0.5, 0.7), c(-0.5, -0.7), c(1.5, -0.2), c(0.0, 1.0), c(1.0, -0.5)] {
        assert!(verify_cancellation(z, 2, 1).unwrap() < 1e-8, "{z}");
    }
    assert!(toy_bloch_check(c(0.3, 0.4)).unwrap() < 1e-9);
    assert!(toy_bloch_check(c(0.3, -0.4)).unwrap() < 1e-9);
    assert!(toy_bloch_check(c(0.3, 0.0)).is_err());
}

#[test]
fn figure_eight_theorem1() {
    let (tri, dec) = figure_eight::<f64>();
    let report = theorem1_check(&tri, &dec).unwrap();
    assert!(report.residual < 1e-8);
    assert_eq!(report.lhs_r.lattice, Lattice::FourPiSquared);
    assert!(report.lhs_r.residual_to_zero() < 1e-8);
    assert!(report.simplexwise_residual < 1e-8);

    let d4 = tensor_decoration(&dec).unwrap();
    let class = ClassData::new(&tri, &d4, Flavor::Sl).unwrap().fundamental_class().unwrap();
    assert!(class.rogers().residual_to_zero() < 1e-8);
}

#[test]
fn figure_eight_simplexwise_offset() {
    // The fixed lifts give (z, p, q) = (ω̄, 1, 0) on the first simplex, which
    // puts its tensor sum −4π²/3 away from 2(log ω̄, log ω) + 2(log ω, log ω̄).
    let (tri, dec) = figure_eight::<f64>();
    let report = theorem1_check(&tri, &dec).unwrap();
    let s = &report.per_simplex[0];
    let w = c(0.5, 3f64.sqrt() / 2.0);
    assert!((s.z - w.conj()).norm() < 1e-14);
    assert_eq!(s.zpq, Some((1, 0)));
    let l = |x: C| plog(x).unwrap();
    let mut printed = PreBlochElement::zero(Flavor::Sl);
    printed.push(2, FlattenedShape::new(l(w.conj()), l(w), Flavor::Sl).unwrap());
    printed.push(2, FlattenedShape::new(l(w), l(w.conj()), Flavor::Sl).unwrap());
    let diff = s.lhs_r.value - printed.rogers().value;
    assert!(mod4(diff + 4.0 * PI * PI / 3.0) < 1e-10);
}

#[test]
fn scaling_covariance() {
    let co = StandardSimplexCoords::new(c(1.2, 0.3), c(-0.4, 0.9), c(0.7, -1.1), c(2.0, 0.5), c(-0.3, -0.8)).unwrap();
    let h = CMatrix::from_2x2([[c(0.5, 1.0), c(2.0, -1.0)], [c(0.3, 0.1), c(0.0, 0.0)]]);
    let h = h.scale(C::new(1.0, 0.0) / h.det().sqrt());
    let mats = co.standard_matrices();
    let moved: Vec<CMatrix<f64>> = mats.iter().map(|m| &h * m).collect();
    let before = ptolemy_coords([&mats[0], &mats[1], &mats[2], &mats[3]], 2);
    let after = ptolemy_coords([&moved[0], &moved[1], &moved[2], &moved[3]], 2);
    for (t, v) in &before.coords {
        assert!((after.coords[t] - v).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn table_matches_determinant_oracle(co in coords()) {
        let mats = standard_2x2(&co).map(kron_conj);
        let table = tensor_ptolemy(&co);
        for t in TENSOR_WEIGHTS {
            let want = oracle(&mats, t);
            prop_assert!((table[&t] - want).norm() <= 1e-9 * want.norm(), "{:?}: {} vs {}", t, table[&t], want);
        }
    }

    #[test]
    fn tensor_decoration_is_multiplicative(a in coords(), b in coords()) {
        let (ma, mb) = (&a.standard_matrices()[2], &b.standard_matrices()[3]);
        let ab = ma * mb;
        let lhs = ab.kron(&ab.conj());
        let rhs = &ma.kron(&ma.conj()) * &mb.kron(&mb.conj());
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10 * (1.0 + lhs.max_abs_diff(&CMatrix::zeros(4, 4))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn closed_forms_match_lambda(co in coords()) {
        let lam = lifted_lambda_table(&co).unwrap();
        for (s, (e, f)) in lam.iter().zip(ptolemy_closed_table(&co).unwrap()) {
            prop_assert!((s.e() - e).norm() < 1e-9 && (s.f() - f).norm() < 1e-9);
        }
    }

    #[test]
    fn zpq_table_matches_lambda(co in coords()) {
        let lam = lifted_lambda_table(&co).unwrap();
        let (z, p, q) = zpq_of(&co).unwrap();
        for (s, t) in lam.iter().zip(zpq_table(z, p, q).unwrap()) {
            prop_assert!((s.e() - t.e()).norm() < 1e-9 && (s.f() - t.f()).norm() < 1e-9, "{:?} z={} p={} q={}", Region::of(z), z, p, q);
        }
    }

    #[test]
    fn corollaries_hold(z in nonreal(), p in -3i64..=3, q in -3i64..=3) {
        prop_assert!(verify_corsum(z, p, q).unwrap() < 1e-8);
        prop_assert!(verify_corfive(z, p, q).unwrap() < 1e-8);
        prop_assert!(verify_cancellation(z, p, q).unwrap() < 1e-8);
    }

    #[test]
    fn simplexwise_cancellation(co in coords()) {
        prop_assert!(simplex_cancel(&co).unwrap().residual < 1e-8);
    }

    #[test]
    fn signed_simplexwise_cancellation(co in signed_coords()) {
        let s = simplex_cancel(&co).unwrap();
        prop_assert!(s.residual < 1e-8);
        if co.is_signed() {
            prop_assert_eq!(s.lhs_r.lattice, Lattice::PiSquared);
        }
    }

    #[test]
    fn toy_identity(z in nonreal()) {
        prop_assert!(toy_bloch_check(z).unwrap() < 1e-9);
    }
}
