use bloch_core::geometric_reps::{
    ccs_from_pullback, geometric_multiplier, kappa, kappa_conjugator, lie_image, mixed_trace_multiplier,
    nilpotent_traces, rep_table, sym_power, tau, tau_minkowski_form, trace_multiplier, LieBasis, RepDescriptor,
};
use bloch_core::matrix::CMatrix;
use num_complex::Complex64 as C;
use proptest::prelude::*;

type Curve = fn(f64) -> [[C; 2]; 2];

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn norm(m: &CMatrix<f64>) -> f64 {
    m.max_abs_diff(&CMatrix::zeros(m.rows(), m.cols()))
}

fn sl2() -> impl Strategy<Value = CMatrix<f64>> {
    let entry = || (-1.5f64..1.5, -1.5f64..1.5).prop_map(|(x, y)| c(x, y));
    (entry(), entry(), entry()).prop_filter_map("invertible a", |(a, b, cc)| {
        (a.norm() > 0.2).then(|| CMatrix::from_2x2([[a, b], [cc, (1.0 + b * cc) / a]]))
    })
}

/// Coefficients of `Π (x − rᵢ)`, highest degree first.
fn poly_from_roots(roots: &[C]) -> Vec<C> {
    let mut p = vec![c(1.0, 0.0)];
    for &r in roots {
        let mut next = p.clone();
        next.push(c(0.0, 0.0));
        for (i, &x) in p.iter().enumerate() {
            next[i + 1] -= r * x;
        }
        p = next;
    }
    p
}

fn eigenvalues_2x2(a: &CMatrix<f64>) -> [C; 2] {
    let t = a[(0, 0)] + a[(1, 1)];
    let s = (t * t - 4.0 * a.det()).sqrt();
    [(t + s) / 2.0, (t - s) / 2.0]
}

#[test]
fn sym_power_of_diagonal() {
    let t = c(0.7, 0.4);
    let a = CMatrix::from_2x2([[t, c(0.0, 0.0)], [c(0.0, 0.0), 1.0 / t]]);
    let m = sym_power(&a, 4).unwrap();
    let want = [t.powi(3), t, t.powi(-1), t.powi(-3)];
    for i in 0..4 {
        for j in 0..4 {
            let w = if i == j { want[i] } else { c(0.0, 0.0) };
            assert!((m[(i, j)] - w).norm() < 1e-13);
        }
    }
    let b = CMatrix::from_2x2([[c(1.0, 1.0), c(2.0, 0.0)], [c(0.0, 1.0), c(1.0, 1.0)]]);
    let b = b.scale(c(1.0, 0.0) / b.det().sqrt());
    assert!(sym_power(&b, 2).unwrap().max_abs_diff(&b) < 1e-15);
    let bad = CMatrix::from_2x2([[c(2.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]);
    assert!(sym_power(&bad, 3).is_err());
    assert!(tau(&bad).is_err() && kappa(&bad).is_err());
}

#[test]
fn sym_power_on_explicit_polynomials() {
    // A acts on x^{2-k} y^k through x ↦ a x + c y, y ↦ b x + d y.
    let (a, b, cc) = (c(1.1, 0.2), c(-0.3, 0.5), c(0.4, -0.6));
    let d = (1.0 + b * cc) / a;
    let m = sym_power(&CMatrix::from_2x2([[a, b], [cc, d]]), 3).unwrap();
    let cols = [[a * a, 2.0 * a * cc, cc * cc], [a * b, a * d + b * cc, cc * d], [b * b, 2.0 * b * d, d * d]];
    for (k, col) in cols.iter().enumerate() {
        for (j, &v) in col.iter().enumerate() {
            assert!((m[(j, k)] - v).norm() < 1e-14);
        }
    }
}

#[test]
fn lie_images() {
    let h = lie_image(LieBasis::H, 3);
    assert_eq!([h.get(0, 0), h.get(1, 1), h.get(2, 2)], [2, 0, -2]);
    let x = lie_image(LieBasis::X, 2);
    assert_eq!([x.get(0, 0), x.get(0, 1), x.get(1, 0), x.get(1, 1)], [0, 1, 0, 0]);
    for n in 2..=10 {
        assert!(lie_image(LieBasis::X, n).is_strictly_upper());
        assert!(lie_image(LieBasis::Y, n).is_strictly_lower());
    }
}

#[test]
fn lie_images_are_derivatives() {
    let step = 1e-6;
    let gens: [(LieBasis, Curve); 3] = [
        (LieBasis::H, |t: f64| [[c(t.exp(), 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c((-t).exp(), 0.0)]]),
        (LieBasis::X, |t: f64| [[c(1.0, 0.0), c(t, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]),
        (LieBasis::Y, |t: f64| [[c(1.0, 0.0), c(0.0, 0.0)], [c(t, 0.0), c(1.0, 0.0)]]),
    ];
    for (which, gen) in gens {
        for n in 2..=6 {
            let plus = sym_power(&CMatrix::from_2x2(gen(step)), n).unwrap();
            let minus = sym_power(&CMatrix::from_2x2(gen(-step)), n).unwrap();
            let want = lie_image(which, n).to_complex::<f64>();
            for i in 0..n {
                for j in 0..n {
                    let d = (plus[(i, j)] - minus[(i, j)]) / (2.0 * step);
                    assert!((d - want[(i, j)]).norm() < 1e-6, "{which:?} n={n}");
                }
            }
        }
    }
}

#[test]
fn invariant_polynomial_multipliers() {
    assert_eq!(trace_multiplier(2), 2);
    assert_eq!(trace_multiplier(3), 8);
    assert_eq!(trace_multiplier(4), 20);
    for n in 2..=10 {
        let diag_sq: i64 = (0..n as i64).map(|k| (n as i64 - 1 - 2 * k).pow(2)).sum();
        assert_eq!(trace_multiplier(n), diag_sq);
        assert_eq!(trace_multiplier(n), 2 * binom(n as i64 + 1, 3));
        assert_eq!(geometric_multiplier(n), binom(n as i64 + 1, 3));
        assert_eq!(nilpotent_traces(n), (0, 0));
        assert_eq!(RepDescriptor::Rho(n).multiplier().vol_mult(), geometric_multiplier(n));
    }
}

#[test]
fn mixed_multipliers() {
    assert_eq!(mixed_trace_multiplier(2, 2), (2, 2));
    assert_eq!(mixed_trace_multiplier(3, 2), (8, 3));
    for n in 2..=6 {
        for m in 2..=6 {
            let (a, b) = mixed_trace_multiplier(n, m);
            assert_eq!(a, m as i64 * binom(n as i64 + 1, 3));
            assert_eq!(b, n as i64 * binom(m as i64 + 1, 3));
        }
    }
    let m = RepDescriptor::TensorConjPair(2, 2).multiplier();
    assert_eq!((m.vol_mult(), m.cs_mult()), (0, 4));
}

#[test]
fn rep_table_matches_printed_rows() {
    let printed = [
        ("rho4", 10, 10),
        ("conj(rho4)", -10, 10),
        ("rho2(x)conj(rho2)", 0, 4),
        ("rho3+1", 4, 4),
        ("conj(rho3)+1", -4, 4),
        ("rho2+rho2", 2, 2),
        ("rho2+conj(rho2)", 0, 2),
        ("rho2+1+1", 1, 1),
        ("conj(rho2)+1+1", -1, 1),
        ("1^4", 0, 0),
    ];
    let table = rep_table();
    assert_eq!(table.len(), printed.len());
    for (row, (name, vol, cs)) in table.iter().zip(printed) {
        assert_eq!(row.rep.to_string(), name);
        assert_eq!(row.rep.dim(), 4, "{name}");
        assert_eq!((row.vol_mult, row.cs_mult), (vol, cs), "{name}");
    }
}

#[test]
fn pullback_bookkeeping() {
    assert_eq!(ccs_from_pullback(c(2.0, -4.0), 2).unwrap(), c(1.0, -2.0));
    assert!(ccs_from_pullback(c(1.0, 0.0), 0).is_err());
}

#[test]
fn tau_and_kappa_examples() {
    let i4 = CMatrix::<f64>::identity(4);
    let i2 = CMatrix::<f64>::identity(2);
    assert!(tau(&i2).unwrap().max_abs_diff(&i4) < 1e-15);
    assert!(tau(&i2.scale(c(-1.0, 0.0))).unwrap().max_abs_diff(&i4) < 1e-15);
    assert!(kappa(&i2).unwrap().max_abs_diff(&i4) < 1e-15);

    let a = CMatrix::from_2x2([[c(0.0, 1.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, -1.0)]]);
    let k = kappa(&a).unwrap();
    let rot = [[0.0, 1.0, 0.0, 0.0], [-1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, -1.0], [0.0, 0.0, 1.0, 0.0]];
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(k[(i, j)], c(rot[i][j], 0.0));
        }
    }
    let m = kappa_conjugator::<f64>();
    let conj = &(&m.inverse().unwrap() * &k) * &m;
    let diag = [c(0.0, 1.0), c(0.0, -1.0), c(0.0, -1.0), c(0.0, 1.0)];
    for i in 0..4 {
        for j in 0..4 {
            let w = if i == j { diag[i] } else { c(0.0, 0.0) };
            assert!((conj[(i, j)] - w).norm() < 1e-14);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn tau_properties(a in sl2(), b in sl2()) {
        let (ta, tb) = (tau(&a).unwrap(), tau(&b).unwrap());
        let tab = tau(&(&a * &b)).unwrap();
        prop_assert!(tab.max_abs_diff(&(&ta * &tb)) < 1e-9 * (1.0 + norm(&ta) * norm(&tb)));
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!(ta[(i, j)].im.abs() < 1e-12 * (1.0 + norm(&ta)));
            }
        }
        prop_assert!((ta.det() - 1.0).norm() < 1e-9 * norm(&ta).powi(4));
        prop_assert!(tau(&a.scale(c(-1.0, 0.0))).unwrap().max_abs_diff(&ta) < 1e-12 * norm(&ta));

        let j = tau_minkowski_form::<f64>();
        let form = &(&ta.transpose() * &j) * &ta;
        prop_assert!(form.max_abs_diff(&j) < 1e-9 * norm(&ta).powi(2));

        let [l1, l2] = eigenvalues_2x2(&a);
        let roots: Vec<C> = [l1, l2].iter().flat_map(|&x| [l1, l2].map(|y| x * y.conj())).collect();
        let want = poly_from_roots(&roots);
        // c_k of a 4x4 matrix is a sum of (4−k)-fold products of entries.
        let scale = 1.0 + norm(&ta);
        for (k, (x, y)) in ta.char_poly().iter().zip(want.iter().rev()).enumerate() {
            prop_assert!((x - y).norm() < 1e-9 * scale.powi(4 - k as i32), "k={} {} vs {}", k, x, y);
        }
    }

    #[test]
    fn kappa_properties(a in sl2(), b in sl2()) {
        let (ka, kb) = (kappa(&a).unwrap(), kappa(&b).unwrap());
        let kab = kappa(&(&a * &b)).unwrap();
        prop_assert!(kab.max_abs_diff(&(&ka * &kb)) < 1e-10 * (1.0 + norm(&ka) * norm(&kb)));
        prop_assert!((ka.det() - 1.0).norm() < 1e-9 * (1.0 + norm(&ka).powi(4)));
        for i in 0..4 {
            for j in 0..4 {
                prop_assert_eq!(ka[(i, j)].im, 0.0);
            }
        }
        let m = kappa_conjugator::<f64>();
        let conj = &(&m.inverse().unwrap() * &ka) * &m;
        prop_assert!(conj.max_abs_diff(&a.direct_sum(&a.conj())) < 1e-10 * (1.0 + norm(&a)));
    }

    #[test]
    fn sym_power_is_a_homomorphism(a in sl2(), b in sl2(), n in 2usize..=6) {
        let ab = sym_power(&(&a * &b), n).unwrap();
        let prod = &sym_power(&a, n).unwrap() * &sym_power(&b, n).unwrap();
        prop_assert!(ab.max_abs_diff(&prod) < 1e-10 * (1.0 + norm(&prod)) * n as f64);
        prop_assert!((sym_power(&a, n).unwrap().det() - 1.0).norm() < 1e-8 * (1.0 + norm(&a).powi(2 * n as i32)));
    }

    #[test]
    fn sym_power_respects_conjugation(a in sl2(), g in sl2(), n in 2usize..=5) {
        let gi = g.inverse_2x2().unwrap();
        let lhs = sym_power(&(&(&g * &a) * &gi), n).unwrap();
        let rhs = &(&sym_power(&g, n).unwrap() * &sym_power(&a, n).unwrap()) * &sym_power(&gi, n).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-9 * (1.0 + norm(&rhs)) * (n * n) as f64);
    }
}
