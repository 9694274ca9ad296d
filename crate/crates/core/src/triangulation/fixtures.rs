//! Built-in figure-eight knot complement.

use std::collections::BTreeMap;

use num_complex::Complex;

use super::{Decoration, FaceRef, Gluing, Simplex, Triangulation};
use crate::matrix::CMatrix;
use crate::scalar::{lit, Real};

fn ids<const N: usize>(xs: [&str; N]) -> [String; N] {
    xs.map(str::to_string)
}

/// Two simplices `(v₀,v₁,v₂,v₄)` and `(v₁,v₂,v₃,v₄)` with three gluings; the
/// fourth face pair `(v₁,v₂,v₄)` is shared by vertex names.
pub fn figure_eight_triangulation() -> Triangulation {
    let face = |simplex: usize, vs: [&str; 3]| FaceRef { simplex, vertices: ids(vs) };
    Triangulation::new(
        vec![
            Simplex { vertices: ids(["v0", "v1", "v2", "v4"]), orientation: 1 },
            Simplex { vertices: ids(["v1", "v2", "v3", "v4"]), orientation: -1 },
        ],
        vec![
            Gluing { from: face(0, ["v0", "v1", "v2"]), to: face(1, ["v1", "v3", "v4"]) },
            Gluing { from: face(0, ["v0", "v2", "v4"]), to: face(1, ["v1", "v2", "v3"]) },
            Gluing { from: face(0, ["v0", "v1", "v4"]), to: face(1, ["v2", "v3", "v4"]) },
        ],
    )
    .expect("figure-eight triangulation is valid")
}

/// Boundary-parabolic decoration of the geometric representation, with
/// `ω = exp(iπ/3)` and its obstruction cycle.
pub fn figure_eight_decoration<T: Real>() -> Decoration<T> {
    let c = |re: f64, im: f64| Complex::new(lit::<T>(re), lit::<T>(im));
    let s = 3f64.sqrt() / 2.0;
    let w = c(0.5, s);
    let w2 = c(-0.5, s);
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let mut cosets = BTreeMap::new();
    cosets.insert("v0".to_string(), CMatrix::identity(2));
    cosets.insert("v1".to_string(), CMatrix::from_2x2([[zero, -one], [one, zero]]));
    cosets.insert("v2".to_string(), CMatrix::from_2x2([[-w, -w2], [-w, zero]]));
    cosets.insert("v3".to_string(), CMatrix::from_2x2([[-one, zero], [w2 - one, -one]]));
    cosets.insert("v4".to_string(), CMatrix::from_2x2([[-w, one], [-one, zero]]));
    let mut obstruction = BTreeMap::new();
    obstruction.insert("v0,v1,v2".to_string(), 1);
    obstruction.insert("v0,v1,v4".to_string(), 1);
    Decoration::new(2, cosets, obstruction).expect("figure-eight decoration is valid")
}

pub fn figure_eight<T: Real>() -> (Triangulation, Decoration<T>) {
    (figure_eight_triangulation(), figure_eight_decoration())
}
