//! End-to-end comparison of the rank-4 class of `ρ⊗ρ̄` with
//! `2·class + 2·conj(class)`.

use num_complex::Complex;
use serde_json::{json, Value};

use super::{lifted_lambda_table, tensor_decoration, zpq_of, StandardSimplexCoords};
use crate::complex_kernel::{plog, ModLatticeValue};
use crate::error::Result;
use crate::extended_bloch::{FlattenedShape, Flavor, PreBlochElement};
use crate::scalar::{tol, Real};
use crate::triangulation::{natural_flavor, ptolemy_coords, ClassData, Decoration, Triangulation};

fn r_json<T: Real>(r: &ModLatticeValue<T>) -> Value {
    let c = r.centered();
    json!({
        "re": c.re.to_f64(),
        "im": c.im.to_f64(),
        "modulus": r.lattice.label(),
    })
}

/// One simplex: the ten fixed-lift shapes against `2λ + 2·conj(λ)` of the
/// rank-2 shape.
#[derive(Debug, Clone)]
pub struct SimplexCancel<T> {
    pub z: Complex<T>,
    pub zpq: Option<(i64, i64)>,
    pub tensor: PreBlochElement<T>,
    pub doubled: PreBlochElement<T>,
    pub lhs_r: ModLatticeValue<T>,
    pub rhs_r: ModLatticeValue<T>,
    pub residual: T,
}

impl<T: Real> SimplexCancel<T> {
    pub fn to_json(&self, index: usize) -> Value {
        let (p, q) = match self.zpq {
            Some((p, q)) => (json!(p), json!(q)),
            None => (Value::Null, Value::Null),
        };
        json!({
            "simplex": index,
            "z": { "re": self.z.re.to_f64(), "im": self.z.im.to_f64() },
            "p": p,
            "q": q,
            "lhs_R": r_json(&self.lhs_r),
            "rhs_R": r_json(&self.rhs_r),
            "residual": self.residual.to_f64(),
        })
    }
}

/// Simplexwise cancellation for standard-form coordinates, signed ones
/// being evaluated in the PSL flavor.
pub fn simplex_cancel<T: Real>(coords: &StandardSimplexCoords<T>) -> Result<SimplexCancel<T>> {
    let flavor = if coords.is_signed() { Flavor::Psl } else { Flavor::Sl };
    let mut tensor = PreBlochElement::zero(flavor);
    for s in lifted_lambda_table(coords)? {
        tensor.push(1, s);
    }
    let l = |x: Complex<T>| plog(x);
    let e = l(coords.c)? + l(coords.d)? - l(coords.b)? - l(coords.e)?;
    let f = l(coords.a)? + l(coords.f)? - l(coords.b)? - l(coords.e)?;
    let base = FlattenedShape::with_tolerance(e, f, flavor, tol(1e-8))?;
    let mut doubled = PreBlochElement::zero(flavor);
    doubled.push(2, base);
    doubled.push(2, base.conj());
    let lhs_r = tensor.rogers();
    let rhs_r = doubled.rogers();
    Ok(SimplexCancel {
        z: coords.cross_ratio(),
        zpq: zpq_of(coords).ok().map(|(_, p, q)| (p, q)),
        residual: lhs_r.residual(&rhs_r),
        tensor,
        doubled,
        lhs_r,
        rhs_r,
    })
}

#[derive(Debug, Clone)]
pub struct Theorem1Report<T> {
    pub lhs_r: ModLatticeValue<T>,
    pub rhs_r: ModLatticeValue<T>,
    pub residual: T,
    pub per_simplex: Vec<SimplexCancel<T>>,
    /// Residual of `Σ εₖ` (fixed-lift tensor sum) against `Σ εₖ(2λₖ + 2λ̄ₖ)`.
    pub simplexwise_residual: T,
}

impl<T: Real> Theorem1Report<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "lhs_R": r_json(&self.lhs_r),
            "rhs_R": r_json(&self.rhs_r),
            "residual": self.residual.to_f64(),
            "modulus": self.lhs_r.lattice.coarser(self.rhs_r.lattice).label(),
            "per_simplex": self.per_simplex.iter().enumerate().map(|(i, s)| s.to_json(i)).collect::<Vec<_>>(),
            "simplexwise_residual": self.simplexwise_residual.to_f64(),
        })
    }
}

/// Rank-4 class of the tensor decoration against `2·class + 2·conj(class)`
/// of the rank-2 decoration.
pub fn theorem1_check<T: Real>(tri: &Triangulation, dec: &Decoration<T>) -> Result<Theorem1Report<T>> {
    let flavor2 = natural_flavor(dec);
    let class2 = ClassData::new(tri, dec, flavor2)?.fundamental_class()?;
    let rhs = class2.scaled(2).plus(&class2.conjugate().scaled(2));
    let dec4 = tensor_decoration(dec)?;
    let lhs = ClassData::new(tri, &dec4, Flavor::Sl)?.fundamental_class()?;
    let lhs_r = lhs.rogers();
    let rhs_r = rhs.rogers();

    let mut per_simplex = Vec::with_capacity(tri.simplices.len());
    let mut tensor_total = PreBlochElement::zero(Flavor::Sl);
    let mut doubled_total = PreBlochElement::zero(Flavor::Sl);
    for s in &tri.simplices {
        let mats = [dec.matrix(&s.vertices[0])?, dec.matrix(&s.vertices[1])?, dec.matrix(&s.vertices[2])?, dec.matrix(&s.vertices[3])?];
        let raw = ptolemy_coords(mats, 2);
        let coords = StandardSimplexCoords::from_all(raw.edge_coords()?, [1; 4])?;
        let sc = simplex_cancel(&coords)?;
        tensor_total.extend_scaled(&sc.tensor, s.orientation);
        doubled_total.extend_scaled(&sc.doubled, s.orientation);
        per_simplex.push(sc);
    }
    Ok(Theorem1Report {
        residual: lhs_r.residual(&rhs_r),
        lhs_r,
        rhs_r,
        per_simplex,
        simplexwise_residual: tensor_total.rogers().residual(&doubled_total.rogers()),
    })
}
