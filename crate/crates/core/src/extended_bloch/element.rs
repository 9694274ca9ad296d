//! Formal integer combinations of flattened shapes.

use num_complex::Complex;
use serde_json::{json, Value};

use super::{FlattenedShape, Flavor};
use crate::complex_kernel::ModLatticeValue;
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Serialized term `[coef, Re e, Im e, Re f, Im f]`.
pub type Record = (i64, [f64; 4]);

/// An element of the extended pre-Bloch group, kept as a list of terms.
#[derive(Debug, Clone, PartialEq)]
pub struct PreBlochElement<T> {
    terms: Vec<(i64, FlattenedShape<T>)>,
    flavor: Flavor,
}

impl<T: Real> PreBlochElement<T> {
    pub fn zero(flavor: Flavor) -> Self {
        PreBlochElement { terms: Vec::new(), flavor }
    }

    pub fn from_shape(shape: FlattenedShape<T>) -> Self {
        PreBlochElement { terms: vec![(1, shape)], flavor: shape.flavor() }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn terms(&self) -> &[(i64, FlattenedShape<T>)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Appends `coef·shape`; a PSL shape turns the element into a PSL one.
    pub fn push(&mut self, coef: i64, shape: FlattenedShape<T>) {
        if coef == 0 {
            return;
        }
        self.flavor = self.flavor.coarser(shape.flavor());
        self.terms.push((coef, shape));
    }

    pub fn extend(&mut self, other: &Self) {
        self.extend_scaled(other, 1);
    }

    pub fn extend_scaled(&mut self, other: &Self, k: i64) {
        self.flavor = self.flavor.coarser(other.flavor);
        for &(c, s) in &other.terms {
            if c * k != 0 {
                self.terms.push((c * k, s));
            }
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = PreBlochElement::zero(self.flavor);
        out.extend_scaled(self, k);
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.extend(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.extend_scaled(other, -1);
        out
    }

    /// Merges coordinatewise-equal shapes and drops zero coefficients,
    /// keeping first-occurrence order.
    pub fn canonicalize(&self, tol: T) -> Self {
        let mut merged: Vec<(i64, FlattenedShape<T>)> = Vec::new();
        for &(c, s) in &self.terms {
            match merged.iter_mut().find(|(_, t)| t.approx_eq(&s, tol)) {
                Some(entry) => entry.0 += c,
                None => merged.push((c, s)),
            }
        }
        merged.retain(|(c, _)| *c != 0);
        PreBlochElement { terms: merged, flavor: self.flavor }
    }

    /// `R` extended linearly.
    pub fn rogers(&self) -> ModLatticeValue<T> {
        let mut acc = ModLatticeValue::zero(self.flavor.lattice());
        for &(c, s) in &self.terms {
            let r = s.rogers();
            acc = acc + ModLatticeValue::new(r.value * lit::<T>(c as f64), r.lattice);
        }
        acc
    }

    /// Termwise conjugation `(e, f) ↦ (ē, f̄)`.
    pub fn conjugate(&self) -> Self {
        PreBlochElement {
            terms: self.terms.iter().map(|&(c, s)| (c, s.conj())).collect(),
            flavor: self.flavor,
        }
    }

    pub fn to_records(&self) -> Vec<Record> {
        self.terms
            .iter()
            .map(|&(c, s)| {
                let (e, f) = (s.e(), s.f());
                let v = |x: T| x.to_f64().unwrap_or(f64::NAN);
                (c, [v(e.re), v(e.im), v(f.re), v(f.im)])
            })
            .collect()
    }

    /// JSON list of `[coef, Re e, Im e, Re f, Im f]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.to_records()
                .into_iter()
                .map(|(c, [a, b, x, y])| json!([c, a, b, x, y]))
                .collect(),
        )
    }

    pub fn from_records(records: &[Record], flavor: Flavor) -> Result<Self> {
        let mut out = PreBlochElement::zero(flavor);
        for (i, &(c, [a, b, x, y])) in records.iter().enumerate() {
            let e = Complex::new(lit::<T>(a), lit::<T>(b));
            let f = Complex::new(lit::<T>(x), lit::<T>(y));
            let s = FlattenedShape::new(e, f, flavor).map_err(|err| Error::Load {
                location: format!("term {i}"),
                message: err.to_string(),
            })?;
            out.terms.push((c, s));
        }
        Ok(out)
    }

    pub fn from_json(value: &Value, flavor: Flavor) -> Result<Self> {
        let load = |loc: String, msg: &str| Error::Load { location: loc, message: msg.to_string() };
        let arr = value.as_array().ok_or_else(|| load("element".into(), "expected a list of records"))?;
        let mut records = Vec::with_capacity(arr.len());
        for (i, rec) in arr.iter().enumerate() {
            let r = rec
                .as_array()
                .filter(|r| r.len() == 5)
                .ok_or_else(|| load(format!("term {i}"), "expected [coef, Re e, Im e, Re f, Im f]"))?;
            let c = r[0].as_i64().ok_or_else(|| load(format!("term {i}"), "coefficient must be an integer"))?;
            let mut xs = [0.0; 4];
            for (k, slot) in xs.iter_mut().enumerate() {
                *slot = r[k + 1].as_f64().ok_or_else(|| load(format!("term {i}"), "coordinate must be a number"))?;
            }
            records.push((c, xs));
        }
        Self::from_records(&records, flavor)
    }
}
