//! Consistent lifts over glued coordinates and the fundamental class.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde_json::{json, Value};

use super::ptolemy::{alphas, is_generic, lambda_element, ptolemy_coords, signed_coords, PtolemyAssignment, Weight};
use super::{obstruction_signs, Decoration, Triangulation, UnionFind, VertexId};
use crate::complex_kernel::{plog, ModLatticeValue};
use crate::error::{Error, Result};
use crate::extended_bloch::{Flavor, PreBlochElement};
use crate::scalar::{k_pi_i, lit, tol, Real};

/// Coordinate identified by its vertices and their multiplicities.
pub type CoordKey = Vec<(VertexId, usize)>;

const GENERIC_THRESHOLD: f64 = 1e-12;
const MATCH_TOL: f64 = 1e-8;

fn coord_key(vertices: &[VertexId; 4], t: &Weight) -> CoordKey {
    vertices.iter().zip(t).filter(|(_, &k)| k > 0).map(|(v, &k)| (v.clone(), k)).collect()
}

/// PSL when a rank-2 decoration carries a nontrivial obstruction, SL otherwise.
pub fn natural_flavor<T: Real>(dec: &Decoration<T>) -> Flavor {
    if dec.n == 2 && dec.has_obstruction() {
        Flavor::Psl
    } else {
        Flavor::Sl
    }
}

/// One logarithm per class of identified coordinates.
pub type Lifts<T> = BTreeMap<CoordKey, Complex<T>>;

/// Ptolemy data of a decorated triangulation with a consistent lift.
#[derive(Debug, Clone)]
pub struct ClassData<T> {
    pub flavor: Flavor,
    pub n: usize,
    pub orientations: Vec<i64>,
    pub signs: Vec<[i64; 4]>,
    /// Per-simplex coordinates, obstruction-signed at rank 2.
    pub assignments: Vec<PtolemyAssignment<T>>,
    pub lifts: Lifts<T>,
    classes: Vec<BTreeMap<Weight, (CoordKey, i64)>>,
}

impl<T: Real> ClassData<T> {
    pub fn new(tri: &Triangulation, dec: &Decoration<T>, flavor: Flavor) -> Result<Self> {
        let n = dec.n;
        if n == 2 && dec.has_obstruction() && flavor == Flavor::Sl {
            return Err(Error::Inconsistent(
                "a nontrivial obstruction cycle needs the PSL flavor".into(),
            ));
        }
        let mut assignments = Vec::with_capacity(tri.simplices.len());
        let mut signs = Vec::with_capacity(tri.simplices.len());
        for (k, s) in tri.simplices.iter().enumerate() {
            let mats = [dec.matrix(&s.vertices[0])?, dec.matrix(&s.vertices[1])?, dec.matrix(&s.vertices[2])?, dec.matrix(&s.vertices[3])?];
            let raw = ptolemy_coords(mats, n);
            if !is_generic(&raw, lit(GENERIC_THRESHOLD)) {
                return Err(Error::NonGeneric(format!(
                    "simplex {k} has a vanishing Ptolemy coordinate; a barycentric subdivision is needed"
                )));
            }
            let sg = if n == 2 { obstruction_signs(tri, dec, k) } else { [1; 4] };
            assignments.push(if n == 2 { signed_coords(&raw, sg)? } else { raw });
            signs.push(sg);
        }

        let mut uf: UnionFind<CoordKey> = UnionFind::new();
        for g in &tri.gluings {
            let from = &tri.simplices[g.from.simplex];
            let opp = tri.opposite_position(&g.from)?;
            let map: BTreeMap<&VertexId, &VertexId> = g.from.vertices.iter().zip(&g.to.vertices).collect();
            for t in assignments[g.from.simplex].coords.keys() {
                if t[opp] != 0 {
                    continue;
                }
                let a = coord_key(&from.vertices, t);
                let b: CoordKey = a.iter().map(|(v, k)| (map[v].clone(), *k)).collect();
                uf.union(&a, &b);
            }
        }

        let mut values: BTreeMap<CoordKey, Complex<T>> = BTreeMap::new();
        let mut classes = Vec::with_capacity(assignments.len());
        for (k, s) in tri.simplices.iter().enumerate() {
            let scale = assignments[k].coords.values().fold(T::one(), |m, c| m.max(c.norm()));
            let mut map = BTreeMap::new();
            for (t, &c) in &assignments[k].coords {
                let rep = uf.find(&coord_key(&s.vertices, t));
                let v = *values.entry(rep.clone()).or_insert(c);
                let tol = tol::<T>(MATCH_TOL) * scale;
                let offset = if (c - v).norm() <= tol {
                    0
                } else if (c + v).norm() <= tol && flavor == Flavor::Psl {
                    1
                } else {
                    return Err(Error::Inconsistent(format!(
                        "glued coordinates disagree at simplex {k}, t = {t:?}: {c} vs {v}"
                    )));
                };
                map.insert(*t, (rep, offset));
            }
            classes.push(map);
        }
        let lifts = values.into_iter().map(|(k, v)| Ok((k, plog(v)?))).collect::<Result<Lifts<T>>>()?;
        Ok(ClassData {
            flavor,
            n,
            orientations: tri.simplices.iter().map(|s| s.orientation).collect(),
            signs,
            assignments,
            lifts,
            classes,
        })
    }

    /// Lifted logarithm of `c_t` in simplex `k`.
    pub fn lift(&self, k: usize, t: &Weight) -> Option<Complex<T>> {
        let (key, offset) = self.classes.get(k)?.get(t)?;
        Some(self.lifts.get(key)? + k_pi_i::<T>(*offset))
    }

    pub fn class_keys(&self) -> Vec<CoordKey> {
        self.lifts.keys().cloned().collect()
    }

    /// Moves the lift of a coordinate class by `2πi·k`.
    pub fn shift_lift(&mut self, key: &CoordKey, k: i64) {
        if let Some(v) = self.lifts.get_mut(key) {
            *v = *v + k_pi_i::<T>(2 * k);
        }
    }

    /// `Σ_α λ(c_α)` for simplex `k`, without its orientation sign.
    pub fn simplex_element(&self, k: usize) -> Result<PreBlochElement<T>> {
        let mut out = PreBlochElement::zero(self.flavor);
        for alpha in alphas(self.n) {
            out.push(1, lambda_element(|t| self.lift(k, t), alpha, self.flavor)?);
        }
        Ok(out)
    }

    /// `Σ εₖ Σ_α λ(c^k_α)`.
    pub fn fundamental_class(&self) -> Result<PreBlochElement<T>> {
        let mut out = PreBlochElement::zero(self.flavor);
        for (k, &eps) in self.orientations.iter().enumerate() {
            out.extend_scaled(&self.simplex_element(k)?, eps);
        }
        Ok(out)
    }
}

/// `λ(K, ρ)` with the default lift.
pub fn fundamental_class<T: Real>(tri: &Triangulation, dec: &Decoration<T>, flavor: Flavor) -> Result<PreBlochElement<T>> {
    ClassData::new(tri, dec, flavor)?.fundamental_class()
}

/// A class with its Rogers value, volume and Chern-Simons invariant.
#[derive(Debug, Clone)]
pub struct ClassReport<T> {
    pub class: PreBlochElement<T>,
    pub r: ModLatticeValue<T>,
    pub volume: T,
    pub cs: T,
}

impl<T: Real> ClassReport<T> {
    /// `R = −CS + i·Vol`; CS is reported in `(−m/2, m/2]`.
    pub fn new(class: PreBlochElement<T>) -> Self {
        let r = class.rogers();
        let centered = r.centered();
        let mut cs = -centered.re;
        let half = r.modulus() * lit::<T>(0.5);
        if cs <= -half {
            cs = cs + r.modulus();
        }
        ClassReport { class, r, volume: centered.im, cs: cs + T::zero() }
    }

    pub fn to_json(&self) -> Value {
        let v = |x: T| x.to_f64().unwrap_or(f64::NAN);
        let c = self.r.centered();
        json!({
            "class": self.class.to_json(),
            "R": { "re": v(c.re), "im": v(c.im), "modulus": self.r.lattice.label() },
            "volume": v(self.volume),
            "cs": v(self.cs),
        })
    }
}
