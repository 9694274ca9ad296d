//! Ordered ideal triangulations with coset decorations, Ptolemy coordinates
//! and fundamental classes.

mod class;
mod fixtures;
mod ptolemy;

pub use class::{fundamental_class, natural_flavor, ClassData, ClassReport, Lifts};
pub use fixtures::{figure_eight, figure_eight_decoration, figure_eight_triangulation};
pub use ptolemy::{
    alphas, check_ptolemy_relation, is_generic, lambda_element, ptolemy_coords, signed_coords, weights,
    PtolemyAssignment, Weight,
};

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{lit, Real};

pub type VertexId = String;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    pub vertices: [VertexId; 4],
    pub orientation: i64,
}

/// A face of a simplex named by its three vertices in simplex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceRef {
    pub simplex: usize,
    pub vertices: [VertexId; 3],
}

/// Order-preserving identification of two faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gluing {
    pub from: FaceRef,
    pub to: FaceRef,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Triangulation {
    pub simplices: Vec<Simplex>,
    pub gluings: Vec<Gluing>,
}

fn load_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Load { location: location.into(), message: message.into() }
}

fn id_of(v: &Value, loc: &str) -> Result<VertexId> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(load_err(loc, "vertex ids must be strings or integers")),
    }
}

/// Comma-joined vertex ids naming a face.
pub fn face_key(vertices: &[VertexId]) -> String {
    vertices.join(",")
}

impl Triangulation {
    pub fn new(simplices: Vec<Simplex>, gluings: Vec<Gluing>) -> Result<Self> {
        let t = Triangulation { simplices, gluings };
        t.validate()?;
        Ok(t)
    }

    /// Position of the vertex opposite a face, checking that the face
    /// vertices occur in simplex order.
    pub fn opposite_position(&self, face: &FaceRef) -> Result<usize> {
        let s = self
            .simplices
            .get(face.simplex)
            .ok_or_else(|| load_err(format!("simplex {}", face.simplex), "gluing references a missing simplex"))?;
        let mut positions = Vec::with_capacity(3);
        for v in &face.vertices {
            let p = s.vertices.iter().position(|w| w == v).ok_or_else(|| {
                load_err(format!("simplex {}", face.simplex), format!("vertex {v} is not in the simplex"))
            })?;
            positions.push(p);
        }
        if !(positions[0] < positions[1] && positions[1] < positions[2]) {
            return Err(load_err(
                format!("simplex {}", face.simplex),
                format!("face {} does not follow the simplex vertex order", face_key(&face.vertices)),
            ));
        }
        Ok((0..4).find(|p| !positions.contains(p)).expect("three of four positions used"))
    }

    pub fn validate(&self) -> Result<()> {
        for (i, s) in self.simplices.iter().enumerate() {
            if s.orientation != 1 && s.orientation != -1 {
                return Err(load_err(format!("simplex {i}"), "orientation must be 1 or -1"));
            }
            let distinct: BTreeSet<_> = s.vertices.iter().collect();
            if distinct.len() != 4 {
                return Err(load_err(format!("simplex {i}"), "vertices must be distinct"));
            }
        }
        let mut used = BTreeSet::new();
        for (g, gl) in self.gluings.iter().enumerate() {
            let a = (gl.from.simplex, self.opposite_position(&gl.from)?);
            let b = (gl.to.simplex, self.opposite_position(&gl.to)?);
            if a == b {
                return Err(load_err(format!("gluing {g}"), "a face cannot be glued to itself"));
            }
            for face in [a, b] {
                if !used.insert(face) {
                    return Err(load_err(
                        format!("gluing {g}"),
                        format!("face opposite position {} of simplex {} is glued twice", face.1, face.0),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Vertices of the face opposite position `k`.
    pub fn face_vertices(&self, simplex: usize, k: usize) -> [VertexId; 3] {
        let v = &self.simplices[simplex].vertices;
        let mut out: Vec<VertexId> = Vec::with_capacity(3);
        for (i, x) in v.iter().enumerate() {
            if i != k {
                out.push(x.clone());
            }
        }
        [out[0].clone(), out[1].clone(), out[2].clone()]
    }

    pub fn vertex_ids(&self) -> BTreeSet<VertexId> {
        self.simplices.iter().flat_map(|s| s.vertices.iter().cloned()).collect()
    }

    pub fn from_json(doc: &Value) -> Result<Self> {
        let obj = doc.as_object().ok_or_else(|| load_err("triangulation", "expected an object"))?;
        let mut simplices = Vec::new();
        let list = obj.get("simplices").and_then(Value::as_array).ok_or_else(|| load_err("simplices", "expected a list"))?;
        for (i, s) in list.iter().enumerate() {
            let loc = format!("simplices[{i}]");
            let vs = s.get("vertices").and_then(Value::as_array).filter(|v| v.len() == 4).ok_or_else(|| {
                load_err(&loc, "expected 4 vertices")
            })?;
            let ids: Vec<VertexId> = vs.iter().map(|v| id_of(v, &loc)).collect::<Result<_>>()?;
            let orientation = s.get("orientation").and_then(Value::as_i64).unwrap_or(1);
            simplices.push(Simplex {
                vertices: [ids[0].clone(), ids[1].clone(), ids[2].clone(), ids[3].clone()],
                orientation,
            });
        }
        let mut gluings = Vec::new();
        if let Some(list) = obj.get("gluings") {
            let list = list.as_array().ok_or_else(|| load_err("gluings", "expected a list"))?;
            for (g, gl) in list.iter().enumerate() {
                let loc = format!("gluings[{g}]");
                let face = |key: &str| -> Result<FaceRef> {
                    let arr = gl.get(key).and_then(Value::as_array).filter(|a| a.len() == 2).ok_or_else(|| {
                        load_err(&loc, format!("`{key}` must be [simplex, [three vertices]]"))
                    })?;
                    let simplex = arr[0].as_u64().ok_or_else(|| load_err(&loc, "simplex index must be a non-negative integer"))?;
                    let vs = arr[1].as_array().filter(|v| v.len() == 3).ok_or_else(|| load_err(&loc, "face needs three vertices"))?;
                    let ids: Vec<VertexId> = vs.iter().map(|v| id_of(v, &loc)).collect::<Result<_>>()?;
                    Ok(FaceRef { simplex: simplex as usize, vertices: [ids[0].clone(), ids[1].clone(), ids[2].clone()] })
                };
                gluings.push(Gluing { from: face("from")?, to: face("to")? });
            }
        }
        Triangulation::new(simplices, gluings)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "simplices": self.simplices.iter().map(|s| json!({
                "vertices": s.vertices.to_vec(),
                "orientation": s.orientation,
            })).collect::<Vec<_>>(),
            "gluings": self.gluings.iter().map(|g| json!({
                "from": [g.from.simplex, g.from.vertices.to_vec()],
                "to": [g.to.simplex, g.to.vertices.to_vec()],
            })).collect::<Vec<_>>(),
        })
    }
}

/// Coset representatives at the vertices together with an optional
/// obstruction cycle on faces.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoration<T> {
    pub n: usize,
    pub cosets: BTreeMap<VertexId, CMatrix<T>>,
    pub obstruction: BTreeMap<String, u8>,
}

impl<T: Real> Decoration<T> {
    pub fn new(n: usize, cosets: BTreeMap<VertexId, CMatrix<T>>, obstruction: BTreeMap<String, u8>) -> Result<Self> {
        if n < 2 {
            return Err(load_err("n", "rank must be at least 2"));
        }
        for (v, m) in &cosets {
            if m.rows() != n || m.cols() != n {
                return Err(load_err(format!("cosets.{v}"), format!("expected a {n}x{n} matrix")));
            }
            if m.det().norm() <= lit::<T>(1e-12) {
                return Err(load_err(format!("cosets.{v}"), "matrix is not invertible"));
            }
        }
        for (k, &x) in &obstruction {
            if x > 1 {
                return Err(load_err(format!("obstruction.{k}"), "values must be 0 or 1"));
            }
        }
        Ok(Decoration { n, cosets, obstruction })
    }

    pub fn has_obstruction(&self) -> bool {
        self.obstruction.values().any(|&x| x == 1)
    }

    pub fn matrix(&self, v: &str) -> Result<&CMatrix<T>> {
        self.cosets.get(v).ok_or_else(|| load_err(format!("cosets.{v}"), "vertex is not decorated"))
    }

    pub fn from_json(doc: &Value) -> Result<Self> {
        let obj = doc.as_object().ok_or_else(|| load_err("decoration", "expected an object"))?;
        let n = obj.get("n").and_then(Value::as_u64).ok_or_else(|| load_err("n", "expected a positive integer"))? as usize;
        let cosets_obj = obj.get("cosets").and_then(Value::as_object).ok_or_else(|| load_err("cosets", "expected an object"))?;
        let mut cosets = BTreeMap::new();
        for (v, m) in cosets_obj {
            let loc = format!("cosets.{v}");
            let rows = m.as_array().filter(|r| r.len() == n).ok_or_else(|| load_err(&loc, format!("expected {n} rows")))?;
            let mut parsed = Vec::with_capacity(n);
            for (i, row) in rows.iter().enumerate() {
                let entries = row.as_array().filter(|r| r.len() == n).ok_or_else(|| {
                    load_err(&loc, format!("row {i} must have {n} entries"))
                })?;
                let mut out = Vec::with_capacity(n);
                for x in entries {
                    let pair = x.as_array().filter(|p| p.len() == 2).ok_or_else(|| load_err(&loc, "entries are [re, im]"))?;
                    let re = pair[0].as_f64().ok_or_else(|| load_err(&loc, "entries must be numbers"))?;
                    let im = pair[1].as_f64().ok_or_else(|| load_err(&loc, "entries must be numbers"))?;
                    out.push(Complex::new(lit::<T>(re), lit::<T>(im)));
                }
                parsed.push(out);
            }
            cosets.insert(v.clone(), CMatrix::from_rows(&parsed));
        }
        let mut obstruction = BTreeMap::new();
        if let Some(ob) = obj.get("obstruction") {
            let ob = ob.as_object().ok_or_else(|| load_err("obstruction", "expected an object"))?;
            for (k, x) in ob {
                let x = x.as_u64().ok_or_else(|| load_err(format!("obstruction.{k}"), "values must be 0 or 1"))?;
                obstruction.insert(k.clone(), x.min(255) as u8);
            }
        }
        Decoration::new(n, cosets, obstruction)
    }

    pub fn to_json(&self) -> Value {
        let mut cosets = Map::new();
        for (v, m) in &self.cosets {
            let rows: Vec<Value> = (0..m.rows())
                .map(|i| {
                    Value::Array(
                        (0..m.cols())
                            .map(|j| {
                                let x = m[(i, j)];
                                json!([x.re.to_f64(), x.im.to_f64()])
                            })
                            .collect(),
                    )
                })
                .collect();
            cosets.insert(v.clone(), Value::Array(rows));
        }
        let mut out = json!({ "n": self.n, "cosets": cosets });
        if !self.obstruction.is_empty() {
            out["obstruction"] = json!(self.obstruction);
        }
        out
    }
}

/// Union-find over hashable keys with deterministic representatives.
#[derive(Debug, Clone, Default)]
pub(crate) struct UnionFind<K: Ord + Clone> {
    parent: BTreeMap<K, K>,
}

impl<K: Ord + Clone> UnionFind<K> {
    pub fn new() -> Self {
        UnionFind { parent: BTreeMap::new() }
    }

    pub fn find(&mut self, k: &K) -> K {
        let mut cur = k.clone();
        loop {
            let p = self.parent.entry(cur.clone()).or_insert_with(|| cur.clone()).clone();
            if p == cur {
                return cur;
            }
            cur = p;
        }
    }

    /// Joins two classes; the smaller key becomes the representative.
    pub fn union(&mut self, a: &K, b: &K) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            if ra < rb {
                self.parent.insert(rb, ra);
            } else {
                self.parent.insert(ra, rb);
            }
        }
    }
}

/// Glued face classes, keyed by face keys.
pub(crate) fn face_classes(tri: &Triangulation) -> UnionFind<String> {
    let mut uf = UnionFind::new();
    for g in &tri.gluings {
        uf.union(&face_key(&g.from.vertices), &face_key(&g.to.vertices));
    }
    uf
}

/// Obstruction signs `σ₀..σ₃` of a simplex, `σₖ` belonging to the face
/// opposite vertex `k`; an obstruction value set on any face of a glued class
/// applies to the whole class.
pub fn obstruction_signs<T: Real>(tri: &Triangulation, dec: &Decoration<T>, simplex: usize) -> [i64; 4] {
    let mut uf = face_classes(tri);
    let mut marked = BTreeSet::new();
    for (k, &x) in &dec.obstruction {
        if x == 1 {
            marked.insert(uf.find(k));
        }
    }
    let mut out = [1; 4];
    for (k, slot) in out.iter_mut().enumerate() {
        let key = face_key(&tri.face_vertices(simplex, k));
        if marked.contains(&uf.find(&key)) {
            *slot = -1;
        }
    }
    out
}
