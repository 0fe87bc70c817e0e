//! JSON file formats. Rationals are written as `"num/den"` strings; on
//! input plain JSON integers are accepted too. Every load error names the
//! source and either a line/column (syntax and type errors) or a JSON path
//! (validation errors).

use std::path::Path;

use bihom_core::algebra::rational::{self, Rational};
use bihom_core::forms::{BiForm, BinaryForm, LineEmbed, LineKind, PointPair, ProjPoint, Shape};
use bihom_core::structure::{Instance, SpecialLine, WitnessDecomposition};
use bihom_core::tangential::JetK;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{source_name}:{line}:{column}: {msg}")]
    Syntax { source_name: String, line: usize, column: usize, msg: String },
    #[error("{source_name}: at {path}: {msg}")]
    Invalid { source_name: String, path: String, msg: String },
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
}

/// A rational on input: `"num/den"`, `"n"` or a JSON integer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Str(String),
    Int(i64),
}

impl From<&Rational> for Num {
    fn from(r: &Rational) -> Self {
        Num::Str(rational::format(r))
    }
}

pub fn nums(v: &[Rational]) -> Vec<Num> {
    v.iter().map(Num::from).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub e1: Vec<usize>,
    pub e2: Vec<usize>,
    pub c: Num,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiFormJson {
    pub n1: usize,
    pub n2: usize,
    pub d1: usize,
    pub d2: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointPairJson {
    pub p1: Vec<Num>,
    pub p2: Vec<Num>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedPointJson {
    pub w: Num,
    pub p1: Vec<Num>,
    pub p2: Vec<Num>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinaryFormJson {
    pub d: usize,
    pub coeffs: Vec<Num>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JetJson {
    pub degrees: Vec<usize>,
    pub base: Vec<Vec<Num>>,
    pub dir: Vec<Vec<Num>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineJson {
    /// `"alpha"` (line x point) or `"beta"` (point x line).
    pub kind: String,
    /// The fixed point in the other factor.
    pub base: Vec<Num>,
    /// The line is `s a + t b`.
    pub a: Vec<Num>,
    pub b: Vec<Num>,
    #[serde(default)]
    pub members: Vec<PointPairJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetadataJson {
    pub line: LineJson,
    #[serde(rename = "E")]
    pub e: Vec<PointPairJson>,
    pub b: usize,
    pub rank: usize,
    pub q_form: BinaryFormJson,
    pub seed: u64,
    pub coord_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub p: BiFormJson,
    #[serde(rename = "S")]
    pub s: Vec<WeightedPointJson>,
    #[serde(rename = "A")]
    pub a: Vec<WeightedPointJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<MetadataJson>,
}

/// Names the input in error messages.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub source: String,
}

impl Ctx {
    pub fn new(source: impl Into<String>) -> Self {
        Ctx { source: source.into() }
    }

    pub fn invalid(&self, path: &str, msg: impl std::fmt::Display) -> FormatError {
        FormatError::Invalid { source_name: self.source.clone(), path: path.to_string(), msg: msg.to_string() }
    }

    pub fn parse<T: DeserializeOwned>(&self, text: &str) -> Result<T, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::Syntax {
            source_name: self.source.clone(),
            line: e.line(),
            column: e.column(),
            msg: strip_position(&e.to_string()),
        })
    }

    pub fn rational(&self, path: &str, n: &Num) -> Result<Rational, FormatError> {
        match n {
            Num::Int(i) => Ok(rational::int(*i)),
            Num::Str(s) => rational::parse(s).map_err(|e| self.invalid(path, e)),
        }
    }

    pub fn vector(&self, path: &str, v: &[Num]) -> Result<Vec<Rational>, FormatError> {
        v.iter().enumerate().map(|(i, n)| self.rational(&format!("{path}[{i}]"), n)).collect()
    }

    pub fn point(&self, path: &str, v: &[Num]) -> Result<ProjPoint, FormatError> {
        ProjPoint::new(self.vector(path, v)?).map_err(|e| self.invalid(path, e))
    }

    pub fn point_pair(&self, path: &str, p: &PointPairJson) -> Result<PointPair, FormatError> {
        Ok(PointPair { p1: self.point(&format!("{path}.p1"), &p.p1)?, p2: self.point(&format!("{path}.p2"), &p.p2)? })
    }

    pub fn biform(&self, path: &str, f: &BiFormJson) -> Result<BiForm, FormatError> {
        let shape = Shape::new(f.n1, f.n2, f.d1, f.d2).map_err(|e| self.invalid(path, e))?;
        let mut terms = Vec::with_capacity(f.terms.len());
        for (i, t) in f.terms.iter().enumerate() {
            let tp = format!("{path}.terms[{i}]");
            check_exponent(self, &format!("{tp}.e1"), &t.e1, f.n1 + 1, f.d1)?;
            check_exponent(self, &format!("{tp}.e2"), &t.e2, f.n2 + 1, f.d2)?;
            terms.push((t.e1.clone(), t.e2.clone(), self.rational(&format!("{tp}.c"), &t.c)?));
        }
        BiForm::from_terms(shape, terms).map_err(|e| self.invalid(path, e))
    }

    pub fn binary_form(&self, path: &str, q: &BinaryFormJson) -> Result<BinaryForm, FormatError> {
        if q.coeffs.len() != q.d + 1 {
            return Err(self.invalid(
                &format!("{path}.coeffs"),
                format!("degree {} needs {} coefficients, found {}", q.d, q.d + 1, q.coeffs.len()),
            ));
        }
        BinaryForm::new(self.vector(&format!("{path}.coeffs"), &q.coeffs)?).map_err(|e| self.invalid(path, e))
    }

    pub fn jet(&self, path: &str, j: &JetJson) -> Result<JetK, FormatError> {
        let vecs = |name: &str, v: &[Vec<Num>]| -> Result<Vec<Vec<Rational>>, FormatError> {
            v.iter().enumerate().map(|(i, x)| self.vector(&format!("{path}.{name}[{i}]"), x)).collect()
        };
        JetK::new(j.degrees.clone(), vecs("base", &j.base)?, vecs("dir", &j.dir)?).map_err(|e| self.invalid(path, e))
    }

    pub fn witness(&self, path: &str, shape: Shape, w: &[WeightedPointJson]) -> Result<WitnessDecomposition, FormatError> {
        let mut terms = Vec::with_capacity(w.len());
        for (i, t) in w.iter().enumerate() {
            let tp = format!("{path}[{i}]");
            let pt = PointPair { p1: self.point(&format!("{tp}.p1"), &t.p1)?, p2: self.point(&format!("{tp}.p2"), &t.p2)? };
            terms.push((self.rational(&format!("{tp}.w"), &t.w)?, pt));
        }
        WitnessDecomposition::new(shape, terms).map_err(|e| self.invalid(path, e))
    }

    /// `(p, S, A)` of an instance file; metadata is not needed for analysis.
    pub fn instance(&self, inst: &InstanceJson) -> Result<(BiForm, WitnessDecomposition, WitnessDecomposition), FormatError> {
        let p = self.biform("p", &inst.p)?;
        let s = self.witness("S", p.shape(), &inst.s)?;
        let a = self.witness("A", p.shape(), &inst.a)?;
        Ok((p, s, a))
    }

    pub fn line(&self, path: &str, l: &LineJson) -> Result<SpecialLine, FormatError> {
        let kind = match l.kind.as_str() {
            "alpha" => LineKind::Alpha,
            "beta" => LineKind::Beta,
            other => return Err(self.invalid(&format!("{path}.kind"), format!("expected \"alpha\" or \"beta\", got {other:?}"))),
        };
        let line = LineEmbed::new(self.vector(&format!("{path}.a"), &l.a)?, self.vector(&format!("{path}.b"), &l.b)?)
            .map_err(|e| self.invalid(path, e))?;
        let members = l
            .members
            .iter()
            .enumerate()
            .map(|(i, m)| self.point_pair(&format!("{path}.members[{i}]"), m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SpecialLine { kind, base: self.point(&format!("{path}.base"), &l.base)?, line, members })
    }
}

fn check_exponent(ctx: &Ctx, path: &str, e: &[usize], vars: usize, degree: usize) -> Result<(), FormatError> {
    if e.len() != vars {
        return Err(ctx.invalid(path, format!("expected {vars} exponents, found {}", e.len())));
    }
    let sum: usize = e.iter().sum();
    if sum != degree {
        return Err(ctx.invalid(path, format!("exponents sum to {sum}, expected {degree}")));
    }
    Ok(())
}

/// serde_json appends " at line L column C"; the position is reported
/// separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|e| FormatError::Io(path.display().to_string(), e))
}

/// Reads and parses a JSON file.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<(Ctx, T), FormatError> {
    let ctx = Ctx::new(path.display().to_string());
    let text = read_file(path)?;
    let value = ctx.parse(&text)?;
    Ok((ctx, value))
}

pub fn biform_json(f: &BiForm) -> BiFormJson {
    let s = f.shape();
    BiFormJson {
        n1: s.n1,
        n2: s.n2,
        d1: s.d1,
        d2: s.d2,
        terms: f.terms().map(|(e1, e2, c)| TermJson { e1: e1.to_vec(), e2: e2.to_vec(), c: c.into() }).collect(),
    }
}

pub fn point_pair_json(p: &PointPair) -> PointPairJson {
    PointPairJson { p1: nums(p.p1.coords()), p2: nums(p.p2.coords()) }
}

pub fn witness_json(w: &WitnessDecomposition) -> Vec<WeightedPointJson> {
    w.terms
        .iter()
        .map(|(c, p)| WeightedPointJson { w: c.into(), p1: nums(p.p1.coords()), p2: nums(p.p2.coords()) })
        .collect()
}

pub fn binary_form_json(q: &BinaryForm) -> BinaryFormJson {
    BinaryFormJson { d: q.degree(), coeffs: nums(q.coeffs()) }
}

pub fn jet_json(j: &JetK) -> JetJson {
    JetJson {
        degrees: j.degrees().to_vec(),
        base: j.base().iter().map(|v| nums(v)).collect(),
        dir: j.dir().iter().map(|v| nums(v)).collect(),
    }
}

pub fn line_json(l: &SpecialLine) -> LineJson {
    LineJson {
        kind: kind_name(l.kind).to_string(),
        base: nums(l.base.coords()),
        a: nums(l.line.a()),
        b: nums(l.line.b()),
        members: l.members.iter().map(point_pair_json).collect(),
    }
}

pub fn kind_name(k: LineKind) -> &'static str {
    match k {
        LineKind::Alpha => "alpha",
        LineKind::Beta => "beta",
    }
}

pub fn instance_json(inst: &Instance) -> InstanceJson {
    let m = &inst.meta;
    InstanceJson {
        p: biform_json(&inst.p),
        s: witness_json(&inst.s),
        a: witness_json(&inst.a),
        metadata: Some(MetadataJson {
            line: line_json(&m.slice),
            e: m.e.iter().map(point_pair_json).collect(),
            b: m.b,
            rank: m.rank,
            q_form: binary_form_json(&m.q_form),
            seed: m.seed,
            coord_bound: m.coord_bound,
        }),
    }
}

/// `(p, S, A)` without metadata, e.g. as a failure payload.
pub fn pair_json(p: &BiForm, s: &WitnessDecomposition, a: &WitnessDecomposition) -> InstanceJson {
    InstanceJson { p: biform_json(p), s: witness_json(s), a: witness_json(a), metadata: None }
}

pub fn parse_shape(s: &str) -> Result<Shape, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("shape {s:?}: expected n1,n2,d1,d2"));
    }
    let v = parts
        .iter()
        .map(|p| p.parse::<usize>().map_err(|_| format!("shape {s:?}: {p:?} is not a nonnegative integer")))
        .collect::<Result<Vec<_>, _>>()?;
    Shape::new(v[0], v[1], v[2], v[3]).map_err(|e| format!("shape {s:?}: {e}"))
}
