//! JSON documents for every structure the CLI reads or writes.
//!
//! A document is `{"kind": ..., "payload": ..., "basis_labels": [...]}`. Rationals are
//! strings `"p/q"` or `"n"` (bare JSON integers are also accepted on input); matrices and
//! tensors are flat row-major lists with declared dimensions.

use std::fmt;

use serde::de::{self, DeserializeOwned, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::dirac_core::OmniSub;
use crate::error::Error;
use crate::exact_linalg::{format_rat, parse_rat, Rat, RatMatrix, Subspace, Tensor};
use crate::lie2_core::{BilinearFunctor, Lie2Morphism, Lie2Structure};
use crate::omni_core::OmniSpace;
use crate::gl_two::GlSpace;
use crate::twist_string::{AlphaCochain, QuadraticLieAlgebra, TwistMorphism};
use crate::two_vector::{make_sub2, Ambient2, Sub2VectorSpace, TwoTermComplex};

/// A rational number in its JSON string form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rat);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(&self.0))
    }
}

struct QVisitor;

impl Visitor<'_> for QVisitor {
    type Value = Q;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational as a string \"p/q\" or \"n\"")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
        parse_rat(v).map(Q).map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
        Ok(Q(Rat::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
        Ok(Q(Rat::from_integer(v.into())))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        d.deserialize_any(QVisitor)
    }
}

fn qs(v: &[Rat]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

fn rats(v: Vec<Q>) -> Vec<Rat> {
    v.into_iter().map(|q| q.0).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDto {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Q>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDto {
    pub dims: Vec<usize>,
    pub out: usize,
    pub data: Vec<Q>,
}

/// `d` is the `dim_v0 x dim_v1` matrix of the differential, row-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDto {
    pub dim_v1: usize,
    pub dim_v0: usize,
    pub d: Vec<Q>,
}

/// Missing `f01` means zero; missing `f10` means the skew partner of `f01`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BilinearDto {
    pub complex: ComplexDto,
    pub f00: TensorDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f01: Option<TensorDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f10: Option<TensorDto>,
}

/// A bilinear functor plus `l3` (zero when missing).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lie2Dto {
    pub complex: ComplexDto,
    pub f00: TensorDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f01: Option<TensorDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f10: Option<TensorDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l3: Option<TensorDto>,
}

/// Spanning vectors of the object space `s0` and of the kernel part `k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sub2Dto {
    pub s0: Vec<Vec<Q>>,
    pub k: Vec<Vec<Q>>,
}

/// A 2-sub-vector space of `gl(V) ⊕ V`. Object vectors are `[End0_d coordinates | u]`,
/// kernel vectors `[End1 coordinates | m]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmniSubDto {
    pub complex: ComplexDto,
    pub s0: Vec<Vec<Q>>,
    pub k: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticDto {
    pub dim: usize,
    pub bracket: TensorDto,
    pub ip: MatrixDto,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaDto {
    pub complex: ComplexDto,
    pub matrix: MatrixDto,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuDto {
    pub complex: ComplexDto,
    pub mu0: MatrixDto,
    pub mu1: MatrixDto,
    pub chi: TensorDto,
}

/// A strict Lie 2-algebra on a 2-sub-vector space `W` of `V`, in `W`'s canonical bases,
/// with an optional complement of `W`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubLie2Dto {
    pub complex: ComplexDto,
    pub w: Sub2Dto,
    pub f00: TensorDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f01: Option<TensorDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f10: Option<TensorDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement: Option<Sub2Dto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    kind: String,
    payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis_labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubLie2 {
    pub complex: TwoTermComplex,
    pub w: Sub2VectorSpace,
    pub bracket: BilinearFunctor,
    pub complement: Option<Sub2VectorSpace>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Complex(TwoTermComplex),
    Lie2(Lie2Structure),
    BilinearFunctor(BilinearFunctor),
    OmniSub { complex: TwoTermComplex, sub: OmniSub },
    Quadratic(QuadraticLieAlgebra),
    Alpha(AlphaCochain),
    Mu(TwistMorphism),
    SubLie2(SubLie2),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Complex(_) => "complex",
            Structure::Lie2(_) => "lie2",
            Structure::BilinearFunctor(_) => "bilinear_functor",
            Structure::OmniSub { .. } => "omni_sub",
            Structure::Quadratic(_) => "quadratic",
            Structure::Alpha(_) => "alpha",
            Structure::Mu(_) => "mu",
            Structure::SubLie2(_) => "sub_lie2",
        }
    }

    /// The underlying complex, when the structure has one.
    pub fn complex(&self) -> Option<&TwoTermComplex> {
        match self {
            Structure::Complex(c) => Some(c),
            Structure::Lie2(s) => Some(s.complex()),
            Structure::BilinearFunctor(f) => Some(f.complex()),
            Structure::OmniSub { complex, .. } => Some(complex),
            Structure::Quadratic(_) => None,
            Structure::Alpha(a) => Some(a.space().complex()),
            Structure::Mu(m) => Some(m.space.complex()),
            Structure::SubLie2(s) => Some(&s.complex),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub structure: Structure,
    pub basis_labels: Option<Vec<String>>,
}

impl Document {
    pub fn new(structure: Structure) -> Self {
        Document { structure, basis_labels: None }
    }
}

fn at(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Parse { .. } => e,
        other => Error::Parse { path: path.to_string(), msg: other.to_string() },
    }
}

fn decode<T: DeserializeOwned>(payload: Value) -> Result<T, Error> {
    serde_path_to_error::deserialize(payload).map_err(|e| {
        let inner = e.path().to_string();
        let path = if inner == "." { "payload".to_string() } else { format!("payload.{inner}") };
        Error::Parse { path, msg: e.into_inner().to_string() }
    })
}

fn matrix(m: MatrixDto, path: &str) -> Result<RatMatrix, Error> {
    RatMatrix::new(m.rows, m.cols, rats(m.data)).map_err(at(path))
}

fn tensor(t: TensorDto, path: &str) -> Result<Tensor, Error> {
    Tensor::new(&t.dims, t.out, rats(t.data)).map_err(at(path))
}

fn complex(c: ComplexDto, path: &str) -> Result<TwoTermComplex, Error> {
    let d = RatMatrix::new(c.dim_v0, c.dim_v1, rats(c.d)).map_err(at(&format!("{path}.d")))?;
    TwoTermComplex::new(c.dim_v1, c.dim_v0, d).map_err(at(path))
}

fn vectors(vs: Vec<Vec<Q>>, len: usize, path: &str) -> Result<Vec<Vec<Rat>>, Error> {
    vs.into_iter()
        .enumerate()
        .map(|(i, v)| {
            if v.len() != len {
                return Err(Error::Parse {
                    path: format!("{path}[{i}]"),
                    msg: format!("expected {len} entries, found {}", v.len()),
                });
            }
            Ok(rats(v))
        })
        .collect()
}

fn sub2(amb: &Ambient2, s0: Vec<Vec<Q>>, k: Vec<Vec<Q>>, path: &str) -> Result<Sub2VectorSpace, Error> {
    let s0 = vectors(s0, amb.obj_dim(), &format!("{path}.s0"))?;
    let k = vectors(k, amb.ker_dim(), &format!("{path}.k"))?;
    make_sub2(amb, Subspace::span(amb.obj_dim(), &s0), Subspace::span(amb.ker_dim(), &k)).map_err(at(path))
}

fn bilinear(
    c: &TwoTermComplex,
    f00: TensorDto,
    f01: Option<TensorDto>,
    f10: Option<TensorDto>,
) -> Result<BilinearFunctor, Error> {
    let (n0, n1) = (c.dim_v0(), c.dim_v1());
    let f00 = tensor(f00, "payload.f00")?;
    let f01 = match f01 {
        Some(t) => tensor(t, "payload.f01")?,
        None => Tensor::zeros(&[n0, n1], n1),
    };
    let f = match f10 {
        Some(t) => BilinearFunctor::new(c, f00, f01, tensor(t, "payload.f10")?),
        None => BilinearFunctor::skew(c, f00, f01),
    };
    f.map_err(at("payload"))
}

/// Parses a document, reporting the JSON path of the first problem.
pub fn parse_document(text: &str) -> Result<Document, Error> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let env: Envelope = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = match e.path().to_string() {
            p if p == "?" => ".".to_string(),
            p => p,
        };
        Error::Parse { path, msg: e.into_inner().to_string() }
    })?;
    let structure = match env.kind.as_str() {
        "complex" => Structure::Complex(complex(decode(env.payload)?, "payload")?),
        "lie2" => {
            let d: Lie2Dto = decode(env.payload)?;
            let c = complex(d.complex, "payload.complex")?;
            let f = bilinear(&c, d.f00, d.f01, d.f10)?;
            let (n0, n1) = (c.dim_v0(), c.dim_v1());
            let l3 = match d.l3 {
                Some(t) => tensor(t, "payload.l3")?,
                None => Tensor::zeros(&[n0, n0, n0], n1),
            };
            Structure::Lie2(Lie2Structure::new(f, l3).map_err(at("payload.l3"))?)
        }
        "bilinear_functor" => {
            let d: BilinearDto = decode(env.payload)?;
            let c = complex(d.complex, "payload.complex")?;
            Structure::BilinearFunctor(bilinear(&c, d.f00, d.f01, d.f10)?)
        }
        "omni_sub" => {
            let d: OmniSubDto = decode(env.payload)?;
            let c = complex(d.complex, "payload.complex")?;
            let space = OmniSpace::new(&c);
            let sub = sub2(space.ambient(), d.s0, d.k, "payload")?;
            Structure::OmniSub { complex: c, sub }
        }
        "quadratic" => {
            let d: QuadraticDto = decode(env.payload)?;
            let bracket = tensor(d.bracket, "payload.bracket")?;
            if bracket.out() != d.dim {
                return Err(Error::Parse {
                    path: "payload.bracket".into(),
                    msg: format!("bracket has output dimension {}, expected {}", bracket.out(), d.dim),
                });
            }
            let ip = matrix(d.ip, "payload.ip")?;
            let q = QuadraticLieAlgebra::new_unchecked(bracket, ip).map_err(at("payload"))?;
            q.validate().map_err(at("payload"))?;
            Structure::Quadratic(q)
        }
        "alpha" => {
            let d: AlphaDto = decode(env.payload)?;
            let c = complex(d.complex, "payload.complex")?;
            let m = matrix(d.matrix, "payload.matrix")?;
            Structure::Alpha(AlphaCochain::new(&GlSpace::new(&c), m).map_err(at("payload.matrix"))?)
        }
        "mu" => {
            let d: MuDto = decode(env.payload)?;
            let c = complex(d.complex, "payload.complex")?;
            let space = GlSpace::new(&c);
            let (e0, e1) = (space.dim_end0(), space.dim_end1());
            let mu0 = matrix(d.mu0, "payload.mu0")?;
            let mu1 = matrix(d.mu1, "payload.mu1")?;
            let chi = tensor(d.chi, "payload.chi")?;
            let shape_err = |p: &str, msg: String| Error::Parse { path: p.into(), msg };
            if mu0.shape() != (e0, e0) {
                return Err(shape_err("payload.mu0", format!("expected {e0} x {e0}")));
            }
            if mu1.shape() != (e1, e1) {
                return Err(shape_err("payload.mu1", format!("expected {e1} x {e1}")));
            }
            if chi.in_dims() != [e0, e0] || chi.out() != e1 {
                return Err(shape_err("payload.chi", format!("expected [{e0}, {e0}] -> {e1}")));
            }
            Structure::Mu(Lie2Morphism { space, mu0, mu1, chi })
        }
        "sub_lie2" => {
            let d: SubLie2Dto = decode(env.payload)?;
            let c = complex(d.complex, "payload.complex")?;
            let amb = c.ambient();
            let w = sub2(&amb, d.w.s0, d.w.k, "payload.w")?;
            let wc = crate::dirac_core::w_complex(&c, &w).map_err(at("payload.w"))?;
            let bracket = bilinear(&wc, d.f00, d.f01, d.f10)?;
            let complement = match d.complement {
                Some(s) => Some(sub2(&amb, s.s0, s.k, "payload.complement")?),
                None => None,
            };
            Structure::SubLie2(SubLie2 { complex: c, w, bracket, complement })
        }
        other => {
            return Err(Error::Parse { path: "kind".into(), msg: format!("unknown kind {other:?}") });
        }
    };
    Ok(Document { structure, basis_labels: env.basis_labels })
}

fn matrix_dto(m: &RatMatrix) -> MatrixDto {
    MatrixDto { rows: m.rows(), cols: m.cols(), data: qs(m.data()) }
}

fn tensor_dto(t: &Tensor) -> TensorDto {
    TensorDto { dims: t.in_dims().to_vec(), out: t.out(), data: qs(t.data()) }
}

fn complex_dto(c: &TwoTermComplex) -> ComplexDto {
    ComplexDto { dim_v1: c.dim_v1(), dim_v0: c.dim_v0(), d: qs(c.d().data()) }
}

fn sub2_dto(s: &Sub2VectorSpace) -> Sub2Dto {
    Sub2Dto {
        s0: s.s0().basis_vecs().iter().map(|v| qs(v)).collect(),
        k: s.k().basis_vecs().iter().map(|v| qs(v)).collect(),
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

/// The payload of a structure.
pub fn payload(s: &Structure) -> Value {
    match s {
        Structure::Complex(c) => to_value(&complex_dto(c)),
        Structure::Lie2(l) => to_value(&Lie2Dto {
            complex: complex_dto(l.complex()),
            f00: tensor_dto(l.l2().f00()),
            f01: Some(tensor_dto(l.l2().f01())),
            f10: Some(tensor_dto(l.l2().f10())),
            l3: Some(tensor_dto(l.l3())),
        }),
        Structure::BilinearFunctor(f) => to_value(&BilinearDto {
            complex: complex_dto(f.complex()),
            f00: tensor_dto(f.f00()),
            f01: Some(tensor_dto(f.f01())),
            f10: Some(tensor_dto(f.f10())),
        }),
        Structure::OmniSub { complex, sub } => {
            let s = sub2_dto(sub);
            to_value(&OmniSubDto { complex: complex_dto(complex), s0: s.s0, k: s.k })
        }
        Structure::Quadratic(q) => {
            to_value(&QuadraticDto { dim: q.dim(), bracket: tensor_dto(q.bracket()), ip: matrix_dto(q.ip()) })
        }
        Structure::Alpha(a) => {
            to_value(&AlphaDto { complex: complex_dto(a.space().complex()), matrix: matrix_dto(a.matrix()) })
        }
        Structure::Mu(m) => to_value(&MuDto {
            complex: complex_dto(m.space.complex()),
            mu0: matrix_dto(&m.mu0),
            mu1: matrix_dto(&m.mu1),
            chi: tensor_dto(&m.chi),
        }),
        Structure::SubLie2(s) => to_value(&SubLie2Dto {
            complex: complex_dto(&s.complex),
            w: sub2_dto(&s.w),
            f00: tensor_dto(s.bracket.f00()),
            f01: Some(tensor_dto(s.bracket.f01())),
            f10: Some(tensor_dto(s.bracket.f10())),
            complement: s.complement.as_ref().map(sub2_dto),
        }),
    }
}

pub fn to_json(doc: &Document) -> Value {
    to_value(&Envelope {
        kind: doc.structure.kind().to_string(),
        payload: payload(&doc.structure),
        basis_labels: doc.basis_labels.clone(),
    })
}

pub fn serialize_document(doc: &Document) -> String {
    let mut out = String::new();
    write_compact(&to_json(doc), 0, &mut out);
    out
}

/// Indented JSON with arrays of scalars kept on one line.
pub fn write_compact(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(indent + 1), Value::String(k.clone())));
                write_compact(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&format!("{}}}", pad(indent)));
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_compact(x, indent + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&format!("{}]", pad(indent)));
        }
        other => out.push_str(&other.to_string()),
    }
}

/// A 2-sub-vector space as `{"s0": [...], "k": [...]}` with canonical basis vectors.
pub fn sub2_json(s: &Sub2VectorSpace) -> Value {
    to_value(&sub2_dto(s))
}

pub fn matrix_json(m: &RatMatrix) -> Value {
    to_value(&matrix_dto(m))
}
