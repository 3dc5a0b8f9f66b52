//! JSON wire formats.
//!
//! * rational: `"p/q"` (`"p"` when `q = 1`)
//! * Gaussian rational: `{"re": "p/q", "im": "p/q"}`
//! * polynomial: `{"n": 2, "terms": [{"exp": [1,1], "re": "1", "im": "0"}, ...]}`,
//!   terms in descending graded-lex order, no zero coefficients
//! * antisymmetric matrix: `{"N": 3, "upper": {"(1,2)": poly, "(1,3)": poly, "(2,3)": poly}}`,
//!   strict upper triangle only, 1-based keys
//! * certificate: `{"f": [...], "g": [...], "verified": true}`
//! * glue trace: see [`TraceJson`]
//!
//! On input, a polynomial may also be given as a string in the syntax of
//! [`crate::parse`].

use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{format_rational, parse_rational, GaussianRational, ModulusBound, Rational};
use crate::error::{Error, Result};
use crate::glue::{DiskSchedule, GlueStage, GlueTrace};
use crate::groebner::BezoutCertificate;
use crate::multipoly::{Monomial, MultiPoly, PolyTuple};
use crate::param::AntisymMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianJson {
    pub re: String,
    pub im: String,
}

impl GaussianJson {
    pub fn from_value(c: &GaussianRational) -> Self {
        GaussianJson {
            re: format_rational(&c.re),
            im: format_rational(&c.im),
        }
    }

    pub fn to_value(&self) -> Result<GaussianRational> {
        Ok(GaussianRational::new(
            parse_rational(&self.re)?,
            parse_rational(&self.im)?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn from_poly(p: &MultiPoly) -> Self {
        PolyJson {
            n: p.n(),
            terms: p
                .terms_grlex_desc()
                .into_iter()
                .map(|(m, c)| TermJson {
                    exp: m.exponents().to_vec(),
                    re: format_rational(&c.re),
                    im: format_rational(&c.im),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<MultiPoly> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.exp.len() != self.n {
                    return Err(Error::DimensionMismatch {
                        expected: self.n,
                        found: t.exp.len(),
                    });
                }
                let c = GaussianRational::new(parse_rational(&t.re)?, parse_rational(&t.im)?);
                Ok((Monomial::new(t.exp.clone()), c))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(self.n, terms)
    }
}

/// A polynomial on input: canonical JSON or a text expression.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyInput {
    Text(String),
    Json(PolyJson),
}

impl PolyInput {
    /// Variables this input needs.
    pub fn var_count(&self) -> Result<usize> {
        match self {
            PolyInput::Text(s) => Ok(crate::parse::parse_expr(s)?.var_count()),
            PolyInput::Json(p) => Ok(p.n),
        }
    }

    pub fn to_poly(&self, n: usize) -> Result<MultiPoly> {
        match self {
            PolyInput::Text(s) => crate::parse::parse_poly(s, n),
            PolyInput::Json(p) => {
                if p.n != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: p.n,
                    });
                }
                p.to_poly()
            }
        }
    }
}

/// Variable count for a document: the declared one, or the largest needed
/// by any polynomial (at least 1).
pub fn infer_n<'a>(
    declared: Option<usize>,
    polys: impl IntoIterator<Item = &'a PolyInput>,
) -> Result<usize> {
    if let Some(n) = declared {
        return Ok(n);
    }
    let mut n = 1;
    for p in polys {
        n = n.max(p.var_count()?);
    }
    Ok(n)
}

pub fn tuple_to_json(t: &PolyTuple) -> Vec<PolyJson> {
    t.iter().map(PolyJson::from_poly).collect()
}

pub fn tuple_from_json(entries: &[PolyJson]) -> Result<PolyTuple> {
    PolyTuple::new(
        entries
            .iter()
            .map(PolyJson::to_poly)
            .collect::<Result<_>>()?,
    )
}

pub fn tuple_from_input(entries: &[PolyInput], n: usize) -> Result<PolyTuple> {
    PolyTuple::new(
        entries
            .iter()
            .map(|p| p.to_poly(n))
            .collect::<Result<_>>()?,
    )
}

/// Strict upper triangle keyed by `"(j,k)"`, 1-based, row-major on output.
#[derive(Clone, Debug, PartialEq)]
pub struct UpperJson<P>(pub Vec<((usize, usize), P)>);

impl<P: Serialize> Serialize for UpperJson<P> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for ((j, k), p) in &self.0 {
            map.serialize_entry(&format!("({j},{k})"), p)?;
        }
        map.end()
    }
}

impl<'de, P: Deserialize<'de>> Deserialize<'de> for UpperJson<P> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct UpperVisitor<P>(std::marker::PhantomData<P>);

        impl<'de, P: Deserialize<'de>> Visitor<'de> for UpperVisitor<P> {
            type Value = UpperJson<P>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from \"(j,k)\" to polynomials")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some((key, value)) = access.next_entry::<String, P>()? {
                    let idx = parse_index_key(&key).ok_or_else(|| {
                        de::Error::custom(format!(
                            "matrix key {key:?} is not of the form \"(j,k)\""
                        ))
                    })?;
                    out.push((idx, value));
                }
                Ok(UpperJson(out))
            }
        }

        deserializer.deserialize_map(UpperVisitor(std::marker::PhantomData))
    }
}

fn parse_index_key(key: &str) -> Option<(usize, usize)> {
    let inner = key.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (j, k) = inner.split_once(',')?;
    Some((j.trim().parse().ok()?, k.trim().parse().ok()?))
}

pub fn upper_to_json(h: &AntisymMatrix) -> UpperJson<PolyJson> {
    UpperJson(
        h.upper_entries()
            .map(|((j, k), p)| ((j + 1, k + 1), PolyJson::from_poly(p)))
            .collect(),
    )
}

/// Builds a matrix from upper-triangle entries; absent keys are zero.
/// Keys with `j >= k` are rejected as antisymmetry violations.
pub fn upper_from_entries(
    entries: Vec<((usize, usize), MultiPoly)>,
    size: usize,
    n: usize,
) -> Result<AntisymMatrix> {
    let mut h = AntisymMatrix::zero(size, n);
    let mut seen = std::collections::BTreeSet::new();
    for ((j, k), p) in entries {
        if j == 0 || k == 0 || j > size || k > size {
            return Err(Error::IndexOutOfRange(format!(
                "matrix key ({j},{k}) for N = {size}"
            )));
        }
        if j >= k {
            return Err(Error::NotAntisymmetric { row: j, col: k });
        }
        if !seen.insert((j, k)) {
            return Err(Error::InvalidInput(format!(
                "duplicate matrix key ({j},{k})"
            )));
        }
        h.set(j - 1, k - 1, p)?;
    }
    Ok(h)
}

pub fn upper_from_json(
    upper: &UpperJson<PolyJson>,
    size: usize,
    n: usize,
) -> Result<AntisymMatrix> {
    let entries = upper
        .0
        .iter()
        .map(|(idx, p)| Ok((*idx, p.to_poly()?)))
        .collect::<Result<Vec<_>>>()?;
    upper_from_entries(entries, size, n)
}

pub fn upper_from_input(
    upper: &UpperJson<PolyInput>,
    size: usize,
    n: usize,
) -> Result<AntisymMatrix> {
    let entries = upper
        .0
        .iter()
        .map(|(idx, p)| Ok((*idx, p.to_poly(n)?)))
        .collect::<Result<Vec<_>>>()?;
    upper_from_entries(entries, size, n)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson<P = PolyJson> {
    #[serde(rename = "N")]
    pub size: usize,
    pub upper: UpperJson<P>,
}

impl MatrixJson<PolyJson> {
    pub fn from_matrix(h: &AntisymMatrix) -> Self {
        MatrixJson {
            size: h.size(),
            upper: upper_to_json(h),
        }
    }

    pub fn to_matrix(&self) -> Result<AntisymMatrix> {
        let n = self.upper.0.first().map(|(_, p)| p.n).unwrap_or(1);
        upper_from_json(&self.upper, self.size, n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub f: Vec<PolyJson>,
    pub g: Vec<PolyJson>,
    pub verified: bool,
}

impl CertificateJson {
    pub fn from_certificate(c: &BezoutCertificate) -> Self {
        CertificateJson {
            f: tuple_to_json(&c.f),
            g: tuple_to_json(&c.g),
            verified: c.verified,
        }
    }

    /// Parses and recomputes `verified`; the stored flag is not trusted.
    pub fn to_certificate(&self) -> Result<BezoutCertificate> {
        BezoutCertificate::checked(tuple_from_json(&self.f)?, tuple_from_json(&self.g)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageJson {
    pub k: usize,
    pub a: Vec<PolyJson>,
    #[serde(rename = "H_upper")]
    pub h_upper: UpperJson<PolyJson>,
    #[serde(rename = "P_upper")]
    pub p_upper: UpperJson<PolyJson>,
    pub bound: String,
}

/// Serialized [`GlueTrace`]. `schedule` lists the radii `r_1, r_2, ...`;
/// `a_final` is `a_{m+1}` for the last stage `m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceJson {
    pub f: Vec<PolyJson>,
    #[serde(default = "default_policy")]
    pub modulus_bound: String,
    pub schedule: Vec<String>,
    pub stages: Vec<StageJson>,
    pub a_final: Vec<PolyJson>,
    pub partial_sums: Vec<Vec<PolyJson>>,
}

fn default_policy() -> String {
    ModulusBound::Sum.as_str().to_string()
}

impl TraceJson {
    pub fn from_trace(t: &GlueTrace) -> Self {
        TraceJson {
            f: tuple_to_json(&t.f),
            modulus_bound: t.policy.as_str().to_string(),
            schedule: t.schedule.radii().iter().map(format_rational).collect(),
            stages: t
                .stages
                .iter()
                .map(|s| StageJson {
                    k: s.k,
                    a: tuple_to_json(&s.a),
                    h_upper: upper_to_json(&s.h),
                    p_upper: upper_to_json(&s.p),
                    bound: format_rational(&s.bound),
                })
                .collect(),
            a_final: tuple_to_json(&t.a_final),
            partial_sums: t.partial_sums.iter().map(tuple_to_json).collect(),
        }
    }

    /// Structural decoding only; no identity is checked here.
    pub fn to_trace(&self) -> Result<GlueTrace> {
        let f = tuple_from_json(&self.f)?;
        let (size, n) = (f.len(), f.n());
        let radii = self
            .schedule
            .iter()
            .map(|r| parse_rational(r))
            .collect::<Result<Vec<Rational>>>()?;
        let schedule = DiskSchedule::new(n, radii)?;
        let policy: ModulusBound = self.modulus_bound.parse()?;
        let tuple = |entries: &[PolyJson]| -> Result<PolyTuple> {
            let t = tuple_from_json(entries)?;
            f.check_compatible(&t)?;
            Ok(t)
        };
        let stages = self
            .stages
            .iter()
            .map(|s| {
                Ok(GlueStage {
                    k: s.k,
                    a: tuple(&s.a)?,
                    h: upper_from_json(&s.h_upper, size, n)?,
                    p: upper_from_json(&s.p_upper, size, n)?,
                    bound: parse_rational(&s.bound)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if stages.is_empty() {
            return Err(Error::InvalidInput("trace has no stages".into()));
        }
        let partial_sums = self
            .partial_sums
            .iter()
            .map(|g| tuple(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(GlueTrace {
            f: f.clone(),
            schedule,
            policy,
            stages,
            a_final: tuple(&self.a_final)?,
            partial_sums,
        })
    }
}
