//! Document formats for the command line: JSON problem files and verdicts.
//!
//! Integers are emitted as JSON numbers while they fit in 64 bits and as
//! decimal strings beyond that; the parser accepts either. Rationals are
//! "p/q" strings in lowest terms (bare "p" when the denominator is 1).
//! Floating-point numbers are rejected outright — nothing here is inexact.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact integer with the number-or-decimal-string encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Self {
        Int(v.clone())
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(BigInt::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(BigInt::from(v)))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Int, E> {
        Err(E::custom(format!(
            "non-integer number {v}; integers beyond 64 bits must be decimal strings"
        )))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        v.parse::<BigInt>()
            .map(Int)
            .map_err(|_| E::custom(format!("not a decimal integer: {v:?}")))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

/// Exact rational with the "p/q" string encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            s.serialize_str(&self.0.numer().to_string())
        } else {
            s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

struct RatVisitor;

impl Visitor<'_> for RatVisitor {
    type Value = Rat;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational \"p/q\" string or an integer")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
        Ok(Rat(BigRational::from_integer(BigInt::from(v))))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
        Ok(Rat(BigRational::from_integer(BigInt::from(v))))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rat, E> {
        Err(E::custom(format!(
            "floating-point {v} is not exact; write a \"p/q\" string"
        )))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
        let bad = || de::Error::custom(format!("not a rational: {v:?}"));
        match v.split_once('/') {
            None => v
                .parse::<BigInt>()
                .map(|n| Rat(BigRational::from_integer(n)))
                .map_err(|_| bad()),
            Some((p, q)) => {
                let p = p.parse::<BigInt>().map_err(|_| bad())?;
                let q = q.parse::<BigInt>().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(de::Error::custom("zero denominator"));
                }
                Ok(Rat(BigRational::new(p, q)))
            }
        }
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(RatVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSection {
    pub n: usize,
    pub a: Vec<Int>,
    pub b: Int,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InequalitySection {
    pub alpha: Vec<Int>,
    pub beta: Int,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CssSection {
    pub w: Vec<Int>,
    pub t: Int,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvcSection {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSection {
    pub coords: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactKnapsackSection {
    pub c: Vec<Int>,
    pub target: Int,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionSection {
    pub a: Vec<Int>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    #[serde(rename = "L")]
    pub l: Int,
    pub r: usize,
    #[serde(rename = "N")]
    pub n: usize,
}

/// One problem per file; commands read the sections they need and ignore
/// nothing — unknown keys are parse errors.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inequality: Option<InequalitySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub css: Option<CssSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evc: Option<EvcSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<PointSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_knapsack: Option<ExactKnapsackSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Answer document. The verdict lives here, not in the exit code, so batch
/// scripts stay uniform; `--exit-verdict` opts into yes→0/no→1 mapping.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDocument {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_facet: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face_dim: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub answer: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Affinely independent tight feasible points backing a facet verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<Vec<u8>>>,
    /// Feasible point with alpha·x > beta backing an invalid verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Vec<u8>>,
    /// Index set witness (subset, cover, or one partition side), 0-based.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    /// 0/1 point witness (optimum attaining an exact target).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_point: Option<Vec<u8>>,
    /// Convex-combination weights over feasible points, nonzero terms only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<(Vec<u8>, Rat)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates_examined: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<u64>,
}

impl VerdictDocument {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            ..Self::default()
        }
    }
}

/// Output of the sequence command: table rows and/or one decomposition.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GuDocument {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<Int>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefix_sums: Option<Vec<Int>>,
    /// Term indices of the decomposition, descending, distinct.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
    /// Re-summed decomposition; equals the requested target.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sum: Option<Int>,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
    out.push('\n');
    out
}

pub fn ints(values: &[BigInt]) -> Vec<Int> {
    values.iter().map(Int::from).collect()
}
