//! JSON files with rationals as canonical `"num/den"` strings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{BicyclicCarrier, FiniteInverseSemigroup};
use crate::error::{Error, Result};
use crate::exact::{format_q, parse_q, Q};
use crate::metrics::InterlacedSpace;
use crate::norms::{GroupNorm, NormClassification, Valuation};
use crate::ordermaps::PairMap;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupDoc {
    pub kind: String,
    pub n: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairMapDoc {
    #[serde(default = "pairmap_kind")]
    pub kind: String,
    pub n: usize,
    pub values: Vec<Vec<String>>,
    /// Values are radicands of square roots.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub sqrt: bool,
}

fn pairmap_kind() -> String {
    "pairmap".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationDoc {
    pub kind: String,
    pub n: usize,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterlacedDoc {
    pub kind: String,
    pub p: PairMapDoc,
    pub q: PairMapDoc,
}

/// Descriptor of the symbolic bicyclic carrier over Z^k.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BicyclicDoc {
    pub kind: String,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_norm: Option<GroupNorm>,
}

#[derive(Serialize)]
struct ClassificationDoc<'a> {
    kind: &'static str,
    #[serde(flatten)]
    flags: &'a NormClassification,
}

/// Any input file, dispatched on its `kind`.
#[derive(Clone, Debug)]
pub enum Document {
    Semigroup(FiniteInverseSemigroup),
    PairMap { map: PairMap, sqrt: bool },
    Valuation(Valuation),
    Interlaced { p: PairMap, q: PairMap },
    Bicyclic { carrier: BicyclicCarrier, group_norm: Option<GroupNorm> },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Semigroup(_) => "semigroup",
            Document::PairMap { .. } => "pairmap",
            Document::Valuation(_) => "valuation",
            Document::Interlaced { .. } => "interlaced",
            Document::Bicyclic { .. } => "bicyclic",
        }
    }
}

fn format_err(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

fn expect_kind(found: &str, want: &str) -> Result<()> {
    if found != want {
        return Err(Error::Format(format!("expected kind {want:?}, found {found:?}")));
    }
    Ok(())
}

fn pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn parse_values(values: &[String]) -> Result<Vec<Q>> {
    values.iter().map(|v| parse_q(v)).collect()
}

pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(format_err)?;
    let kind =
        value.get("kind").and_then(Value::as_str).ok_or_else(|| Error::Format("missing \"kind\"".into()))?.to_string();
    match kind.as_str() {
        "semigroup" => {
            let d: SemigroupDoc = serde_json::from_value(value).map_err(format_err)?;
            semigroup_from_doc(d).map(Document::Semigroup)
        }
        "pairmap" => {
            let d: PairMapDoc = serde_json::from_value(value).map_err(format_err)?;
            let sqrt = d.sqrt;
            Ok(Document::PairMap { map: pairmap_from_doc(d)?, sqrt })
        }
        "valuation" => {
            let d: ValuationDoc = serde_json::from_value(value).map_err(format_err)?;
            valuation_from_doc(d).map(Document::Valuation)
        }
        "interlaced" => {
            let d: InterlacedDoc = serde_json::from_value(value).map_err(format_err)?;
            Ok(Document::Interlaced { p: pairmap_from_doc(d.p)?, q: pairmap_from_doc(d.q)? })
        }
        "bicyclic" => {
            let d: BicyclicDoc = serde_json::from_value(value).map_err(format_err)?;
            if d.k == 0 {
                return Err(Error::BadParams("bicyclic dimension must be positive".into()));
            }
            Ok(Document::Bicyclic { carrier: BicyclicCarrier::new(d.k), group_norm: d.group_norm })
        }
        other => Err(Error::Format(format!("unknown kind {other:?}"))),
    }
}

fn semigroup_from_doc(d: SemigroupDoc) -> Result<FiniteInverseSemigroup> {
    expect_kind(&d.kind, "semigroup")?;
    let s = FiniteInverseSemigroup::from_table(d.n, &d.table)?;
    match d.labels {
        Some(l) => s.with_labels(l),
        None => Ok(s),
    }
}

fn pairmap_from_doc(d: PairMapDoc) -> Result<PairMap> {
    expect_kind(&d.kind, "pairmap")?;
    if d.values.len() != d.n {
        return Err(Error::SizeMismatch { expected: d.n, found: d.values.len() });
    }
    let mut rows = Vec::with_capacity(d.n);
    for row in &d.values {
        if row.len() != d.n {
            return Err(Error::SizeMismatch { expected: d.n, found: row.len() });
        }
        rows.push(parse_values(row)?);
    }
    PairMap::from_rows(rows)
}

fn valuation_from_doc(d: ValuationDoc) -> Result<Valuation> {
    expect_kind(&d.kind, "valuation")?;
    if d.values.len() != d.n {
        return Err(Error::SizeMismatch { expected: d.n, found: d.values.len() });
    }
    Valuation::new(parse_values(&d.values)?)
}

pub fn parse_semigroup(text: &str) -> Result<FiniteInverseSemigroup> {
    match parse_document(text)? {
        Document::Semigroup(s) => Ok(s),
        d => Err(Error::Format(format!("expected kind \"semigroup\", found {:?}", d.kind()))),
    }
}

pub fn parse_pairmap(text: &str) -> Result<PairMap> {
    match parse_document(text)? {
        Document::PairMap { map, .. } => Ok(map),
        d => Err(Error::Format(format!("expected kind \"pairmap\", found {:?}", d.kind()))),
    }
}

pub fn parse_valuation(text: &str) -> Result<Valuation> {
    match parse_document(text)? {
        Document::Valuation(v) => Ok(v),
        d => Err(Error::Format(format!("expected kind \"valuation\", found {:?}", d.kind()))),
    }
}

pub fn semigroup_doc(s: &FiniteInverseSemigroup) -> SemigroupDoc {
    SemigroupDoc { kind: "semigroup".into(), n: s.len(), table: s.rows(), labels: Some(s.labels().to_vec()) }
}

pub fn semigroup_to_json(s: &FiniteInverseSemigroup) -> String {
    pretty(&semigroup_doc(s))
}

pub fn pairmap_doc(p: &PairMap, sqrt: bool) -> PairMapDoc {
    PairMapDoc {
        kind: pairmap_kind(),
        n: p.len(),
        values: p.rows().iter().map(|r| r.iter().map(format_q).collect()).collect(),
        sqrt,
    }
}

pub fn pairmap_to_json(p: &PairMap, sqrt: bool) -> String {
    pretty(&pairmap_doc(p, sqrt))
}

pub fn valuation_to_json(v: &Valuation) -> String {
    pretty(&ValuationDoc { kind: "valuation".into(), n: v.len(), values: v.values().iter().map(format_q).collect() })
}

pub fn interlaced_to_json(space: &InterlacedSpace) -> String {
    pretty(&InterlacedDoc {
        kind: "interlaced".into(),
        p: pairmap_doc(space.p(), false),
        q: pairmap_doc(space.q(), false),
    })
}

pub fn bicyclic_to_json(carrier: &BicyclicCarrier, group_norm: Option<GroupNorm>) -> String {
    pretty(&BicyclicDoc { kind: "bicyclic".into(), k: carrier.k, group_norm })
}

pub fn classification_to_json(c: &NormClassification) -> String {
    pretty(&ClassificationDoc { kind: "classification", flags: c })
}
