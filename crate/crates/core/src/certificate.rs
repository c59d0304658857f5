//! Replayable records of bound evaluations.
//!
//! A certificate captures one formula evaluation completely: the formula
//! identity, every input, every constant that entered the computation with
//! its provenance, and the directed-rounding result. Re-evaluating a
//! deserialized certificate reproduces the value bit for bit.

use serde::{Deserialize, Serialize};

use crate::error::{BoundError, Result};
use crate::exponents::{rat_string_opt, Rat};
use crate::rounding::UpperReal;

/// Which vertical line a constant belongs to: `On(r)` is the line at
/// `sigma = 1 - 1/r`, `Low(s)` the line at `sigma = 1/s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineKey {
    On(u32),
    Low(u32),
}

impl LineKey {
    pub fn sigma(&self) -> Rat {
        match self {
            LineKey::On(r) => Rat::new(*r as i64 - 1, *r as i64),
            LineKey::Low(s) => Rat::new(1, *s as i64),
        }
    }

    pub fn label(&self) -> String {
        match self {
            LineKey::On(r) => format!("on{r}"),
            LineKey::Low(s) => format!("low{s}"),
        }
    }

    pub fn parse(s: &str) -> Result<LineKey> {
        if let Some(rest) = s.strip_prefix("on") {
            return rest
                .parse()
                .map(LineKey::On)
                .map_err(|_| BoundError::Input(format!("bad line key {s:?}")));
        }
        if let Some(rest) = s.strip_prefix("low") {
            return rest
                .parse()
                .map(LineKey::Low)
                .map_err(|_| BoundError::Input(format!("bad line key {s:?}")));
        }
        Err(BoundError::Input(format!("bad line key {s:?}")))
    }
}

/// Identity of an implemented bound formula. The declaration order is the
/// deterministic tie-break order used by the optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormulaId {
    HalflineR2,
    PropOn { r: u32 },
    PropOff { r: u32 },
    LineOn { r: u32 },
    LineLow { s: u32 },
    PlPair { a: LineKey, b: LineKey },
    TheoremMain,
    TheoremOneline,
    PvConstant,
    BurgessRhs { r: u32 },
}

impl std::fmt::Display for FormulaId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormulaId::HalflineR2 => write!(f, "halfline_r2"),
            FormulaId::PropOn { r } => write!(f, "prop_on_r{r}"),
            FormulaId::PropOff { r } => write!(f, "prop_off_r{r}"),
            FormulaId::LineOn { r } => write!(f, "line_on{r}"),
            FormulaId::LineLow { s } => write!(f, "line_low{s}"),
            FormulaId::PlPair { a, b } => write!(f, "pl_pair_{}_{}", a.label(), b.label()),
            FormulaId::TheoremMain => write!(f, "theorem_main"),
            FormulaId::TheoremOneline => write!(f, "theorem_oneline"),
            FormulaId::PvConstant => write!(f, "pv_constant"),
            FormulaId::BurgessRhs { r } => write!(f, "burgess_rhs_r{r}"),
        }
    }
}

impl std::str::FromStr for FormulaId {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<FormulaId> {
        let bad = || BoundError::Input(format!("unknown formula id {s:?}"));
        match s {
            "halfline_r2" => return Ok(FormulaId::HalflineR2),
            "theorem_main" => return Ok(FormulaId::TheoremMain),
            "theorem_oneline" => return Ok(FormulaId::TheoremOneline),
            "pv_constant" => return Ok(FormulaId::PvConstant),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("prop_on_r") {
            return rest.parse().map(|r| FormulaId::PropOn { r }).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("prop_off_r") {
            return rest.parse().map(|r| FormulaId::PropOff { r }).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("line_on") {
            return rest.parse().map(|r| FormulaId::LineOn { r }).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("line_low") {
            return rest.parse().map(|s| FormulaId::LineLow { s }).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("burgess_rhs_r") {
            return rest.parse().map(|r| FormulaId::BurgessRhs { r }).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("pl_pair_") {
            let (a, b) = rest.split_once('_').ok_or_else(bad)?;
            return Ok(FormulaId::PlPair {
                a: LineKey::parse(a)?,
                b: LineKey::parse(b)?,
            });
        }
        Err(bad())
    }
}

impl Serialize for FormulaId {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FormulaId {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Inputs of one evaluation. `sigma`, `t` and `epsilon` are exact
/// rationals so replay is lossless; `M`/`N` hold derived cut points
/// (or the window length for the character-sum formula).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct CertInputs {
    pub q: u64,
    #[serde(with = "rat_string_opt", default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Rat>,
    #[serde(with = "rat_string_opt", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
    #[serde(with = "rat_string_opt", default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Rat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantRecord {
    pub name: String,
    pub value: f64,
    pub provenance: String,
}

impl ConstantRecord {
    pub fn pinned(name: &str, value: f64) -> ConstantRecord {
        ConstantRecord {
            name: name.into(),
            value,
            provenance: "pinned".into(),
        }
    }

    pub fn derived(name: &str, value: f64) -> ConstantRecord {
        ConstantRecord {
            name: name.into(),
            value,
            provenance: "derived".into(),
        }
    }

    pub fn input(name: &str, value: f64) -> ConstantRecord {
        ConstantRecord {
            name: name.into(),
            value,
            provenance: "input".into(),
        }
    }
}

/// A fully expanded record of one bound evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub formula_id: FormulaId,
    pub inputs: CertInputs,
    pub constants: Vec<ConstantRecord>,
    pub value: UpperReal,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<BoundCertificate> {
        serde_json::from_str(s).map_err(|e| BoundError::Input(format!("bad certificate JSON: {e}")))
    }
}
