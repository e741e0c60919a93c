//! JSON interchange documents. Rationals are always `"p/q"` strings.

use std::fmt;
use std::sync::Arc;

use lagrange_forest::inversion::InversionProblem;
use lagrange_forest::rational::{format_rational, parse_rational};
use lagrange_forest::{Color, ColorSet, KernelFamily, Rational, TruncatedSeries};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

/// An exact rational that serializes as `"p"` or `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalText(pub Rational);

impl Serialize for RationalText {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct Visitor;
        impl de::Visitor<'_> for Visitor {
            type Value = RationalText;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational written as a \"p/q\" string")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<RationalText, E> {
                parse_rational(v).map(RationalText).map_err(E::custom)
            }
        }
        d.deserialize_str(Visitor)
    }
}

impl fmt::Display for RationalText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelEntry {
    pub q: String,
    pub x: Vec<String>,
    pub value: RationalText,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelBlock {
    pub n: usize,
    pub entries: Vec<KernelEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesEntry {
    pub x: Vec<String>,
    pub value: RationalText,
}

/// Input: the kernel family `A`, an optional `Phi` and an optional subset `B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub colors: Vec<String>,
    pub order: usize,
    pub kernels: Vec<KernelBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<SeriesEntry>>,
    #[serde(default, rename = "B", skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<String>>,
}

/// A problem document checked against its own invariants.
#[derive(Debug)]
pub struct Built {
    pub problem: InversionProblem,
    pub phi: Option<TruncatedSeries>,
    pub subset: Vec<Color>,
}

impl ProblemDocument {
    /// Builds the problem at `order` (the document's order when `None`).
    /// Callers must not pass an order above the document's.
    pub fn build(&self, order: Option<usize>) -> Result<Built, String> {
        let colors = Arc::new(ColorSet::new(self.colors.iter().cloned()).map_err(|e| e.to_string())?);
        let mut entries = Vec::new();
        for block in &self.kernels {
            if block.n == 0 {
                return Err("kernel blocks must have n >= 1 (A_0 is identically zero)".into());
            }
            for e in &block.entries {
                if e.x.len() != block.n {
                    return Err(format!(
                        "kernel entry for q={} lists {} colors in a block with n={}",
                        e.q,
                        e.x.len(),
                        block.n
                    ));
                }
                entries.push((e.q.as_str(), e.x.iter().map(String::as_str).collect(), e.value.0.clone()));
            }
        }
        let a = KernelFamily::from_entries(&colors, self.order, entries).map_err(|e| e.to_string())?;
        let order = order.unwrap_or(self.order);
        let phi = match &self.phi {
            Some(entries) => Some(
                TruncatedSeries::from_entries(
                    &colors,
                    self.order,
                    entries.iter().map(|e| (e.x.clone(), e.value.0.clone())),
                )
                .map_err(|e| e.to_string())?
                .truncate(order),
            ),
            None => None,
        };
        let subset = match &self.b {
            Some(names) => colors.resolve(names).map_err(|e| e.to_string())?,
            None => colors.colors().collect(),
        };
        Ok(Built { problem: InversionProblem::new(a.truncate(order)), phi, subset })
    }
}

/// One coefficient computed by the tree formula and, optionally, by the
/// determinant formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientRow {
    pub x: Vec<String>,
    pub tree: RationalText,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant: Option<RationalText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equal: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomEntry {
    pub q: String,
    pub x: Vec<String>,
    pub value: RationalText,
}

/// Output of `invert`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub colors: Vec<String>,
    pub order: usize,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    pub convention: String,
    /// Non-zero coefficients of the atom members of `zeta(dq; nu)`.
    pub atoms: Vec<AtomEntry>,
    /// Coefficients of `zeta(B; nu)` at every tuple of size `1..=order`.
    pub zeta: Vec<CoefficientRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<CoefficientRow>>,
}

pub const CONVENTION: &str =
    "values are symmetric coefficients f_n(x_1..x_n); the monomial coefficient of z^m is f_n / m!";

impl ResultDocument {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("result documents always serialize");
        text.push('\n');
        text
    }

    /// True when every side-by-side row agrees.
    pub fn all_equal(&self) -> bool {
        self.zeta.iter().chain(self.psi.iter().flatten()).all(|row| row.equal != Some(false))
    }
}

/// Renders a `serde_json` failure as `path:line:column: message`.
pub fn json_error(path: &str, err: &serde_json::Error) -> String {
    let full = err.to_string();
    let suffix = format!(" at line {} column {}", err.line(), err.column());
    let message = full.strip_suffix(&suffix).unwrap_or(&full);
    format!("{path}:{}:{}: {message}", err.line(), err.column())
}
