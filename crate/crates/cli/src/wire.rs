//! JSON shapes shared by the CLI output and its tests.

use std::fmt;

use berg_core::berg::{SubstitutionRule, WindowSource};
use berg_core::exactnum::QuadraticNumber;
use berg_core::spectral::AutomorphismMatrix;
use berg_core::subst::{incidence_matrix, IncidenceMatrix};
use berg_core::tiling::{Orientation, Word};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireError(pub String);

impl fmt::Display for WireError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InvalidJson: {}", self.0)
    }
}

impl std::error::Error for WireError {}

/// An exact value with a rounded decimal rendering.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Exact {
    pub exact: String,
    pub decimal: String,
}

impl Exact {
    pub fn new(x: &QuadraticNumber, precision: usize) -> Self {
        Exact { exact: x.to_string(), decimal: x.to_decimal(precision) }
    }

    pub fn value(&self) -> Result<QuadraticNumber, WireError> {
        self.exact.parse().map_err(|e| WireError(format!("{e}")))
    }
}

pub fn matrix_json(f: &AutomorphismMatrix) -> [[u64; 2]; 2] {
    f.entries()
}

pub fn matrix_from_json(raw: [[i64; 2]; 2]) -> Result<AutomorphismMatrix, WireError> {
    AutomorphismMatrix::new(raw).map_err(|e| WireError(e.to_string()))
}

/// `{"a": "...", "b": "...", "offset": j, "lock": "ab"|"ba"}`; offset and
/// lock are null for rules that do not come from a window.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RuleJson {
    pub a: String,
    pub b: String,
    pub offset: Option<i64>,
    pub lock: Option<String>,
}

impl RuleJson {
    pub fn from_rule(rule: &SubstitutionRule) -> Self {
        RuleJson {
            a: rule.image_a.to_string(),
            b: rule.image_b.to_string(),
            offset: rule.source.map(|s| s.offset),
            lock: rule.source.map(|s| s.lock.as_str().to_string()),
        }
    }

    /// Parses the rule back; with a matrix, also checks that the letter
    /// counts are its entries.
    pub fn to_rule(&self, f: Option<&AutomorphismMatrix>) -> Result<SubstitutionRule, WireError> {
        let word = |s: &str| s.parse::<Word>().map_err(|e| WireError(e.to_string()));
        let mut rule = SubstitutionRule::new(word(&self.a)?, word(&self.b)?);
        rule.source = match (self.offset, self.lock.as_deref()) {
            (None, None) => None,
            (Some(offset), Some(lock)) => {
                let lock = match lock {
                    "ab" => Orientation::Ab,
                    "ba" => Orientation::Ba,
                    other => return Err(WireError(format!("lock '{other}'"))),
                };
                Some(WindowSource { offset, lock })
            }
            _ => return Err(WireError("offset and lock must be given together".into())),
        };
        if let Some(f) = f {
            let [[k, l], [m, n]] = f.entries();
            if incidence_matrix(&rule) != IncidenceMatrix([[k, l], [m, n]]) {
                return Err(WireError(format!("rule {rule} does not have the letter counts of {f}")));
            }
        }
        Ok(rule)
    }
}
