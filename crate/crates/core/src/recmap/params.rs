use serde::{Deserialize, Serialize};

use super::map::{Covector, RecurrenceMap};
use crate::error::{Error, Result};
use crate::exactnum::{FieldKind, Scalar};

/// On-disk parameter description:
/// `{"k": 3, "field": "rational" | {"cyclotomic": m}, "alpha": [...], "beta": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamFile {
    pub k: usize,
    pub field: FieldKind,
    pub alpha: Vec<Scalar>,
    pub beta: Vec<Scalar>,
}

impl ParamFile {
    pub fn from_map(m: &RecurrenceMap) -> Self {
        ParamFile {
            k: m.k(),
            field: m.field(),
            alpha: m.alpha().coeffs().to_vec(),
            beta: m.beta().coeffs().to_vec(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Validates the declared field against the scalars and builds the map.
    pub fn build(&self) -> Result<RecurrenceMap> {
        let lift = |v: &[Scalar]| -> Result<Vec<Scalar>> {
            v.iter()
                .map(|s| {
                    if s.field_kind() != FieldKind::Rational && s.field_kind() != self.field {
                        return Err(Error::FieldMismatch(s.field_kind().to_string(), self.field.to_string()));
                    }
                    Ok(s.clone())
                })
                .collect()
        };
        RecurrenceMap::build(self.k, Covector::new(lift(&self.alpha)?)?, Covector::new(lift(&self.beta)?)?)
    }
}
