use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::audit::{Alternative, AuditReport, Distortion};
use crate::model::FacilitySet;

/// A distortion value on disk: a number, or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistortionValue(pub f64);

impl Serialize for DistortionValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for DistortionValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(v) => Ok(Self(v)),
            Raw::Text(t) if t == "inf" => Ok(Self(f64::INFINITY)),
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", found `{t}`"
            ))),
        }
    }
}

impl From<&Distortion<f64>> for DistortionValue {
    fn from(d: &Distortion<f64>) -> Self {
        Self(d.to_f64())
    }
}

/// The chosen outcome, by facility name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OutcomeRecord {
    Winner(String),
    Assignment(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GuaranteeRecord {
    pub objective: String,
    pub bound: f64,
    pub basis: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlternativeRecord {
    pub alternative: OutcomeRecord,
    pub value: DistortionValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditRecord {
    pub objective: String,
    pub value: DistortionValue,
    /// `false` when the value is only a lower bound from sampling.
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_alternative: Option<OutcomeRecord>,
    /// Consistent metric attaining `value`, one row per agent.
    pub witness: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub breakdown: Vec<AlternativeRecord>,
}

impl AuditRecord {
    pub fn from_report(report: &AuditReport<f64>, facilities: &FacilitySet) -> Self {
        Self {
            objective: report.objective.name(),
            value: (&report.value).into(),
            exact: report.exact,
            samples: None,
            seed: None,
            worst_alternative: report.worst.as_ref().map(|a| alternative_record(a, facilities)),
            witness: report.witness.rows(),
            breakdown: report
                .breakdown
                .iter()
                .map(|b| AlternativeRecord {
                    alternative: alternative_record(&b.alternative, facilities),
                    value: (&b.value).into(),
                })
                .collect(),
        }
    }
}

pub fn alternative_record(a: &Alternative, facilities: &FacilitySet) -> OutcomeRecord {
    match a {
        Alternative::Facility(f) => OutcomeRecord::Winner(facilities.name(*f).into()),
        Alternative::Assignment(x) => {
            OutcomeRecord::Assignment(x.as_slice().iter().map(|f| facilities.name(*f).into()).collect())
        }
    }
}

/// Result of `solve` or `audit`, tied to its instance by digest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    /// SHA-256 of the instance's canonical serialization.
    pub instance_digest: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mechanism: Option<String>,
    pub outcome: OutcomeRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub guarantees: Vec<GuaranteeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projected_cost: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub audits: Vec<AuditRecord>,
}
