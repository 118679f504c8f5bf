//! JSON instance and report files.
//!
//! Files are printed with two-space indentation, arrays of plain values kept
//! on one line, and numbers in shortest round-trip form, so parsing and
//! printing again reproduces a canonical file byte for byte.

mod instance;
mod report;

pub use instance::{Instance, InstanceFile, OpenLimitSpec, PenaltySpec, ProblemSpec};
pub use report::{
    alternative_record, AlternativeRecord, AuditRecord, DistortionValue, GuaranteeRecord, OutcomeRecord, ReportFile,
};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path.is_empty() || path == "." {
            Error::Schema(inner.to_string())
        } else {
            Error::Schema(format!("{path}: {inner}"))
        }
    })?;
    de.end().map_err(|e| Error::Schema(e.to_string()))?;
    Ok(value)
}

/// Parses without validating the model invariants.
pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    parse(text)
}

/// Parses and validates.
pub fn load_instance(text: &str) -> Result<Instance> {
    parse_instance(text)?.validate()
}

pub fn serialize_instance(file: &InstanceFile) -> String {
    to_canonical(file)
}

pub fn parse_report(text: &str) -> Result<ReportFile> {
    parse(text)
}

pub fn serialize_report(file: &ReportFile) -> String {
    to_canonical(file)
}

/// The canonical form of an instance file's text.
pub fn normalize_instance(text: &str) -> Result<String> {
    Ok(serialize_instance(&parse_instance(text)?))
}

/// Hex SHA-256 of the canonical serialization.
pub fn instance_digest(file: &InstanceFile) -> String {
    format!("{:x}", Sha256::digest(serialize_instance(file).as_bytes()))
}

fn to_canonical<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("file types serialize to JSON");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn is_plain(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_plain) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&item.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        plain => out.push_str(&plain.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{generate, ConstructionName, Params};

    const SMALL: &str = r#"{
  "facilities": ["X", "Y"],
  "facility_distances": [
    [0.0, 2.0],
    [2.0, 0.0]
  ],
  "agents": [
    ["X", "Y"],
    ["Y", "X"]
  ],
  "problem": {
    "preset": "k_median",
    "k": 1
  }
}
"#;

    #[test]
    fn canonical_text_round_trips() {
        let file = parse_instance(SMALL).unwrap();
        assert_eq!(serialize_instance(&file), SMALL);
        let inst = file.validate().unwrap();
        assert_eq!(inst.to_file(), file);
    }

    #[test]
    fn floats_survive_exactly() {
        let mut file = parse_instance(SMALL).unwrap();
        let odd = 0.1 + 0.2;
        file.facility_distances = Some(vec![vec![0.0, odd], vec![odd, 0.0]]);
        let back = parse_instance(&serialize_instance(&file)).unwrap();
        assert_eq!(back.facility_distances.unwrap()[0][1].to_bits(), odd.to_bits());
    }

    #[test]
    fn missing_geometry_is_a_schema_error() {
        let text = SMALL.replace(
            "  \"facility_distances\": [\n    [0.0, 2.0],\n    [2.0, 0.0]\n  ],\n",
            "",
        );
        assert!(!text.contains("facility_distances"));
        let err = load_instance(&text).unwrap_err();
        assert!(matches!(err, Error::Schema(_)), "{err}");
    }

    #[test]
    fn unknown_fields_and_bad_names_rejected() {
        let extra = SMALL.replace("\"k\": 1", "\"k\": 1,\n    \"capacity\": 3");
        let err = parse_instance(&extra).unwrap_err().to_string();
        assert!(err.contains("problem"), "{err}");
        let bad = SMALL.replace("[\"Y\", \"X\"]\n", "[\"Y\", \"Q\"]\n");
        assert_ne!(bad, SMALL);
        assert!(matches!(load_instance(&bad), Err(Error::Schema(_))));
        let no_k = SMALL.replace(",\n    \"k\": 1", "");
        assert!(matches!(parse_instance(&no_k), Err(Error::Schema(_))));
    }

    #[test]
    fn generated_instances_round_trip() {
        for name in ConstructionName::ALL {
            let c = generate::<f64>(
                name,
                Params {
                    q: 3,
                    ..Params::default()
                },
            )
            .unwrap();
            let inst = Instance::from_construction(&c);
            let text = serialize_instance(&inst.to_file());
            let back = load_instance(&text).unwrap();
            assert_eq!(back, inst, "{name}");
            assert_eq!(serialize_instance(&back.to_file()), text);
        }
    }

    #[test]
    fn top_only_and_candidate_rankings() {
        let text = r#"{
  "facilities": ["A", "B", "C"],
  "candidate_rankings": [
    ["B", "C"],
    ["A", "C"],
    ["B", "A"]
  ],
  "agents": [
    ["A"],
    ["C"]
  ],
  "problem": {
    "preset": "social_choice_median"
  }
}
"#;
        let inst = load_instance(text).unwrap();
        assert!(inst.profile.is_top_only());
        assert!(inst.l.is_none());
        assert!(inst.partial_order().is_ok());
        assert_eq!(normalize_instance(text).unwrap(), text);
    }

    #[test]
    fn digest_is_stable() {
        let file = parse_instance(SMALL).unwrap();
        assert_eq!(instance_digest(&file), instance_digest(&parse_instance(SMALL).unwrap()));
        assert_eq!(instance_digest(&file).len(), 64);
    }

    #[test]
    fn infinite_values_are_strings() {
        let v = serde_json::to_string(&DistortionValue(f64::INFINITY)).unwrap();
        assert_eq!(v, "\"inf\"");
        let back: DistortionValue = serde_json::from_str(&v).unwrap();
        assert!(back.0.is_infinite());
        assert!(serde_json::from_str::<DistortionValue>("\"big\"").is_err());
    }
}
