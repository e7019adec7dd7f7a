//! Network file format: a single JSON document with a network-wide duration
//! scale, a belief precision, and the activity list.
//!
//! ```json
//! {
//!   "scale": 0,
//!   "belief_precision": 1,
//!   "activities": [
//!     {"id": "a1", "predecessors": [], "duration": [[3, 0.5], [5, 1]]},
//!     {"id": "a2", "predecessors": ["a1"], "duration": [[3, 0.2], [5, 0.5], [7, 1]]}
//!   ]
//! }
//! ```
//!
//! Numbers are read as written (serde_json's arbitrary-precision mode), so
//! a value with more fractional digits than the declared scale or precision
//! is rejected rather than rounded.

use serde::Deserialize;

use crate::fuzzy::{
    Belief, DiscreteFuzzyQuantity, Duration, QuantityError, BELIEF_FRAC_DIGITS,
    DEFAULT_BELIEF_PRECISION,
};
use crate::network::{ActivityInput, NetworkError, ProjectNetwork};

pub const MAX_SCALE: u32 = 9;

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("invalid network document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("scale {0} exceeds the maximum of {MAX_SCALE}")]
    ScaleTooLarge(u32),
    #[error("belief_precision {0} exceeds the maximum of {BELIEF_FRAC_DIGITS}")]
    PrecisionTooLarge(u32),
    #[error("activity `{id}`: {source}")]
    Quantity { id: String, source: QuantityError },
    #[error(transparent)]
    Network(#[from] NetworkError),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkDoc {
    #[serde(default)]
    scale: u32,
    #[serde(default = "default_precision")]
    belief_precision: u32,
    activities: Vec<ActivityDoc>,
}

fn default_precision() -> u32 {
    DEFAULT_BELIEF_PRECISION
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActivityDoc {
    id: String,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    predecessors: Vec<String>,
    duration: Vec<(serde_json::Number, serde_json::Number)>,
    #[serde(default)]
    dummy: bool,
}

#[derive(Debug)]
pub struct LoadedNetwork {
    pub network: ProjectNetwork,
    pub warnings: Vec<String>,
}

/// Parses and validates a network document.
pub fn parse_network(text: &str) -> Result<LoadedNetwork, FileError> {
    let doc: NetworkDoc = serde_json::from_str(text)?;
    if doc.scale > MAX_SCALE {
        return Err(FileError::ScaleTooLarge(doc.scale));
    }
    if doc.belief_precision > BELIEF_FRAC_DIGITS {
        return Err(FileError::PrecisionTooLarge(doc.belief_precision));
    }
    let mut warnings = Vec::new();
    let mut inputs = Vec::with_capacity(doc.activities.len());
    for a in doc.activities {
        let quantity = parse_points(&a, doc.scale, doc.belief_precision, &mut warnings)
            .map_err(|source| FileError::Quantity { id: a.id.clone(), source })?;
        inputs.push(ActivityInput {
            id: a.id,
            label: a.label.unwrap_or_default(),
            predecessors: a.predecessors,
            duration: quantity,
            is_dummy: a.dummy,
        });
    }
    let network = ProjectNetwork::build(inputs, doc.scale, doc.belief_precision)?;
    Ok(LoadedNetwork { network, warnings })
}

fn parse_points(
    a: &ActivityDoc,
    scale: u32,
    precision: u32,
    warnings: &mut Vec<String>,
) -> Result<DiscreteFuzzyQuantity, QuantityError> {
    let mut points = Vec::with_capacity(a.duration.len());
    for (value, belief) in &a.duration {
        let value_text = value.to_string();
        let belief_text = belief.to_string();
        let d = Duration::parse(&value_text, scale)?;
        if crate::fuzzy::is_zero_literal(&belief_text) {
            warnings.push(format!(
                "activity `{}`: stripped zero-belief point {value_text}/{belief_text}",
                a.id
            ));
            continue;
        }
        let b = Belief::parse(&belief_text, precision)?;
        points.push((d, b));
    }
    DiscreteFuzzyQuantity::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIGURE1: &str = r#"{
        "scale": 0,
        "belief_precision": 1,
        "activities": [
            {"id": "a1", "label": "first", "predecessors": [], "duration": [[3, 0.5], [5, 1]]},
            {"id": "a2", "predecessors": ["a1"], "duration": [[3, 0.2], [5, 0.5], [7, 1]]},
            {"id": "a3", "predecessors": ["a1"], "duration": [[2, 0.1], [4, 1], [6, 0.1]]},
            {"id": "a4", "predecessors": ["a2", "a3"], "duration": [[0, 1]], "dummy": true}
        ]
    }"#;

    #[test]
    fn loads_figure1() {
        let loaded = parse_network(FIGURE1).unwrap();
        assert!(loaded.warnings.is_empty());
        let net = loaded.network;
        assert_eq!(net.len(), 4);
        assert_eq!(net.configuration_count(), 18);
        assert_eq!(net.activity(net.index_of("a1").unwrap()).duration.format(0), "3/0.5, 5/1");
        assert!(net.activity(net.index_of("a4").unwrap()).is_dummy);
    }

    #[test]
    fn rejects_excess_belief_precision() {
        let doc = r#"{"scale": 0, "belief_precision": 1,
            "activities": [{"id": "a", "duration": [[3, 0.55], [5, 1]]}]}"#;
        assert!(matches!(parse_network(doc), Err(FileError::Quantity { .. })));
    }

    #[test]
    fn rejects_fractional_duration_at_scale_zero() {
        let doc = r#"{"scale": 0,
            "activities": [{"id": "a", "duration": [[3.5, 1]]}]}"#;
        assert!(matches!(parse_network(doc), Err(FileError::Quantity { .. })));
    }

    #[test]
    fn scaled_durations_parse_exactly() {
        let doc = r#"{"scale": 1,
            "activities": [{"id": "a", "duration": [[3.5, 0.5], [5, 1]]}]}"#;
        let net = parse_network(doc).unwrap().network;
        assert_eq!(net.activity(0).duration.format(1), "3.5/0.5, 5/1");
    }

    #[test]
    fn strips_zero_belief_points_with_warning() {
        let doc = r#"{"scale": 0,
            "activities": [{"id": "a", "duration": [[2, 0.0], [3, 1]]}]}"#;
        let loaded = parse_network(doc).unwrap();
        assert_eq!(loaded.warnings.len(), 1);
        assert_eq!(loaded.network.activity(0).duration.format(0), "3/1");
    }

    #[test]
    fn non_normal_duration_is_an_error() {
        let doc = r#"{"scale": 0,
            "activities": [{"id": "a", "duration": [[2, 0.5]]}]}"#;
        let err = parse_network(doc).unwrap_err();
        assert!(matches!(
            err,
            FileError::Quantity { source: QuantityError::NonNormal, .. }
        ));
    }
}
