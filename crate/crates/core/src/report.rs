use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Verdict of one named property, with the evidence behind it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub holds: bool,
    pub witness: Option<Value>,
    pub counterexample: Option<Value>,
}

impl PropertyReport {
    pub fn pass(property: &str, witness: Option<Value>) -> Self {
        PropertyReport {
            property: property.into(),
            holds: true,
            witness,
            counterexample: None,
        }
    }

    pub fn fail(property: &str, counterexample: Value) -> Self {
        PropertyReport {
            property: property.into(),
            holds: false,
            witness: None,
            counterexample: Some(counterexample),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
