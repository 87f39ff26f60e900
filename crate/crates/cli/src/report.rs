use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Machine-readable result of one invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub verb: String,
    pub inputs: Value,
    pub result: Value,
}

/// What a successful dispatch produced. `code` is nonzero only for a
/// selftest with failures.
pub struct Output {
    pub report: Report,
    pub text: Vec<String>,
    pub code: u8,
}

#[derive(Debug)]
pub enum Failure {
    /// exit code 2
    Usage(String),
    /// exit code 1
    Domain(ordercone::Error),
}

impl From<ordercone::Error> for Failure {
    fn from(e: ordercone::Error) -> Self {
        Failure::Domain(e)
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn reports_round_trip() {
        let r = Report {
            verb: "sup".into(),
            inputs: json!({"space": "four-ray", "vectors": [["1", "0", "1"]]}),
            result: json!({"supremum": null}),
        };
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<Report>(&s).unwrap(), r);
    }
}
