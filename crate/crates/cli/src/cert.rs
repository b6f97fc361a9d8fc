//! Certificate record and its canonical JSON form.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: String,
    pub claim: String,
    pub params: BTreeMap<String, Value>,
    pub branches: Vec<Value>,
    pub oracle_checked: bool,
    pub verdict: String,
    pub tool_version: String,
    pub timing_ms: u64,
    /// Claim-specific detail.
    #[serde(flatten)]
    pub body: BTreeMap<String, Value>,
}

#[derive(Debug, thiserror::Error)]
pub enum CertError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema version {found:?} is not supported (expected {SCHEMA_VERSION:?})")]
    Version { found: Option<String> },
    #[error("floating-point number at {0}")]
    Float(String),
}

pub const VERDICTS: [&str; 6] = ["SPLITS", "WITNESS_FOUND", "IMPOSSIBLE", "ONLY_CONSTANT", "EXCEPTION_WITNESS", "NOT_APPLICABLE"];

impl Certificate {
    pub fn new(claim: &str, verdict: &str) -> Self {
        debug_assert!(VERDICTS.contains(&verdict));
        Certificate {
            schema_version: SCHEMA_VERSION.into(),
            claim: claim.into(),
            params: BTreeMap::new(),
            branches: Vec::new(),
            oracle_checked: false,
            verdict: verdict.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            timing_ms: 0,
            body: BTreeMap::new(),
        }
    }

    pub fn param(mut self, k: &str, v: impl Into<Value>) -> Self {
        self.params.insert(k.into(), v.into());
        self
    }

    pub fn to_json(&self) -> Result<String, CertError> {
        let v = serde_json::to_value(self)?;
        check_no_floats(&v, "$")?;
        // serde_json's default map is ordered, so keys come out sorted
        Ok(serde_json::to_string_pretty(&v)? + "\n")
    }

    /// Same as `to_json` with timing_ms zeroed; equal inputs give equal bytes.
    pub fn canonical_json(&self) -> Result<String, CertError> {
        let mut c = self.clone();
        c.timing_ms = 0;
        c.to_json()
    }

    pub fn from_json(s: &str) -> Result<Self, CertError> {
        let v: Value = serde_json::from_str(s)?;
        let found = v.get("schema_version").and_then(|x| x.as_str()).map(String::from);
        if found.as_deref() != Some(SCHEMA_VERSION) {
            return Err(CertError::Version { found });
        }
        check_no_floats(&v, "$")?;
        Ok(serde_json::from_value(v)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), CertError> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self, CertError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

pub fn check_no_floats(v: &Value, at: &str) -> Result<(), CertError> {
    match v {
        Value::Number(n) if n.is_f64() => Err(CertError::Float(at.into())),
        Value::Array(a) => a.iter().enumerate().try_for_each(|(i, x)| check_no_floats(x, &format!("{at}[{i}]"))),
        Value::Object(m) => m.iter().try_for_each(|(k, x)| check_no_floats(x, &format!("{at}.{k}"))),
        _ => Ok(()),
    }
}
