use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Provenance embedded in every artifact.
///
/// `timestamp` stays `null` unless `SOURCE_DATE_EPOCH` is set, so repeated
/// runs produce identical bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub timestamp: Option<String>,
}

impl RunManifest {
    pub fn new(command: &str, seed: Option<u64>) -> Self {
        Self {
            command: command.into(),
            parameters: BTreeMap::new(),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            timestamp: std::env::var("SOURCE_DATE_EPOCH").ok(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    /// One-line form for text and CSV headers.
    pub fn comment_line(&self) -> String {
        let mut s = format!("# hankel {} {}", self.tool_version, self.command);
        for (k, v) in &self.parameters {
            s.push_str(&format!(" {k}={v}"));
        }
        if let Some(seed) = self.seed {
            s.push_str(&format!(" seed={seed}"));
        }
        if let Some(t) = &self.timestamp {
            s.push_str(&format!(" timestamp={t}"));
        }
        s
    }
}
