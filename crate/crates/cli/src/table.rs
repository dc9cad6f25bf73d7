//! Knot tables: a JSON array of `{name, pd, expected?}`.

use std::collections::HashSet;

use khdetect::khovanov::BigradedDimensions;
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize)]
pub struct KnotTableEntry {
    pub name: String,
    pub pd: String,
    #[serde(default)]
    pub expected: Option<serde_json::Value>,
}

impl KnotTableEntry {
    pub fn expected_dims(&self) -> Option<Result<BigradedDimensions, String>> {
        self.expected
            .as_ref()
            .map(|v| BigradedDimensions::from_json(&v.to_string()).map_err(|e| format!("bad expected field: {e}")))
    }
}

pub fn parse_table(text: &str) -> Result<Vec<KnotTableEntry>, String> {
    let entries: Vec<KnotTableEntry> = serde_json::from_str(text).map_err(|e| format!("table: {e}"))?;
    let mut seen = HashSet::new();
    for e in &entries {
        if !seen.insert(e.name.as_str()) {
            return Err(format!("table: duplicate name `{}`", e.name));
        }
    }
    Ok(entries)
}
