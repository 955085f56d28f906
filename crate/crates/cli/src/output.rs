//! Deterministic table serialization and the run manifest sidecar.

use crate::config::OutputFormat;
use serde::Serialize;
use std::collections::BTreeMap;

/// Column-named table of optional values; `None` means the method is not
/// applicable at that point and serializes as an empty CSV field / JSON null.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

/// 17 significant digits, '.' decimal separator, locale-independent.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

impl Table {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|v| v.map(fmt17).unwrap_or_default())
                .collect();
            s.push_str(&fields.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let objs: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| {
                        let val = match v {
                            Some(x) => serde_json::json!(x),
                            None => serde_json::Value::Null,
                        };
                        (c.to_string(), val)
                    })
                    .collect();
                serde_json::Value::Object(map)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&objs).expect("table is serializable");
        s.push('\n');
        s
    }
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub tool_version: String,
    pub wall_time_seconds: f64,
}

impl RunManifest {
    pub fn new(command: &str, parameters: BTreeMap<String, serde_json::Value>) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_seconds: 0.0,
        }
    }

    /// Sidecar path: `<out>.manifest.json`.
    pub fn path_for(out: &std::path::Path) -> std::path::PathBuf {
        let mut name = out.file_name().unwrap_or_default().to_os_string();
        name.push(".manifest.json");
        out.with_file_name(name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest is serializable");
        s.push('\n');
        s
    }
}
