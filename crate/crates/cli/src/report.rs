//! The report every verb emits.

use serde_json::{json, Value};
use trider_core::format;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violated,
    NoneExists,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violated => "violated",
            Status::NoneExists => "none-exists",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violated => 1,
            Status::NoneExists => 2,
            Status::Error => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn new(command: &str, status: Status, payload: Value) -> Self {
        Self {
            command: command.to_string(),
            status,
            payload,
            diagnostics: Vec::new(),
        }
    }

    pub fn error(command: &str, message: impl Into<String>) -> Self {
        let mut r = Self::new(command, Status::Error, json!({}));
        r.diagnostics.push(message.into());
        r
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.diagnostics.push(line.into());
        self
    }

    pub fn to_json(&self) -> Value {
        format::document(json!({
            "command": self.command,
            "status": self.status.as_str(),
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        }))
    }

    pub fn render_json(&self) -> String {
        format::to_string(&self.to_json())
    }

    /// Two-column table of the top-level payload fields; nested values are
    /// printed as compact JSON.
    pub fn render_text(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("command".into(), self.command.clone()),
            ("status".into(), self.status.as_str().into()),
        ];
        if let Value::Object(map) = &self.payload {
            for (k, v) in map {
                let cell = match v {
                    Value::String(s) => s.clone(),
                    Value::Null => "-".into(),
                    other => other.to_string(),
                };
                rows.push((k.clone(), cell));
            }
        }
        let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        for d in &self.diagnostics {
            out.push_str(&format!("note: {d}\n"));
        }
        out
    }
}
