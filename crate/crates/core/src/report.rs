//! Line-delimited report records.

use serde::Serialize;
use serde_json::Value;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub criterion: String,
    pub value: Value,
    pub expected: Value,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub resolution: String,
    pub status: Status,
    pub seconds: Option<f64>,
}

impl Record {
    pub fn new(criterion: &str, value: impl Serialize, expected: impl Serialize, ok: bool) -> Record {
        Record {
            criterion: criterion.to_string(),
            value: serde_json::to_value(value).unwrap_or(Value::Null),
            expected: serde_json::to_value(expected).unwrap_or(Value::Null),
            residual: None,
            tolerance: None,
            resolution: String::new(),
            status: Status::from_bool(ok),
            seconds: None,
        }
    }

    /// Record of a check that could not run.
    pub fn error(criterion: &str, err: &crate::LcError, expected: impl Serialize) -> Record {
        Record::new(criterion, err.to_string(), expected, false)
    }

    pub fn residual(mut self, r: f64, tol: f64) -> Record {
        self.residual = Some(r);
        self.tolerance = Some(tol);
        self
    }

    pub fn resolution(mut self, r: impl Into<String>) -> Record {
        self.resolution = r.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn write_jsonl<W: Write>(mut w: W, records: &[Record]) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}
