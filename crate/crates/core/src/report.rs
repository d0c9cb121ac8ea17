//! Verification records, serialized one JSON object per line.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub context: String,
    pub parameters: BTreeMap<String, Value>,
    pub status: Status,
    pub witness: Option<String>,
    pub wall_time_ms: u64,
}

impl CheckRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn to_text_line(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut line = format!("{status} {} [{}] {}", self.check_id, self.context, params.join(" "));
        if let Some(w) = &self.witness {
            line.push_str(&format!(" :: {w}"));
        }
        line
    }
}

type Job = Arc<dyn Fn() -> Result<Option<String>> + Send + Sync>;

/// One independent unit of verification work.
#[derive(Clone)]
pub struct Cell {
    pub check_id: String,
    pub context: String,
    pub parameters: BTreeMap<String, Value>,
    job: Job,
}

impl Cell {
    /// `job` returns `None` on success or a witness of failure.
    pub fn new(
        check_id: impl Into<String>,
        context: impl Into<String>,
        parameters: BTreeMap<String, Value>,
        job: impl Fn() -> Result<Option<String>> + Send + Sync + 'static,
    ) -> Cell {
        Cell { check_id: check_id.into(), context: context.into(), parameters, job: Arc::new(job) }
    }

    /// A cell that passes exactly when `job` reports a failure.
    pub fn expect_failure(
        check_id: impl Into<String>,
        context: impl Into<String>,
        parameters: BTreeMap<String, Value>,
        job: impl Fn() -> Result<Option<String>> + Send + Sync + 'static,
    ) -> Cell {
        Cell::new(check_id, context, parameters, move || match job() {
            Ok(Some(_)) => Ok(None),
            Ok(None) => Ok(Some("expected a failure, but the check passed".into())),
            Err(e) => Err(e),
        })
    }

    pub fn run(&self, timing: bool) -> CheckRecord {
        let start = Instant::now();
        let (status, witness) = match (self.job)() {
            Ok(None) => (Status::Pass, None),
            Ok(Some(w)) => (Status::Fail, Some(w)),
            Err(e) => (Status::Fail, Some(format!("error: {e}"))),
        };
        CheckRecord {
            check_id: self.check_id.clone(),
            context: self.context.clone(),
            parameters: self.parameters.clone(),
            status,
            witness,
            wall_time_ms: if timing { start.elapsed().as_millis() as u64 } else { 0 },
        }
    }
}

/// Runs the cells on the worker pool; records come back in cell order.
pub fn run_cells(cells: &[Cell], timing: bool) -> Vec<CheckRecord> {
    par::map(cells, |c| c.run(timing))
}

/// Builds a parameter map from `(name, value)` pairs.
#[macro_export]
macro_rules! params {
    ($($k:expr => $v:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut m = ::std::collections::BTreeMap::new();
        $( m.insert(String::from($k), ::serde_json::json!($v)); )*
        m
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let c = Cell::new("x", "ctx", crate::params! {"n" => 1}, || Ok(None));
        let line = c.run(false).to_json_line();
        assert_eq!(
            line,
            r#"{"check_id":"x","context":"ctx","parameters":{"n":1},"status":"pass","witness":null,"wall_time_ms":0}"#
        );
        let bad = Cell::expect_failure("y", "ctx", crate::params! {}, || Ok(None));
        assert_eq!(bad.run(false).status, Status::Fail);
    }
}
