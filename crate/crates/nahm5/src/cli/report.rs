use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Measured,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tolerance: f64,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub version: String,
}

/// One line of a check table. `anchor` states the mathematical fact checked.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub max_error: f64,
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub metadata: Metadata,
}

impl Report {
    fn new(check: &str, anchor: &str, status: Status, err: f64, tol: f64) -> Self {
        Self {
            check: check.into(),
            status,
            max_error: err,
            anchor: anchor.into(),
            note: None,
            metadata: Metadata {
                tolerance: tol,
                seed: None,
                samples: None,
                version: env!("CARGO_PKG_VERSION").into(),
            },
        }
    }

    /// Pass iff err is finite and strictly below tol.
    pub fn bound(check: &str, anchor: &str, err: f64, tol: f64) -> Self {
        let ok = err.is_finite() && err < tol;
        Self::new(check, anchor, if ok { Status::Pass } else { Status::Fail }, err, tol)
    }

    /// Exact check: error is the number of failing cases.
    pub fn exact(check: &str, anchor: &str, failures: usize) -> Self {
        let st = if failures == 0 { Status::Pass } else { Status::Fail };
        Self::new(check, anchor, st, failures as f64, 0.0)
    }

    pub fn measured(check: &str, anchor: &str, value: f64) -> Self {
        Self::new(check, anchor, Status::Measured, value, f64::NAN)
    }

    pub fn failed(check: &str, anchor: &str, why: impl ToString) -> Self {
        Self::new(check, anchor, Status::Fail, f64::INFINITY, 0.0).note(why)
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.metadata.seed = Some(seed);
        self
    }

    pub fn samples(mut self, n: usize) -> Self {
        self.metadata.samples = Some(n);
        self
    }

    pub fn note(mut self, n: impl ToString) -> Self {
        self.note = Some(n.to_string());
        self
    }

    pub fn ok(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Turn a fallible measurement into a report.
pub fn from_result(
    check: &str,
    anchor: &str,
    tol: f64,
    r: crate::Result<f64>,
) -> Report {
    match r {
        Ok(e) => Report::bound(check, anchor, e, tol),
        Err(e) => Report::failed(check, anchor, e),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table {
    pub command: String,
    pub pass: bool,
    pub reports: Vec<Report>,
}

impl Table {
    pub fn new(command: &str, reports: Vec<Report>) -> Self {
        Self { command: command.into(), pass: reports.iter().all(Report::ok), reports }
    }
}
