//! Results of randomized degree computations and their JSON form.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// One independent trial of a generic-fiber count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    /// Seed of the accepted (or last) attempt.
    pub seed: u64,
    /// Quotient dimension of the fiber system when it was zero-dimensional.
    pub value: Option<u64>,
    pub zero_dim: bool,
    pub reduced: bool,
    #[serde(skip)]
    pub attempts: usize,
}

impl TrialRecord {
    pub fn accepted(&self) -> bool {
        self.zero_dim && self.reduced
    }
}

/// Outcome of a randomized degree computation at one level `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub i: usize,
    /// Present iff a strict majority of trials were accepted with equal
    /// values.
    pub value: Option<u64>,
    pub trials: Vec<TrialRecord>,
    /// Every trial accepted, all with the same value.
    pub stable: bool,
}

impl DegreeReport {
    /// Aggregates trial records by strict majority.
    pub fn from_trials(i: usize, trials: Vec<TrialRecord>) -> Self {
        let accepted: Vec<u64> = trials.iter().filter(|t| t.accepted()).filter_map(|t| t.value).collect();
        let mut value = None;
        for &v in &accepted {
            if 2 * accepted.iter().filter(|&&w| w == v).count() > trials.len() {
                value = Some(v);
                break;
            }
        }
        let stable = !trials.is_empty() && accepted.len() == trials.len() && accepted.iter().all(|&v| Some(v) == value);
        DegreeReport { i, value, trials, stable }
    }

    /// The majority value, or [`Error::Unstable`].
    pub fn require_value(&self) -> Result<u64> {
        self.value.ok_or(Error::Unstable)
    }

    /// The value only when every trial agreed.
    pub fn stable_value(&self) -> Option<u64> {
        if self.stable {
            self.value
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Unstable,
    Error,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReportInput {
    pub polys: Vec<String>,
    pub weights: Vec<String>,
    pub nvars: usize,
}

/// The JSON document printed by the command-line tool.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JsonReport {
    pub command: String,
    pub input: ReportInput,
    pub field: FieldSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<Option<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
    pub trials: Vec<TrialRecord>,
    pub stable: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl JsonReport {
    /// A report for one level.
    pub fn single(command: &str, input: ReportInput, field: FieldSpec, r: &DegreeReport) -> Self {
        let mut out = JsonReport {
            command: command.to_string(),
            input,
            field,
            i: Some(r.i),
            degrees: None,
            value: r.value,
            trials: r.trials.clone(),
            stable: r.stable,
            status: Status::Ok,
            message: None,
        };
        out.set_status();
        out
    }

    /// A report for a full profile `deg_0, …, deg_{n-1}`; trials of all
    /// levels are concatenated in level order.
    pub fn profile(command: &str, input: ReportInput, field: FieldSpec, rs: &[DegreeReport]) -> Self {
        let mut out = JsonReport {
            command: command.to_string(),
            input,
            field,
            i: None,
            degrees: Some(rs.iter().map(|r| r.value).collect()),
            value: None,
            trials: rs.iter().flat_map(|r| r.trials.iter().cloned()).collect(),
            stable: !rs.is_empty() && rs.iter().all(|r| r.stable),
            status: Status::Ok,
            message: None,
        };
        out.set_status();
        out
    }

    pub fn error(command: &str, input: ReportInput, field: FieldSpec, message: String) -> Self {
        JsonReport {
            command: command.to_string(),
            input,
            field,
            i: None,
            degrees: None,
            value: None,
            trials: Vec::new(),
            stable: false,
            status: Status::Error,
            message: Some(message),
        }
    }

    fn set_status(&mut self) {
        if self.trials.is_empty() {
            self.status = Status::Error;
            self.stable = false;
            self.message = Some("no trials were run".into());
        } else if !self.stable {
            self.status = Status::Unstable;
        }
    }
}

/// Serializes a report with a fixed key order; integers are emitted
/// exactly.
pub fn emit_report(r: &JsonReport) -> String {
    serde_json::to_string(r).expect("report serialization cannot fail")
}
