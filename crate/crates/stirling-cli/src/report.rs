//! Verification report records and their JSON and text renderings.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    VerifiedToCap,
    Falsified,
    Observed,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::VerifiedToCap => "verified-to-cap",
            Status::Falsified => "falsified",
            Status::Observed => "observed",
        }
    }
}

/// Result of running one claim check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub witness: Option<String>,
    pub value: Option<String>,
}

impl Outcome {
    pub fn verified() -> Self {
        Outcome { status: Status::VerifiedToCap, witness: None, value: None }
    }

    pub fn falsified(witness: impl Into<String>) -> Self {
        Outcome { status: Status::Falsified, witness: Some(witness.into()), value: None }
    }

    pub fn observed(value: impl Into<String>) -> Self {
        Outcome { status: Status::Observed, witness: None, value: Some(value.into()) }
    }

    /// Verified when `ok`, otherwise falsified with the lazily built witness.
    pub fn check(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::verified()
        } else {
            Self::falsified(witness())
        }
    }

    pub fn with_value(mut self, value: impl Into<String>) -> Self {
        self.value = Some(value.into());
        self
    }
}

/// One claim in a report. Deterministic: carries no timing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    /// Human-readable statement of the claim the id stands for.
    pub anchor: String,
    pub status: Status,
    /// Status the claim should end in; `None` when nothing is asserted.
    pub expected: Option<Status>,
    /// Desk-scale bound the check ran to.
    pub cap: String,
    /// Bound of the original full-scale campaign, when it differs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full_cap: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl ClaimRecord {
    /// Panics when a falsified claim lacks a witness.
    pub fn new(
        id: String,
        anchor: String,
        expected: Option<Status>,
        cap: String,
        full_cap: Option<String>,
        outcome: Outcome,
    ) -> Self {
        assert!(
            outcome.status != Status::Falsified || outcome.witness.is_some(),
            "falsified claim {id} needs a witness"
        );
        ClaimRecord {
            id,
            anchor,
            status: outcome.status,
            expected,
            cap,
            full_cap,
            witness: outcome.witness,
            value: outcome.value,
        }
    }

    pub fn is_expected(&self) -> bool {
        self.expected.map_or(true, |e| e == self.status)
    }

    pub fn text_line(&self) -> String {
        let mut s = format!("{} {} cap={}", self.id, self.status.name(), self.cap);
        if let Some(e) = self.expected {
            if e != self.status {
                s.push_str(&format!(" UNEXPECTED(expected {})", e.name()));
            }
        }
        if let Some(v) = &self.value {
            s.push_str(&format!(" value={v}"));
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!(" witness={w}"));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub id: String,
    pub elapsed_ms: u64,
}

/// Claims in campaign order; timings live in their own field so the claims
/// list is byte-identical across runs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claims: Vec<ClaimRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<Timing>,
}

impl VerificationReport {
    pub fn push(&mut self, record: ClaimRecord, elapsed_ms: u64) {
        self.timings.push(Timing { id: record.id.clone(), elapsed_ms });
        self.claims.push(record);
    }

    pub fn unexpected(&self) -> Vec<&ClaimRecord> {
        self.claims.iter().filter(|c| !c.is_expected()).collect()
    }

    pub fn all_expected(&self) -> bool {
        self.claims.iter().all(ClaimRecord::is_expected)
    }

    pub fn without_timings(&self) -> Self {
        VerificationReport { claims: self.claims.clone(), timings: Vec::new() }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.claims {
            s.push_str(&c.text_line());
            s.push('\n');
        }
        s
    }
}
