//! Pass/fail records for identity checks.

use serde_json::{json, Value};

use crate::exactalg::MultiPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub subject: String,
    pub params: String,
    /// LHS minus RHS; nonzero by construction.
    pub residual: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub instances: u64,
    pub graphs: Vec<String>,
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "check": self.check,
            "status": self.status(),
            "instances": self.instances,
        });
        if !self.graphs.is_empty() {
            obj["graphs"] = json!(self.graphs);
        }
        if let Some(w) = &self.witness {
            obj["witness"] = json!({
                "subject": w.subject,
                "params": w.params,
                "residual": w.residual.to_string(),
            });
        }
        obj
    }

    /// One JSON object on one line.
    pub fn to_line(&self) -> String {
        self.to_json().to_string()
    }

    /// Folds `other` into `self`: instance counts add, the first witness wins.
    pub fn absorb(&mut self, other: CheckReport) {
        self.instances += other.instances;
        for g in other.graphs {
            if !self.graphs.contains(&g) {
                self.graphs.push(g);
            }
        }
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }
}

/// Accumulates exact comparisons for one named check.
#[derive(Debug)]
pub struct Check {
    report: CheckReport,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            report: CheckReport {
                check: name.into(),
                instances: 0,
                graphs: Vec::new(),
                witness: None,
            },
        }
    }

    pub fn on_graph(&mut self, fingerprint: impl Into<String>) -> &mut Self {
        let f = fingerprint.into();
        if !self.report.graphs.contains(&f) {
            self.report.graphs.push(f);
        }
        self
    }

    /// Records one instance `lhs == rhs`; returns whether it held.
    pub fn equal(&mut self, subject: &str, params: impl FnOnce() -> String, lhs: &MultiPoly, rhs: &MultiPoly) -> bool {
        self.report.instances += 1;
        let residual = lhs - rhs;
        if residual.is_zero() {
            return true;
        }
        if self.report.witness.is_none() {
            self.report.witness = Some(Witness {
                subject: subject.to_string(),
                params: params(),
                residual,
            });
        }
        false
    }

    /// Records a failure that has no natural residual, such as a sign violation.
    pub fn fail(&mut self, subject: &str, params: String, residual: MultiPoly) {
        self.report.instances += 1;
        if self.report.witness.is_none() {
            let residual = if residual.is_zero() { MultiPoly::one() } else { residual };
            self.report.witness = Some(Witness {
                subject: subject.to_string(),
                params,
                residual,
            });
        }
    }

    pub fn pass_instance(&mut self) {
        self.report.instances += 1;
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.report.absorb(other);
    }

    pub fn finish(self) -> CheckReport {
        self.report
    }
}
