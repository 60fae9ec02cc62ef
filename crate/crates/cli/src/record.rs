use std::collections::BTreeMap;

use hv_core::certifier::{InequalityCheck, Verdict};
use hv_core::numeric::format_rational;
use hv_core::{CohomologyDim, Status};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// One line of JSON output. All numbers are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: ResultField,
    pub certificate: Vec<CertificateEntry>,
    pub trace: Vec<String>,
    pub citations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultField {
    pub status: String,
    pub value: Option<Value>,
    pub interpretation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Scalar(String),
    List(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub label: String,
    pub lhs: String,
    pub relation: String,
    pub rhs: String,
    pub holds: bool,
}

impl From<&InequalityCheck> for CertificateEntry {
    fn from(c: &InequalityCheck) -> Self {
        Self {
            label: c.label.clone(),
            lhs: format_rational(&c.lhs),
            relation: c.relation.symbol().to_string(),
            rhs: format_rational(&c.rhs),
            holds: c.holds(),
        }
    }
}

impl OutputRecord {
    pub fn new(command: &str, inputs: &[(&str, String)], status: impl Into<String>) -> Self {
        Self {
            command: command.to_string(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            result: ResultField { status: status.into(), value: None, interpretation: None },
            certificate: Vec::new(),
            trace: Vec::new(),
            citations: Vec::new(),
        }
    }

    pub fn from_dim(command: &str, inputs: &[(&str, String)], dim: &CohomologyDim) -> Self {
        let status = dim.status();
        let mut rec = Self::new(command, inputs, status.label());
        rec.result.value = match status {
            Status::Zero => Some(Value::Scalar("0".into())),
            Status::Exact(v) | Status::NonzeroAtLeast(v) => Some(Value::Scalar(v.to_string())),
            Status::Unknown => None,
        };
        if let Status::NonzeroAtLeast(_) = status {
            rec.result.interpretation = Some("lower bound".into());
        }
        rec.trace = dim.trace().to_vec();
        rec
    }

    pub fn from_verdict(command: &str, inputs: &[(&str, String)], v: &Verdict) -> Self {
        let mut rec = Self::new(command, inputs, v.vanishes.label());
        rec.certificate = v.certificate.iter().map(CertificateEntry::from).collect();
        rec.citations = v.citation.iter().cloned().collect();
        rec.trace = v.notes.clone();
        rec
    }

    pub fn scalar(mut self, v: impl ToString) -> Self {
        self.result.value = Some(Value::Scalar(v.to_string()));
        self
    }

    pub fn list(mut self, vs: impl IntoIterator<Item = impl ToString>) -> Self {
        self.result.value = Some(Value::List(vs.into_iter().map(|v| v.to_string()).collect()));
        self
    }

    pub fn interpretation(mut self, s: impl Into<String>) -> Self {
        self.result.interpretation = Some(s.into());
        self
    }

    pub fn cite(mut self, ids: &[&str]) -> Self {
        self.citations.extend(ids.iter().map(|s| s.to_string()));
        self
    }

    /// Drops the derivation unless it was asked for. Certificates are kept.
    pub fn finish(mut self, trace: bool) -> Self {
        if !trace {
            self.trace.clear();
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    /// The bare value for `--plain`.
    pub fn plain(&self) -> String {
        match &self.result.value {
            Some(Value::Scalar(s)) => s.clone(),
            Some(Value::List(v)) => v.join(" "),
            None => self.result.status.clone(),
        }
    }
}

pub fn big(v: &BigInt) -> String {
    v.to_string()
}
