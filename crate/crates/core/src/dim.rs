use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// What is known about the dimension of a cohomology group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Status {
    Zero,
    /// Exact dimension; never zero.
    Exact(BigInt),
    /// Nonzero, with a proven lower bound of at least one.
    NonzeroAtLeast(BigInt),
    Unknown,
}

impl Status {
    pub fn is_zero(&self) -> bool {
        matches!(self, Status::Zero)
    }

    pub fn is_nonzero(&self) -> bool {
        matches!(self, Status::Exact(_) | Status::NonzeroAtLeast(_))
    }

    pub fn is_determined(&self) -> bool {
        matches!(self, Status::Zero | Status::Exact(_))
    }

    /// Exact value, with `Zero` reported as 0.
    pub fn exact_value(&self) -> Option<BigInt> {
        match self {
            Status::Zero => Some(BigInt::zero()),
            Status::Exact(v) => Some(v.clone()),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Zero => "zero",
            Status::Exact(_) => "exact",
            Status::NonzeroAtLeast(_) => "nonzero_at_least",
            Status::Unknown => "unknown",
        }
    }

    /// The coarse classification used for duality and consistency checks.
    pub fn kind(&self) -> Kind {
        match self {
            Status::Zero => Kind::Zero,
            Status::Exact(_) | Status::NonzeroAtLeast(_) => Kind::Nonzero,
            Status::Unknown => Kind::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Zero,
    Nonzero,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Zero => write!(f, "0"),
            Status::Exact(v) => write!(f, "{v}"),
            Status::NonzeroAtLeast(b) => write!(f, ">= {b}"),
            Status::Unknown => write!(f, "unknown"),
        }
    }
}

/// A dimension together with the chain of rules that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyDim {
    status: Status,
    trace: Vec<String>,
}

impl CohomologyDim {
    pub fn zero(trace: Vec<String>) -> Self {
        Self { status: Status::Zero, trace }
    }

    /// Exact value; a zero value is stored as [`Status::Zero`].
    pub fn exact(value: BigInt, trace: Vec<String>) -> Self {
        assert!(!value.is_negative(), "negative dimension {value}");
        let status = if value.is_zero() { Status::Zero } else { Status::Exact(value) };
        Self { status, trace }
    }

    /// Nonzero with lower bound `bound`, raised to one if smaller.
    pub fn nonzero_at_least(bound: BigInt, trace: Vec<String>) -> Self {
        let bound = if bound < BigInt::one() { BigInt::one() } else { bound };
        Self { status: Status::NonzeroAtLeast(bound), trace }
    }

    pub fn unknown(trace: Vec<String>) -> Self {
        Self { status: Status::Unknown, trace }
    }

    pub fn status(&self) -> &Status {
        &self.status
    }

    pub fn trace(&self) -> &[String] {
        &self.trace
    }

    pub fn into_parts(self) -> (Status, Vec<String>) {
        (self.status, self.trace)
    }

    pub(crate) fn push_front(mut self, line: impl Into<String>) -> Self {
        self.trace.insert(0, line.into());
        self
    }

    pub(crate) fn push(mut self, line: impl Into<String>) -> Self {
        self.trace.push(line.into());
        self
    }
}
