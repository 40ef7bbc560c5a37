//! Evaluated identities and the size limits that gate exponential routines.

use serde::{Deserialize, Serialize};

use crate::critical::DEFAULT_ORACLE_LIMIT;
use crate::error::{Error, Result};
use crate::mis::{DEFAULT_ALPHA_LIMIT, DEFAULT_ENUMERATION_LIMIT};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    /// Largest `n` for subset enumeration cross-checks.
    pub oracle: usize,
    /// Largest `n` for the exact independence number.
    pub alpha: usize,
    /// Largest `n` for enumerating all maximum independent sets.
    pub enumeration: usize,
    /// When false, enumeration-based cross-checks are skipped.
    pub use_oracle: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            oracle: DEFAULT_ORACLE_LIMIT,
            alpha: DEFAULT_ALPHA_LIMIT,
            enumeration: DEFAULT_ENUMERATION_LIMIT,
            use_oracle: true,
        }
    }
}

impl Limits {
    /// The oracle limit, or an error when oracle checks are switched off.
    pub fn oracle_for(&self, n: usize, what: &'static str) -> Result<usize> {
        if !self.use_oracle {
            return Err(Error::LimitExceeded { what, n, limit: 0 });
        }
        Ok(self.oracle)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
    /// A set rendered as vertex labels. Listed before `Set` so that an empty
    /// array reads back as labels.
    Labels(Vec<String>),
    Set(VertexSet),
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<i64> for Value {
    fn from(x: i64) -> Self {
        Value::Int(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<VertexSet> for Value {
    fn from(s: VertexSet) -> Self {
        Value::Set(s)
    }
}

impl From<&VertexSet> for Value {
    fn from(s: &VertexSet) -> Self {
        Value::Set(s.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(flatten)]
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Value>,
}

impl Check {
    /// `lhs == rhs`.
    pub fn equal(name: &str, lhs: impl Into<Value>, rhs: impl Into<Value>) -> Check {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        Check::compare(name, lhs == rhs, lhs, rhs)
    }

    pub fn compare(name: &str, holds: bool, lhs: impl Into<Value>, rhs: impl Into<Value>) -> Check {
        Check {
            name: name.to_string(),
            status: if holds { Status::Holds } else { Status::Fails },
            lhs: Some(lhs.into()),
            rhs: Some(rhs.into()),
        }
    }

    /// A check with no operands to report.
    pub fn truth(name: &str, holds: bool) -> Check {
        Check {
            name: name.to_string(),
            status: if holds { Status::Holds } else { Status::Fails },
            lhs: None,
            rhs: None,
        }
    }

    pub fn skipped(name: &str, reason: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            status: Status::Skipped(reason.into()),
            lhs: None,
            rhs: None,
        }
    }

    /// Runs `f`, turning a limit error into a skip.
    pub fn guarded(name: &str, f: impl FnOnce() -> Result<Check>) -> Result<Check> {
        match f() {
            Err(e) if e.is_limit() => Ok(Check::skipped(name, e.to_string())),
            other => other,
        }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn fails(&self) -> bool {
        self.status == Status::Fails
    }
}
