use thiserror::Error;

/// A single validation defect, located by chain degree where applicable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub degree: Option<usize>,
    pub message: String,
}

impl Violation {
    pub fn at(degree: usize, message: impl Into<String>) -> Self {
        Violation {
            degree: Some(degree),
            message: message.into(),
        }
    }

    pub fn global(message: impl Into<String>) -> Self {
        Violation {
            degree: None,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.degree {
            Some(n) => write!(f, "degree {}: {}", n, self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

fn join_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: p={0} vs p={1}")]
    FieldMismatch(u64, u64),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("operator is not invariant: {0}")]
    NotInvariant(String),
    #[error("invalid complex: {}", join_violations(.0))]
    InvalidComplex(Vec<Violation>),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
