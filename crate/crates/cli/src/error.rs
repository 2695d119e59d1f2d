//! Exit-code discipline: 0 success, 1 verification failure, 2 usage error,
//! 3 resource budget exceeded.

use std::fmt;

use gateswitch::ksets::KsetError;
use gateswitch::multiperm::MultipermError;
use gateswitch::oracle::OracleError;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Resource(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Resource(msg) => write!(f, "{msg}"),
        }
    }
}

pub fn usage(err: impl fmt::Display) -> CliError {
    CliError::Usage(err.to_string())
}

pub fn from_multiperm(err: MultipermError) -> CliError {
    match err {
        MultipermError::Resource(r) => CliError::Resource(r.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

pub fn from_oracle(err: OracleError) -> CliError {
    match err {
        OracleError::Resource(r) => CliError::Resource(r.to_string()),
    }
}

pub fn from_kset(err: KsetError) -> CliError {
    match err {
        KsetError::Resource(r) => CliError::Resource(r.to_string()),
        KsetError::Multiperm(MultipermError::Resource(r)) => CliError::Resource(r.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}
