//! Command-line front end for `genus-core`: argument parsing, JSON
//! reports, the worked examples and the brute-force oracle sweep.

pub mod args;
pub mod commands;
pub mod examples;
pub mod oracle;
pub mod report;

use genus_core::{Error, FqField, PolyRing};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 bad input, 2 unsupported shape or rejected precondition, 3 broken
    /// invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => 1,
            CliError::Unsupported(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse(_)
            | Error::ZeroPolynomial(_)
            | Error::DivisionByZero
            | Error::NotCoprime
            | Error::NotAFactor(_)
            | Error::AmbientMismatch => CliError::Input(msg),
            Error::Unsupported(_)
            | Error::UnsupportedShape(_)
            | Error::Precondition(_)
            | Error::NotCyclotomic(_) => CliError::Unsupported(msg),
            Error::Invariant(_) | Error::InfiniteQuotient | Error::NotRootOfUnity(_) => {
                CliError::Invariant(msg)
            }
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// `F_q`, with an explicit modulus (coefficients low to high, monic) for
/// non-prime `q`.
pub fn build_ring(q: u64, field_modulus: Option<&str>) -> CliResult<PolyRing> {
    let modulus = field_modulus
        .map(|text| {
            text.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<u32>()
                        .map_err(|_| CliError::Input(format!("bad field modulus '{text}'")))
                })
                .collect::<CliResult<Vec<u32>>>()
        })
        .transpose()?;
    Ok(PolyRing::new(FqField::new(q, modulus.as_deref())?))
}
