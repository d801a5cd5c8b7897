//! Error type shared across the crate.
//!
//! Failures fall into three groups that callers (notably the `schmidt2d`
//! binary) treat differently: configuration problems, numerical failures
//! during a run, and plain I/O. `Error::exit_code` encodes the convention
//! used by the command line tool (1 = bad configuration, 2 = numerical
//! failure).

use thiserror::Error;

/// One problem found while validating a run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigIssue {
    /// Dotted key path into the configuration file, e.g. `grid.rho_max`.
    pub path: String,
    /// What is wrong with the value at `path`.
    pub message: String,
}

impl std::fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Configuration rejected; all problems found are listed, not just the first.
    #[error("invalid configuration:\n{}", format_issues(.0))]
    Config(Vec<ConfigIssue>),

    /// The wave function returned a non-finite value.
    #[error(
        "state evaluation failed at rho = {rho:.6e}, varrho = {varrho:.6e}: non-finite amplitude"
    )]
    StateEvaluation { rho: f64, varrho: f64 },

    /// Norm integral is numerically zero; the state cannot be normalized.
    #[error("degenerate state: norm integral is {norm:.3e}")]
    DegenerateState { norm: f64 },

    /// A matrix handed to the symmetric eigensolver was not symmetric.
    #[error("kernel asymmetry: max |A - A^T| = {0:.3e} exceeds tolerance")]
    Asymmetric(f64),

    /// The Jacobi sweep limit was exhausted before off-diagonals vanished.
    #[error("eigensolver did not converge within {0} sweeps")]
    EigenNonConvergence(usize),

    /// Nystrom extension requested for an eigenvalue below the magnitude floor.
    #[error("orbital s = {s} of channel m = {m} has |kappa| = {kappa:.3e}, below the {floor:.0e} extension floor")]
    NullOrbital {
        s: usize,
        m: i32,
        kappa: f64,
        floor: f64,
    },

    /// A radius outside the grid domain was passed to an evaluator.
    #[error("radius {rho:.6e} lies outside the grid domain (0, {rho_max}]")]
    Domain { rho: f64, rho_max: f64 },

    /// The brute-force oracle matrix would not fit the memory guard.
    #[error("oracle matrix dimension {dim} exceeds the {max} limit; reduce n_cart")]
    OracleTooLarge { dim: usize, max: usize },

    /// The oracle's eigeniteration stalled.
    #[error("oracle subspace iteration did not converge within {0} iterations")]
    OracleNonConvergence(usize),

    /// Tabulated input file could not be parsed.
    #[error("table {path}, line {line}: {message}")]
    Table {
        path: String,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_issues(issues: &[ConfigIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("  - {i}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Table { .. } => 1,
            _ => 2,
        }
    }

    /// Convenience constructor for a single-issue configuration error.
    pub fn config(path: &str, message: impl Into<String>) -> Self {
        Error::Config(vec![ConfigIssue {
            path: path.to_string(),
            message: message.into(),
        }])
    }
}

pub type Result<T> = std::result::Result<T, Error>;
