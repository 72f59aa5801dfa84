use thiserror::Error;

/// Errors raised by the library.
///
/// Input problems (malformed literals, out-of-range parameters, caps) are
/// kept apart from domain failures (an input that is well formed but not a
/// member of the set an operation requires) so that front ends can report
/// them differently.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("preference vector must contain at least one entry")]
    EmptyPreference,

    #[error("entry {value} at position {position} is outside 1..={n}")]
    EntryOutOfRange {
        position: usize,
        value: usize,
        n: usize,
    },

    #[error("entry {value} at position {position} is outside 0..={n} (circle spots)")]
    CircleEntryOutOfRange {
        position: usize,
        value: usize,
        n: usize,
    },

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("n = {n} exceeds the brute-force cap of {cap} for {what}; raise the cap (--cap) to allow it")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("{0}")]
    OutOfRange(String),

    #[error("preference {0} is not weakly decreasing")]
    NotDecreasing(String),

    #[error("{0}")]
    NotMember(String),

    #[error("no closed formula is known for decreasing {k}-Naples parking functions (supported: k = 1, 2, 3)")]
    NoClosedFormula { k: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unknown experiment {0:?}; expected one of counts, decreasing, star-profile, adt-compare, one-corner")]
    UnknownExperiment(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True when the error means the input was well formed but fails a
    /// membership requirement (as opposed to a malformed or out-of-range input).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::NotMember(_) | Error::NotDecreasing(_) | Error::NoClosedFormula { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
