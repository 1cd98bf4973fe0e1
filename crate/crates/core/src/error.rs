use thiserror::Error;

/// Errors produced by model construction, condition checking, and the solvers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor or operation argument violates a documented invariant.
    #[error("invalid {what}: {why}")]
    InvalidInput { what: &'static str, why: String },

    /// A state value left the nonnegative capital domain by more than the
    /// rounding tolerance.
    #[error("capital ratio out of domain: k = {k} at t = {t}")]
    NegativeCapital { k: f64, t: f64 },

    /// A control value left [0, 1] by more than the rounding tolerance.
    #[error("saving fraction out of range: s = {s}")]
    ControlOutOfRange { s: f64 },

    /// A certified growth constant was required but not supplied.
    #[error("missing growth certificate: {0}")]
    MissingCertificate(String),

    /// The dynamic-programming grid was queried beyond its state bound from a
    /// node inside the certified reachable tube, i.e. the grid was sized
    /// inconsistently with the certificate.
    #[error("state grid exceeded: query k = {query} > bound {bound} at t = {t}")]
    GridExceeded { query: f64, bound: f64, t: f64 },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, why: impl Into<String>) -> Self {
        Error::InvalidInput {
            what,
            why: why.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
