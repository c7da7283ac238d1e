use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("entry {value} is not a residue modulo {modulus}")]
    InvalidResidue { value: i64, modulus: u8 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("enumeration needs 2^{required_log2} codewords but the budget is 2^{budget_log2}")]
    BudgetExceeded { required_log2: u32, budget_log2: u32 },

    #[error("generator is not in standard form")]
    NotStandardForm,

    #[error("chain is not closed: {0}")]
    ClosureViolation(String),

    #[error("length {0} is odd; this construction needs an even length")]
    OddLength(usize),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncation tail bound {bound:.3e} exceeds tolerance {tolerance:.3e} at tau = {tau}")]
    TailBound { bound: f64, tolerance: f64, tau: f64 },

    #[error("b-exponent {0} is not a multiple of 4, so h is not a polynomial in t^4")]
    BExponent(u32),

    #[error("h(t) is not in the span of (t^4 - t^8)^s: {0}")]
    NotGleason(String),

    #[error("singular matrix")]
    Singular,

    #[error("code has no nonzero codeword")]
    NoNonzeroCodeword,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag for the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidResidue { .. } => "invalid_residue",
            Error::Shape(_) => "shape",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::NotStandardForm => "not_standard_form",
            Error::ClosureViolation(_) => "closure_violation",
            Error::OddLength(_) => "odd_length",
            Error::OutOfRange(_) => "out_of_range",
            Error::Domain(_) => "domain",
            Error::TailBound { .. } => "tail_bound",
            Error::BExponent(_) => "b_exponent",
            Error::NotGleason(_) => "not_gleason",
            Error::Singular => "singular",
            Error::NoNonzeroCodeword => "no_nonzero_codeword",
            Error::Parse(_) => "parse",
        }
    }
}
