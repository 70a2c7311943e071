use thiserror::Error;

/// Errors raised by the exact-arithmetic and series layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different lambda modes")]
    ModeMismatch,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("denominator vanishes at lambda = {0}")]
    PoleAtLambda(String),
    #[error("coefficient {requested} requested from a series known only to order {precision}")]
    PrecisionExceeded { requested: usize, precision: usize },
    #[error("divisor series has no known nonzero coefficient")]
    ZeroDivisorSeries,
    #[error("divisor valuation {divisor} exceeds dividend valuation {dividend}")]
    ValuationTooHigh { divisor: usize, dividend: usize },
    #[error("not enough known coefficients: need order {needed}, have {precision}")]
    InsufficientPrecision { needed: usize, precision: usize },
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,
    #[error("cannot differentiate a series of precision zero")]
    ZeroPrecision,
    #[error("Bell input has {len} entries, {needed} required")]
    InputTooShort { needed: usize, len: usize },
    #[error("parameters outside the identity's domain: {0}")]
    DomainViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
