use thiserror::Error;

/// Every failure the library can report. The variant name is part of the
/// public contract: the CLI prints it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("EmptySpectrum: the spectrum has no entries")]
    EmptySpectrum,
    #[error("NegativeMultiplicity: {0}")]
    NegativeMultiplicity(String),
    #[error("NotConvenient: the Newton polytope misses a coordinate axis")]
    NotConvenient,
    #[error("DegenerateFace: {0}")]
    DegenerateFace(String),
    #[error("ConditionIIIViolated: {0}")]
    ConditionIIIViolated(String),
    #[error("ConditionIIIPrimeViolated: {0}")]
    ConditionIIIPrimeViolated(String),
    #[error("NegativeEntry: {0}")]
    NegativeEntry(String),
    #[error("NotPolynomial: {0}")]
    NotPolynomial(String),
    #[error("NotIsolated: {0}")]
    NotIsolated(String),
    #[error("EmptyMonoid: no monomial has weighted degree 1")]
    EmptyMonoid,
    #[error("NotPureTail: {0}")]
    NotPureTail(String),
    #[error("InvalidSpectrum: {0}")]
    InvalidSpectrum(String),
    #[error("OutsidePositiveOrthantLogic: {0}")]
    OutsidePositiveOrthantLogic(String),
    #[error("NegativeFinalSpectrum: {0}")]
    NegativeFinalSpectrum(String),
    #[error("MismatchReport: {}", .0.join("; "))]
    MismatchReport(Vec<String>),
    #[error("BoundViolated: {0}")]
    BoundViolated(String),
    #[error("DegenerateSection: {0}")]
    DegenerateSection(String),
    #[error("RankDisagreement: {0}")]
    RankDisagreement(String),
    #[error("Underdetermined: {0}")]
    Underdetermined(String),
    #[error("Inconsistent: {0}")]
    Inconsistent(String),
    #[error("Parse: {0}")]
    Parse(String),
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

impl Error {
    /// The bare variant name, e.g. `"NotIsolated"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptySpectrum => "EmptySpectrum",
            Error::NegativeMultiplicity(_) => "NegativeMultiplicity",
            Error::NotConvenient => "NotConvenient",
            Error::DegenerateFace(_) => "DegenerateFace",
            Error::ConditionIIIViolated(_) => "ConditionIIIViolated",
            Error::ConditionIIIPrimeViolated(_) => "ConditionIIIPrimeViolated",
            Error::NegativeEntry(_) => "NegativeEntry",
            Error::NotPolynomial(_) => "NotPolynomial",
            Error::NotIsolated(_) => "NotIsolated",
            Error::EmptyMonoid => "EmptyMonoid",
            Error::NotPureTail(_) => "NotPureTail",
            Error::InvalidSpectrum(_) => "InvalidSpectrum",
            Error::OutsidePositiveOrthantLogic(_) => "OutsidePositiveOrthantLogic",
            Error::NegativeFinalSpectrum(_) => "NegativeFinalSpectrum",
            Error::MismatchReport(_) => "MismatchReport",
            Error::BoundViolated(_) => "BoundViolated",
            Error::DegenerateSection(_) => "DegenerateSection",
            Error::RankDisagreement(_) => "RankDisagreement",
            Error::Underdetermined(_) => "Underdetermined",
            Error::Inconsistent(_) => "Inconsistent",
            Error::Parse(_) => "Parse",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
