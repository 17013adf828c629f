//! Mamdani fuzzy inference: membership functions, linguistic variables,
//! MIN-MAX rule evaluation and centroid defuzzification.
//!
//! A [`FuzzyInferenceSystem`] is immutable once built and can be shared
//! across threads for read-only evaluation.

mod membership;
mod system;
mod validate;
mod variable;

pub use membership::MembershipFunction;
pub use system::{
    defuzzify_centroid, Aggregate, FisDocument, FuzzyInferenceSystem, FuzzyRule,
    DEFAULT_DEFUZZ_SAMPLES, MIN_DEFUZZ_SAMPLES,
};
pub(crate) use validate::grid_cells;
pub use validate::{validate_rules, ValidationReport};
pub use variable::{LinguisticVariable, Term, Universe};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FuzzyError {
    #[error("invalid breakpoints: {0}")]
    Breakpoints(String),
    #[error("invalid universe [{lo}, {hi}]")]
    Universe { lo: f64, hi: f64 },
    #[error("variable `{0}` has no terms")]
    NoTerms(String),
    #[error("variable `{variable}` defines term `{term}` more than once")]
    DuplicateTerm { variable: String, term: String },
    #[error("term `{term}` of `{variable}` extends outside the universe")]
    SupportOutsideUniverse { variable: String, term: String },
    #[error("variable `{0}` is defined more than once")]
    DuplicateVariable(String),
    #[error("non-finite input {value} for `{variable}`")]
    NonFiniteInput { variable: String, value: f64 },
    #[error("missing input `{0}`")]
    MissingInput(String),
    #[error("unexpected input `{0}`")]
    UnexpectedInput(String),
    #[error("expected {expected} inputs, got {got}")]
    InputCount { expected: usize, got: usize },
    #[error("rule {rule}: {reason}")]
    BadRule { rule: usize, reason: String },
    #[error("defuzzification needs at least {MIN_DEFUZZ_SAMPLES} samples, got {0}")]
    TooFewSamples(usize),
}
