//! Shared error type for model construction, formula building, and oracle runs.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("row ({row}) violates the law for {var}: law gives {expected}, row has {found}")]
    CompatibilityViolation {
        var: String,
        row: String,
        expected: String,
        found: String,
    },
    #[error("law table for {0} is constant")]
    ConstantFunction(String),
    #[error("laws contain a dependency cycle: {}", .0.join(" -> "))]
    CyclicLaws(Vec<String>),
    #[error("{0}")]
    RangeViolation(String),
    #[error("{0} has no law")]
    NotEndogenous(String),
    #[error("operands belong to different signatures")]
    SignatureMismatch,
    #[error("intervention binds {0} to two distinct values")]
    InconsistentIntervention(String),
    #[error("model has no rows")]
    EmptyModel,
    #[error("operation needs two distinct variables, got {0} twice")]
    SameVariable(String),
    #[error("{0}")]
    IllTypedArgument(String),
    #[error("operand is not a CO formula")]
    NotCoFormula,
    #[error("formula would need at least {estimate} nodes, budget is {budget}")]
    FormulaTooLarge { estimate: u64, budget: u64 },
    #[error("weights are not a probability distribution: {0}")]
    WeightsNotNormalized(String),
    #[error("assignment ({0}) has positive weight but violates the laws")]
    SupportIncompatible(String),
    #[error("enumeration would visit {estimate} models, cap is {cap}")]
    BudgetTooLarge { estimate: String, cap: u128 },
    #[error("unknown schema id `{0}`")]
    UnknownSchema(String),
    #[error("unknown rule id `{0}`")]
    UnknownRule(String),
    #[error("formula is not in normal form")]
    NotInNormalForm,
    #[error("count overflow: {0}")]
    CountOverflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
