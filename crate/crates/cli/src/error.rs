//! Front-end errors. Textual faults carry the span of the offending input.

use thiserror::Error;

use crate::span::SourceSpan;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("syntax error at {span}: {message}")]
    Syntax { span: SourceSpan, message: String },

    #[error("unknown variable `{name}` at {span}")]
    UnknownVariable { span: SourceSpan, name: String },

    #[error("value `{value}` is not in the range of `{var}` at {span}")]
    ValueOutOfRange {
        span: SourceSpan,
        var: String,
        value: String,
    },

    #[error("row-level fragment violated at {span}: {message}")]
    CoFragmentViolation { span: SourceSpan, message: String },

    #[error(transparent)]
    Core(#[from] pco_core::Error),
}

impl CliError {
    pub fn syntax(span: SourceSpan, message: impl Into<String>) -> Self {
        CliError::Syntax {
            span,
            message: message.into(),
        }
    }

    pub fn co_violation(span: SourceSpan, message: impl Into<String>) -> Self {
        CliError::CoFragmentViolation {
            span,
            message: message.into(),
        }
    }

    /// The span of the offending text, when the fault is textual.
    pub fn span(&self) -> Option<SourceSpan> {
        match self {
            CliError::Syntax { span, .. }
            | CliError::UnknownVariable { span, .. }
            | CliError::ValueOutOfRange { span, .. }
            | CliError::CoFragmentViolation { span, .. } => Some(*span),
            CliError::Core(_) => None,
        }
    }
}
