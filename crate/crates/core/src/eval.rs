use alloc::string::String;
use serde::Serialize;

/// A metric value that may be unavailable for a given dataset.
///
/// "Not evaluable" is a first-class state rather than an error: a profile for
/// an empty dataset is still a valid profile, it just cannot carry a
/// completeness ratio.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Evaluation<T> {
    Evaluated(T),
    NotEvaluable { reason: String },
}

impl<T> Evaluation<T> {
    pub fn not_evaluable(reason: impl Into<String>) -> Self {
        Evaluation::NotEvaluable {
            reason: reason.into(),
        }
    }

    pub fn evaluated(&self) -> Option<&T> {
        match self {
            Evaluation::Evaluated(v) => Some(v),
            Evaluation::NotEvaluable { .. } => None,
        }
    }

    pub fn is_evaluated(&self) -> bool {
        matches!(self, Evaluation::Evaluated(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Evaluation<U> {
        match self {
            Evaluation::Evaluated(v) => Evaluation::Evaluated(f(v)),
            Evaluation::NotEvaluable { reason } => Evaluation::NotEvaluable { reason },
        }
    }
}
