pub mod count;
pub mod fiber;
pub mod grr;
pub mod oracle;
pub mod scan;

use crate::{EXIT_HYPOTHESIS, EXIT_USAGE, EXIT_VERIFICATION};
use conics_core::ci::CiError;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandError {
    pub code: u8,
    pub message: String,
}

impl CommandError {
    pub fn usage(message: impl ToString) -> Self {
        CommandError {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    pub fn verification(message: impl ToString) -> Self {
        CommandError {
            code: EXIT_VERIFICATION,
            message: message.to_string(),
        }
    }
}

impl From<CiError> for CommandError {
    fn from(e: CiError) -> Self {
        let code = match e {
            CiError::Hypothesis(_) => EXIT_HYPOTHESIS,
            CiError::Inconsistent { .. } => EXIT_VERIFICATION,
            _ => EXIT_USAGE,
        };
        CommandError {
            code,
            message: e.to_string(),
        }
    }
}

pub(crate) fn degrees_json(d: &[u32]) -> Value {
    Value::from(d.to_vec())
}

pub(crate) fn flag(b: bool) -> String {
    b.to_string()
}
