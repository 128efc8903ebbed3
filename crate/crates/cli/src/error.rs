use thiserror::Error;

/// Problems with the input document. These abort the run with exit code 3;
/// failures inside a check become undetermined reports instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { message: String, line: usize, column: usize },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("unresolved {kind} `{name}` referenced by {context}")]
    Unresolved { kind: &'static str, name: String, context: String },
    #[error("check `{check}` needs a {kind} but {candidates} are declared; name one explicitly")]
    Ambiguous { kind: &'static str, check: String, candidates: usize },
    #[error("missing `{field}` in {context}")]
    Missing { field: &'static str, context: String },
    #[error("duplicate {kind} name `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("invalid bound: {0}")]
    Bound(String),
    #[error("invalid {context}: {message}")]
    Invalid { context: String, message: String },
}

impl InputError {
    pub fn invalid(context: impl Into<String>, message: impl ToString) -> Self {
        InputError::Invalid { context: context.into(), message: message.to_string() }
    }
}
