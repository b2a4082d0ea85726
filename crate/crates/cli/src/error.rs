use thiserror::Error;

/// Everything the CLI can fail with; each variant maps to a stable exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at `{field}`: {constraint}")]
    Schema { field: String, constraint: String },
    #[error("computation failed in {context}: {source}")]
    Compute {
        context: String,
        #[source]
        source: qgame_core::Error,
    },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Schema { .. } => 2,
            CliError::Compute { .. } => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub(crate) fn compute(context: impl Into<String>) -> impl FnOnce(qgame_core::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Compute { context, source }
    }
}
