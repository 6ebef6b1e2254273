use std::ops::Range;

use charp::Polynomial;

/// Process exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}", render_input(.message, *.line, *.column))]
    Input {
        message: String,
        line: Option<usize>,
        column: Option<usize>,
    },
    #[error(transparent)]
    Core(#[from] charp::Error),
}

fn render_input(message: &str, line: Option<usize>, column: Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!("line {l}, column {c}: {message}"),
        _ => message.to_string(),
    }
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input {
            message: message.into(),
            line: None,
            column: None,
        }
    }

    /// Input error located at the start of `span` in `text` (1-based).
    pub fn at(text: &str, span: Option<Range<usize>>, message: String) -> Self {
        let (line, column) = match span {
            Some(r) => {
                let start = r.start.min(text.len());
                let before = &text[..start];
                let line = before.matches('\n').count() + 1;
                let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
                (Some(line), Some(column))
            }
            None => (None, None),
        };
        CliError::Input {
            message,
            line,
            column,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input { .. } => EXIT_INPUT,
            CliError::Core(e) if e.is_verification_failure() => EXIT_VERIFICATION,
            CliError::Core(e) if e.is_resource_exhausted() => EXIT_RESOURCE,
            CliError::Core(_) => EXIT_INPUT,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            EXIT_VERIFICATION => "verification_failed",
            EXIT_RESOURCE => "resource_exhausted",
            _ => "input_error",
        }
    }

    /// The offending polynomial carried by a verification failure.
    pub fn witness(&self) -> Option<&Polynomial> {
        match self {
            CliError::Core(charp::Error::CertificateFailure { witness, .. }) => Some(witness),
            CliError::Core(charp::Error::IdentityFailure { witness, .. }) => witness.as_ref(),
            _ => None,
        }
    }
}
