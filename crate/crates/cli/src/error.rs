use serde_json::{json, Value};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_WINDING: i32 = 3;
pub const EXIT_MALFORMED: i32 = 64;
pub const EXIT_IO: i32 = 66;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: malformed JSON: {source}")]
    Malformed {
        path: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Library(#[from] circext::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Malformed { .. } => EXIT_MALFORMED,
            CliError::Config(_) => EXIT_DOMAIN,
            CliError::Library(circext::Error::NonzeroWinding { .. }) => EXIT_WINDING,
            CliError::Library(circext::Error::Json(_)) => EXIT_MALFORMED,
            CliError::Library(_) => EXIT_DOMAIN,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Malformed { .. } => "malformed-json",
            CliError::Config(_) => "config",
            CliError::Library(circext::Error::NonzeroWinding { .. }) => "winding",
            CliError::Library(_) => "domain",
        }
    }

    /// The JSON document printed in place of a result.
    pub fn to_document(&self) -> Value {
        json!({
            "error": {
                "kind": self.kind(),
                "exit_code": self.exit_code(),
                "message": self.to_string(),
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let w = CliError::Library(circext::Error::NonzeroWinding { winding: 1 });
        assert_eq!(w.exit_code(), 3);
        let d = CliError::Library(circext::Error::Domain("x".into()));
        assert_eq!(d.exit_code(), 2);
        assert_eq!(d.to_document()["error"]["kind"], "domain");
        let io = CliError::Io {
            path: "x".into(),
            source: std::io::Error::from(std::io::ErrorKind::NotFound),
        };
        assert_eq!(io.exit_code(), 66);
    }
}
