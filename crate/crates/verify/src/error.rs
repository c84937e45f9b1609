use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] qnk_core::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed TOML: {0}")]
    Toml(#[from] toml::de::Error),
}

impl VerifyError {
    /// Whether the error stems from user input rather than a failed
    /// computation.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Self::UnknownCheck(_)
                | Self::Config(_)
                | Self::Json(_)
                | Self::Toml(_)
                | Self::Io { .. }
        )
    }
}

pub type Result<T, E = VerifyError> = std::result::Result<T, E>;
