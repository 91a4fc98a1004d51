use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numeric error ({context}): {source}")]
    Numeric {
        context: String,
        #[source]
        source: darkbright::Error,
    },
    #[error("{0}")]
    Check(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn numeric<S: Into<String>>(context: S) -> impl FnOnce(darkbright::Error) -> Self {
        let context = context.into();
        move |source| Self::Numeric { context, source }
    }

    pub fn io(path: impl Into<String>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| Self::Io { path, source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Numeric { .. } | Self::Check(_) => 3,
            Self::Io { .. } => 4,
        }
    }
}
