use std::path::PathBuf;

/// Failure of one invocation. Each variant knows its exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] mostset_core::Error),
}

impl CliError {
    /// 1 for domain errors on well-formed input, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        use mostset_core::Error as E;
        match self {
            CliError::Core(
                E::EmptyCollection
                | E::CertificateRequired(_)
                | E::UniverseNotInfinite
                | E::ProductTooLarge { .. }
                | E::InvalidHypergraph(_)
                | E::InvalidDensity { .. },
            ) => 1,
            _ => 2,
        }
    }
}
