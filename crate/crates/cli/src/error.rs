use isoterm_core::decide::DecideError;
use isoterm_core::monoids::MonoidError;
use isoterm_core::nfb::NfbError;
use isoterm_core::{SchemeError, WordError};
use std::path::PathBuf;

pub const EXIT_USAGE: u8 = 64;
pub const EXIT_CAP: u8 = 65;
pub const EXIT_IO: u8 = 66;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Decide(#[from] DecideError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Nfb(#[from] NfbError),
}

fn monoid_cap(e: &MonoidError) -> bool {
    matches!(e, MonoidError::CapExceeded(_) | MonoidError::TooLarge(_))
}

fn decide_cap(e: &DecideError) -> bool {
    match e {
        DecideError::CapExceeded { .. } | DecideError::SpaceCap { .. } => true,
        DecideError::Monoid(m) => monoid_cap(m),
        _ => false,
    }
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> u8 {
        let cap = match self {
            CliError::Io { .. } => return EXIT_IO,
            CliError::Monoid(e) => monoid_cap(e),
            CliError::Decide(e) => decide_cap(e),
            CliError::Nfb(NfbError::AtN { source, .. } | NfbError::Decide(source)) => decide_cap(source),
            _ => false,
        };
        if cap {
            EXIT_CAP
        } else {
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes() {
        assert_eq!(CliError::usage("x").exit_code(), EXIT_USAGE);
        let io = std::io::Error::new(std::io::ErrorKind::NotFound, "gone");
        assert_eq!(CliError::io("a", io).exit_code(), EXIT_IO);
        assert_eq!(CliError::from(DecideError::CapExceeded { cap: 3 }).exit_code(), EXIT_CAP);
        let nested = NfbError::AtN { n: 2, source: DecideError::SpaceCap { size: 9, cap: 1 } };
        assert_eq!(CliError::from(nested).exit_code(), EXIT_CAP);
        assert_eq!(CliError::from(MonoidError::CapExceeded(10)).exit_code(), EXIT_CAP);
        assert_eq!(CliError::from(MonoidError::UnknownPreset("q".into())).exit_code(), EXIT_USAGE);
    }
}
