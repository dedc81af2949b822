use conic_core::ConicError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] ConicError),
    #[error("certification failed: {0}")]
    Certification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io(..) | Self::Parse(_) => 2,
            Self::Core(e) => match e {
                ConicError::UnsupportedCount { .. } => 4,
                ConicError::NonFinite
                | ConicError::ZeroLine
                | ConicError::PointAtInfinity(..)
                | ConicError::UnknownSolver(_)
                | ConicError::ShapeMismatch { .. } => 2,
                _ => 3,
            },
            Self::Certification(_) => 5,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use conic_core::GeneralPositionClause;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Parse("x".into()).exit_code(), 2);
        let gp = ConicError::GeneralPosition(GeneralPositionClause::CollinearPoints([0, 1, 2]));
        assert_eq!(CliError::Core(gp).exit_code(), 3);
        assert_eq!(
            CliError::Core(ConicError::DegenerateCase("x".into())).exit_code(),
            3
        );
        let count = ConicError::UnsupportedCount {
            points: 3,
            lines: 0,
        };
        assert_eq!(CliError::Core(count).exit_code(), 4);
        assert_eq!(CliError::Certification("x".into()).exit_code(), 5);
    }
}
