use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("unknown case `{0}` (expected one of JKTVI, JKTV, JKTIVa, JKTIVb, JKTII, JKTI)")]
    UnknownCase(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("non-unit variable `{var}` would acquire a negative exponent")]
    SubstitutionDomain { var: String },

    #[error("`{expr}` is not a unit and cannot be inverted")]
    NotUnit { expr: String },

    #[error("equation has degree {degree} in `{var}`, expected 1")]
    NotLinear { var: String, degree: String },

    #[error("coefficient `{coefficient}` of `{var}` is not invertible")]
    NotInvertible { var: String, coefficient: String },

    #[error("variable `{0}` has no numeric value")]
    UnboundVariable(String),

    #[error("invalid numeric assignment: {0}")]
    InvalidAssignment(String),

    #[error("Stokes layout places `{var}` on the diagonal ({row},{col})")]
    DiagonalEntry { row: usize, col: usize, var: String },

    #[error("monomial `{monomial}` does not factor into the invariant generators")]
    NotInvariant { monomial: String },

    #[error("inconsistent closure system: {0}")]
    InconsistentSystem(String),

    #[error("cubic normal form has stray monomials: {0}")]
    Shape(String),

    #[error("degenerate sample after {retries} retries: {reason}")]
    DegenerateSample { retries: usize, reason: String },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|source| Error::Stage {
            stage,
            source: Box::new(source),
        })
    }
}
