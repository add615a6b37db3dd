use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),
    #[error("reflection closure exceeded {bound} roots; Cartan matrix is not of finite type")]
    NonFiniteType { bound: usize },
    #[error("simple root index {index} out of range (0-based, |Δ| = {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("unknown builtin group name `{0}`")]
    UnknownName(String),
    #[error("Weyl group has more than {bound} elements")]
    GroupTooLarge { bound: usize },
    #[error("invalid parabolic data: {0}")]
    InvalidParabolic(String),
    #[error("invalid field data: {0}")]
    InvalidField(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("characters live in different groups (field, coefficient mode or rank differ)")]
    ModeMismatch,
    #[error("characters are defined over different fields")]
    FieldMismatch,
    #[error("character is not trivial on the coroots of the Levi (fails on simple root α{root})")]
    /// `root` is 1-based.
    NotLCharacter { root: usize },
    #[error(
        "degree {degree} is outside the proven range for artinian coefficients (n <= 1); pass an override to evaluate anyway"
    )]
    ValidityDomain { degree: usize },
}
