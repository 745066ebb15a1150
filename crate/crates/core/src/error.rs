use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("polynomial degree {degree} exceeds cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("algebra is not a Novikov algebra")]
    NotNovikov,
    #[error("algebra is not a right Novikov algebra")]
    NotRightNovikov,
    #[error("algebra is not commutative associative")]
    NotCommAssoc,
    #[error("algebra is not a Zinbiel algebra")]
    NotZinbiel,
    #[error("algebra is not a Lie algebra")]
    NotLie,
    #[error("map is not a derivation")]
    NotDerivation,
    #[error("algebra is not a pre-Novikov algebra")]
    NotPreNovikov,
    #[error("maps do not form a representation")]
    NotRepresentation,
    #[error("map is not an O-operator")]
    NotOOperator,
    #[error("data do not form a matched pair")]
    NotMatchedPair,
    #[error("component representation of the matched pair is invalid")]
    InvalidRepresentation,
    #[error("dual algebra of the coproduct is not Novikov")]
    DualNotNovikov,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("search limit exceeded: {0}")]
    CapExceeded(String),
}
