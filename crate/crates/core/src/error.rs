use num_bigint::BigInt;
use thiserror::Error;

use crate::exactmath::Rat;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate surface: discriminant vanishes identically")]
    DegenerateSurface,
    #[error("singular curve: discriminant is zero")]
    SingularCurve,
    #[error("singular fiber at t = {0}")]
    SingularFiber(Rat),
    #[error("point is not on the curve")]
    OffCurve,
    #[error("section is 2-torsion (y vanishes identically)")]
    TwoTorsionSection,
    #[error("bisection data d is a square; split it into two sections")]
    SplitBisection,
    #[error("zero denominator in {formula}")]
    ZeroDenominator { formula: &'static str },
    #[error("side condition violated: {0}")]
    SideCondition(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("square Pell discriminant {0}")]
    SquareDiscriminant(BigInt),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
