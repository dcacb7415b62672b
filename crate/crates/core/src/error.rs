use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial contains eps where an eps-free polynomial is required: {0}")]
    ContainsEpsilon(String),

    #[error("elementary symmetric index {index} out of range for {len} weights")]
    SymmetricIndex { index: usize, len: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not an integral linear form in a, b, c: {0}")]
    NotLinearForm(String),

    #[error("ideal {0} is not cofinite")]
    NotCofinite(String),

    #[error("ideal {ideal} has {count} generators; a two-generator complete intersection is required")]
    NotCompleteIntersection { ideal: String, count: usize },

    #[error("modifying cubic {0} must be a principal ideal")]
    NotPrincipal(String),

    #[error("twist degree {0} outside 0..=5")]
    TwistDegree(u32),

    #[error("entry {0} is not a dual-number scalar (rational + rational*eps)")]
    NotDualScalar(String),

    #[error("quadric space has rank {rank} at eps = 0, expected 3")]
    RankDeficient { rank: usize },

    #[error("jacobian minors span a space of dimension {dim}, expected 3")]
    JacobianDimension { dim: usize },

    #[error("deformation check: {0}")]
    Deformation(String),

    #[error("fixed point {point}: bundle {bundle} has {found} weights, expected {expected}")]
    WeightCount { point: usize, bundle: String, found: usize, expected: usize },

    #[error("fixed point {point}: determinant rule gives H = {det}, support rule gives H = {support}")]
    HWeightDisagreement { point: usize, det: String, support: String },

    #[error("fixed point {point}: {reason}")]
    FixedPoint { point: usize, reason: String },

    #[error("weight table: {0}")]
    Table(String),

    #[error("class has degree {found}, but integration needs degree {expected}")]
    Degree { found: u32, expected: u32 },

    #[error("class restriction at fixed point {point} is not homogeneous of degree {degree}: {poly}")]
    NotHomogeneous { point: usize, degree: u32, poly: String },

    #[error("cannot combine classes of degree {left} and {right}")]
    MixedDegree { left: u32, right: u32 },

    #[error("tangent weight {weight} at fixed point {point} vanishes at (a, b, c) = {triple:?}")]
    VanishingWeight { point: usize, weight: String, triple: [i64; 3] },

    #[error("localization sum is not constant: {first} at {first_triple:?} but {other} at {other_triple:?}")]
    NonConstant {
        first: String,
        first_triple: [i64; 3],
        other: String,
        other_triple: [i64; 3],
    },

    #[error("localization sum {0} is not an integer")]
    NonInteger(String),

    #[error("sample plan: {0}")]
    SamplePlan(String),

    #[error("unknown bundle {0}")]
    UnknownBundle(String),

    #[error("unknown class {0}")]
    UnknownClass(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
