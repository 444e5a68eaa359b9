use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix has determinant {det}, expected 1 within {tolerance:e}")]
    NotUnimodular { det: f64, tolerance: f64 },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("point {x} + {y}i is not in the upper half-plane")]
    NotInterior { x: f64, y: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("isometry is not a translation along the normalized geodesic")]
    NotInV,

    #[error("point is at distance {distance:e} from the axis (limit {limit:e})")]
    PointNotOnAxis { distance: f64, limit: f64 },

    #[error("geodesics coincide; their intersection is not a point")]
    DegenerateIntersection,

    #[error("matrix is not a half-turn (trace {trace:e})")]
    NotAHalfTurn { trace: f64 },

    #[error("matrix is not hyperbolic ({what})")]
    NotHyperbolic { what: String },

    #[error("generator index {index} out of range for {count} generators")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid representation input: {0}")]
    InvalidInput(String),

    #[error("relation residual {residual:e} exceeds {limit:e}")]
    ResidualTooLarge { residual: f64, limit: f64 },

    #[error("conjugation by r does not invert g_{index} (defect {defect:e})")]
    NotHyperellipticInvolution { index: usize, defect: f64 },

    #[error("boundary cycle has coinciding points at positions {0} and {1}")]
    DuplicatePoints(usize, usize),

    #[error("axes of g_1 and g_{index} do not cross; representation is outside the maximal component")]
    NotInMaximalComponent { index: usize },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("half-turn centres are not on the same equidistant curve (offsets {offset_a} and {offset_c})")]
    NotSameEquidistant { offset_a: f64, offset_c: f64 },

    #[error("pair does not satisfy the alternating fibre relation (sum {sum:e})")]
    NotAFibrePair { sum: f64 },

    #[error("the two representations do not share r_{index} (distance {distance:e})")]
    MismatchedBase { index: usize, distance: f64 },

    #[error("root not bracketed in [{lo:e}, {hi:e}]")]
    OutOfRange { lo: f64, hi: f64 },

    #[error("root finder failed: {0}")]
    RootFinding(String),

    #[error("fibre construction failed: {0}")]
    FibreConstruction(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("triple is not in the closed ball: Re(-g12 g23 g31) = {real_part:e}")]
    NotAPointTriple { real_part: f64 },
}
