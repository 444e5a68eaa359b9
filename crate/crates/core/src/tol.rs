//! Numerical thresholds shared across modules.
//!
//! Values sit one to two orders of magnitude above the rounding that
//! accumulates over products of at most sixteen 2x2 matrices.

/// Determinant check when a matrix is constructed from user data.
pub const DET: f64 = 1e-10;

/// Smallest imaginary part accepted for an interior point.
pub const INTERIOR_Y: f64 = 1e-12;

/// Band around |trace| = 2 that is classified as parabolic.
pub const CLASSIFY: f64 = 1e-9;

/// Hyperbolic distance from a point to an axis below which it counts as on it.
pub const ON_AXIS: f64 = 1e-8;

/// Trace magnitude below which a matrix counts as a half-turn.
pub const HALF_TURN: f64 = 1e-8;

/// Generic entrywise comparison up to sign.
pub const COMPARE: f64 = 1e-8;

/// Off-diagonal size (relative) allowed for membership in the translation group.
pub const IN_V: f64 = 1e-9;

/// Relation residual accepted as input by the fibration maps.
pub const INPUT_RESIDUAL: f64 = 1e-6;

/// Equality of equidistant offsets when matching half-turn centres.
pub const SAME_EQUIDISTANT: f64 = 1e-7;

/// Alternating-sum tolerance for a pair to be accepted as a fibre pair.
pub const FIBRE_PAIR: f64 = 1e-6;

/// Angular separation below which two boundary points coincide.
pub const ANGULAR: f64 = 1e-10;

/// Slack for the sign guard of the complex hyperbolic triangle formula.
pub const GRAM_GUARD: f64 = 1e-10;
