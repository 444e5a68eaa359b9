#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::manual_is_multiple_of)]

pub mod cxhyp;
pub mod error;
pub mod fibration;
pub mod fibre;
pub mod geom2;
pub mod groups;
pub mod invariants;
pub mod roots;
pub mod seedgen;
pub mod tol;

pub use error::{Error, Result};
