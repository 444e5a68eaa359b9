//! The inverse direction: rebuilding a surface group representation from
//! its two hyperelliptic images, and the chart of the fibre over a fixed
//! first image.

mod chart;
mod closing;
mod reconstruct;

pub use chart::{chart_coordinates, fibre_partner, fibre_point, fibre_point_with, FibreOptions};
pub use closing::{
    four_point_forward, four_point_invert, four_point_p4, two_point_check, two_point_quadratic, two_point_solve,
    FourPointConfig, TwoPointInput, TwoPointSolution,
};
pub use reconstruct::{conjugator_lengths, reconstruct, solve_conj_translation};
