//! Upper half-plane model: points, boundary, isometries and geodesics.

mod isometry;
mod matrix;
mod points;

pub use isometry::{
    axis, classify, distance_to_geodesic, half_turn_center, intersect_geodesics, normalize_to,
    normalize_to_with_reference, point_on_ray, reflection, signed_offset, split_at_axis_point, translation_along,
    v_coordinate, IsometryClass,
};
pub use matrix::{product, ProjMatrix};
pub use points::{BoundaryPoint, EquidistantRay, Geodesic, InteriorPoint, Point};
