//! Closed forms and series for the functionals on analytic families.

pub mod capacity;
pub mod eigen;
mod quotient;
pub mod torsion;
pub mod triangle;

pub use capacity::{
    capacity_ball, capacity_prolate_spheroid, surface_area_ball, surface_area_prolate_spheroid,
    volume_prolate_spheroid,
};
pub use eigen::{
    boundary_energy_lambda1_box, boundary_energy_lambda1_rect, boundary_energy_lambda1_rect_quadrature,
    lambda1_box, lambda1_box_face_energies, lambda1_rect, lambda2_rect,
    literature_boundary_energy_lambda1_rect,
};
pub use quotient::{
    body_surface_area, body_volume, isoperimetric_quotient, volume_quotient_ball, Functional,
    QuotientReport,
};
pub use torsion::{
    boundary_energy_torsion_rect, torsion_field, torsion_rect, torsion_rect_partial,
    torsion_side_energies, torsion_side_energies_quadrature,
};
pub use triangle::{lambda1_triangle, lambda1_triangle_equilateral, lambda1_triangle_equilateral_with, TriangleQuotient};
