//! Component classification, flower detection and the invariants 𝐱 and 𝐟₂.

mod degree;
mod f2;
mod flowers;
mod obstruction;
mod passages;
mod shape;

pub use degree::{degree_integral, degree_x, Degree};
pub use f2::{count_f2, count_on, psi_grid, F2Count, F2_ORIENTATION, MASK_MIN_PSI};
pub use flowers::{
    chart_psi, chart_psi_norm, flower_location_error, is_flower, locate_g_plus_2_flower, psi, tangent_argument,
    FlowerReport, Psi, THROUGH_E1,
};
pub use obstruction::{bottom_family, obstruction_check, ObstructionReport};
pub use passages::{flower_times, passages, passages_with, Passage, PassageKind, BALL_RADIUS, PASSAGE_SAMPLES};
pub use shape::{classify, is_convex, is_simple, phi, segment_distance, self_intersection, ComponentClass};
