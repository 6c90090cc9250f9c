//! Plant layout by Hungarian-seeded CRAFT improvement.
//!
//! The pipeline turns a facility load matrix into an assignment problem whose
//! vacant cells are forbidden, solves it exactly, places every matched pair of
//! facilities side by side on a slot grid, and then improves the layout with
//! steepest-descent swaps until no move lowers the total load-distance cost.

pub mod craft;
pub mod exact;
pub mod hungarian;
pub mod layout;
pub mod matrix;
pub mod pipeline;

pub use craft::{
    brute_force_optimum, improve_once, run_craft, CraftConfig, CraftOutcome, SwapStep, SwapTrace,
};
pub use exact::Exact;
pub use hungarian::{solve_assignment, Assignment, AssignmentError, LineCover};
pub use layout::{BlockLayout, DistanceModel, FloorPlan, Slot};
pub use matrix::{CostMatrix, LoadMatrix, MatrixError};
pub use pipeline::{run_mass, MassConfig, MatchingObjective, PipelineResult};
