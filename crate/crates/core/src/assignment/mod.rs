//! Facility-assignment problems: constraints, distance and facility costs,
//! presets, and the reduction that solves them from rankings alone.

mod constraints;
mod cost;
mod problem;
mod reduction;

pub use constraints::{ConstraintSet, OpenLimit};
pub use cost::{CoassignPenalty, CostSpec, DistanceCost, FacilityCost};
pub use problem::{Assignment, AssignmentInstance, AssignmentProblem, Preset, MAX_ASSIGNMENTS};
pub use reduction::{project_problem, reduce_and_solve, Reduction};

use crate::model::FullMetric;
use crate::scalar::Scalar;

pub fn is_valid<T: Scalar>(x: &Assignment, problem: &AssignmentProblem<T>) -> bool {
    problem.is_valid(x)
}

pub fn total_cost<T: Scalar>(x: &Assignment, d: &FullMetric<T>, problem: &AssignmentProblem<T>) -> T {
    problem.total_cost(x, d)
}
