use crate::assignment::{Assignment, AssignmentInstance, AssignmentProblem};
use crate::error::Result;
use crate::model::{project_agents, FacilityDistances, PreferenceProfile};
use crate::scalar::Scalar;
use crate::solvers::Solver;

/// The problem posed over copies of the agents placed at their first choices,
/// where every distance is read off `l`.
pub fn project_problem<T: Scalar>(
    profile: &PreferenceProfile,
    l: &FacilityDistances<T>,
    problem: &AssignmentProblem<T>,
) -> Result<AssignmentInstance<T>> {
    let projected = project_agents(profile, l)?;
    let mut instance = AssignmentInstance::new(problem.clone(), projected.cost_matrix())?;
    instance.sites = Some((projected.tops().to_vec(), l.clone()));
    Ok(instance)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reduction<T> {
    /// Each agent receives the facility its projected copy received.
    pub assignment: Assignment,
    pub solver: Solver,
    pub beta: f64,
    pub exact: bool,
    /// Worst-case distortion guarantee `1 + 2 beta`.
    pub guarantee: f64,
    /// Cost of the assignment on the projected agents.
    pub projected_cost: T,
}

/// Solves the projected problem and hands each agent its copy's facility.
pub fn reduce_and_solve<T: Scalar>(
    problem: &AssignmentProblem<T>,
    profile: &PreferenceProfile,
    l: &FacilityDistances<T>,
    solver: Solver,
) -> Result<Reduction<T>> {
    let projected = project_problem(profile, l, problem)?;
    let concrete = solver.resolve(&projected);
    let result = concrete.solve(&projected)?;
    let projected_cost = projected.cost(&result.assignment);
    Ok(Reduction {
        assignment: result.assignment,
        solver: concrete,
        beta: result.beta,
        exact: result.exact,
        guarantee: 1.0 + 2.0 * result.beta,
        projected_cost,
    })
}
