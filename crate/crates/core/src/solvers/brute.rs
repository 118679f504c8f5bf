use crate::assignment::{Assignment, AssignmentInstance};
use crate::error::{Error, Result};
use crate::scalar::{approx_eq, Scalar};
use crate::solvers::SolverResult;

/// Valid assignments examined before exhaustive search gives up.
pub const MAX_CANDIDATES: usize = 1_000_000;

/// Globally optimal valid assignment by depth-first enumeration. Among
/// optimal assignments the lexicographically first wins.
pub fn brute_force_optimal<T: Scalar>(instance: &AssignmentInstance<T>) -> Result<SolverResult<T>> {
    let problem = &instance.problem;
    let mut best: Option<(T, Assignment)> = None;
    let mut seen = 0usize;
    problem.search(&mut |x| {
        seen += 1;
        if seen > MAX_CANDIDATES {
            return false;
        }
        let candidate = Assignment(x.to_vec());
        let c = instance.cost(&candidate);
        if best.as_ref().is_none_or(|(b, _)| c < *b && !approx_eq(&c, b)) {
            best = Some((c, candidate));
        }
        true
    })?;
    if seen > MAX_CANDIDATES {
        return Err(Error::SearchSpaceTooLarge {
            size: problem.raw_search_space(),
            limit: MAX_CANDIDATES as u128,
        });
    }
    let (cost, assignment) = best.ok_or(Error::NoValidAssignment)?;
    Ok(SolverResult::exact(assignment, cost))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::AssignmentProblem;
    use crate::model::Facility;

    #[test]
    fn single_agent_single_facility() {
        let p = AssignmentProblem::<f64>::matching_min_cost(1, 1).unwrap();
        let r = brute_force_optimal(&AssignmentInstance::new(p, vec![vec![4.0]]).unwrap()).unwrap();
        assert_eq!(r.assignment, Assignment(vec![Facility(0)]));
        assert_eq!(r.cost, 4.0);
    }

    #[test]
    fn two_by_two_matching() {
        let p = AssignmentProblem::<f64>::matching_min_cost(2, 2).unwrap();
        let inst = AssignmentInstance::new(p, vec![vec![0.0, 5.0], vec![1.0, 9.0]]).unwrap();
        let r = brute_force_optimal(&inst).unwrap();
        assert_eq!(r.cost, 6.0);
        assert_eq!(r.assignment, Assignment(vec![Facility(1), Facility(0)]));
    }

    #[test]
    fn social_choice_picks_cheapest_column() {
        let p = AssignmentProblem::<f64>::social_choice_sum(3, 3).unwrap();
        let dist = vec![vec![1.0, 0.0, 2.0], vec![1.0, 3.0, 2.0], vec![1.0, 3.0, 0.0]];
        let r = brute_force_optimal(&AssignmentInstance::new(p, dist).unwrap()).unwrap();
        assert_eq!(r.assignment, Assignment::constant(3, Facility(0)));
        assert_eq!(r.cost, 3.0);
    }

    #[test]
    fn ties_resolve_lexicographically() {
        let p = AssignmentProblem::<f64>::social_choice_sum(2, 3).unwrap();
        let r = brute_force_optimal(&AssignmentInstance::new(p, vec![vec![1.0; 3]; 2]).unwrap()).unwrap();
        assert_eq!(r.assignment, Assignment::constant(2, Facility(0)));
    }

    #[test]
    fn refuses_large_spaces() {
        let p = AssignmentProblem::<f64>::k_median(12, 4, 4).unwrap();
        let r = brute_force_optimal(&AssignmentInstance::new(p, vec![vec![1.0; 4]; 12]).unwrap());
        assert!(matches!(r, Err(Error::SearchSpaceTooLarge { .. })));
    }
}
