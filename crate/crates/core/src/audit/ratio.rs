//! Linear-fractional programs `max (N d + a) / (D d + b)` over a polytope
//! `A d <= r`, solved through the substitution `y = t d`, `t >= 0`.

use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::model::AgentInequality;
use crate::scalar::Scalar;

pub(crate) struct RatioProgram<T> {
    lp: LinearProgram<T>,
    objective: Vec<T>,
    tau: usize,
}

pub(crate) enum RatioOutcome<T> {
    /// The ratio is unbounded: the denominator can vanish while the numerator
    /// stays positive.
    Unbounded,
    /// `y` holds the scaled distances and `tau` the scale; when `tau` is zero
    /// the value is only approached by metrics drifting off to infinity.
    Optimal { value: T, y: Vec<T>, tau: T },
}

impl<T: Scalar> RatioProgram<T> {
    /// `num_distances` scaled distance variables followed by the scale.
    pub fn new(num_distances: usize) -> Self {
        Self {
            lp: LinearProgram::new(num_distances + 1),
            objective: vec![T::zero(); num_distances + 1],
            tau: num_distances,
        }
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    /// Adds one agent's row constraints with its distances starting at `offset`.
    pub fn add_agent(&mut self, offset: usize, rows: &[AgentInequality<T>]) {
        for r in rows {
            let mut terms: Vec<(usize, T)> = r.terms.iter().map(|(f, c)| (offset + f.0, c.clone())).collect();
            if !r.rhs.is_zero() {
                terms.push((self.tau, -r.rhs.clone()));
            }
            self.lp.add_constraint(terms, Relation::Le, T::zero());
        }
    }

    pub fn add_objective(&mut self, var: usize, coeff: T) {
        self.objective[var] = self.objective[var].clone() + coeff;
    }

    /// `terms <= 1`, one per denominator that must be covered.
    pub fn add_normalization(&mut self, terms: Vec<(usize, T)>) {
        self.lp.add_constraint(terms, Relation::Le, T::one());
    }

    pub fn solve(mut self) -> Result<RatioOutcome<T>> {
        for (v, c) in self.objective.iter().enumerate() {
            self.lp.set_objective(v, c.clone());
        }
        match self.lp.solve()? {
            LpOutcome::Unbounded => Ok(RatioOutcome::Unbounded),
            LpOutcome::Optimal { value, mut x } => {
                let tau = x.pop().expect("scale variable");
                Ok(RatioOutcome::Optimal { value, y: x, tau })
            }
            // y = 0, t = 0 is always feasible
            LpOutcome::Infeasible => Err(Error::LinearProgram("homogenised program reported infeasible".into())),
        }
    }
}

/// Whether a scale is large enough to divide by.
pub(crate) fn usable_scale<T: Scalar>(tau: &T) -> bool {
    if T::is_exact() {
        tau.is_positive()
    } else {
        tau.to_f64_lossy() > 1e-12
    }
}

/// Scaled distances for a value above 1. A vanishing scale can only carry a
/// value of 1 (every agent equally far from everything), so anything above
/// that without a usable scale is a solver failure.
pub(crate) fn recover_scaled<T: Scalar>(value: &T, tau: &T) -> Result<bool> {
    if *value <= T::one() {
        return Ok(false);
    }
    if usable_scale(tau) {
        return Ok(true);
    }
    let slack = if T::is_exact() { 0.0 } else { 1e-9 };
    if value.to_f64_lossy() > 1.0 + slack {
        return Err(Error::LinearProgram(format!(
            "ratio {value} reported with a vanishing scale"
        )));
    }
    Ok(false)
}
