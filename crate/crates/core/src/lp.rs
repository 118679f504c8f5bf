//! Dense two-phase tableau simplex.
//!
//! Sized for the audit programs in this crate (a few hundred rows, under a
//! hundred structural columns). All variables are implicitly nonnegative.
//! Pivoting starts with Dantzig's rule and falls back to Bland's rule after a
//! run of degenerate pivots, which rules out cycling. With an exact scalar the
//! result is exact.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint<T> {
    pub terms: Vec<(usize, T)>,
    pub relation: Relation,
    pub rhs: T,
}

/// `maximize objective · x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    num_vars: usize,
    objective: Vec<T>,
    constraints: Vec<Constraint<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { value: T, x: Vec<T> },
    Infeasible,
    Unbounded,
}

impl<T: Scalar> LpOutcome<T> {
    pub fn optimal(self) -> Option<(T, Vec<T>)> {
        match self {
            LpOutcome::Optimal { value, x } => Some((value, x)),
            _ => None,
        }
    }
}

const MAX_PIVOTS: usize = 200_000;
const DEGENERATE_RUN_BEFORE_BLAND: usize = 40;

impl<T: Scalar> LinearProgram<T> {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            objective: vec![T::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn set_objective(&mut self, var: usize, coeff: T) {
        self.objective[var] = coeff;
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, T)>, relation: Relation, rhs: T) {
        debug_assert!(terms.iter().all(|(v, _)| *v < self.num_vars));
        self.constraints.push(Constraint { terms, relation, rhs });
    }

    pub fn solve(&self) -> Result<LpOutcome<T>> {
        Tableau::build(self).solve(&self.objective)
    }
}

struct Tableau<T> {
    rows: usize,
    cols: usize,
    /// row-major, `cols + 1` entries per row, rhs last
    data: Vec<T>,
    basis: Vec<usize>,
    num_structural: usize,
    first_artificial: usize,
    tol: T,
}

impl<T: Scalar> Tableau<T> {
    fn build(lp: &LinearProgram<T>) -> Self {
        let rows = lp.constraints.len();
        // Normalise to nonnegative right-hand sides first so we know which rows
        // start with a slack basis and which need an artificial.
        let normalised: Vec<(Vec<(usize, T)>, Relation, T)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs < T::zero() {
                    let flipped = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    let terms = c.terms.iter().map(|(v, a)| (*v, -a.clone())).collect();
                    (terms, flipped, -c.rhs.clone())
                } else {
                    (c.terms.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();

        let num_slack = normalised.iter().filter(|(_, r, _)| *r != Relation::Eq).count();
        let num_artificial = normalised.iter().filter(|(_, r, _)| *r != Relation::Le).count();
        let first_slack = lp.num_vars;
        let first_artificial = first_slack + num_slack;
        let cols = first_artificial + num_artificial;
        let width = cols + 1;

        let mut data = vec![T::zero(); rows * width];
        let mut basis = vec![0; rows];
        let mut next_slack = first_slack;
        let mut next_art = first_artificial;
        for (r, (terms, relation, rhs)) in normalised.into_iter().enumerate() {
            let row = &mut data[r * width..(r + 1) * width];
            for (v, a) in terms {
                row[v] = row[v].clone() + a;
            }
            row[cols] = rhs;
            match relation {
                Relation::Le => {
                    row[next_slack] = T::one();
                    basis[r] = next_slack;
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -T::one();
                    next_slack += 1;
                    row[next_art] = T::one();
                    basis[r] = next_art;
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = T::one();
                    basis[r] = next_art;
                    next_art += 1;
                }
            }
        }

        Self {
            rows,
            cols,
            data,
            basis,
            num_structural: lp.num_vars,
            first_artificial,
            tol: T::pivot_tolerance(),
        }
    }

    fn width(&self) -> usize {
        self.cols + 1
    }

    fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.width() + c]
    }

    fn rhs(&self, r: usize) -> &T {
        self.at(r, self.cols)
    }

    fn solve(mut self, objective: &[T]) -> Result<LpOutcome<T>> {
        if self.first_artificial < self.cols {
            let mut costs = vec![T::zero(); self.cols];
            for c in costs.iter_mut().skip(self.first_artificial) {
                *c = -T::one();
            }
            let mut reduced = self.reduced_costs(&costs);
            if let Phase::Unbounded = self.run(&mut reduced, self.cols)? {
                return Err(Error::LinearProgram("phase one reported unbounded".into()));
            }
            let infeasibility = -reduced[self.cols].clone();
            let scale = T::one() + self.rhs_scale();
            if infeasibility > self.tol.clone() * scale * T::of_usize(1000) {
                return Ok(LpOutcome::Infeasible);
            }
            self.expel_artificials();
        }

        let mut costs = vec![T::zero(); self.cols];
        for (c, o) in costs.iter_mut().zip(objective) {
            *c = o.clone();
        }
        let mut reduced = self.reduced_costs(&costs);
        match self.run(&mut reduced, self.first_artificial)? {
            Phase::Unbounded => Ok(LpOutcome::Unbounded),
            Phase::Optimal => {
                let mut x = vec![T::zero(); self.num_structural];
                for r in 0..self.rows {
                    let b = self.basis[r];
                    if b < self.num_structural {
                        let v = self.rhs(r).clone();
                        x[b] = if v < T::zero() { T::zero() } else { v };
                    }
                }
                let value = objective
                    .iter()
                    .zip(&x)
                    .fold(T::zero(), |acc, (c, v)| acc + c.clone() * v.clone());
                Ok(LpOutcome::Optimal { value, x })
            }
        }
    }

    fn rhs_scale(&self) -> T {
        (0..self.rows).fold(T::zero(), |acc, r| {
            let v = self.rhs(r).abs();
            if v > acc {
                v
            } else {
                acc
            }
        })
    }

    /// Reduced-cost row `c_B B^-1 A - c`, with the objective value in the last slot.
    fn reduced_costs(&self, costs: &[T]) -> Vec<T> {
        let width = self.width();
        let mut reduced: Vec<T> = (0..width)
            .map(|c| if c < self.cols { -costs[c].clone() } else { T::zero() })
            .collect();
        for r in 0..self.rows {
            let cb = &costs[self.basis[r]];
            if cb.is_zero() {
                continue;
            }
            let row = &self.data[r * width..(r + 1) * width];
            for (red, a) in reduced.iter_mut().zip(row) {
                if !a.is_zero() {
                    *red = red.clone() + cb.clone() * a.clone();
                }
            }
        }
        reduced
    }

    fn run(&mut self, reduced: &mut [T], allowed_cols: usize) -> Result<Phase> {
        let mut degenerate_run = 0usize;
        let mut bland = T::is_exact();
        for _ in 0..MAX_PIVOTS {
            let entering = if bland {
                (0..allowed_cols).find(|&c| reduced[c] < -self.tol.clone())
            } else {
                let mut best: Option<(usize, T)> = None;
                for (c, r) in reduced.iter().enumerate().take(allowed_cols) {
                    if *r < -self.tol.clone() && best.as_ref().is_none_or(|(_, b)| r < b) {
                        best = Some((c, r.clone()));
                    }
                }
                best.map(|(c, _)| c)
            };
            let Some(entering) = entering else {
                return Ok(Phase::Optimal);
            };

            let mut leaving: Option<(usize, T)> = None;
            for r in 0..self.rows {
                let a = self.at(r, entering);
                if *a > self.tol {
                    let ratio = self.rhs(r).clone() / a.clone();
                    let better = match &leaving {
                        None => true,
                        Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                    };
                    if better {
                        leaving = Some((r, ratio));
                    }
                }
            }
            let Some((pivot_row, ratio)) = leaving else {
                return Ok(Phase::Unbounded);
            };
            if ratio <= self.tol {
                degenerate_run += 1;
                if degenerate_run > DEGENERATE_RUN_BEFORE_BLAND {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }
            self.pivot(pivot_row, entering, reduced);
        }
        Err(Error::LinearProgram(format!(
            "no convergence after {MAX_PIVOTS} pivots"
        )))
    }

    fn pivot(&mut self, pivot_row: usize, entering: usize, reduced: &mut [T]) {
        let width = self.width();
        let inv = T::one() / self.at(pivot_row, entering).clone();
        {
            let row = &mut self.data[pivot_row * width..(pivot_row + 1) * width];
            for v in row.iter_mut() {
                if !v.is_zero() {
                    *v = v.clone() * inv.clone();
                }
            }
            row[entering] = T::one();
        }
        let pivot_copy: Vec<(usize, T)> = self.data[pivot_row * width..(pivot_row + 1) * width]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        let tiny = self.tol.clone() * self.tol.clone();
        for r in 0..self.rows {
            if r == pivot_row {
                continue;
            }
            let factor = self.data[r * width + entering].clone();
            if factor.is_zero() {
                continue;
            }
            let row = &mut self.data[r * width..(r + 1) * width];
            for (c, p) in &pivot_copy {
                let v = row[*c].clone() - factor.clone() * p.clone();
                row[*c] = if v.abs() <= tiny { T::zero() } else { v };
            }
            row[entering] = T::zero();
            if row[self.cols] < T::zero() && row[self.cols] > -self.tol.clone() {
                row[self.cols] = T::zero();
            }
        }
        let factor = reduced[entering].clone();
        if !factor.is_zero() {
            for (c, p) in &pivot_copy {
                let v = reduced[*c].clone() - factor.clone() * p.clone();
                reduced[*c] = if v.abs() <= tiny { T::zero() } else { v };
            }
            reduced[entering] = T::zero();
        }
        self.basis[pivot_row] = entering;
    }

    /// After phase one every artificial still in the basis sits at zero; pivot
    /// it out on any usable column, or drop the row when it is redundant.
    fn expel_artificials(&mut self) {
        let mut r = 0;
        while r < self.rows {
            if self.basis[r] >= self.first_artificial {
                let col = (0..self.first_artificial).find(|&c| self.at(r, c).abs() > self.tol);
                match col {
                    Some(c) => {
                        let mut scratch = vec![T::zero(); self.width()];
                        self.pivot(r, c, &mut scratch);
                    }
                    None => {
                        self.remove_row(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    fn remove_row(&mut self, r: usize) {
        let width = self.width();
        self.data.drain(r * width..(r + 1) * width);
        self.basis.remove(r);
        self.rows -= 1;
    }
}

enum Phase {
    Optimal,
    Unbounded,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn assert_optimal(outcome: LpOutcome<f64>, expected: f64) -> Vec<f64> {
        match outcome {
            LpOutcome::Optimal { value, x } => {
                assert!((value - expected).abs() < 1e-9, "value {value} != {expected}");
                x
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn textbook_maximisation() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let mut lp = LinearProgram::new(2);
        lp.set_objective(0, 3.0);
        lp.set_objective(1, 5.0);
        lp.add_constraint(vec![(0, 1.0)], Relation::Le, 4.0);
        lp.add_constraint(vec![(1, 2.0)], Relation::Le, 12.0);
        lp.add_constraint(vec![(0, 3.0), (1, 2.0)], Relation::Le, 18.0);
        let x = assert_optimal(lp.solve().unwrap(), 36.0);
        assert!((x[0] - 2.0).abs() < 1e-9 && (x[1] - 6.0).abs() < 1e-9);
    }

    #[test]
    fn equality_and_ge_rows_need_phase_one() {
        // min x + y (as max -x - y), x + y >= 2, x - y = 1 -> x = 1.5, y = 0.5
        let mut lp = LinearProgram::new(2);
        lp.set_objective(0, -1.0);
        lp.set_objective(1, -1.0);
        lp.add_constraint(vec![(0, 1.0), (1, 1.0)], Relation::Ge, 2.0);
        lp.add_constraint(vec![(0, 1.0), (1, -1.0)], Relation::Eq, 1.0);
        let x = assert_optimal(lp.solve().unwrap(), -2.0);
        assert!((x[0] - 1.5).abs() < 1e-9 && (x[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn negative_rhs_is_normalised() {
        // max x, -x >= -3  (x <= 3)
        let mut lp = LinearProgram::new(1);
        lp.set_objective(0, 1.0);
        lp.add_constraint(vec![(0, -1.0)], Relation::Ge, -3.0);
        assert_optimal(lp.solve().unwrap(), 3.0);
    }

    #[test]
    fn detects_infeasible() {
        let mut lp = LinearProgram::<f64>::new(1);
        lp.add_constraint(vec![(0, 1.0)], Relation::Le, 1.0);
        lp.add_constraint(vec![(0, 1.0)], Relation::Ge, 2.0);
        assert_eq!(lp.solve().unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let mut lp = LinearProgram::<f64>::new(2);
        lp.set_objective(0, 1.0);
        lp.add_constraint(vec![(0, 1.0), (1, -1.0)], Relation::Le, 1.0);
        assert_eq!(lp.solve().unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::new(2);
        lp.set_objective(0, 1.0);
        lp.add_constraint(vec![(0, 1.0), (1, 1.0)], Relation::Eq, 1.0);
        lp.add_constraint(vec![(0, 2.0), (1, 2.0)], Relation::Eq, 2.0);
        assert_optimal(lp.solve().unwrap(), 1.0);
    }

    #[test]
    fn exact_arithmetic_gives_exact_fraction() {
        // max x + y, 3x + y <= 1, x + 3y <= 1 -> x = y = 1/4, value 1/2
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let mut lp = LinearProgram::new(2);
        lp.set_objective(0, r(1, 1));
        lp.set_objective(1, r(1, 1));
        lp.add_constraint(vec![(0, r(3, 1)), (1, r(1, 1))], Relation::Le, r(1, 1));
        lp.add_constraint(vec![(0, r(1, 1)), (1, r(3, 1))], Relation::Le, r(1, 1));
        let (value, x) = lp.solve().unwrap().optimal().unwrap();
        assert_eq!(value, r(1, 2));
        assert_eq!(x, vec![r(1, 4), r(1, 4)]);
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling instance for Dantzig's rule.
        let mut lp = LinearProgram::new(4);
        for (v, c) in [(0, 0.75), (1, -150.0), (2, 0.02), (3, -6.0)] {
            lp.set_objective(v, c);
        }
        lp.add_constraint(vec![(0, 0.25), (1, -60.0), (2, -0.04), (3, 9.0)], Relation::Le, 0.0);
        lp.add_constraint(vec![(0, 0.5), (1, -90.0), (2, -0.02), (3, 3.0)], Relation::Le, 0.0);
        lp.add_constraint(vec![(2, 1.0)], Relation::Le, 1.0);
        assert_optimal(lp.solve().unwrap(), 0.05);
    }
}
