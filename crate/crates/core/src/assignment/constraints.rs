use crate::error::{Error, Result};
use crate::model::Facility;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpenLimit {
    AtMost(usize),
    Exactly(usize),
    AtLeast(usize),
}

impl OpenLimit {
    pub fn admits(self, open: usize) -> bool {
        match self {
            OpenLimit::AtMost(k) => open <= k,
            OpenLimit::Exactly(k) => open == k,
            OpenLimit::AtLeast(k) => open >= k,
        }
    }
}

/// Metric-independent restrictions on which assignments are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    /// Maximum number of agents per facility; `None` is uncapacitated.
    pub capacities: Option<Vec<usize>>,
    pub open_limit: Option<OpenLimit>,
    pub must_coassign: Vec<(usize, usize)>,
    pub must_not_coassign: Vec<(usize, usize)>,
}

impl ConstraintSet {
    pub fn unconstrained() -> Self {
        Self::default()
    }

    pub fn is_valid(&self, x: &[Facility], m: usize) -> bool {
        if x.iter().any(|f| f.0 >= m) {
            return false;
        }
        let mut load = vec![0usize; m];
        for f in x {
            load[f.0] += 1;
        }
        if let Some(caps) = &self.capacities {
            if load.iter().zip(caps).any(|(l, c)| l > c) {
                return false;
            }
        }
        if let Some(limit) = self.open_limit {
            if !limit.admits(load.iter().filter(|&&l| l > 0).count()) {
                return false;
            }
        }
        let pair_ok = |&(a, b): &(usize, usize)| a < x.len() && b < x.len();
        self.must_coassign.iter().all(|p| pair_ok(p) && x[p.0] == x[p.1])
            && self.must_not_coassign.iter().all(|p| pair_ok(p) && x[p.0] != x[p.1])
    }

    pub(crate) fn validate(&self, n: usize, m: usize) -> Result<()> {
        if let Some(caps) = &self.capacities {
            if caps.len() != m {
                return Err(Error::Dimension(format!(
                    "{} capacities for {m} facilities",
                    caps.len()
                )));
            }
        }
        if let Some(limit) = self.open_limit {
            let k = match limit {
                OpenLimit::AtMost(k) | OpenLimit::Exactly(k) | OpenLimit::AtLeast(k) => k,
            };
            if k == 0 || k > m {
                return Err(Error::OutOfRange(format!(
                    "open-facility bound {k} with {m} facilities"
                )));
            }
        }
        for &(a, b) in self.must_coassign.iter().chain(&self.must_not_coassign) {
            if a >= n || b >= n || a == b {
                return Err(Error::OutOfRange(format!("agent pair ({a}, {b})")));
            }
        }
        Ok(())
    }
}

/// Incremental validity tracking for depth-first search over assignments in
/// agent order.
pub(crate) struct PartialState<'a> {
    constraints: &'a ConstraintSet,
    n: usize,
    load: Vec<usize>,
    open: usize,
}

impl<'a> PartialState<'a> {
    pub fn new(constraints: &'a ConstraintSet, n: usize, m: usize) -> Self {
        Self {
            constraints,
            n,
            load: vec![0; m],
            open: 0,
        }
    }

    /// Whether agent `i = prefix.len()` may take `f` given the prefix, without
    /// ruling out every completion.
    pub fn can_place(&self, prefix: &[Facility], f: Facility) -> bool {
        let i = prefix.len();
        if let Some(caps) = &self.constraints.capacities {
            if self.load[f.0] >= caps[f.0] {
                return false;
            }
        }
        let open = self.open + usize::from(self.load[f.0] == 0);
        let remaining = self.n - i - 1;
        match self.constraints.open_limit {
            Some(OpenLimit::AtMost(k)) if open > k => return false,
            Some(OpenLimit::Exactly(k)) if open > k || open + remaining < k => return false,
            Some(OpenLimit::AtLeast(k)) if open + remaining < k => return false,
            _ => {}
        }
        let placed = |j: usize| j < i;
        for &(a, b) in &self.constraints.must_coassign {
            let other = if a == i {
                b
            } else if b == i {
                a
            } else {
                continue;
            };
            if placed(other) && prefix[other] != f {
                return false;
            }
        }
        for &(a, b) in &self.constraints.must_not_coassign {
            let other = if a == i {
                b
            } else if b == i {
                a
            } else {
                continue;
            };
            if placed(other) && prefix[other] == f {
                return false;
            }
        }
        true
    }

    pub fn place(&mut self, f: Facility) {
        if self.load[f.0] == 0 {
            self.open += 1;
        }
        self.load[f.0] += 1;
    }

    pub fn remove(&mut self, f: Facility) {
        self.load[f.0] -= 1;
        if self.load[f.0] == 0 {
            self.open -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(v: &[usize]) -> Vec<Facility> {
        v.iter().copied().map(Facility).collect()
    }

    #[test]
    fn capacity_one() {
        let c = ConstraintSet {
            capacities: Some(vec![1, 1]),
            ..Default::default()
        };
        assert!(c.is_valid(&fs(&[0, 1]), 2));
        assert!(!c.is_valid(&fs(&[1, 1]), 2));
    }

    #[test]
    fn exactly_one_open() {
        let c = ConstraintSet {
            open_limit: Some(OpenLimit::Exactly(1)),
            ..Default::default()
        };
        assert!(c.is_valid(&fs(&[2, 2, 2]), 3));
        assert!(!c.is_valid(&fs(&[2, 0, 2]), 3));
    }

    #[test]
    fn coassignment_pairs() {
        let c = ConstraintSet {
            must_coassign: vec![(0, 2)],
            must_not_coassign: vec![(0, 1)],
            ..Default::default()
        };
        assert!(c.is_valid(&fs(&[0, 1, 0]), 2));
        assert!(!c.is_valid(&fs(&[0, 0, 0]), 2));
        assert!(!c.is_valid(&fs(&[0, 1, 1]), 2));
    }

    #[test]
    fn partial_state_prunes_exactly_k() {
        let c = ConstraintSet {
            open_limit: Some(OpenLimit::Exactly(2)),
            ..Default::default()
        };
        let mut st = PartialState::new(&c, 2, 3);
        assert!(st.can_place(&[], Facility(0)));
        st.place(Facility(0));
        // the last agent must open a second facility
        assert!(!st.can_place(&fs(&[0]), Facility(0)));
        assert!(st.can_place(&fs(&[0]), Facility(1)));
    }

    #[test]
    fn bad_bounds_rejected() {
        let c = ConstraintSet {
            open_limit: Some(OpenLimit::AtMost(4)),
            ..Default::default()
        };
        assert!(c.validate(2, 3).is_err());
        let c = ConstraintSet {
            must_coassign: vec![(0, 0)],
            ..Default::default()
        };
        assert!(c.validate(2, 3).is_err());
    }
}
