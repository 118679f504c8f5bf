use crate::error::Result;
use crate::model::{Facility, PreferenceProfile};

/// Pairwise-majority tallies over facilities.
///
/// The edge `(a, b)` is present when at least half the agents prefer `a` to
/// `b` (defeat or tie). Strict defeat needs more than half and is only used
/// to find a Condorcet winner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajorityGraph {
    n: usize,
    m: usize,
    /// `prefer[a * m + b]` = number of agents ranking `a` above `b`
    prefer: Vec<usize>,
}

pub fn majority_graph(profile: &PreferenceProfile) -> Result<MajorityGraph> {
    profile.require_full()?;
    let n = profile.num_agents();
    let m = profile.num_facilities();
    let mut prefer = vec![0usize; m * m];
    for ranking in profile.rankings() {
        for (p, a) in ranking.iter().enumerate() {
            for b in &ranking[p + 1..] {
                prefer[a.0 * m + b.0] += 1;
            }
        }
    }
    Ok(MajorityGraph { n, m, prefer })
}

impl MajorityGraph {
    pub fn num_agents(&self) -> usize {
        self.n
    }

    pub fn num_facilities(&self) -> usize {
        self.m
    }

    pub fn facilities(&self) -> impl Iterator<Item = Facility> {
        (0..self.m).map(Facility)
    }

    pub fn support(&self, a: Facility, b: Facility) -> usize {
        self.prefer[a.0 * self.m + b.0]
    }

    /// `a` pairwise defeats or ties `b`.
    pub fn has_edge(&self, a: Facility, b: Facility) -> bool {
        a != b && 2 * self.support(a, b) >= self.n
    }

    /// `a` pairwise defeats `b`: strictly more than half prefer `a`.
    pub fn defeats(&self, a: Facility, b: Facility) -> bool {
        a != b && 2 * self.support(a, b) > self.n
    }

    pub fn ties(&self, a: Facility, b: Facility) -> bool {
        self.has_edge(a, b) && self.has_edge(b, a)
    }

    pub fn edges(&self) -> Vec<(Facility, Facility)> {
        self.facilities()
            .flat_map(|a| self.facilities().map(move |b| (a, b)))
            .filter(|&(a, b)| self.has_edge(a, b))
            .collect()
    }

    /// The facility that strictly defeats every other one, if any.
    pub fn condorcet_winner(&self) -> Option<Facility> {
        self.facilities()
            .find(|&w| self.facilities().all(|o| o == w || self.defeats(w, o)))
    }
}
