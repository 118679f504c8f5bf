use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::Facility;

/// Agents' preference rankings over facilities, most preferred first.
///
/// In top-only mode each agent records a single facility, its first choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceProfile {
    m: usize,
    rankings: Vec<Vec<Facility>>,
    top_only: bool,
    /// `positions[i][f]` is the rank of facility `f` for agent `i` (full profiles only)
    positions: Vec<Vec<usize>>,
}

impl PreferenceProfile {
    pub fn new(m: usize, rankings: Vec<Vec<Facility>>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidProfile("no facilities".into()));
        }
        let mut positions = Vec::with_capacity(rankings.len());
        for (i, ranking) in rankings.iter().enumerate() {
            if ranking.len() != m {
                return Err(Error::InvalidProfile(format!(
                    "agent {i} ranks {} facilities, expected {m}",
                    ranking.len()
                )));
            }
            let mut pos = vec![usize::MAX; m];
            for (rank, f) in ranking.iter().enumerate() {
                if f.0 >= m || pos[f.0] != usize::MAX {
                    return Err(Error::InvalidProfile(format!(
                        "agent {i}'s ranking is not a permutation of the facilities"
                    )));
                }
                pos[f.0] = rank;
            }
            positions.push(pos);
        }
        Ok(Self {
            m,
            rankings,
            top_only: false,
            positions,
        })
    }

    pub fn top_only(m: usize, tops: Vec<Facility>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidProfile("no facilities".into()));
        }
        if let Some((i, f)) = tops.iter().enumerate().find(|(_, f)| f.0 >= m) {
            return Err(Error::InvalidProfile(format!(
                "agent {i}'s top choice {f} does not exist"
            )));
        }
        if m == 1 {
            // a single facility is already a full ranking
            return Self::new(1, tops.into_iter().map(|f| vec![f]).collect());
        }
        Ok(Self {
            m,
            rankings: tops.into_iter().map(|f| vec![f]).collect(),
            top_only: true,
            positions: Vec::new(),
        })
    }

    /// Convenience constructor from raw indices.
    pub fn from_indices(m: usize, rankings: &[Vec<usize>]) -> Result<Self> {
        Self::new(
            m,
            rankings
                .iter()
                .map(|r| r.iter().copied().map(Facility).collect())
                .collect(),
        )
    }

    pub fn num_agents(&self) -> usize {
        self.rankings.len()
    }

    pub fn num_facilities(&self) -> usize {
        self.m
    }

    pub fn is_top_only(&self) -> bool {
        self.top_only
    }

    pub fn ranking(&self, agent: usize) -> &[Facility] {
        &self.rankings[agent]
    }

    pub fn rankings(&self) -> &[Vec<Facility>] {
        &self.rankings
    }

    pub fn top(&self, agent: usize) -> Facility {
        self.rankings[agent][0]
    }

    /// Strict preference of `a` over `b`. Top-only profiles know only that the
    /// top choice beats everything else.
    pub fn prefers(&self, agent: usize, a: Facility, b: Facility) -> Option<bool> {
        if a == b {
            return Some(false);
        }
        if self.top_only {
            let top = self.top(agent);
            return if a == top {
                Some(true)
            } else if b == top {
                Some(false)
            } else {
                None
            };
        }
        Some(self.positions[agent][a.0] < self.positions[agent][b.0])
    }

    pub fn require_full(&self) -> Result<()> {
        if self.top_only {
            Err(Error::TopOnlyProfile)
        } else {
            Ok(())
        }
    }

    /// Agents grouped by identical ranking, in order of first appearance.
    pub fn ranking_classes(&self) -> Vec<(Vec<Facility>, Vec<usize>)> {
        let mut order: Vec<Vec<Facility>> = Vec::new();
        let mut members: BTreeMap<Vec<Facility>, Vec<usize>> = BTreeMap::new();
        for (i, r) in self.rankings.iter().enumerate() {
            let entry = members.entry(r.clone()).or_default();
            if entry.is_empty() {
                order.push(r.clone());
            }
            entry.push(i);
        }
        order
            .into_iter()
            .map(|r| {
                let agents = members.remove(&r).expect("recorded above");
                (r, agents)
            })
            .collect()
    }

    /// Keeps only each agent's first choice.
    pub fn to_top_only(&self) -> Self {
        Self::top_only(self.m, (0..self.num_agents()).map(|i| self.top(i)).collect())
            .expect("tops come from a valid profile")
    }
}
