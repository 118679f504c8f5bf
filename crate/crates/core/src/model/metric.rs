use crate::error::{Error, Result};
use crate::model::{Facility, FacilityDistances, PreferenceProfile};
use crate::scalar::{approx_le, cmp_scalar, Scalar};

/// Agent-to-facility distances together with the facility metric they extend.
///
/// Agent-to-agent distances are never stored. Whenever every agent row
/// satisfies `|d(i,F) - d(i,F')| <= l(F,F') <= d(i,F) + d(i,F')`, the
/// shortest-path closure ([`FullMetric::completion`]) is a metric on agents and
/// facilities that keeps all of these entries.
#[derive(Clone, Debug, PartialEq)]
pub struct FullMetric<T> {
    n: usize,
    m: usize,
    agent_facility: Vec<T>,
    facilities: FacilityDistances<T>,
}

impl<T: Scalar> FullMetric<T> {
    pub fn new(rows: Vec<Vec<T>>, facilities: FacilityDistances<T>) -> Result<Self> {
        let d = Self::unchecked(rows, facilities)?;
        d.validate()?;
        Ok(d)
    }

    /// Shape checks only.
    pub fn unchecked(rows: Vec<Vec<T>>, facilities: FacilityDistances<T>) -> Result<Self> {
        let m = facilities.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != m) {
            return Err(Error::Dimension(format!(
                "agent {i} has {} facility distances, expected {m}",
                r.len()
            )));
        }
        Ok(Self {
            n: rows.len(),
            m,
            agent_facility: rows.into_iter().flatten().collect(),
            facilities,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.facilities
            .validate()
            .map_err(|v| Error::InvalidDistances(v.to_string()))?;
        let zero = T::zero();
        for i in 0..self.n {
            for a in self.facilities.facilities() {
                let da = self.get(i, a);
                if !approx_le(&zero, da) {
                    return Err(Error::InvalidMetric(format!("d({i},{a}) is negative")));
                }
                for b in self.facilities.facilities().filter(|b| b.0 > a.0) {
                    let db = self.get(i, b);
                    let l = self.facilities.get(a, b);
                    if !approx_le(&(da.clone() - db.clone()).abs(), l) {
                        return Err(Error::InvalidMetric(format!(
                            "|d({i},{a}) - d({i},{b})| exceeds l({a},{b})"
                        )));
                    }
                    if !approx_le(l, &(da.clone() + db.clone())) {
                        return Err(Error::InvalidMetric(format!(
                            "l({a},{b}) exceeds d({i},{a}) + d({i},{b})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_agents(&self) -> usize {
        self.n
    }

    pub fn num_facilities(&self) -> usize {
        self.m
    }

    pub fn get(&self, agent: usize, facility: Facility) -> &T {
        &self.agent_facility[agent * self.m + facility.0]
    }

    pub fn agent_row(&self, agent: usize) -> &[T] {
        &self.agent_facility[agent * self.m..(agent + 1) * self.m]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.agent_facility.chunks(self.m.max(1)).map(|c| c.to_vec()).collect()
    }

    pub fn facility_distances(&self) -> &FacilityDistances<T> {
        &self.facilities
    }

    /// Distances from every agent to `facility`.
    pub fn column(&self, facility: Facility) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, facility).clone()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> FullMetric<U> {
        FullMetric {
            n: self.n,
            m: self.m,
            agent_facility: self.agent_facility.iter().map(&f).collect(),
            facilities: self.facilities.map(f),
        }
    }

    /// Shortest-path closure over agents `0..n` followed by facilities
    /// `n..n+m`, as a dense `(n+m)^2` matrix.
    pub fn completion(&self) -> Vec<Vec<T>> {
        let size = self.n + self.m;
        let mut dist: Vec<Vec<Option<T>>> = vec![vec![None; size]; size];
        for (u, row) in dist.iter_mut().enumerate() {
            row[u] = Some(T::zero());
        }
        for i in 0..self.n {
            for f in self.facilities.facilities() {
                let v = self.get(i, f).clone();
                dist[i][self.n + f.0] = Some(v.clone());
                dist[self.n + f.0][i] = Some(v);
            }
        }
        for a in self.facilities.facilities() {
            for b in self.facilities.facilities() {
                dist[self.n + a.0][self.n + b.0] = Some(self.facilities.get(a, b).clone());
            }
        }
        for k in 0..size {
            for u in 0..size {
                let Some(uk) = dist[u][k].clone() else { continue };
                for v in 0..size {
                    if let Some(kv) = dist[k][v].clone() {
                        let via = uk.clone() + kv;
                        if dist[u][v].as_ref().is_none_or(|cur| via < *cur) {
                            dist[u][v] = Some(via);
                        }
                    }
                }
            }
        }
        dist.into_iter()
            .map(|row| row.into_iter().map(|v| v.unwrap_or_else(T::zero)).collect())
            .collect()
    }
}

/// Ranks facilities by each agent's distance, ties going to the lower index.
pub fn preferences_from_metric<T: Scalar>(d: &FullMetric<T>) -> PreferenceProfile {
    let rankings = (0..d.num_agents())
        .map(|i| {
            let mut order: Vec<Facility> = d.facilities.facilities().collect();
            order.sort_by(|a, b| cmp_scalar(d.get(i, *a), d.get(i, *b)).then(a.0.cmp(&b.0)));
            order
        })
        .collect();
    PreferenceProfile::new(d.num_facilities(), rankings).expect("sorted facilities form a permutation")
}

/// True iff no agent is strictly closer to a facility it ranks lower.
pub fn check_consistency<T: Scalar>(profile: &PreferenceProfile, d: &FullMetric<T>) -> bool {
    if profile.num_agents() != d.num_agents() || profile.num_facilities() != d.num_facilities() {
        return false;
    }
    (0..profile.num_agents()).all(|i| {
        let ranking = profile.ranking(i);
        if profile.is_top_only() {
            let top = d.get(i, ranking[0]);
            d.facility_distances().facilities().all(|f| approx_le(top, d.get(i, f)))
        } else {
            ranking.windows(2).all(|w| approx_le(d.get(i, w[0]), d.get(i, w[1])))
        }
    })
}

/// True iff some agent is exactly as close to two facilities it ranks strictly.
/// Such metrics lie on the boundary of the consistent set rather than inside it.
pub fn has_preference_ties<T: Scalar>(profile: &PreferenceProfile, d: &FullMetric<T>) -> bool {
    (0..profile.num_agents()).any(|i| {
        let ranking = profile.ranking(i);
        if profile.is_top_only() {
            let top = d.get(i, ranking[0]);
            d.facility_distances()
                .facilities()
                .filter(|f| *f != ranking[0])
                .any(|f| approx_le(d.get(i, f), top))
        } else {
            ranking.windows(2).any(|w| approx_le(d.get(i, w[1]), d.get(i, w[0])))
        }
    })
}
