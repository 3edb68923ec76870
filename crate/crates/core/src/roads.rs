//! Road systems: families of subsets that generate betweenness by intersection.

use fixedbitset::FixedBitSet;

use crate::axioms;
use crate::error::{Error, Result};
use crate::relation::{Carrier, TernaryRelation};
use crate::report::CheckReport;

/// A carrier with a family of roads, stored deduplicated and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoadSystem {
    carrier: Carrier,
    roads: Vec<FixedBitSet>,
}

impl RoadSystem {
    pub fn new(carrier: Carrier, roads: impl IntoIterator<Item = FixedBitSet>) -> Self {
        let mut roads: Vec<FixedBitSet> = roads
            .into_iter()
            .map(|mut r| {
                r.grow(carrier.len());
                r
            })
            .collect();
        roads.sort_by_key(|r| r.ones().collect::<Vec<_>>());
        roads.dedup();
        RoadSystem { carrier, roads }
    }

    pub fn from_labels<S: AsRef<str>>(carrier: Carrier, roads: &[Vec<S>]) -> Result<Self> {
        let sets = roads
            .iter()
            .map(|road| {
                let mut set = FixedBitSet::with_capacity(carrier.len());
                for label in road {
                    set.insert(carrier.require(label.as_ref())?);
                }
                Ok(set)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RoadSystem::new(carrier, sets))
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn roads(&self) -> &[FixedBitSet] {
        &self.roads
    }

    pub fn labeled_roads(&self) -> Vec<Vec<String>> {
        self.roads.iter().map(|r| self.carrier.labels_of(r)).collect()
    }
}

/// Every singleton must be a road and every pair must share a road.
pub fn validate_road_system(rs: &RoadSystem) -> CheckReport {
    let n = rs.carrier.len();
    let mut witnesses = Vec::new();
    for x in 0..n {
        let singleton = rs.roads.iter().any(|r| r.count_ones(..) == 1 && r.contains(x));
        if !singleton {
            witnesses.push(vec![rs.carrier.label(x).to_string()]);
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if !rs.roads.iter().any(|r| r.contains(x) && r.contains(y)) {
                witnesses.push(vec![
                    rs.carrier.label(x).to_string(),
                    rs.carrier.label(y).to_string(),
                ]);
            }
        }
    }
    CheckReport::from_witnesses(witnesses)
}

/// `(a,b,c)` holds iff `b` lies on every road through both `a` and `c`.
pub fn relation_from_roads(rs: &RoadSystem) -> Result<TernaryRelation> {
    let report = validate_road_system(rs);
    if !report.holds {
        let first = report.witnesses[0].join(",");
        return Err(Error::InvalidRoadSystem(format!(
            "{} defect(s), first at {{{first}}}",
            report.witnesses.len()
        )));
    }
    let n = rs.carrier.len();
    let mut rel = TernaryRelation::empty(rs.carrier.clone());
    for a in 0..n {
        for c in a..n {
            let mut between = FixedBitSet::with_capacity(n);
            between.insert_range(..);
            for road in rs.roads.iter().filter(|r| r.contains(a) && r.contains(c)) {
                between.intersect_with(road);
            }
            for b in between.ones() {
                rel.insert(a, b, c);
                rel.insert(c, b, a);
            }
        }
    }
    Ok(rel)
}

/// The family of all intervals `[a,b]` of an R-relation.
pub fn intervals_as_roads(rel: &TernaryRelation) -> Result<RoadSystem> {
    let failed = axioms::failed_r_axioms(rel);
    if !failed.is_empty() {
        return Err(Error::NotRRelation { failed });
    }
    let n = rel.size();
    let roads = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| rel.interval_set(a, b));
    Ok(RoadSystem::new(rel.carrier().clone(), roads))
}
