//! JSON documents for relations, orders, road systems and maps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize, Serializer};

use crate::closures::{ClosureResult, TraceStep};
use crate::error::Result;
use crate::orderlat::{FiniteLattice, FinitePoset};
use crate::relation::{bottom_relation, Carrier, RelMap, TernaryRelation};
use crate::roads::RoadSystem;

fn yes() -> bool {
    true
}

/// `{"elements": [...], "triples": [[a,b,c], ...], "r2_closure": bool, "bottom": bool}`.
///
/// On input, `r2_closure` (default `true`) adds the mirror of every listed
/// triple and `bottom` (default `false`) adds `⊥`. Output lists every triple
/// explicitly, sorted, with both flags off.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub elements: Vec<String>,
    pub triples: Vec<[String; 3]>,
    #[serde(default = "yes")]
    pub r2_closure: bool,
    #[serde(default)]
    pub bottom: bool,
}

impl RelationDoc {
    pub fn from_relation(rel: &TernaryRelation) -> Self {
        RelationDoc {
            elements: rel.carrier().labels().to_vec(),
            triples: rel.labeled_triples(),
            r2_closure: false,
            bottom: false,
        }
    }

    pub fn to_relation(&self) -> Result<TernaryRelation> {
        let carrier = Carrier::new(self.elements.iter().cloned())?;
        let rel = TernaryRelation::from_labels(
            carrier.clone(),
            self.triples.iter().map(|[a, b, c]| [a.as_str(), b.as_str(), c.as_str()]),
            self.r2_closure,
        )?;
        if self.bottom {
            rel.union(&bottom_relation(&carrier))
        } else {
            Ok(rel)
        }
    }
}

impl Serialize for TernaryRelation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RelationDoc::from_relation(self).serialize(s)
    }
}

/// `{"elements": [...], "leq": [[lower, upper], ...]}`; reflexive and
/// transitive pairs may be omitted. Output lists covering pairs only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDoc {
    pub elements: Vec<String>,
    pub leq: Vec<[String; 2]>,
}

impl OrderDoc {
    pub fn from_poset(p: &FinitePoset) -> Self {
        let label = |i: usize| p.carrier().label(i).to_string();
        OrderDoc {
            elements: p.carrier().labels().to_vec(),
            leq: p.covers().into_iter().map(|(x, y)| [label(x), label(y)]).collect(),
        }
    }

    pub fn to_poset(&self) -> Result<FinitePoset> {
        FinitePoset::from_pairs(
            self.elements.iter().cloned(),
            self.leq.iter().map(|[x, y]| (x.as_str(), y.as_str())),
        )
    }

    pub fn to_lattice(&self) -> Result<FiniteLattice> {
        FiniteLattice::from_poset(self.to_poset()?)
    }
}

/// `{"elements": [...], "roads": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoadDoc {
    pub elements: Vec<String>,
    pub roads: Vec<Vec<String>>,
}

impl RoadDoc {
    pub fn from_roads(rs: &RoadSystem) -> Self {
        RoadDoc {
            elements: rs.carrier().labels().to_vec(),
            roads: rs.labeled_roads(),
        }
    }

    pub fn to_roads(&self) -> Result<RoadSystem> {
        RoadSystem::from_labels(Carrier::new(self.elements.iter().cloned())?, &self.roads)
    }
}

/// `{"map": {"source label": "target label", ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub map: BTreeMap<String, String>,
}

impl MapDoc {
    pub fn from_map(f: &RelMap) -> Self {
        MapDoc { map: f.label_map() }
    }

    /// The source carrier is the set of keys.
    pub fn to_map(&self, target: &Carrier) -> Result<RelMap> {
        let source = Carrier::new(self.map.keys().cloned())?;
        RelMap::from_labels(&source, target, &self.map)
    }
}

/// Output of the closure operators.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureDoc {
    pub relation: RelationDoc,
    pub quotient: MapDoc,
    pub glued: Vec<Vec<String>>,
    pub trace: Vec<TraceStep>,
}

impl ClosureDoc {
    pub fn from_result(res: &ClosureResult) -> Self {
        ClosureDoc {
            relation: RelationDoc::from_relation(&res.relation),
            quotient: MapDoc::from_map(&res.quotient),
            glued: res.glued(),
            trace: res.trace.clone(),
        }
    }
}

/// Parses JSON, reporting malformed input as a plain message.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> std::result::Result<T, String> {
    serde_json::from_str(text).map_err(|e| e.to_string())
}
