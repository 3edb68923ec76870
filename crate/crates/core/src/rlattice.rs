//! The complete lattice of R-relations on a fixed carrier, and the
//! pullbacks/initial lifts along maps of carriers.

use crate::axioms;
use crate::closures::r_closure;
use crate::error::{Error, Result};
use crate::relation::{bottom_relation, top_relation, Carrier, RelMap, TernaryRelation, Triple};
use crate::report::Axiom;

/// Default carrier-size guard for exhaustive enumeration.
pub const DEFAULT_MAX_CARRIER: usize = 4;

fn require_r(rel: &TernaryRelation) -> Result<()> {
    let failed = axioms::failed_r_axioms(rel);
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::NotRRelation { failed })
    }
}

fn same_carrier(rels: &[TernaryRelation]) -> Result<&Carrier> {
    let first = rels
        .first()
        .ok_or_else(|| Error::CarrierMismatch("empty list of relations".into()))?;
    for rel in &rels[1..] {
        first.carrier().check_same(rel.carrier(), "lattice operation")?;
    }
    Ok(first.carrier())
}

/// Intersection of R-relations on one carrier.
pub fn meet(rels: &[TernaryRelation]) -> Result<TernaryRelation> {
    same_carrier(rels)?;
    rels.iter().try_for_each(require_r)?;
    let mut out = rels[0].clone();
    for rel in &rels[1..] {
        out = out.intersection(rel)?;
    }
    Ok(out)
}

/// `r_closure` of the union; the carrier never changes.
pub fn join(rels: &[TernaryRelation]) -> Result<TernaryRelation> {
    same_carrier(rels)?;
    rels.iter().try_for_each(require_r)?;
    let mut union = rels[0].clone();
    for rel in &rels[1..] {
        union = union.union(rel)?;
    }
    let closed = r_closure(&union);
    if !closed.quotient.is_identity() {
        return Err(Error::Internal(format!(
            "the R3 quotient of a union of R-relations glued {:?}",
            closed.glued()
        )));
    }
    Ok(closed.relation)
}

/// `f_*(ρ)`: all `(a,b,c)` with `(f a, f b, f c) ∈ ρ`, minus `(a,b,a)` for `a ≠ b`.
///
/// This is the largest R-relation on the source making `f` monotone. The
/// subtracted triples never serve as R4 premises that yield a retained
/// conclusion: a premise `(a,b,a)` in the result forces `b = a`.
pub fn pullback(f: &RelMap, rel: &TernaryRelation) -> Result<TernaryRelation> {
    f.target().check_same(rel.carrier(), "pullback target")?;
    require_r(rel)?;
    Ok(preimage(f, rel))
}

fn preimage(f: &RelMap, rel: &TernaryRelation) -> TernaryRelation {
    let n = f.source().len();
    let mut out = TernaryRelation::empty(f.source().clone());
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == c && a != b {
                    continue;
                }
                if rel.contains(f.apply(a), f.apply(b), f.apply(c)) {
                    out.insert(a, b, c);
                }
            }
        }
    }
    out
}

/// A family of maps out of a common carrier into R-relations.
#[derive(Debug, Clone)]
pub struct Cone {
    pub apex: Carrier,
    pub legs: Vec<(RelMap, TernaryRelation)>,
}

/// The finest R-relation on the apex making every leg monotone.
pub fn initial_lift(cone: &Cone) -> Result<TernaryRelation> {
    let mut out = top_relation(&cone.apex);
    for (map, target) in &cone.legs {
        cone.apex.check_same(map.source(), "cone leg")?;
        out = out.intersection(&pullback(map, target)?)?;
    }
    Ok(out)
}

/// Which relations `enumerate_relations` keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationFilter {
    /// Every R1 ∧ R2 relation (triples `(a,b,a)` allowed).
    R12,
    /// Every R1 ∧ R2 ∧ R3 relation, i.e. everything between `⊥` and `⊤`.
    R3Only,
    /// R1 ∧ R2 ∧ R4 relations (R3 not required).
    R4Only,
    /// R-relations.
    AllR,
    /// Antisymmetric R-relations.
    AntisymR,
}

impl std::str::FromStr for RelationFilter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "R12" => Ok(RelationFilter::R12),
            "R3_ONLY" | "R3" => Ok(RelationFilter::R3Only),
            "R4_ONLY" | "R4" => Ok(RelationFilter::R4Only),
            "ALL_R" | "R" => Ok(RelationFilter::AllR),
            "ANTISYM_R" | "ANTISYM" => Ok(RelationFilter::AntisymR),
            _ => Err(format!(
                "unknown filter `{s}` (expected R12, R3_ONLY, R4_ONLY, ALL_R or ANTISYM_R)"
            )),
        }
    }
}

/// Mirror-orbits of triples outside `⊥`, optionally including the `(a,b,a)` shapes.
pub(crate) fn free_orbits(n: usize, allow_aba: bool) -> Vec<Vec<Triple>> {
    let mut orbits = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in a..n {
                let in_bottom = a == b || b == c;
                if in_bottom {
                    continue;
                }
                if a == c {
                    if allow_aba {
                        orbits.push(vec![(a, b, a)]);
                    }
                } else {
                    orbits.push(vec![(a, b, c), (c, b, a)]);
                }
            }
        }
    }
    orbits
}

/// Every relation on `carrier` of the requested class, in a deterministic order.
///
/// Candidates are `⊥` plus any union of mirror-orbits of the remaining triples.
pub fn enumerate_relations(
    carrier: &Carrier,
    filter: RelationFilter,
    max_carrier: usize,
) -> Result<Vec<TernaryRelation>> {
    let n = carrier.len();
    if n > max_carrier {
        return Err(Error::CarrierTooLarge {
            size: n,
            limit: max_carrier,
        });
    }
    let orbits = free_orbits(n, filter == RelationFilter::R12);
    let bottom = bottom_relation(carrier);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << orbits.len()) {
        let mut rel = bottom.clone();
        for (i, orbit) in orbits.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &(a, b, c) in orbit {
                    rel.insert(a, b, c);
                }
            }
        }
        let keep = match filter {
            RelationFilter::R12 | RelationFilter::R3Only => true,
            RelationFilter::R4Only | RelationFilter::AllR => axioms::holds(&rel, Axiom::R4),
            RelationFilter::AntisymR => {
                axioms::holds(&rel, Axiom::R4) && axioms::holds(&rel, Axiom::Antisym)
            }
        };
        if keep {
            out.push(rel);
        }
    }
    Ok(out)
}
