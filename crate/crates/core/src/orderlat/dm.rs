use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::{FiniteLattice, FinitePoset};
use crate::error::{Error, Result};
use crate::relation::{Carrier, RelMap};
use crate::report::CheckReport;
use crate::roads::{relation_from_roads, RoadSystem};

/// Largest poset for which the convex-subset road system is built.
pub const DM_REPORT_LIMIT: usize = 16;

/// The Dedekind–MacNeille completion of a poset.
///
/// Cuts that are principal down-sets keep the label of their generator;
/// the others are named after their members, e.g. `{a,b}`.
#[derive(Debug, Clone)]
pub struct Completion {
    pub lattice: FiniteLattice,
    pub embedding: RelMap,
    /// The cut behind each lattice element, indexed like the lattice carrier.
    pub cuts: Vec<Vec<String>>,
}

/// Cuts are exactly the intersections of principal down-sets (the empty
/// intersection being the whole poset), so they are generated by closing
/// `{P}` under intersection with each `↓x`.
pub fn dm_completion(p: &FinitePoset) -> Result<Completion> {
    let n = p.len();
    let downs: Vec<FixedBitSet> = (0..n).map(|x| p.down_set(x)).collect();
    let mut whole = FixedBitSet::with_capacity(n);
    whole.insert_range(..);
    let mut seen: HashSet<FixedBitSet> = HashSet::from([whole.clone()]);
    let mut cuts = vec![whole];
    let mut i = 0;
    while i < cuts.len() {
        for d in &downs {
            let mut next = cuts[i].clone();
            next.intersect_with(d);
            if seen.insert(next.clone()) {
                cuts.push(next);
            }
        }
        i += 1;
    }

    let taken: HashSet<&str> = p.carrier().iter().collect();
    let mut used = HashSet::new();
    let labels: Vec<String> = cuts
        .iter()
        .map(|cut| {
            let mut name = match downs.iter().position(|d| d == cut) {
                Some(x) => p.carrier().label(x).to_string(),
                None => {
                    let mut name = format!("{{{}}}", p.carrier().labels_of(cut).join(","));
                    while taken.contains(name.as_str()) {
                        name.push('\'');
                    }
                    name
                }
            };
            while !used.insert(name.clone()) {
                name.push('\'');
            }
            name
        })
        .collect();

    let carrier = Carrier::new(labels.iter().cloned())?;
    let index: Vec<usize> = labels.iter().map(|l| carrier.index(l).expect("just inserted")).collect();
    let m = cuts.len();
    let mut by_index = vec![FixedBitSet::new(); m];
    for (k, cut) in cuts.iter().enumerate() {
        by_index[index[k]] = cut.clone();
    }
    let up: Vec<FixedBitSet> = (0..m)
        .map(|a| {
            let mut s = FixedBitSet::with_capacity(m);
            for b in 0..m {
                if by_index[a].is_subset(&by_index[b]) {
                    s.insert(b);
                }
            }
            s
        })
        .collect();
    let lattice = FiniteLattice::from_poset(FinitePoset::from_up_sets(carrier.clone(), up)?)
        .map_err(|e| Error::Internal(format!("cuts do not form a lattice: {e}")))?;
    let assignment = (0..n)
        .map(|x| {
            let k = cuts.iter().position(|c| *c == downs[x]).expect("principal cuts are generated");
            index[k]
        })
        .collect();
    let embedding = RelMap::new(p.carrier().clone(), carrier, assignment)?;
    let cuts = by_index.iter().map(|c| p.carrier().labels_of(c)).collect();
    Ok(Completion {
        lattice,
        embedding,
        cuts,
    })
}

/// Checks that the completion map is an order embedding preserving every
/// join and meet that already exists in `p`.
///
/// Witnesses: `["order", x, y]`, `["join", x, y]`, `["meet", x, y]`.
pub fn dm_embedding_report(p: &FinitePoset, c: &Completion) -> CheckReport {
    let n = p.len();
    let q = |x: usize| c.embedding.apply(x);
    let l = &c.lattice;
    let label = |x: usize| p.carrier().label(x).to_string();
    let mut witnesses = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) != l.leq(q(x), q(y)) {
                witnesses.push(vec!["order".into(), label(x), label(y)]);
            }
            if y <= x {
                continue;
            }
            let mut pair = FixedBitSet::with_capacity(n);
            pair.insert(x);
            pair.insert(y);
            if let Some(s) = p.supremum(&pair) {
                if q(s) != l.join(q(x), q(y)) {
                    witnesses.push(vec!["join".into(), label(x), label(y)]);
                }
            }
            if let Some(i) = p.infimum(&pair) {
                if q(i) != l.meet(q(x), q(y)) {
                    witnesses.push(vec!["meet".into(), label(x), label(y)]);
                }
            }
        }
    }
    CheckReport::from_witnesses(witnesses)
}

fn convex_roads(p: &FinitePoset) -> RoadSystem {
    let n = p.len();
    let mut roads = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let inside = |i: usize| mask & (1 << i) != 0;
        let convex = (0..n).filter(|&x| inside(x)).all(|x| {
            (0..n).filter(|&z| inside(z) && p.leq(x, z)).all(|z| {
                (0..n).all(|y| !(p.leq(x, y) && p.leq(y, z)) || inside(y))
            })
        });
        if convex {
            let mut set = FixedBitSet::with_capacity(n);
            (0..n).filter(|&i| inside(i)).for_each(|i| set.insert(i));
            roads.push(set);
        }
    }
    RoadSystem::new(p.carrier().clone(), roads)
}

/// For incomparable `x, y`, every `z` between them in the betweenness of the
/// convex-subset road system must land in `[q x ∧ q y, q x ∨ q y]`.
///
/// Witnesses are `[x, y, z]`.
pub fn dm_betweenness_report(p: &FinitePoset) -> Result<CheckReport> {
    let n = p.len();
    if n > DM_REPORT_LIMIT {
        return Err(Error::CarrierTooLarge {
            size: n,
            limit: DM_REPORT_LIMIT,
        });
    }
    let completion = dm_completion(p)?;
    let rel = relation_from_roads(&convex_roads(p))?;
    let l = &completion.lattice;
    let q = |x: usize| completion.embedding.apply(x);
    let label = |x: usize| p.carrier().label(x).to_string();
    let mut witnesses = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if p.comparable(x, y) {
                continue;
            }
            let (lo, hi) = (l.meet(q(x), q(y)), l.join(q(x), q(y)));
            for z in rel.interval_set(x, y).ones() {
                if !(l.leq(lo, q(z)) && l.leq(q(z), hi)) {
                    witnesses.push(vec![label(x), label(y), label(z)]);
                }
            }
        }
    }
    Ok(CheckReport::from_witnesses(witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn no_pairs() -> Vec<(&'static str, &'static str)> {
        Vec::new()
    }

    #[test]
    fn antichain_of_two_completes_to_a_square() {
        let p = FinitePoset::from_pairs(["x", "y"], no_pairs()).unwrap();
        let c = dm_completion(&p).unwrap();
        assert_eq!(c.lattice.len(), 4);
        assert_eq!(c.lattice.carrier().labels(), ["x", "y", "{x,y}", "{}"]);
        assert!(dm_embedding_report(&p, &c).holds);
        let report = dm_betweenness_report(&p).unwrap();
        assert!(report.holds);
    }

    #[test]
    fn lattices_and_chains_are_their_own_completion() {
        for l in [fixtures::c3(), fixtures::n5(), fixtures::m3(), fixtures::b4()] {
            let c = dm_completion(l.poset()).unwrap();
            assert!(c.embedding.is_identity());
            assert_eq!(c.lattice.poset(), l.poset());
            assert!(dm_betweenness_report(l.poset()).unwrap().holds);
        }
    }

    #[test]
    fn two_minimal_two_maximal_gets_a_middle_cut() {
        // the "bowtie": a,b below both c and d
        let p = FinitePoset::from_pairs(
            ["a", "b", "c", "d"],
            [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        let c = dm_completion(&p).unwrap();
        // bottom, a, b, {a,b}, c, d, top
        assert_eq!(c.lattice.len(), 7);
        assert!(c.lattice.carrier().contains("{a,b}"));
        assert!(dm_embedding_report(&p, &c).holds);
    }

    #[test]
    fn empty_poset() {
        let p = FinitePoset::from_pairs(Vec::<&str>::new(), no_pairs()).unwrap();
        let c = dm_completion(&p).unwrap();
        assert_eq!(c.lattice.len(), 1);
    }
}
