//! Seeded random structures for tests, benchmarks and the CLI.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::fraisse::find_embeddings;
use crate::orderlat::{FiniteLattice, FinitePoset};
use crate::relation::{bottom_relation, Carrier, RelMap, TernaryRelation};
use crate::roads::{relation_from_roads, RoadSystem};

/// `⊥` plus each remaining mirror pair with probability `p`; with
/// `allow_aba`, triples `(a,b,a)` are drawn as well (so R3 may fail).
pub fn random_r12<R: Rng>(rng: &mut R, carrier: &Carrier, p: f64, allow_aba: bool) -> TernaryRelation {
    let n = carrier.len();
    let mut rel = bottom_relation(carrier);
    for a in 0..n {
        for b in 0..n {
            for c in a..n {
                if a == b || b == c || (a == c && !allow_aba) {
                    continue;
                }
                if rng.gen_bool(p) {
                    rel.insert(a, b, c);
                    rel.insert(c, b, a);
                }
            }
        }
    }
    rel
}

/// Singletons, `extra` random subsets, and a random superset for every pair
/// left uncovered.
pub fn random_road_system<R: Rng>(rng: &mut R, carrier: &Carrier, extra: usize) -> RoadSystem {
    let n = carrier.len();
    let mut roads: Vec<FixedBitSet> = (0..n)
        .map(|x| {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert(x);
            s
        })
        .collect();
    let random_set = |rng: &mut R| {
        let mut s = FixedBitSet::with_capacity(n);
        (0..n).filter(|_| rng.gen_bool(0.5)).for_each(|x| s.insert(x));
        s
    };
    for _ in 0..extra {
        roads.push(random_set(rng));
    }
    for x in 0..n {
        for y in x + 1..n {
            if !roads.iter().any(|r| r.contains(x) && r.contains(y)) {
                let mut s = random_set(rng);
                s.insert(x);
                s.insert(y);
                roads.push(s);
            }
        }
    }
    RoadSystem::new(carrier.clone(), roads)
}

/// An R-relation generated by a random road system.
pub fn random_r_relation<R: Rng>(rng: &mut R, carrier: &Carrier) -> TernaryRelation {
    let extra = rng.gen_range(0..=carrier.len() + 1);
    relation_from_roads(&random_road_system(rng, carrier, extra)).expect("generated systems are valid")
}

/// A random total map between carriers.
pub fn random_map<R: Rng>(rng: &mut R, source: &Carrier, target: &Carrier) -> RelMap {
    let assignment = (0..source.len()).map(|_| rng.gen_range(0..target.len())).collect();
    RelMap::new(source.clone(), target.clone(), assignment).expect("indices are in range")
}

/// A random R-relation on `a.size() + extra` points labelled
/// `{prefix}0, {prefix}1, ...` together with a random strong embedding of
/// `a` into it. Draws until some draw contains a copy of `a`, giving up
/// after `tries` attempts.
pub fn random_superstructure<R: Rng>(
    rng: &mut R,
    a: &TernaryRelation,
    extra: usize,
    prefix: &str,
    tries: usize,
) -> Option<(TernaryRelation, RelMap)> {
    let n = a.size() + extra;
    let carrier = Carrier::new((0..n).map(|i| format!("{prefix}{i}"))).expect("distinct labels");
    for _ in 0..tries {
        let b = random_r_relation(rng, &carrier);
        let embeddings = find_embeddings(a, &b);
        if let Some(e) = embeddings.choose(rng) {
            return Some((b, e.map().clone()));
        }
    }
    None
}

/// A random order on `e0 .. e{n-1}`: a random DAG along a shuffled
/// linear extension, closed transitively.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, p: f64) -> FinitePoset {
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut order = labels.clone();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.push((order[i].clone(), order[j].clone()));
            }
        }
    }
    FinitePoset::from_pairs(labels, pairs).expect("a DAG closes to an order")
}

/// One representative of every lattice with at most `max_n` elements (up
/// to isomorphism), built as `bot < P < top` for every poset `P` on the
/// middle elements that yields a lattice. Only for `max_n ≤ 8`.
pub fn all_lattices(max_n: usize) -> Vec<FiniteLattice> {
    assert!(max_n <= 8, "lattice enumeration is limited to 8 elements");
    let mut out: Vec<FiniteLattice> = Vec::new();
    if max_n >= 1 {
        out.push(FiniteLattice::from_pairs(["0"], Vec::<(&str, &str)>::new()).expect("a point"));
    }
    for n in 2..=max_n {
        let middle = n - 2;
        let names: Vec<String> = (0..n).map(|i| format!("{i}")).collect();
        let slots: Vec<(usize, usize)> =
            (1..=middle).flat_map(|i| (i + 1..=middle).map(move |j| (i, j))).collect();
        let mut seen: HashSet<u64> = HashSet::new();
        for mask in 0u64..(1u64 << slots.len()) {
            let mut pairs: Vec<(String, String)> = Vec::new();
            for i in 1..=middle {
                pairs.push((names[0].clone(), names[i].clone()));
                pairs.push((names[i].clone(), names[n - 1].clone()));
            }
            pairs.push((names[0].clone(), names[n - 1].clone()));
            for (k, &(i, j)) in slots.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    pairs.push((names[i].clone(), names[j].clone()));
                }
            }
            let Ok(l) = FiniteLattice::from_pairs(names.iter().cloned(), pairs) else {
                continue;
            };
            let key = l.poset().canonical_key().expect("small");
            if seen.insert(key) {
                out.push(l);
            }
        }
    }
    out
}

/// `l` under a random renaming `{prefix}0 ..`.
pub fn shuffled_lattice<R: Rng>(rng: &mut R, l: &FiniteLattice, prefix: &str) -> FiniteLattice {
    let mut labels: Vec<String> = (0..l.len()).map(|i| format!("{prefix}{i}")).collect();
    labels.shuffle(rng);
    l.relabel(&labels).expect("renaming keeps the order")
}
