//! Finite posets and lattices seen through the betweenness they generate.

mod classify;
mod dm;
mod reflect;

pub use classify::{
    classify_direct, classify_via_betweenness, detect_bounds, BoundWitness, ClassificationReport,
    Flag,
};
pub use dm::{dm_betweenness_report, dm_completion, dm_embedding_report, Completion};
pub use reflect::{distributive_reflection, lattice_hom_report, Reflection};

use fixedbitset::FixedBitSet;

use crate::axioms;
use crate::error::{Error, Result};
use crate::relation::{Carrier, TernaryRelation};

/// A partial order, stored as up-sets: `up[x]` holds every `y` with `x ≤ y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    carrier: Carrier,
    up: Vec<FixedBitSet>,
}

impl FinitePoset {
    /// Reflexive-transitive closure of the given `(lower, upper)` pairs, then
    /// checked for antisymmetry.
    pub fn from_pairs<I, S, P, T>(elements: I, pairs: P) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        P: IntoIterator<Item = (T, T)>,
        T: AsRef<str>,
    {
        let carrier = Carrier::new(elements)?;
        let n = carrier.len();
        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|x| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(x);
                s
            })
            .collect();
        for (lo, hi) in pairs {
            let (lo, hi) = (carrier.require(lo.as_ref())?, carrier.require(hi.as_ref())?);
            up[lo].insert(hi);
        }
        // Warshall
        for k in 0..n {
            let via = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&via);
                }
            }
        }
        FinitePoset::from_up_sets(carrier, up)
    }

    /// Validates a full order given as up-sets.
    pub fn from_up_sets(carrier: Carrier, up: Vec<FixedBitSet>) -> Result<Self> {
        let n = carrier.len();
        if up.len() != n {
            return Err(Error::InvalidPoset(format!("{} rows for {} elements", up.len(), n)));
        }
        for x in 0..n {
            if !up[x].contains(x) {
                return Err(Error::InvalidPoset(format!("`{}` is not ≤ itself", carrier.label(x))));
            }
            for y in up[x].ones() {
                if y != x && up[y].contains(x) {
                    return Err(Error::InvalidPoset(format!(
                        "`{}` ≤ `{}` ≤ `{}`",
                        carrier.label(x),
                        carrier.label(y),
                        carrier.label(x)
                    )));
                }
                if !up[y].is_subset(&up[x]) {
                    return Err(Error::InvalidPoset(format!(
                        "not transitive through `{}` ≤ `{}`",
                        carrier.label(x),
                        carrier.label(y)
                    )));
                }
            }
        }
        Ok(FinitePoset { carrier, up })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        for y in 0..self.len() {
            if self.leq(y, x) {
                s.insert(y);
            }
        }
        s
    }

    /// Strict comparabilities `(x, y)` with `x < y`, in carrier order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| self.up[x].ones().filter(move |&y| y != x).map(move |y| (x, y)))
            .collect()
    }

    /// Covering pairs `x ⋖ y` (the Hasse diagram).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(x, y)| {
                !(0..self.len()).any(|z| z != x && z != y && self.leq(x, z) && self.leq(z, y))
            })
            .collect()
    }

    /// Least upper bound of `set` if it exists.
    pub fn supremum(&self, set: &FixedBitSet) -> Option<usize> {
        let n = self.len();
        let mut uppers = FixedBitSet::with_capacity(n);
        uppers.insert_range(..);
        for x in set.ones() {
            uppers.intersect_with(&self.up[x]);
        }
        uppers.ones().find(|&u| uppers.ones().all(|v| self.leq(u, v)))
    }

    /// Greatest lower bound of `set` if it exists.
    pub fn infimum(&self, set: &FixedBitSet) -> Option<usize> {
        let n = self.len();
        let mut lowers = FixedBitSet::with_capacity(n);
        lowers.insert_range(..);
        for x in set.ones() {
            lowers.intersect_with(&self.down_set(x));
        }
        lowers.ones().find(|&l| lowers.ones().all(|v| self.leq(v, l)))
    }

    fn pair(&self, x: usize, y: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert(x);
        s.insert(y);
        s
    }

    /// The order transported along a bijection `old index -> new label`.
    pub fn relabel(&self, labels: &[String]) -> Result<FinitePoset> {
        let pairs: Vec<(String, String)> = self
            .strict_pairs()
            .into_iter()
            .map(|(x, y)| (labels[x].clone(), labels[y].clone()))
            .collect();
        FinitePoset::from_pairs(labels.iter().cloned(), pairs)
    }

    /// Isomorphism-invariant key: the least adjacency bit-string over all
    /// relabellings. Only for posets of at most 8 elements.
    pub fn canonical_key(&self) -> Result<u64> {
        let n = self.len();
        if n > 8 {
            return Err(Error::CarrierTooLarge { size: n, limit: 8 });
        }
        let mut best = u64::MAX;
        for_each_permutation(n, &mut |perm| {
            let mut key = 0u64;
            for (x, y) in self.strict_pairs() {
                key |= 1 << (perm[x] * n + perm[y]);
            }
            best = best.min(key);
        });
        Ok(best)
    }
}

/// Calls `visit` with every permutation of `0..n` (Heap's algorithm).
pub(crate) fn for_each_permutation(n: usize, visit: &mut dyn FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// A nonempty finite lattice with tabulated meets and joins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: FinitePoset,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    pub fn from_poset(poset: FinitePoset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::NotALattice("empty order has no bounds".into()));
        }
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                let pair = poset.pair(x, y);
                let label = |i: usize| poset.carrier.label(i).to_string();
                join[x][y] = poset
                    .supremum(&pair)
                    .ok_or_else(|| Error::NotALattice(format!("no join of `{}` and `{}`", label(x), label(y))))?;
                meet[x][y] = poset
                    .infimum(&pair)
                    .ok_or_else(|| Error::NotALattice(format!("no meet of `{}` and `{}`", label(x), label(y))))?;
            }
        }
        let all = {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert_range(..);
            s
        };
        let bottom = poset
            .infimum(&all)
            .ok_or_else(|| Error::NotALattice("no least element".into()))?;
        let top = poset
            .supremum(&all)
            .ok_or_else(|| Error::NotALattice("no greatest element".into()))?;
        Ok(FiniteLattice {
            poset,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn from_pairs<I, S, P, T>(elements: I, pairs: P) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        P: IntoIterator<Item = (T, T)>,
        T: AsRef<str>,
    {
        FiniteLattice::from_poset(FinitePoset::from_pairs(elements, pairs)?)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn carrier(&self) -> &Carrier {
        &self.poset.carrier
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x][y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x][y]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn label(&self, x: usize) -> &str {
        self.poset.carrier.label(x)
    }

    /// Join of an arbitrary subset (bottom for the empty set).
    pub fn join_all(&self, set: impl IntoIterator<Item = usize>) -> usize {
        set.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of an arbitrary subset (top for the empty set).
    pub fn meet_all(&self, set: impl IntoIterator<Item = usize>) -> usize {
        set.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn relabel(&self, labels: &[String]) -> Result<FiniteLattice> {
        FiniteLattice::from_poset(self.poset.relabel(labels)?)
    }
}

/// `(a, y, b)` holds iff `a ∧ b ≤ y ≤ a ∨ b`.
pub fn betweenness_from_lattice(lattice: &FiniteLattice) -> TernaryRelation {
    let n = lattice.len();
    let mut rel = TernaryRelation::empty(lattice.carrier().clone());
    for a in 0..n {
        for b in 0..n {
            let (lo, hi) = (lattice.meet(a, b), lattice.join(a, b));
            for y in 0..n {
                if lattice.leq(lo, y) && lattice.leq(y, hi) {
                    rel.insert(a, y, b);
                }
            }
        }
    }
    rel
}

/// `x ≤ y` iff `[y, β] ⊆ [x, β]`.
pub fn recover_order(rel: &TernaryRelation, beta: &str) -> Result<FinitePoset> {
    let failed = axioms::failed_r_axioms(rel);
    if !failed.is_empty() {
        return Err(Error::NotRRelation { failed });
    }
    let beta = rel.carrier().require(beta)?;
    let n = rel.size();
    let towards: Vec<FixedBitSet> = (0..n).map(|x| rel.interval_set(x, beta)).collect();
    let up: Vec<FixedBitSet> = (0..n)
        .map(|x| {
            let mut s = FixedBitSet::with_capacity(n);
            for y in 0..n {
                if towards[y].is_subset(&towards[x]) {
                    s.insert(y);
                }
            }
            s
        })
        .collect();
    for x in 0..n {
        for y in up[x].ones() {
            if y != x && up[y].contains(x) {
                return Err(Error::OrderRecovery(
                    rel.carrier().label(x).to_string(),
                    rel.carrier().label(y).to_string(),
                ));
            }
        }
    }
    FinitePoset::from_up_sets(rel.carrier().clone(), up)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::relation::bottom_relation;

    #[test]
    fn fixtures_are_lattices_with_expected_bounds() {
        let n5 = fixtures::n5();
        assert_eq!(n5.label(n5.bottom()), "bot");
        assert_eq!(n5.label(n5.top()), "top");
        let idx = |s: &str| n5.carrier().index(s).unwrap();
        assert_eq!(n5.join(idx("a"), idx("b")), idx("top"));
        assert_eq!(n5.meet(idx("c"), idx("b")), idx("bot"));
    }

    #[test]
    fn non_lattices_are_rejected() {
        // two maximal elements
        assert!(matches!(
            FiniteLattice::from_pairs(["0", "a", "b"], [("0", "a"), ("0", "b")]),
            Err(Error::NotALattice(_))
        ));
        assert!(matches!(
            FinitePoset::from_pairs(["a", "b"], [("a", "b"), ("b", "a")]),
            Err(Error::InvalidPoset(_))
        ));
    }

    #[test]
    fn betweenness_examples() {
        let c3 = betweenness_from_lattice(&fixtures::c3());
        assert!(c3.contains_labels("0", "1", "2").unwrap());
        assert!(!c3.contains_labels("1", "0", "2").unwrap());
        assert!(axioms::is_r_relation(&c3));

        let m3 = betweenness_from_lattice(&fixtures::m3());
        assert!(m3.contains_labels("x", "z", "y").unwrap());
        assert!(m3.contains_labels("x", "y", "z").unwrap());

        let one = FiniteLattice::from_pairs(["p"], Vec::<(&str, &str)>::new()).unwrap();
        let rel = betweenness_from_lattice(&one);
        assert_eq!(rel, bottom_relation(one.carrier()));
    }

    #[test]
    fn recover_order_examples() {
        let c3 = fixtures::c3();
        let order = recover_order(&betweenness_from_lattice(&c3), "2").unwrap();
        assert_eq!(&order, c3.poset());

        let b4 = fixtures::b4();
        let order = recover_order(&betweenness_from_lattice(&b4), "top").unwrap();
        assert_eq!(&order, b4.poset());

        let bot = bottom_relation(&Carrier::new(["a", "b"]).unwrap());
        let order = recover_order(&bot, "b").unwrap();
        assert!(order.leq(0, 1));
        assert!(!order.leq(1, 0));
    }

    #[test]
    fn recover_order_reports_antisymmetry_failure() {
        // in M3 the atoms have equal intervals towards the top element? no: use TRI
        let tri = fixtures::tri();
        let err = recover_order(&tri, "a").unwrap_err();
        assert_eq!(err, Error::OrderRecovery("b".into(), "c".into()));
    }

    #[test]
    fn canonical_key_is_an_isomorphism_invariant() {
        let n5 = fixtures::n5();
        let renamed: Vec<String> = ["q", "w", "e", "r", "t"].iter().map(|s| s.to_string()).collect();
        let other = n5.relabel(&renamed).unwrap();
        assert_eq!(n5.poset().canonical_key().unwrap(), other.poset().canonical_key().unwrap());
        assert_ne!(
            n5.poset().canonical_key().unwrap(),
            fixtures::m3().poset().canonical_key().unwrap()
        );
    }

    #[test]
    fn heap_visits_every_permutation_once() {
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(5, &mut |p| {
            assert!(seen.insert(p.to_vec()));
        });
        assert_eq!(seen.len(), 120);
    }
}
