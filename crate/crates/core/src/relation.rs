//! Carriers, ternary relations, maps between them, partitions and quotients.
//!
//! Elements of a carrier are addressed by their position in the sorted label
//! list, so index order and label order coincide everywhere.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::report::CheckReport;

/// Index triple `(a, b, c)`: `b` lies between `a` and `c`.
pub type Triple = (usize, usize, usize);

/// A finite set of labels kept in sorted order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Carrier {
    labels: Vec<String>,
}

impl Carrier {
    /// Builds a carrier from arbitrary labels. Duplicates are rejected.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].clone()));
        }
        Ok(Carrier { labels })
    }

    /// Labels `0, 1, ..., n-1`, zero-padded so that label order matches numeric order.
    pub fn numbered(n: usize) -> Self {
        let width = n.saturating_sub(1).to_string().len();
        Carrier {
            labels: (0..n).map(|i| format!("{i:0width$}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index(label).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.labels.iter().map(String::as_str)
    }

    /// Labels of the members of `set`, in carrier order.
    pub fn labels_of(&self, set: &FixedBitSet) -> Vec<String> {
        set.ones().map(|i| self.labels[i].clone()).collect()
    }

    pub(crate) fn check_same(&self, other: &Carrier, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::CarrierMismatch(format!(
                "{what}: {{{}}} vs {{{}}}",
                self.labels.join(","),
                other.labels.join(",")
            )))
        }
    }
}

/// A set of triples over a carrier, stored as an `n³` bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryRelation {
    carrier: Carrier,
    bits: FixedBitSet,
}

impl fmt::Debug for TernaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TernaryRelation")
            .field("elements", &self.carrier.labels)
            .field("triples", &self.labeled_triples())
            .finish()
    }
}

impl TernaryRelation {
    pub fn empty(carrier: Carrier) -> Self {
        let n = carrier.len();
        TernaryRelation {
            carrier,
            bits: FixedBitSet::with_capacity(n * n * n),
        }
    }

    pub fn from_triples<I>(carrier: Carrier, triples: I) -> Self
    where
        I: IntoIterator<Item = Triple>,
    {
        let mut rel = TernaryRelation::empty(carrier);
        for (a, b, c) in triples {
            rel.insert(a, b, c);
        }
        rel
    }

    /// Builds a relation from labelled triples, optionally closing under mirroring.
    pub fn from_labels<'a, I>(carrier: Carrier, triples: I, mirror: bool) -> Result<Self>
    where
        I: IntoIterator<Item = [&'a str; 3]>,
    {
        let mut rel = TernaryRelation::empty(carrier);
        for [a, b, c] in triples {
            let (a, b, c) = (
                rel.carrier.require(a)?,
                rel.carrier.require(b)?,
                rel.carrier.require(c)?,
            );
            rel.insert(a, b, c);
            if mirror {
                rel.insert(c, b, a);
            }
        }
        Ok(rel)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    /// Number of carrier elements.
    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    /// Number of triples.
    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    #[inline]
    fn slot(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.carrier.len();
        (a * n + b) * n + c
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize, c: usize) -> bool {
        self.bits.contains(self.slot(a, b, c))
    }

    pub fn contains_labels(&self, a: &str, b: &str, c: &str) -> Result<bool> {
        Ok(self.contains(
            self.carrier.require(a)?,
            self.carrier.require(b)?,
            self.carrier.require(c)?,
        ))
    }

    /// Returns `true` if the triple was not present before.
    pub fn insert(&mut self, a: usize, b: usize, c: usize) -> bool {
        let slot = self.slot(a, b, c);
        !self.bits.put(slot)
    }

    pub fn remove(&mut self, a: usize, b: usize, c: usize) {
        let slot = self.slot(a, b, c);
        self.bits.set(slot, false);
    }

    /// Triples in lexicographic order.
    pub fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        let n = self.carrier.len();
        self.bits.ones().map(move |s| (s / (n * n), (s / n) % n, s % n))
    }

    pub fn labeled_triples(&self) -> Vec<[String; 3]> {
        let l = |i: usize| self.carrier.label(i).to_string();
        self.triples().map(|(a, b, c)| [l(a), l(b), l(c)]).collect()
    }

    /// The interval `[a, c] = { b | (a, b, c) }` as an element set.
    pub fn interval_set(&self, a: usize, c: usize) -> FixedBitSet {
        let n = self.carrier.len();
        let mut out = FixedBitSet::with_capacity(n);
        for b in 0..n {
            if self.contains(a, b, c) {
                out.insert(b);
            }
        }
        out
    }

    /// All intervals, indexed `[a][c]`.
    pub fn intervals(&self) -> Vec<Vec<FixedBitSet>> {
        let n = self.carrier.len();
        (0..n)
            .map(|a| (0..n).map(|c| self.interval_set(a, c)).collect())
            .collect()
    }

    pub fn is_subset(&self, other: &TernaryRelation) -> bool {
        self.carrier == other.carrier && self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &TernaryRelation) -> Result<TernaryRelation> {
        self.carrier.check_same(&other.carrier, "union")?;
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Ok(TernaryRelation {
            carrier: self.carrier.clone(),
            bits,
        })
    }

    pub fn intersection(&self, other: &TernaryRelation) -> Result<TernaryRelation> {
        self.carrier.check_same(&other.carrier, "intersection")?;
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Ok(TernaryRelation {
            carrier: self.carrier.clone(),
            bits,
        })
    }

    /// Triples of `self` missing from `other` (carriers must agree).
    pub fn difference(&self, other: &TernaryRelation) -> Vec<Triple> {
        self.triples()
            .filter(|&(a, b, c)| !other.contains(a, b, c))
            .collect()
    }

    /// The induced substructure on `elements` (indices into this carrier).
    pub fn restrict(&self, elements: &[usize]) -> TernaryRelation {
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let carrier = Carrier {
            labels: sorted.iter().map(|&i| self.carrier.labels[i].clone()).collect(),
        };
        let mut out = TernaryRelation::empty(carrier);
        for (i, &a) in sorted.iter().enumerate() {
            for (j, &b) in sorted.iter().enumerate() {
                for (k, &c) in sorted.iter().enumerate() {
                    if self.contains(a, b, c) {
                        out.insert(i, j, k);
                    }
                }
            }
        }
        out
    }

    /// Image of the relation under an injective relabelling `old index -> new label`.
    pub fn relabel(&self, labels: &[String]) -> Result<TernaryRelation> {
        if labels.len() != self.size() {
            return Err(Error::CarrierMismatch(format!(
                "relabelling needs {} labels, got {}",
                self.size(),
                labels.len()
            )));
        }
        let carrier = Carrier::new(labels.iter().cloned())?;
        let pos: Vec<usize> = labels
            .iter()
            .map(|l| carrier.index(l).expect("label just inserted"))
            .collect();
        Ok(TernaryRelation::from_triples(
            carrier,
            self.triples().map(|(a, b, c)| (pos[a], pos[b], pos[c])),
        ))
    }
}

/// `X_⊥ = {(a,b,b), (b,b,a)}`: the least R-relation on a carrier.
pub fn bottom_relation(carrier: &Carrier) -> TernaryRelation {
    let n = carrier.len();
    let mut rel = TernaryRelation::empty(carrier.clone());
    for a in 0..n {
        for b in 0..n {
            rel.insert(a, b, b);
            rel.insert(b, b, a);
        }
    }
    rel
}

/// `X_⊤ = X³ ∖ {(a,b,a) | a ≠ b}`: the greatest R-relation on a carrier.
pub fn top_relation(carrier: &Carrier) -> TernaryRelation {
    let n = carrier.len();
    let mut rel = TernaryRelation::empty(carrier.clone());
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a != c || a == b {
                    rel.insert(a, b, c);
                }
            }
        }
    }
    rel
}

/// `[a, b] = { c | (a, c, b) }` by label.
pub fn interval(rel: &TernaryRelation, a: &str, b: &str) -> Result<BTreeSet<String>> {
    let (a, b) = (rel.carrier.require(a)?, rel.carrier.require(b)?);
    Ok(rel
        .carrier
        .labels_of(&rel.interval_set(a, b))
        .into_iter()
        .collect())
}

/// A total function between two carriers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelMap {
    source: Carrier,
    target: Carrier,
    assignment: Vec<usize>,
}

impl RelMap {
    pub fn new(source: Carrier, target: Carrier, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::CarrierMismatch(format!(
                "assignment has {} entries for a source of size {}",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&t| t >= target.len()) {
            return Err(Error::CarrierMismatch(format!(
                "assignment points at index {bad} outside a target of size {}",
                target.len()
            )));
        }
        Ok(RelMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(carrier: &Carrier) -> Self {
        RelMap {
            source: carrier.clone(),
            target: carrier.clone(),
            assignment: (0..carrier.len()).collect(),
        }
    }

    /// Builds a map from `label -> label` pairs; every source label must be assigned.
    pub fn from_labels(
        source: &Carrier,
        target: &Carrier,
        map: &BTreeMap<String, String>,
    ) -> Result<Self> {
        for key in map.keys() {
            source.require(key)?;
        }
        let assignment = source
            .iter()
            .map(|s| {
                let t = map.get(s).ok_or_else(|| Error::PartialMap(s.to_string()))?;
                target.require(t)
            })
            .collect::<Result<Vec<_>>>()?;
        RelMap::new(source.clone(), target.clone(), assignment)
    }

    /// The inclusion of a sub-carrier, matching elements by label.
    pub fn inclusion(source: &Carrier, target: &Carrier) -> Result<Self> {
        let assignment = source
            .iter()
            .map(|l| target.require(l))
            .collect::<Result<Vec<_>>>()?;
        RelMap::new(source.clone(), target.clone(), assignment)
    }

    pub fn source(&self) -> &Carrier {
        &self.source
    }

    pub fn target(&self) -> &Carrier {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.assignment[i]
    }

    pub fn apply_label(&self, label: &str) -> Result<&str> {
        let i = self.source.require(label)?;
        Ok(self.target.label(self.assignment[i]))
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &RelMap) -> Result<RelMap> {
        self.target.check_same(&then.source, "composition")?;
        Ok(RelMap {
            source: self.source.clone(),
            target: then.target.clone(),
            assignment: self.assignment.iter().map(|&y| then.assignment[y]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.target.len());
        self.assignment.iter().all(|&t| !seen.put(t))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.assignment.iter().enumerate().all(|(i, &t)| i == t)
    }

    pub fn label_map(&self) -> BTreeMap<String, String> {
        self.source
            .iter()
            .zip(&self.assignment)
            .map(|(s, &t)| (s.to_string(), self.target.label(t).to_string()))
            .collect()
    }

    /// Image of a triple.
    #[inline]
    pub fn image(&self, (a, b, c): Triple) -> Triple {
        (self.assignment[a], self.assignment[b], self.assignment[c])
    }
}

/// Checks that `f` sends every triple of `source` to a triple of `target`.
/// Witnesses are the source triples whose image is missing.
pub fn is_monotone(
    f: &RelMap,
    source: &TernaryRelation,
    target: &TernaryRelation,
) -> Result<CheckReport> {
    f.source.check_same(source.carrier(), "map source")?;
    f.target.check_same(target.carrier(), "map target")?;
    let witnesses = source
        .triples()
        .filter(|&t| {
            let (x, y, z) = f.image(t);
            !target.contains(x, y, z)
        })
        .map(|(a, b, c)| {
            [a, b, c]
                .iter()
                .map(|&i| source.carrier().label(i).to_string())
                .collect()
        })
        .collect();
    Ok(CheckReport::from_witnesses(witnesses))
}

/// Quick monotonicity test without witness collection.
pub(crate) fn monotone_fast(
    assignment: &[usize],
    source: &TernaryRelation,
    target: &TernaryRelation,
) -> bool {
    source
        .triples()
        .all(|(a, b, c)| target.contains(assignment[a], assignment[b], assignment[c]))
}

/// An equivalence relation on a carrier, as blocks.
///
/// Blocks are ordered by their least element and each block is represented by
/// its least label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    carrier: Carrier,
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn discrete(carrier: &Carrier) -> Self {
        let n = carrier.len();
        Partition {
            carrier: carrier.clone(),
            block_of: (0..n).collect(),
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// Normalises an arbitrary class labelling (`class[i]` identifies the block of `i`).
    pub fn from_classes(carrier: &Carrier, class: &[usize]) -> Self {
        assert_eq!(class.len(), carrier.len());
        let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = Vec::with_capacity(class.len());
        for (i, &c) in class.iter().enumerate() {
            let id = *renumber.entry(c).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[id].push(i);
            block_of.push(id);
        }
        Partition {
            carrier: carrier.clone(),
            block_of,
            blocks,
        }
    }

    /// Builds a partition from labelled blocks; they must be disjoint and cover the carrier.
    pub fn from_label_blocks<S: AsRef<str>>(carrier: &Carrier, blocks: &[Vec<S>]) -> Result<Self> {
        let mut class = vec![usize::MAX; carrier.len()];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::CarrierMismatch("empty block".into()));
            }
            for label in block {
                let i = carrier.require(label.as_ref())?;
                if class[i] != usize::MAX {
                    return Err(Error::CarrierMismatch(format!(
                        "`{}` appears in two blocks",
                        label.as_ref()
                    )));
                }
                class[i] = b;
            }
        }
        if let Some(i) = class.iter().position(|&c| c == usize::MAX) {
            return Err(Error::CarrierMismatch(format!(
                "`{}` is not covered by any block",
                carrier.label(i)
            )));
        }
        Ok(Partition::from_classes(carrier, &class))
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.block_of[i] == self.block_of[j]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.carrier.len()
    }

    pub fn representative(&self, block: usize) -> &str {
        self.carrier.label(self.blocks[block][0])
    }

    pub fn labeled_blocks(&self) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| self.carrier.label(i).to_string()).collect())
            .collect()
    }

    /// Blocks with more than one element, labelled.
    pub fn glued(&self) -> Vec<Vec<String>> {
        self.labeled_blocks()
            .into_iter()
            .filter(|b| b.len() > 1)
            .collect()
    }

    /// `true` if every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.carrier == other.carrier
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&i| other.same_block(i, b[0])))
    }

    /// The carrier of representatives and the quotient map onto it.
    pub fn quotient_map(&self) -> RelMap {
        let target = Carrier {
            labels: (0..self.blocks.len())
                .map(|b| self.representative(b).to_string())
                .collect(),
        };
        RelMap {
            source: self.carrier.clone(),
            target,
            assignment: self.block_of.clone(),
        }
    }
}

/// Kernel partition of a map: elements with the same image share a block.
pub fn kernel(map: &RelMap) -> Partition {
    Partition::from_classes(map.source(), map.assignment())
}

/// `[A,B,C]` holds in the quotient iff some `(x,y,z)` with `x∈A, y∈B, z∈C` holds.
pub fn quotient_relation(
    rel: &TernaryRelation,
    part: &Partition,
) -> Result<(TernaryRelation, RelMap)> {
    rel.carrier.check_same(&part.carrier, "partition")?;
    let q = part.quotient_map();
    let image = TernaryRelation::from_triples(q.target.clone(), rel.triples().map(|t| q.image(t)));
    Ok((image, q))
}
