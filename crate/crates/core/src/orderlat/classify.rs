use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::FiniteLattice;
use crate::axioms;
use crate::error::{Error, Result};
use crate::relation::TernaryRelation;
use crate::report::Axiom;

/// A pair `(α, β)` presenting an R-relation as a bounded lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundWitness {
    pub alpha: String,
    pub beta: String,
}

impl BoundWitness {
    pub fn new(alpha: impl Into<String>, beta: impl Into<String>) -> Self {
        BoundWitness {
            alpha: alpha.into(),
            beta: beta.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Flag {
    pub holds: bool,
    pub witnesses: Vec<Vec<String>>,
}

impl Flag {
    fn from_witnesses(witnesses: Vec<Vec<String>>) -> Self {
        Flag {
            holds: witnesses.is_empty(),
            witnesses,
        }
    }

    fn yes() -> Self {
        Flag {
            holds: true,
            witnesses: Vec::new(),
        }
    }

    fn both(a: &Flag, b: &Flag) -> Self {
        Flag::from_witnesses(a.witnesses.iter().chain(&b.witnesses).cloned().collect())
    }
}

/// Lattice-theoretic properties, each with refuting tuples.
///
/// Witness shapes: `linear` lists incomparable pairs (direct) or `DISJ`
/// violations `[a,b,c,x]` (betweenness); `modular` lists `[x,y,c]` with
/// `y < x` and equal meets and joins with `c`; `distributive` lists triples
/// breaking the distributive law (direct) or `ANTISYM` violations
/// (betweenness); `boolean` lists elements without a complement.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub linear: Flag,
    pub bounded: Flag,
    pub complete: Flag,
    pub modular: Flag,
    pub distributive: Flag,
    pub completely_distributive: Flag,
    pub boolean: Flag,
}

impl ClassificationReport {
    pub fn flags(&self) -> [(&'static str, bool); 7] {
        [
            ("linear", self.linear.holds),
            ("bounded", self.bounded.holds),
            ("complete", self.complete.holds),
            ("modular", self.modular.holds),
            ("distributive", self.distributive.holds),
            ("completely_distributive", self.completely_distributive.holds),
            ("boolean", self.boolean.holds),
        ]
    }

    pub fn same_flags(&self, other: &ClassificationReport) -> bool {
        self.flags() == other.flags()
    }
}

fn separating(intervals: &[Vec<FixedBitSet>], beta: usize) -> Option<(usize, usize)> {
    let n = intervals.len();
    for x in 0..n {
        for y in x + 1..n {
            if intervals[x][beta] == intervals[y][beta] {
                return Some((x, y));
            }
        }
    }
    None
}

/// All ordered pairs `(α, β)` with `[α, β]` the whole carrier and `β`
/// separating points through their intervals towards it.
pub fn detect_bounds(rel: &TernaryRelation) -> Vec<BoundWitness> {
    let n = rel.size();
    let intervals = rel.intervals();
    let label = |i: usize| rel.carrier().label(i).to_string();
    let mut out = Vec::new();
    for beta in 0..n {
        if separating(&intervals, beta).is_some() {
            continue;
        }
        for alpha in 0..n {
            if intervals[alpha][beta].count_ones(..) == n {
                out.push(BoundWitness::new(label(alpha), label(beta)));
            }
        }
    }
    out
}

/// Decides every flag from betweenness alone, relative to `witness`.
///
/// Completeness asks that the intervals `[x, β]` be closed under
/// intersection. Closure under pairwise intersection already gives closure
/// under all finite intersections, so only pairs are scanned.
pub fn classify_via_betweenness(
    rel: &TernaryRelation,
    witness: &BoundWitness,
) -> Result<ClassificationReport> {
    let failed = axioms::failed_r_axioms(rel);
    if !failed.is_empty() {
        return Err(Error::NotRRelation { failed });
    }
    let invalid = |reason: String| Error::InvalidBoundWitness {
        alpha: witness.alpha.clone(),
        beta: witness.beta.clone(),
        reason,
    };
    let carrier = rel.carrier();
    let alpha = carrier.index(&witness.alpha).ok_or_else(|| invalid("alpha is not in the carrier".into()))?;
    let beta = carrier.index(&witness.beta).ok_or_else(|| invalid("beta is not in the carrier".into()))?;
    let n = rel.size();
    let intervals = rel.intervals();
    if intervals[alpha][beta].count_ones(..) != n {
        return Err(invalid("[alpha, beta] is not the whole carrier".into()));
    }
    if let Some((x, y)) = separating(&intervals, beta) {
        return Err(invalid(format!(
            "`{}` and `{}` have the same interval towards beta",
            carrier.label(x),
            carrier.label(y)
        )));
    }
    let label = |i: usize| carrier.label(i).to_string();
    let towards: Vec<&FixedBitSet> = (0..n).map(|x| &intervals[x][beta]).collect();

    let linear = Flag::from_witnesses(axioms::check_axiom(rel, Axiom::Disj).witnesses);
    let bounded = Flag::yes();

    let mut not_closed = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let mut common = towards[x].clone();
            common.intersect_with(towards[y]);
            if !towards.iter().any(|&t| *t == common) {
                not_closed.push(vec![label(x), label(y)]);
            }
        }
    }
    let complete = Flag::from_witnesses(not_closed);

    let mut not_modular = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y || !towards[x].is_subset(towards[y]) {
                continue;
            }
            for c in 0..n {
                if intervals[x][c] == intervals[y][c] {
                    not_modular.push(vec![label(x), label(y), label(c)]);
                }
            }
        }
    }
    let modular = Flag::from_witnesses(not_modular);

    let distributive = Flag::from_witnesses(axioms::check_axiom(rel, Axiom::Antisym).witnesses);
    let completely_distributive = Flag::both(&complete, &distributive);

    let uncomplemented: Vec<Vec<String>> = (0..n)
        .filter(|&x| !(0..n).any(|y| intervals[x][y].count_ones(..) == n))
        .map(|x| vec![label(x)])
        .collect();
    let boolean = Flag::both(&distributive, &Flag::from_witnesses(uncomplemented));

    Ok(ClassificationReport {
        linear,
        bounded,
        complete,
        modular,
        distributive,
        completely_distributive,
        boolean,
    })
}

/// Pentagons `[a, c, b]`: `a < c`, and `b` has the same meet and join with
/// both, so `{a∧b, a, c, b, a∨b}` is a sublattice isomorphic to N5.
pub fn find_n5(l: &FiniteLattice) -> Vec<[usize; 3]> {
    let n = l.len();
    let mut out = Vec::new();
    for a in 0..n {
        for c in 0..n {
            if a == c || !l.leq(a, c) {
                continue;
            }
            for b in 0..n {
                if l.meet(a, b) == l.meet(c, b) && l.join(a, b) == l.join(c, b) {
                    out.push([a, c, b]);
                }
            }
        }
    }
    out
}

/// Diamonds `[x, y, z]` (`x < y < z` as indices): pairwise incomparable with
/// one common pairwise meet and one common pairwise join.
pub fn find_m3(l: &FiniteLattice) -> Vec<[usize; 3]> {
    let n = l.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if l.poset().comparable(x, y) {
                continue;
            }
            let (lo, hi) = (l.meet(x, y), l.join(x, y));
            for z in y + 1..n {
                if !l.poset().comparable(x, z)
                    && !l.poset().comparable(y, z)
                    && l.meet(x, z) == lo
                    && l.meet(y, z) == lo
                    && l.join(x, z) == hi
                    && l.join(y, z) == hi
                {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// Textbook order-theoretic classification, used as an oracle for
/// [`classify_via_betweenness`].
pub fn classify_direct(l: &FiniteLattice) -> ClassificationReport {
    let n = l.len();
    let label = |i: usize| l.label(i).to_string();
    let names = |t: &[usize]| t.iter().map(|&i| label(i)).collect::<Vec<_>>();

    let mut incomparable = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if !l.poset().comparable(x, y) {
                incomparable.push(vec![label(x), label(y)]);
            }
        }
    }
    let linear = Flag::from_witnesses(incomparable);

    // Finite and nonempty, so bounded and complete by construction.
    let bounded = Flag::yes();
    let complete = Flag::yes();

    let pentagons = find_n5(l);
    let modular = Flag::from_witnesses(pentagons.iter().map(|t| names(t)).collect());

    let mut law = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in y + 1..n {
                if l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) {
                    law.push(vec![label(x), label(y), label(z)]);
                }
            }
        }
    }
    let distributive = Flag::from_witnesses(law);
    debug_assert_eq!(
        distributive.holds,
        pentagons.is_empty() && find_m3(l).is_empty(),
        "distributive law disagrees with the forbidden-sublattice test"
    );
    let completely_distributive = Flag::both(&complete, &distributive);

    let uncomplemented: Vec<Vec<String>> = (0..n)
        .filter(|&x| !(0..n).any(|y| l.meet(x, y) == l.bottom() && l.join(x, y) == l.top()))
        .map(|x| vec![label(x)])
        .collect();
    let boolean = Flag::both(&distributive, &Flag::from_witnesses(uncomplemented));

    ClassificationReport {
        linear,
        bounded,
        complete,
        modular,
        distributive,
        completely_distributive,
        boolean,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::orderlat::betweenness_from_lattice;
    use crate::relation::{bottom_relation, Carrier};

    fn both(l: &FiniteLattice) -> (ClassificationReport, ClassificationReport) {
        let rel = betweenness_from_lattice(l);
        let w = BoundWitness::new(l.label(l.bottom()), l.label(l.top()));
        (classify_via_betweenness(&rel, &w).unwrap(), classify_direct(l))
    }

    #[test]
    fn chain_classification() {
        let (via, direct) = both(&fixtures::c3());
        assert!(via.linear.holds && via.distributive.holds && !via.boolean.holds);
        assert_eq!(via.boolean.witnesses, vec![vec!["1".to_string()]]);
        assert!(via.same_flags(&direct));
    }

    #[test]
    fn diamond_is_modular_not_distributive() {
        let (via, direct) = both(&fixtures::m3());
        assert!(via.modular.holds);
        assert!(!via.distributive.holds);
        let xyz = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        assert!(via.distributive.witnesses.contains(&xyz));
        assert!(via.same_flags(&direct));
        assert_eq!(find_m3(&fixtures::m3()).len(), 1);
    }

    #[test]
    fn pentagon_is_not_modular() {
        let l = fixtures::n5();
        let (via, direct) = both(&l);
        assert!(!via.modular.holds);
        // y = a below x = c, both meeting b in bot and joining it in top
        assert!(via
            .modular
            .witnesses
            .contains(&vec!["c".to_string(), "a".to_string(), "b".to_string()]));
        assert!(!direct.modular.holds);
        assert!(via.same_flags(&direct));
    }

    #[test]
    fn square_is_boolean() {
        let (via, direct) = both(&fixtures::b4());
        assert!(via.boolean.holds && direct.boolean.holds);
        assert!(!via.linear.holds);
    }

    #[test]
    fn bounds_of_examples() {
        let c3 = betweenness_from_lattice(&fixtures::c3());
        let found = detect_bounds(&c3);
        assert!(found.contains(&BoundWitness::new("0", "2")));
        assert!(found.contains(&BoundWitness::new("2", "0")));

        let b4 = betweenness_from_lattice(&fixtures::b4());
        let found = detect_bounds(&b4);
        for (x, y) in [("bot", "top"), ("top", "bot"), ("a", "b"), ("b", "a")] {
            assert!(found.contains(&BoundWitness::new(x, y)));
        }
        assert_eq!(found.len(), 4);

        let bot = bottom_relation(&Carrier::new(["a", "b", "c"]).unwrap());
        assert!(detect_bounds(&bot).is_empty());
    }

    #[test]
    fn bad_witnesses_are_rejected() {
        let c3 = betweenness_from_lattice(&fixtures::c3());
        for w in [BoundWitness::new("0", "1"), BoundWitness::new("0", "q")] {
            assert!(matches!(
                classify_via_betweenness(&c3, &w),
                Err(Error::InvalidBoundWitness { .. })
            ));
        }
    }
}
