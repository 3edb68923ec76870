//! Closure operators on ternary relations.
//!
//! * `l12` adds the reflexive triples and mirrors (R1, R2).
//! * `l3` quotients by the least equivalence that makes the relation R3.
//! * `l4` grows every interval until it is convex (R4).
//! * `r_closure` is `l4 ∘ l3 ∘ l12`, the reflection into R-relations.
//! * `antisym_step` quotients by the least equivalence that makes the
//!   relation antisymmetric; `antisymmetric_closure` alternates it with `l4`
//!   until nothing moves.
//!
//! Both quotient steps are computed as union-find fixpoints of a local glue
//! rule, re-evaluated on the current quotient until stable.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::axioms;
use crate::error::{Error, Result};
use crate::relation::{monotone_fast, quotient_relation, Partition, RelMap, TernaryRelation};
use crate::report::Axiom;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if two distinct classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    fn classes(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|i| self.find(i)).collect()
    }
}

/// Which local rule drives a gluing fixpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GlueRule {
    /// A triple `(r,s,t)` with `r ∼ t` puts `r, s, t` into one class.
    Minimality,
    /// Triples `(a,b,c)` and `(a',c',b')` with `a∼a', b∼b', c∼c'` put `b, c` into one class.
    Antisymmetry,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    #[serde(rename = "L12")]
    L12,
    #[serde(rename = "L3")]
    L3,
    #[serde(rename = "L4")]
    L4,
    #[serde(rename = "L_A")]
    LA,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::L12 => "L12",
            Step::L3 => "L3",
            Step::L4 => "L4",
            Step::LA => "L_A",
        })
    }
}

/// One applied operator: sizes after the step, and whether it changed anything.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: Step,
    pub carrier: usize,
    pub triples: usize,
    pub identity: bool,
}

/// A closed relation together with the quotient map from the input carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub relation: TernaryRelation,
    pub quotient: RelMap,
    pub trace: Vec<TraceStep>,
}

impl ClosureResult {
    fn identity(rel: &TernaryRelation) -> Self {
        ClosureResult {
            relation: rel.clone(),
            quotient: RelMap::identity(rel.carrier()),
            trace: Vec::new(),
        }
    }

    fn record(&mut self, step: Step, identity: bool) {
        self.trace.push(TraceStep {
            step,
            carrier: self.relation.size(),
            triples: self.relation.len(),
            identity,
        });
    }

    /// The points glued together by the quotient (blocks of size > 1).
    pub fn glued(&self) -> Vec<Vec<String>> {
        crate::relation::kernel(&self.quotient).glued()
    }

    /// Factors a monotone `f` (from the input carrier into `target`) through the
    /// quotient: the unique `g` with `g ∘ quotient = f`, provided it exists and
    /// is monotone from the closed relation.
    pub fn factor(&self, f: &RelMap, target: &TernaryRelation) -> Option<RelMap> {
        if f.source() != self.quotient.source() || f.target() != target.carrier() {
            return None;
        }
        let mut g = vec![usize::MAX; self.relation.size()];
        for (x, &qx) in self.quotient.assignment().iter().enumerate() {
            let fx = f.apply(x);
            if g[qx] == usize::MAX {
                g[qx] = fx;
            } else if g[qx] != fx {
                return None;
            }
        }
        if g.contains(&usize::MAX) || !monotone_fast(&g, &self.relation, target) {
            return None;
        }
        RelMap::new(self.relation.carrier().clone(), target.carrier().clone(), g).ok()
    }
}

/// Adds `(a,b,b)` for all `a, b`, then closes under mirroring.
pub fn l12(rel: &TernaryRelation) -> TernaryRelation {
    let n = rel.size();
    let mut out = rel.clone();
    for a in 0..n {
        for b in 0..n {
            out.insert(a, b, b);
        }
    }
    for (a, b, c) in rel.triples().collect::<Vec<_>>() {
        out.insert(c, b, a);
    }
    for a in 0..n {
        for b in 0..n {
            out.insert(b, b, a);
        }
    }
    out
}

/// Least equivalence closed under the glue rule.
pub fn sim_partition(rel: &TernaryRelation, rule: GlueRule) -> Partition {
    let mut uf = UnionFind::new(rel.size());
    match rule {
        GlueRule::Minimality => minimality_fixpoint(rel, &mut uf),
        GlueRule::Antisymmetry => antisymmetry_fixpoint(rel, &mut uf),
    }
    Partition::from_classes(rel.carrier(), &uf.classes())
}

fn minimality_fixpoint(rel: &TernaryRelation, uf: &mut UnionFind) {
    let triples: Vec<_> = rel.triples().collect();
    loop {
        let mut changed = false;
        for &(r, s, t) in &triples {
            if uf.find(r) == uf.find(t) {
                changed |= uf.union(r, s);
            }
        }
        if !changed {
            break;
        }
    }
}

fn antisymmetry_fixpoint(rel: &TernaryRelation, uf: &mut UnionFind) {
    let n = rel.size();
    let triples: Vec<_> = rel.triples().collect();
    loop {
        // the quotient relation under the current classes, indexed by root
        let mut present = FixedBitSet::with_capacity(n * n * n);
        let roots = uf.classes();
        for &(a, b, c) in &triples {
            present.insert((roots[a] * n + roots[b]) * n + roots[c]);
        }
        let mut changed = false;
        for slot in present.ones() {
            let (a, b, c) = (slot / (n * n), (slot / n) % n, slot % n);
            if b != c && present.contains((a * n + c) * n + b) {
                changed |= uf.union(b, c);
            }
        }
        if !changed {
            break;
        }
    }
}

fn quotient_step(rel: &TernaryRelation, rule: GlueRule, step: Step) -> ClosureResult {
    let part = sim_partition(rel, rule);
    let (relation, quotient) = quotient_relation(rel, &part).expect("partition built on this carrier");
    let identity = part.is_discrete();
    let mut out = ClosureResult {
        relation,
        quotient,
        trace: Vec::new(),
    };
    out.record(step, identity);
    out
}

/// Quotient by the MINIMALITY fixpoint; the result satisfies R3.
pub fn l3(rel: &TernaryRelation) -> ClosureResult {
    quotient_step(rel, GlueRule::Minimality, Step::L3)
}

/// Grows all intervals simultaneously, `[a,c] ← [a,c] ∪ ⋃_{b,d ∈ [a,c]} [b,d]`,
/// until none changes; the result is the least R4 relation containing `rel`.
pub fn l4(rel: &TernaryRelation) -> TernaryRelation {
    let n = rel.size();
    let mut intervals = rel.intervals();
    loop {
        let mut next = intervals.clone();
        let mut changed = false;
        for a in 0..n {
            for c in 0..n {
                let inside = &intervals[a][c];
                for b in inside.ones() {
                    for d in inside.ones() {
                        next[a][c].union_with(&intervals[b][d]);
                    }
                }
                changed |= next[a][c] != intervals[a][c];
            }
        }
        intervals = next;
        if !changed {
            break;
        }
    }
    let mut out = TernaryRelation::empty(rel.carrier().clone());
    for (a, row) in intervals.iter().enumerate() {
        for (c, inside) in row.iter().enumerate() {
            for b in inside.ones() {
                out.insert(a, b, c);
            }
        }
    }
    out
}

/// `L = L4 ∘ L3 ∘ L2 ∘ L1`: the least R-relation reachable by a monotone quotient.
pub fn r_closure(rel: &TernaryRelation) -> ClosureResult {
    let mut out = ClosureResult::identity(rel);

    let closed = l12(rel);
    let same = closed == out.relation;
    out.relation = closed;
    out.record(Step::L12, same);

    let step = l3(&out.relation);
    out.quotient = out.quotient.then(&step.quotient).expect("quotient chain");
    out.relation = step.relation;
    out.trace.extend(step.trace);

    let grown = l4(&out.relation);
    let same = grown == out.relation;
    out.relation = grown;
    out.record(Step::L4, same);
    out
}

/// One antisymmetrisation: quotient by the ANTISYMMETRY fixpoint.
pub fn antisym_step(rel: &TernaryRelation) -> ClosureResult {
    quotient_step(rel, GlueRule::Antisymmetry, Step::LA)
}

/// Alternates `antisym_step` and `l4`, starting with `antisym_step`, until a
/// step changes nothing and the relation is both antisymmetric and R4.
///
/// The input must satisfy R1–R3; R4 is restored by the alternation.
pub fn antisymmetric_closure(rel: &TernaryRelation) -> Result<ClosureResult> {
    let failed: Vec<Axiom> = [Axiom::R1, Axiom::R2, Axiom::R3]
        .into_iter()
        .filter(|&a| !axioms::holds(rel, a))
        .collect();
    if !failed.is_empty() {
        return Err(Error::NotRRelation { failed });
    }

    let n = rel.size();
    let max_steps = 2 * (n + n * n * n) + 2;
    let input_is_r4 = axioms::holds(rel, Axiom::R4);
    let mut out = ClosureResult::identity(rel);

    for round in 0..max_steps {
        if round % 2 == 0 {
            let step = antisym_step(&out.relation);
            let identity = step.quotient.is_identity();
            out.quotient = out.quotient.then(&step.quotient)?;
            out.relation = step.relation;
            out.record(Step::LA, identity);
            if identity && (round > 0 || input_is_r4) {
                return Ok(out);
            }
        } else {
            let grown = l4(&out.relation);
            let identity = grown == out.relation;
            out.relation = grown;
            out.record(Step::L4, identity);
            if identity {
                return Ok(out);
            }
        }
    }
    Err(Error::Internal(format!(
        "antisymmetric closure did not stabilise within {max_steps} steps"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_axiom, is_r_relation};
    use crate::fixtures;
    use crate::relation::{bottom_relation, is_monotone, Carrier};

    fn sym(carrier: &Carrier, triples: &[[&str; 3]]) -> TernaryRelation {
        TernaryRelation::from_labels(carrier.clone(), triples.iter().copied(), true).unwrap()
    }

    #[test]
    fn l12_examples() {
        let ab = Carrier::new(["a", "b"]).unwrap();
        assert_eq!(l12(&TernaryRelation::empty(ab.clone())), bottom_relation(&ab));

        let abc = Carrier::new(["a", "b", "c"]).unwrap();
        let single = TernaryRelation::from_labels(abc.clone(), [["a", "b", "c"]], false).unwrap();
        let expected = bottom_relation(&abc).union(&sym(&abc, &[["a", "b", "c"]])).unwrap();
        assert_eq!(l12(&single), expected);

        assert_eq!(l12(&fixtures::tri()), fixtures::tri());
    }

    #[test]
    fn antisymmetry_glues_d1_d2_in_ex7() {
        let part = sim_partition(&fixtures::ex7(), GlueRule::Antisymmetry);
        assert_eq!(part.glued(), vec![vec!["d1", "d2"]]);
    }

    #[test]
    fn antisymmetry_glues_x_to_c_after_l4() {
        let rel = fixtures::ex7_glued();
        let with_axc = rel.union(&sym(rel.carrier(), &[["a", "x", "c"]])).unwrap();
        let part = sim_partition(&with_axc, GlueRule::Antisymmetry);
        assert_eq!(part.glued(), vec![vec!["c", "x"]]);
    }

    #[test]
    fn minimality_glues_through_aba() {
        let ab = Carrier::new(["a", "b"]).unwrap();
        let rel = bottom_relation(&ab)
            .union(&TernaryRelation::from_labels(ab.clone(), [["a", "b", "a"]], false).unwrap())
            .unwrap();
        let part = sim_partition(&rel, GlueRule::Minimality);
        assert_eq!(part.num_blocks(), 1);
        let res = l3(&rel);
        assert_eq!(res.relation.size(), 1);
        assert!(check_axiom(&res.relation, Axiom::R3).holds);
    }

    #[test]
    fn l3_is_identity_on_r_relations() {
        let res = l3(&fixtures::tri());
        assert!(res.quotient.is_identity());
        assert_eq!(res.relation, fixtures::tri());
        assert!(res.trace[0].identity);
    }

    #[test]
    fn l4_on_glued_ex7() {
        let rel = fixtures::ex7_glued();
        let grown = l4(&rel);
        let added: Vec<[String; 3]> = grown
            .difference(&rel)
            .into_iter()
            .map(|(a, b, c)| [a, b, c].map(|i| rel.carrier().label(i).to_string()))
            .collect();
        // (a,x,c) from [b,d1] ⊆ [a,c]; (a,b,x), (a,d1,x) from [a,c] ⊆ [a,x].
        let expected = sym(rel.carrier(), &[["a", "x", "c"], ["a", "b", "x"], ["a", "d1", "x"]]);
        assert_eq!(added, expected.labeled_triples());
        assert!(check_axiom(&grown, Axiom::R4).holds);
    }

    #[test]
    fn l4_fixes_r_relations_and_chains() {
        assert_eq!(l4(&fixtures::tri()), fixtures::tri());
        let chain = crate::orderlat::betweenness_from_lattice(&fixtures::c3());
        assert_eq!(l4(&chain), chain);
    }

    #[test]
    fn r_closure_examples() {
        let c = Carrier::new(["a", "b", "c"]).unwrap();
        let res = r_closure(&TernaryRelation::empty(c.clone()));
        assert_eq!(res.relation, bottom_relation(&c));
        assert!(res.quotient.is_identity());

        let aba = TernaryRelation::from_labels(c.clone(), [["a", "b", "a"]], false).unwrap();
        let res = r_closure(&aba);
        assert_eq!(res.relation.size(), 2);
        assert!(is_r_relation(&res.relation));
        assert_eq!(res.glued(), vec![vec!["a", "b"]]);

        let joined = r_closure(
            &sym(&c, &[["a", "b", "c"]])
                .union(&sym(&c, &[["a", "c", "b"]]))
                .unwrap()
                .union(&bottom_relation(&c))
                .unwrap(),
        );
        assert_eq!(joined.relation, fixtures::tri());
    }

    #[test]
    fn antisym_step_examples() {
        let res = antisym_step(&fixtures::ex7());
        assert_eq!(res.relation, fixtures::ex7_glued());
        assert!(check_axiom(&res.relation, Axiom::Antisym).holds);

        let res = antisym_step(&fixtures::tri());
        assert_eq!(res.glued(), vec![vec!["b", "c"]]);
        assert_eq!(res.relation.size(), 2);

        let chain = crate::orderlat::betweenness_from_lattice(&fixtures::c3());
        assert!(antisym_step(&chain).quotient.is_identity());
    }

    #[test]
    fn antisymmetric_closure_of_ex7() {
        let ex7 = fixtures::ex7();
        let res = antisymmetric_closure(&ex7).unwrap();
        let steps: Vec<(Step, bool)> = res.trace.iter().map(|t| (t.step, t.identity)).collect();
        assert_eq!(
            steps,
            vec![(Step::LA, false), (Step::L4, false), (Step::LA, false), (Step::L4, true)]
        );
        assert_eq!(res.relation.carrier().labels(), ["a", "b", "c", "d1", "y"]);
        assert!(is_r_relation(&res.relation));
        assert!(check_axiom(&res.relation, Axiom::Antisym).holds);
        assert!(is_monotone(&res.quotient, &ex7, &res.relation).unwrap().holds);
        let mut glued = res.glued();
        glued.sort();
        assert_eq!(glued, vec![vec!["c", "x"], vec!["d1", "d2"]]);
    }

    #[test]
    fn antisymmetric_closure_fixes_antisymmetric_input() {
        let chain = crate::orderlat::betweenness_from_lattice(&fixtures::c3());
        let res = antisymmetric_closure(&chain).unwrap();
        assert_eq!(res.trace.len(), 1);
        assert!(res.trace[0].identity);
        assert_eq!(res.relation, chain);
    }

    #[test]
    fn antisymmetric_closure_of_tri_has_two_points() {
        let res = antisymmetric_closure(&fixtures::tri()).unwrap();
        assert_eq!(res.relation.size(), 2);
        assert_eq!(res.glued(), vec![vec!["b", "c"]]);
        assert!(is_monotone(&res.quotient, &fixtures::tri(), &res.relation).unwrap().holds);
    }

    #[test]
    fn antisymmetric_closure_of_extended_example_needs_several_rounds() {
        let rel = fixtures::ex7_extended();
        let res = antisymmetric_closure(&rel).unwrap();
        let gluing_rounds = res
            .trace
            .iter()
            .filter(|t| t.step == Step::LA && !t.identity)
            .count();
        assert_eq!(gluing_rounds, 3, "trace: {:?}", res.trace);
        let mut glued = res.glued();
        glued.sort();
        assert_eq!(glued, [["c", "x"], ["c'", "x'"], ["d1", "d2"], ["d1'", "d2'"]]);
        assert!(is_r_relation(&res.relation));
        assert!(check_axiom(&res.relation, Axiom::Antisym).holds);
        assert!(is_monotone(&res.quotient, &rel, &res.relation).unwrap().holds);
    }

    #[test]
    fn antisymmetric_closure_rejects_non_r3_input() {
        let ab = Carrier::new(["a", "b"]).unwrap();
        let rel = TernaryRelation::from_labels(ab, [["a", "b", "a"]], false).unwrap();
        assert!(matches!(
            antisymmetric_closure(&rel),
            Err(Error::NotRRelation { .. })
        ));
    }

    #[test]
    fn factor_through_quotient() {
        let tri = fixtures::tri();
        let res = antisym_step(&tri);
        let point = Carrier::new(["*"]).unwrap();
        let target = bottom_relation(&point);
        let constant = RelMap::new(tri.carrier().clone(), point, vec![0; 3]).unwrap();
        let g = res.factor(&constant, &target).unwrap();
        assert_eq!(res.quotient.then(&g).unwrap(), constant);

        // the identity of TRI does not factor: b and c are glued
        assert!(res.factor(&RelMap::identity(tri.carrier()), &tri).is_none());
    }
}
