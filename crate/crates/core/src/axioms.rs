//! Deciding the betweenness axioms by exhaustive scans.

use fixedbitset::FixedBitSet;

use crate::relation::TernaryRelation;
use crate::report::{Axiom, AxiomReport};

/// Decides `axiom` on `rel`, collecting every violation.
pub fn check_axiom(rel: &TernaryRelation, axiom: Axiom) -> AxiomReport {
    let mut witnesses = Vec::new();
    scan(rel, axiom, &mut |w| {
        witnesses.push(w.iter().map(|&i| rel.carrier().label(i).to_string()).collect());
        true
    });
    AxiomReport::new(axiom, witnesses)
}

/// Decides `axiom`, stopping at the first violation.
pub fn holds(rel: &TernaryRelation, axiom: Axiom) -> bool {
    let mut ok = true;
    scan(rel, axiom, &mut |_| {
        ok = false;
        false
    });
    ok
}

/// R1 ∧ R2 ∧ R3 ∧ R4.
pub fn is_r_relation(rel: &TernaryRelation) -> bool {
    Axiom::R.iter().all(|&a| holds(rel, a))
}

/// The R-axioms that fail on `rel`.
pub fn failed_r_axioms(rel: &TernaryRelation) -> Vec<Axiom> {
    Axiom::R.into_iter().filter(|&a| !holds(rel, a)).collect()
}

/// Full reports for R1–R4.
pub fn r_reports(rel: &TernaryRelation) -> Vec<AxiomReport> {
    Axiom::R.iter().map(|&a| check_axiom(rel, a)).collect()
}

/// Feeds each violation to `emit`; scanning stops when `emit` returns `false`.
fn scan(rel: &TernaryRelation, axiom: Axiom, emit: &mut dyn FnMut(&[usize]) -> bool) {
    let n = rel.size();
    match axiom {
        Axiom::R1 => {
            for a in 0..n {
                for b in 0..n {
                    if !rel.contains(a, b, b) && !emit(&[a, b, b]) {
                        return;
                    }
                }
            }
        }
        Axiom::R2 => {
            for (a, b, c) in rel.triples() {
                if !rel.contains(c, b, a) && !emit(&[a, b, c]) {
                    return;
                }
            }
        }
        Axiom::R3 => {
            for (a, b, c) in rel.triples() {
                if a == c && a != b && !emit(&[a, b, c]) {
                    return;
                }
            }
        }
        Axiom::R4 => scan_r4(rel, emit),
        Axiom::Antisym => {
            for (a, b, c) in rel.triples() {
                if b < c && rel.contains(a, c, b) && !emit(&[a, b, c]) {
                    return;
                }
            }
        }
        Axiom::Disj => {
            let intervals = rel.intervals();
            for a in 0..n {
                for b in 0..n {
                    for x in intervals[a][b].ones() {
                        for c in 0..n {
                            if !rel.contains(a, x, c) && !rel.contains(c, x, b) && !emit(&[a, b, c, x])
                            {
                                return;
                            }
                        }
                    }
                }
            }
        }
    }
}

/// `(a,b,c) ∧ (a,d,c) ∧ (b,x,d) ⇒ (a,x,c)`, i.e. every interval `[a,c]`
/// contains `[b,d]` whenever it contains `b` and `d`.
fn scan_r4(rel: &TernaryRelation, emit: &mut dyn FnMut(&[usize]) -> bool) {
    let n = rel.size();
    let intervals = rel.intervals();
    for a in 0..n {
        for c in 0..n {
            let inside = &intervals[a][c];
            let mut reached = FixedBitSet::with_capacity(n);
            for b in inside.ones() {
                for d in inside.ones() {
                    reached.union_with(&intervals[b][d]);
                }
            }
            reached.difference_with(inside);
            for x in reached.ones() {
                let (b, d) = inside
                    .ones()
                    .flat_map(|b| inside.ones().map(move |d| (b, d)))
                    .find(|&(b, d)| intervals[b][d].contains(x))
                    .expect("x was reached through some pair");
                if !emit(&[a, x, c, b, d]) {
                    return;
                }
            }
        }
    }
}
