//! Named structures used across the test-suite, the CLI and the docs.

use crate::orderlat::FiniteLattice;
use crate::relation::{bottom_relation, Carrier, TernaryRelation};

fn with_bottom(elements: &[&str], triples: &[[&str; 3]]) -> TernaryRelation {
    let carrier = Carrier::new(elements.iter().copied()).expect("fixture labels are unique");
    let listed = TernaryRelation::from_labels(carrier.clone(), triples.iter().copied(), true)
        .expect("fixture triples use carrier labels");
    listed
        .union(&bottom_relation(&carrier))
        .expect("same carrier")
}

/// `{a,b,c}` with `⊥ ∪ sym{(a,b,c), (a,c,b)}`: an R-relation that is not antisymmetric.
pub fn tri() -> TernaryRelation {
    with_bottom(&["a", "b", "c"], &[["a", "b", "c"], ["a", "c", "b"]])
}

const EX7_TRIPLES: [[&str; 3]; 6] = [
    ["a", "b", "c"],
    ["a", "d1", "c"],
    ["b", "x", "d2"],
    ["y", "d1", "d2"],
    ["y", "d2", "d1"],
    ["a", "c", "x"],
];

/// The seven-point relation whose antisymmetrisation needs two gluing rounds.
///
/// The triple `(a,c,d2)` is left out: with it, the first antisymmetrisation
/// would also glue `c` to the merged `d`.
pub fn ex7() -> TernaryRelation {
    with_bottom(&["a", "b", "c", "x", "d1", "d2", "y"], &EX7_TRIPLES)
}

/// [`ex7`] after `d1` and `d2` are glued (the merged point keeps the label `d1`).
pub fn ex7_glued() -> TernaryRelation {
    with_bottom(
        &["a", "b", "c", "x", "d1", "y"],
        &[
            ["a", "b", "c"],
            ["a", "d1", "c"],
            ["b", "x", "d1"],
            ["a", "c", "x"],
        ],
    )
}

/// [`ex7`] joined with a primed copy that gets pulled into the gluing once `x`
/// and `c` are identified.
pub fn ex7_extended() -> TernaryRelation {
    let mut triples: Vec<[&str; 3]> = EX7_TRIPLES.to_vec();
    triples.extend([
        ["a'", "b'", "c'"],
        ["a'", "d1'", "c'"],
        ["b'", "x'", "d2'"],
        ["a'", "c'", "x'"],
        ["x", "d1'", "d2'"],
        ["c", "d2'", "d1'"],
    ]);
    with_bottom(
        &[
            "a", "b", "c", "x", "d1", "d2", "y", "a'", "b'", "c'", "x'", "d1'", "d2'",
        ],
        &triples,
    )
}

/// The chain `0 < 1 < 2`.
pub fn c3() -> FiniteLattice {
    FiniteLattice::from_pairs(["0", "1", "2"], [("0", "1"), ("1", "2")]).expect("chain")
}

/// The four-element Boolean lattice `bot < a, b < top`.
pub fn b4() -> FiniteLattice {
    FiniteLattice::from_pairs(
        ["bot", "a", "b", "top"],
        [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
    )
    .expect("B4")
}

/// The pentagon: `bot < a < c < top` and `bot < b < top`.
pub fn n5() -> FiniteLattice {
    FiniteLattice::from_pairs(
        ["bot", "a", "b", "c", "top"],
        [("bot", "a"), ("a", "c"), ("c", "top"), ("bot", "b"), ("b", "top")],
    )
    .expect("N5")
}

/// The diamond: three atoms `x, y, z` between `bot` and `top`.
pub fn m3() -> FiniteLattice {
    FiniteLattice::from_pairs(
        ["bot", "x", "y", "z", "top"],
        [
            ("bot", "x"),
            ("bot", "y"),
            ("bot", "z"),
            ("x", "top"),
            ("y", "top"),
            ("z", "top"),
        ],
    )
    .expect("M3")
}
