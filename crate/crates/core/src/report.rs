//! Report types shared by the checkers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The betweenness axioms the checker can decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axiom {
    R1,
    R2,
    R3,
    R4,
    #[serde(rename = "ANTISYM")]
    Antisym,
    #[serde(rename = "DISJ")]
    Disj,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::R1,
        Axiom::R2,
        Axiom::R3,
        Axiom::R4,
        Axiom::Antisym,
        Axiom::Disj,
    ];

    /// The four axioms whose conjunction defines an R-relation.
    pub const R: [Axiom; 4] = [Axiom::R1, Axiom::R2, Axiom::R3, Axiom::R4];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::R1 => "R1",
            Axiom::R2 => "R2",
            Axiom::R3 => "R3",
            Axiom::R4 => "R4",
            Axiom::Antisym => "ANTISYM",
            Axiom::Disj => "DISJ",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown axiom `{s}` (expected one of R1, R2, R3, R4, ANTISYM, DISJ)"))
    }
}

/// Outcome of deciding one axiom, with every violation found.
///
/// Witness layout per axiom:
/// - `R1`: the missing triple `[a, b, b]`.
/// - `R2`: a present triple `[a, b, c]` whose mirror `[c, b, a]` is missing.
/// - `R3`: a present triple `[a, b, a]` with `a != b`.
/// - `R4`: `[a, x, c, b, d]`: premises `(a,b,c)`, `(a,d,c)`, `(b,x,d)` hold
///   and the conclusion `(a,x,c)` is missing. One witness per missing conclusion.
/// - `ANTISYM`: `[a, b, c]` with both `(a,b,c)` and `(a,c,b)` present, `b < c`.
/// - `DISJ`: `[a, b, c, x]` with `x` in `[a,b]` but neither `(a,x,c)` nor `(c,x,b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub holds: bool,
    pub witnesses: Vec<Vec<String>>,
}

impl AxiomReport {
    pub fn new(axiom: Axiom, witnesses: Vec<Vec<String>>) -> Self {
        AxiomReport {
            axiom,
            holds: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// A yes/no verdict together with the tuples that refute it.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CheckReport {
    pub holds: bool,
    pub witnesses: Vec<Vec<String>>,
}

impl CheckReport {
    pub fn from_witnesses(witnesses: Vec<Vec<String>>) -> Self {
        CheckReport {
            holds: witnesses.is_empty(),
            witnesses,
        }
    }

    pub fn pass() -> Self {
        CheckReport {
            holds: true,
            witnesses: Vec::new(),
        }
    }
}
