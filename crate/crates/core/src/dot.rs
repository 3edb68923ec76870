//! Graphviz export.

use std::fmt::Write;

use crate::error::Result;
use crate::orderlat::FinitePoset;
use crate::relation::TernaryRelation;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram, drawn bottom to top.
pub fn poset_dot(p: &FinitePoset) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
    for l in p.carrier().iter() {
        let _ = writeln!(out, "  {};", quote(l));
    }
    for (x, y) in p.covers() {
        let _ = writeln!(
            out,
            "  {} -> {} [arrowhead=none];",
            quote(p.carrier().label(x)),
            quote(p.carrier().label(y))
        );
    }
    out.push_str("}\n");
    out
}

/// The interval graph of a relation: an edge joins `x ≠ y` when nothing lies
/// strictly between them. With `pair = Some((a, b))` the members of `[a, b]`
/// are filled.
pub fn relation_dot(rel: &TernaryRelation, pair: Option<(&str, &str)>) -> Result<String> {
    let highlight = match pair {
        Some((a, b)) => {
            let (a, b) = (rel.carrier().require(a)?, rel.carrier().require(b)?);
            Some(rel.interval_set(a, b))
        }
        None => None,
    };
    let n = rel.size();
    let mut out = String::from("graph intervals {\n  node [shape=circle];\n");
    for x in 0..n {
        let label = quote(rel.carrier().label(x));
        match &highlight {
            Some(set) if set.contains(x) => {
                let _ = writeln!(out, "  {label} [style=filled, fillcolor=lightblue];");
            }
            _ => {
                let _ = writeln!(out, "  {label};");
            }
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if rel.interval_set(x, y).count_ones(..) == 2 {
                let _ = writeln!(
                    out,
                    "  {} -- {};",
                    quote(rel.carrier().label(x)),
                    quote(rel.carrier().label(y))
                );
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
