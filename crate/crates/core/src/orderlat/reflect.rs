use super::{betweenness_from_lattice, recover_order, FiniteLattice};
use crate::closures::{antisymmetric_closure, ClosureResult};
use crate::error::{Error, Result};
use crate::relation::RelMap;
use crate::report::CheckReport;

/// A distributive quotient of a lattice together with the quotient map.
#[derive(Debug, Clone)]
pub struct Reflection {
    pub lattice: FiniteLattice,
    pub map: RelMap,
    pub closure: ClosureResult,
}

/// Antisymmetrises the betweenness of `l` and reads the order back off the
/// quotient, oriented by the image of the top element.
pub fn distributive_reflection(l: &FiniteLattice) -> Result<Reflection> {
    let rel = betweenness_from_lattice(l);
    let closure = antisymmetric_closure(&rel)?;
    let top = closure.quotient.apply(l.top());
    let beta = closure.relation.carrier().label(top).to_string();
    let poset = recover_order(&closure.relation, &beta)
        .map_err(|e| Error::Internal(format!("order recovery on the reflected lattice: {e}")))?;
    let lattice = FiniteLattice::from_poset(poset)
        .map_err(|e| Error::Internal(format!("reflected order is not a lattice: {e}")))?;
    let map = closure.quotient.clone();
    let hom = lattice_hom_report(l, &lattice, &map)?;
    if !hom.holds {
        return Err(Error::Internal(format!(
            "quotient map is not a lattice homomorphism at {:?}",
            hom.witnesses[0]
        )));
    }
    Ok(Reflection {
        lattice,
        map,
        closure,
    })
}

/// Checks that `f` preserves binary meets and joins and both bounds, which
/// for finite lattices covers every meet and join.
///
/// Witnesses: `["meet", x, y]`, `["join", x, y]`, `["bottom"]`, `["top"]`.
pub fn lattice_hom_report(src: &FiniteLattice, tgt: &FiniteLattice, f: &RelMap) -> Result<CheckReport> {
    src.carrier().check_same(f.source(), "map source")?;
    tgt.carrier().check_same(f.target(), "map target")?;
    let n = src.len();
    let mut witnesses = Vec::new();
    if f.apply(src.bottom()) != tgt.bottom() {
        witnesses.push(vec!["bottom".to_string()]);
    }
    if f.apply(src.top()) != tgt.top() {
        witnesses.push(vec!["top".to_string()]);
    }
    for x in 0..n {
        for y in x + 1..n {
            let (fx, fy) = (f.apply(x), f.apply(y));
            if f.apply(src.meet(x, y)) != tgt.meet(fx, fy) {
                witnesses.push(vec!["meet".into(), src.label(x).into(), src.label(y).into()]);
            }
            if f.apply(src.join(x, y)) != tgt.join(fx, fy) {
                witnesses.push(vec!["join".into(), src.label(x).into(), src.label(y).into()]);
            }
        }
    }
    Ok(CheckReport::from_witnesses(witnesses))
}
