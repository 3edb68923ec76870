//! Finite R-structures as a Fraïssé class: strong embeddings, isomorphism
//! types, joint embedding, amalgamation, and finite approximations of the
//! limit.

mod chain;

pub use chain::{
    audit_extension_property, check_partial_homogeneity, fraisse_chain, one_point_extensions,
    AuditReport, ChainReport, HomogeneityFailure, HomogeneityReport, Request,
};

use std::collections::HashSet;

use serde::Serialize;

use crate::axioms;
use crate::closures::r_closure;
use crate::error::{Error, Result};
use crate::orderlat::for_each_permutation;
use crate::relation::{bottom_relation, Carrier, RelMap, TernaryRelation};

/// Largest carrier accepted by [`canonical_form`].
pub const CANONICAL_LIMIT: usize = 8;

/// An injective map that preserves and reflects every triple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrongEmbedding {
    map: RelMap,
}

impl StrongEmbedding {
    pub fn new(map: RelMap, source: &TernaryRelation, target: &TernaryRelation) -> Result<Self> {
        source.carrier().check_same(map.source(), "embedding source")?;
        target.carrier().check_same(map.target(), "embedding target")?;
        if !map.is_injective() {
            return Err(Error::NotStrongEmbedding("map is not injective".into()));
        }
        if let Some(bad) = strongness_defect(map.assignment(), source, target) {
            return Err(Error::NotStrongEmbedding(format!(
                "triple ({}) is not matched",
                bad.iter().map(|&i| source.carrier().label(i)).collect::<Vec<_>>().join(",")
            )));
        }
        Ok(StrongEmbedding { map })
    }

    pub fn map(&self) -> &RelMap {
        &self.map
    }

    pub fn into_map(self) -> RelMap {
        self.map
    }
}

impl Serialize for StrongEmbedding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.map.label_map().serialize(s)
    }
}

fn strongness_defect(f: &[usize], source: &TernaryRelation, target: &TernaryRelation) -> Option<[usize; 3]> {
    let n = source.size();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if source.contains(a, b, c) != target.contains(f[a], f[b], f[c]) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

fn require_r(rel: &TernaryRelation) -> Result<()> {
    let failed = axioms::failed_r_axioms(rel);
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::NotRRelation { failed })
    }
}

/// Backtracking over injective assignments of `u` into `v`, with some points
/// optionally pinned. `visit` returns `false` to stop.
pub(crate) fn search_embeddings(
    u: &TernaryRelation,
    v: &TernaryRelation,
    pinned: &[Option<usize>],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    fn consistent(u: &TernaryRelation, v: &TernaryRelation, f: &[usize], i: usize) -> bool {
        for a in 0..=i {
            for b in 0..=i {
                let checks = [(i, a, b), (a, i, b), (a, b, i)];
                if checks
                    .iter()
                    .any(|&(x, y, z)| u.contains(x, y, z) != v.contains(f[x], f[y], f[z]))
                {
                    return false;
                }
            }
        }
        true
    }

    fn go(
        u: &TernaryRelation,
        v: &TernaryRelation,
        pinned: &[Option<usize>],
        f: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let i = f.len();
        if i == u.size() {
            return visit(f);
        }
        let candidates: Vec<usize> = match pinned.get(i).copied().flatten() {
            Some(t) => vec![t],
            None => (0..v.size()).collect(),
        };
        for t in candidates {
            if used[t] {
                continue;
            }
            f.push(t);
            used[t] = true;
            let keep_going = !consistent(u, v, f, i) || go(u, v, pinned, f, used, visit);
            used[t] = false;
            f.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }

    if u.size() > v.size() {
        return;
    }
    let mut used = vec![false; v.size()];
    go(u, v, pinned, &mut Vec::with_capacity(u.size()), &mut used, visit);
}

/// Every strong embedding of `u` into `v`, in lexicographic order of assignments.
pub fn find_embeddings(u: &TernaryRelation, v: &TernaryRelation) -> Vec<StrongEmbedding> {
    let mut out = Vec::new();
    search_embeddings(u, v, &[], &mut |f| {
        out.push(StrongEmbedding {
            map: RelMap::new(u.carrier().clone(), v.carrier().clone(), f.to_vec())
                .expect("assignment stays inside the target"),
        });
        true
    });
    out
}

/// The first strong embedding of `u` into `v`, if any.
pub fn find_embedding(u: &TernaryRelation, v: &TernaryRelation) -> Option<StrongEmbedding> {
    let mut found = None;
    search_embeddings(u, v, &[], &mut |f| {
        found = Some(f.to_vec());
        false
    });
    found.map(|f| StrongEmbedding {
        map: RelMap::new(u.carrier().clone(), v.carrier().clone(), f).expect("inside target"),
    })
}

/// The isomorphic copy on labels `0..n` whose triple bit-string (in
/// lexicographic triple order) is least.
pub fn canonical_form(rel: &TernaryRelation) -> Result<TernaryRelation> {
    let n = rel.size();
    if n > CANONICAL_LIMIT {
        return Err(Error::CarrierTooLarge {
            size: n,
            limit: CANONICAL_LIMIT,
        });
    }
    let words = (n * n * n).div_ceil(64).max(1);
    let triples: Vec<_> = rel.triples().collect();
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    let mut key = vec![0u64; words];
    for_each_permutation(n, &mut |perm| {
        key.iter_mut().for_each(|w| *w = 0);
        for &(a, b, c) in &triples {
            let t = (perm[a] * n + perm[b]) * n + perm[c];
            // earlier triples occupy more significant bits
            key[t / 64] |= 1u64 << (63 - t % 64);
        }
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key.clone(), perm.to_vec()));
        }
    });
    let perm = best.map(|(_, p)| p).unwrap_or_default();
    Ok(TernaryRelation::from_triples(
        Carrier::numbered(n),
        triples.iter().map(|&(a, b, c)| (perm[a], perm[b], perm[c])),
    ))
}

pub fn is_isomorphic(a: &TernaryRelation, b: &TernaryRelation) -> Result<bool> {
    if a.size() != b.size() || a.len() != b.len() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// `base` with primes appended until it avoids `taken`.
pub(crate) fn fresh_label(base: &str, taken: &HashSet<String>) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// A structure containing two others, with the two strong embeddings.
#[derive(Debug, Clone, Serialize)]
pub struct JointEmbedding {
    pub result: TernaryRelation,
    pub e1: StrongEmbedding,
    pub e2: StrongEmbedding,
}

/// Disjoint union with only the forced triples between the two parts.
/// Labels of `v` that clash with `u` are primed.
pub fn jep(u: &TernaryRelation, v: &TernaryRelation) -> Result<JointEmbedding> {
    require_r(u)?;
    require_r(v)?;
    let mut taken: HashSet<String> = u.carrier().iter().map(String::from).collect();
    let mut v_labels = Vec::with_capacity(v.size());
    for l in v.carrier().iter() {
        let name = fresh_label(l, &taken);
        taken.insert(name.clone());
        v_labels.push(name);
    }
    let carrier = Carrier::new(u.carrier().iter().map(String::from).chain(v_labels.iter().cloned()))?;
    let e1 = RelMap::inclusion(u.carrier(), &carrier)?;
    let e2 = RelMap::new(
        v.carrier().clone(),
        carrier.clone(),
        v_labels.iter().map(|l| carrier.require(l)).collect::<Result<_>>()?,
    )?;
    let mut result = bottom_relation(&carrier);
    for t in u.triples() {
        let (a, b, c) = e1.image(t);
        result.insert(a, b, c);
    }
    for t in v.triples() {
        let (a, b, c) = e2.image(t);
        result.insert(a, b, c);
    }
    require_r(&result).map_err(|e| Error::Internal(format!("disjoint union: {e}")))?;
    Ok(JointEmbedding {
        e1: StrongEmbedding::new(e1, u, &result)?,
        e2: StrongEmbedding::new(e2, v, &result)?,
        result,
    })
}

/// The outcome of amalgamating `B1` and `B2` over `A`.
#[derive(Debug, Clone, Serialize)]
pub struct Amalgam {
    pub result: TernaryRelation,
    pub g1: StrongEmbedding,
    pub g2: StrongEmbedding,
    /// Whether the free amalgam failed the axioms and had to be closed.
    pub closure_needed: bool,
}

/// Free amalgam of `b1` and `b2` over `a`.
///
/// The carrier is `b1` together with the points of `b2` outside the image of
/// `f2` (primed when their labels clash). Triples are the images of both
/// sides plus `⊥`. Should that fail the axioms, the R-closure is taken and
/// both legs must stay strong, otherwise the amalgamation fails.
pub fn amalgamate(
    a: &TernaryRelation,
    b1: &TernaryRelation,
    b2: &TernaryRelation,
    f1: &RelMap,
    f2: &RelMap,
) -> Result<Amalgam> {
    for rel in [a, b1, b2] {
        require_r(rel)?;
    }
    StrongEmbedding::new(f1.clone(), a, b1)?;
    StrongEmbedding::new(f2.clone(), a, b2)?;

    let mut from_a = vec![None; b2.size()];
    for x in 0..a.size() {
        from_a[f2.apply(x)] = Some(f1.apply(x));
    }
    let mut taken: HashSet<String> = b1.carrier().iter().map(String::from).collect();
    let mut fresh = vec![String::new(); b2.size()];
    for (y, label) in b2.carrier().iter().enumerate() {
        if from_a[y].is_none() {
            fresh[y] = fresh_label(label, &taken);
            taken.insert(fresh[y].clone());
        }
    }
    let carrier = Carrier::new(taken.iter().cloned())?;
    let g1 = RelMap::inclusion(b1.carrier(), &carrier)?;
    let g2_assignment = (0..b2.size())
        .map(|y| match from_a[y] {
            Some(x) => Ok(g1.apply(x)),
            None => carrier.require(&fresh[y]),
        })
        .collect::<Result<Vec<_>>>()?;
    let g2 = RelMap::new(b2.carrier().clone(), carrier.clone(), g2_assignment)?;

    let mut result = bottom_relation(&carrier);
    for t in b1.triples() {
        let (x, y, z) = g1.image(t);
        result.insert(x, y, z);
    }
    for t in b2.triples() {
        let (x, y, z) = g2.image(t);
        result.insert(x, y, z);
    }

    let (result, g1, g2, closure_needed) = if axioms::is_r_relation(&result) {
        (result, g1, g2, false)
    } else {
        let closed = r_closure(&result);
        let g1 = g1.then(&closed.quotient)?;
        let g2 = g2.then(&closed.quotient)?;
        (closed.relation, g1, g2, true)
    };
    let leg = |g: RelMap, b: &TernaryRelation, which: &str| {
        StrongEmbedding::new(g, b, &result)
            .map_err(|e| Error::AmalgamationFailure(format!("{which} after closure: {e}")))
    };
    let g1 = leg(g1, b1, "g1")?;
    let g2 = leg(g2, b2, "g2")?;
    let left = f1.then(g1.map())?;
    let right = f2.then(g2.map())?;
    if left != right {
        return Err(Error::AmalgamationFailure("g1∘f1 and g2∘f2 differ".into()));
    }
    Ok(Amalgam {
        result,
        g1,
        g2,
        closure_needed,
    })
}
