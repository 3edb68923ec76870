use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{amalgamate, canonical_form, fresh_label, StrongEmbedding};
use crate::axioms;
use crate::error::{Error, Result};
use crate::relation::{bottom_relation, Carrier, RelMap, TernaryRelation};
use crate::rlattice::free_orbits;

/// Bound on extension sizes handled by the chain builder and the audit.
pub const EXTENSION_LIMIT: usize = 4;
/// Bounds for the partial-homogeneity scan.
pub const HOMOGENEITY_K_LIMIT: usize = 3;
pub const HOMOGENEITY_SIZE_LIMIT: usize = 12;

const NEW_POINT: &str = "*";

/// Every R-relation on `u`'s carrier plus one new point (labelled `*`,
/// primed if taken) that induces `u` on the old points.
pub fn one_point_extensions(u: &TernaryRelation) -> Result<Vec<TernaryRelation>> {
    let n = u.size();
    if n + 1 > EXTENSION_LIMIT {
        return Err(Error::CarrierTooLarge {
            size: n + 1,
            limit: EXTENSION_LIMIT,
        });
    }
    let taken: HashSet<String> = u.carrier().iter().map(String::from).collect();
    let star = fresh_label(NEW_POINT, &taken);
    let carrier = Carrier::new(u.carrier().iter().map(String::from).chain([star.clone()]))?;
    let new = carrier.require(&star)?;
    let old = RelMap::inclusion(u.carrier(), &carrier)?;

    let mut base = bottom_relation(&carrier);
    for t in u.triples() {
        let (a, b, c) = old.image(t);
        base.insert(a, b, c);
    }
    let orbits: Vec<_> = free_orbits(n + 1, false)
        .into_iter()
        .filter(|orbit| {
            let (a, b, c) = orbit[0];
            a == new || b == new || c == new
        })
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << orbits.len()) {
        let mut rel = base.clone();
        for (i, orbit) in orbits.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &(a, b, c) in orbit {
                    rel.insert(a, b, c);
                }
            }
        }
        if axioms::holds(&rel, crate::report::Axiom::R4) {
            out.push(rel);
        }
    }
    Ok(out)
}

/// An extension request: the substructure on `base` should extend inside
/// the structure to a copy of `extension`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Request {
    pub round: usize,
    pub base: Vec<String>,
    pub extension: TernaryRelation,
    pub canonical: TernaryRelation,
    /// The point of the structure realising the new point, once met.
    pub realised_by: Option<String>,
}

/// A point of `m` outside `base` that, sent to the new point, extends the
/// inclusion of `base` to an embedding of `ext`.
fn realise(m: &TernaryRelation, base: &[usize], ext: &TernaryRelation) -> Option<usize> {
    // ext carrier = base labels + one new label; map ext indices to m indices
    let new = ext
        .carrier()
        .iter()
        .position(|l| !base.iter().any(|&b| m.carrier().label(b) == l))?;
    let mut to_m: Vec<usize> = Vec::with_capacity(ext.size());
    for (i, l) in ext.carrier().iter().enumerate() {
        if i == new {
            to_m.push(usize::MAX);
        } else {
            to_m.push(m.carrier().index(l)?);
        }
    }
    let mut in_base = vec![false; m.size()];
    base.iter().for_each(|&b| in_base[b] = true);
    let k = ext.size();
    (0..m.size()).filter(|&p| !in_base[p]).find(|&p| {
        to_m[new] = p;
        (0..k).all(|a| {
            (0..k).all(|b| {
                [(new, a, b), (a, new, b), (a, b, new)]
                    .iter()
                    .all(|&(x, y, z)| ext.contains(x, y, z) == m.contains(to_m[x], to_m[y], to_m[z]))
            })
        })
    })
}

fn subsets_below(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&l: &usize| l + 1);
            for x in start..n {
                let mut t: Vec<usize> = s.clone();
                t.push(x);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// All requests `(U, V)` with `U ⊆ m` nonempty, `|U| < size_bound`, `V` a
/// one-point extension of the induced `U`.
fn requests(m: &TernaryRelation, size_bound: usize, round: usize) -> Result<Vec<(Vec<usize>, Request)>> {
    let mut out = Vec::new();
    for base in subsets_below(m.size(), size_bound.saturating_sub(1)) {
        if base.is_empty() {
            continue;
        }
        let u = m.restrict(&base);
        for ext in one_point_extensions(&u)? {
            let canonical = canonical_form(&ext)?;
            out.push((
                base.clone(),
                Request {
                    round,
                    base: u.carrier().labels().to_vec(),
                    extension: ext,
                    canonical,
                    realised_by: None,
                },
            ));
        }
    }
    Ok(out)
}

/// Finite stages towards the Fraïssé limit.
#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub stages: Vec<TernaryRelation>,
    /// `links[i]` embeds `stages[i]` into `stages[i + 1]`.
    pub links: Vec<StrongEmbedding>,
    pub satisfied_requests: Vec<Request>,
    pub pending_requests: Vec<Request>,
    /// Bases of the requests whose free amalgam broke R4 and was closed.
    pub closed_amalgams: Vec<Vec<String>>,
}

impl ChainReport {
    pub fn last(&self) -> &TernaryRelation {
        self.stages.last().expect("a chain has at least one stage")
    }
}

/// Grows `⊥₁` round by round. Each round lists every extension request of
/// the current stage (in an order shuffled by `seed`) and meets the unmet
/// ones by amalgamating a copy of the extension over its base.
pub fn fraisse_chain(size_bound: usize, rounds: usize, seed: u64) -> Result<ChainReport> {
    if size_bound > EXTENSION_LIMIT {
        return Err(Error::CarrierTooLarge {
            size: size_bound,
            limit: EXTENSION_LIMIT,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = bottom_relation(&Carrier::new(["p0"])?);
    let mut next_point = 1usize;
    let mut stages = vec![m.clone()];
    let mut links = Vec::new();
    let mut satisfied = Vec::new();
    let mut closed_amalgams = Vec::new();
    for round in 0..rounds {
        let mut queue = requests(&m, size_bound, round)?;
        queue.shuffle(&mut rng);
        let start = m.clone();
        for (_, mut req) in queue {
            let base: Vec<usize> = req
                .base
                .iter()
                .map(|l| m.carrier().require(l))
                .collect::<Result<_>>()?;
            if let Some(p) = realise(&m, &base, &req.extension) {
                req.realised_by = Some(m.carrier().label(p).to_string());
                satisfied.push(req);
                continue;
            }
            let taken: HashSet<String> = m.carrier().iter().map(String::from).collect();
            let mut label = format!("p{next_point}");
            while taken.contains(&label) {
                next_point += 1;
                label = format!("p{next_point}");
            }
            next_point += 1;
            let renamed: Vec<String> = req
                .extension
                .carrier()
                .iter()
                .map(|l| if req.base.iter().any(|b| b == l) { l.to_string() } else { label.clone() })
                .collect();
            let ext = req.extension.relabel(&renamed)?;
            let u = m.restrict(&base);
            let f1 = RelMap::inclusion(u.carrier(), m.carrier())?;
            let f2 = RelMap::inclusion(u.carrier(), ext.carrier())?;
            let am = amalgamate(&u, &m, &ext, &f1, &f2)?;
            if am.closure_needed {
                closed_amalgams.push(req.base.clone());
            }
            m = am.result;
            let base_now: Vec<usize> = req.base.iter().map(|l| m.carrier().require(l)).collect::<Result<_>>()?;
            let p = realise(&m, &base_now, &req.extension)
                .ok_or_else(|| Error::Internal("amalgam does not realise its request".into()))?;
            req.realised_by = Some(m.carrier().label(p).to_string());
            satisfied.push(req);
        }
        let link = StrongEmbedding::new(RelMap::inclusion(start.carrier(), m.carrier())?, &start, &m)?;
        links.push(link);
        stages.push(m.clone());
    }
    Ok(ChainReport {
        stages,
        links,
        satisfied_requests: satisfied,
        pending_requests: Vec::new(),
        closed_amalgams,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub k: usize,
    pub holds: bool,
    pub requests: usize,
    pub unmet: Vec<Request>,
}

/// For every nonempty `U ⊆ m` with `|U| < k` and every one-point extension
/// `V` of `U` with `|V| ≤ k`, asks whether `V` embeds over `U`.
pub fn audit_extension_property(m: &TernaryRelation, k: usize) -> Result<AuditReport> {
    if k > EXTENSION_LIMIT {
        return Err(Error::CarrierTooLarge {
            size: k,
            limit: EXTENSION_LIMIT,
        });
    }
    let all = requests(m, k, 0)?;
    let total = all.len();
    let unmet: Vec<Request> = all
        .into_iter()
        .filter(|(base, req)| realise(m, base, &req.extension).is_none())
        .map(|(_, req)| req)
        .collect();
    Ok(AuditReport {
        k,
        holds: unmet.is_empty(),
        requests: total,
        unmet,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomogeneityFailure {
    /// The partial isomorphism, as parallel tuples.
    pub domain: Vec<String>,
    pub image: Vec<String>,
    /// `"forth"`: `point` outside the domain has no partner; `"back"`: the
    /// same for a point outside the image.
    pub direction: &'static str,
    pub point: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomogeneityReport {
    pub k: usize,
    pub holds: bool,
    pub partial_isomorphisms: usize,
    pub failures: Vec<HomogeneityFailure>,
}

/// Triples among a tuple, as a bit-pattern over positions.
fn tuple_type(m: &TernaryRelation, t: &[usize]) -> u128 {
    let j = t.len();
    let mut key = 0u128;
    for p in 0..j {
        for q in 0..j {
            for r in 0..j {
                if m.contains(t[p], t[q], t[r]) {
                    key |= 1 << ((p * j + q) * j + r);
                }
            }
        }
    }
    key
}

fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            for x in 0..n {
                if !t.contains(&x) {
                    let mut s = t.clone();
                    s.push(x);
                    next.push(s);
                }
            }
        }
        out = next;
    }
    out
}

/// One back-and-forth step for every isomorphism between induced
/// substructures of size at most `k`.
///
/// Two tuples of one type form a partial isomorphism; it extends forth at
/// `x` iff some `y` gives `(v, y)` the type of `(u, x)`.
pub fn check_partial_homogeneity(m: &TernaryRelation, k: usize) -> Result<HomogeneityReport> {
    if k > HOMOGENEITY_K_LIMIT {
        return Err(Error::CarrierTooLarge {
            size: k,
            limit: HOMOGENEITY_K_LIMIT,
        });
    }
    if m.size() > HOMOGENEITY_SIZE_LIMIT {
        return Err(Error::CarrierTooLarge {
            size: m.size(),
            limit: HOMOGENEITY_SIZE_LIMIT,
        });
    }
    let n = m.size();
    let label = |i: usize| m.carrier().label(i).to_string();
    let names = |t: &[usize]| t.iter().map(|&i| label(i)).collect::<Vec<_>>();
    let mut failures = Vec::new();
    let mut count = 0;
    for j in 0..=k.min(n) {
        if j == n {
            break;
        }
        // type -> tuples; per tuple, the extension type reached by each outside point
        let mut by_type: BTreeMap<u128, Vec<(Vec<usize>, Vec<(usize, u128)>)>> = BTreeMap::new();
        for t in tuples(n, j) {
            let exts = (0..n)
                .filter(|x| !t.contains(x))
                .map(|x| {
                    let mut s = t.clone();
                    s.push(x);
                    (x, tuple_type(m, &s))
                })
                .collect();
            by_type.entry(tuple_type(m, &t)).or_default().push((t, exts));
        }
        for group in by_type.values() {
            for (u, u_ext) in group {
                let u_types: HashSet<u128> = u_ext.iter().map(|&(_, ty)| ty).collect();
                for (v, v_ext) in group {
                    count += 1;
                    let v_types: HashSet<u128> = v_ext.iter().map(|&(_, ty)| ty).collect();
                    for &(x, ty) in u_ext {
                        if !v_types.contains(&ty) {
                            failures.push(HomogeneityFailure {
                                domain: names(u),
                                image: names(v),
                                direction: "forth",
                                point: label(x),
                            });
                        }
                    }
                    for &(y, ty) in v_ext {
                        if !u_types.contains(&ty) {
                            failures.push(HomogeneityFailure {
                                domain: names(u),
                                image: names(v),
                                direction: "back",
                                point: label(y),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(HomogeneityReport {
        k,
        holds: failures.is_empty(),
        partial_isomorphisms: count,
        failures,
    })
}
