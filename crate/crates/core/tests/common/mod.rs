//! Independent oracles shared by the integration tests. Nothing here uses
//! union-find or the library's closure code.

#![allow(dead_code)]

use betweenness::orderlat::FiniteLattice;
use betweenness::TernaryRelation;

/// An equivalence as a boolean matrix.
pub type Equiv = Vec<Vec<bool>>;

fn identity(n: usize) -> Equiv {
    (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect()
}

/// Connected components of `items` under `linked`, as lists of indices.
fn components(count: usize, linked: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; count];
    let mut out = Vec::new();
    for start in 0..count {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            let cur = comp[i];
            for next in 0..count {
                if !seen[next] && linked(cur, next) {
                    seen[next] = true;
                    comp.push(next);
                }
            }
            i += 1;
        }
        out.push(comp);
    }
    out
}

/// The minimality equivalence, level by level: at each level the triples
/// `(r,s,t)` with `r ∼ t` qualify, consecutive triples of a chain must share
/// `∼`-related points, and two points become related when they occur in
/// triples of one chain.
pub fn sim_omega_literal(rel: &TernaryRelation) -> Equiv {
    let n = rel.size();
    let triples: Vec<[usize; 3]> = rel.triples().map(|(a, b, c)| [a, b, c]).collect();
    let mut eq = identity(n);
    loop {
        let q: Vec<[usize; 3]> = triples.iter().copied().filter(|t| eq[t[0]][t[2]]).collect();
        let comps = components(q.len(), |i, j| {
            q[i].iter().any(|&x| q[j].iter().any(|&y| eq[x][y]))
        });
        let mut next = eq.clone();
        for comp in &comps {
            let members: Vec<usize> = comp.iter().flat_map(|&i| q[i]).collect();
            for &a in &members {
                for &b in &members {
                    next[a][b] = true;
                }
            }
        }
        if next == eq {
            return eq;
        }
        eq = next;
    }
}

/// The antisymmetry equivalence, level by level: a witness is a pair of
/// triples `(m,x,y)`, `(m',u,v)` with `m ∼ m'`, `x ∼ v`, `y ∼ u`; witnesses
/// chain when their points are `∼`-related, and `a, b` become related when
/// both are `∼`-related to points of one chain.
pub fn sim_antisym_literal(rel: &TernaryRelation) -> Equiv {
    let n = rel.size();
    let triples: Vec<[usize; 3]> = rel.triples().map(|(a, b, c)| [a, b, c]).collect();
    let mut eq = identity(n);
    loop {
        let mut witnesses: Vec<[usize; 4]> = Vec::new();
        for s in &triples {
            for t in &triples {
                let ([m, x, y], [m2, u, v]) = (*s, *t);
                if x != y && eq[m][m2] && eq[x][v] && eq[y][u] {
                    witnesses.push([x, y, u, v]);
                }
            }
        }
        let comps = components(witnesses.len(), |i, j| {
            witnesses[i].iter().any(|&p| witnesses[j].iter().any(|&q| eq[p][q]))
        });
        let mut next = eq.clone();
        for comp in &comps {
            let points: Vec<usize> = comp.iter().flat_map(|&i| witnesses[i]).collect();
            for a in 0..n {
                if !points.iter().any(|&p| eq[a][p]) {
                    continue;
                }
                for b in 0..n {
                    if points.iter().any(|&p| eq[b][p]) {
                        next[a][b] = true;
                    }
                }
            }
        }
        if next == eq {
            return eq;
        }
        eq = next;
    }
}

/// All set partitions of `0..n` as class labels (restricted growth strings).
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max + 1 {
            cur.push(c);
            go(i + 1, n, cur, max.max(c), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        let mut cur = vec![0];
        go(1, n, &mut cur, 0, &mut out);
    }
    out
}

/// Whether class labels `cls` form a lattice congruence of `l`.
pub fn is_congruence(l: &FiniteLattice, cls: &[usize]) -> bool {
    let n = l.len();
    for x in 0..n {
        for y in 0..n {
            if cls[x] != cls[y] {
                continue;
            }
            for z in 0..n {
                if cls[l.meet(x, z)] != cls[l.meet(y, z)] || cls[l.join(x, z)] != cls[l.join(y, z)] {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether the quotient by a congruence is distributive.
pub fn quotient_distributive(l: &FiniteLattice, cls: &[usize]) -> bool {
    let n = l.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| cls[l.meet(x, l.join(y, z))] == cls[l.join(l.meet(x, y), l.meet(x, z))])
        })
    })
}

/// The finest congruence with a distributive quotient, by brute force over
/// all partitions. Returns class labels; panics if the finest one is not
/// below every other candidate (which would contradict lattice theory).
pub fn least_distributive_congruence(l: &FiniteLattice) -> Vec<usize> {
    let cands: Vec<Vec<usize>> = all_partitions(l.len())
        .into_iter()
        .filter(|p| is_congruence(l, p) && quotient_distributive(l, p))
        .collect();
    let refines = |p: &[usize], q: &[usize]| {
        (0..p.len()).all(|i| (0..p.len()).all(|j| p[i] != p[j] || q[i] == q[j]))
    };
    let least = cands
        .iter()
        .find(|p| cands.iter().all(|q| refines(p, q)))
        .expect("distributive congruences are closed under intersection");
    least.clone()
}

/// Whether a matrix equivalence and a block predicate agree on every pair.
pub fn same_partition(eq: &Equiv, same_block: impl Fn(usize, usize) -> bool) -> bool {
    let n = eq.len();
    (0..n).all(|a| (0..n).all(|b| eq[a][b] == same_block(a, b)))
}
