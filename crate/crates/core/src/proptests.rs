use crate::axioms::{holds, is_r_relation};
use crate::closures::{antisymmetric_closure, l12, l3, l4, r_closure};
use crate::fraisse::{canonical_form, is_isomorphic, jep, StrongEmbedding};
use crate::gen::{all_lattices, random_map, random_poset, random_r12, random_r_relation, shuffled_lattice};
use crate::io::RelationDoc;
use crate::orderlat::{
    betweenness_from_lattice, classify_direct, classify_via_betweenness, dm_completion, dm_embedding_report,
    recover_order, BoundWitness, FiniteLattice,
};
use crate::relation::is_monotone;
use crate::rlattice::{join, meet, pullback};
use crate::{Axiom, Carrier, TernaryRelation};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn r12(n: usize, seed: u64) -> TernaryRelation {
    let mut r = rng(seed);
    random_r12(&mut r, &Carrier::numbered(n), 0.3, seed.is_multiple_of(2))
}

fn r_rel(n: usize, seed: u64) -> TernaryRelation {
    random_r_relation(&mut rng(seed), &Carrier::numbered(n))
}

fn lattices() -> &'static [FiniteLattice] {
    static L: OnceLock<Vec<FiniteLattice>> = OnceLock::new();
    L.get_or_init(|| all_lattices(6))
}

fn lattice(idx: usize, seed: u64) -> FiniteLattice {
    let ls = lattices();
    shuffled_lattice(&mut rng(seed), &ls[idx % ls.len()], "u")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn l12_is_extensive_and_idempotent(n in 1usize..=4, seed: u64) {
        let rel = r12(n, seed);
        let once = l12(&rel);
        prop_assert!(rel.is_subset(&once));
        prop_assert_eq!(l12(&once), once);
    }

    #[test]
    fn l4_is_extensive_and_idempotent(n in 1usize..=4, seed: u64) {
        let rel = r12(n, seed);
        let once = l4(&rel);
        prop_assert!(rel.is_subset(&once));
        prop_assert!(holds(&once, Axiom::R4));
        prop_assert_eq!(l4(&once), once);
    }

    #[test]
    fn l3_result_is_minimal(n in 1usize..=4, seed: u64) {
        let rel = r12(n, seed);
        let res = l3(&rel);
        prop_assert!(holds(&res.relation, Axiom::R3));
        prop_assert!(is_monotone(&res.quotient, &rel, &res.relation).unwrap().holds);
    }

    #[test]
    fn r_closure_is_idempotent(n in 1usize..=4, seed: u64) {
        let rel = r12(n, seed);
        let once = r_closure(&rel);
        prop_assert!(is_r_relation(&once.relation));
        prop_assert!(is_monotone(&once.quotient, &rel, &once.relation).unwrap().holds);
        let twice = r_closure(&once.relation);
        prop_assert!(twice.quotient.is_identity());
        prop_assert_eq!(twice.relation, once.relation);
    }

    #[test]
    fn antisymmetric_closure_lands_in_class(n in 1usize..=4, seed: u64) {
        let rel = r_rel(n, seed);
        let res = antisymmetric_closure(&rel).unwrap();
        prop_assert!(is_r_relation(&res.relation));
        prop_assert!(holds(&res.relation, Axiom::Antisym));
        prop_assert!(is_monotone(&res.quotient, &rel, &res.relation).unwrap().holds);
    }

    #[test]
    fn meet_and_join_laws(n in 1usize..=4, s1: u64, s2: u64) {
        let (a, b) = (r_rel(n, s1), r_rel(n, s2));
        let ab = [a.clone(), b.clone()];
        let ba = [b.clone(), a.clone()];
        let j = join(&ab).unwrap();
        let m = meet(&ab).unwrap();
        prop_assert_eq!(&j, &join(&ba).unwrap());
        prop_assert_eq!(&m, &meet(&ba).unwrap());
        prop_assert_eq!(join(&[a.clone(), m]).unwrap(), a.clone());
        prop_assert_eq!(meet(&[a.clone(), j]).unwrap(), a);
    }

    #[test]
    fn pullback_composes_up_to_inclusion(nx in 1usize..=4, ny in 1usize..=4, nz in 1usize..=4, seed: u64) {
        let mut r = rng(seed);
        let (x, y, z) = (Carrier::numbered(nx), Carrier::numbered(ny), Carrier::numbered(nz));
        let rho = random_r_relation(&mut r, &z);
        let f = random_map(&mut r, &x, &y);
        let g = random_map(&mut r, &y, &z);
        let direct = pullback(&f.then(&g).unwrap(), &rho).unwrap();
        let stepwise = pullback(&f, &pullback(&g, &rho).unwrap()).unwrap();
        prop_assert!(stepwise.is_subset(&direct));
        if f.is_injective() {
            prop_assert_eq!(stepwise, direct);
        }
    }

    #[test]
    fn canonical_form_ignores_labels(n in 1usize..=5, seed: u64) {
        let rel = r_rel(n, seed);
        let mut names: Vec<String> = (0..n).map(|i| format!("z{i}")).collect();
        names.shuffle(&mut rng(seed ^ 1));
        let renamed = rel.relabel(&names).unwrap();
        prop_assert_eq!(canonical_form(&rel).unwrap(), canonical_form(&renamed).unwrap());
        prop_assert!(is_isomorphic(&rel, &renamed).unwrap());
    }

    #[test]
    fn lattice_betweenness_recovers_the_order(idx: usize, seed: u64) {
        let l = lattice(idx, seed);
        let rel = betweenness_from_lattice(&l);
        prop_assert!(is_r_relation(&rel));
        let back = recover_order(&rel, l.label(l.top())).unwrap();
        prop_assert_eq!(&back, l.poset());
    }

    #[test]
    fn classification_agrees(idx: usize, seed: u64) {
        let l = lattice(idx, seed);
        let rel = betweenness_from_lattice(&l);
        let w = BoundWitness::new(l.label(l.bottom()), l.label(l.top()));
        let via = classify_via_betweenness(&rel, &w).unwrap();
        prop_assert!(via.same_flags(&classify_direct(&l)));
    }

    #[test]
    fn dm_completion_embeds(n in 0usize..=7, p in 0.0f64..0.8, seed: u64) {
        let poset = random_poset(&mut rng(seed), n, p);
        let c = dm_completion(&poset).unwrap();
        prop_assert!(dm_embedding_report(&poset, &c).holds);
        prop_assert!(c.lattice.len() >= n);
    }

    #[test]
    fn jep_legs_are_strong(n in 1usize..=4, m in 1usize..=4, s1: u64, s2: u64) {
        let (u, v) = (r_rel(n, s1), r_rel(m, s2));
        let j = jep(&u, &v).unwrap();
        prop_assert!(is_r_relation(&j.result));
        prop_assert!(StrongEmbedding::new(j.e1.map().clone(), &u, &j.result).is_ok());
        prop_assert!(StrongEmbedding::new(j.e2.map().clone(), &v, &j.result).is_ok());
    }

    #[test]
    fn relation_documents_round_trip(n in 1usize..=5, seed: u64) {
        let rel = r_rel(n, seed);
        let text = serde_json::to_string(&RelationDoc::from_relation(&rel)).unwrap();
        let doc: RelationDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(doc.to_relation().unwrap(), rel);
    }
}
