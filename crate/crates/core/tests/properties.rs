mod common;

use posetrep_core::conditions::{check_d2bar, check_lmd, completely_representable, is_lattice, lattice_profile};
use posetrep_core::families;
use posetrep_core::filters::{complement_is_ideal, enumerate_filters, extend_to_filter, is_filter, FilterPolicy};
use posetrep_core::representation::{
    canonical_representation, decide_representable, distributive_envelope, point_filters, trivial_representation,
    verify_representation, DecisionMethod,
};
use posetrep_core::search::{canonical_code, enumerate_small_posets, find_counterexample, Predicate, DEFAULT_CAP};
use posetrep_core::spectrum::spectrum;
use posetrep_core::{Arity, Budget, ElementSet, Poset, Side, Signature};
use proptest::prelude::*;

/// Random order on `n` points: each `i < j` edge kept with its coin, then
/// closed transitively.
fn poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.35), n * (n - 1) / 2).prop_map(move |coins| {
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if coins[k] {
                        pairs.push((i, j));
                    }
                    k += 1;
                }
            }
            Poset::from_index_pairs(common::labels(n), &pairs).unwrap()
        })
    })
}

fn arity() -> impl Strategy<Value = Arity> {
    prop_oneof![(2usize..=9).prop_map(Arity::Finite), Just(Arity::All)]
}

fn signature() -> impl Strategy<Value = Signature> {
    (arity(), arity()).prop_map(|(a, b)| Signature::new(a, b))
}

fn decide(p: &Poset, sig: Signature) -> bool {
    decide_representable(p, sig, DecisionMethod::PerPair, Budget::default())
        .unwrap()
        .verdict
}

fn nonempty_subsets(p: &Poset) -> impl Iterator<Item = ElementSet> {
    common::subsets(p.all()).filter(|s| !s.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn extremum_matches_brute_and_dual(p in poset(7)) {
        let d = p.dual();
        for s in nonempty_subsets(&p) {
            let meet = p.extremum(s, Side::Meet).unwrap();
            prop_assert_eq!(meet, common::glb(&p, s));
            prop_assert_eq!(meet, d.extremum(s, Side::Join).unwrap());
            prop_assert_eq!(meet, p.extremum(p.minimal(s), Side::Meet).unwrap());
            let join = p.extremum(s, Side::Join).unwrap();
            prop_assert_eq!(join, common::lub(&p, s));
            prop_assert_eq!(join, p.extremum(p.maximal(s), Side::Join).unwrap());
        }
    }

    #[test]
    fn up_closure_is_a_closure(p in poset(8), bits in any::<u128>()) {
        let s = ElementSet::from_bits(bits) & p.all();
        let u = p.up_closure(s);
        prop_assert!(s.is_subset(u));
        prop_assert_eq!(p.up_closure(u), u);
        prop_assert!(p.is_up_set(u));
        prop_assert_eq!(p.down_closure(s), p.dual().up_closure(s));
    }

    #[test]
    fn is_filter_matches_definition(p in poset(6), sig in signature()) {
        for s in common::subsets(p.all()) {
            prop_assert_eq!(is_filter(&p, s, sig).is_ok(), common::is_filter_brute(&p, s, sig), "set {:?}", s);
        }
    }

    #[test]
    fn principal_up_sets_contain_their_meets(p in poset(7)) {
        for a in 0..p.len() {
            for s in common::subsets(p.up(a)).filter(|s| !s.is_empty()) {
                if let Some(m) = p.extremum(s, Side::Meet).unwrap() {
                    prop_assert!(p.up(a).contains(m));
                }
            }
        }
    }

    #[test]
    fn without_join_constraints_principal_up_sets_separate(p in poset(7), beta in arity()) {
        if p.antichain_constraints(beta.canonical(p.len()), Side::Join).is_empty() {
            let sig = Signature::new(Arity::All, beta);
            for a in 0..p.len() {
                prop_assert!(is_filter(&p, p.up(a), sig).is_ok());
            }
            prop_assert!(decide(&p, sig));
        }
    }

    #[test]
    fn enumeration_matches_brute_and_complements_are_ideals(p in poset(7), sig in signature()) {
        let listed = enumerate_filters(&p, sig, FilterPolicy::All, Budget::default()).unwrap();
        let mut members: Vec<ElementSet> = listed.iter().map(|f| f.members).collect();
        members.sort();
        let mut brute = common::all_filters_brute(&p, sig);
        brute.sort();
        prop_assert_eq!(&members, &brute);
        for f in &listed {
            prop_assert!(complement_is_ideal(&p, f));
        }
        let canonical = enumerate_filters(&p, sig, FilterPolicy::Canonical, Budget::default()).unwrap();
        for f in &canonical {
            prop_assert!(!f.members.is_empty());
            prop_assert!(p.bottom().is_none_or(|b| !f.members.contains(b)));
        }
    }

    #[test]
    fn extension_matches_enumeration(p in poset(8), sig in signature(), bits in any::<u128>(), forbid in any::<prop::sample::Index>()) {
        let seed = ElementSet::from_bits(bits) & p.all();
        let forbidden = if forbid.index(3) == 0 { None } else { Some(forbid.index(p.len())) };
        let found = extend_to_filter(&p, seed, forbidden, sig, Budget::default()).unwrap();
        let listed = enumerate_filters(&p, sig, FilterPolicy::All, Budget::default()).unwrap();
        let exists = listed
            .iter()
            .any(|f| seed.is_subset(f.members) && forbidden.is_none_or(|q| !f.members.contains(q)));
        prop_assert_eq!(found.is_some(), exists);
        if let Some(f) = found {
            prop_assert!(is_filter(&p, f.members, sig).is_ok());
            prop_assert!(seed.is_subset(f.members));
            prop_assert!(forbidden.is_none_or(|q| !f.members.contains(q)));
        }
    }

    #[test]
    fn decision_round_trip(p in poset(8), sig in signature()) {
        let report = decide_representable(&p, sig, DecisionMethod::PerPair, Budget::default()).unwrap();
        let h = canonical_representation(&p, sig, Budget::default()).unwrap();
        prop_assert_eq!(report.verdict, h.is_some());
        if let Some(h) = h {
            prop_assert!(verify_representation(&p, &h).unwrap().is_empty());
            for (_, f) in point_filters(&p, &h).unwrap() {
                prop_assert!(is_filter(&p, f.members, sig).is_ok());
            }
            let env = distributive_envelope(&p, &h, 40);
            if let Ok(env) = env {
                prop_assert!(is_lattice(&env.lattice));
                prop_assert!(lattice_profile(&env.lattice).lattice.unwrap().is_distributive);
            }
        } else {
            let listed = enumerate_filters(&p, sig, FilterPolicy::All, Budget::default()).unwrap();
            let (a, b) = report.failing_pairs().next().unwrap();
            prop_assert!(listed.iter().all(|f| !f.members.contains(a) || f.members.contains(b)));
        }
        let by_enumeration = decide_representable(&p, sig, DecisionMethod::Enumerate, Budget::default()).unwrap();
        prop_assert_eq!(report.verdict, by_enumeration.verdict);
    }

    #[test]
    fn duality_swaps_bounds(p in poset(8), sig in signature()) {
        prop_assert_eq!(decide(&p, sig), decide(&p.dual(), sig.swapped()));
    }

    #[test]
    fn trivial_representations_verify(p in poset(8)) {
        for side in [Side::Meet, Side::Join] {
            let h = trivial_representation(&p, side);
            prop_assert!(verify_representation(&p, &h).unwrap().is_empty());
        }
    }

    #[test]
    fn spectrum_is_downward_closed(p in poset(7)) {
        let s = spectrum(&p, Budget::default()).unwrap();
        prop_assert!(s.is_downward_closed());
        for (i, &a) in s.arities.iter().enumerate() {
            for (j, &b) in s.arities.iter().enumerate() {
                prop_assert_eq!(s.matrix[i][j], decide(&p, Signature::new(a, b)));
            }
        }
    }

    #[test]
    fn lmd_implies_d2bar(p in poset(8)) {
        let d2 = check_d2bar(&p);
        prop_assert_eq!(d2.holds, common::d2bar_brute(&p));
        prop_assert!(!check_lmd(&p).holds || d2.holds);
    }

    #[test]
    fn canonical_code_ignores_labels(p in poset(7), perm_seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let n = p.len();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
        let pairs: Vec<(usize, usize)> = p.order_pairs().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let q = Poset::from_index_pairs(common::labels(n), &pairs).unwrap();
        prop_assert_eq!(canonical_code(&p).unwrap(), canonical_code(&q).unwrap());
    }

    #[test]
    fn random_family_is_valid_and_deterministic(n in 0usize..40, prob in 0.0f64..1.0, seed in any::<u64>()) {
        let a = families::random(n, prob, seed).unwrap();
        prop_assert_eq!(a.len(), n);
        prop_assert_eq!(a, families::random(n, prob, seed).unwrap());
    }
}

#[test]
fn lattices_up_to_seven() {
    let s33 = Signature::finite(3, 3).unwrap();
    for n in 1..=7 {
        for p in enumerate_small_posets(n, DEFAULT_CAP).unwrap() {
            let Some(facts) = lattice_profile(&p).lattice else { continue };
            assert_eq!(facts.distributive_identity, facts.no_m3_n5);
            assert!(facts.irreducibles_by_covers_agree);
            let complete = completely_representable(&p, Budget::default()).unwrap();
            assert_eq!(facts.is_distributive, decide(&p, s33));
            assert_eq!(facts.is_distributive, complete.verdict);
            assert!(complete.lattice_check.unwrap().agrees);
        }
    }
}

#[test]
fn enumeration_counts_match_brute_force() {
    for n in 0..=4 {
        assert_eq!(enumerate_small_posets(n, DEFAULT_CAP).unwrap().len(), common::count_classes_brute(n));
    }
    let counts: Vec<usize> = (5..=7).map(|n| enumerate_small_posets(n, DEFAULT_CAP).unwrap().len()).collect();
    assert_eq!(counts, [63, 318, 2045]);
}

#[test]
fn enumerated_posets_are_pairwise_non_isomorphic() {
    for n in 1..=5 {
        let perms = common::permutations(n);
        let keys: Vec<Vec<Vec<(usize, usize)>>> = enumerate_small_posets(n, DEFAULT_CAP)
            .unwrap()
            .iter()
            .map(|p| {
                let mut all: Vec<Vec<(usize, usize)>> = perms
                    .iter()
                    .map(|perm| {
                        let mut r: Vec<(usize, usize)> = p.order_pairs().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
                        r.sort();
                        r
                    })
                    .collect();
                all.sort();
                all
            })
            .collect();
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                assert!(keys[i][0] != keys[j][0] && !keys[j].contains(&keys[i][0]), "n = {n}: {i} ~ {j}");
            }
        }
    }
}

#[test]
fn seven_element_enumeration_contains_the_d2_fixture() {
    let code = canonical_code(&families::d2poset()).unwrap();
    let found = enumerate_small_posets(7, DEFAULT_CAP)
        .unwrap()
        .iter()
        .any(|p| canonical_code(p).unwrap() == code);
    assert!(found);
}

#[test]
fn counterexamples_reverify() {
    let cases = [
        (Predicate::D2Bar, Predicate::Representable(Signature::finite(3, 3).unwrap())),
        (Predicate::IsLattice, Predicate::IsDistributive),
        (Predicate::Not(Box::new(Predicate::IsLattice)), Predicate::Lmd),
    ];
    for (holds, fails) in cases {
        let f = find_counterexample(&holds, &fails, 6, DEFAULT_CAP, u64::MAX).unwrap().unwrap();
        assert!(holds.evaluate(&f.poset, Budget::default()).unwrap());
        assert!(!fails.evaluate(&f.poset, Budget::default()).unwrap());
    }
}

#[test]
fn pn_has_no_small_joins_inside_x() {
    for n in 4..=7 {
        let p = families::pn(n).unwrap();
        let x: ElementSet = (0..n).map(|i| p.index_of(&format!("x{}", i + 1)).unwrap()).collect();
        for s in common::subsets(x).filter(|s| (2..=n - 2).contains(&s.len())) {
            assert_eq!(common::lub(&p, s), None, "pn({n})");
            let ubs: ElementSet = (0..p.len()).filter(|&u| s.iter().all(|a| p.le(a, u))).collect();
            assert!(p.is_antichain(ubs));
        }
    }
}

#[test]
fn fixtures_are_deterministic() {
    for name in families::Family::NAMES {
        let fam = families::Family::from_parts(name, Some(5), Some(0.4), Some(3)).unwrap();
        assert_eq!(families::generate(fam).unwrap(), families::generate(fam).unwrap());
    }
}

#[test]
fn fixture_claims_hold() {
    use families::Family;
    for fam in [Family::Express, Family::D2Poset, Family::PrimeIdeal, Family::Pn(4), Family::Pn(5)] {
        let p = families::generate(fam).unwrap();
        for claim in families::fixture_expectations(fam).unwrap() {
            assert!(families::check_claim(&p, &claim, Budget::default()).unwrap(), "{fam:?}: {claim:?}");
        }
    }
}
