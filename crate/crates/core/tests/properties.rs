use std::collections::HashSet;

use proptest::prelude::*;

use ds_core::catalog::parse_and_make;
use ds_core::invariants;
use ds_core::iso;
use ds_core::subgroups::{naive_subgroup_sets, Lattice};
use ds_core::table::Bitset;
use ds_core::{PermGroup, Permutation};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// A subgroup of S_n given by one to three random generators.
fn group(max_degree: usize) -> impl Strategy<Value = PermGroup> {
    (3..=max_degree).prop_flat_map(|n| {
        prop::collection::vec(perm(n), 1..=3).prop_map(move |gens| PermGroup::new(n, gens).unwrap())
    })
}

fn group_with_max_order(max_degree: usize, max_order: u64) -> impl Strategy<Value = PermGroup> {
    group(max_degree).prop_filter("order cap", move |g| g.order() <= max_order)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chain_order_matches_closure(g in group(7)) {
        prop_assert_eq!(g.order(), g.closure_order().unwrap());
    }

    #[test]
    fn chain_membership_matches_enumeration(g in group(6), x in perm(6)) {
        let elts: HashSet<Permutation> = g.elements().unwrap().into_iter().collect();
        if x.degree() == g.degree() {
            prop_assert_eq!(g.contains(&x).unwrap(), elts.contains(&x));
        }
        for e in &elts {
            prop_assert!(g.contains(e).unwrap());
        }
    }

    #[test]
    fn derived_subgroup_is_normal_with_abelian_quotient(g in group(7)) {
        let d = g.derived_subgroup();
        prop_assert!(d.is_subgroup_of(&g));
        for x in g.generators() {
            let conj = d.conjugate_by(x);
            prop_assert!(conj.same_elements(&d));
            for y in g.generators() {
                let c = x.inverse().compose(&y.inverse()).unwrap().compose(x).unwrap().compose(y).unwrap();
                prop_assert!(d.contains(&c).unwrap());
            }
        }
    }

    #[test]
    fn lattice_matches_naive_closure(g in group_with_max_order(6, 200)) {
        let l = Lattice::new(&g).unwrap();
        let ours: HashSet<Bitset> = l.all_subgroups().iter().map(|r| r.elements().clone()).collect();
        prop_assert_eq!(ours.len(), l.subgroup_count());
        prop_assert_eq!(ours, naive_subgroup_sets(&g).unwrap());
    }

    #[test]
    fn class_representatives_suffice(g in group_with_max_order(6, 500)) {
        let l = Lattice::new(&g).unwrap();
        let d = invariants::d_from_lattice(&l).unwrap().value;
        prop_assert_eq!(d, invariants::d_from_all_subgroups(&l).unwrap().value);
        let gr = invariants::gr_from_lattice(&l);
        prop_assert_eq!(gr, invariants::gr_from_all_subgroups(&l));
        prop_assert!(gr >= d as u64);
        prop_assert_eq!(d == 1, g.is_abelian());
    }

    #[test]
    fn d_is_monotone_under_subgroups(g in group_with_max_order(6, 200), pick in any::<prop::sample::Index>()) {
        let l = Lattice::new(&g).unwrap();
        let subs = l.all_subgroups();
        let h = l.record_group(&subs[pick.index(subs.len())]);
        let dh = invariants::d_invariant(&h).unwrap().value;
        let dg = invariants::d_from_lattice(&l).unwrap().value;
        prop_assert!(dh <= dg);
    }

    #[test]
    fn conjugate_copies_are_isomorphic(g in group_with_max_order(6, 120), x in perm(6)) {
        if x.degree() == g.degree() {
            let h = g.conjugate_by(&x);
            prop_assert!(iso::is_isomorphic(&g, &h).unwrap());
            let pairs = iso::find_isomorphism(&g, &h).unwrap().unwrap();
            let images: Vec<Permutation> = pairs.iter().map(|p| p.1.clone()).collect();
            prop_assert_eq!(h.subgroup(images).order(), h.order());
            for (a, b) in &pairs {
                prop_assert_eq!(a.order(), b.order());
            }
        }
    }
}

#[test]
fn isomorphism_ground_truth() {
    for (a, b, truth) in ds_core::suite::iso_ground_truth() {
        let (ga, gb) = (parse_and_make(&a).unwrap(), parse_and_make(&b).unwrap());
        assert!(ga.order() <= 64);
        assert_eq!(iso::is_isomorphic(&ga, &gb).unwrap(), truth, "{a} vs {b}");
        assert_eq!(iso::is_isomorphic(&gb, &ga).unwrap(), truth, "{b} vs {a}");
    }
}

#[test]
fn cyclic_products_follow_gcd_rule() {
    for m in 1..=8u64 {
        for n in 1..=8u64 {
            let prod = parse_and_make(&format!("prod(C{m},C{n})")).unwrap();
            let cyc = parse_and_make(&format!("C{}", m * n)).unwrap();
            let coprime = (2..=m.min(n)).all(|k| m % k != 0 || n % k != 0);
            assert_eq!(
                iso::is_isomorphic(&prod, &cyc).unwrap(),
                coprime,
                "C{m} x C{n}"
            );
        }
    }
}

#[test]
fn catalog_chain_orders_up_to_2000() {
    for spec in ds_core::catalog::standard_catalog("data") {
        if let Some(order) = spec.expected_order().filter(|&o| o <= 2000) {
            let g = ds_core::make(&spec).unwrap();
            assert_eq!(g.order(), order, "{spec}");
            assert_eq!(g.closure_order().unwrap(), order, "{spec}");
        }
    }
}

#[test]
fn known_invariant_values() {
    let cases = [
        ("S3", 2, 2),
        ("S4", 5, 10),
        ("S5", 7, 43),
        ("A4", 2, 2),
        ("D8", 2, 2),
        ("PSL2_7", 7, 87),
        ("prod(A5,C7)", 5, 23),
        ("frob(7,3)", 2, 2),
    ];
    for (expr, d, gr) in cases {
        let g = parse_and_make(expr).unwrap();
        assert_eq!(invariants::d_invariant(&g).unwrap().value, d, "{expr}");
        assert_eq!(invariants::gr_invariant(&g).unwrap(), gr, "{expr}");
    }
}
