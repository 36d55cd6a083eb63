mod common;

use common::{arb_graph, arb_permutation, naive_hom};
use homlab::cfi::cfi_build;
use homlab::hom::{hom_count, hom_count_bruteforce, hom_count_td, sub_count_bruteforce};
use homlab::iso::are_isomorphic;
use homlab::spasm::sub_basis;
use homlab::treewidth::treewidth_exact;
use homlab::{disjoint_union, Graph};
use num_bigint::BigUint;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counters_agree_with_naive_enumeration(f in arb_graph(0..=5), g in arb_graph(0..=6)) {
        let expected = BigUint::from(naive_hom(&f, &g));
        prop_assert_eq!(hom_count_bruteforce(&f, &g).unwrap(), expected.clone());
        let (_, td) = treewidth_exact(&f).unwrap();
        prop_assert_eq!(hom_count_td(&f, &td, &g).unwrap(), expected.clone());
        prop_assert_eq!(hom_count(&f, &g).unwrap(), expected);
    }

    #[test]
    fn counts_ignore_target_labels(
        f in arb_graph(1..=4),
        (g, perm) in arb_graph(1..=6).prop_flat_map(|g| { let n = g.n(); (Just(g), arb_permutation(n)) }),
    ) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(hom_count(&f, &g).unwrap(), hom_count(&f, &h).unwrap());
        prop_assert_eq!(sub_count_bruteforce(&f, &g).unwrap(), sub_count_bruteforce(&f, &h).unwrap());
    }

    #[test]
    fn disjoint_union_target_adds_counts_for_connected_patterns(
        f in arb_graph(1..=4).prop_filter("connected", |f| f.is_connected()),
        a in arb_graph(1..=4),
        b in arb_graph(1..=4),
    ) {
        let (u, _) = disjoint_union(&[a.clone(), b.clone()]);
        prop_assert_eq!(naive_hom(&f, &u), naive_hom(&f, &a) + naive_hom(&f, &b));
        prop_assert_eq!(hom_count(&f, &u).unwrap(), BigUint::from(naive_hom(&f, &u)));
    }

    #[test]
    fn basis_reproduces_subgraph_counts(f in arb_graph(1..=4), g in arb_graph(0..=6)) {
        let b = sub_basis(&f).unwrap();
        let got = b.evaluate(&g).unwrap();
        let want = sub_count_bruteforce(&f, &g).unwrap();
        prop_assert_eq!(got, num_rational::BigRational::from_integer(want.into()));
    }
}

#[test]
fn untwisted_triangle_cfi_looks_like_two_triangles_to_c6() {
    let k3 = Graph::complete(3);
    let cfi = cfi_build(&k3, &[]).unwrap().graph;
    let two = disjoint_union(&[k3.clone(), k3]).0;
    assert!(are_isomorphic(&cfi, &two));
    let c6 = Graph::cycle(6);
    assert_eq!(
        hom_count(&c6, &cfi).unwrap(),
        BigUint::from(naive_hom(&c6, &two))
    );
    assert_eq!(naive_hom(&c6, &two), 132);
}
