use std::sync::Arc;

use gwakit_core::catalog::{catalog_ids, small_group};
use gwakit_core::gwa::{
    all_gwa_on_group, are_isomorphic_gwa, find_gwa_isomorphism, isomorphism_classes,
};
use gwakit_core::hom::{automorphism_images, check_hom, hom_images};
use gwakit_core::ideal::{
    all_ideals, commutator_ideal, ideal_closure, is_ideal, lower_central_series,
};
use gwakit_core::xmod::{is_xmod, xmod_by_ideal};
use gwakit_core::{ElementSet, Group, GroupWithAction};
use proptest::prelude::*;

fn catalog_group(k: usize) -> Group {
    let ids = catalog_ids();
    let (o, i) = ids[k % ids.len()];
    small_group(o, i).unwrap()
}

/// Groups small enough that enumerating every action is instant.
fn small_catalog_group(k: usize) -> Group {
    let ids: Vec<_> = catalog_ids().into_iter().filter(|&(o, _)| o <= 6).collect();
    let (o, i) = ids[k % ids.len()];
    small_group(o, i).unwrap()
}

fn gwa_at(k: usize, j: usize) -> GroupWithAction {
    let list = all_gwa_on_group(&small_catalog_group(k), 12).unwrap();
    list[j % list.len()].clone()
}

fn subset(universe: usize, bits: u64) -> ElementSet {
    ElementSet::from_elements(universe, (0..universe).filter(|&i| bits >> i & 1 == 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn catalog_tables_are_groups(k in 0usize..64, a in 0usize..8, b in 0usize..8, c in 0usize..8) {
        let g = catalog_group(k);
        let n = g.order();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.op(g.op(a, b), c), g.op(a, g.op(b, c)));
        prop_assert_eq!(g.op(a, 0), a);
        prop_assert_eq!(g.op(a, g.neg(a)), 0);
        prop_assert_eq!(g.conj(g.op(a, b), c), g.op(g.conj(a, c), g.conj(b, c)));
    }

    #[test]
    fn direct_product_is_a_group(k in 0usize..64, l in 0usize..64) {
        let (g, h) = (small_catalog_group(k), small_catalog_group(l));
        let p = Group::direct_product(&g, &h);
        prop_assert_eq!(p.order(), g.order() * h.order());
        prop_assert!(p.verify().is_ok());
        prop_assert_eq!(p.is_abelian(), g.is_abelian() && h.is_abelian());
    }

    #[test]
    fn homomorphisms_compose_and_have_normal_kernels(k in 0usize..64, l in 0usize..64, m in 0usize..64, i in 0usize..1000, j in 0usize..1000) {
        let (a, b, c) = (small_catalog_group(k), small_catalog_group(l), small_catalog_group(m));
        let ab = hom_images(&a, &b);
        let bc = hom_images(&b, &c);
        let f = &ab[i % ab.len()];
        let g = &bc[j % bc.len()];
        let fg: Vec<usize> = f.iter().map(|&x| g[x]).collect();
        prop_assert!(check_hom(&a, &c, &fg).is_ok());
        let kernel = ElementSet::from_elements(a.order(), a.elements().filter(|&x| f[x] == 0));
        prop_assert!(a.is_normal(&kernel));
    }

    #[test]
    fn automorphisms_preserve_element_orders(k in 0usize..64) {
        let g = catalog_group(k);
        for f in automorphism_images(&g) {
            for x in g.elements() {
                prop_assert_eq!(g.element_order(x), g.element_order(f[x]));
            }
        }
    }

    #[test]
    fn enumerated_structures_satisfy_the_axioms(k in 0usize..64, j in 0usize..1000) {
        let g = gwa_at(k, j);
        prop_assert!(g.verify().is_ok());
    }

    #[test]
    fn relabelled_structure_is_isomorphic(k in 0usize..64, j in 0usize..1000, a in 0usize..1000) {
        let g = gwa_at(k, j);
        let auts = automorphism_images(g.group());
        let f = &auts[a % auts.len()];
        let h = GroupWithAction::from_flat(g.group_arc().clone(), g.transformed_table(f)).unwrap();
        let iso = find_gwa_isomorphism(&g, &h);
        prop_assert!(iso.is_some());
        prop_assert!(are_isomorphic_gwa(&h, &g));
    }

    #[test]
    fn isomorphism_classes_partition_the_list(k in 0usize..64) {
        let list = all_gwa_on_group(&small_catalog_group(k), 12).unwrap();
        let classes = isomorphism_classes(&list);
        let mut seen = vec![false; list.len()];
        for c in &classes {
            for &i in c {
                prop_assert!(!seen[i]);
                seen[i] = true;
                prop_assert!(are_isomorphic_gwa(&list[c[0]], &list[i]));
            }
        }
        prop_assert!(seen.into_iter().all(|s| s));
        for (x, c) in classes.iter().enumerate() {
            for d in &classes[x + 1..] {
                prop_assert!(!are_isomorphic_gwa(&list[c[0]], &list[d[0]]));
            }
        }
    }

    #[test]
    fn ideal_closure_is_a_closure(k in 0usize..64, j in 0usize..1000, s in any::<u64>(), t in any::<u64>()) {
        let g = gwa_at(k, j);
        let n = g.order();
        let small = subset(n, s & t);
        let big = subset(n, s);
        let a = ideal_closure(&small, &g);
        let b = ideal_closure(&big, &g);
        prop_assert!(is_ideal(&a.elements, &g));
        prop_assert!(small.is_subset(&a.elements));
        prop_assert!(a.elements.is_subset(&b.elements));
        prop_assert_eq!(ideal_closure(&a.elements, &g).elements, a.elements);
    }

    #[test]
    fn commutator_lies_in_both_ideals(k in 0usize..64, j in 0usize..1000, x in 0usize..100, y in 0usize..100) {
        let g = gwa_at(k, j);
        let ideals = all_ideals(&g);
        let a = &ideals[x % ideals.len()];
        let b = &ideals[y % ideals.len()];
        let c = commutator_ideal(a, b, &g).unwrap();
        prop_assert!(c.elements.is_subset(&a.elements));
        prop_assert!(c.elements.is_subset(&b.elements));
    }

    #[test]
    fn lower_central_series_descends(k in 0usize..64, j in 0usize..1000) {
        let g = gwa_at(k, j);
        let series = lower_central_series(&g);
        prop_assert!(series[0].elements.is_full());
        for w in series.windows(2) {
            prop_assert!(w[1].elements.is_subset(&w[0].elements));
        }
    }

    #[test]
    fn ideal_inclusions_are_crossed_modules(k in 0usize..64, j in 0usize..1000, x in 0usize..100) {
        let g = gwa_at(k, j);
        let ideals = all_ideals(&g);
        let x = xmod_by_ideal(&g, &ideals[x % ideals.len()]).unwrap();
        prop_assert!(is_xmod(&x).is_ok());
    }
}

#[test]
fn trivial_structure_is_shared_by_every_group() {
    for (o, i) in catalog_ids() {
        let g = Arc::new(small_group(o, i).unwrap());
        let list = all_gwa_on_group(&g, 12).unwrap();
        assert!(
            list.contains(&GroupWithAction::trivial(g.clone())),
            "{o}:{i}"
        );
    }
}
