use posat::oracle::{min_percolating, SearchLimits};
use posat::percolation::{
    canonical_copy, percolating_family, percolation_closure, percolation_number, verify_schedule,
    PercolationSchedule, ScheduleFault,
};
use posat::poset::poset_classes;
use posat::saturation::{CheckConfig, ScanOrder};
use posat::{Embedding, Poset, SetFamily, SubsetMask};
use proptest::prelude::*;

fn closure_is_full(s: &PercolationSchedule) -> bool {
    percolation_closure(&s.initial, &s.poset, ScanOrder::BySize, &CheckConfig::default())
        .unwrap()
        .is_power_set()
}

#[test]
fn four_element_posets_percolate() {
    for poset in poset_classes(4) {
        let s = percolating_family(&poset, 11).unwrap();
        assert_eq!(s.initial.len(), percolation_number(&poset).unwrap());
        assert_eq!(verify_schedule(&s), Ok(()));
        assert_eq!(s.final_family(), SetFamily::power_set(11));
    }
}

#[test]
fn closure_of_initial_family_is_everything() {
    for p in 1..=3 {
        for poset in poset_classes(p) {
            let s = percolating_family(&poset, 3 * p as u32 - 1).unwrap();
            assert!(closure_is_full(&s));
        }
    }
    // The antichain is the cheapest p = 4 case to close directly.
    let s = percolating_family(&Poset::antichain(4), 11).unwrap();
    assert!(closure_is_full(&s));
}

#[test]
fn initial_family_is_fixed_apart_from_the_full_set() {
    for p in 1..=3 {
        for poset in poset_classes(p) {
            let n0 = 3 * p as u32 - 1;
            let strip = |n: u32| {
                let s = percolating_family(&poset, n).unwrap();
                s.initial.iter().filter(|&m| m != SubsetMask::full(n)).collect::<Vec<_>>()
            };
            let base = strip(n0);
            for n in n0 + 1..=n0 + 3 {
                assert_eq!(strip(n), base);
            }
        }
    }
}

#[test]
fn oracle_matches_formula_at_smallest_ground() {
    for p in 1..=3 {
        for poset in poset_classes(p) {
            let n = 3 * p as u32 - 1;
            let r = min_percolating(&poset, n, &SearchLimits::default()).unwrap();
            assert!(r.exact);
            assert_eq!(r.size, percolation_number(&poset).unwrap(), "{poset:?}");
            let s = percolating_family(&poset, n).unwrap();
            assert_eq!(s.initial.len(), r.size);
        }
    }
}

#[test]
fn dropping_a_step_breaks_replay() {
    let v2 = Poset::complete_multilayer(&[1, 2]).unwrap();
    let s = percolating_family(&v2, 8).unwrap();
    // Find a step whose set is used by a later witness, then drop it.
    let (i, victim) = s
        .steps
        .iter()
        .enumerate()
        .find(|(i, (set, _))| s.steps[i + 1..].iter().any(|(_, w)| w.contains(*set)))
        .map(|(i, (set, _))| (i, *set))
        .unwrap();
    let mut broken = s.clone();
    broken.steps.remove(i);
    match verify_schedule(&broken) {
        Err(ScheduleFault::Step { index, .. }) => assert!(broken.steps[index].1.contains(victim)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn foreign_witness_is_rejected() {
    let c2 = Poset::chain(2);
    let s = PercolationSchedule {
        poset: c2.clone(),
        ground: 2,
        initial: SetFamily::from_lists(2, &[vec![], vec![1]]).unwrap(),
        steps: vec![
            (SubsetMask::from_elements(&[2]), Embedding::new(vec![SubsetMask::from_elements(&[1]), SubsetMask::from_elements(&[2])])),
        ],
    };
    assert!(matches!(verify_schedule(&s), Err(ScheduleFault::Step { index: 0, .. })));
}

#[test]
fn canonical_copy_contains_its_points() {
    for p in 1..=4 {
        for poset in poset_classes(p) {
            let pts: Vec<u32> = (1..=p as u32).map(|i| 2 * i).collect();
            let c = canonical_copy(&poset, &pts).unwrap();
            for (j, s) in c.iter().enumerate() {
                assert!(s.contains(pts[j]));
            }
            assert!(Embedding::new(c).is_induced_copy_of(&poset));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn closure_ignores_order(
        n in 2u32..=4,
        masks in prop::collection::vec(0u64..16, 0..8),
        class in 0usize..8,
        seeds in prop::collection::vec(any::<u64>(), 5),
    ) {
        let family = SetFamily::from_masks(n, masks.into_iter().map(|m| SubsetMask(m & ((1 << n) - 1))));
        let classes: Vec<Poset> = (1..=3).flat_map(poset_classes).collect();
        let poset = &classes[class % classes.len()];
        let cfg = CheckConfig::default();
        let reference = percolation_closure(&family, poset, ScanOrder::Ascending, &cfg).unwrap();
        prop_assert!(family.iter().all(|s| reference.contains(s)));
        for seed in seeds {
            let other = percolation_closure(&family, poset, ScanOrder::Random { seed }, &cfg).unwrap();
            prop_assert_eq!(&other, &reference);
        }
        // Closed: nothing missing completes a copy through itself.
        for s in reference.missing() {
            prop_assert!(posat::embed::find_copy_through(&reference, poset, s).is_none());
        }
    }
}
