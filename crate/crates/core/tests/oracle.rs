use posat::oracle::{all_saturated, all_saturated_of_size, min_percolating, min_saturated, SearchLimits};
use posat::poset::poset_classes;
use posat::saturation::{is_saturated, sets_above_copy, sets_below_copy, CheckConfig};
use posat::{Poset, SetFamily};

fn sat(f: &SetFamily, p: &Poset) -> bool {
    is_saturated(f, p).unwrap().is_saturated()
}

fn small_classes() -> Vec<Poset> {
    (1..=3).flat_map(poset_classes).collect()
}

#[test]
fn minimum_witnesses_are_saturated_and_minimal() {
    let limits = SearchLimits::default();
    for poset in small_classes() {
        for n in 1..=3 {
            let r = min_saturated(&poset, n, &limits).unwrap();
            assert!(r.exact);
            let w = r.witness.unwrap();
            assert_eq!(w.len(), r.size);
            assert!(sat(&w, &poset));
            for k in 0..r.size {
                assert!(all_saturated_of_size(&poset, n, k, &limits).unwrap().is_empty());
            }
            // The witness is the first family listed at its size.
            assert_eq!(all_saturated_of_size(&poset, n, r.size, &limits).unwrap()[0], w);
        }
    }
}

#[test]
fn symmetry_reduction_keeps_the_answer() {
    let plain = SearchLimits::default();
    let reduced = SearchLimits { symmetry_reduction: true, ..plain };
    for poset in small_classes() {
        for n in 2..=4 {
            let a = min_saturated(&poset, n, &plain).unwrap();
            let b = min_saturated(&poset, n, &reduced).unwrap();
            assert_eq!((a.size, &a.witness), (b.size, &b.witness), "{poset:?} n={n}");
        }
    }
    let v2 = Poset::complete_multilayer(&[1, 2]).unwrap();
    let a = min_percolating(&v2, 5, &plain).unwrap();
    let b = min_percolating(&v2, 5, &reduced).unwrap();
    assert_eq!(a.witness, b.witness);
}

#[test]
fn enumeration_matches_brute_force_in_q2() {
    // Q2 has 16 families; filter them all directly.
    for poset in small_classes() {
        let limits = SearchLimits::default();
        let expected: Vec<SetFamily> = (0u32..16)
            .map(|bits| SetFamily::from_masks(2, (0..4).filter(|i| bits >> i & 1 == 1).map(posat::SubsetMask)))
            .filter(|f| sat(f, &poset))
            .collect();
        let mut got = all_saturated(&poset, 2, &limits).unwrap();
        let mut want = expected;
        got.sort_by_key(|f| f.to_lists());
        want.sort_by_key(|f| f.to_lists());
        assert_eq!(got, want, "{poset:?}");
    }
}

#[test]
fn size_cap_gives_a_lower_bound() {
    let k22 = Poset::complete_multilayer(&[2, 2]).unwrap();
    let limits = SearchLimits { max_candidate_size: Some(3), ..Default::default() };
    let r = min_saturated(&k22, 4, &limits).unwrap();
    assert!(!r.exact);
    assert_eq!(r.size, 4);
    assert!(r.witness.is_none());
}

#[test]
fn caps_are_enforced() {
    let limits = SearchLimits::default();
    assert!(min_saturated(&Poset::chain(2), 6, &limits).is_err());
    assert!(all_saturated_of_size(&Poset::chain(2), 5, 3, &limits).is_err());
    assert!(min_percolating(&Poset::chain(4), 6, &limits).is_err());
    let lifted = SearchLimits { max_ground: Some(6), ..limits };
    assert!(min_saturated(&Poset::point(), 6, &lifted).is_ok());
}

/// Glued pairs `top * bottom` with no unique maximum in `bottom` and no
/// unique minimum in `top`.
fn glued_pairs() -> Vec<(Poset, Poset)> {
    let classes = small_classes();
    let bottoms: Vec<&Poset> = classes.iter().filter(|p| !p.has_unique_maximal()).collect();
    let tops: Vec<&Poset> = classes.iter().filter(|p| !p.has_unique_minimal()).collect();
    let mut out = Vec::new();
    for b in &bottoms {
        for t in &tops {
            out.push(((*b).clone(), (*t).clone()));
        }
    }
    out
}

#[test]
fn inserting_a_point_keeps_saturation() {
    let limits = SearchLimits::default();
    let dot = Poset::point();
    let mut checked = 0;
    for (bottom, top) in glued_pairs() {
        let target = Poset::linear_sum(&top, &bottom).unwrap();
        let dotted = Poset::linear_sum(&top, &Poset::linear_sum(&dot, &bottom).unwrap()).unwrap();
        for n in 3..=4 {
            for f in all_saturated(&target, n, &limits).unwrap() {
                assert!(sat(&f, &dotted), "{:?} {target:?}", f.to_lists());
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn glued_family_splits_into_halves() {
    let limits = SearchLimits::default();
    let cfg = CheckConfig::default();
    let dot = Poset::point();
    for (bottom, top) in glued_pairs() {
        let target = Poset::linear_sum(&top, &bottom).unwrap();
        let dot_bottom = Poset::linear_sum(&dot, &bottom).unwrap();
        let top_dot = Poset::linear_sum(&top, &dot).unwrap();
        for n in 3..=4 {
            for f in all_saturated(&target, n, &limits).unwrap() {
                let below = sets_below_copy(&f, &top, &cfg).unwrap();
                let above = sets_above_copy(&f, &bottom, &cfg).unwrap();
                assert!(below.is_disjoint(&above));
                assert!(f.union(&below).union(&above).is_power_set());
                assert!(sat(&f.difference(&above), &dot_bottom));
                assert!(sat(&f.difference(&below), &top_dot));
            }
        }
    }
}

#[test]
fn two_chain_saturated_families_separate() {
    let c2 = Poset::chain(2);
    let two_c2 = c2.disjoint_union(&c2).unwrap();
    let limits = SearchLimits::default();
    let mut seen = 0;
    for n in 3..=4 {
        for f in all_saturated(&two_c2, n, &limits).unwrap() {
            assert_eq!(f.separates(), None, "{:?}", f.to_lists());
            assert!(1usize << f.len() >= n as usize);
            seen += 1;
        }
    }
    assert!(seen > 0);
}
