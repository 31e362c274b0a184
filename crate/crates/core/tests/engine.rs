use posat::embed::{all_induced_copies, find_copy_through};
use posat::poset::poset_classes;
use posat::saturation::{greedy_complete, is_saturated, CheckConfig, ScanOrder};
use posat::{find_induced_copy, Poset, SetFamily, SubsetMask};
use proptest::prelude::*;

fn poset_strategy(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(|p| {
        let pairs = p * (p - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut rel = Vec::new();
            let mut it = bits.into_iter();
            for i in 0..p {
                for j in i + 1..p {
                    if it.next().unwrap() {
                        rel.push((i, j));
                    }
                }
            }
            Poset::new(p, &rel).unwrap()
        })
    })
}

fn family_strategy(max_n: u32, max_len: usize) -> impl Strategy<Value = SetFamily> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(0..1u64 << n, 0..=max_len)
            .prop_map(move |v| SetFamily::from_masks(n, v.into_iter().map(SubsetMask)))
    })
}

/// Brute force over all injective maps into the family.
fn brute_force(family: &SetFamily, poset: &Poset) -> usize {
    fn go(f: &[SubsetMask], p: &Poset, a: &mut Vec<SubsetMask>, count: &mut usize) {
        if a.len() == p.size() {
            *count += 1;
            return;
        }
        let e = a.len();
        for &s in f {
            if a.contains(&s) {
                continue;
            }
            let ok = (0..e).all(|i| a[i].is_proper_subset(s) == p.lt(i, e) && s.is_proper_subset(a[i]) == p.lt(e, i));
            if ok {
                a.push(s);
                go(f, p, a, count);
                a.pop();
            }
        }
    }
    let mut count = 0;
    go(family.members(), poset, &mut Vec::new(), &mut count);
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn search_matches_brute_force(f in family_strategy(5, 12), p in poset_strategy(4)) {
        let expected = brute_force(&f, &p);
        let found = find_induced_copy(&f, &p, None).unwrap();
        prop_assert_eq!(found.is_some(), expected > 0);
        if let Some(e) = found {
            prop_assert!(e.is_valid_in(&f, &p));
        }
        prop_assert_eq!(all_induced_copies(&f, &p).len(), expected);
    }

    #[test]
    fn forced_copy_uses_the_set(f in family_strategy(4, 10), p in poset_strategy(3), s in 0u64..16) {
        let s = SubsetMask(s & ((1 << f.ground()) - 1));
        let with = f.with(s);
        let any_through = all_induced_copies(&with, &p).iter().any(|c| c.contains(s));
        match find_copy_through(&f, &p, s) {
            Some(c) => {
                prop_assert!(c.contains(s));
                prop_assert!(c.is_valid_in(&with, &p));
            }
            None => prop_assert!(!any_through),
        }
    }

    #[test]
    fn poset_dual_and_sums(p in poset_strategy(5), q in poset_strategy(4)) {
        prop_assert_eq!(p.dual().dual(), p.clone());
        prop_assert_eq!(p.relation_count(), p.dual().relation_count());
        let s = Poset::linear_sum(&q, &p).unwrap();
        prop_assert_eq!(s.size(), p.size() + q.size());
        prop_assert_eq!(s.relation_count(), p.relation_count() + q.relation_count() + p.size() * q.size());
        prop_assert!(s.dual().is_isomorphic(&Poset::linear_sum(&p.dual(), &q.dual()).unwrap()));
        // Closure is transitive.
        for (i, j) in p.relations() {
            for k in 0..p.size() {
                if p.lt(j, k) {
                    prop_assert!(p.lt(i, k));
                }
            }
        }
    }

    #[test]
    fn isomorphism_respects_relabelling(p in poset_strategy(5), seed in any::<u64>()) {
        let n = p.size();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        let rel: Vec<_> = p.relations().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        let q = Poset::new(n, &rel).unwrap();
        prop_assert!(p.is_isomorphic(&q));
        let iso = p.isomorphism(&q).unwrap();
        for (a, b) in p.relations() {
            prop_assert!(q.lt(iso[a], iso[b]));
        }
    }

    #[test]
    fn family_algebra(f in family_strategy(6, 20), g in family_strategy(6, 20)) {
        let n = f.ground();
        prop_assert_eq!(f.complements().complements(), f.clone());
        prop_assert_eq!(f.union(&f), f.clone());
        if g.ground() == n {
            let u = f.union(&g);
            prop_assert_eq!(u.len(), f.len() + g.len() - f.intersection(&g).len());
            prop_assert!(f.difference(&g).is_disjoint(&g));
        }
        prop_assert_eq!(f.len() + f.missing().len(), 1usize << n);
        for s in f.iter() {
            prop_assert_eq!(s.complement(n).complement(n), s);
            let pts = SubsetMask::full(n).difference(SubsetMask::singleton(1));
            prop_assert_eq!(s.intersection(pts).compress(pts).expand(pts), s.intersection(pts));
        }
    }

    #[test]
    fn greedy_completion_is_saturated(p in poset_strategy(3), n in 2u32..=4, seed in any::<u64>()) {
        let f = greedy_complete(&SetFamily::empty(n), &p, ScanOrder::Random { seed }, &CheckConfig::default()).unwrap();
        prop_assert!(is_saturated(&f, &p).unwrap().is_saturated());
    }
}

#[test]
fn class_counts_are_known_values() {
    let counts: Vec<usize> = (0..=5).map(|p| poset_classes(p).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
}

#[test]
fn every_small_poset_embeds_in_its_own_cube() {
    // Every poset on p elements embeds in Q_p via its down-sets.
    for p in 1..=4 {
        let q = SetFamily::power_set(p as u32);
        for poset in poset_classes(p) {
            assert!(find_induced_copy(&q, &poset, None).unwrap().is_some());
        }
    }
}
