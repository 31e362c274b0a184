//! Freeness and saturation verdicts with certificates, greedy completion, and
//! the sets lying above or below a copy.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embed::{find_copy_through, search, Embedding};
use crate::error::{Error, Result};
use crate::family::{SetFamily, SubsetMask};
use crate::poset::Poset;

/// Default largest ground size for checks that scan all of `𝒫([n])`.
pub const DEFAULT_EXHAUSTIVE_CAP: u32 = 16;

/// Hard ceiling for exhaustive scans regardless of configuration.
const ABSOLUTE_CAP: u32 = 30;

/// Feasibility settings shared by every exhaustive scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub exhaustive_cap: u32,
    /// When set, saturation checks test this many random missing sets
    /// instead of all of them and report "not refuted" on success.
    pub sample: Option<Sampling>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub count: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP, sample: None }
    }
}

impl CheckConfig {
    pub fn with_cap(cap: u32) -> Self {
        CheckConfig { exhaustive_cap: cap, ..Self::default() }
    }

    pub(crate) fn check(&self, n: u32) -> Result<()> {
        let cap = self.exhaustive_cap.min(ABSOLUTE_CAP);
        if n > cap {
            Err(Error::Infeasible { n, cap })
        } else {
            Ok(())
        }
    }
}

/// Outcome of a saturation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturationVerdict {
    /// The family already contains an induced copy.
    NotFree(Embedding),
    /// Free, but adding this set creates no copy through it.
    Missing(SubsetMask),
    /// Free, and every missing set creates a copy.
    Saturated,
    /// Free, and every sampled missing set creates a copy.
    NotRefuted { sampled: usize },
}

impl SaturationVerdict {
    pub fn is_free(&self) -> bool {
        !matches!(self, SaturationVerdict::NotFree(_))
    }

    pub fn is_saturated(&self) -> bool {
        matches!(self, SaturationVerdict::Saturated)
    }

    pub fn copy(&self) -> Option<&Embedding> {
        match self {
            SaturationVerdict::NotFree(e) => Some(e),
            _ => None,
        }
    }

    pub fn missing(&self) -> Option<SubsetMask> {
        match self {
            SaturationVerdict::Missing(s) => Some(*s),
            _ => None,
        }
    }
}

/// Order in which candidate sets of `𝒫([n])` are scanned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "order")]
pub enum ScanOrder {
    /// Ascending mask value.
    #[default]
    Ascending,
    Descending,
    /// By cardinality, ties by ascending mask value.
    BySize,
    /// Seeded shuffle.
    Random { seed: u64 },
}

impl ScanOrder {
    /// All subsets of `[n]` in this order.
    pub fn sets(self, n: u32) -> Vec<SubsetMask> {
        let mut all: Vec<SubsetMask> = (0..1u64 << n).map(SubsetMask).collect();
        match self {
            ScanOrder::Ascending => {}
            ScanOrder::Descending => all.reverse(),
            ScanOrder::BySize => all.sort_by_key(|s| (s.len(), *s)),
            ScanOrder::Random { seed } => all.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        }
        all
    }
}

/// `None` when `family` has no induced copy of `poset`, otherwise a witness.
pub fn find_copy(family: &SetFamily, poset: &Poset) -> Option<Embedding> {
    search(family.members(), poset, None)
}

/// Whether `family` is `poset`-free.
pub fn is_free(family: &SetFamily, poset: &Poset) -> bool {
    find_copy(family, poset).is_none()
}

/// Saturation check with the default configuration.
pub fn is_saturated(family: &SetFamily, poset: &Poset) -> Result<SaturationVerdict> {
    is_saturated_with(family, poset, &CheckConfig::default())
}

/// Checks freeness, then that every missing set creates a copy through itself.
/// The smallest missing set without a copy is reported.
pub fn is_saturated_with(
    family: &SetFamily,
    poset: &Poset,
    config: &CheckConfig,
) -> Result<SaturationVerdict> {
    let n = family.ground();
    if config.sample.is_none() {
        config.check(n)?;
    }
    if let Some(copy) = find_copy(family, poset) {
        return Ok(SaturationVerdict::NotFree(copy));
    }
    if let Some(Sampling { count, seed }) = config.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let full = SubsetMask::full(n).bits();
        let mut tested = 0;
        let mut attempts = 0;
        while tested < count && attempts < count.saturating_mul(64) {
            attempts += 1;
            let s = SubsetMask(rng.gen::<u64>() & full);
            if family.contains(s) {
                continue;
            }
            tested += 1;
            if find_copy_through(family, poset, s).is_none() {
                return Ok(SaturationVerdict::Missing(s));
            }
        }
        return Ok(SaturationVerdict::NotRefuted { sampled: tested });
    }
    let witness = (0..1u64 << n)
        .into_par_iter()
        .map(SubsetMask)
        .filter(|&s| !family.contains(s))
        .find_first(|&s| find_copy_through(family, poset, s).is_none());
    Ok(match witness {
        Some(s) => SaturationVerdict::Missing(s),
        None => SaturationVerdict::Saturated,
    })
}

/// Extends a free `seed` to a maximal free family by scanning `𝒫([n])` in
/// `order` and keeping every set that does not create a copy.
pub fn greedy_complete(
    seed: &SetFamily,
    poset: &Poset,
    order: ScanOrder,
    config: &CheckConfig,
) -> Result<SetFamily> {
    config.check(seed.ground())?;
    if let Some(copy) = find_copy(seed, poset) {
        return Err(Error::NotFree(copy));
    }
    let mut family = seed.clone();
    for s in order.sets(seed.ground()) {
        if !family.contains(s) && find_copy_through(&family, poset, s).is_none() {
            family.insert(s);
        }
    }
    Ok(family)
}

/// All `S ⊆ [n]` with an induced copy of `poset` inside `family` whose every
/// set is a proper subset of `S`.
pub fn sets_above_copy(
    family: &SetFamily,
    poset: &Poset,
    config: &CheckConfig,
) -> Result<SetFamily> {
    let n = family.ground();
    config.check(n)?;
    let hits: Vec<SubsetMask> = (0..1u64 << n)
        .into_par_iter()
        .map(SubsetMask)
        .filter(|&s| {
            let below: Vec<SubsetMask> = family.iter().filter(|m| m.is_proper_subset(s)).collect();
            search(&below, poset, None).is_some()
        })
        .collect();
    Ok(SetFamily::from_masks(n, hits))
}

/// All `S ⊆ [n]` with an induced copy of `poset` inside `family` whose every
/// set properly contains `S`.
pub fn sets_below_copy(
    family: &SetFamily,
    poset: &Poset,
    config: &CheckConfig,
) -> Result<SetFamily> {
    let n = family.ground();
    config.check(n)?;
    let hits: Vec<SubsetMask> = (0..1u64 << n)
        .into_par_iter()
        .map(SubsetMask)
        .filter(|&s| {
            let above: Vec<SubsetMask> = family.iter().filter(|m| s.is_proper_subset(*m)).collect();
            search(&above, poset, None).is_some()
        })
        .collect();
    Ok(SetFamily::from_masks(n, hits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::from_lists(n, &sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn s(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e)
    }

    #[test]
    fn freeness_examples() {
        let c2 = Poset::chain(2);
        let copy = find_copy(&fam(3, &[&[], &[1, 2, 3]]), &c2).unwrap();
        assert_eq!(copy.assignment, vec![s(&[]), s(&[1, 2, 3])]);
        assert!(is_free(&fam(3, &[&[]]), &c2));
        assert!(!is_free(&fam(3, &[&[1], &[2], &[3]]), &Poset::antichain(3)));
    }

    #[test]
    fn saturation_examples() {
        let v = is_saturated(&fam(3, &[&[]]), &Poset::chain(2)).unwrap();
        assert!(v.is_saturated());
        let chain = fam(3, &[&[], &[1], &[1, 2], &[1, 2, 3]]);
        assert!(is_saturated(&chain, &Poset::antichain(2)).unwrap().is_saturated());
        let v = is_saturated(&fam(3, &[&[], &[1, 2, 3]]), &Poset::antichain(2)).unwrap();
        assert!(v.is_free());
        assert_eq!(v.missing(), Some(s(&[1])));
        let v = is_saturated(&fam(3, &[&[], &[1, 2, 3]]), &Poset::chain(2)).unwrap();
        assert!(!v.is_free());
        assert!(v.copy().is_some());
    }

    #[test]
    fn cap_and_sampling() {
        let big = SetFamily::empty(20);
        assert!(matches!(
            is_saturated(&big, &Poset::chain(2)),
            Err(Error::Infeasible { n: 20, cap: 16 })
        ));
        let cfg = CheckConfig { sample: Some(Sampling { count: 50, seed: 7 }), ..Default::default() };
        let mut f = SetFamily::empty(20);
        f.insert(SubsetMask::EMPTY);
        let v = is_saturated_with(&f, &Poset::chain(2), &cfg).unwrap();
        assert_eq!(v, SaturationVerdict::NotRefuted { sampled: 50 });
        let v = is_saturated_with(&big, &Poset::chain(2), &cfg).unwrap();
        assert!(v.missing().is_some());
    }

    #[test]
    fn greedy_examples() {
        let a2 = Poset::antichain(2);
        let f = greedy_complete(&SetFamily::empty(2), &a2, ScanOrder::Ascending, &Default::default())
            .unwrap();
        assert_eq!(f.to_lists(), vec![vec![], vec![1], vec![1, 2]]);
        let f = greedy_complete(
            &SetFamily::empty(4),
            &Poset::chain(2),
            ScanOrder::Ascending,
            &Default::default(),
        )
        .unwrap();
        assert_eq!(f.to_lists(), vec![Vec::<u32>::new()]);
        let bad = fam(5, &[&[], &[1, 2, 3, 4, 5]]);
        assert!(matches!(
            greedy_complete(&bad, &Poset::chain(2), ScanOrder::Ascending, &Default::default()),
            Err(Error::NotFree(_))
        ));
    }

    #[test]
    fn scan_orders_are_permutations() {
        for order in [
            ScanOrder::Ascending,
            ScanOrder::Descending,
            ScanOrder::BySize,
            ScanOrder::Random { seed: 3 },
        ] {
            let mut sets = order.sets(4);
            sets.sort();
            assert_eq!(sets, ScanOrder::Ascending.sets(4));
        }
        assert_eq!(ScanOrder::BySize.sets(2)[3], s(&[1, 2]));
    }

    #[test]
    fn above_and_below() {
        let cfg = CheckConfig::default();
        let above = sets_above_copy(&fam(2, &[&[], &[1]]), &Poset::chain(2), &cfg).unwrap();
        assert_eq!(above.to_lists(), vec![vec![1, 2]]);
        let above = sets_above_copy(&fam(3, &[&[1], &[2]]), &Poset::antichain(2), &cfg).unwrap();
        assert_eq!(above.to_lists(), vec![vec![1, 2], vec![1, 2, 3]]);
        assert!(sets_above_copy(&SetFamily::empty(3), &Poset::antichain(2), &cfg)
            .unwrap()
            .is_empty());
        let below = sets_below_copy(&fam(3, &[&[1, 3], &[2, 3]]), &Poset::antichain(2), &cfg)
            .unwrap();
        assert_eq!(below.to_lists(), vec![vec![], vec![3]]);
    }
}
