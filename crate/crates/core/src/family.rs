//! Subsets of `[n]` as bit masks, and duplicate-free families of them.
//!
//! Ground elements are 1-based everywhere a human sees them (`Display`,
//! element lists) and 0-based bit positions internally.

use std::fmt;

use crate::error::{Error, Result};
use crate::poset::bits;

/// Largest ground size a single-word mask can hold.
pub const MAX_GROUND: u32 = 64;

/// A subset of `[n]`; bit `i` stands for ground element `i + 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// `[n]` itself.
    pub fn full(n: u32) -> Self {
        SubsetMask(low_bits(n))
    }

    /// `{lo, ..., hi}` (1-based, inclusive); empty when `lo > hi`.
    pub fn interval(lo: u32, hi: u32) -> Self {
        if lo > hi || lo == 0 {
            return Self::EMPTY;
        }
        SubsetMask(low_bits(hi) & !low_bits(lo - 1))
    }

    pub fn singleton(element: u32) -> Self {
        debug_assert!(element >= 1 && element <= MAX_GROUND);
        SubsetMask(1 << (element - 1))
    }

    /// From 1-based elements.
    pub fn from_elements(elements: &[u32]) -> Self {
        SubsetMask(elements.iter().fold(0, |m, &e| m | 1 << (e - 1)))
    }

    /// 1-based elements in ascending order.
    pub fn elements(self) -> Vec<u32> {
        bits(self.0).map(|b| b as u32 + 1).collect()
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, element: u32) -> bool {
        self.0 >> (element - 1) & 1 == 1
    }

    #[inline]
    pub fn is_subset(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset(self, other: SubsetMask) -> bool {
        self.0 != other.0 && self.is_subset(other)
    }

    #[inline]
    pub fn comparable(self, other: SubsetMask) -> bool {
        self.is_subset(other) || other.is_subset(self)
    }

    #[inline]
    pub fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    /// `[n] \ self`.
    #[inline]
    pub fn complement(self, n: u32) -> Self {
        SubsetMask(!self.0 & low_bits(n))
    }

    /// Whether every element lies in `[n]`.
    pub fn fits(self, n: u32) -> bool {
        self.0 & !low_bits(n) == 0
    }

    /// Relabels `self ∩ points` onto `[|points|]`, preserving element order.
    pub fn compress(self, points: SubsetMask) -> Self {
        SubsetMask(bits(points.0).enumerate().fold(0, |m, (pos, b)| {
            if self.0 >> b & 1 == 1 {
                m | 1 << pos
            } else {
                m
            }
        }))
    }

    /// Inverse of [`compress`](Self::compress): spreads `[|points|]` back onto `points`.
    pub fn expand(self, points: SubsetMask) -> Self {
        SubsetMask(bits(points.0).enumerate().fold(0, |m, (pos, b)| {
            if self.0 >> pos & 1 == 1 {
                m | 1 << b
            } else {
                m
            }
        }))
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn low_bits(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Checks `n` against the single-word limit.
pub fn check_ground(n: u32) -> Result<()> {
    if n > MAX_GROUND {
        Err(Error::GroundTooLarge(n))
    } else {
        Ok(())
    }
}

/// A duplicate-free family of subsets of `[n]`, stored in ascending mask order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: u32,
    members: Vec<SubsetMask>,
}

impl SetFamily {
    pub fn empty(ground: u32) -> Self {
        SetFamily { ground, members: Vec::new() }
    }

    /// Strict constructor: rejects duplicates and sets outside `[ground]`.
    pub fn new(ground: u32, members: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        check_ground(ground)?;
        let mut members: Vec<SubsetMask> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|m| !m.fits(ground)) {
            return Err(Error::SetOutOfGround(bad.elements(), ground));
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSet(w[0].elements()));
        }
        Ok(SetFamily { ground, members })
    }

    /// Builds a family, silently merging duplicates. Panics on sets outside the ground.
    pub fn from_masks(ground: u32, members: impl IntoIterator<Item = SubsetMask>) -> Self {
        let mut members: Vec<SubsetMask> = members.into_iter().collect();
        assert!(members.iter().all(|m| m.fits(ground)), "set outside ground [{ground}]");
        members.sort_unstable();
        members.dedup();
        SetFamily { ground, members }
    }

    /// From 1-based element lists; duplicates and out-of-range elements are errors.
    pub fn from_lists(ground: u32, sets: &[Vec<u32>]) -> Result<Self> {
        check_ground(ground)?;
        let mut masks = Vec::with_capacity(sets.len());
        for s in sets {
            if s.iter().any(|&e| e == 0 || e > ground) {
                return Err(Error::SetOutOfGround(s.clone(), ground));
            }
            masks.push(SubsetMask::from_elements(s));
        }
        Self::new(ground, masks)
    }

    /// `𝒫([n])`.
    pub fn power_set(n: u32) -> Self {
        assert!(n < 32, "power set of [{n}] is too large to materialize");
        SetFamily { ground: n, members: (0..1u64 << n).map(SubsetMask).collect() }
    }

    /// All subsets of `points`, as a family over `[n]`.
    pub fn power_set_of(n: u32, points: SubsetMask) -> Self {
        Self::from_masks(n, subsets_of(points))
    }

    pub fn ground(&self) -> u32 {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, set: SubsetMask) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    /// Inserts `set`; returns false if it was already present.
    pub fn insert(&mut self, set: SubsetMask) -> bool {
        assert!(set.fits(self.ground), "set outside ground [{}]", self.ground);
        match self.members.binary_search(&set) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, set);
                true
            }
        }
    }

    pub fn remove(&mut self, set: SubsetMask) -> bool {
        match self.members.binary_search(&set) {
            Ok(pos) => {
                self.members.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// `self ∪ {set}` as a new family.
    pub fn with(&self, set: SubsetMask) -> Self {
        let mut f = self.clone();
        f.insert(set);
        f
    }

    pub fn union(&self, other: &SetFamily) -> Self {
        assert_eq!(self.ground, other.ground, "families over different grounds");
        Self::from_masks(self.ground, self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &SetFamily) -> Self {
        SetFamily {
            ground: self.ground,
            members: self.iter().filter(|&m| !other.contains(m)).collect(),
        }
    }

    pub fn intersection(&self, other: &SetFamily) -> Self {
        SetFamily {
            ground: self.ground,
            members: self.iter().filter(|&m| other.contains(m)).collect(),
        }
    }

    pub fn is_disjoint(&self, other: &SetFamily) -> bool {
        self.iter().all(|m| !other.contains(m))
    }

    /// Members satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(SubsetMask) -> bool) -> Self {
        SetFamily { ground: self.ground, members: self.iter().filter(|&m| keep(m)).collect() }
    }

    /// `{[n] \ A : A ∈ self}`.
    pub fn complements(&self) -> Self {
        Self::from_masks(self.ground, self.iter().map(|m| m.complement(self.ground)))
    }

    /// Whether this is all of `𝒫([n])`.
    pub fn is_power_set(&self) -> bool {
        self.ground < 64 && self.members.len() as u64 == 1u64 << self.ground
    }

    /// Sets of `𝒫([n])` not in the family, ascending.
    pub fn missing(&self) -> Vec<SubsetMask> {
        assert!(self.ground < 32, "ground [{}] too large to enumerate", self.ground);
        let mut out = Vec::with_capacity((1usize << self.ground) - self.members.len());
        let mut it = self.members.iter().peekable();
        for bits in 0..1u64 << self.ground {
            if it.peek().is_some_and(|m| m.0 == bits) {
                it.next();
            } else {
                out.push(SubsetMask(bits));
            }
        }
        out
    }

    /// Restricts to sets inside `points` and relabels them onto `[|points|]`.
    /// Members not contained in `points` are dropped.
    pub fn compress(&self, points: SubsetMask) -> Self {
        Self::from_masks(
            points.len(),
            self.iter().filter(|m| m.is_subset(points)).map(|m| m.compress(points)),
        )
    }

    /// Smallest pair `i < j` (1-based) that no member separates, if any.
    pub fn separates(&self) -> Option<(u32, u32)> {
        for i in 1..=self.ground {
            for j in i + 1..=self.ground {
                if self.iter().all(|m| m.contains(i) == m.contains(j)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Members as 1-based element lists.
    pub fn to_lists(&self) -> Vec<Vec<u32>> {
        self.iter().map(SubsetMask::elements).collect()
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily[{}]", self.ground)?;
        f.debug_set().entries(self.members.iter()).finish()
    }
}

/// All `k`-subsets of `[n]`.
pub fn layer(n: u32, k: u32) -> Result<SetFamily> {
    check_ground(n)?;
    if k > n {
        return Err(Error::LayerOutOfRange { n, k });
    }
    Ok(SetFamily::from_masks(n, k_subsets_of(SubsetMask::full(n), k)))
}

/// All subsets of `[n]` with at most `k` elements.
pub fn layer_upto(n: u32, k: u32) -> Result<SetFamily> {
    check_ground(n)?;
    if k > n {
        return Err(Error::LayerOutOfRange { n, k });
    }
    Ok(SetFamily::from_masks(n, (0..=k).flat_map(|j| k_subsets_of(SubsetMask::full(n), j))))
}

/// All subsets of `points`, ascending.
pub fn subsets_of(points: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    // Walk submasks upward: next = (cur - points) & points.
    let p = points.0;
    let mut cur = Some(0u64);
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == p { None } else { Some(out.wrapping_sub(p) & p) };
        Some(SubsetMask(out))
    })
}

/// All `k`-subsets of `points`, ascending.
pub fn k_subsets_of(points: SubsetMask, k: u32) -> impl Iterator<Item = SubsetMask> {
    subsets_of(points).filter(move |s| s.len() == k)
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e)
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(s(&[1, 3]).to_string(), "{1,3}");
        assert_eq!(SubsetMask::EMPTY.to_string(), "{}");
        assert_eq!(s(&[1, 3]).bits(), 0b101);
    }

    #[test]
    fn strict_constructor_rejects_duplicates() {
        assert!(matches!(SetFamily::new(3, [s(&[1]), s(&[1])]), Err(Error::DuplicateSet(_))));
        assert!(matches!(
            SetFamily::from_lists(2, &[vec![3]]),
            Err(Error::SetOutOfGround(_, 2))
        ));
        assert!(matches!(SetFamily::new(65, []), Err(Error::GroundTooLarge(65))));
        let f = SetFamily::new(3, [s(&[2]), s(&[1])]).unwrap();
        assert_eq!(f.members(), &[s(&[1]), s(&[2])]);
    }

    #[test]
    fn layers() {
        assert_eq!(layer(3, 1).unwrap().to_lists(), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(layer_upto(2, 2).unwrap().len(), 4);
        assert_eq!(layer(5, 2).unwrap().len(), 10);
        assert_eq!(layer(4, 0).unwrap().members(), &[SubsetMask::EMPTY]);
        assert!(matches!(layer(3, 4), Err(Error::LayerOutOfRange { n: 3, k: 4 })));
        assert!(layer_upto(2, 3).is_err());
    }

    #[test]
    fn separation() {
        let f = SetFamily::from_lists(3, &[vec![1, 2], vec![3]]).unwrap();
        assert_eq!(f.separates(), Some((1, 2)));
        assert_eq!(SetFamily::power_set(3).separates(), None);
        let f = SetFamily::from_lists(2, &[vec![]]).unwrap();
        assert_eq!(f.separates(), Some((1, 2)));
    }

    #[test]
    fn submask_walk() {
        let all: Vec<_> = subsets_of(s(&[1, 3])).collect();
        assert_eq!(all, vec![s(&[]), s(&[1]), s(&[3]), s(&[1, 3])]);
        assert_eq!(subsets_of(SubsetMask::EMPTY).count(), 1);
        assert_eq!(k_subsets_of(SubsetMask::full(5), 2).count(), 10);
    }

    #[test]
    fn compress_expand() {
        let pts = s(&[2, 4, 5]);
        assert_eq!(s(&[2, 5]).compress(pts), s(&[1, 3]));
        assert_eq!(s(&[1, 3]).expand(pts), s(&[2, 5]));
        let f = SetFamily::from_lists(5, &[vec![2], vec![1, 2], vec![4, 5]]).unwrap();
        assert_eq!(f.compress(pts).to_lists(), vec![vec![1], vec![2, 3]]);
    }

    #[test]
    fn missing_sets() {
        let f = SetFamily::from_lists(2, &[vec![], vec![1, 2]]).unwrap();
        assert_eq!(f.missing(), vec![s(&[1]), s(&[2])]);
        assert!(SetFamily::power_set(3).is_power_set());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(64, 32), 1832624140942590534);
    }

    #[test]
    fn interval_and_full() {
        assert_eq!(SubsetMask::interval(3, 5), s(&[3, 4, 5]));
        assert_eq!(SubsetMask::interval(4, 3), SubsetMask::EMPTY);
        assert_eq!(SubsetMask::full(64).bits(), u64::MAX);
        assert_eq!(s(&[1]).complement(3), s(&[2, 3]));
    }
}
