//! Finite strict partial orders and the compositions used throughout the crate.
//!
//! A [`Poset`] stores its full transitive closure as one bit row per element,
//! so comparability tests are a shift and a mask. Elements are labeled
//! `0..size`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_ELEMENTS: usize = 64;

/// A finite strict partial order on `0..size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    size: usize,
    /// `up[i]` has bit `j` set iff `i < j`.
    up: Vec<u64>,
    /// `down[j]` has bit `i` set iff `i < j`.
    down: Vec<u64>,
}

/// An isolated element plus a core with a unique bottom and a unique top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialDecomposition {
    pub isolated: usize,
    /// Indices (in the original poset) of the core elements, ascending.
    pub core_elements: Vec<usize>,
    pub core_min: usize,
    pub core_max: usize,
}

impl SpecialDecomposition {
    /// The core as a poset of its own, relabeled in ascending original order.
    pub fn core(&self, poset: &Poset) -> Poset {
        poset.restrict(&self.core_elements)
    }
}

impl Poset {
    /// Builds the transitive closure of `strict_pairs` on `size` elements.
    ///
    /// Fails with the offending cycle when the closure is not antisymmetric.
    pub fn new(size: usize, strict_pairs: &[(usize, usize)]) -> Result<Self> {
        if size > MAX_ELEMENTS {
            return Err(Error::PosetTooLarge(size));
        }
        let mut succ = vec![0u64; size];
        for &(i, j) in strict_pairs {
            if i >= size || j >= size {
                return Err(Error::ElementOutOfRange(i, j, size));
            }
            succ[i] |= 1 << j;
        }
        let edges = succ.clone();
        // Warshall over bit rows.
        for k in 0..size {
            let row_k = succ[k];
            for row in succ.iter_mut() {
                if *row >> k & 1 == 1 {
                    *row |= row_k;
                }
            }
        }
        if let Some(start) = (0..size).find(|&i| succ[i] >> i & 1 == 1) {
            return Err(Error::Cycle(find_cycle(&edges, start)));
        }
        Ok(Self::from_up_rows(succ))
    }

    fn from_up_rows(up: Vec<u64>) -> Self {
        let size = up.len();
        let mut down = vec![0u64; size];
        for (i, row) in up.iter().enumerate() {
            for j in bits(*row) {
                down[j] |= 1 << i;
            }
        }
        Poset { size, up, down }
    }

    pub fn empty() -> Self {
        Poset { size: 0, up: Vec::new(), down: Vec::new() }
    }

    /// The one-element poset.
    pub fn point() -> Self {
        Self::antichain(1)
    }

    pub fn chain(k: usize) -> Self {
        Self::complete_multilayer(&vec![1; k]).unwrap_or_else(|_| Self::empty())
    }

    pub fn antichain(k: usize) -> Self {
        if k == 0 {
            return Self::empty();
        }
        Self::complete_multilayer(&[k]).expect("positive layer size")
    }

    /// The complete poset with the given layer sizes, bottom layer first.
    pub fn complete_multilayer(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::Empty("complete_multilayer needs at least one layer"));
        }
        if let Some(pos) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidLayers(format!("layer {pos} has size 0")));
        }
        let total: usize = sizes.iter().sum();
        if total > MAX_ELEMENTS {
            return Err(Error::PosetTooLarge(total));
        }
        let mut up = vec![0u64; total];
        let mut start = 0;
        for &s in sizes {
            let end = start + s;
            let above = mask_range(end, total);
            for row in &mut up[start..end] {
                *row = above;
            }
            start = end;
        }
        Ok(Self::from_up_rows(up))
    }

    /// Every element of `bottom` strictly below every element of `top`.
    ///
    /// Bottom elements keep their labels; top elements are shifted by
    /// `bottom.size()`.
    pub fn linear_sum(top: &Poset, bottom: &Poset) -> Result<Self> {
        let b = bottom.size;
        let total = b + top.size;
        if total > MAX_ELEMENTS {
            return Err(Error::PosetTooLarge(total));
        }
        let top_mask = mask_range(b, total);
        let mut up = Vec::with_capacity(total);
        up.extend(bottom.up.iter().map(|&r| r | top_mask));
        up.extend(top.up.iter().map(|&r| r << b));
        Ok(Self::from_up_rows(up))
    }

    /// The poset with one new element above everything (the new element is last).
    pub fn with_top(&self) -> Result<Self> {
        Self::linear_sum(&Self::point(), self)
    }

    /// The poset with one new element below everything (the new element is first).
    pub fn with_bottom(&self) -> Result<Self> {
        Self::linear_sum(self, &Self::point())
    }

    /// Disjoint union; `other`'s elements are shifted by `self.size()`.
    pub fn disjoint_union(&self, other: &Poset) -> Result<Self> {
        let total = self.size + other.size;
        if total > MAX_ELEMENTS {
            return Err(Error::PosetTooLarge(total));
        }
        let mut up = self.up.clone();
        up.extend(other.up.iter().map(|&r| r << self.size));
        Ok(Self::from_up_rows(up))
    }

    pub fn dual(&self) -> Self {
        Poset { size: self.size, up: self.down.clone(), down: self.up.clone() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) || self.lt(j, i)
    }

    /// Bit row of elements strictly above `i`.
    #[inline]
    pub fn above(&self, i: usize) -> u64 {
        self.up[i]
    }

    /// Bit row of elements strictly below `i`.
    #[inline]
    pub fn below(&self, i: usize) -> u64 {
        self.down[i]
    }

    pub fn up_degree(&self, i: usize) -> usize {
        self.up[i].count_ones() as usize
    }

    pub fn down_degree(&self, i: usize) -> usize {
        self.down[i].count_ones() as usize
    }

    /// All strict relations `(i, j)` with `i < j`, in row-major order.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.size).flat_map(|i| bits(self.up[i]).map(move |j| (i, j))).collect()
    }

    pub fn relation_count(&self) -> usize {
        self.up.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&i| self.down[i] == 0).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&i| self.up[i] == 0).collect()
    }

    /// Whether there is exactly one minimal and exactly one maximal element.
    pub fn unique_extremes(&self) -> Result<(bool, bool)> {
        if self.is_empty() {
            return Err(Error::Empty("unique_extremes is undefined on the empty poset"));
        }
        Ok((self.minimal_elements().len() == 1, self.maximal_elements().len() == 1))
    }

    pub fn has_unique_minimal(&self) -> bool {
        self.minimal_elements().len() == 1
    }

    pub fn has_unique_maximal(&self) -> bool {
        self.maximal_elements().len() == 1
    }

    /// Pairs `(x, y)` where `y` covers `x`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.relations()
            .into_iter()
            .filter(|&(x, y)| self.up[x] & self.down[y] == 0)
            .collect()
    }

    /// Unique cover twin property: every cover pair has a third element
    /// comparable with exactly one of the two.
    pub fn has_uctp(&self) -> bool {
        self.covers().into_iter().all(|(x, y)| {
            (0..self.size)
                .filter(|&z| z != x && z != y)
                .any(|z| self.comparable(z, x) != self.comparable(z, y))
        })
    }

    /// Two incomparable elements below some `h`, with everything else above `h`.
    pub fn has_legs(&self) -> bool {
        let all = mask_range(0, self.size);
        (0..self.size).any(|h| {
            let below = self.down[h];
            if below.count_ones() != 2 {
                return false;
            }
            let mut it = bits(below);
            let (l1, l2) = (it.next().unwrap(), it.next().unwrap());
            if self.comparable(l1, l2) {
                return false;
            }
            let rest = all & !below & !(1u64 << h);
            rest & !self.up[h] == 0
        })
    }

    /// Splits off an isolated element whose removal leaves a core with unique
    /// extremes. The smallest valid isolated index wins.
    pub fn decompose_special(&self) -> Option<SpecialDecomposition> {
        if self.size < 2 {
            return None;
        }
        (0..self.size).find_map(|iso| {
            if self.up[iso] | self.down[iso] != 0 {
                return None;
            }
            let core_elements: Vec<usize> = (0..self.size).filter(|&e| e != iso).collect();
            let core_mask = core_elements.iter().fold(0u64, |m, &e| m | 1 << e);
            let core_min = core_elements
                .iter()
                .copied()
                .find(|&e| core_mask & !(1 << e) & !self.up[e] == 0)?;
            let core_max = core_elements
                .iter()
                .copied()
                .find(|&e| core_mask & !(1 << e) & !self.down[e] == 0)?;
            Some(SpecialDecomposition { isolated: iso, core_elements, core_min, core_max })
        })
    }

    pub fn is_special(&self) -> bool {
        self.decompose_special().is_some()
    }

    /// A special poset containing `self` as an induced subposet, obtained by
    /// adding a global bottom and/or top when missing and then one isolated
    /// element.
    pub fn specialize(&self) -> Result<Self> {
        let (unique_min, unique_max) = self.unique_extremes()?;
        let mut p = self.clone();
        if !unique_min {
            p = Self::linear_sum(&p, &Self::point())?;
        }
        if !unique_max {
            p = Self::linear_sum(&Self::point(), &p)?;
        }
        p.disjoint_union(&Self::point())
    }

    /// Induced subposet on `elements`, relabeled `0..elements.len()` in the
    /// given order.
    pub fn restrict(&self, elements: &[usize]) -> Self {
        let up = elements
            .iter()
            .map(|&i| {
                elements
                    .iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.lt(i, j))
                    .fold(0u64, |m, (pos, _)| m | 1 << pos)
            })
            .collect();
        Self::from_up_rows(up)
    }

    /// A linear extension: elements sorted by number of predecessors, ties by
    /// label.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&i| (self.down_degree(i), i));
        order
    }

    /// Whether an order-isomorphism onto `other` exists.
    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.isomorphism(other).is_some()
    }

    /// An order-isomorphism `self -> other` as an image vector, if any.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        if self.size != other.size || self.relation_count() != other.relation_count() {
            return None;
        }
        let sig = |p: &Poset, i: usize| (p.down_degree(i), p.up_degree(i));
        let mut a: Vec<_> = (0..self.size).map(|i| sig(self, i)).collect();
        let mut b: Vec<_> = (0..other.size).map(|i| sig(other, i)).collect();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
        let order = self.linear_extension();
        let mut image = vec![usize::MAX; self.size];
        let mut used = 0u64;
        if self.iso_extend(other, &order, 0, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    fn iso_extend(
        &self,
        other: &Poset,
        order: &[usize],
        depth: usize,
        image: &mut [usize],
        used: &mut u64,
    ) -> bool {
        let Some(&x) = order.get(depth) else {
            return true;
        };
        for y in 0..other.size {
            if *used >> y & 1 == 1
                || other.down_degree(y) != self.down_degree(x)
                || other.up_degree(y) != self.up_degree(x)
            {
                continue;
            }
            let consistent = order[..depth].iter().all(|&z| {
                let w = image[z];
                self.lt(z, x) == other.lt(w, y) && self.lt(x, z) == other.lt(y, w)
            });
            if !consistent {
                continue;
            }
            image[x] = y;
            *used |= 1 << y;
            if self.iso_extend(other, order, depth + 1, image, used) {
                return true;
            }
            *used &= !(1 << y);
        }
        false
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset").field("size", &self.size).field("lt", &self.relations()).finish()
    }
}

/// Every labeled poset on `p` elements whose relations respect the natural
/// order (`i < j` only when `i < j` as integers). Each isomorphism class
/// appears at least once.
pub fn naturally_labeled_posets(p: usize) -> Vec<Poset> {
    let slots: Vec<(usize, usize)> =
        (0..p).flat_map(|i| (i + 1..p).map(move |j| (i, j))).collect();
    assert!(slots.len() < 32, "too many elements to enumerate");
    let mut out = Vec::new();
    for bitset in 0u32..(1 << slots.len()) {
        let pairs: Vec<_> = slots
            .iter()
            .enumerate()
            .filter(|&(b, _)| bitset >> b & 1 == 1)
            .map(|(_, &pair)| pair)
            .collect();
        let poset = Poset::new(p, &pairs).expect("upper-triangular relations are acyclic");
        if poset.relation_count() == pairs.len() {
            out.push(poset);
        }
    }
    out
}

/// One representative per isomorphism class on `p` elements.
pub fn poset_classes(p: usize) -> Vec<Poset> {
    let mut reps: Vec<Poset> = Vec::new();
    for q in naturally_labeled_posets(p) {
        if !reps.iter().any(|r| r.is_isomorphic(&q)) {
            reps.push(q);
        }
    }
    reps
}

pub(crate) fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(b)
        }
    })
}

fn mask_range(start: usize, end: usize) -> u64 {
    let upto = |k: usize| if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
    upto(end) & !upto(start)
}

fn find_cycle(edges: &[u64], start: usize) -> Vec<usize> {
    // BFS from start back to start over the raw edges.
    let n = edges.len();
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for j in bits(edges[start]) {
        if parent[j] == usize::MAX {
            parent[j] = start;
            queue.push_back(j);
        }
    }
    while let Some(v) = queue.pop_front() {
        if v == start {
            break;
        }
        for w in bits(edges[v]) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut cycle = vec![start];
    let mut cur = parent[start];
    while cur != start && cur != usize::MAX {
        cycle.push(cur);
        cur = parent[cur];
    }
    cycle.reverse();
    cycle.rotate_right(1);
    cycle
}
