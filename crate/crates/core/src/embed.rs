//! Induced-copy search: the engine behind every checker in the crate.
//!
//! The search assigns poset elements along a linear extension, trying family
//! members in ascending mask order. A candidate for element `e` must be a
//! proper superset of every assigned predecessor's set, a proper subset of
//! every assigned successor's set, and incomparable to the rest. Because
//! members are sorted by mask value and a proper superset always has a larger
//! value, the candidate range is cut down to `(max pred, min succ)` before
//! any pairwise test runs.

use std::fmt;

use crate::error::{Error, Result};
use crate::family::{SetFamily, SubsetMask};
use crate::poset::Poset;

/// Witness of an induced copy: `assignment[i]` is the set playing element `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub assignment: Vec<SubsetMask>,
}

impl Embedding {
    pub fn new(assignment: Vec<SubsetMask>) -> Self {
        Embedding { assignment }
    }

    pub fn image(&self) -> &[SubsetMask] {
        &self.assignment
    }

    pub fn contains(&self, set: SubsetMask) -> bool {
        self.assignment.contains(&set)
    }

    /// Checks injectivity and that strict containment mirrors the poset order
    /// in both directions. Membership is not checked.
    pub fn is_induced_copy_of(&self, poset: &Poset) -> bool {
        let a = &self.assignment;
        if a.len() != poset.size() {
            return false;
        }
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if a[i] == a[j] {
                    return false;
                }
                if a[i].is_proper_subset(a[j]) != poset.lt(i, j)
                    || a[j].is_proper_subset(a[i]) != poset.lt(j, i)
                {
                    return false;
                }
            }
        }
        true
    }

    /// Full re-validation against a family: induced copy with every image set
    /// a member.
    pub fn is_valid_in(&self, family: &SetFamily, poset: &Poset) -> bool {
        self.is_induced_copy_of(poset) && self.assignment.iter().all(|&s| family.contains(s))
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.assignment.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An induced copy of `poset` in `family`, with `must_include` in its image
/// when given. The first copy in canonical order is returned.
pub fn find_induced_copy(
    family: &SetFamily,
    poset: &Poset,
    must_include: Option<SubsetMask>,
) -> Result<Option<Embedding>> {
    if let Some(s) = must_include {
        if !family.contains(s) {
            return Err(Error::NotMember(s));
        }
    }
    Ok(search(family.members(), poset, must_include))
}

/// An induced copy of `poset` in `family ∪ {set}` that uses `set`.
///
/// `set` may or may not already be a member; the family is not cloned.
pub fn find_copy_through(family: &SetFamily, poset: &Poset, set: SubsetMask) -> Option<Embedding> {
    search(family.members(), poset, Some(set))
}

/// Every induced copy of `poset` in `family` (one per distinct assignment).
/// Intended for desk-scale property tests.
pub fn all_induced_copies(family: &SetFamily, poset: &Poset) -> Vec<Embedding> {
    let mut out = Vec::new();
    let mut s = Searcher::new(family.members(), poset, None);
    s.run(&mut |a: &[SubsetMask]| {
        out.push(Embedding::new(a.to_vec()));
        false
    });
    out
}

/// Core search over a sorted member slice. `forced`, when present, is treated
/// as an extra member that must appear in the image.
pub(crate) fn search(
    members: &[SubsetMask],
    poset: &Poset,
    forced: Option<SubsetMask>,
) -> Option<Embedding> {
    let mut found = None;
    let mut s = Searcher::new(members, poset, forced);
    s.run(&mut |a: &[SubsetMask]| {
        found = Some(Embedding::new(a.to_vec()));
        true
    });
    found
}

struct Searcher<'a> {
    members: &'a [SubsetMask],
    poset: &'a Poset,
    forced: Option<SubsetMask>,
    order: Vec<usize>,
    assigned: Vec<Option<SubsetMask>>,
}

impl<'a> Searcher<'a> {
    fn new(members: &'a [SubsetMask], poset: &'a Poset, forced: Option<SubsetMask>) -> Self {
        Searcher {
            members,
            poset,
            forced,
            order: poset.linear_extension(),
            assigned: vec![None; poset.size()],
        }
    }

    /// Runs the search, calling `emit` on each complete assignment until it
    /// returns true. Returns whether `emit` asked to stop.
    fn run(&mut self, emit: &mut dyn FnMut(&[SubsetMask]) -> bool) -> bool {
        match self.forced {
            None => self.extend(0, emit),
            Some(set) => {
                if self.poset.is_empty() {
                    return false;
                }
                let below = self.members.iter().filter(|m| m.is_proper_subset(set)).count();
                let above = self.members.iter().filter(|m| set.is_proper_subset(**m)).count();
                for pos in 0..self.poset.size() {
                    if self.poset.down_degree(pos) > below || self.poset.up_degree(pos) > above {
                        continue;
                    }
                    self.assigned[pos] = Some(set);
                    let stop = self.extend(0, emit);
                    self.assigned[pos] = None;
                    if stop {
                        return true;
                    }
                }
                false
            }
        }
    }

    fn extend(&mut self, depth: usize, emit: &mut dyn FnMut(&[SubsetMask]) -> bool) -> bool {
        let Some(&e) = self.order.get(depth) else {
            let full: Vec<SubsetMask> = self.assigned.iter().map(|a| a.unwrap()).collect();
            return emit(&full);
        };
        if self.assigned[e].is_some() {
            return self.extend(depth + 1, emit);
        }
        // Range of mask values a candidate can take.
        let mut lo: Option<SubsetMask> = None;
        let mut hi: Option<SubsetMask> = None;
        for (f, a) in self.assigned.iter().enumerate() {
            if let Some(s) = *a {
                if self.poset.lt(f, e) {
                    lo = Some(lo.map_or(s, |l| l.max(s)));
                } else if self.poset.lt(e, f) {
                    hi = Some(hi.map_or(s, |h| h.min(s)));
                }
            }
        }
        let start = lo.map_or(0, |l| self.members.partition_point(|m| *m <= l));
        let end = hi.map_or(self.members.len(), |h| self.members.partition_point(|m| *m < h));
        for idx in start..end.max(start) {
            let c = self.members[idx];
            if !self.consistent(e, c) {
                continue;
            }
            self.assigned[e] = Some(c);
            let stop = self.extend(depth + 1, emit);
            self.assigned[e] = None;
            if stop {
                return true;
            }
        }
        false
    }

    #[inline]
    fn consistent(&self, e: usize, c: SubsetMask) -> bool {
        self.assigned.iter().enumerate().all(|(f, a)| match *a {
            None => true,
            Some(s) => {
                if self.poset.lt(f, e) {
                    s.is_proper_subset(c)
                } else if self.poset.lt(e, f) {
                    c.is_proper_subset(s)
                } else {
                    !s.comparable(c)
                }
            }
        })
    }
}
