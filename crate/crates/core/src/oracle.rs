//! Exhaustive search for the smallest saturated and percolating families at
//! tiny ground sizes, and enumeration of every saturated family of a size.
//!
//! Families are enumerated as ascending mask sequences, so the first hit at
//! each size is the lexicographically smallest one no matter how the work is
//! split across threads.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::embed::search;
use crate::error::{Error, Result};
use crate::family::{check_ground, SetFamily, SubsetMask};
use crate::percolation::closure;
use crate::poset::Poset;

pub const SATURATION_GROUND_CAP: u32 = 5;
pub const PERCOLATION_GROUND_CAP: u32 = 8;
pub const PERCOLATION_POSET_CAP: usize = 3;
pub const ENUMERATION_GROUND_CAP: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SearchLimits {
    /// Largest family size tried; `None` means up to `2^n`.
    pub max_candidate_size: Option<usize>,
    pub time_budget: Option<Duration>,
    /// Skip families that are not the smallest image of themselves under a
    /// permutation of the ground set.
    pub symmetry_reduction: bool,
    /// Overrides the per-operation ground cap.
    pub max_ground: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// The minimum when `exact`, otherwise a lower bound.
    pub size: usize,
    pub witness: Option<SetFamily>,
    pub exact: bool,
    /// Search nodes visited per family size, starting at the first size tried.
    pub nodes: Vec<(usize, u64)>,
}

#[derive(Clone, Copy)]
enum Goal {
    Saturated,
    Percolating,
}

struct Search<'a> {
    poset: &'a Poset,
    n: u32,
    /// Candidate members, ascending.
    universe: Vec<SubsetMask>,
    mandatory: Vec<SubsetMask>,
    /// All of `𝒫([n])`, ascending.
    all: Vec<SubsetMask>,
    k: usize,
    goal: Goal,
    symmetry: bool,
    deadline: Option<Instant>,
    aborted: AtomicBool,
    nodes: AtomicU64,
}

impl Search<'_> {
    fn out_of_time(&self) -> bool {
        if self.aborted.load(Ordering::Relaxed) {
            return true;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.aborted.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    /// Whether `universe[j]` can still be covered by a copy drawn from the
    /// chosen sets and everything after `j`.
    fn coverable(&self, chosen: &[SubsetMask], j: usize) -> bool {
        let mut pool = chosen.to_vec();
        pool.extend_from_slice(&self.universe[j + 1..]);
        search(&pool, self.poset, Some(self.universe[j])).is_some()
    }

    fn leaf(&self, chosen: &[SubsetMask]) -> Option<SetFamily> {
        if self.symmetry && self.n <= 6 && !is_canonical(chosen, self.n) {
            return None;
        }
        let family = SetFamily::from_masks(self.n, chosen.iter().chain(&self.mandatory).copied());
        let ok = match self.goal {
            Goal::Saturated => family
                .missing()
                .iter()
                .all(|&s| search(family.members(), self.poset, Some(s)).is_some()),
            Goal::Percolating => closure(&family, self.poset, &self.all).is_power_set(),
        };
        ok.then_some(family)
    }

    /// Depth-first over ascending choices; `visit` returns true to stop.
    fn dfs(
        &self,
        chosen: &mut Vec<SubsetMask>,
        start: usize,
        visit: &mut dyn FnMut(SetFamily) -> bool,
    ) -> bool {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if self.out_of_time() {
            return true;
        }
        if chosen.len() == self.k {
            return match self.leaf(chosen) {
                Some(f) => visit(f),
                None => false,
            };
        }
        let need = self.k - chosen.len();
        if self.universe.len() < start + need {
            return false;
        }
        for i in start..=self.universe.len() - need {
            if i > start {
                if let Goal::Saturated = self.goal {
                    if !self.coverable(chosen, i - 1) {
                        break;
                    }
                }
            }
            let m = self.universe[i];
            if let Goal::Saturated = self.goal {
                if search(chosen, self.poset, Some(m)).is_some() {
                    continue;
                }
            }
            chosen.push(m);
            let stop = self.dfs(chosen, i + 1, visit);
            chosen.pop();
            if stop {
                return true;
            }
        }
        false
    }

    /// First indices worth trying at the root.
    fn roots(&self) -> Vec<usize> {
        if self.k == 0 {
            return Vec::new();
        }
        if self.universe.len() < self.k {
            return Vec::new();
        }
        let mut roots = Vec::new();
        for i in 0..=self.universe.len() - self.k {
            if i > 0 {
                if let Goal::Saturated = self.goal {
                    if !self.coverable(&[], i - 1) {
                        break;
                    }
                }
            }
            // The smallest member of a canonical family is some [j].
            let m = self.universe[i];
            if self.symmetry && m != SubsetMask::full(m.len()) {
                continue;
            }
            if let Goal::Saturated = self.goal {
                if search(&[], self.poset, Some(m)).is_some() {
                    continue;
                }
            }
            roots.push(i);
        }
        roots
    }

    fn first(&self) -> Option<SetFamily> {
        if self.k == 0 {
            let mut found = None;
            self.dfs(&mut Vec::new(), 0, &mut |f| {
                found = Some(f);
                true
            });
            return found;
        }
        self.roots().into_par_iter().find_map_first(|i| {
            let mut found = None;
            let mut chosen = vec![self.universe[i]];
            self.dfs(&mut chosen, i + 1, &mut |f| {
                found = Some(f);
                true
            });
            found
        })
    }

    fn all(&self) -> Vec<SetFamily> {
        if self.k == 0 {
            let mut out = Vec::new();
            self.dfs(&mut Vec::new(), 0, &mut |f| {
                out.push(f);
                false
            });
            return out;
        }
        let per_root: Vec<Vec<SetFamily>> = self
            .roots()
            .into_par_iter()
            .map(|i| {
                let mut out = Vec::new();
                let mut chosen = vec![self.universe[i]];
                self.dfs(&mut chosen, i + 1, &mut |f| {
                    out.push(f);
                    false
                });
                out
            })
            .collect();
        per_root.into_iter().flatten().collect()
    }
}

/// Whether the ascending mask sequence `family` is lexicographically no
/// larger than any of its images under a permutation of `[n]`.
fn is_canonical(family: &[SubsetMask], n: u32) -> bool {
    let mut perm: Vec<u32> = (0..n).collect();
    let mut image = vec![SubsetMask::EMPTY; family.len()];
    loop {
        for (dst, s) in image.iter_mut().zip(family) {
            let mut bits = 0u64;
            for (i, &to) in perm.iter().enumerate() {
                if s.bits() >> i & 1 == 1 {
                    bits |= 1 << to;
                }
            }
            *dst = SubsetMask(bits);
        }
        image.sort_unstable();
        if image.as_slice() < family {
            return false;
        }
        if !next_permutation(&mut perm) {
            return true;
        }
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn ground_cap(n: u32, default: u32, limits: &SearchLimits) -> Result<()> {
    check_ground(n)?;
    let cap = limits.max_ground.unwrap_or(default).min(20);
    if n > cap {
        return Err(Error::Infeasible { n, cap });
    }
    Ok(())
}

fn deepen(
    poset: &Poset,
    n: u32,
    limits: &SearchLimits,
    goal: Goal,
    mandatory: Vec<SubsetMask>,
) -> OracleResult {
    let universe: Vec<SubsetMask> =
        (0..1u64 << n).map(SubsetMask).filter(|s| !mandatory.contains(s)).collect();
    let deadline = limits.time_budget.map(|d| Instant::now() + d);
    let max = limits.max_candidate_size.unwrap_or(1 << n).min(1 << n);
    let mut nodes = Vec::new();
    for total in mandatory.len()..=max {
        let s = Search {
            poset,
            n,
            universe: universe.clone(),
            mandatory: mandatory.clone(),
            all: (0..1u64 << n).map(SubsetMask).collect(),
            k: total - mandatory.len(),
            goal,
            symmetry: limits.symmetry_reduction,
            deadline,
            aborted: AtomicBool::new(false),
            nodes: AtomicU64::new(0),
        };
        let found = s.first();
        nodes.push((total, s.nodes.load(Ordering::Relaxed)));
        if s.aborted.load(Ordering::Relaxed) {
            return OracleResult { size: total, witness: None, exact: false, nodes };
        }
        if let Some(f) = found {
            return OracleResult { size: total, witness: Some(f), exact: true, nodes };
        }
    }
    OracleResult { size: max + 1, witness: None, exact: false, nodes }
}

/// The induced saturation number of `poset` on `[n]` with the smallest
/// witness family. Sizes are tried from 0 upward.
pub fn min_saturated(poset: &Poset, n: u32, limits: &SearchLimits) -> Result<OracleResult> {
    if poset.is_empty() {
        return Err(Error::Empty("poset"));
    }
    ground_cap(n, SATURATION_GROUND_CAP, limits)?;
    Ok(deepen(poset, n, limits, Goal::Saturated, Vec::new()))
}

/// The percolation number of `poset` on `[n]`. `∅` and `[n]` are forced in
/// when the poset lacks a unique minimal or maximal element, since no copy
/// can ever use them.
pub fn min_percolating(poset: &Poset, n: u32, limits: &SearchLimits) -> Result<OracleResult> {
    let (unique_min, unique_max) = poset.unique_extremes()?;
    ground_cap(n, PERCOLATION_GROUND_CAP, limits)?;
    if limits.max_ground.is_none() && poset.size() > PERCOLATION_POSET_CAP && n > 5 {
        return Err(Error::Precondition(format!(
            "percolation search is limited to posets of at most {PERCOLATION_POSET_CAP} elements \
             above n = 5 unless the ground cap is overridden"
        )));
    }
    let mut mandatory = Vec::new();
    if !unique_min {
        mandatory.push(SubsetMask::EMPTY);
    }
    if !unique_max {
        mandatory.push(SubsetMask::full(n));
    }
    Ok(deepen(poset, n, limits, Goal::Percolating, mandatory))
}

/// Every saturated family of exactly `k` members, in ascending order of
/// their member sequences.
pub fn all_saturated_of_size(
    poset: &Poset,
    n: u32,
    k: usize,
    limits: &SearchLimits,
) -> Result<Vec<SetFamily>> {
    if poset.is_empty() {
        return Err(Error::Empty("poset"));
    }
    ground_cap(n, ENUMERATION_GROUND_CAP, limits)?;
    if k > 1 << n {
        return Ok(Vec::new());
    }
    let s = Search {
        poset,
        n,
        universe: (0..1u64 << n).map(SubsetMask).collect(),
        mandatory: Vec::new(),
        all: (0..1u64 << n).map(SubsetMask).collect(),
        k,
        goal: Goal::Saturated,
        symmetry: false,
        deadline: limits.time_budget.map(|d| Instant::now() + d),
        aborted: AtomicBool::new(false),
        nodes: AtomicU64::new(0),
    };
    let out = s.all();
    if s.aborted.load(Ordering::Relaxed) {
        return Err(Error::Precondition("time budget exhausted during enumeration".into()));
    }
    Ok(out)
}

/// Every saturated family on `[n]`, all sizes.
pub fn all_saturated(poset: &Poset, n: u32, limits: &SearchLimits) -> Result<Vec<SetFamily>> {
    let mut out = Vec::new();
    for k in 0..=1usize << n {
        out.extend(all_saturated_of_size(poset, n, k, limits)?);
    }
    Ok(out)
}
