//! Percolating families: the canonical copy, a complete schedule adding every
//! set of `𝒫([n])` with a witness copy, schedule replay, and the closure
//! fixpoint.

use std::fmt;

use rayon::prelude::*;

use crate::embed::{search, Embedding};
use crate::error::{Error, Result};
use crate::family::{check_ground, subsets_of, SetFamily, SubsetMask};
use crate::poset::Poset;
use crate::saturation::{CheckConfig, ScanOrder};

/// An initial family plus an ordered list of additions, each with a copy of
/// the poset that uses the added set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PercolationSchedule {
    pub poset: Poset,
    pub ground: u32,
    pub initial: SetFamily,
    pub steps: Vec<(SubsetMask, Embedding)>,
}

impl PercolationSchedule {
    /// The family after all steps.
    pub fn final_family(&self) -> SetFamily {
        let mut f = self.initial.clone();
        for (s, _) in &self.steps {
            f.insert(*s);
        }
        f
    }
}

/// Why a schedule failed replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScheduleFault {
    /// The initial family lives on a different ground.
    Ground { expected: u32, found: u32 },
    /// Step `index` is invalid.
    Step { index: usize, reason: String },
    /// Every step replays but some sets are never reached.
    Incomplete { missing: usize, first: SubsetMask },
}

impl fmt::Display for ScheduleFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleFault::Ground { expected, found } => {
                write!(f, "initial family has ground {found}, schedule says {expected}")
            }
            ScheduleFault::Step { index, reason } => write!(f, "step {index}: {reason}"),
            ScheduleFault::Incomplete { missing, first } => {
                write!(f, "{missing} sets never added (first {first})")
            }
        }
    }
}

/// `X_j = {x_i : p_i ≤ p_j}` on the sorted points `x_1 < … < x_p` (1-based),
/// with the order taken reflexively.
pub fn canonical_copy(poset: &Poset, points: &[u32]) -> Result<Vec<SubsetMask>> {
    if points.len() != poset.size() {
        return Err(Error::Precondition(format!(
            "canonical copy needs {} points, got {}",
            poset.size(),
            points.len()
        )));
    }
    if points.windows(2).any(|w| w[0] >= w[1]) || points.first().is_some_and(|&x| x == 0) {
        return Err(Error::Precondition(format!(
            "points {points:?} must be distinct, sorted and 1-based"
        )));
    }
    Ok(copy_on(poset, points))
}

/// Element `i` gets point `pts[i]`.
fn copy_on(poset: &Poset, pts: &[u32]) -> Vec<SubsetMask> {
    (0..poset.size())
        .map(|j| {
            let mut s = SubsetMask::singleton(pts[j]);
            for i in 0..poset.size() {
                if poset.lt(i, j) {
                    s = s.union(SubsetMask::singleton(pts[i]));
                }
            }
            s
        })
        .collect()
}

/// Complements inside the point set of the canonical copy of the dual: every
/// maximal element `j` gets the point set minus `pts[j]`.
fn cocopy_on(poset: &Poset, pts: &[u32]) -> Vec<SubsetMask> {
    let all = pts.iter().fold(SubsetMask::EMPTY, |m, &x| m.union(SubsetMask::singleton(x)));
    (0..poset.size())
        .map(|j| {
            let mut d = SubsetMask::singleton(pts[j]);
            for i in 0..poset.size() {
                if poset.lt(j, i) {
                    d = d.union(SubsetMask::singleton(pts[i]));
                }
            }
            all.difference(d)
        })
        .collect()
}

/// Size of the smallest percolating family once `n ≥ 3p−1`: `p+1` with
/// neither unique extreme, `p−1` with both, `p` otherwise.
pub fn percolation_number(poset: &Poset) -> Result<usize> {
    let (min, max) = poset.unique_extremes()?;
    let p = poset.size();
    Ok(match (min, max) {
        (true, true) => p - 1,
        (false, false) => p + 1,
        _ => p,
    })
}

struct Builder<'a> {
    poset: &'a Poset,
    n: u32,
    present: Vec<bool>,
    steps: Vec<(SubsetMask, Embedding)>,
    /// Elements listed so that everything above an element comes first.
    top_down: Vec<usize>,
}

impl Builder<'_> {
    fn has(&self, s: SubsetMask) -> bool {
        self.present[s.bits() as usize]
    }

    fn add(&mut self, set: SubsetMask, witness: Vec<SubsetMask>, phase: &str) -> Result<()> {
        if self.has(set) {
            return Ok(());
        }
        let w = Embedding::new(witness);
        let ok = w.is_induced_copy_of(self.poset)
            && w.contains(set)
            && w.image().iter().all(|&s| s == set || self.has(s));
        if !ok {
            return Err(Error::Certification(format!(
                "phase {phase}: witness {w} does not certify adding {set}"
            )));
        }
        self.present[set.bits() as usize] = true;
        self.steps.push((set, w));
        Ok(())
    }

    /// Adds `extra ∪ base[j]` for every element, top level first; the witness
    /// lifts the whole up-set of `j` by `extra`.
    fn lift(&mut self, base: &[SubsetMask], extra: SubsetMask, phase: &str) -> Result<()> {
        for idx in 0..self.top_down.len() {
            let j = self.top_down[idx];
            let witness: Vec<SubsetMask> = (0..base.len())
                .map(|i| {
                    if i == j || self.poset.lt(j, i) {
                        base[i].union(extra)
                    } else {
                        base[i]
                    }
                })
                .collect();
            self.add(base[j].union(extra), witness, phase)?;
        }
        Ok(())
    }

    /// Adds `set` in place of the minimal element `k`, lifting the sets above
    /// `k` by `set`.
    fn substitute(&mut self, base: &[SubsetMask], k: usize, set: SubsetMask, phase: &str) -> Result<()> {
        let witness: Vec<SubsetMask> = (0..base.len())
            .map(|i| {
                if i == k {
                    set
                } else if self.poset.lt(k, i) {
                    base[i].union(set)
                } else {
                    base[i]
                }
            })
            .collect();
        self.add(set, witness, phase)
    }

    /// Points for a co-copy whose first maximal element is missing `special`.
    fn cocopy_points(&self, special: u32, others: &[u32]) -> Vec<u32> {
        let j = self.poset.maximal_elements()[0];
        let mut rest = others.iter().copied();
        (0..self.poset.size())
            .map(|i| if i == j { special } else { rest.next().unwrap() })
            .collect()
    }
}

/// The percolating family of minimum size and a full schedule for it.
/// Requires `n ≥ 3p − 1`.
pub fn percolating_family(poset: &Poset, n: u32) -> Result<PercolationSchedule> {
    percolating_family_with(poset, n, &CheckConfig::default())
}

pub fn percolating_family_with(
    poset: &Poset,
    n: u32,
    config: &CheckConfig,
) -> Result<PercolationSchedule> {
    check_ground(n)?;
    if poset.is_empty() {
        return Err(Error::Empty("poset"));
    }
    let p = poset.size() as u32;
    if n < 3 * p - 1 {
        return Err(Error::Precondition(format!("n = {n} is below 3p-1 = {}", 3 * p - 1)));
    }
    config.check(n)?;
    let (unique_min, unique_max) = poset.unique_extremes()?;
    let full = SubsetMask::full(n);
    let low = SubsetMask::full(p);
    let high = SubsetMask::interval(p + 1, n);

    let low_pts: Vec<u32> = (1..=p).collect();
    let copy = copy_on(poset, &low_pts);
    let mut initial: Vec<SubsetMask> = copy[1..].to_vec();
    if !unique_min {
        initial.push(SubsetMask::EMPTY);
    }
    if !unique_max {
        initial.push(full);
    }
    let initial = SetFamily::from_masks(n, initial);

    let mut top_down = poset.linear_extension();
    top_down.reverse();
    let mut b = Builder { poset, n, present: vec![false; 1 << n], steps: Vec::new(), top_down };
    for s in initial.iter() {
        b.present[s.bits() as usize] = true;
    }
    let k = poset.minimal_elements()[0];

    // 0: complete the canonical copy.
    b.add(copy[0], copy.clone(), "0")?;

    // 1, 2: everything meeting the high part, then the high subsets alone.
    let high_sets: Vec<SubsetMask> = subsets_of(high).filter(|s| !s.is_empty()).collect();
    for &a in &high_sets {
        b.lift(&copy, a, "1")?;
    }
    for &a in &high_sets {
        b.substitute(&copy, k, a, "2")?;
    }

    // 3: the same with a copy on {p+1..2p}, reaching all of 𝒫([p]).
    let mid_pts: Vec<u32> = (p + 1..=2 * p).collect();
    let mid = copy_on(poset, &mid_pts);
    let low_sets: Vec<SubsetMask> = subsets_of(low).filter(|s| !s.is_empty()).collect();
    for &x in &low_sets {
        b.lift(&mid, x, "3")?;
    }
    for &x in &low_sets {
        b.substitute(&mid, k, x, "3")?;
    }

    let mixed: Vec<(SubsetMask, SubsetMask)> = (1..full.bits())
        .map(SubsetMask)
        .map(|s| (s.intersection(high), s.intersection(low)))
        .filter(|(a, x)| !a.is_empty() && !x.is_empty())
        .collect();

    // 4a: small high part.
    for &(a, x) in &mixed {
        if a.len() > p - 1 || b.has(a.union(x)) {
            continue;
        }
        let pts: Vec<u32> = high.difference(a).elements().into_iter().take(p as usize).collect();
        let t = pts[k];
        let base: Vec<SubsetMask> = copy_on(poset, &pts)
            .into_iter()
            .map(|c| if c.contains(t) { c.difference(SubsetMask::singleton(t)).union(a) } else { c })
            .collect();
        b.lift(&base, x, "4a")?;
    }

    // With a unique minimum the co-copy would use ∅, which is not yet
    // available; a shared extra point keeps every set non-empty.
    // 4b: large high part, not all of it.
    for &(a, x) in &mixed {
        if a.len() < p || a == high || b.has(a.union(x)) {
            continue;
        }
        let l = high.difference(a).elements()[0];
        let a_pts = a.elements();
        let pts = b.cocopy_points(l, &a_pts[..p as usize - 1]);
        let shift =
            if unique_min { SubsetMask::singleton(a_pts[p as usize - 1]) } else { SubsetMask::EMPTY };
        let j = poset.maximal_elements()[0];
        let mut witness: Vec<SubsetMask> =
            cocopy_on(poset, &pts).into_iter().map(|y| y.union(shift)).collect();
        witness[j] = a.union(x);
        b.add(a.union(x), witness, "4b")?;
    }

    // 4c: the whole high part with a proper part of [p].
    for &(a, x) in &mixed {
        if a != high || b.has(a.union(x)) {
            continue;
        }
        let kk = low.difference(x).elements()[0];
        let others: Vec<u32> = (p + 1..2 * p).collect();
        let pts = b.cocopy_points(kk, &others);
        let shift = if unique_min { SubsetMask::singleton(2 * p) } else { SubsetMask::EMPTY };
        let j = poset.maximal_elements()[0];
        let mut witness: Vec<SubsetMask> =
            cocopy_on(poset, &pts).into_iter().map(|y| y.union(shift)).collect();
        witness[j] = a.union(x);
        b.add(a.union(x), witness, "4c")?;
    }

    // 5: the extremes, replacing the unique minimum or maximum.
    if unique_min {
        let mut w = copy.clone();
        w[k] = SubsetMask::EMPTY;
        b.add(SubsetMask::EMPTY, w, "5")?;
    }
    if unique_max {
        let top = poset.maximal_elements()[0];
        let mut w = copy.clone();
        w[top] = full;
        b.add(full, w, "5")?;
    }

    let schedule =
        PercolationSchedule { poset: poset.clone(), ground: b.n, initial, steps: b.steps };
    if let Err(fault) = verify_schedule(&schedule) {
        return Err(Error::Certification(format!("generated schedule fails replay: {fault}")));
    }
    Ok(schedule)
}

/// Replays a schedule. Witnesses are re-validated in parallel against the
/// prefix they may use; the first failing index is reported.
pub fn verify_schedule(s: &PercolationSchedule) -> std::result::Result<(), ScheduleFault> {
    let n = s.ground;
    if s.initial.ground() != n {
        return Err(ScheduleFault::Ground { expected: n, found: s.initial.ground() });
    }
    // Index at which each set became available: 0 for initial members.
    let mut added_at: std::collections::HashMap<SubsetMask, usize> =
        s.initial.iter().map(|m| (m, 0)).collect();
    let mut first_bad: Option<ScheduleFault> = None;
    for (i, (set, _)) in s.steps.iter().enumerate() {
        let reason = if !set.fits(n) {
            Some(format!("{set} is outside [{n}]"))
        } else if s.initial.contains(*set) {
            Some(format!("{set} is already in the initial family"))
        } else if added_at.contains_key(set) {
            Some(format!("{set} is added twice"))
        } else {
            None
        };
        if let Some(reason) = reason {
            first_bad = Some(ScheduleFault::Step { index: i, reason });
            break;
        }
        added_at.insert(*set, i + 1);
    }
    let limit = match &first_bad {
        Some(ScheduleFault::Step { index, .. }) => *index,
        _ => s.steps.len(),
    };
    let witness_fault = s.steps[..limit].par_iter().enumerate().find_first(|(i, (set, w))| {
        !w.is_induced_copy_of(&s.poset)
            || !w.contains(*set)
            || w.image().iter().any(|m| m != set && added_at.get(m).map_or(true, |&at| at > *i))
    });
    if let Some((i, (set, w))) = witness_fault {
        let reason = if !w.is_induced_copy_of(&s.poset) {
            format!("witness {w} is not an induced copy")
        } else if !w.contains(*set) {
            format!("witness {w} does not use {set}")
        } else {
            format!("witness {w} uses a set not yet in the family")
        };
        return Err(ScheduleFault::Step { index: i, reason });
    }
    if let Some(f) = first_bad {
        return Err(f);
    }
    let total = 1u64 << n;
    let reached = added_at.len() as u64;
    if reached != total {
        let first = (0..total).map(SubsetMask).find(|m| !added_at.contains_key(m)).unwrap();
        return Err(ScheduleFault::Incomplete { missing: (total - reached) as usize, first });
    }
    Ok(())
}

/// Least family containing `family` that is closed under adding any set
/// completing a copy through itself. Sets are tried in `order`, pass after
/// pass, until nothing changes.
pub fn percolation_closure(
    family: &SetFamily,
    poset: &Poset,
    order: ScanOrder,
    config: &CheckConfig,
) -> Result<SetFamily> {
    config.check(family.ground())?;
    Ok(closure(family, poset, &order.sets(family.ground())))
}

pub(crate) fn closure(family: &SetFamily, poset: &Poset, order: &[SubsetMask]) -> SetFamily {
    let mut f = family.clone();
    if poset.is_empty() {
        return f;
    }
    loop {
        let mut changed = false;
        for &s in order {
            if !f.contains(s) && search(f.members(), poset, Some(s)).is_some() {
                f.insert(s);
                changed = true;
            }
        }
        if !changed {
            return f;
        }
    }
}

/// Whether `family` percolates to all of `𝒫([n])`.
pub fn percolates(family: &SetFamily, poset: &Poset, config: &CheckConfig) -> Result<bool> {
    Ok(percolation_closure(family, poset, ScanOrder::Ascending, config)?.is_power_set())
}
