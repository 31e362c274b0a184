use serde::Serialize;

use super::{smallest_cube_dimension, ConstructionParams, ConstructionReport, Verification};
use super::DEFAULT_SCAN_CAP;
use crate::error::{Error, Result};
use crate::family::{check_ground, subsets_of, SetFamily, SubsetMask};
use crate::poset::{bits, Poset};
use crate::saturation::{is_saturated_with, CheckConfig, SaturationVerdict};

/// One level of the recursion, outermost first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialLevel {
    /// Number of ground points this level's family lives on.
    pub ground_size: u32,
    pub size: usize,
    /// `2^k + size(next level)`, absent for the base level.
    pub recursion_bound: Option<u64>,
}

/// The recursive saturated family for a special poset on `[n]`, certified by
/// the checker when `n` is within the exhaustive cap.
pub fn special_family(poset: &Poset, n: u32) -> Result<(SetFamily, ConstructionReport)> {
    special_family_checked(poset, n, &CheckConfig::default())
}

pub(crate) fn special_family_checked(
    poset: &Poset,
    n: u32,
    config: &CheckConfig,
) -> Result<(SetFamily, ConstructionReport)> {
    check_ground(n)?;
    let (family, k, h, levels) = build(poset, n, SubsetMask::full(n))?;
    let verification = if config.check(n).is_ok() {
        match is_saturated_with(&family, poset, config)? {
            SaturationVerdict::Saturated => Verification::Saturated,
            other => {
                return Err(Error::Certification(format!(
                    "recursive special family on [{n}] is not saturated: {other:?}"
                )))
            }
        }
    } else {
        Verification::NotChecked { reason: format!("ground {n} above exhaustive cap") }
    };
    let size_bound = levels.first().and_then(|l| l.recursion_bound).unwrap_or(family.len() as u64);
    let report = ConstructionReport {
        ground: n,
        size: family.len(),
        size_bound,
        bound_formula: "2^k + size(n-k-1)".into(),
        params: ConstructionParams::Special { k, h, levels },
        verification,
        notes: Vec::new(),
    };
    Ok((family, report))
}

/// The same recursion on an arbitrary set of ground points inside `[n]`,
/// without certification.
pub fn special_family_on(poset: &Poset, n: u32, points: SubsetMask) -> Result<SetFamily> {
    check_ground(n)?;
    Ok(build(poset, n, points)?.0)
}

fn build(
    poset: &Poset,
    n: u32,
    points: SubsetMask,
) -> Result<(SetFamily, u32, u32, Vec<SpecialLevel>)> {
    let decomposition = poset.decompose_special().ok_or(Error::NotSpecial)?;
    let core = decomposition.core(poset);
    let k = smallest_cube_dimension(&core, DEFAULT_SCAN_CAP)?;
    let h = k + 2;

    // Split the points into blocks of k+1 while at least h remain.
    let pts: Vec<usize> = bits(points.bits()).collect();
    let block = (k + 1) as usize;
    let mut blocks: Vec<SubsetMask> = Vec::new();
    let mut rest = &pts[..];
    while rest.len() >= h as usize {
        let (head, tail) = rest.split_at(block);
        blocks.push(SubsetMask(head.iter().fold(0, |m, &b| m | 1 << b)));
        rest = tail;
    }
    let residual = SubsetMask(rest.iter().fold(0, |m, &b| m | 1 << b));

    let mut family = SetFamily::power_set_of(n, residual);
    let mut levels = vec![SpecialLevel {
        ground_size: residual.len(),
        size: family.len(),
        recursion_bound: None,
    }];
    let mut ground_size = residual.len();
    for &b in blocks.iter().rev() {
        let inner_size = family.len();
        let lifted = family.iter().map(|a| a.union(b));
        family = SetFamily::from_masks(n, subsets_of(b).chain(lifted));
        ground_size += b.len();
        levels.push(SpecialLevel {
            ground_size,
            size: family.len(),
            recursion_bound: Some((1u64 << k) + inner_size as u64),
        });
    }
    levels.reverse();
    Ok((family, k, h, levels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_recursion() {
        let a2 = Poset::antichain(2);
        let (f, report) = special_family(&a2, 4).unwrap();
        assert_eq!(report.verification, Verification::Saturated);
        match &report.params {
            ConstructionParams::Special { k, h, levels } => {
                assert_eq!((*k, *h), (0, 2));
                assert_eq!(levels.len(), 4);
                assert_eq!(levels.last().unwrap().ground_size, 1);
            }
            other => panic!("{other:?}"),
        }
        // For the 2-antichain the recursion yields a maximal chain.
        assert_eq!(f.to_lists(), vec![vec![], vec![1], vec![1, 2], vec![1, 2, 3], vec![1, 2, 3, 4]]);
    }

    #[test]
    fn tiny_ground_is_full_power_set() {
        let (f, report) = special_family(&Poset::antichain(2), 1).unwrap();
        assert!(f.is_power_set());
        assert_eq!(report.verification, Verification::Saturated);
        let (f, _) = special_family(&Poset::antichain(2), 0).unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn non_special_rejected() {
        let v2 = Poset::complete_multilayer(&[1, 2]).unwrap();
        assert!(matches!(special_family(&v2, 4), Err(Error::NotSpecial)));
    }

    #[test]
    fn custom_points() {
        let pts = SubsetMask::from_elements(&[3, 5]);
        let f = special_family_on(&Poset::antichain(2), 6, pts).unwrap();
        assert_eq!(f.to_lists(), vec![vec![], vec![3], vec![3, 5]]);
    }
}
