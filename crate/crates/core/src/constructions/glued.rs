use super::special::special_family_on;
use super::{smallest_cube_dimension, ConstructionParams, ConstructionReport, Verification};
use super::DEFAULT_SCAN_CAP;
use crate::error::{Error, Result};
use crate::family::{binomial, check_ground, k_subsets_of, subsets_of, SetFamily, SubsetMask};
use crate::poset::Poset;
use crate::saturation::{is_saturated_with, CheckConfig, SaturationVerdict};

/// One of the saturated pieces hung above (or, complemented, below) the
/// base family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedComponent {
    /// The base-layer set the piece sits on (`A` above, `B` below).
    pub anchor: SubsetMask,
    /// `Ā ∪ {h₁+h₂, …, n}`: the ground the piece is saturated on.
    pub ground: SubsetMask,
    /// The piece itself, as sets inside `ground`.
    pub family: SetFamily,
}

#[derive(Clone, Debug)]
pub struct GluedFamily {
    pub family: SetFamily,
    pub report: ConstructionReport,
    /// Pieces `F_A`, saturated for the top poset.
    pub upper: Vec<GluedComponent>,
    /// Pieces for the lower side, saturated for the dual of the bottom poset.
    pub lower: Vec<GluedComponent>,
    pub target: Poset,
}

/// A saturated family for `linear_sum(top, bottom)` where both inputs are
/// special, built from the base family
/// `C([h₁+h₂−1], ≤h₁) ∪ {[n]∖A : A ∈ C([h₁+h₂−1], ≤h₂)}` by hanging a
/// saturated piece above every `h₁`-set of the base cube and, mirrored
/// through complements, below every `h₂`-set.
pub fn glued_special_family(bottom: &Poset, top: &Poset, n: u32) -> Result<GluedFamily> {
    glued_special_family_with(bottom, top, n, &CheckConfig::default())
}

pub fn glued_special_family_with(
    bottom: &Poset,
    top: &Poset,
    n: u32,
    config: &CheckConfig,
) -> Result<GluedFamily> {
    check_ground(n)?;
    if !bottom.is_special() || !top.is_special() {
        return Err(Error::NotSpecial);
    }
    let h1 = smallest_cube_dimension(&Poset::linear_sum(&Poset::point(), bottom)?, DEFAULT_SCAN_CAP)?;
    let h2 =
        smallest_cube_dimension(&Poset::linear_sum(&Poset::point(), &top.dual())?, DEFAULT_SCAN_CAP)?;
    if n < 2 * (h1 + h2) {
        return Err(Error::Precondition(format!(
            "n = {n} is below 2(h1+h2) = {}",
            2 * (h1 + h2)
        )));
    }
    let base = SubsetMask::full(h1 + h2 - 1);
    let tail = SubsetMask::interval(h1 + h2, n);

    let mut members: Vec<SubsetMask> = Vec::new();
    for j in 0..=h1 {
        members.extend(k_subsets_of(base, j));
    }
    for j in 0..=h2 {
        members.extend(k_subsets_of(base, j).map(|a| a.complement(n)));
    }
    let base_family = SetFamily::from_masks(n, members);

    let upper_seed = special_family_on(top, n, tail)?;
    let lower_poset = bottom.dual();
    let lower_seed = special_family_on(&lower_poset, n, tail)?;

    let piece = |seed: &SetFamily, anchor: SubsetMask| -> GluedComponent {
        let rest = base.difference(anchor);
        let lifted = subsets_of(rest).map(|x| x.union(tail));
        GluedComponent {
            anchor,
            ground: rest.union(tail),
            family: SetFamily::from_masks(n, seed.iter().chain(lifted)),
        }
    };
    let upper: Vec<GluedComponent> =
        k_subsets_of(base, h1).map(|a| piece(&upper_seed, a)).collect();
    let lower: Vec<GluedComponent> =
        k_subsets_of(base, h2).map(|b| piece(&lower_seed, b)).collect();

    let mut family = base_family.clone();
    let before_upper = family.len();
    for c in &upper {
        for f in c.family.iter() {
            family.insert(c.anchor.union(f));
        }
    }
    let upper_added = family.len() - before_upper;
    let before_lower = family.len();
    for c in &lower {
        for f in c.family.iter() {
            family.insert(c.anchor.union(f).complement(n));
        }
    }
    let lower_added = family.len() - before_lower;

    let target = Poset::linear_sum(top, bottom)?;
    let (verification, components_certified) = if config.check(n).is_ok() {
        for (side, comps, poset) in [("upper", &upper, top), ("lower", &lower, &lower_poset)] {
            for c in comps.iter() {
                let local = c.family.compress(c.ground);
                if !is_saturated_with(&local, poset, config)?.is_saturated() {
                    return Err(Error::Certification(format!(
                        "{side} piece over {} is not saturated on its ground {}",
                        c.anchor, c.ground
                    )));
                }
            }
        }
        match is_saturated_with(&family, &target, config)? {
            SaturationVerdict::Saturated => (Verification::Saturated, true),
            other => {
                return Err(Error::Certification(format!(
                    "glued family on [{n}] is not saturated: {other:?}"
                )))
            }
        }
    } else {
        (Verification::NotChecked { reason: format!("ground {n} above exhaustive cap") }, false)
    };

    let w = (h1 + h2 - 1) as u64;
    let size_bound = base_family.len() as u64
        + binomial(w, h1 as u64) * ((1u64 << (h2 - 1)) + upper_seed.len() as u64)
        + binomial(w, h2 as u64) * ((1u64 << (h1 - 1)) + lower_seed.len() as u64);
    let report = ConstructionReport {
        ground: n,
        size: family.len(),
        size_bound,
        bound_formula: "|F1| + C(h1+h2-1,h1)(2^(h2-1)+|F0 top|) + C(h1+h2-1,h2)(2^(h1-1)+|F0 bottom|)"
            .into(),
        params: ConstructionParams::Glued {
            h1,
            h2,
            base_family_size: base_family.len(),
            upper_seed_size: upper_seed.len(),
            lower_seed_size: lower_seed.len(),
            upper_added,
            lower_added,
            components_certified,
        },
        verification,
        notes: vec![
            "pieces use the recursive special family as their seed, not a minimum one".into(),
        ],
    };
    Ok(GluedFamily { family, report, upper, lower, target })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_special() {
        let v2 = Poset::complete_multilayer(&[1, 2]).unwrap();
        let a2 = Poset::antichain(2);
        assert!(matches!(glued_special_family(&v2, &a2, 8), Err(Error::NotSpecial)));
        assert!(matches!(glued_special_family(&a2, &v2, 8), Err(Error::NotSpecial)));
    }

    #[test]
    fn rejects_small_ground() {
        let a2 = Poset::antichain(2);
        assert!(matches!(glued_special_family(&a2, &a2, 7), Err(Error::Precondition(_))));
    }

    #[test]
    fn antichain_pair_base_family() {
        let a2 = Poset::antichain(2);
        let g = glued_special_family(&a2, &a2, 8).unwrap();
        match g.report.params {
            ConstructionParams::Glued { h1, h2, base_family_size, .. } => {
                assert_eq!((h1, h2, base_family_size), (2, 2, 14));
            }
            ref other => panic!("{other:?}"),
        }
        assert_eq!(g.upper.len(), 3);
        assert_eq!(g.lower.len(), 3);
        assert_eq!(g.report.verification, Verification::Saturated);
        assert!(g.report.size as u64 <= g.report.size_bound);
    }
}
