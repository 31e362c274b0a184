use super::{antichain_params, AntichainParams, ConstructionParams, ConstructionReport, Verification};
use crate::error::{Error, Result};
use crate::family::{binomial, check_ground, k_subsets_of, SetFamily, SubsetMask};
use crate::poset::Poset;
use crate::saturation::find_copy;

/// Drops interior unit layers, returning the reduced sizes and the original
/// positions of the dropped units.
pub fn reduce_unit_layers(sizes: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    if sizes.is_empty() {
        return Err(Error::InvalidLayers("no layers".into()));
    }
    if let Some(i) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::InvalidLayers(format!("layer {i} has size 0")));
    }
    if let Some(i) = sizes.windows(2).position(|w| w[0] == 1 && w[1] == 1) {
        return Err(Error::InvalidLayers(format!(
            "adjacent unit layers at positions {i} and {}",
            i + 1
        )));
    }
    if sizes[0] == 1 || sizes[sizes.len() - 1] == 1 {
        return Err(Error::InvalidLayers("end unit layer".into()));
    }
    let positions: Vec<usize> = (0..sizes.len()).filter(|&i| sizes[i] == 1).collect();
    let reduced = sizes.iter().copied().filter(|&s| s != 1).collect();
    Ok((reduced, positions))
}

/// `(d, λ)` for the given per-layer parameters.
pub fn klayer_lambda(layers: &[AntichainParams]) -> (u32, u64) {
    let d = layers.iter().map(AntichainParams::span).sum::<u32>() - 1;
    let mut offset = 0u32;
    let mut lambda = 0u64;
    for p in layers {
        let term = (p.m as u64 - 1)
            .saturating_mul(binomial(d as u64, offset as u64))
            .saturating_mul(binomial((d - offset) as u64, (p.span() - 1) as u64));
        lambda = lambda.saturating_add(term);
        offset += p.span();
    }
    (d, lambda)
}

/// The free seed `ℱ₁ ∪ ℱ₂` for `K_{sizes}`: full layers of a low copy of
/// `Q_d` plus complements of the mirrored layers. Every size must be at
/// least 2 and `n ≥ 2d + 1`.
pub fn klayer_seed(sizes: &[usize], n: u32) -> Result<(SetFamily, ConstructionReport)> {
    check_ground(n)?;
    if sizes.is_empty() {
        return Err(Error::InvalidLayers("no layers".into()));
    }
    if let Some(i) = sizes.iter().position(|&s| s < 2) {
        return Err(Error::InvalidLayers(format!(
            "layer {i} has size {}; the seed needs every layer of size at least 2",
            sizes[i]
        )));
    }
    let layers: Vec<AntichainParams> =
        sizes.iter().map(|&m| antichain_params(m)).collect::<Result<_>>()?;
    let (d, lambda) = klayer_lambda(&layers);
    if n < 2 * d + 1 {
        return Err(Error::Precondition(format!("n = {n} is below 2d+1 = {}", 2 * d + 1)));
    }
    let cube = SubsetMask::full(d);
    let k = layers.len();

    let mut members = Vec::new();
    let mut offset = 0;
    for p in &layers[..k - 1] {
        members.extend(k_subsets_of(cube, offset + p.h));
        offset += p.span();
    }
    let mut offset = 0;
    for p in layers[1..].iter().rev() {
        members.extend(k_subsets_of(cube, offset + p.h).map(|a| a.complement(n)));
        offset += p.span();
    }
    let family = SetFamily::from_masks(n, members);

    let target = Poset::complete_multilayer(sizes)?;
    if let Some(copy) = find_copy(&family, &target) {
        return Err(Error::Certification(format!("seed contains an induced copy {copy}")));
    }
    let mut notes = Vec::new();
    if layers.iter().any(|p| p.patched) {
        notes.push("size-2 layers use patched width parameters (w,h,x) = (2,1,1)".into());
    }
    let report = ConstructionReport {
        ground: n,
        size: family.len(),
        size_bound: lambda.saturating_mul(n as u64 - 1).saturating_add(2),
        bound_formula: "lambda*(n-1)+2 for any saturated completion".into(),
        params: ConstructionParams::Klayer {
            sizes: sizes.to_vec(),
            reduced_sizes: sizes.to_vec(),
            unit_positions: Vec::new(),
            layers,
            d,
            lambda,
        },
        verification: Verification::Free,
        notes,
    };
    Ok((family, report))
}

/// Seed for a complete poset that may have isolated interior unit layers:
/// the units are dropped, the seed is built for the reduced sizes, and the
/// report records where the units were.
pub fn klayer_family(sizes: &[usize], n: u32) -> Result<(SetFamily, ConstructionReport)> {
    let (reduced, positions) = reduce_unit_layers(sizes)?;
    let (family, mut report) = klayer_seed(&reduced, n)?;
    if let ConstructionParams::Klayer { sizes: s, unit_positions, .. } = &mut report.params {
        *s = sizes.to_vec();
        *unit_positions = positions;
    }
    Ok((family, report))
}
