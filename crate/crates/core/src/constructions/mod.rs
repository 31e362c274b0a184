//! Explicit saturated-family constructions and the reports that travel with
//! them.
//!
//! Every builder returns the family together with a [`ConstructionReport`]
//! holding the parameters it derived, the size it reached, the size bound the
//! construction promises at this `n`, and what the checker said about the
//! result.

mod antichain;
mod glued;
mod klayer;
pub(crate) mod special;

pub use antichain::{antichain_params, AntichainParams};
pub use glued::{glued_special_family, glued_special_family_with, GluedComponent, GluedFamily};
pub use klayer::{klayer_family, klayer_lambda, klayer_seed, reduce_unit_layers};
pub use special::{special_family, special_family_on, SpecialLevel};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::poset::Poset;

/// Default largest cube dimension scanned when looking for the smallest
/// `𝒫([m])` that contains a poset.
pub const DEFAULT_SCAN_CAP: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verification {
    /// Certified saturated for the target poset.
    Saturated,
    /// Certified free of the target poset (seeds only promise freeness).
    Free,
    /// Ground too large for an exhaustive check.
    NotChecked { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConstructionParams {
    Special {
        k: u32,
        h: u32,
        levels: Vec<SpecialLevel>,
    },
    Glued {
        h1: u32,
        h2: u32,
        base_family_size: usize,
        upper_seed_size: usize,
        lower_seed_size: usize,
        upper_added: usize,
        lower_added: usize,
        components_certified: bool,
    },
    Klayer {
        sizes: Vec<usize>,
        reduced_sizes: Vec<usize>,
        unit_positions: Vec<usize>,
        layers: Vec<AntichainParams>,
        d: u32,
        lambda: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub ground: u32,
    pub params: ConstructionParams,
    pub size: usize,
    /// The promised size bound evaluated at this ground size.
    pub size_bound: u64,
    pub bound_formula: String,
    pub verification: Verification,
    pub notes: Vec<String>,
}

/// Smallest `m ≤ cap` such that `𝒫([m])` contains an induced copy of `poset`.
pub fn smallest_cube_dimension(poset: &Poset, cap: u32) -> Result<u32> {
    (0..=cap.min(20))
        .find(|&m| crate::saturation::find_copy(&SetFamily::power_set(m), poset).is_some())
        .ok_or(Error::ScanCap(cap))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_dimensions() {
        assert_eq!(smallest_cube_dimension(&Poset::point(), 4).unwrap(), 0);
        assert_eq!(smallest_cube_dimension(&Poset::antichain(2), 4).unwrap(), 2);
        assert_eq!(smallest_cube_dimension(&Poset::chain(3), 4).unwrap(), 2);
        let lambda2 = Poset::complete_multilayer(&[2, 1]).unwrap();
        assert_eq!(smallest_cube_dimension(&lambda2, 4).unwrap(), 2);
        // First butterfly: {1},{2} below {1,2,3},{1,2,4}.
        let k22 = Poset::complete_multilayer(&[2, 2]).unwrap();
        assert_eq!(smallest_cube_dimension(&k22, 5).unwrap(), 4);
        assert!(matches!(smallest_cube_dimension(&Poset::antichain(7), 3), Err(Error::ScanCap(3))));
    }
}
