pub mod cli;
pub mod constructions;
pub mod embed;
pub mod error;
pub mod family;
pub mod io;
pub mod oracle;
pub mod percolation;
pub mod poset;
pub mod saturation;

pub use embed::{find_induced_copy, Embedding};
pub use error::{Error, Result};
pub use family::{layer, layer_upto, SetFamily, SubsetMask};
pub use percolation::{percolating_family, verify_schedule, PercolationSchedule};
pub use poset::{Poset, SpecialDecomposition};
