//! Seeds for complete multilayer posets and their greedy completions.
use posat::constructions::{klayer_family, klayer_seed};
use posat::saturation::{greedy_complete, CheckConfig, ScanOrder};
use posat::Poset;

fn main() -> posat::Result<()> {
    let (seed, report) = klayer_seed(&[2, 3], 9)?;
    println!("[2,3] seed: {} sets, bound {} ({})", seed.len(), report.size_bound, report.bound_formula);
    let k = Poset::complete_multilayer(&[2, 3])?;
    let full = greedy_complete(&seed, &k, ScanOrder::BySize, &CheckConfig::default())?;
    println!("completed to {} sets", full.len());

    // Interior unit layers are dropped before building.
    let (seed, report) = klayer_family(&[2, 1, 2], 8)?;
    println!("[2,1,2] seed: {} sets, {:?}", seed.len(), report.params);

    // A size-2 middle layer lets a copy through; the builder refuses it.
    if let Err(e) = klayer_seed(&[2, 2, 2], 11) {
        println!("[2,2,2]: {e}");
    }
    Ok(())
}
