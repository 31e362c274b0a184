//! Completing a free family to a saturated one under different scan orders.
use posat::saturation::{greedy_complete, is_saturated, CheckConfig, ScanOrder};
use posat::{Poset, SetFamily};

fn main() -> posat::Result<()> {
    let k22 = Poset::complete_multilayer(&[2, 2])?;
    let cfg = CheckConfig::default();
    for order in [ScanOrder::Ascending, ScanOrder::Descending, ScanOrder::BySize, ScanOrder::Random { seed: 7 }] {
        let f = greedy_complete(&SetFamily::empty(6), &k22, order, &cfg)?;
        println!("{order:?}: {} sets, saturated {}", f.len(), is_saturated(&f, &k22)?.is_saturated());
    }
    Ok(())
}
