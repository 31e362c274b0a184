//! Percolating families, their schedules, and replaying a schedule.
use posat::percolation::{percolation_closure, percolation_number};
use posat::saturation::{CheckConfig, ScanOrder};
use posat::{percolating_family, verify_schedule, Poset, SubsetMask};

fn main() -> posat::Result<()> {
    let v2 = Poset::linear_sum(&Poset::antichain(2), &Poset::point())?;
    let s = percolating_family(&v2, 8)?;
    println!("V2: number {}, initial {:?}", percolation_number(&v2)?, s.initial.to_lists());
    println!("{} steps, replay {:?}", s.steps.len(), verify_schedule(&s));
    let (set, w) = &s.steps[0];
    println!("first step adds {set} via {w}");

    let closed = percolation_closure(&s.initial, &v2, ScanOrder::Random { seed: 3 }, &CheckConfig::default())?;
    println!("closure is everything: {}", closed.is_power_set());

    // Tamper with a witness.
    let mut bad = s.clone();
    bad.steps[5].1 = posat::Embedding::new(vec![SubsetMask::EMPTY; 3]);
    println!("tampered: {}", verify_schedule(&bad).unwrap_err());
    Ok(())
}
