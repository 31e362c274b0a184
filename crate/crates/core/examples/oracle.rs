//! Exact minimum sizes by exhaustive search on tiny ground sets.
use std::time::Duration;

use posat::oracle::{all_saturated_of_size, min_percolating, min_saturated, SearchLimits};
use posat::Poset;

fn main() -> posat::Result<()> {
    let limits = SearchLimits { symmetry_reduction: true, ..Default::default() };
    for (name, p) in [("C2", Poset::chain(2)), ("A2", Poset::antichain(2)), ("C3", Poset::chain(3))] {
        let sizes: Vec<usize> = (1..=4).map(|n| min_saturated(&p, n, &limits).map(|r| r.size)).collect::<Result<_, _>>()?;
        println!("sat*({name}) for n = 1..4: {sizes:?}");
    }

    let v2 = Poset::linear_sum(&Poset::antichain(2), &Poset::point())?;
    let r = min_percolating(&v2, 6, &limits)?;
    println!("sat_p(6, V2) = {} exact={} witness {:?}", r.size, r.exact, r.witness.map(|f| f.to_lists()));

    let all = all_saturated_of_size(&Poset::antichain(2), 3, 4, &SearchLimits::default())?;
    println!("{} A2-saturated families of size 4 in Q3", all.len());

    let capped = SearchLimits { time_budget: Some(Duration::from_millis(50)), ..Default::default() };
    let r = min_saturated(&Poset::complete_multilayer(&[2, 2])?, 5, &capped)?;
    println!("K22 at n = 5 within 50ms: size >= {} (exact {})", r.size, r.exact);
    Ok(())
}
