//! Checking freeness, saturation and separation of a family.
use posat::saturation::{is_saturated, is_saturated_with, CheckConfig, Sampling};
use posat::{Poset, SetFamily};

fn main() -> posat::Result<()> {
    let c2 = Poset::chain(2);
    let bottom = SetFamily::from_lists(3, &[vec![]])?;
    println!("{{∅}} vs C2: {:?}", is_saturated(&bottom, &c2)?);

    let pair = SetFamily::from_lists(3, &[vec![], vec![1, 2, 3]])?;
    println!("{{∅,[3]}} vs C2: {:?}", is_saturated(&pair, &c2)?);

    let a2 = Poset::antichain(2);
    let chain = SetFamily::from_lists(3, &[vec![], vec![1], vec![1, 2], vec![1, 2, 3]])?;
    println!("maximal chain vs A2: {:?}", is_saturated(&chain, &a2)?);

    let sampled = CheckConfig { sample: Some(Sampling { count: 4, seed: 1 }), ..CheckConfig::default() };
    println!("sampled: {:?}", is_saturated_with(&chain, &a2, &sampled)?);

    let unseparated = SetFamily::from_lists(3, &[vec![1, 2], vec![3]])?;
    println!("unseparated pair: {:?}", unseparated.separates());
    Ok(())
}
