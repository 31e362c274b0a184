//! Finding induced copies of a poset inside a family of sets.
use posat::embed::find_copy_through;
use posat::{find_induced_copy, layer_upto, Poset, SetFamily, SubsetMask};

fn main() -> posat::Result<()> {
    let k22 = Poset::complete_multilayer(&[2, 2])?;

    // Q3 has no induced butterfly, Q4 does.
    for n in [3, 4] {
        let cube = SetFamily::power_set(n);
        match find_induced_copy(&cube, &k22, None)? {
            Some(e) => println!("Q{n}: copy {e}"),
            None => println!("Q{n}: no copy"),
        }
    }

    // A copy forced through a particular set.
    let family = layer_upto(4, 1)?;
    let through = SubsetMask::from_elements(&[1, 2]);
    println!("C2 through {through}: {:?}", find_copy_through(&family, &Poset::chain(2), through).map(|e| e.to_string()));
    Ok(())
}
