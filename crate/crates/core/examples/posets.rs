//! Building posets and asking structural questions about them.
use posat::poset::poset_classes;
use posat::Poset;

fn main() -> posat::Result<()> {
    let butterfly = Poset::complete_multilayer(&[2, 2])?;
    println!("K22: {} elements, {} relations, covers {:?}", butterfly.size(), butterfly.relation_count(), butterfly.covers());

    // The diamond: a bottom, two middle elements, a top.
    let diamond = Poset::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])?;
    println!("diamond has unique extremes: {:?}", diamond.unique_extremes()?);

    let special = diamond.disjoint_union(&Poset::point())?;
    let d = special.decompose_special().expect("diamond plus a point is special");
    println!("isolated element {}, core {:?}", d.isolated, d.core_elements);

    let vee = Poset::linear_sum(&Poset::antichain(2), &Poset::point())?;
    println!("V2 dual is Lambda2: {}", vee.dual().is_isomorphic(&Poset::linear_sum(&Poset::point(), &Poset::antichain(2))?));
    println!("UCTP {}, legs {}", butterfly.has_uctp(), butterfly.has_legs());

    for p in 1..=4 {
        println!("{p} elements: {} classes", poset_classes(p).len());
    }
    Ok(())
}
