//! The recursive family for a special poset and its report.
use posat::constructions::special_family;
use posat::Poset;

fn main() -> posat::Result<()> {
    // Chain of two plus an isolated point.
    let p = Poset::chain(2).disjoint_union(&Poset::point())?;
    for n in [5, 8, 11] {
        let (f, report) = special_family(&p, n)?;
        println!("n = {n}: {} sets, bound {}, {:?}", f.len(), report.size_bound, report.verification);
    }
    let (_, report) = special_family(&Poset::antichain(2), 6)?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}
