//! Gluing two special posets and building a saturated family for the result.
use posat::constructions::glued_special_family;
use posat::Poset;

fn main() -> posat::Result<()> {
    let a2 = Poset::antichain(2);
    let g = glued_special_family(&a2, &a2, 8)?;
    println!("target {:?}", g.target.covers());
    println!("{} sets (bound {}), {} upper pieces, {} lower pieces", g.family.len(), g.report.size_bound, g.upper.len(), g.lower.len());
    for c in g.upper.iter().take(3) {
        println!("  above {}: {} sets on {}", c.anchor, c.family.len(), c.ground);
    }
    Ok(())
}
