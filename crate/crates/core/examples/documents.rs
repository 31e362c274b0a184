//! Reading and writing the JSON documents the command line uses, and running
//! the command line in-process.
use posat::cli::run;
use posat::io::{to_json, FamilyDocument, PosetDocument, ScheduleDocument};
use posat::{percolating_family, Poset, SetFamily};

fn main() -> posat::Result<()> {
    let c2 = Poset::chain(2);
    print!("{}", to_json(&PosetDocument::from_poset(&c2, Some("C2")))?);
    let f = SetFamily::from_lists(3, &[vec![], vec![2, 3]])?;
    print!("{}", to_json(&FamilyDocument::from_family(&f).with_metadata(serde_json::json!({"note": "example"})))?);

    let s = percolating_family(&c2, 5)?;
    let doc = ScheduleDocument::from_schedule(&s);
    println!("schedule document: {} steps, round trip ok: {}", doc.steps.len(), doc.to_schedule()? == s);

    let dir = std::env::temp_dir().join("posat-documents-example");
    std::fs::create_dir_all(&dir)?;
    let poset = dir.join("C2.json");
    std::fs::write(&poset, to_json(&PosetDocument::from_poset(&c2, None))?)?;
    let args = ["posat", "oracle", "--kind", "sat", "--poset", poset.to_str().unwrap(), "--n", "3"];
    let code = run(args, &mut std::io::stdout(), &mut std::io::stderr());
    println!("exit code {code}");
    Ok(())
}
