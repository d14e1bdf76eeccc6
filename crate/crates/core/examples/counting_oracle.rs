//! Counting homomorphisms from the fundamental group, for the untwisted invariant.
use dwcalc::groups::FiniteGroup;
use dwcalc::homoracle::{count_homs, dw_untwisted, work_estimate, DEFAULT_BUDGET};
use dwcalc::seifert::SeifertData;

fn main() -> dwcalc::Result<()> {
    let groups = [
        ("Z/6", FiniteGroup::cyclic(6)?),
        ("Z/2 x Z/2", FiniteGroup::abelian(&[2, 2])?),
        ("S3", FiniteGroup::symmetric3()),
    ];
    let poincare: SeifertData = "g=0;(2,-1),(3,1),(5,1)".parse()?;
    let lens: SeifertData = "g=0;(5,2)".parse()?;
    let torus: SeifertData = "g=1".parse()?;
    for (name, g) in &groups {
        for s in [&poincare, &lens, &torus] {
            println!(
                "{name} on {s}: {} homs, Z = {}, work {}",
                count_homs(g, s, DEFAULT_BUDGET)?,
                dw_untwisted(g, s, DEFAULT_BUDGET)?.value,
                work_estimate(g, s)
            );
        }
    }
    match count_homs(&FiniteGroup::abelian(&[4, 4])?, &"g=3;(2,1)".parse()?, 100) {
        Err(e) => println!("tight budget: {e}"),
        Ok(n) => println!("unexpected: {n}"),
    }
    Ok(())
}
