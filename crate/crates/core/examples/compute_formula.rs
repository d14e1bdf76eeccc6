//! The character-sum formula on a few Seifert manifolds.
use std::sync::Arc;

use dwcalc::cocycles::{omega_l, Level};
use dwcalc::seifert::{dw_formula, SeifertData};
use dwcalc::tqd::CharacterTable;

fn main() -> dwcalc::Result<()> {
    let manifolds: Vec<SeifertData> = [
        "g=0",
        "g=1",
        "g=0;(2,1),(3,1),(5,-4)",
        "g=0;(2,-1),(2,1),(3,1)",
        "g=2;(4,1)",
    ]
    .iter()
    .map(|s| s.parse())
    .collect::<dwcalc::Result<_>>()?;
    for m in [2u32, 3, 4, 6] {
        for l in 0..m {
            let table = CharacterTable::for_cocycle(Arc::new(omega_l(m, Level::new(l as i64, m)?)))?;
            for s in &manifolds {
                println!("Z/{m} level {l}  {s:<24} {}", dw_formula(&table, s)?.value);
            }
        }
    }
    Ok(())
}
