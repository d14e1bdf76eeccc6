//! Closed forms for Z/p with p an odd prime, checked against the formula.
use dwcalc::cocycles::{omega_l, Level};
use dwcalc::seifert::{dw_formula_for, dw_prime_closed_form, SeifertData};
use std::sync::Arc;

fn main() -> dwcalc::Result<()> {
    let cases = [
        "g=0;(1,1),(1,2)",
        "g=0;(1,1),(1,1)",
        "g=1;(3,1),(2,1)",
        "g=0;(3,1),(3,2),(5,1)",
        "g=0;(9,2),(3,1)",
    ];
    for p in [3i64, 5] {
        for l in 0..p {
            let level = Level::new(l, p as u32)?;
            for text in cases {
                let s: SeifertData = text.parse()?;
                let closed = dw_prime_closed_form(p, level, &s)?;
                let formula = dw_formula_for(Arc::new(omega_l(p as u32, level)), &s)?;
                println!(
                    "p={p} l={l} {s:<22} {}   agrees: {}",
                    closed.value,
                    closed.value == formula.value
                );
            }
        }
    }
    Ok(())
}
