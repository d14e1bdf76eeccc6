//! Expanding a glued solid torus in the S^-1 basis recovers eta / #G.
use std::sync::Arc;

use dwcalc::cocycles::{omega_l, Level};
use dwcalc::seifert::eta_all;
use dwcalc::tqd::CharacterTable;
use num_rational::BigRational;

fn main() -> dwcalc::Result<()> {
    let m = 4;
    let table = CharacterTable::for_cocycle(Arc::new(omega_l(m, Level::new(1, m)?)))?;
    let (a, b) = (3, 2);
    let v = table.space().glued_solid_torus_vector(a, b, 1, 1)?;
    let coeffs = table.expand_in_s_basis(&v)?;
    let k = BigRational::new(1.into(), (m as i64).into());
    let etas = eta_all(&table, a, b)?;
    for ((ch, c), e) in table.characters().iter().zip(&coeffs).zip(&etas) {
        println!("chi{}: coefficient {c}   eta/#G {}", ch.label, e.scale(&k));
    }
    let other = table.space().glued_solid_torus_vector(a, b, -1, -2)?;
    println!(
        "independent of completion: {}",
        table.expand_in_s_basis(&other)? == coeffs
    );
    Ok(())
}
