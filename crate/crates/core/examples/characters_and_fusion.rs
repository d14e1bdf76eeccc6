//! Characters of the twisted torus algebra, their Gram matrix and fusion.
use std::sync::Arc;

use dwcalc::cocycles::{omega_l, Level};
use dwcalc::tqd::{fusion_eigenvalue, CharacterTable};

fn main() -> dwcalc::Result<()> {
    let table = CharacterTable::for_cocycle(Arc::new(omega_l(3, Level::new(1, 3)?)))?;
    for ch in table.characters() {
        let pairs = ch.values.space().pairs().iter().zip(ch.values.values());
        let values: Vec<String> = pairs
            .filter(|(_, v)| !v.is_zero())
            .map(|((x, h), v)| format!("({x},{h})->{}", v.minimal_order()))
            .collect();
        println!("chi{}  dim={}  {}", ch.label, ch.dim, values.join("  "));
    }
    let gram = table.gram_matrix();
    let orthonormal = gram.iter().enumerate().all(|(i, r)| {
        r.iter()
            .enumerate()
            .all(|(j, x)| x.is_one() == (i == j) && (x.is_one() || x.is_zero()))
    });
    println!("orthonormal: {orthonormal}");

    let s = table.s_basis();
    let k = fusion_eigenvalue(&table.characters()[1])?;
    let square = s[1].mul(&s[1])?;
    println!("(S^-1 chi)^2 = {k} * S^-1 chi: {}", square == s[1].scale(&k));
    println!("S^-1 chi_0 * S^-1 chi_1 vanishes: {}", s[0].mul(&s[1])?.is_zero());
    Ok(())
}
