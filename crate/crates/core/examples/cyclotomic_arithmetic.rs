//! Exact arithmetic in cyclotomic fields.
use dwcalc::cyclotomic::{Cyclotomic, RootOfUnity};

fn main() {
    let w = Cyclotomic::from_root(3, 1);
    let i = Cyclotomic::from_root(4, 1);
    println!("E(3) + E(3)^2 = {}", &w + &w.pow(2));
    println!("E(3) * E(4)   = {}", &w * &i);
    println!("E(9)^3        = {}", Cyclotomic::from_root(9, 3).minimal_order());

    let zeta = RootOfUnity::new(12, 7);
    println!("E(12)^7 as a root: {zeta:?}, inverse {:?}", zeta.inv());
    let z = zeta.to_cyclotomic();
    println!("|E(12)^7|^2   = {}", &z * &z.conjugate());
    println!("approx        = {:?}", (&w + &i).to_complex());
}
