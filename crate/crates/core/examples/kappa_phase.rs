//! The phase kappa_{a,b}(z) and its cycle-product cross-check.
use dwcalc::cocycles::{omega_l, Level};
use dwcalc::kappa::{kappa, kappa_oracle, KappaQuery};

fn main() -> dwcalc::Result<()> {
    let w = omega_l(6, Level::new(5, 6)?);
    for (a, b, z) in [(3, 5, 2), (-4, 7, 1), (2, 9, 3), (5, -3, 4)] {
        let q = KappaQuery::new(&w, a, b, z);
        let (fast, slow) = (kappa(q)?, kappa_oracle(q)?);
        println!(
            "kappa_({a},{b})({z}) = {}   cycle product = {}",
            fast.to_cyclotomic(),
            slow.to_cyclotomic()
        );
        assert_eq!(fast, slow);
    }
    Ok(())
}
