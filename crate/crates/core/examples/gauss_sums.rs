//! Normalized quadratic Gauss sums and the Legendre symbol.
use dwcalc::seifert::{gauss_sum, legendre};

fn main() -> dwcalc::Result<()> {
    for p in [3i64, 5, 7, 11, 13] {
        let s1 = gauss_sum(p, 1)?;
        println!("S_{p}(1) = {s1}");
        for a in 1..p {
            let s = gauss_sum(p, a)?;
            let sign = legendre(a, p)?;
            assert_eq!(s, s1.scale(&num_rational::BigRational::from_integer(sign.into())));
        }
    }
    println!("S_p(a) = (a/p) S_p(1) for every a above");
    Ok(())
}
