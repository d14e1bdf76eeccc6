//! Finite groups and the cyclic 3-cocycles.
use std::sync::Arc;

use dwcalc::cocycles::{omega_l, restriction_level, Level, ThreeCocycle};
use dwcalc::groups::FiniteGroup;

fn main() -> dwcalc::Result<()> {
    let s3 = FiniteGroup::symmetric3();
    println!(
        "S3: order {}, {} commuting pairs, abelian: {}",
        s3.order(),
        s3.commuting_pairs().len(),
        s3.is_abelian()
    );

    let g = FiniteGroup::abelian(&[2, 6])?;
    println!(
        "Z/2 x Z/6: exponent {}, centralizer of 1 has {} elements",
        g.exponent(),
        g.centralizer(1).len()
    );

    let m = 6;
    let w = omega_l(m, Level::new(5, m)?);
    w.validate()?;
    for z in 0..m as usize {
        println!("restriction level at {z}: {}", restriction_level(&w, z)?);
    }

    let beta: Vec<Vec<i64>> = (0..6).map(|x| (0..6).map(|y| ((x * y) % 4) as i64).collect()).collect();
    let shifted = w.times_coboundary(4, &beta);
    println!(
        "after a coboundary: still a cocycle: {}, level at 1: {}",
        shifted.validate().is_ok(),
        restriction_level(&shifted, 1)?
    );

    let trivial = ThreeCocycle::trivial(Arc::new(s3));
    println!("trivial on S3: {}", trivial.is_trivial());
    Ok(())
}
