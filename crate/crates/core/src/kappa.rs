//! The gluing phase `κ^ω_{a,b}(z)` and the cycle-product computation it
//! summarizes.
//!
//! [`kappa_oracle`] evaluates `ω` along the Euclidean remainder sequence of
//! `(b, a)`, which is what the phase is by construction. [`kappa`] is the
//! closed form: with `m` the order of `z`, `g` the least element generating
//! `⟨z⟩`, `z = g^u` and `ℓ` the restriction level of `ω` at `g`,
//!
//! ```text
//! κ_{a,b}(z) = ζ_{m²}^{ℓ·u·(b·(au mod m) − a·(bu mod m))}
//! ```
//!
//! For `z = g` this is `ζ_{m²}^{ℓ(b·ǎ − a·b̌)}` with `ǎ` the residue of `a`
//! modulo `m`. The two agree whenever `ω` restricted to `⟨z⟩`, written in the
//! coordinates of `g`, is the standard table `ω_ℓ`; that covers every `ω_l`
//! on a cyclic group and every trivial cocycle.

use num_integer::gcd;

use crate::cocycles::{restriction_level, ThreeCocycle};
use crate::cyclotomic::RootOfUnity;
use crate::error::Result;
use crate::groups::Elem;

#[derive(Clone, Copy, Debug)]
pub struct KappaQuery<'a> {
    pub a: i64,
    pub b: i64,
    pub z: Elem,
    pub omega: &'a ThreeCocycle,
}

impl<'a> KappaQuery<'a> {
    pub fn new(omega: &'a ThreeCocycle, a: i64, b: i64, z: Elem) -> Self {
        KappaQuery { a, b, z, omega }
    }
}

/// Least element generating `⟨z⟩`, and `u` with `z = g^u`.
pub fn canonical_generator(omega: &ThreeCocycle, z: Elem) -> (Elem, u32) {
    let g = omega.group();
    let m = g.element_order(z);
    let mut best = (z, 1u32);
    let mut zj = g.identity();
    for j in 0..m {
        if gcd(j, m) == 1 && zj < best.0 {
            best = (zj, j);
        }
        zj = g.mul(zj, z);
    }
    // z = (z^j)^{j⁻¹ mod m}
    let inv = crate::arith::mod_inverse(best.1 as i64, m as i64).unwrap_or(0) as u32;
    (best.0, if m == 1 { 0 } else { inv })
}

pub fn kappa(q: KappaQuery<'_>) -> Result<RootOfUnity> {
    let g = q.omega.group();
    g.check(q.z)?;
    let m = g.element_order(q.z);
    if m == 1 {
        return Ok(RootOfUnity::one());
    }
    let (gen, u) = canonical_generator(q.omega, q.z);
    let level = restriction_level(q.omega, gen)? as i128;
    let (m, u) = (m as i128, u as i128);
    let (a, b) = (q.a as i128, q.b as i128);
    let cross = b * (a * u).rem_euclid(m) - a * (b * u).rem_euclid(m);
    let m2 = m * m;
    let e = (level * u % m2) * cross.rem_euclid(m2) % m2;
    Ok(RootOfUnity::new(m2 as u32, e as i64))
}

/// Truncated division: `x = k·y + r` with `|r| < |y|` and `r` carrying the sign of `x`.
fn trunc_divmod(x: i64, y: i64) -> (i64, i64) {
    (x / y, x % y)
}

/// `∏_i (∏_{j=1}^{k_i} ω(z^{r_{i-1}}, z^{r_{i-2} − j·r_{i-1}}, z^{r_{i-1}}))^{sign·(−1)^{i−1}}`
/// over the remainder sequence `r_{-1} = first`, `r_0 = second`, `r_ν = 0`.
fn remainder_product(omega: &ThreeCocycle, z: Elem, first: i64, second: i64, sign: i64) -> RootOfUnity {
    let g = omega.group();
    let zp = |n: i64| g.power(z, n);
    let (mut prev2, mut prev1) = (first, second);
    let mut out = RootOfUnity::one();
    let mut i = 1;
    while prev1 != 0 {
        let (k, r) = trunc_divmod(prev2, prev1);
        let outer = zp(prev1);
        let mut block = RootOfUnity::one();
        for j in 1..=k {
            block = block * omega.value(outer, zp(prev2 - j * prev1), outer);
        }
        out = if sign * if i % 2 == 1 { 1 } else { -1 } > 0 {
            out * block
        } else {
            out / block
        };
        prev2 = prev1;
        prev1 = r;
        i += 1;
    }
    out
}

/// The cycle product that defines `κ^ω_{a,b}(z)`.
pub fn kappa_oracle(q: KappaQuery<'_>) -> Result<RootOfUnity> {
    let g = q.omega.group();
    g.check(q.z)?;
    let (a, b, z, w) = (q.a, q.b, q.z, q.omega);
    if a == 0 || b == 0 {
        return Ok(RootOfUnity::one());
    }
    if (a > 0) == (b > 0) {
        return Ok(remainder_product(w, z, b, a, 1));
    }
    let zp = |n: i64| g.power(z, n);
    let correction =
        w.value(zp(-a), zp(a), zp(b - a)) * w.value(zp(b + a), zp(-a), zp(a)) / w.value(zp(a), zp(b), zp(-a));
    Ok(correction * remainder_product(w, z, b, -a, -1))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cocycles::{omega_l, Level};
    use crate::groups::FiniteGroup;

    fn w(m: u32, l: i64) -> ThreeCocycle {
        omega_l(m, Level::new(l, m).unwrap())
    }

    #[test]
    fn trivial_cases() {
        let c = w(5, 3);
        for a in -4..5 {
            for b in -4..5 {
                assert!(kappa(KappaQuery::new(&c, a, b, 0)).unwrap().is_one());
            }
        }
        let t = ThreeCocycle::trivial(Arc::new(FiniteGroup::symmetric3()));
        for z in 0..6 {
            assert!(kappa(KappaQuery::new(&t, 3, -7, z)).unwrap().is_one());
            assert!(kappa_oracle(KappaQuery::new(&t, 3, -7, z)).unwrap().is_one());
        }
    }

    #[test]
    fn worked_example() {
        // Z/3, ω_1, z = 1, a = 4, b = 1: ζ_9^{1·(1 − 4)} = ζ_3^{-1}
        let c = w(3, 1);
        let q = KappaQuery::new(&c, 4, 1, 1);
        assert_eq!(kappa(q).unwrap(), RootOfUnity::new(3, -1));
        assert_eq!(kappa_oracle(q).unwrap(), RootOfUnity::new(3, -1));
    }

    #[test]
    fn unit_pair_is_trivial() {
        for m in 2..=6 {
            for l in 0..m as i64 {
                let c = w(m, l);
                for z in 0..m as usize {
                    let q = KappaQuery::new(&c, 1, 1, z);
                    assert!(kappa_oracle(q).unwrap().is_one());
                    assert_eq!(kappa(q).unwrap(), kappa_oracle(q).unwrap());
                }
            }
        }
    }

    #[test]
    fn small_exhaustive_z5() {
        for l in 0..5 {
            let c = w(5, l);
            for z in 0..5 {
                for (a, b) in [(2, 3), (2, -3)] {
                    let q = KappaQuery::new(&c, a, b, z);
                    assert_eq!(kappa(q).unwrap(), kappa_oracle(q).unwrap(), "l={l} z={z} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn antisymmetry() {
        let c = w(7, 4);
        for z in 0..7 {
            for a in -9..10 {
                for b in -9..10 {
                    let x = kappa(KappaQuery::new(&c, a, b, z)).unwrap();
                    let y = kappa(KappaQuery::new(&c, b, a, z)).unwrap();
                    assert!((x * y).is_one());
                }
            }
        }
    }

    #[test]
    fn canonical_generators_in_cyclic_groups() {
        let c = w(12, 1);
        assert_eq!(canonical_generator(&c, 1), (1, 1));
        assert_eq!(canonical_generator(&c, 5), (1, 5));
        // ⟨8⟩ = {0, 4, 8}; least generator 4, 8 = 4·2
        assert_eq!(canonical_generator(&c, 8), (4, 2));
        assert_eq!(canonical_generator(&c, 0), (0, 0));
    }

    #[test]
    fn out_of_range_element() {
        let c = w(3, 1);
        assert!(kappa(KappaQuery::new(&c, 1, 1, 3)).is_err());
        assert!(kappa_oracle(KappaQuery::new(&c, 1, 1, 7)).is_err());
    }
}
