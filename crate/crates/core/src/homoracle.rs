//! Untwisted invariants straight from the definition, `Z(M) = #Hom(π₁(M), Γ)/#Γ`.
//!
//! `π₁(M_O(g; (a_j,b_j)))` is presented by `u_i, v_i, x_j, h` with `h` central,
//! `x_j^{a_j}·h^{b_j} = e` and `x_1⋯x_n·[u_1,v_1]⋯[u_g,v_g] = e`. Since every
//! generator commutes with the image of `h`, the count splits over `h` and
//! each piece is a convolution on the centralizer `C(h)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::groups::{Elem, FiniteGroup};
use crate::seifert::{DWResult, Method, SeifertData};

pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// `Σ_h |C(h)|²·(n + g + 1)`, the number of group multiplications [`count_homs`] performs.
pub fn work_estimate(group: &FiniteGroup, seifert: &SeifertData) -> u128 {
    let rounds = (seifert.n() + seifert.genus() as usize + 1) as u128;
    group
        .elements()
        .map(|h| {
            let c = group.centralizer(h).len() as u128;
            c * c * rounds
        })
        .sum()
}

fn add(a: u128, b: u128) -> Result<u128> {
    a.checked_add(b).ok_or(Error::Overflow("homomorphism count"))
}

fn mul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow("homomorphism count"))
}

fn count_for_center(group: &FiniteGroup, seifert: &SeifertData, h: Elem) -> Result<u128> {
    let cent = group.centralizer(h);
    // f[y] counts prefixes of the surface word evaluating to y
    let mut f = vec![0u128; group.order()];
    f[group.identity()] = 1;
    for &(a, b) in seifert.fibers() {
        let hb = group.power(h, b);
        let solutions: Vec<Elem> = cent
            .iter()
            .copied()
            .filter(|&x| group.mul(group.power(x, a), hb) == group.identity())
            .collect();
        if solutions.is_empty() {
            return Ok(0);
        }
        let mut next = vec![0u128; group.order()];
        for &y in &cent {
            if f[y] == 0 {
                continue;
            }
            for &x in &solutions {
                let t = group.mul(y, x);
                next[t] = add(next[t], f[y])?;
            }
        }
        f = next;
    }
    if seifert.genus() > 0 {
        let mut commutators = vec![0u128; group.order()];
        for &u in &cent {
            for &v in &cent {
                commutators[group.commutator(u, v)] += 1;
            }
        }
        let support: Vec<Elem> = cent.iter().copied().filter(|&y| commutators[y] > 0).collect();
        for _ in 0..seifert.genus() {
            let mut next = vec![0u128; group.order()];
            for &y in &cent {
                if f[y] == 0 {
                    continue;
                }
                for &c in &support {
                    let t = group.mul(y, c);
                    next[t] = add(next[t], mul(f[y], commutators[c])?)?;
                }
            }
            f = next;
        }
    }
    Ok(f[group.identity()])
}

/// `#Hom(π₁(M), Γ)` by convolution over centralizers.
pub fn count_homs(group: &FiniteGroup, seifert: &SeifertData, budget: u128) -> Result<u128> {
    let estimate = work_estimate(group, seifert);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let parts = group
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|h| count_for_center(group, seifert, h))
        .collect::<Result<Vec<_>>>()?;
    parts.into_iter().try_fold(0u128, add)
}

/// `#Hom(π₁(M), Γ)` by enumerating every assignment of the generators.
pub fn count_homs_naive(group: &FiniteGroup, seifert: &SeifertData, budget: u128) -> Result<u128> {
    let g = seifert.genus() as usize;
    let n = seifert.n();
    let vars = 2 * g + n + 1;
    let k = group.order() as u128;
    let estimate = (0..vars)
        .try_fold(1u128, |acc, _| acc.checked_mul(k))
        .unwrap_or(u128::MAX);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let e = group.identity();
    let mut assignment = vec![0 as Elem; vars];
    let mut count = 0u128;
    loop {
        let h = assignment[vars - 1];
        let (surface, xs) = assignment[..vars - 1].split_at(2 * g);
        let central = assignment[..vars - 1].iter().all(|&y| group.commutes(y, h));
        let fibers_ok = central
            && xs
                .iter()
                .zip(seifert.fibers())
                .all(|(&x, &(a, b))| group.mul(group.power(x, a), group.power(h, b)) == e);
        if fibers_ok {
            let mut word = xs.iter().fold(e, |w, &x| group.mul(w, x));
            for pair in surface.chunks(2) {
                word = group.mul(word, group.commutator(pair[0], pair[1]));
            }
            if word == e {
                count += 1;
            }
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == vars {
                return Ok(count);
            }
            assignment[i] += 1;
            if assignment[i] < group.order() {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// `Z(M) = #Hom(π₁(M), Γ)/#Γ` for the trivial cocycle.
pub fn dw_untwisted(group: &FiniteGroup, seifert: &SeifertData, budget: u128) -> Result<DWResult> {
    let count = count_homs(group, seifert, budget)?;
    let value = BigRational::new(BigInt::from(count), BigInt::from(group.order()));
    Ok(DWResult::new(Cyclotomic::from_rational(value), Method::Oracle))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sd(s: &str) -> SeifertData {
        s.parse().unwrap()
    }

    #[test]
    fn sphere_has_one_hom() {
        for g in [
            FiniteGroup::cyclic(7).unwrap(),
            FiniteGroup::abelian(&[2, 4]).unwrap(),
            FiniteGroup::symmetric3(),
        ] {
            assert_eq!(count_homs(&g, &sd("g=0;(1,1)"), DEFAULT_BUDGET).unwrap(), 1);
        }
    }

    #[test]
    fn circle_bundles_and_lens_spaces() {
        for m in 1..=6u32 {
            let c = FiniteGroup::cyclic(m).unwrap();
            for g in 0..=2u32 {
                let s = SeifertData::new(g, vec![]).unwrap();
                assert_eq!(count_homs(&c, &s, DEFAULT_BUDGET).unwrap(), (m as u128).pow(2 * g + 1));
            }
            for (a, b) in [(2, 3), (3, 4), (5, -6), (1, 6), (0, 1)] {
                let s = SeifertData::new(0, vec![(a, b)]).unwrap();
                let want = num_integer::gcd(b, m as i64) as u128;
                assert_eq!(count_homs(&c, &s, DEFAULT_BUDGET).unwrap(), want, "m={m} ({a},{b})");
            }
        }
    }

    #[test]
    fn convolution_matches_enumeration() {
        let groups = [
            FiniteGroup::cyclic(4).unwrap(),
            FiniteGroup::abelian(&[2, 2]).unwrap(),
            FiniteGroup::symmetric3(),
        ];
        for g in &groups {
            for s in [
                "g=0;(2,1),(3,1)",
                "g=1;(2,-1)",
                "g=1;",
                "g=0;(2,1),(2,1)",
                "g=1;(-3,2)",
                "g=0;(0,1),(4,3)",
            ] {
                let s = sd(s);
                assert_eq!(
                    count_homs(g, &s, DEFAULT_BUDGET).unwrap(),
                    count_homs_naive(g, &s, DEFAULT_BUDGET).unwrap(),
                    "{s}"
                );
            }
        }
    }

    #[test]
    fn budget_guard() {
        let g = FiniteGroup::symmetric3();
        assert!(matches!(
            count_homs(&g, &sd("g=2;(1,1)"), 10),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            count_homs_naive(&g, &sd("g=2;(1,1)"), 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn untwisted_value() {
        let g = FiniteGroup::symmetric3();
        let r = dw_untwisted(&g, &sd("g=0;(1,1)"), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.method, Method::Oracle);
        assert_eq!(r.value, Cyclotomic::from_rational(BigRational::new(1.into(), 6.into())));
    }
}
