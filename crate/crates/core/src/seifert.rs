//! Seifert manifolds `M_O(g; (a_1,b_1), …, (a_n,b_n))` and their invariants.
//!
//! [`dw_formula`] sums over the characters of the twisted quantum double:
//!
//! ```text
//! Z = Σ_ρ (#Γ)^{2g−2} / (dim χ_ρ)^{n+2g−2} · ∏_j η_ρ(a_j, b_j)
//! η_ρ(a, b) = Σ_z κ_{a,−b}(z)·χ_ρ(z^a, z^{−b})
//! ```
//!
//! The cyclic evaluators and [`dw_prime_closed_form`] are faster special
//! cases, each tested against the direct sum.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, lcm_u32, mod_inverse};
use crate::cocycles::{Level, ThreeCocycle};
use crate::cyclotomic::{Accumulator, Complex, Cyclotomic};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::kappa::{kappa, KappaQuery};
use crate::tqd::{CharacterTable, TQDCharacter};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SeifertData {
    genus: u32,
    fibers: Vec<(i64, i64)>,
}

impl SeifertData {
    pub fn new(genus: u32, fibers: Vec<(i64, i64)>) -> Result<Self> {
        for &(a, b) in &fibers {
            if a.gcd(&b) != 1 {
                return Err(Error::InvalidSeifert(format!(
                    "fiber ({a},{b}) has gcd {} (must be 1)",
                    a.gcd(&b)
                )));
            }
        }
        Ok(SeifertData { genus, fibers })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn fibers(&self) -> &[(i64, i64)] {
        &self.fibers
    }

    pub fn n(&self) -> usize {
        self.fibers.len()
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={}", self.genus)?;
        for (i, (a, b)) in self.fibers.iter().enumerate() {
            f.write_str(if i == 0 { ";" } else { "," })?;
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

/// Parses `g=<int>;(<a>,<b>),(<a>,<b>),…`; the fiber list may be empty.
impl FromStr for SeifertData {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("seifert string {s:?}: {why}"));
        let s_trim: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = s_trim.strip_prefix("g=").ok_or_else(|| bad("must start with g="))?;
        let (g, fibers) = rest.split_once(';').unwrap_or((rest, ""));
        let genus: u32 = g.parse().map_err(|_| bad("genus is not a non-negative integer"))?;
        let mut out = Vec::new();
        let mut tail = fibers;
        while !tail.is_empty() {
            let body = tail.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("missing ')'"))?;
            let (a, b) = body[..close]
                .split_once(',')
                .ok_or_else(|| bad("fiber needs two entries"))?;
            let a: i64 = a.parse().map_err(|_| bad("fiber entry is not an integer"))?;
            let b: i64 = b.parse().map_err(|_| bad("fiber entry is not an integer"))?;
            out.push((a, b));
            tail = &body[close + 1..];
            if let Some(t) = tail.strip_prefix(',') {
                if t.is_empty() {
                    return Err(bad("trailing ','"));
                }
                tail = t;
            } else if !tail.is_empty() {
                return Err(bad("expected ',' between fibers"));
            }
        }
        SeifertData::new(genus, out)
    }
}

impl<'de> Deserialize<'de> for SeifertData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            genus: u32,
            fibers: Vec<(i64, i64)>,
        }
        let raw = Raw::deserialize(d)?;
        SeifertData::new(raw.genus, raw.fibers).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Prime,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Formula => "formula",
            Method::Prime => "prime",
            Method::Oracle => "oracle",
        })
    }
}

/// Which evaluator [`compute`] should use; `Auto` prefers prime, then formula, then oracle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MethodChoice {
    #[default]
    Auto,
    Fixed(Method),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DWResult {
    pub value: Cyclotomic,
    pub approx: Complex,
    pub method: Method,
}

impl DWResult {
    /// Stores `value` over its smallest cyclotomic field, so equal values print alike.
    pub fn new(value: Cyclotomic, method: Method) -> Self {
        let value = value.minimal_order();
        let approx = value.to_complex();
        DWResult { value, approx, method }
    }
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn int_pow(base: u64, e: i64) -> BigRational {
    let b = rat(BigInt::from(base));
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        BigRational::one() / num_traits::pow(b, (-e) as usize)
    }
}

/// `η_ρ(a, b) = Σ_z κ_{a,−b}(z)·χ_ρ(z^a, z^{−b})`.
pub fn eta(ch: &TQDCharacter, a: i64, b: i64) -> Result<Cyclotomic> {
    let space = ch.values.space();
    let kappas = fiber_kappas(space.omega(), a, b)?;
    Ok(eta_with(ch, &kappas))
}

/// `η_ρ(a, b)` for every character of `table`, in table order.
pub fn eta_all(table: &CharacterTable, a: i64, b: i64) -> Result<Vec<Cyclotomic>> {
    let kappas = fiber_kappas(table.space().omega(), a, b)?;
    Ok(table.characters().iter().map(|ch| eta_with(ch, &kappas)).collect())
}

struct FiberKappa {
    /// `(z^a, z^{−b}, κ_{a,−b}(z))` for each `z`.
    rows: Vec<(usize, usize, Cyclotomic)>,
}

fn fiber_kappas(omega: &ThreeCocycle, a: i64, b: i64) -> Result<FiberKappa> {
    let g = omega.group();
    let rows = g
        .elements()
        .map(|z| {
            let k = kappa(KappaQuery::new(omega, a, -b, z))?;
            Ok((g.power(z, a), g.power(z, -b), k.to_cyclotomic()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FiberKappa { rows })
}

fn eta_with(ch: &TQDCharacter, kappas: &FiberKappa) -> Cyclotomic {
    let terms: Vec<(&Cyclotomic, &Cyclotomic)> = kappas
        .rows
        .iter()
        .map(|(za, zb, k)| (ch.values.at(*za, *zb), k))
        .filter(|(chi, _)| !chi.is_zero())
        .collect();
    let n = terms
        .iter()
        .fold(1, |n, (chi, k)| lcm_u32(n, lcm_u32(chi.order(), k.order())));
    let mut acc = Accumulator::new(n);
    for (chi, k) in terms {
        acc.add_product(chi, k, 0);
    }
    acc.finish()
}

fn residue(h: usize, m: u32) -> i128 {
    (h as i128).rem_euclid(m as i128)
}

/// `η^{ω_l}_{h,s}(a,b) = Σ_{z: az ≡ h} ζ_{m²}^{l·a·b·z² − (2l·h + m·s)·b·z}`.
pub fn eta_cyclic(m: u32, level: Level, h: usize, s: u32, a: i64, b: i64) -> Cyclotomic {
    let (mi, l, hh, si) = (m as i128, level.value() as i128, residue(h, m), s as i128);
    let m2 = mi * mi;
    let (a, b) = ((a as i128).rem_euclid(m2), (b as i128).rem_euclid(m2));
    let quad = l * a % m2 * b % m2;
    let lin = (2 * l * hh + mi * si) % m2 * b % m2;
    let mut acc = Accumulator::new(m * m);
    for z in 0..mi {
        if (a * z - hh).rem_euclid(mi) == 0 {
            acc.add_root((quad * z * z - lin * z).rem_euclid(m2) as i64);
        }
    }
    acc.finish()
}

/// The same weight split along `d = gcd(a, m)`: with `a = d·a′`, `m = d·m′`,
/// `c = a′⁻¹ mod m′`, `t = (a′c − 1)/m′` and `H = h/d`,
///
/// ```text
/// η = ζ_{m·m′}^{−b·l·c·H²} · ζ_m^{b·(l·t·H − s)·c·H} · Σ_{k<d} ζ_d^{b·(l·a′·k² + (2·l·t·H − s)·k)}
/// ```
///
/// and `η = 0` when `d ∤ h`.
pub fn eta_cyclic_decomposed(m: u32, level: Level, h: usize, s: u32, a: i64, b: i64) -> Cyclotomic {
    let mi = m as i128;
    let (l, hh, si) = (level.value() as i128, residue(h, m), s as i128);
    let (a, b) = (a as i128, b as i128);
    let d = a.gcd(&mi);
    if hh % d != 0 {
        return Cyclotomic::zero();
    }
    let ap = a / d;
    let mj = mi / d;
    let c = mod_inverse(ap.rem_euclid(mj) as i64, mj as i64).expect("a/d is a unit mod m/d") as i128;
    let t = (ap * c - 1) / mj;
    let big_h = hh / d;
    let n = mi * mj;
    let head = -b * l * c * big_h * big_h + mj * b * (l * t * big_h - si) * c * big_h;
    let step = mj * mj;
    let mut acc = Accumulator::new(n as u32);
    for k in 0..d {
        let e = head + step * b * (l * ap * k * k + (2 * l * t * big_h - si) * k);
        acc.add_root(e.rem_euclid(n) as i64);
    }
    acc.finish()
}

/// The character-sum evaluation of `Z^ω(M)`.
pub fn dw_formula(table: &CharacterTable, seifert: &SeifertData) -> Result<DWResult> {
    let space = table.space();
    let omega = space.omega();
    let k = space.group().order() as u64;
    let kappas = seifert
        .fibers()
        .iter()
        .map(|&(a, b)| fiber_kappas(omega, a, b))
        .collect::<Result<Vec<_>>>()?;
    let g = seifert.genus() as i64;
    let n = seifert.n() as i64;
    let prefactor = int_pow(k, 2 * g - 2);
    let dim_exp = n + 2 * g - 2;
    let terms = table
        .characters()
        .par_iter()
        .map(|ch| -> Result<Cyclotomic> {
            let dim = ch.dim.as_rational().filter(|d| !d.is_zero()).ok_or_else(|| {
                Error::Unsupported(format!("character dimension {} is not a non-zero rational", ch.dim))
            })?;
            let mut prod = Cyclotomic::one();
            for kap in &kappas {
                let e = eta_with(ch, kap);
                if e.is_zero() {
                    return Ok(Cyclotomic::zero());
                }
                prod = &prod * &e;
            }
            let scale = if dim_exp >= 0 {
                &prefactor / num_traits::pow(dim, dim_exp as usize)
            } else {
                &prefactor * num_traits::pow(dim, (-dim_exp) as usize)
            };
            Ok(prod.scale(&scale))
        })
        .collect::<Result<Vec<_>>>()?;
    let value: Cyclotomic = terms.into_iter().sum();
    Ok(DWResult::new(value, Method::Formula))
}

/// [`dw_formula`] for an explicit cocycle; fails when no character family is available.
pub fn dw_formula_for(omega: Arc<ThreeCocycle>, seifert: &SeifertData) -> Result<DWResult> {
    dw_formula(&CharacterTable::for_cocycle(omega)?, seifert)
}

fn check_odd_prime(p: i64) -> Result<u64> {
    if p > 2 && is_prime(p) {
        Ok(p as u64)
    } else {
        Err(Error::NotOddPrime(p))
    }
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: i64, p: i64) -> Result<i8> {
    let p = check_odd_prime(p)? as i128;
    let a = (a as i128).rem_euclid(p);
    if a == 0 {
        return Ok(0);
    }
    let (mut base, mut e, mut r) = (a, (p - 1) / 2, 1i128);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    Ok(if r == 1 { 1 } else { -1 })
}

/// `S_p(a) = Σ_{k<p} ζ_p^{a·k²}` by direct summation.
pub fn gauss_sum(p: i64, a: i64) -> Result<Cyclotomic> {
    let p = check_odd_prime(p)? as i128;
    let mut acc = Accumulator::new(p as u32);
    let a = (a as i128).rem_euclid(p);
    for k in 0..p {
        acc.add_root((a * k * k % p) as i64);
    }
    Ok(acc.finish())
}

/// Closed form of `Z^{ω_l}(M)` over `Z/p`, `p` an odd prime.
///
/// Let `n₀` count fibers with `p | a_j` and `n₀′` those among them with
/// `p² ∤ a_j`; write `a′_j = a_j/p` for them.
///
/// - `n₀ = 0`: with `X = Σ b_j·(a_j⁻¹ mod p²)`, `Z = p^{2g−1}` if `p ∤ X`,
///   else `Z = p^{2g−1}·S_p(−l·X/p)`.
/// - `l = 0`, `n₀ > 0`: `Z = p^{2g−2+n₀}`.
/// - `n₀′ = n₀ > 0`: `Z = p^{2g−2}·S_p(−Σ b_j/(4l·a′_j))·∏ S_p(l·a′_j·b_j)`.
/// - `n₀′ < n₀`: `Z = p^{2g−2+n₀−n₀′}·∏_{p² ∤ a_j} S_p(l·a′_j·b_j)`.
pub fn dw_prime_closed_form(p: i64, level: Level, seifert: &SeifertData) -> Result<DWResult> {
    let pu = check_odd_prime(p)?;
    if level.modulus() as u64 != pu {
        return Err(Error::LevelOutOfRange {
            level: level.value() as i64,
            m: level.modulus(),
        });
    }
    let pi = p as i128;
    let l = level.value() as i128;
    let g = seifert.genus() as i64;
    let divisible: Vec<(i64, i64)> = seifert
        .fibers()
        .iter()
        .copied()
        .filter(|&(a, _)| a as i128 % pi == 0)
        .collect();
    let value = if divisible.is_empty() {
        let p2 = pi * pi;
        let x: i128 = seifert
            .fibers()
            .iter()
            .map(|&(a, b)| {
                let c = mod_inverse((a as i128).rem_euclid(p2) as i64, p2 as i64).expect("a is a unit mod p²") as i128;
                (b as i128).rem_euclid(p2) * c % p2
            })
            .sum::<i128>()
            .rem_euclid(p2);
        let base = Cyclotomic::from_rational(int_pow(pu, 2 * g - 1));
        if x % pi != 0 {
            base
        } else {
            let r = x / pi;
            &base * &gauss_sum(p, (-l * r).rem_euclid(pi) as i64)?
        }
    } else if l == 0 {
        Cyclotomic::from_rational(int_pow(pu, 2 * g - 2 + divisible.len() as i64))
    } else {
        let simple: Vec<(i128, i128)> = divisible
            .iter()
            .filter(|&&(a, _)| a as i128 % (pi * pi) != 0)
            .map(|&(a, b)| (a as i128 / pi, b as i128))
            .collect();
        let mut prod = Cyclotomic::one();
        for &(ap, b) in &simple {
            prod = &prod * &gauss_sum(p, (l * ap % pi * b % pi).rem_euclid(pi) as i64)?;
        }
        if simple.len() == divisible.len() {
            let mut sum = 0i128;
            for &(ap, b) in &simple {
                let inv = mod_inverse((4 * l * ap).rem_euclid(pi) as i64, p).expect("4·l·a′ is a unit mod p") as i128;
                sum = (sum + b.rem_euclid(pi) * inv) % pi;
            }
            let lead = gauss_sum(p, (-sum).rem_euclid(pi) as i64)?.scale(&int_pow(pu, 2 * g - 2));
            &lead * &prod
        } else {
            prod.scale(&int_pow(pu, 2 * g - 2 + (divisible.len() - simple.len()) as i64))
        }
    };
    Ok(DWResult::new(value, Method::Prime))
}

/// `Z^ω(M)` by the requested method. `budget` caps the work of the
/// counting oracle.
pub fn compute(
    omega: Arc<ThreeCocycle>,
    seifert: &SeifertData,
    choice: MethodChoice,
    budget: u128,
) -> Result<DWResult> {
    let group: &Arc<FiniteGroup> = omega.group();
    let prime_level = || -> Option<Level> {
        let m = group.cyclic_order()?;
        if m <= 2 || !is_prime(m as i64) {
            return None;
        }
        Level::new(omega.cyclic_level()? as i64, m).ok()
    };
    match choice {
        MethodChoice::Fixed(Method::Prime) => {
            let level = prime_level().ok_or_else(|| {
                Error::Unsupported("the prime closed form needs Z/p (p an odd prime) with a standard ω_l".into())
            })?;
            dw_prime_closed_form(level.modulus() as i64, level, seifert)
        }
        MethodChoice::Fixed(Method::Formula) => dw_formula_for(omega, seifert),
        MethodChoice::Fixed(Method::Oracle) => {
            if !omega.is_trivial() {
                return Err(Error::Unsupported(
                    "the counting oracle only evaluates the trivial cocycle".into(),
                ));
            }
            crate::homoracle::dw_untwisted(group, seifert, budget)
        }
        MethodChoice::Auto => {
            if let Some(level) = prime_level() {
                return dw_prime_closed_form(level.modulus() as i64, level, seifert);
            }
            match CharacterTable::for_cocycle(Arc::clone(&omega)) {
                Ok(table) => dw_formula(&table, seifert),
                Err(Error::Unsupported(_)) if omega.is_trivial() => {
                    crate::homoracle::dw_untwisted(group, seifert, budget)
                }
                Err(e) => Err(e),
            }
        }
    }
}
