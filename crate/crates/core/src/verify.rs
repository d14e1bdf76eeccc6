//! Property suites shared by `dwcalc verify` and the test-suite.
//!
//! Every suite enumerates its cases in a fixed order (random inputs come from a
//! seeded ChaCha stream), checks them in parallel and reports the first failing
//! case in enumeration order, so reports are reproducible byte for byte.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::is_prime;
use crate::cocycles::{omega_l, restriction_level, Level, ThreeCocycle};
use crate::cyclotomic::{Cyclotomic, RootOfUnity};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::homoracle::{dw_untwisted, DEFAULT_BUDGET};
use crate::kappa::{kappa, kappa_oracle, KappaQuery};
use crate::seifert::{dw_formula, dw_prime_closed_form, eta_all, gauss_sum, legendre, SeifertData};
use crate::tqd::{fusion_eigenvalue, CharacterTable, TorusSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Cocycle,
    Kappa,
    Orthonormality,
    Fusion,
    FormulaVsOracle,
    PrimeVsFormula,
    Gauss,
    Gluing,
    Restriction,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Cocycle,
        Suite::Kappa,
        Suite::Orthonormality,
        Suite::Fusion,
        Suite::FormulaVsOracle,
        Suite::PrimeVsFormula,
        Suite::Gauss,
        Suite::Gluing,
        Suite::Restriction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cocycle => "cocycle",
            Suite::Kappa => "kappa",
            Suite::Orthonormality => "orthonormality",
            Suite::Fusion => "fusion",
            Suite::FormulaVsOracle => "formula-vs-oracle",
            Suite::PrimeVsFormula => "prime-vs-formula",
            Suite::Gauss => "gauss",
            Suite::Gluing => "gluing",
            Suite::Restriction => "restriction",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_order: u32,
    pub seed: u64,
    /// Seifert manifolds per group in `formula-vs-oracle`.
    pub seifert_cases: usize,
    /// Cases per (p, branch) in `prime-vs-formula`.
    pub branch_cases: usize,
    /// `|a|, |b|` bound in `kappa`.
    pub kappa_range: i64,
    /// `|a|, |b|` bound in `gluing`.
    pub gluing_range: i64,
    pub gauss_max_prime: i64,
    pub perturbations: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_order: 6,
            seed: 0x5EED,
            seifert_cases: 100,
            branch_cases: 50,
            kappa_range: 12,
            gluing_range: 5,
            gauss_max_prime: 97,
            perturbations: 500,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: u64,
    /// First failing case in enumeration order.
    pub failure: Option<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn run_cases<T: Sync>(suite: Suite, cases: &[T], check: impl Fn(&T) -> Result<Option<String>> + Sync) -> SuiteReport {
    let failure = cases
        .par_iter()
        .map(|c| match check(c) {
            Ok(w) => w,
            Err(e) => Some(format!("error: {e}")),
        })
        .find_first(Option::is_some)
        .flatten();
    SuiteReport {
        suite,
        cases: cases.len() as u64,
        failure,
        notes: Vec::new(),
    }
}

fn level(l: u32, m: u32) -> Level {
    Level::new(l as i64, m).expect("l < m")
}

fn cyclic_levels(max_order: u32) -> Vec<(u32, u32)> {
    (1..=max_order).flat_map(|m| (0..m).map(move |l| (m, l))).collect()
}

/// Invariant-factor lists `d_1 | d_2 | …` of every abelian group of order `≤ max`,
/// one entry per isomorphism class (`[n]` for the cyclic ones).
pub fn abelian_groups_up_to(max: u32) -> Vec<Vec<u32>> {
    fn extend(rest: u32, prev: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in (2..=rest).filter(|d| rest.is_multiple_of(*d) && d % prev == 0) {
            acc.push(d);
            extend(rest / d, d, acc, out);
            acc.pop();
        }
    }
    let mut out = vec![vec![1]];
    for n in 2..=max {
        let mut found = Vec::new();
        extend(n, 1, &mut Vec::new(), &mut found);
        found.sort_by_key(|f| std::cmp::Reverse(f.len() == 1));
        out.extend(found);
    }
    out
}

pub fn group_from_factors(factors: &[u32]) -> FiniteGroup {
    if factors.len() == 1 {
        FiniteGroup::cyclic(factors[0]).expect("positive order")
    } else {
        FiniteGroup::abelian(factors).expect("positive factors")
    }
}

pub fn random_fiber(rng: &mut impl Rng, max_entry: i64) -> (i64, i64) {
    loop {
        let a = rng.gen_range(-max_entry..=max_entry);
        let b = rng.gen_range(-max_entry..=max_entry);
        if a.gcd(&b) == 1 {
            return (a, b);
        }
    }
}

pub fn random_seifert(rng: &mut impl Rng, max_genus: u32, max_fibers: usize, max_entry: i64) -> SeifertData {
    let genus = rng.gen_range(0..=max_genus);
    let n = rng.gen_range(0..=max_fibers);
    let fibers = (0..n).map(|_| random_fiber(rng, max_entry)).collect();
    SeifertData::new(genus, fibers).expect("fibers are coprime")
}

pub fn seifert_suite(seed: u64, count: usize, max_genus: u32, max_fibers: usize, max_entry: i64) -> Vec<SeifertData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_seifert(&mut rng, max_genus, max_fibers, max_entry))
        .collect()
}

/// The case split of the prime closed form: no fiber with `p | a` (`Coprime`),
/// all such fibers with `p² ∤ a` (`Simple`), or some fiber with `p² | a` (`Deep`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeBranch {
    Coprime,
    Simple,
    Deep,
}

pub fn prime_branch(p: i64, s: &SeifertData) -> PrimeBranch {
    let divisible = s.fibers().iter().filter(|(a, _)| a % p == 0);
    if divisible.clone().next().is_none() {
        PrimeBranch::Coprime
    } else if divisible.clone().all(|(a, _)| a % (p * p) != 0) {
        PrimeBranch::Simple
    } else {
        PrimeBranch::Deep
    }
}

/// Seifert data with `g ≤ 2`, `n ≤ 4`, `|a|, |b| ≤ 9` landing in `branch` for `p`.
pub fn prime_branch_suite(p: i64, branch: PrimeBranch, count: usize, seed: u64) -> Vec<SeifertData> {
    const BOUND: i64 = 9;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((p as u64) << 32) ^ branch as u64);
    let units: Vec<i64> = (-BOUND..=BOUND).filter(|a| a % p != 0).collect();
    let simple: Vec<i64> = (-BOUND..=BOUND).filter(|a| a % p == 0 && a % (p * p) != 0).collect();
    let deep: Vec<i64> = (-BOUND..=BOUND).filter(|a| a % (p * p) == 0).collect();
    let fiber = |rng: &mut ChaCha8Rng, pool: &[i64]| loop {
        let a = *pool.choose(rng).expect("non-empty pool");
        let b = rng.gen_range(-BOUND..=BOUND);
        if a.gcd(&b) == 1 {
            return (a, b);
        }
    };
    (0..count)
        .map(|_| {
            let genus = rng.gen_range(0..=2);
            let (min_n, forced, others): (usize, &[i64], Vec<i64>) = match branch {
                PrimeBranch::Coprime => (0, &[], units.clone()),
                PrimeBranch::Simple => (1, &simple, [units.as_slice(), &simple].concat()),
                PrimeBranch::Deep => (1, &deep, (-BOUND..=BOUND).collect()),
            };
            let n = rng.gen_range(min_n..=4);
            let mut fibers = Vec::with_capacity(n);
            if min_n == 1 {
                fibers.push(fiber(&mut rng, forced));
            }
            while fibers.len() < n {
                fibers.push(fiber(&mut rng, &others));
            }
            fibers.shuffle(&mut rng);
            let s = SeifertData::new(genus, fibers).expect("coprime fibers");
            debug_assert_eq!(prime_branch(p, &s), branch);
            s
        })
        .collect()
}

pub fn cocycle_suite(cfg: &VerifyConfig) -> SuiteReport {
    run_cases(Suite::Cocycle, &cyclic_levels(cfg.max_order), |&(m, l)| {
        Ok(omega_l(m, level(l, m))
            .validate()
            .err()
            .map(|e| format!("m={m} l={l}: {e}")))
    })
}

/// `kappa == kappa_oracle` for `m ≤ max_order`, every level, every `z` and
/// `|a|, |b| ≤ kappa_range`.
pub fn kappa_suite(cfg: &VerifyConfig) -> SuiteReport {
    kappa_suite_with(cfg, kappa)
}

/// [`kappa_suite`] with `f` standing in for the closed form.
pub fn kappa_suite_with<F>(cfg: &VerifyConfig, f: F) -> SuiteReport
where
    F: Fn(KappaQuery<'_>) -> Result<RootOfUnity> + Sync,
{
    let r = cfg.kappa_range;
    let cases = cyclic_levels(cfg.max_order);
    let mut report = run_cases(Suite::Kappa, &cases, |&(m, l)| {
        let w = omega_l(m, level(l, m));
        for z in 0..m as usize {
            for a in -r..=r {
                for b in -r..=r {
                    let q = KappaQuery::new(&w, a, b, z);
                    let (got, want) = (f(q)?, kappa_oracle(q)?);
                    if got != want {
                        return Ok(Some(format!(
                            "m={m} l={l} a={a} b={b} z={z}: closed form {got}, cycle product {want}"
                        )));
                    }
                }
            }
        }
        Ok(None)
    });
    report.cases *= (2 * r as u64 + 1).pow(2);
    report
}

fn supported_tables(cfg: &VerifyConfig) -> Vec<(String, Arc<ThreeCocycle>)> {
    let mut out: Vec<(String, Arc<ThreeCocycle>)> = cyclic_levels(cfg.max_order)
        .into_iter()
        .map(|(m, l)| (format!("Z/{m} l={l}"), Arc::new(omega_l(m, level(l, m)))))
        .collect();
    for factors in abelian_groups_up_to(cfg.max_order) {
        if factors.len() > 1 {
            let g = Arc::new(FiniteGroup::abelian(&factors).expect("valid factors"));
            out.push((format!("abelian {factors:?} l=0"), Arc::new(ThreeCocycle::trivial(g))));
        }
    }
    out
}

fn identity_witness(gram: &[Vec<Cyclotomic>]) -> Option<(usize, usize)> {
    for (i, row) in gram.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let ok = if i == j { v.is_one() } else { v.is_zero() };
            if !ok {
                return Some((i, j));
            }
        }
    }
    None
}

/// Characters are orthonormal members of `E`, and so are their `S⁻¹` images.
pub fn orthonormality_suite(cfg: &VerifyConfig) -> SuiteReport {
    run_cases(Suite::Orthonormality, &supported_tables(cfg), |(name, omega)| {
        let table = CharacterTable::for_cocycle(Arc::clone(omega))?;
        let label = |i: usize| table.characters()[i].label.to_string();
        if let Some((i, j)) = identity_witness(&table.gram_matrix()) {
            return Ok(Some(format!("{name}: <χ{}, χ{}> is wrong", label(i), label(j))));
        }
        let values: Vec<_> = table.characters().iter().map(|c| c.values.clone()).collect();
        if let Some((i, w)) = table.space().first_non_member(&values) {
            return Ok(Some(format!(
                "{name}: χ{} violates the E law at (x,h,h')={w:?}",
                label(i)
            )));
        }
        let s = table.s_basis();
        for i in 0..s.len() {
            for j in 0..s.len() {
                let v = s[i].inner(&s[j])?;
                if (i == j && !v.is_one()) || (i != j && !v.is_zero()) {
                    return Ok(Some(format!("{name}: <S⁻¹χ{}, S⁻¹χ{}> = {v}", label(i), label(j))));
                }
            }
        }
        Ok(None)
    })
}

/// `mul(S⁻¹χ_ρ, S⁻¹χ_ρ′) = δ_{ρρ′}·(#Γ/dim χ_ρ)·S⁻¹χ_ρ`.
pub fn fusion_suite(cfg: &VerifyConfig) -> SuiteReport {
    let tables: Vec<_> = supported_tables(cfg)
        .into_iter()
        .map(|(name, omega)| (name, CharacterTable::for_cocycle(omega).expect("supported family")))
        .collect();
    let cases: Vec<(usize, usize)> = tables
        .iter()
        .enumerate()
        .flat_map(|(t, (_, table))| (0..table.len()).map(move |i| (t, i)))
        .collect();
    run_cases(Suite::Fusion, &cases, |&(t, i)| {
        let (name, table) = &tables[t];
        let s = table.s_basis();
        let eig = fusion_eigenvalue(&table.characters()[i])?;
        let expected = s[i].scale(&eig);
        for j in 0..s.len() {
            let prod = s[i].mul(&s[j])?;
            let ok = if i == j { prod == expected } else { prod.is_zero() };
            if !ok {
                let label = |k: usize| table.characters()[k].label.to_string();
                return Ok(Some(format!(
                    "{name}: mul(S⁻¹χ{}, S⁻¹χ{}) is wrong",
                    label(i),
                    label(j)
                )));
            }
        }
        Ok(None)
    })
}

/// Character formula at the trivial cocycle against homomorphism counting, on
/// every abelian group of order `≤ max_order`.
pub fn formula_vs_oracle_suite(cfg: &VerifyConfig) -> SuiteReport {
    let manifolds = seifert_suite(cfg.seed, cfg.seifert_cases, 2, 3, 4);
    let groups = abelian_groups_up_to(cfg.max_order);
    let tables: Vec<_> = groups
        .iter()
        .map(|f| {
            let g = Arc::new(group_from_factors(f));
            CharacterTable::for_cocycle(Arc::new(ThreeCocycle::trivial(g))).expect("abelian, untwisted")
        })
        .collect();
    let cases: Vec<(usize, usize)> = (0..groups.len())
        .flat_map(|g| (0..manifolds.len()).map(move |s| (g, s)))
        .collect();
    let mut report = run_cases(Suite::FormulaVsOracle, &cases, |&(g, s)| {
        let table = &tables[g];
        let m = &manifolds[s];
        let formula = dw_formula(table, m)?.value;
        let oracle = dw_untwisted(table.space().group(), m, DEFAULT_BUDGET)?.value;
        Ok((formula != oracle).then(|| format!("group {:?}, {m}: formula {formula}, oracle {oracle}", groups[g])))
    });
    report
        .notes
        .push(format!("{} groups x {} manifolds", groups.len(), manifolds.len()));
    report
}

/// Prime closed form against the character formula on `Z/p`, `p` odd prime `≤ max_order`.
pub fn prime_vs_formula_suite(cfg: &VerifyConfig) -> SuiteReport {
    let primes: Vec<u32> = (3..=cfg.max_order).filter(|&p| is_prime(p as i64)).collect();
    let branches = [PrimeBranch::Coprime, PrimeBranch::Simple, PrimeBranch::Deep];
    let mut cases = Vec::new();
    for &p in &primes {
        for branch in branches {
            for s in prime_branch_suite(p as i64, branch, cfg.branch_cases, cfg.seed) {
                for l in 0..p {
                    cases.push((p, l, branch, s.clone()));
                }
            }
        }
    }
    let tables: Vec<(u32, u32, CharacterTable)> = primes
        .iter()
        .flat_map(|&p| (0..p).map(move |l| (p, l)))
        .map(|(p, l)| {
            (
                p,
                l,
                CharacterTable::for_cocycle(Arc::new(omega_l(p, level(l, p)))).expect("cyclic"),
            )
        })
        .collect();
    let mut report = run_cases(Suite::PrimeVsFormula, &cases, |(p, l, branch, s)| {
        let table = &tables.iter().find(|t| t.0 == *p && t.1 == *l).expect("table").2;
        let closed = dw_prime_closed_form(*p as i64, level(*l, *p), s)?.value;
        let direct = dw_formula(table, s)?.value;
        Ok((closed != direct).then(|| format!("p={p} l={l} {branch:?} {s}: closed form {closed}, formula {direct}")))
    });
    report.notes.push(format!(
        "primes {primes:?}, {} manifolds per (p, branch), every level",
        cfg.branch_cases
    ));
    report
}

/// `|S_p(a)|² = p` and `S_p(a) = (a/p)·S_p(1)` for `p ∤ a`; also counts how
/// often `S_p(a) = ½(1 + (a/p)·S_p(1))` holds.
pub fn gauss_suite(cfg: &VerifyConfig) -> SuiteReport {
    let primes: Vec<i64> = (3..=cfg.gauss_max_prime).filter(|&p| is_prime(p)).collect();
    let half = BigRational::new(1.into(), 2.into());
    let mut report = run_cases(Suite::Gauss, &primes, |&p| {
        let g1 = gauss_sum(p, 1)?;
        if gauss_sum(p, 0)? != Cyclotomic::from_integer(p) {
            return Ok(Some(format!("S_{p}(0) != {p}")));
        }
        for a in 1..p {
            let s = gauss_sum(p, a)?;
            if &s * &s.conjugate() != Cyclotomic::from_integer(p) {
                return Ok(Some(format!("|S_{p}({a})|² != {p}")));
            }
            if s != g1.scale_int(legendre(a, p)? as i64) {
                return Ok(Some(format!("S_{p}({a}) != ({a}/{p})·S_{p}(1)")));
            }
        }
        Ok(None)
    });
    let variant_holds: usize = primes
        .par_iter()
        .map(|&p| {
            let g1 = gauss_sum(p, 1).expect("odd prime");
            (1..p)
                .filter(|&a| {
                    let variant =
                        (Cyclotomic::one() + g1.scale_int(legendre(a, p).expect("odd prime") as i64)).scale(&half);
                    gauss_sum(p, a).expect("odd prime") == variant
                })
                .count()
        })
        .sum();
    let total: i64 = primes.iter().map(|p| p - 1).sum();
    report.notes.push(format!(
        "S_p(a) = (1 + (a/p)·S_p(1))/2 holds in {variant_holds} of {total} cases"
    ));
    report
}

/// Solid-torus vectors glued along `(a b; a′ b′)` expand as `η_ρ(a,b)/#Γ` in
/// the `S⁻¹χ` basis, for two different completions, and reconstruct exactly.
pub fn gluing_suite(cfg: &VerifyConfig) -> SuiteReport {
    let r = cfg.gluing_range;
    let cases = cyclic_levels(cfg.max_order);
    run_cases(Suite::Gluing, &cases, |&(m, l)| {
        let table = CharacterTable::new(&TorusSpace::new(Arc::new(omega_l(m, level(l, m)))))?;
        let space = table.space();
        let k = BigRational::from_integer((m as i64).into());
        for a in -r..=r {
            for b in -r..=r {
                if a.gcd(&b) != 1 {
                    continue;
                }
                let (a2, b2) = completion(a, b);
                let v1 = space.glued_solid_torus_vector(a, b, a2, b2)?;
                let v2 = space.glued_solid_torus_vector(a, b, a2 + a, b2 + b)?;
                let c1 = table.expand_in_s_basis(&v1)?;
                let c2 = table.expand_in_s_basis(&v2)?;
                let etas = eta_all(&table, a, b)?;
                for (i, ch) in table.characters().iter().enumerate() {
                    let want = etas[i].div_rational(&k)?;
                    if c1[i] != want || c2[i] != want {
                        return Ok(Some(format!(
                            "m={m} l={l} (a,b)=({a},{b}) χ{}: coefficients {} / {}, expected {want}",
                            ch.label, c1[i], c2[i]
                        )));
                    }
                }
                if table.reconstruct(&c1)? != v1 {
                    return Ok(Some(format!("m={m} l={l} (a,b)=({a},{b}): reconstruction differs")));
                }
            }
        }
        Ok(None)
    })
}

/// Some `(a′, b′)` with `a·b′ − b·a′ = 1`.
pub fn completion(a: i64, b: i64) -> (i64, i64) {
    let e = a.extended_gcd(&b);
    // a·x + b·y = ±1
    let sign = e.gcd.signum();
    (-e.y * sign, e.x * sign)
}

/// Restriction levels of `ω_l`: `l` at the generator `1`, `l·u²` at a
/// generator `u`, and unchanged by random coboundaries.
pub fn restriction_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = run_cases(Suite::Restriction, &cyclic_levels(cfg.max_order), |&(m, l)| {
        let w = omega_l(m, level(l, m));
        if m > 1 && restriction_level(&w, 1)? != l {
            return Ok(Some(format!(
                "m={m} l={l}: level at 1 is {}",
                restriction_level(&w, 1)?
            )));
        }
        for u in (1..m).filter(|u| u.gcd(&m) == 1) {
            let got = restriction_level(&w, u as usize)?;
            if got != l * u * u % m {
                return Ok(Some(format!("m={m} l={l}: level at generator {u} is {got}")));
            }
        }
        Ok(None)
    });
    let perturbed = perturbation_report(cfg);
    report.cases += perturbed.cases;
    report.failure = report.failure.or(perturbed.failure);
    report.notes.push(format!(
        "{} coboundary perturbations, m ≤ {}",
        cfg.perturbations,
        cfg.max_order.min(8)
    ));
    report
}

fn perturbation_report(cfg: &VerifyConfig) -> SuiteReport {
    let max_m = cfg.max_order.min(8);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(10));
    let cases: Vec<(u32, u32, u32, Vec<Vec<i64>>)> = if max_m < 2 {
        Vec::new()
    } else {
        (0..cfg.perturbations)
            .map(|_| {
                let m = rng.gen_range(2..=max_m);
                let l = rng.gen_range(0..m);
                let order = *[m, m * m, 2 * m, 12].choose(&mut rng).unwrap();
                let beta = (0..m as usize)
                    .map(|x| {
                        (0..m as usize)
                            .map(|y| {
                                if x == 0 || y == 0 {
                                    0
                                } else {
                                    rng.gen_range(0..order as i64)
                                }
                            })
                            .collect()
                    })
                    .collect();
                (m, l, order, beta)
            })
            .collect()
    };
    run_cases(Suite::Restriction, &cases, |(m, l, order, beta)| {
        let w = omega_l(*m, level(*l, *m));
        let p = w.times_coboundary(*order, beta);
        if let Err(e) = p.validate() {
            return Ok(Some(format!("m={m} l={l}: perturbed table is not a cocycle: {e}")));
        }
        for z in 0..*m as usize {
            let (before, after) = (restriction_level(&w, z)?, restriction_level(&p, z)?);
            if before != after {
                return Ok(Some(format!(
                    "m={m} l={l} z={z}: level {before} became {after} after a coboundary of order {order}"
                )));
            }
        }
        Ok(None)
    })
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    match suite {
        Suite::Cocycle => cocycle_suite(cfg),
        Suite::Kappa => kappa_suite(cfg),
        Suite::Orthonormality => orthonormality_suite(cfg),
        Suite::Fusion => fusion_suite(cfg),
        Suite::FormulaVsOracle => formula_vs_oracle_suite(cfg),
        Suite::PrimeVsFormula => prime_vs_formula_suite(cfg),
        Suite::Gauss => gauss_suite(cfg),
        Suite::Gluing => gluing_suite(cfg),
        Suite::Restriction => restriction_suite(cfg),
    }
}

/// Reports sorted by suite, one table row each.
pub fn run(suites: &[Suite], cfg: &VerifyConfig) -> Vec<SuiteReport> {
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    suites.into_iter().map(|s| run_suite(s, cfg)).collect()
}

pub fn render_table(reports: &[SuiteReport]) -> String {
    let width = reports.iter().map(|r| r.suite.name().len()).max().unwrap_or(5).max(5);
    let mut out = format!("{:<width$}  {:>9}  result\n", "suite", "cases");
    for r in reports {
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        out.push_str(&format!("{:<width$}  {:>9}  {verdict}\n", r.suite.name(), r.cases));
        if let Some(f) = &r.failure {
            out.push_str(&format!("  witness: {f}\n"));
        }
        for n in &r.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            max_order: 4,
            seifert_cases: 10,
            branch_cases: 4,
            kappa_range: 4,
            gluing_range: 3,
            gauss_max_prime: 13,
            perturbations: 40,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn all_suites_pass_small() {
        let reports = run(&Suite::ALL, &small());
        assert_eq!(reports.len(), 9);
        for r in &reports {
            assert!(r.passed(), "{}", render_table(&reports));
            assert!(r.cases > 0, "{}", r.suite);
        }
    }

    #[test]
    fn abelian_group_enumeration() {
        let groups = abelian_groups_up_to(16);
        assert_eq!(groups.len(), 25);
        assert!(groups.contains(&vec![2, 2, 2, 2]));
        assert!(groups.contains(&vec![2, 8]));
        assert!(groups.contains(&vec![4, 4]));
        assert!(groups.contains(&vec![2, 6]));
        assert_eq!(groups.iter().filter(|g| g.iter().product::<u32>() == 16).count(), 5);
    }

    #[test]
    fn branch_generator_lands_in_branch() {
        for p in [3i64, 5, 7] {
            for br in [PrimeBranch::Coprime, PrimeBranch::Simple, PrimeBranch::Deep] {
                for s in prime_branch_suite(p, br, 30, 7) {
                    assert_eq!(prime_branch(p, &s), br, "p={p} {s}");
                }
            }
        }
    }

    #[test]
    fn completions_are_unimodular() {
        for a in -7..=7i64 {
            for b in -7..=7i64 {
                if a.gcd(&b) == 1 {
                    let (c, d) = completion(a, b);
                    assert_eq!(a * d - b * c, 1, "({a},{b})");
                }
            }
        }
    }

    #[test]
    fn injected_kappa_bug_is_reported() {
        let cfg = VerifyConfig {
            max_order: 5,
            kappa_range: 3,
            ..VerifyConfig::default()
        };
        let r = kappa_suite_with(&cfg, |q| kappa(q).map(|k| k.inv()));
        assert!(!r.passed());
        let w = r.failure.unwrap();
        assert!(
            w.contains("m=") && w.contains("l=") && w.contains("a=") && w.contains("z="),
            "{w}"
        );
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = small();
        let a = render_table(&run(&[Suite::Restriction, Suite::Gauss], &cfg));
        let b = render_table(&run(&[Suite::Gauss, Suite::Restriction], &cfg));
        assert_eq!(a, b);
        assert!(a.find("gauss").unwrap() < a.find("restriction").unwrap());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
