//! The torus space `E` and the characters of the twisted quantum double.
//!
//! Vectors of `E` are functions on commuting pairs `(x, h)` satisfying the
//! `γ`-twisted conjugation law. [`TorusSpace`] fixes the group, the cocycle and
//! an ordering of the commuting pairs; [`EVector`] holds one value per pair.
//!
//! Character families are provided for cyclic groups with any `ω_l` and for
//! abelian products with trivial cocycle. Other combinations can still build
//! vectors and use `inner`, `s_inverse` and `mul`, but have no
//! [`CharacterTable`].

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::lcm_u32;
use crate::cocycles::{gamma, ThreeCocycle};
use crate::cyclotomic::{Accumulator, Cyclotomic};
use crate::error::{Error, Result};
use crate::groups::{Elem, FiniteGroup};
use crate::kappa::{kappa, KappaQuery};

const NO_PAIR: usize = usize::MAX;

#[derive(Debug)]
pub struct TorusSpace {
    omega: Arc<ThreeCocycle>,
    pairs: Vec<(Elem, Elem)>,
    index: Vec<usize>,
    centralizers: Vec<Vec<Elem>>,
}

impl TorusSpace {
    pub fn new(omega: Arc<ThreeCocycle>) -> Arc<Self> {
        let group = omega.group();
        let k = group.order();
        let pairs = group.commuting_pairs();
        let mut index = vec![NO_PAIR; k * k];
        for (i, &(x, h)) in pairs.iter().enumerate() {
            index[x * k + h] = i;
        }
        let centralizers = group.elements().map(|h| group.centralizer(h)).collect();
        Arc::new(TorusSpace {
            omega,
            pairs,
            index,
            centralizers,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.omega.group()
    }

    pub fn omega(&self) -> &Arc<ThreeCocycle> {
        &self.omega
    }

    pub fn pairs(&self) -> &[(Elem, Elem)] {
        &self.pairs
    }

    pub fn dimension_bound(&self) -> usize {
        self.pairs.len()
    }

    pub fn pair_index(&self, x: Elem, h: Elem) -> Option<usize> {
        let k = self.group().order();
        match self.index.get(x * k + h) {
            Some(&i) if i != NO_PAIR && x < k && h < k => Some(i),
            _ => None,
        }
    }

    fn same_as(&self, other: &TorusSpace) -> bool {
        std::ptr::eq(self, other) || self.omega == other.omega
    }

    pub fn zero(self: &Arc<Self>) -> EVector {
        EVector {
            space: Arc::clone(self),
            values: vec![Cyclotomic::zero(); self.pairs.len()],
        }
    }

    pub fn from_fn(self: &Arc<Self>, mut f: impl FnMut(Elem, Elem) -> Cyclotomic) -> EVector {
        EVector {
            space: Arc::clone(self),
            values: self.pairs.iter().map(|&(x, h)| f(x, h)).collect(),
        }
    }

    /// The vector of the solid torus, `(x, h) ↦ δ_{x,e}`.
    pub fn solid_torus_vector(self: &Arc<Self>) -> EVector {
        self.from_fn(|x, _| if x == 0 { Cyclotomic::one() } else { Cyclotomic::zero() })
    }

    /// The solid-torus vector pushed forward along the torus map
    /// `(a b; a′ b′)`: `(x, h) ↦ κ_{a,−b}(x^{a′}h^{b′})·δ_{x^a h^b, e}`.
    pub fn glued_solid_torus_vector(self: &Arc<Self>, a: i64, b: i64, a2: i64, b2: i64) -> Result<EVector> {
        if a as i128 * b2 as i128 - b as i128 * a2 as i128 != 1 {
            return Err(Error::NotUnimodular(a, b, a2, b2));
        }
        let g = Arc::clone(self.group());
        let omega = Arc::clone(&self.omega);
        let mut values = Vec::with_capacity(self.pairs.len());
        for &(x, h) in &self.pairs {
            if g.mul(g.power(x, a), g.power(h, b)) != 0 {
                values.push(Cyclotomic::zero());
                continue;
            }
            let z = g.mul(g.power(x, a2), g.power(h, b2));
            values.push(kappa(KappaQuery::new(&omega, a, -b, z))?.to_cyclotomic());
        }
        Ok(EVector {
            space: Arc::clone(self),
            values,
        })
    }

    /// First `(x, h, h′)` at which `v` violates
    /// `v(h′xh′⁻¹, h′hh′⁻¹) = γ_{h′}(x,h)/γ_{h′}(h,x)·v(x,h)`.
    pub fn membership_witness(&self, v: &EVector) -> Option<(Elem, Elem, Elem)> {
        self.first_non_member(std::slice::from_ref(v)).map(|(_, w)| w)
    }

    /// Index of the first vector outside `E`, with its witness; the conjugation
    /// factors are computed once for the whole batch.
    pub fn first_non_member(&self, vs: &[EVector]) -> Option<(usize, (Elem, Elem, Elem))> {
        let g = self.group();
        let mut first: Option<(usize, (Elem, Elem, Elem))> = None;
        for (i, &(x, h)) in self.pairs.iter().enumerate() {
            for hp in g.elements() {
                let j = self
                    .pair_index(g.conjugate(hp, x), g.conjugate(hp, h))
                    .expect("conjugation preserves commuting pairs");
                let factor = gamma(&self.omega, hp, x, h) / gamma(&self.omega, hp, h, x);
                let limit = first.map_or(vs.len(), |(k, _)| k);
                for (k, v) in vs[..limit].iter().enumerate() {
                    let ok = if factor.is_one() {
                        v.values[j] == v.values[i]
                    } else {
                        v.values[j] == v.values[i].mul_root(factor)
                    };
                    if !ok {
                        first = Some((k, (x, h, hp)));
                        break;
                    }
                }
            }
        }
        first
    }

    pub fn is_member(&self, v: &EVector) -> bool {
        self.membership_witness(v).is_none()
    }
}

/// A function on commuting pairs of a [`TorusSpace`].
#[derive(Clone, Debug)]
pub struct EVector {
    space: Arc<TorusSpace>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for EVector {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_as(&other.space) && self.values == other.values
    }
}

impl EVector {
    pub fn space(&self) -> &Arc<TorusSpace> {
        &self.space
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    /// Value at `(x, h)`; `None` when the pair does not commute.
    pub fn get(&self, x: Elem, h: Elem) -> Option<&Cyclotomic> {
        self.space.pair_index(x, h).map(|i| &self.values[i])
    }

    pub fn at(&self, x: Elem, h: Elem) -> &Cyclotomic {
        self.get(x, h)
            .unwrap_or_else(|| panic!("({x}, {h}) is not a commuting pair"))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    fn value_order(&self) -> u32 {
        self.values.iter().map(Cyclotomic::order).fold(1, lcm_u32)
    }

    fn check_space(&self, other: &EVector) -> Result<()> {
        if self.space.same_as(&other.space) {
            Ok(())
        } else {
            Err(Error::MismatchedSpace)
        }
    }

    pub fn scale(&self, r: &BigRational) -> EVector {
        EVector {
            space: Arc::clone(&self.space),
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    pub fn scale_by(&self, c: &Cyclotomic) -> EVector {
        EVector {
            space: Arc::clone(&self.space),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &EVector) -> Result<EVector> {
        self.check_space(other)?;
        Ok(EVector {
            space: Arc::clone(&self.space),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    /// `(u, v) = (1/#Γ)·Σ_{xh=hx} u(x,h)·conj(v(x,h))`.
    pub fn inner(&self, other: &EVector) -> Result<Cyclotomic> {
        self.check_space(other)?;
        let mut acc: Option<Accumulator> = None;
        for (u, v) in self.values.iter().zip(&other.values) {
            if !u.is_zero() && !v.is_zero() {
                acc.get_or_insert_with(|| Accumulator::new(lcm_u32(self.value_order(), other.value_order())))
                    .add_product(u, &v.conjugate(), 0);
            }
        }
        let k = self.space.group().order() as i64;
        Ok(acc
            .map_or_else(Cyclotomic::zero, Accumulator::finish)
            .scale(&BigRational::new(1.into(), k.into())))
    }

    /// `(S⁻¹v)(x, h) = γ_h(x, x⁻¹)⁻¹·v(h, x⁻¹)`.
    pub fn s_inverse(&self) -> EVector {
        let space = &self.space;
        let g = space.group();
        let values = space
            .pairs
            .iter()
            .map(|&(x, h)| {
                let xi = g.inv(x);
                let j = space.pair_index(h, xi).expect("(h, x⁻¹) commutes");
                let v = &self.values[j];
                if v.is_zero() {
                    return Cyclotomic::zero();
                }
                v.mul_root(gamma(&space.omega, h, x, xi).inv())
            })
            .collect();
        EVector {
            space: Arc::clone(space),
            values,
        }
    }

    /// Pair-of-pants product
    /// `mul(u, v)(x, h) = Σ_{x1·x2 = x} γ_h(x1, x2)·u(x1, h)·v(x2, h)`,
    /// summing over `x1` in the centralizer of `h` (so `x2` commutes with `h` too).
    pub fn mul(&self, other: &EVector) -> Result<EVector> {
        self.check_space(other)?;
        let space = &self.space;
        let g = space.group();
        let n = [self.value_order(), other.value_order(), space.omega.root_order()]
            .into_iter()
            .fold(1, lcm_u32);
        let values = space
            .pairs
            .iter()
            .map(|&(x, h)| {
                let mut acc: Option<Accumulator> = None;
                for &x1 in &space.centralizers[h] {
                    let u = &self.values[space.pair_index(x1, h).unwrap()];
                    if u.is_zero() {
                        continue;
                    }
                    let x2 = g.mul(g.inv(x1), x);
                    let v = &other.values[space.pair_index(x2, h).unwrap()];
                    if v.is_zero() {
                        continue;
                    }
                    let phase = gamma(&space.omega, h, x1, x2).exponent_at(n);
                    acc.get_or_insert_with(|| Accumulator::new(n)).add_product(u, v, phase);
                }
                acc.map_or_else(Cyclotomic::zero, Accumulator::finish)
            })
            .collect();
        Ok(EVector {
            space: Arc::clone(space),
            values,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CharacterLabel {
    /// `χ^l_{h,s}` of the cyclic family.
    Cyclic { h: Elem, s: u32 },
    /// `δ_{c,x}·ψ(h)` with `ψ = (ψ_1, …, ψ_r)` indexing `∏ ζ_{m_i}^{ψ_i h_i}`.
    Abelian { c: Elem, psi: Vec<u32> },
}

impl fmt::Display for CharacterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacterLabel::Cyclic { h, s } => write!(f, "(h={h}, s={s})"),
            CharacterLabel::Abelian { c, psi } => write!(f, "(c={c}, psi={psi:?})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TQDCharacter {
    pub label: CharacterLabel,
    pub values: EVector,
    /// `Σ_{x ∈ A} χ(x, e)` over the conjugacy class `A` supporting the character.
    pub dim: Cyclotomic,
}

fn dim_of(values: &EVector, support_rep: Elem) -> Cyclotomic {
    let g = values.space().group();
    let data = g.conjugacy_data();
    data.classes[data.class_of[support_rep]]
        .iter()
        .map(|&x| values.at(x, 0))
        .sum()
}

/// `χ^l_{h,s}(x, y) = δ_{h,x}·ζ_{m²}^{l·h·y + m·s·y}` inside a space built on `ω_l`.
pub fn chi_cyclic_in(space: &Arc<TorusSpace>, h: Elem, s: u32) -> Result<TQDCharacter> {
    let g = space.group();
    let m = g
        .cyclic_order()
        .ok_or_else(|| Error::Unsupported("cyclic characters need a cyclic group".into()))?;
    let l = space
        .omega()
        .cyclic_level()
        .ok_or_else(|| Error::Unsupported("cocycle is not one of the standard ω_l".into()))?;
    g.check(h)?;
    if s >= m {
        return Err(Error::Unsupported(format!("s = {s} out of range for Z/{m}")));
    }
    let (mu, lu, hu, su) = (m as u64, l as u64, h as u64, s as u64);
    let values = space.from_fn(|x, y| {
        if x != h {
            return Cyclotomic::zero();
        }
        let e = (lu * hu * y as u64 + mu * su * y as u64) % (mu * mu);
        Cyclotomic::from_root(m * m, e as i64)
    });
    let dim = dim_of(&values, h);
    Ok(TQDCharacter {
        label: CharacterLabel::Cyclic { h, s },
        values,
        dim,
    })
}

/// Stand-alone `χ^l_{h,s}` on `Z/m` with `ω_l`.
pub fn chi_cyclic(m: u32, level: crate::cocycles::Level, h: Elem, s: u32) -> Result<TQDCharacter> {
    let space = TorusSpace::new(Arc::new(crate::cocycles::omega_l(m, level)));
    chi_cyclic_in(&space, h, s)
}

/// `χ_{c,ψ}(x, h) = δ_{c,x}·ψ(h)` for an abelian product group and trivial `ω`.
pub fn chi_abelian_untwisted(space: &Arc<TorusSpace>, c: Elem, psi: &[u32]) -> Result<TQDCharacter> {
    if !space.omega().is_trivial() {
        return Err(Error::Unsupported("untwisted characters need a trivial cocycle".into()));
    }
    let g = space.group();
    let factors = g
        .abelian_factors()
        .ok_or_else(|| Error::Unsupported("untwisted characters need an abelian product group".into()))?;
    g.check(c)?;
    if psi.len() != factors.len() || psi.iter().zip(&factors).any(|(p, f)| p >= f) {
        return Err(Error::Unsupported(format!(
            "character index {psi:?} does not match factors {factors:?}"
        )));
    }
    let n = factors.iter().copied().fold(1, lcm_u32);
    let values = space.from_fn(|x, h| {
        if x != c {
            return Cyclotomic::zero();
        }
        let comps = g.components(h).unwrap();
        let e: u64 = comps
            .iter()
            .zip(psi.iter().zip(&factors))
            .map(|(&hc, (&p, &f))| hc as u64 * p as u64 * (n / f) as u64)
            .sum();
        Cyclotomic::from_root(n, (e % n as u64) as i64)
    });
    let dim = dim_of(&values, c);
    Ok(TQDCharacter {
        label: CharacterLabel::Abelian { c, psi: psi.to_vec() },
        values,
        dim,
    })
}

/// The full list of characters of a supported `(Γ, ω)` together with their
/// `S⁻¹` images.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    space: Arc<TorusSpace>,
    characters: Vec<TQDCharacter>,
    s_basis: Vec<EVector>,
}

impl CharacterTable {
    pub fn new(space: &Arc<TorusSpace>) -> Result<Self> {
        let g = space.group();
        let omega = space.omega();
        let characters = if let (Some(m), Some(_)) = (g.cyclic_order(), omega.cyclic_level()) {
            let mut out = Vec::with_capacity((m * m) as usize);
            for h in g.elements() {
                for s in 0..m {
                    out.push(chi_cyclic_in(space, h, s)?);
                }
            }
            out
        } else if let (Some(factors), true) = (g.abelian_factors(), omega.is_trivial()) {
            let dual = FiniteGroup::abelian(&factors)?;
            let mut out = Vec::with_capacity(g.order() * g.order());
            for c in g.elements() {
                for psi in dual.elements() {
                    out.push(chi_abelian_untwisted(space, c, &dual.components(psi).unwrap())?);
                }
            }
            out
        } else {
            return Err(Error::Unsupported(format!(
                "no character family for {:?} with this cocycle (supported: cyclic groups with ω_l, abelian products with trivial ω)",
                g.spec()
            )));
        };
        let s_basis = characters.iter().map(|c| c.values.s_inverse()).collect();
        Ok(CharacterTable {
            space: Arc::clone(space),
            characters,
            s_basis,
        })
    }

    pub fn for_cocycle(omega: Arc<ThreeCocycle>) -> Result<Self> {
        Self::new(&TorusSpace::new(omega))
    }

    pub fn space(&self) -> &Arc<TorusSpace> {
        &self.space
    }

    pub fn characters(&self) -> &[TQDCharacter] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn position(&self, label: &CharacterLabel) -> Option<usize> {
        self.characters.iter().position(|c| &c.label == label)
    }

    /// `S⁻¹χ_ρ` for every character, in table order.
    pub fn s_basis(&self) -> &[EVector] {
        &self.s_basis
    }

    pub fn gram_matrix(&self) -> Vec<Vec<Cyclotomic>> {
        self.characters
            .iter()
            .map(|a| {
                self.characters
                    .iter()
                    .map(|b| a.values.inner(&b.values).expect("same space"))
                    .collect()
            })
            .collect()
    }

    /// Coefficients `c_ρ = (v, S⁻¹χ_ρ)`.
    pub fn expand_in_s_basis(&self, v: &EVector) -> Result<Vec<Cyclotomic>> {
        self.s_basis.iter().map(|b| v.inner(b)).collect()
    }

    /// `Σ_ρ c_ρ·S⁻¹χ_ρ`.
    pub fn reconstruct(&self, coeffs: &[Cyclotomic]) -> Result<EVector> {
        if coeffs.len() != self.s_basis.len() {
            return Err(Error::Unsupported(format!(
                "{} coefficients for a basis of size {}",
                coeffs.len(),
                self.s_basis.len()
            )));
        }
        let n = coeffs
            .iter()
            .chain(self.s_basis.iter().flat_map(|b| b.values.iter()))
            .fold(1, |n, c| lcm_u32(n, c.order()));
        let values = (0..self.space.pairs.len())
            .map(|p| {
                let mut acc: Option<Accumulator> = None;
                for (c, b) in coeffs.iter().zip(&self.s_basis) {
                    let v = &b.values[p];
                    if !c.is_zero() && !v.is_zero() {
                        acc.get_or_insert_with(|| Accumulator::new(n)).add_product(c, v, 0);
                    }
                }
                acc.map_or_else(Cyclotomic::zero, Accumulator::finish)
            })
            .collect();
        Ok(EVector {
            space: Arc::clone(&self.space),
            values,
        })
    }
}

/// `#Γ / dim χ` as a rational, the fusion eigenvalue of `S⁻¹χ`.
pub fn fusion_eigenvalue(ch: &TQDCharacter) -> Result<BigRational> {
    let dim = ch
        .dim
        .as_rational()
        .filter(|d| !d.is_zero())
        .ok_or_else(|| Error::Unsupported(format!("dimension {} is not a non-zero rational", ch.dim)))?;
    let k = ch.values.space().group().order() as i64;
    Ok(BigRational::from_integer(k.into()) / dim)
}
