//! Normalized `U(1)`-valued 3-cocycles, stored as full tables of roots of unity.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};
use crate::groups::{Elem, FiniteGroup};

/// A cohomology level `l` of `Z/m`, with `0 <= l < m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Level {
    value: u32,
    m: u32,
}

impl Level {
    pub fn new(l: i64, m: u32) -> Result<Self> {
        if m == 0 || l < 0 || l >= m as i64 {
            return Err(Error::LevelOutOfRange { level: l, m });
        }
        Ok(Level { value: l as u32, m })
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleKind {
    /// `ω_l(x,y,z) = ζ_m^{l·x·⌊(y+z)/m⌋}` on `Z/m`.
    Standard {
        m: u32,
        level: u32,
    },
    Explicit,
}

#[derive(Clone, Debug)]
pub struct ThreeCocycle {
    group: Arc<FiniteGroup>,
    root_order: u32,
    exponents: Vec<u32>,
    kind: CocycleKind,
}

impl PartialEq for ThreeCocycle {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.root_order == other.root_order && self.exponents == other.exponents
    }
}

/// On-disk cocycle table: `values[x][y][z]` is the exponent `k` of `ζ_N^k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleFile {
    pub values: Vec<Vec<Vec<i64>>>,
    pub root_order: u32,
}

/// The standard representative `ω_l` on `Z/m`.
pub fn omega_l(m: u32, level: Level) -> ThreeCocycle {
    assert_eq!(level.modulus(), m, "level belongs to a different modulus");
    let group = Arc::new(FiniteGroup::cyclic(m).expect("m >= 1"));
    let l = level.value() as u64;
    let mu = m as u64;
    let mut c = ThreeCocycle::from_fn(group, m, |x, y, z| (l * x as u64 * ((y + z) as u64 / mu)) as i64);
    c.kind = CocycleKind::Standard {
        m,
        level: level.value(),
    };
    c
}

impl ThreeCocycle {
    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        Self::from_fn(group, 1, |_, _, _| 0)
    }

    /// Tabulates `ζ_N^{f(x,y,z)}` without validating it.
    pub fn from_fn(group: Arc<FiniteGroup>, root_order: u32, f: impl Fn(Elem, Elem, Elem) -> i64) -> Self {
        assert!(root_order >= 1);
        let k = group.order();
        let mut exponents = Vec::with_capacity(k * k * k);
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    exponents.push(f(x, y, z).rem_euclid(root_order as i64) as u32);
                }
            }
        }
        ThreeCocycle {
            group,
            root_order,
            exponents,
            kind: CocycleKind::Explicit,
        }
    }

    /// Builds and validates a cocycle from the JSON table format.
    pub fn from_file_repr(group: Arc<FiniteGroup>, file: &CocycleFile) -> Result<Self> {
        let k = group.order();
        if file.root_order == 0 {
            return Err(Error::InvalidCocycle("root_order must be positive".into()));
        }
        let shape_ok = file.values.len() == k
            && file
                .values
                .iter()
                .all(|p| p.len() == k && p.iter().all(|r| r.len() == k));
        if !shape_ok {
            return Err(Error::InvalidCocycle(format!("table is not {k}x{k}x{k}")));
        }
        let c = Self::from_fn(group, file.root_order, |x, y, z| file.values[x][y][z]);
        c.validate()?;
        Ok(c)
    }

    pub fn load(group: Arc<FiniteGroup>, path: impl AsRef<Path>) -> Result<Self> {
        let file: CocycleFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        Self::from_file_repr(group, &file)
    }

    pub fn to_file_repr(&self) -> CocycleFile {
        let k = self.group.order();
        let values = (0..k)
            .map(|x| {
                (0..k)
                    .map(|y| (0..k).map(|z| self.exponent(x, y, z) as i64).collect())
                    .collect()
            })
            .collect();
        CocycleFile {
            values,
            root_order: self.root_order,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn kind(&self) -> CocycleKind {
        self.kind
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    fn index(&self, x: Elem, y: Elem, z: Elem) -> usize {
        let k = self.group.order();
        (x * k + y) * k + z
    }

    /// Raw exponent of `ω(x,y,z)` against `ζ_{root_order}`.
    pub fn exponent(&self, x: Elem, y: Elem, z: Elem) -> u32 {
        self.exponents[self.index(x, y, z)]
    }

    pub fn value(&self, x: Elem, y: Elem, z: Elem) -> RootOfUnity {
        RootOfUnity::new(self.root_order, self.exponent(x, y, z) as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// First triple with an identity argument and a non-trivial value.
    pub fn normalization_witness(&self) -> Option<(Elem, Elem, Elem)> {
        let k = self.group.order();
        for a in 0..k {
            for b in 0..k {
                for t in [(0, a, b), (a, 0, b), (a, b, 0)] {
                    if self.exponent(t.0, t.1, t.2) != 0 {
                        return Some(t);
                    }
                }
            }
        }
        None
    }

    /// First quadruple violating
    /// `ω(y,z,w)·ω(x,yz,w)·ω(x,y,z) = ω(xy,z,w)·ω(x,y,zw)`.
    pub fn cocycle_witness(&self) -> Option<(Elem, Elem, Elem, Elem)> {
        let g = &self.group;
        let k = g.order();
        let n = self.root_order as u64;
        for x in 0..k {
            for y in 0..k {
                let xy = g.mul(x, y);
                for z in 0..k {
                    let yz = g.mul(y, z);
                    let xyz_part = self.exponent(x, y, z) as u64;
                    for w in 0..k {
                        let lhs = self.exponent(y, z, w) as u64 + self.exponent(x, yz, w) as u64 + xyz_part;
                        let rhs = self.exponent(xy, z, w) as u64 + self.exponent(x, y, g.mul(z, w)) as u64;
                        if lhs % n != rhs % n {
                            return Some((x, y, z, w));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(t) = self.normalization_witness() {
            return Err(Error::InvalidCocycle(format!("not normalized at {t:?}")));
        }
        if let Some(q) = self.cocycle_witness() {
            return Err(Error::InvalidCocycle(format!("cocycle identity fails at {q:?}")));
        }
        Ok(())
    }

    /// `ω·δβ` for a 2-cochain `β(x,y) = ζ_N^{beta[x][y]}`, where
    /// `δβ(x,y,z) = β(y,z)·β(x,yz) / (β(xy,z)·β(x,y))`.
    pub fn times_coboundary(&self, beta_order: u32, beta: &[Vec<i64>]) -> ThreeCocycle {
        let g = Arc::clone(&self.group);
        let n = crate::arith::lcm_u32(self.root_order, beta_order);
        let s_self = (n / self.root_order) as i64;
        let s_beta = (n / beta_order) as i64;
        let out = ThreeCocycle::from_fn(Arc::clone(&g), n, |x, y, z| {
            let d = beta[y][z] + beta[x][g.mul(y, z)] - beta[g.mul(x, y)][z] - beta[x][y];
            self.exponent(x, y, z) as i64 * s_self + d * s_beta
        });
        ThreeCocycle {
            kind: CocycleKind::Explicit,
            ..out
        }
    }

    /// The level `l` when this is exactly the table of `ω_l` on a cyclic group.
    pub fn cyclic_level(&self) -> Option<u32> {
        if let CocycleKind::Standard { level, .. } = self.kind {
            return Some(level);
        }
        let m = self.group.cyclic_order()?;
        if m == 1 {
            return Some(0);
        }
        let l = restriction_level(self, 1).ok()?;
        let standard = omega_l(m, Level::new(l as i64, m).ok()?);
        let same = self.group.elements().all(|x| {
            self.group.elements().all(|y| {
                self.group
                    .elements()
                    .all(|z| self.value(x, y, z) == standard.value(x, y, z))
            })
        });
        same.then_some(l)
    }
}

/// `γ^ω_h(x1,x2) = ω(h,x1,x2)·ω(hx1h⁻¹,hx2h⁻¹,h) / ω(hx1h⁻¹,h,x2)`.
pub fn gamma(omega: &ThreeCocycle, h: Elem, x1: Elem, x2: Elem) -> RootOfUnity {
    let g = omega.group();
    let cx1 = g.conjugate(h, x1);
    let cx2 = g.conjugate(h, x2);
    omega.value(h, x1, x2) * omega.value(cx1, cx2, h) / omega.value(cx1, h, x2)
}

/// `θ^ω_x(h1,h2) = ω(x,h1,h2)·ω(h1,h2,h1h2xh2⁻¹h1⁻¹) / ω(h1,h1xh1⁻¹,h2)`.
pub fn theta(omega: &ThreeCocycle, x: Elem, h1: Elem, h2: Elem) -> RootOfUnity {
    let g = omega.group();
    let h1h2 = g.mul(h1, h2);
    omega.value(x, h1, h2) * omega.value(h1, h2, g.conjugate(h1h2, x)) / omega.value(h1, g.conjugate(h1, x), h2)
}

/// `α^l_h(x) = ζ_{m²}^{l·h·x}`, the trivialization of `θ^l_h` on `Z/m`.
pub fn alpha_l(m: u32, level: Level, h: Elem, x: Elem) -> RootOfUnity {
    let m2 = m * m;
    let e = level.value() as u64 * (h as u64 % m as u64) * (x as u64 % m as u64);
    RootOfUnity::new(m2, (e % m2 as u64) as i64)
}

/// The level `ℓ ∈ Z/m'` (with `m'` the order of `z`) of `ω` restricted to
/// `⟨z⟩`, read off from `∏_{j<m'} ω(z, z^j, z) = ζ_{m'}^ℓ`.
///
/// The product is unchanged by coboundaries: the `β` factors telescope.
pub fn restriction_level(omega: &ThreeCocycle, z: Elem) -> Result<u32> {
    let g = omega.group();
    g.check(z)?;
    let order = g.element_order(z);
    let mut zj = g.identity();
    let mut prod = RootOfUnity::one();
    for _ in 0..order {
        prod = prod * omega.value(z, zj, z);
        zj = g.mul(zj, z);
    }
    if !order.is_multiple_of(prod.order()) {
        return Err(Error::InvalidCocycle(format!(
            "restriction product {prod} at z = {z} is not a root of unity of order dividing {order}"
        )));
    }
    Ok(prod.exponent_at(order) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(l: i64, m: u32) -> Level {
        Level::new(l, m).unwrap()
    }

    #[test]
    fn standard_values() {
        let w = omega_l(2, lv(1, 2));
        assert_eq!(w.value(1, 1, 1), RootOfUnity::new(2, 1));
        let w = omega_l(3, lv(2, 3));
        assert_eq!(w.value(2, 2, 2), RootOfUnity::new(3, 1));
        for m in 1..=6 {
            for l in 0..m {
                let w = omega_l(m, lv(l as i64, m));
                for y in 0..m as usize {
                    for z in 0..m as usize {
                        assert!(w.value(0, y, z).is_one());
                    }
                }
            }
        }
    }

    #[test]
    fn levels_are_range_checked() {
        assert!(Level::new(9, 9).is_err());
        assert!(Level::new(-1, 9).is_err());
        assert!(Level::new(8, 9).is_ok());
    }

    #[test]
    fn gamma_and_theta_small_cases() {
        let w = omega_l(2, lv(1, 2));
        assert_eq!(gamma(&w, 1, 1, 1), RootOfUnity::new(2, 1));
        assert_eq!(theta(&w, 1, 1, 1), RootOfUnity::new(2, 1));
        for x in 0..2 {
            for y in 0..2 {
                assert!(gamma(&w, 0, x, y).is_one());
                assert!(theta(&w, 0, x, y).is_one());
            }
        }
        let t = ThreeCocycle::trivial(Arc::new(FiniteGroup::symmetric3()));
        assert!(gamma(&t, 3, 1, 4).is_one());
    }

    #[test]
    fn theta_matches_cyclic_closed_form() {
        for m in 1..=12u32 {
            for l in 0..m {
                let w = omega_l(m, lv(l as i64, m));
                for h in 0..m as usize {
                    for x in 0..m as usize {
                        for y in 0..m as usize {
                            let want = RootOfUnity::new(m, (l as usize * h * ((x + y) / m as usize)) as i64);
                            assert_eq!(theta(&w, h, x, y), want, "m={m} l={l} h={h} x={x} y={y}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn alpha_trivializes_omega() {
        assert_eq!(alpha_l(3, lv(1, 3), 1, 2), RootOfUnity::new(9, 2));
        assert!(alpha_l(5, lv(0, 5), 3, 4).is_one());
        for m in 1..=12u32 {
            for l in 0..m {
                let level = lv(l as i64, m);
                let w = omega_l(m, level);
                let g = w.group().clone();
                for h in g.elements() {
                    for x in g.elements() {
                        for y in g.elements() {
                            let cob =
                                alpha_l(m, level, h, x) * alpha_l(m, level, h, y) / alpha_l(m, level, h, g.mul(x, y));
                            assert_eq!(w.value(h, x, y), cob);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_symmetric_for_cyclic() {
        for m in 1..=12u32 {
            for l in 0..m {
                let w = omega_l(m, lv(l as i64, m));
                for h in 0..m as usize {
                    for x in 0..m as usize {
                        for y in 0..m as usize {
                            assert_eq!(gamma(&w, h, x, y), gamma(&w, h, y, x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_level_examples() {
        let g = Arc::new(FiniteGroup::cyclic(6).unwrap());
        assert_eq!(restriction_level(&ThreeCocycle::trivial(g), 2).unwrap(), 0);
        for m in 1..=12u32 {
            for l in 0..m {
                let w = omega_l(m, lv(l as i64, m));
                if m > 1 {
                    assert_eq!(restriction_level(&w, 1).unwrap(), l);
                }
                // a generator u of Z/m pulls the class back to l·u²
                for u in 1..m {
                    if num_integer::gcd(u, m) == 1 {
                        assert_eq!(restriction_level(&w, u as usize).unwrap(), l * u * u % m);
                    }
                }
            }
        }
        // z = 2 in Z/6 generates a subgroup of order 3; ω_l restricts to ω_{l mod 3}
        for l in 0..6 {
            let w = omega_l(6, lv(l, 6));
            assert_eq!(restriction_level(&w, 2).unwrap(), (l % 3) as u32);
        }
    }

    #[test]
    fn restriction_level_rejects_non_cocycles() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        // ω(1,1,1) = ζ_9 is not a cocycle, and the product is not a cube root of unity
        let bad = ThreeCocycle::from_fn(g, 9, |x, y, z| (x == 1 && y == 1 && z == 1) as i64);
        assert!(bad.validate().is_err());
        assert!(restriction_level(&bad, 1).is_err());
    }

    #[test]
    fn file_round_trip() {
        let w = omega_l(4, lv(3, 4));
        let file = w.to_file_repr();
        let back = ThreeCocycle::from_file_repr(w.group().clone(), &file).unwrap();
        assert_eq!(back, w);
        assert_eq!(back.cyclic_level(), Some(3));
        let mut broken = file.clone();
        broken.values[1][1][1] += 1;
        assert!(ThreeCocycle::from_file_repr(w.group().clone(), &broken).is_err());
        broken.values.pop();
        assert!(ThreeCocycle::from_file_repr(w.group().clone(), &broken).is_err());
    }
}
