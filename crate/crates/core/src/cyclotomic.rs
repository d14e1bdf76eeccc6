//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`Cyclotomic`] of order `N` stores rational coefficients against the
//! power basis `1, ζ_N, …, ζ_N^{φ(N)-1}`, i.e. it is fully reduced modulo the
//! cyclotomic polynomial `Φ_N`. That basis is a `Q`-basis of the field, so the
//! stored vector is canonical and equality needs no floating point.
//!
//! Operands of different orders are embedded into `Q(ζ_lcm)` before they are
//! combined. Bulk sums should go through [`Accumulator`], which collects terms
//! in the (redundant) exponent basis of `Z[x]/(x^N - 1)` and reduces once.

use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{divisors, lcm_u32, totient};
use crate::error::{Error, Result};

static PHI_CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial.
///
/// Results are cached process-wide; concurrent fills compute the same value,
/// so a lost race only wastes work.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let cache = PHI_CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1 = prod_{d | n} Phi_d(x)
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            poly = div_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    let poly = Arc::new(poly);
    cache.write().unwrap().entry(n).or_insert_with(|| Arc::clone(&poly));
    poly
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact division");
    quot
}

/// Reduces a vector indexed by exponents `0..N` modulo `Φ_N`.
fn reduce(order: u32, mut buf: Vec<BigRational>) -> Vec<BigRational> {
    let n = order as usize;
    debug_assert_eq!(buf.len(), n);
    let phi = cyclotomic_polynomial(order);
    let deg = phi.len() - 1;
    let taps: Vec<(usize, BigInt)> = phi[..deg]
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(j, &c)| (j, BigInt::from(c)))
        .collect();
    for i in (deg..n).rev() {
        if buf[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut buf[i]);
        let shift = i - deg;
        for (j, t) in &taps {
            buf[shift + j] -= &c * t;
        }
    }
    buf.truncate(deg);
    buf
}

fn exp_index(k: i64, n: u32) -> usize {
    k.rem_euclid(n as i64) as usize
}

/// An element of `Q(ζ_N)` in canonical power-basis form.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

/// A complex number obtained by evaluating at `ζ_N = exp(2πi/N)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn dist(&self, other: &Complex) -> f64 {
        ((self.re - other.re).powi(2) + (self.im - other.im).powi(2)).sqrt()
    }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![r],
        }
    }

    /// `ζ_N^k` in canonical form.
    pub fn from_root(order: u32, k: i64) -> Self {
        assert!(order >= 1, "root of unity of order 0");
        let mut acc = Accumulator::new(order);
        acc.add_root(k);
        acc.finish()
    }

    /// Builds `Σ c_i ζ_N^i` from an arbitrary coefficient list (length at most `N`).
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Parse("cyclotomic order must be positive".into()));
        }
        if coeffs.len() > order as usize {
            return Err(Error::Parse(format!(
                "{} coefficients given for order {order}",
                coeffs.len()
            )));
        }
        let mut buf = coeffs;
        buf.resize(order as usize, BigRational::zero());
        Ok(Cyclotomic {
            order,
            coeffs: reduce(order, buf),
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coefficients, length `φ(order)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a rational number, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the value in `Q(ζ_M)`; `M` must be a multiple of the order.
    pub fn embed(&self, target: u32) -> Cyclotomic {
        assert!(
            target.is_multiple_of(self.order),
            "cannot embed order {} into {}",
            self.order,
            target
        );
        if target == self.order {
            return self.clone();
        }
        let mut acc = Accumulator::new(target);
        acc.add(self);
        acc.finish()
    }

    /// The same value written over the smallest `Q(ζ_d)` that contains it.
    pub fn minimal_order(&self) -> Cyclotomic {
        if let Some(r) = self.as_rational() {
            return Cyclotomic::from_rational(r);
        }
        for d in divisors(self.order) {
            if d == 1 || d == self.order {
                continue;
            }
            if let Some(y) = self.solve_in_subfield(d) {
                return y;
            }
        }
        self.clone()
    }

    /// Coefficients `y` with `Σ y_j ζ_d^j = self`, by elimination over the
    /// images of `ζ_d^j` in `Q(ζ_N)`.
    fn solve_in_subfield(&self, d: u32) -> Option<Cyclotomic> {
        let step = (self.order / d) as i64;
        let cols = field_degree(d);
        let rows = self.coeffs.len();
        let basis: Vec<Cyclotomic> = (0..cols as i64)
            .map(|j| Cyclotomic::from_root(self.order, j * step))
            .collect();
        let mut m: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = basis.iter().map(|b| b.coeffs[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let mut pivots = Vec::with_capacity(cols);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for v in m[r].iter_mut() {
                *v *= &inv;
            }
            let pivot = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                        *x -= p * &f;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if m[r..].iter().any(|row| !row[cols].is_zero()) {
            return None;
        }
        let mut y = vec![BigRational::zero(); cols];
        for (i, &c) in pivots.iter().enumerate() {
            y[c] = m[i][cols].clone();
        }
        Cyclotomic::from_coeffs(d, y).ok()
    }

    pub fn scale(&self, r: &BigRational) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Cyclotomic {
        self.scale(&BigRational::from_integer(n.into()))
    }

    /// Division by a rational number; the only division this type offers.
    pub fn div_rational(&self, r: &BigRational) -> Result<Cyclotomic> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&r.recip()))
    }

    /// Applies the Galois automorphism `ζ_N ↦ ζ_N^{-1}` (complex conjugation).
    pub fn conjugate(&self) -> Cyclotomic {
        let n = self.order;
        let mut buf = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                buf[exp_index(-(i as i64), n)] += c;
            }
        }
        Cyclotomic {
            order: n,
            coeffs: reduce(n, buf),
        }
    }

    /// Multiplies by the root of unity `r`.
    pub fn mul_root(&self, r: RootOfUnity) -> Cyclotomic {
        if r.is_one() {
            return self.clone();
        }
        let n = lcm_u32(self.order, r.order());
        let mut acc = Accumulator::new(n);
        acc.add_times_root(self, r.exponent_at(n));
        acc.finish()
    }

    pub fn pow(&self, mut e: u32) -> Cyclotomic {
        let mut base = self.clone();
        let mut out = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Numeric value under the principal embedding `ζ_N = exp(2πi/N)`.
    pub fn to_complex(&self) -> Complex {
        let n = self.order as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * i as f64 / n;
            re += c * t.cos();
            im += c * t.sin();
        }
        Complex { re, im }
    }

    fn combine(&self, other: &Cyclotomic, sign: i64) -> Cyclotomic {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign > 0 { other.clone() } else { -other };
        }
        if self.order == other.order {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| if sign > 0 { a + b } else { a - b })
                .collect();
            return Cyclotomic {
                order: self.order,
                coeffs,
            };
        }
        let n = lcm_u32(self.order, other.order);
        let mut acc = Accumulator::new(n);
        acc.add(self);
        if sign > 0 {
            acc.add(other);
        } else {
            acc.add_scaled(other, &-BigRational::one(), 0);
        }
        acc.finish()
    }

    fn product(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let n = lcm_u32(self.order, other.order);
        let mut acc = Accumulator::new(n);
        acc.add_product(self, other, 0);
        acc.finish()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let n = lcm_u32(self.order, other.order);
        self.embed(n).coeffs == other.embed(n).coeffs
    }
}

impl Eq for Cyclotomic {}

impl Default for Cyclotomic {
    fn default() -> Self {
        Cyclotomic::zero()
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(r: BigRational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_integer(n)
    }
}

impl From<RootOfUnity> for Cyclotomic {
    fn from(r: RootOfUnity) -> Self {
        r.to_cyclotomic()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                $body(self, rhs)
            }
        }
        impl $trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                $body(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Cyclotomic, b: &Cyclotomic| a.combine(b, 1));
forward_binop!(Sub, sub, |a: &Cyclotomic, b: &Cyclotomic| a.combine(b, -1));
forward_binop!(Mul, mul, |a: &Cyclotomic, b: &Cyclotomic| a.product(b));

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::one()
    }
}

impl Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Cyclotomic> for Cyclotomic {
    fn sum<I: Iterator<Item = &'a Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| a + b)
    }
}

/// GAP-style rendering, e.g. `1/3 + 2/3*E(3)^2`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "E({})", self.order)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicRepr {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CyclotomicRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| BigRational::from_str(s.trim()).map_err(|e| D::Error::custom(format!("{s:?}: {e}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Cyclotomic::from_coeffs(repr.order, coeffs).map_err(D::Error::custom)
    }
}

/// Collects terms `c·ζ_N^k` in the exponent basis and reduces once at the end.
#[derive(Clone, Debug)]
pub struct Accumulator {
    order: u32,
    buf: Vec<BigRational>,
}

impl Accumulator {
    pub fn new(order: u32) -> Self {
        assert!(order >= 1);
        Accumulator {
            order,
            buf: vec![BigRational::zero(); order as usize],
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Adds `ζ_N^k`.
    pub fn add_root(&mut self, k: i64) {
        self.buf[exp_index(k, self.order)] += BigRational::one();
    }

    /// Adds `c·ζ_N^k`.
    pub fn add_term(&mut self, c: &BigRational, k: i64) {
        self.buf[exp_index(k, self.order)] += c;
    }

    pub fn add(&mut self, x: &Cyclotomic) {
        self.add_times_root(x, 0);
    }

    /// Adds `x·ζ_N^k`; the order of `x` must divide `N`.
    pub fn add_times_root(&mut self, x: &Cyclotomic, k: i64) {
        let step = self.step(x.order);
        for (i, c) in x.coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.buf[exp_index(i as i64 * step + k, self.order)] += c;
            }
        }
    }

    /// Adds `s·x·ζ_N^k` for a rational `s`.
    pub fn add_scaled(&mut self, x: &Cyclotomic, s: &BigRational, k: i64) {
        let step = self.step(x.order);
        for (i, c) in x.coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.buf[exp_index(i as i64 * step + k, self.order)] += c * s;
            }
        }
    }

    /// Adds `x·y·ζ_N^k`; both orders must divide `N`.
    pub fn add_product(&mut self, x: &Cyclotomic, y: &Cyclotomic, k: i64) {
        let sx = self.step(x.order);
        let sy = self.step(y.order);
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let e = i as i64 * sx + j as i64 * sy + k;
                    self.buf[exp_index(e, self.order)] += a * b;
                }
            }
        }
    }

    fn step(&self, order: u32) -> i64 {
        assert!(
            self.order.is_multiple_of(order),
            "order {} does not divide accumulator order {}",
            order,
            self.order
        );
        (self.order / order) as i64
    }

    pub fn finish(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: reduce(self.order, self.buf),
        }
    }
}

/// A root of unity `ζ_N^k`, kept in lowest terms so that equal roots compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    order: u32,
    exponent: u32,
}

impl RootOfUnity {
    pub fn new(order: u32, exponent: i64) -> Self {
        assert!(order >= 1, "root of unity of order 0");
        let e = exponent.rem_euclid(order as i64) as u32;
        let g = num_integer::gcd(e, order);
        // gcd(0, N) = N, which sends ζ_N^0 to ζ_1^0.
        RootOfUnity {
            order: order / g,
            exponent: e / g,
        }
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exponent: 0 }
    }

    /// Multiplicative order of the root.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Exponent `k` with `self = ζ_n^k`; `n` must be a multiple of the order.
    pub fn exponent_at(&self, n: u32) -> i64 {
        assert!(n.is_multiple_of(self.order), "{n} is not a multiple of {}", self.order);
        self.exponent as i64 * (n / self.order) as i64
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn inv(&self) -> Self {
        RootOfUnity::new(self.order, -(self.exponent as i64))
    }

    pub fn pow(&self, e: i64) -> Self {
        let k = (self.exponent as i64 * e.rem_euclid(self.order as i64)) % self.order as i64;
        RootOfUnity::new(self.order, k)
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::from_root(self.order, self.exponent as i64)
    }

    pub fn to_complex(&self) -> Complex {
        let t = std::f64::consts::TAU * self.exponent as f64 / self.order as f64;
        Complex {
            re: t.cos(),
            im: t.sin(),
        }
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        let n = lcm_u32(self.order, rhs.order);
        RootOfUnity::new(n, self.exponent_at(n) + rhs.exponent_at(n))
    }
}

impl std::ops::Div for RootOfUnity {
    type Output = RootOfUnity;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: RootOfUnity) -> RootOfUnity {
        self * rhs.inv()
    }
}

impl std::iter::Product for RootOfUnity {
    fn product<I: Iterator<Item = RootOfUnity>>(iter: I) -> Self {
        iter.fold(RootOfUnity::one(), |a, b| a * b)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exponent) {
            (1, _) => write!(f, "1"),
            (n, 1) => write!(f, "E({n})"),
            (n, k) => write!(f, "E({n})^{k}"),
        }
    }
}

/// Euler's totient of the order, i.e. the dimension of `Q(ζ_N)` over `Q`.
pub fn field_degree(order: u32) -> usize {
    totient(order) as usize
}
