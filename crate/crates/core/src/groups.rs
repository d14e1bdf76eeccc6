//! Finite groups with dense element indices.
//!
//! Elements are `0..order`, identity at index 0. Cyclic groups use residues,
//! abelian products use a row-major mixed-radix index (the last factor varies
//! fastest), and arbitrary groups are given by a Cayley table.

use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Elem = usize;

/// Above this order the associativity check of a Cayley table is skipped
/// unless explicitly requested.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 64;

/// The on-disk group description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic { m: u32 },
    Abelian { factors: Vec<u32> },
    Table { order: usize, table: Vec<Vec<usize>> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssociativityCheck {
    /// Check when the order is at most [`ASSOCIATIVITY_CHECK_LIMIT`].
    Auto,
    Always,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyData {
    pub classes: Vec<Vec<Elem>>,
    /// Least element of each class.
    pub representatives: Vec<Elem>,
    /// Centralizer of each representative, sorted.
    pub centralizers: Vec<Vec<Elem>>,
    /// Class index of every element.
    pub class_of: Vec<usize>,
}

#[derive(Debug)]
enum Repr {
    Cyclic(u32),
    Abelian { factors: Vec<u32>, strides: Vec<usize> },
    Table { table: Vec<Elem>, inverses: Vec<Elem> },
}

#[derive(Debug)]
pub struct FiniteGroup {
    spec: GroupSpec,
    order: usize,
    repr: Repr,
    conjugacy: OnceLock<ConjugacyData>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup::from_spec(self.spec.clone()).expect("spec was validated on construction")
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    pub fn cyclic(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        Ok(FiniteGroup {
            spec: GroupSpec::Cyclic { m },
            order: m as usize,
            repr: Repr::Cyclic(m),
            conjugacy: OnceLock::new(),
        })
    }

    pub fn abelian(factors: &[u32]) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidGroup("abelian factor of order 0".into()));
        }
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        let order = factors.iter().map(|&f| f as usize).product();
        Ok(FiniteGroup {
            spec: GroupSpec::Abelian {
                factors: factors.to_vec(),
            },
            order,
            repr: Repr::Abelian {
                factors: factors.to_vec(),
                strides,
            },
            conjugacy: OnceLock::new(),
        })
    }

    pub fn from_table(table: Vec<Vec<usize>>, check: AssociativityCheck) -> Result<Self> {
        let k = table.len();
        if k == 0 {
            return Err(Error::InvalidGroup("empty Cayley table".into()));
        }
        let mut flat = Vec::with_capacity(k * k);
        for (i, row) in table.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has {} entries, expected {k}",
                    row.len()
                )));
            }
            let mut seen = vec![false; k];
            for &x in row {
                if x >= k {
                    return Err(Error::InvalidGroup(format!("entry {x} in row {i} is out of range")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidGroup(format!("row {i} repeats element {x}")));
                }
            }
            flat.extend_from_slice(row);
        }
        for i in 0..k {
            if flat[i] != i || flat[i * k] != i {
                return Err(Error::InvalidGroup("index 0 is not the identity".into()));
            }
        }
        let mut inverses = vec![usize::MAX; k];
        for a in 0..k {
            match (0..k).find(|&b| flat[a * k + b] == 0) {
                Some(b) if flat[b * k + a] == 0 => inverses[a] = b,
                _ => return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse"))),
            }
        }
        let run_check = match check {
            AssociativityCheck::Always => true,
            AssociativityCheck::Auto => k <= ASSOCIATIVITY_CHECK_LIMIT,
            AssociativityCheck::Skip => false,
        };
        if run_check {
            for a in 0..k {
                for b in 0..k {
                    let ab = flat[a * k + b];
                    for c in 0..k {
                        if flat[ab * k + c] != flat[a * k + flat[b * k + c]] {
                            return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        }
        Ok(FiniteGroup {
            spec: GroupSpec::Table { order: k, table },
            order: k,
            repr: Repr::Table { table: flat, inverses },
            conjugacy: OnceLock::new(),
        })
    }

    pub fn from_spec(spec: GroupSpec) -> Result<Self> {
        match spec {
            GroupSpec::Cyclic { m } => Self::cyclic(m),
            GroupSpec::Abelian { factors } => Self::abelian(&factors),
            GroupSpec::Table { order, table } => {
                if order != table.len() {
                    return Err(Error::InvalidGroup(format!(
                        "declared order {order} but table has {} rows",
                        table.len()
                    )));
                }
                Self::from_table(table, AssociativityCheck::Auto)
            }
        }
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Self::from_spec(serde_json::from_str(json)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// The symmetric group on three letters, as a Cayley table.
    pub fn symmetric3() -> Self {
        // elements: e, (123), (132), (12), (13), (23)
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [2, 1, 0], [0, 2, 1]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = (0..6)
            .map(|a| {
                (0..6)
                    .map(|b| {
                        // (a*b)(i) = a(b(i))
                        let p = [0, 1, 2].map(|i| perms[a][perms[b][i]]);
                        index(p)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table, AssociativityCheck::Always).unwrap()
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn check(&self, g: Elem) -> Result<Elem> {
        if g < self.order {
            Ok(g)
        } else {
            Err(Error::ElementOutOfRange {
                element: g,
                order: self.order,
            })
        }
    }

    /// Cyclic order `m` when the group was built as `Z/m`.
    pub fn cyclic_order(&self) -> Option<u32> {
        match self.repr {
            Repr::Cyclic(m) => Some(m),
            _ => None,
        }
    }

    /// Invariant factors when the group was built as a product of cyclic groups.
    pub fn abelian_factors(&self) -> Option<Vec<u32>> {
        match &self.repr {
            Repr::Cyclic(m) => Some(vec![*m]),
            Repr::Abelian { factors, .. } => Some(factors.clone()),
            Repr::Table { .. } => None,
        }
    }

    /// Mixed-radix coordinates of `g` for cyclic and abelian-product groups.
    pub fn components(&self, g: Elem) -> Option<Vec<u32>> {
        match &self.repr {
            Repr::Cyclic(_) => Some(vec![g as u32]),
            Repr::Abelian { factors, strides } => Some(
                factors
                    .iter()
                    .zip(strides)
                    .map(|(&f, &s)| ((g / s) % f as usize) as u32)
                    .collect(),
            ),
            Repr::Table { .. } => None,
        }
    }

    pub fn element_from_components(&self, comps: &[i64]) -> Result<Elem> {
        match &self.repr {
            Repr::Cyclic(m) if comps.len() == 1 => Ok(comps[0].rem_euclid(*m as i64) as usize),
            Repr::Abelian { factors, strides } if comps.len() == factors.len() => Ok(comps
                .iter()
                .zip(factors.iter().zip(strides))
                .map(|(&c, (&f, &s))| c.rem_euclid(f as i64) as usize * s)
                .sum()),
            _ => Err(Error::InvalidGroup(format!(
                "{} components do not describe an element of {:?}",
                comps.len(),
                self.spec
            ))),
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a < self.order && b < self.order);
        match &self.repr {
            Repr::Cyclic(m) => (a + b) % *m as usize,
            Repr::Abelian { factors, strides } => {
                let mut out = 0;
                for (&f, &s) in factors.iter().zip(strides) {
                    let f = f as usize;
                    out += (((a / s) % f + (b / s) % f) % f) * s;
                }
                out
            }
            Repr::Table { table, .. } => table[a * self.order + b],
        }
    }

    pub fn inv(&self, a: Elem) -> Elem {
        debug_assert!(a < self.order);
        match &self.repr {
            Repr::Cyclic(m) => (*m as usize - a) % *m as usize,
            Repr::Abelian { factors, strides } => {
                let mut out = 0;
                for (&f, &s) in factors.iter().zip(strides) {
                    let f = f as usize;
                    out += ((f - (a / s) % f) % f) * s;
                }
                out
            }
            Repr::Table { inverses, .. } => inverses[a],
        }
    }

    /// `g^n`; negative `n` goes through the inverse.
    pub fn power(&self, g: Elem, n: i64) -> Elem {
        match &self.repr {
            Repr::Cyclic(m) => {
                let m = *m as i64;
                ((g as i64 % m) * n.rem_euclid(m)).rem_euclid(m) as usize
            }
            Repr::Abelian { factors, strides } => {
                let mut out = 0;
                for (&f, &s) in factors.iter().zip(strides) {
                    let f = f as i64;
                    let c = ((g / s) as i64 % f) * n.rem_euclid(f);
                    out += c.rem_euclid(f) as usize * s;
                }
                out
            }
            Repr::Table { .. } => {
                let (mut base, mut e) = if n < 0 {
                    (self.inv(g), n.unsigned_abs())
                } else {
                    (g, n as u64)
                };
                let mut acc = self.identity();
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.mul(acc, base);
                    }
                    base = self.mul(base, base);
                    e >>= 1;
                }
                acc
            }
        }
    }

    pub fn element_order(&self, g: Elem) -> u32 {
        let mut x = g;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u32 {
        self.elements()
            .map(|g| self.element_order(g))
            .fold(1, crate::arith::lcm_u32)
    }

    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        match self.repr {
            Repr::Cyclic(_) | Repr::Abelian { .. } => true,
            Repr::Table { .. } => self
                .elements()
                .all(|a| (a + 1..self.order).all(|b| self.commutes(a, b))),
        }
    }

    pub fn conjugate(&self, by: Elem, x: Elem) -> Elem {
        self.mul(self.mul(by, x), self.inv(by))
    }

    pub fn commutator(&self, u: Elem, v: Elem) -> Elem {
        self.mul(self.mul(u, v), self.mul(self.inv(u), self.inv(v)))
    }

    pub fn centralizer(&self, g: Elem) -> Vec<Elem> {
        self.elements().filter(|&x| self.commutes(g, x)).collect()
    }

    /// Conjugacy classes by orbit enumeration, computed once.
    pub fn conjugacy_data(&self) -> &ConjugacyData {
        self.conjugacy.get_or_init(|| {
            let mut class_of = vec![usize::MAX; self.order];
            let mut classes = Vec::new();
            let mut representatives = Vec::new();
            let mut centralizers = Vec::new();
            for g in self.elements() {
                if class_of[g] != usize::MAX {
                    continue;
                }
                let mut class: Vec<Elem> = self.elements().map(|x| self.conjugate(x, g)).collect();
                class.sort_unstable();
                class.dedup();
                for &c in &class {
                    class_of[c] = classes.len();
                }
                classes.push(class);
                representatives.push(g);
                centralizers.push(self.centralizer(g));
            }
            ConjugacyData {
                classes,
                representatives,
                centralizers,
                class_of,
            }
        })
    }

    /// All ordered pairs `(x, h)` with `xh = hx`, in lexicographic order.
    pub fn commuting_pairs(&self) -> Vec<(Elem, Elem)> {
        self.elements()
            .flat_map(|x| {
                self.elements()
                    .filter(move |&h| self.commutes(x, h))
                    .map(move |h| (x, h))
            })
            .collect()
    }

    /// The same group re-encoded as an explicit Cayley table.
    pub fn to_table(&self) -> FiniteGroup {
        let table = self
            .elements()
            .map(|a| self.elements().map(|b| self.mul(a, b)).collect())
            .collect();
        FiniteGroup::from_table(table, AssociativityCheck::Skip).expect("valid group")
    }
}

/// Parses `cyclic:9`, `abelian:2,4` or `file:<path>`.
impl std::str::FromStr for FiniteGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("group spec {s:?} is not of the form kind:args")))?;
        let ints = |r: &str| -> Result<Vec<u32>> {
            r.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad group parameter {t:?}")))
                })
                .collect()
        };
        match kind.trim() {
            "cyclic" | "Z" => {
                let v = ints(rest)?;
                match v.as_slice() {
                    [m] => FiniteGroup::cyclic(*m),
                    _ => Err(Error::Parse(format!("cyclic expects one order, got {rest:?}"))),
                }
            }
            "abelian" => FiniteGroup::abelian(&ints(rest)?),
            "file" => FiniteGroup::load(rest.trim()),
            other => Err(Error::Parse(format!("unknown group kind {other:?}"))),
        }
    }
}
