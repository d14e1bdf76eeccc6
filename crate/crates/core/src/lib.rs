//! Exact Dijkgraaf–Witten invariants of orientable Seifert 3-manifolds.
//!
//! The crate is organized bottom-up:
//!
//! - [`cyclotomic`]: exact arithmetic in `Q(ζ_N)`, the number type of every result
//! - [`groups`]: finite groups as dense element indices
//! - [`cocycles`]: normalized 3-cocycles, the cyclic family `ω_l` and derived cochains
//! - [`kappa`]: the gluing phase `κ^ω_{a,b}(z)` with its cycle-product oracle
//! - [`tqd`]: the torus space, twisted quantum double characters, `S⁻¹`, fusion
//! - [`seifert`]: Seifert data, fiber weights `η`, the character formula and
//!   the prime-order closed forms
//! - [`homoracle`]: untwisted invariants by counting homomorphisms `π₁(M) → Γ`
//! - [`verify`]: property suites shared by the CLI and the test-suite
//! - [`cli`]: the `dwcalc` command line

pub mod arith;
pub mod cli;
pub mod cocycles;
pub mod cyclotomic;
pub mod error;
pub mod groups;
pub mod homoracle;
pub mod kappa;
pub mod seifert;
pub mod tqd;
pub mod verify;

pub use cocycles::{omega_l, Level, ThreeCocycle};
pub use cyclotomic::{Cyclotomic, RootOfUnity};
pub use error::{Error, Result};
pub use groups::{Elem, FiniteGroup};
