//! Genus fields and extended genus fields of abelian extensions of the
//! rational function field `k = F_q(T)`.
//!
//! The crate is `no_std` (with `alloc`). Everything is exact: field
//! elements are residues, character values are elements of `Q/Z`, and the
//! integer linear algebra behind group structures runs on arbitrary
//! precision integers where entries can grow.
//!
//! Layering, bottom to top:
//!
//! - [`field`]: the constant field `F_q`, `l`-th power classes, `mu_l` indices.
//! - [`poly`], [`factor`], [`rational`]: `F_q[T]`, factorization, `Phi(N)`,
//!   rational functions.
//! - [`group`]: finite abelian groups, Smith normal form, canonical subgroups,
//!   annihilators in the dual.
//! - [`units`]: structure of `(F_q[T]/N)^*` with discrete logarithms.
//! - [`chars`]: Dirichlet characters, components, conductors.
//! - [`cyclo`]: subfields of the Carlitz cyclotomic field `Lambda_N`, their
//!   ramification, genus and extended genus fields.
//! - [`abelian`]: fields inside `Lambda_N k_m`, the cyclotomic field times a
//!   constant field extension.
//! - [`kummer`]: power residue symbols and Kummer radicals
//!   `k(m-th root of gamma D)`.
//! - [`genus`]: genus and extended genus fields of Kummer extensions.
//! - [`signs`]: sign functions at the infinite prime.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod abelian;
pub mod arith;
pub mod chars;
pub mod cyclo;
pub mod error;
pub mod factor;
pub mod field;
pub mod genus;
pub mod group;
pub mod kummer;
pub mod poly;
pub mod rational;
pub mod signs;
pub mod units;

pub use abelian::AbelianFieldDesc;
pub use chars::{CharacterGroup, DirichletCharacter};
pub use cyclo::{CyclotomicFieldDesc, RamificationReport};
pub use error::{Error, Result};
pub use factor::FactoredPoly;
pub use field::{FqElem, FqField};
pub use genus::{genus_pipeline, AbelianGenusInput, ExactnessRule, GenusResult};
pub use group::{AbGroup, GroupElem, Qz, Subgroup};
pub use kummer::{residue_symbol, KummerExtensionDesc};
pub use poly::{Poly, PolyRing};
pub use rational::RationalFn;
pub use signs::{sign_infty, LocalKummerElem, LocalKummerShape};
pub use units::ResidueUnitGroup;
