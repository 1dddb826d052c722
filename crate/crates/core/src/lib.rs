//! Exact symbolic engine for motivic decompositions of cellular varieties.
//!
//! Motives of cellular (and relatively cellular) varieties are modeled as
//! finite formal sums of Tate objects `Z(p)[q]` ([`TateSum`]); classes in the
//! Grothendieck ring of varieties are integer polynomials in the Lefschetz
//! class `L` ([`LPolynomial`]). On top of these the crate computes:
//!
//! - Weyl group combinatorics of crystallographic root systems ([`rootsys`]),
//! - cell decompositions and their Chow ranks ([`cellular`]),
//! - flag varieties, Leray–Hirsch products and tower motives ([`flags`]),
//! - Renner cell tables and orbit classes of wonderful compactifications
//!   ([`wonderful`]),
//! - inclusion–exclusion for mixed Tate configurations ([`configurations`]),
//! - class-level G-bundle machinery and the face-lattice filtration
//!   ([`gbundle`]).
//!
//! All arithmetic is exact and overflow-checked. With the `parallel` feature
//! (on by default) the heavy loops run on rayon; see [`Execution`].

pub mod cellular;
pub mod configurations;
mod error;
pub mod exec;
pub mod flags;
pub mod gbundle;
pub mod rootsys;
pub mod tate;
pub mod wonderful;

pub use error::{Error, Result};
pub use exec::Execution;
pub use rootsys::{CartanType, Family, ParabolicSubset, RootSystem, WeylElement, WeylGroup};
pub use tate::{LPolynomial, TateSum};

/// Default cap on the number of Weyl group elements an enumeration may produce.
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

/// Default cap on the number of `(u, v)` entries of a single cell table.
pub const DEFAULT_CELL_CAP: usize = 10_000_000;
