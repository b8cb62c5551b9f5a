//! Finite groups with action, crossed modules of groups with action, and
//! their 1-truncated simplicial counterparts.
//!
//! Every group is a Cayley table over the indices `0..n`, with index `0`
//! the identity. The group operation is written additively (`a + b` is
//! `table[a][b]`) even when the group is not abelian. A group with action
//! carries a second table `act[h][g] = g^h`, the right action of `h` on `g`.
//!
//! The crate is `no_std` and only needs `alloc`; file formats, the command
//! line driver and parallel orchestration live in the `gwakit` crate.
//!
//! ```
//! use gwakit_core::catalog::small_group;
//! use gwakit_core::gwa::all_gwa_on_group;
//!
//! let kl4 = small_group(4, 2).unwrap();
//! let all = all_gwa_on_group(&kl4, 12).unwrap();
//! assert_eq!(all.len(), 10);
//! ```
#![no_std]

extern crate alloc;

pub mod catalog;
pub mod error;
pub mod group;
pub mod gwa;
pub mod hom;
pub mod ideal;
pub mod set;
pub mod simplicial;
pub mod subgroup;
pub mod xmod;

pub use error::{Error, Result};
pub use group::Group;
pub use gwa::{GroupWithAction, GwAMorphism};
pub use hom::GroupHom;
pub use ideal::Ideal;
pub use set::ElementSet;
pub use simplicial::{MooreComplex, TruncatedSimplicialGwA};
pub use xmod::{DerivedActionPair, XModGwA, XModGwAMorphism, XModLevel};

/// Default bound on group orders accepted by the exhaustive enumerators.
pub const DEFAULT_MAX_ORDER: usize = 12;
