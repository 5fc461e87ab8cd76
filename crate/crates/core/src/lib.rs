//! Finite permutation groups and the machinery for deciding whether a
//! group is *evolving*: every `p`-subgroup `I` sits in a subgroup `J` of
//! `p`-power index with `|J:I|` prime to `p`.
//!
//! Three independent routes decide the property and are cross-checked:
//! the direct subgroup search ([`evolving::is_evolving`]), the Sylow-family
//! and intense-automorphism test ([`evolving::is_prime_intense`]), and the
//! degree-0 Tate cohomology criterion on permutation modules
//! ([`tate::evolving_via_tate`]).

pub mod arith;
pub mod catalog;
pub mod error;
pub mod evolving;
pub mod group;
pub mod intense;
pub mod perm;
pub mod subgroups;
pub mod tate;

pub use error::{GroupError, Result};
pub use group::{Caps, FiniteGroup};
pub use perm::Permutation;
pub use subgroups::{Subgroup, SubgroupLattice};
