//! Exact minimal degrees of faithful representations of finite semigroups by
//! partial and total transformations.

pub mod action;
pub mod builders;
pub mod congruence;
pub mod error;
pub mod formats;
pub mod greens;
pub mod group;
pub mod mindeg;
pub mod oracle;
pub mod rees;
pub mod semigroup;
pub mod structure;

pub use action::PartialAction;
pub use congruence::Congruence;
pub use error::{Error, Result};
pub use greens::GreensStructure;
pub use group::{Group, SubgroupLattice};
pub use rees::{Coord, ReesCoordinatization};
pub use semigroup::{FiniteSemigroup, PartialMap, UNDEF};
pub use structure::Structure;
