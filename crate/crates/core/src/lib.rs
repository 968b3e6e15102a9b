//! Subset sums and related structural invariants in finite abelian groups.

pub mod bounds;
pub mod error;
pub mod group;
pub mod naive;
pub mod search;
mod snf;
pub mod structure;
pub mod subgroup;
pub mod subset;
pub mod suites;
pub mod sumset;

pub use error::{Error, Result};
pub use group::{make_group, Element, Group, GroupSpec};
pub use subgroup::{span, subgroups, Quotient, Subgroup, SubgroupLattice};
pub use subset::GroupSubset;
pub use sumset::{hat, k_wedge, lambda, period, sigma, sigma_star, sumset};
