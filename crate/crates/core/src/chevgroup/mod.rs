//! Chevalley groups as matrix groups over finite rings.

pub mod bruhat;
pub mod commutator;
pub mod enumerate;
pub mod group;
pub mod linear;
pub mod matrix;
pub mod rep;
pub mod subgroup;

pub use bruhat::{verify_bruhat, weyl_group, BruhatReport, WeylElement};
pub use commutator::{commutator_coefficients, commutator_word};
pub use enumerate::{spanning_subset, EnumeratedGroup, DEFAULT_CAP};
pub use group::{parse_rep, Chevalley, WeylImage};
pub use matrix::{GroupElem, IntMat, MatOps};
pub use rep::{Form, MatrixRep};
pub use linear::{commutant_group_points, linear_commutant};
pub use subgroup::{set_product, Subgroup};
