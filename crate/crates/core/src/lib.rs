//! Exact verification of root-subgroup definability results for Chevalley
//! groups over small finite rings.

pub mod error;
pub mod rings;
pub mod rootsys;
pub mod chevgroup;
pub mod witnesses;
pub mod definability;
pub mod adelic;
pub mod report;

pub use error::{Error, Result};
pub use rings::{Ring, RingElem};
