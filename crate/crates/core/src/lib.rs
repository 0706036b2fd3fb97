//! Verification toolkit for CSX- and XT-groups over finitely based varieties.
//!
//! Finite groups are multiplication tables; varieties are finite identity
//! bases. On top of these sit X-centralizers, maximal X-subgroups,
//! malnormality, verbal and marginal subgroups, universal sentences, and
//! normal forms in free and amalgamated products of finite factors.

pub mod config;
pub mod corpus;
pub mod error;
pub mod files;
pub mod freeprod;
pub mod group;
pub mod properties;
pub mod report;
pub mod suite;
pub mod variety;
pub mod words;

pub use config::Limits;
pub use error::{Error, Result};
pub use group::{ArithOp, FiniteGroup, Lattice, MalnormalityReport, Perm, SubgroupSet};
