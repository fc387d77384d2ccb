//! Exact computations with finite groups, subgroup-lattice Möbius functions,
//! Burnside rings, and dimensions of simple biset functors `S_{H,F}(G)` over a
//! field of characteristic zero with trivial coefficient module.

pub mod bgroup;
pub mod burnside;
pub mod cli;
pub mod complement;
pub mod corpus;
pub mod error;
pub mod group;
pub mod incidence;
pub mod lattice;
pub mod linalg;
pub mod rational;
pub mod section_count;
pub mod simple_dim;
pub mod verify;

pub use error::{Error, Result};
pub use group::{make_group, Group, Homomorphism, Subgroup};
pub use rational::BRational;
