//! An exact-arithmetic workbench for generalized rook-Brauer diagram algebras:
//! plain, group-labelled, and braided-rook flavors, together with the homology
//! Tor of their augmented algebras and the group homology they are compared
//! against.

pub mod algebra;
pub mod bar;
pub mod braid;
pub mod diagram;
pub mod error;
pub mod group;
pub mod linkstate;
pub mod matrix;
pub mod oracle;
pub mod scalar;
pub mod suites;

pub use error::{Error, Result};
