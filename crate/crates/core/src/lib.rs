//! Exact verification engine for the deformed W_N algebra.

pub mod algebra;
pub mod characters;
pub mod config;
pub mod dump;
pub mod error;
pub mod fock;
pub mod limits;
pub mod relations;
pub mod report;
pub mod structfn;
pub mod suite;
pub mod zalg;
pub mod zeta;
pub mod wcurrents;

pub use error::{Error, Result};
