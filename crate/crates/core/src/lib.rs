//! Exact arithmetic for local division algebras and the Ext groups of their
//! smooth irreducible mod-p representations.

pub mod chars;
pub mod cli;
pub mod cohomx;
pub mod dalg;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod numth;
pub mod probes;

pub use error::{Error, Result};
