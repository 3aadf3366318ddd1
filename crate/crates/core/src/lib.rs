//! Exact construction and verification of DL(P) pencils for singular
//! matrix polynomials over the rationals.

pub mod cli;
pub mod eigenstructure;
pub mod error;
pub mod exactalg;
pub mod genstruct;
pub mod mobius;
pub mod pencil;
pub mod polymat;
pub mod recovery;
pub mod rootpoly;

pub use error::{Error, Result};
