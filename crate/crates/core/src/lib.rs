//! Exact constructions and finite-field verification for varieties with one
//! apparent double point: cubic Jordan algebras, quadro-quadric Cremona maps,
//! parametrized varieties and their secant statistics.

pub mod cremona;
pub mod error;
pub mod exact;
pub mod jordan;
pub mod varieties;
pub mod verify;

pub use error::{Error, Result};
