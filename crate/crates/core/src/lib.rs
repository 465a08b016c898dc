//! Constructive desingularization of morphisms into one-dimensional local
//! rings, and strong approximation with a linear Artin function.

pub mod coeff;
pub mod desing;
pub mod elkik;
pub mod error;
pub mod greenberg;
pub mod jet;
pub mod local;
pub mod problem;
pub mod smooth;
pub mod trace;

pub use error::{GndError, Result};
