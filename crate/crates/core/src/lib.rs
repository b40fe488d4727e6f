//! Kähler differentials of graded complete intersections over Q, their
//! Fitting ideals and Rees algebras, with the Gröbner and free-resolution
//! machinery needed to decide linear type and Cohen–Macaulayness.

pub mod algebra;
pub mod complex;
pub mod eagon_northcott;
pub mod error;
pub mod fitting;
pub mod groebner;
pub mod matrix;
pub mod poly;
pub mod rees;
pub mod resolution;
pub mod verifier;

pub use error::{Error, Result};
