//! Exact computation and verification toolkit for the Taylor coefficient
//! polynomials of the Jacobian elliptic functions, their refinements by
//! cycle peaks and increasing trees, and their gamma expansions.

pub mod cache;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod exactpoly;
pub mod gammakit;
pub mod grammar;
pub mod treeoracle;
pub mod triangle;
pub mod verify;

pub use error::{Error, Result};
