//! Exact Satake-side computations for spherical Hecke algebras of `GL_r` and
//! `GSp_2g`, with finite-field oracles for the counting statements.

pub mod error;
pub mod finvec;
pub mod frobchar;
pub mod cli;
pub mod degrees;
pub mod hecke_gl;
pub mod hodge;
pub mod motive_inv;
pub mod poly;
pub mod redsim;
pub mod siegel;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{LaurentPoly, Rational, VarSet};
