//! Exact arithmetic dynamics over rational function fields `F_q(t)`.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command line
//! live in the companion `ffdyn` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod funcfield;
pub mod heights;
pub mod arboreal;
pub mod integrality;
pub mod ratmap;
pub mod reduction;
pub mod superelliptic;
pub mod zsigmondy;
pub mod text;

pub use error::{Error, Result};
