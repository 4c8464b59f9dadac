//! Theta constants, modular-type polynomials and certified numerics.
//!
//! The crate is `no_std` with `alloc`. Everything that touches files, the
//! environment or a terminal lives in the companion `jtheta` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod numerics;
pub mod certify;
pub mod elimination;
pub mod gauss;
pub mod linalg;
pub mod modp;
pub mod modpoly;
pub mod numthy;
pub mod parse;
pub mod qseries;
pub mod surd;
pub mod thetafun;
pub mod zseries;
