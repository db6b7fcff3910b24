//! Braid groups, the symplectic Steinberg group St(C_n, Z) and the
//! homomorphism f: B_{2n+2} → St(C_n, Z), with three ways of checking
//! identities: exact symplectic matrices, replayable rewrite certificates
//! and enumeration of finite symplectic groups.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod braid;
pub mod finite;
pub mod golden;
pub mod presentation;
pub mod report;
pub mod root;
pub mod steinberg;
pub mod word;
pub mod zmatrix;

pub use report::{Item, Report, Tier};
pub use root::Root;
pub use word::{Alphabet, Family, GenSymbol, Unit, Word, WordError};
pub use zmatrix::ZMatrix;
