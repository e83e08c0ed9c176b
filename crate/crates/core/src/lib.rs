//! Exact-arithmetic core for the sumset locality workbench.
//!
//! Everything in here computes over exact rationals (`Ratio<BigInt>`) or the
//! integer lattice. There are no floats anywhere in an assertion path: the
//! handful of genuinely irrational quantities (k-th roots from the
//! Brunn-Minkowski chain and power means) go through `roots`, which either
//! detects an exact rational value or produces certified rational enclosures.
//!
//! The crate is `no_std` + `alloc`; IO, file formats, and the CLI live in the
//! companion `sumloc` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bm;
pub mod construct;
pub mod covering;
pub mod error;
pub mod extremal;
pub mod fibered;
pub mod hull;
pub mod interval;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod polycube;
pub mod progression;
pub mod rat;
pub mod roots;
pub mod set_value;
pub mod symmetric;

pub use error::{Error, Result};
pub use rat::Rat;
