//! Exact symbolic engine for Fox calculus and Magnus representations.
//!
//! Everything is computed over exact integer coefficient rings: the
//! noncommutative group ring Z[F_n] of a free group, the Laurent ring Z[H]
//! of its abelianization, and the fraction field K_H. No floating point,
//! no truncation except the explicitly truncated Magnus expansions used for
//! nilpotent quotients.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `foxcalc` crate.

#![cfg_attr(not(test), no_std)]
// Dense index arithmetic over matrix blocks reads better with explicit loops.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod alexander;
pub mod cylinder;
pub mod error;
pub mod fox;
pub mod magnus;
pub mod matrix;
pub mod nilpotent;
pub mod ring;
pub mod words;

pub use error::{Error, Result};
