//! Exact combinatorics of higher-order Stirling, Eulerian and quasi-Eulerian
//! triangles: generation, total-positivity testing, real-rootedness
//! certification, combinatorial oracles and formal power series.
//!
//! The crate is `no_std` with `alloc`; IO and formats live in the companion
//! command-line crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod arith;
pub mod linalg;
pub mod modular;
pub mod mpoly;
pub mod oracles;
pub mod poly;
pub mod series;
pub mod triangle;

pub use poly::IntPolynomial;
pub use triangle::{Family, Triangle, TriangleKind};
