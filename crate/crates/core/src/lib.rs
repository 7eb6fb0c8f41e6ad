//! Exact arithmetic in iHall algebras of quivers over finite fields.
//!
//! The crate is organised bottom-up: scalars in `coeff`, linear algebra over
//! `F_q` in `finfield`, representations in `quiver`, Hall numbers in `hall`,
//! the iHall product in `ihall`, and the symbolic quantum-group side in `iqg`.
//! `named` and `wpl` build the distinguished elements and the torsion
//! factorisation on top of those; `cli` drives verification suites.

pub mod cli;
pub mod coeff;
pub mod error;
pub mod finfield;
pub mod hall;
pub mod ihall;
pub mod iqg;
pub mod named;
pub mod quiver;
pub mod suites;
pub mod wpl;

pub use error::{Error, Result};
