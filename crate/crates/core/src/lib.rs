//! Finite-time Lyapunov profiles of elementary cellular automata.
//!
//! A single flipped cell is tracked along a random reference trajectory;
//! per-cell defect counts `eps_T` give the profile `(1/T) ln eps_T`, which is
//! normalized by the trinomial bound `(1/T) ln C2(T, 0)`.

pub mod cli;
pub mod defect;
pub mod eca;
mod error;
pub mod experiment;
pub mod lyapunov;
pub mod render;

pub use error::{Error, Result};
