//! Negative quantum states from discrete phase space, their evolution under
//! non-Markovian noise, and weak-measurement protection.

pub mod channels;
pub mod error;
pub mod experiments;
pub mod measures;
pub mod numerics;
pub mod phase_space;
pub mod protection;
pub mod states;

pub use error::{Error, Result};
pub use numerics::{DensityMatrix, PureState};
