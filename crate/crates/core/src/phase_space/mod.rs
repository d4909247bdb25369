//! Finite-field discrete phase space for N = 2, 3, 4.

pub mod dwf;
pub mod field;
pub mod geometry;
pub mod mub;
pub mod net;

pub use dwf::{
    depolarizing_robustness, dwf, mana, operator_expectations, reconstruct, reconstruct_matrix,
    wigner_negativity, DwfGrid,
};
pub use field::{build_field, field_trace, GaloisField};
pub use geometry::{build_striations, PhaseSpaceLine, Point};
pub use mub::{mub_tables, unbiasedness_residual};
pub use net::{phase_point_operator, PhasePointOperator, QuantumNet};
