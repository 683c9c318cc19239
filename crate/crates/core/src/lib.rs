//! Exact symbolic computation for the quantum groups C_q[M_N], C_q[U_N] and
//! C_q[SU_N], their coquasi-triangular structure and quantum Killing form,
//! the induced first-order differential calculus with its e-/e0/e+ frame,
//! quantum sphere and projective space bundles, Dolbeault operators, and the
//! canonical strong connection.
//!
//! Everything is computed over the exact field Q(q^(1/N)); there are no
//! floating point numbers and no tolerances anywhere in the crate.
//!
//! Module map:
//! * [`qfield`] - the coefficient field Q(q^(1/N)).
//! * [`ncalg`] - FRT-style noncommutative algebras, rewriting, Hopf structure.
//! * [`killing`] - the r-pairing, its inverse, and the quantum Killing form.
//! * [`calculus`] - the bicovariant quotient calculus and its frame.
//! * [`bundles`] - quantum principal bundles, soldering, connections.
//! * [`verify`] - the suite registry producing machine-readable reports.

pub mod error;
pub mod linalg;
pub mod par;
pub mod qfield;

pub mod bundles;
pub mod calculus;
pub mod killing;
pub mod ncalg;
pub mod verify;

pub use error::{Error, Result};
pub use qfield::QScalar;
