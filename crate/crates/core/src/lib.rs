//! Holomorphic wave mechanics for a single qubit.
//!
//! The qubit state space is the Riemann sphere `ℂ ∪ {∞}`. Gates act on it as
//! Möbius transformations and on holomorphic wavefunctions (polynomials of
//! degree `2l` in the inhomogeneous coordinate `z`) through the induced spin-`l`
//! representation of SU(2).
//!
//! Every holomorphic-side construction has an independent matrix-mechanics
//! counterpart in [`qubit_oracle`], and [`invariants`] runs the full suite of
//! algebraic and numerical cross-checks between the two.
//!
//! # Modules
//!
//! - [`riemann_sphere`]: extended complex numbers, stereographic projection and
//!   the classical observables in both charts.
//! - [`classical`]: symplectic forms, Hamiltonian vector fields, Poisson and Lie
//!   brackets.
//! - [`mobius`]: SU(2) elements, Möbius maps, fixed points, Euler angles.
//! - [`holo_state`]: holomorphic wavefunctions and their inner products.
//! - [`spin_ops`]: spin and ladder operators as matrices and as recurrences.
//! - [`gate_rep`]: the spin-`l` representation and the gate table.
//! - [`wigner`]: Euler-angle matrix elements through Jacobi polynomials.
//! - [`qubit_oracle`]: standard 2×2 gate mechanics.
//!
//! With the default `parallel` feature, quadratures and random sweeps run on
//! rayon; without it (or with [`Execution::Sequential`]) they run on the calling
//! thread and produce bit-identical results.

pub mod classical;
pub mod combinatorics;
mod error;
mod exec;
pub mod gate_rep;
pub mod holo_state;
pub mod invariants;
pub mod mobius;
pub mod qubit_oracle;
pub mod riemann_sphere;
pub mod spin_ops;
pub mod wigner;

pub use error::{Error, Result};
pub use exec::Execution;

pub use num_complex::Complex64;

/// Shorthand for the complex scalar type used throughout.
pub type C64 = Complex64;

pub(crate) const I: C64 = C64::new(0.0, 1.0);
