//! Plain 2×2 matrix mechanics for single-qubit gates.
//!
//! Nothing here goes through the holomorphic picture except [`bloch_of`],
//! so it serves as the reference the other modules are checked against.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

use nalgebra::{Matrix2, Vector2};

use crate::holo_state::{coherent_point, QubitState};
use crate::mobius::GateName;
use crate::riemann_sphere::{observables_from_z, ObservableTriple};
use crate::{Error, Result, C64, I};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Largest norm drift [`apply`] tolerates before flagging.
pub const NORM_DRIFT_TOLERANCE: f64 = 1e-12;

/// A 2×2 gate matrix in the computational basis `(|0⟩, |1⟩)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gate2x2 {
    pub entries: Matrix2<C64>,
}

impl Gate2x2 {
    pub fn new(entries: Matrix2<C64>) -> Self {
        Self { entries }
    }

    /// `‖G†G − I‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.entries.adjoint() * self.entries - Matrix2::identity()).norm()
    }

    /// `true` when the matrix is a scalar multiple of the identity.
    fn is_scalar(&self, tol: f64) -> bool {
        let m = &self.entries;
        m[(0, 1)].norm() <= tol && m[(1, 0)].norm() <= tol && (m[(0, 0)] - m[(1, 1)]).norm() <= tol
    }
}

/// The conventional matrix for `name`.
pub fn standard_gate(name: GateName) -> Gate2x2 {
    let m = |a, b, c, d| Gate2x2::new(Matrix2::new(a, b, c, d));
    let r = C64::new(FRAC_1_SQRT_2, 0.0);
    match name {
        GateName::I => m(ONE, ZERO, ZERO, ONE),
        GateName::X => m(ZERO, ONE, ONE, ZERO),
        GateName::Y => m(ZERO, -I, I, ZERO),
        GateName::Z => m(ONE, ZERO, ZERO, -ONE),
        GateName::H => m(r, r, r, -r),
        GateName::S => m(ONE, ZERO, ZERO, I),
        GateName::T => m(ONE, ZERO, ZERO, C64::from_polar(1.0, FRAC_PI_4)),
        GateName::Rx(t) => {
            let (s, c) = (t / 2.0).sin_cos();
            m(C64::new(c, 0.0), C64::new(0.0, -s), C64::new(0.0, -s), C64::new(c, 0.0))
        }
        GateName::Ry(t) => {
            let (s, c) = (t / 2.0).sin_cos();
            m(C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0))
        }
        GateName::Rz(t) => m(C64::from_polar(1.0, -t / 2.0), ZERO, ZERO, C64::from_polar(1.0, t / 2.0)),
    }
}

/// Result of [`apply`]: the renormalized state and how far the raw product's
/// norm was from one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Applied {
    pub state: QubitState,
    pub norm_drift: f64,
}

impl Applied {
    pub fn drift_flagged(&self) -> bool {
        self.norm_drift > NORM_DRIFT_TOLERANCE
    }
}

pub fn apply(g: &Gate2x2, q: &QubitState) -> Applied {
    let v = g.entries * Vector2::new(q.a0, q.a1);
    let norm = v.norm();
    Applied {
        state: QubitState::new(v[0], v[1]).expect("unitary image of a unit vector"),
        norm_drift: (norm - 1.0).abs(),
    }
}

/// An eigenvalue with its normalized eigenvector.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct EigenPair {
    pub eigenvalue: C64,
    pub state: QubitState,
}

/// Eigenvalue argument in `(−π, π]`.
fn principal_arg(z: C64) -> f64 {
    let a = z.arg();
    if a <= -PI {
        PI
    } else {
        a
    }
}

/// Fixes the global phase: the larger amplitude is made real positive, ties
/// going to `a₀`.
fn canonical_phase(q: QubitState) -> QubitState {
    let pivot = if q.a0.norm() >= q.a1.norm() - 1e-12 { q.a0 } else { q.a1 };
    let c = pivot.conj() / pivot.norm();
    QubitState { a0: q.a0 * c, a1: q.a1 * c }
}

/// Eigenpairs of the gate matrix, ordered by eigenvalue argument ascending in
/// `(−π, π]` (so `+1` precedes `−1`).
pub fn eigenstates(name: GateName) -> Result<[EigenPair; 2]> {
    eigenstates_of(&standard_gate(name)).map_err(|_| Error::DegenerateGate(name.to_string()))
}

/// Closed-form eigen-decomposition of a unitary 2×2 matrix.
pub fn eigenstates_of(g: &Gate2x2) -> Result<[EigenPair; 2]> {
    if g.is_scalar(1e-12) {
        return Err(Error::DegenerateGate("scalar matrix".into()));
    }
    let m = &g.entries;
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let half_tr = (a + d) / 2.0;
    let disc = ((a - d) / 2.0).powi(2) + b * c;
    let root = disc.sqrt();
    let pair = |lambda: C64| {
        // Both (b, λ−a) and (λ−d, c) solve the system; take the better conditioned.
        let (u, v) = ((b, lambda - a), (lambda - d, c));
        let (x0, x1) = if u.0.norm_sqr() + u.1.norm_sqr() >= v.0.norm_sqr() + v.1.norm_sqr() { u } else { v };
        let state = QubitState::new(x0, x1).expect("non-scalar unitary has nonzero eigenvectors");
        EigenPair { eigenvalue: lambda, state: canonical_phase(state) }
    };
    let mut pairs = [pair(half_tr + root), pair(half_tr - root)];
    pairs.sort_by(|p, q| principal_arg(p.eigenvalue).total_cmp(&principal_arg(q.eigenvalue)));
    Ok(pairs)
}

/// Bloch coordinates of `q` through its coherent point.
///
/// With the chart `z = a₀/a₁` this is `(⟨σ₁⟩, −⟨σ₂⟩, ⟨σ₃⟩)`: the second
/// axis is mirrored relative to the usual expectation values.
pub fn bloch_of(q: &QubitState) -> Result<ObservableTriple> {
    Ok(observables_from_z(coherent_point(q)?))
}

/// `(⟨σ₁⟩, ⟨σ₂⟩, ⟨σ₃⟩)` computed directly from the amplitudes.
pub fn pauli_expectations(q: &QubitState) -> ObservableTriple {
    let cross = q.a0.conj() * q.a1;
    ObservableTriple { x1: 2.0 * cross.re, x2: 2.0 * cross.im, x3: q.a0.norm_sqr() - q.a1.norm_sqr() }
}
