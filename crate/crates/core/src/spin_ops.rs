//! Spin angular-momentum and ladder operators for arbitrary spin weight.
//!
//! As differential operators on `ψ(z)`:
//!
//! ```text
//! Ŝ₁ = lz + ½(1 − z²) d/dz      Ŝ₊ = 2lz − z² d/dz
//! Ŝ₂ = −ilz + (i/2)(1 + z²) d/dz Ŝ₋ = d/dz
//! Ŝ₃ = −l + z d/dz
//! ```
//!
//! Matrices index monomials `m = l + j` in ascending order; column `m` holds
//! the image of `z^m`. The qubit ordering (`|0⟩ = z¹` first) is only used at
//! the 2×2 boundary, see [`OperatorMatrix::to_qubit_ordering`].

use nalgebra::DMatrix;

use crate::holo_state::{HoloWavefunction, SpinWeight};
use crate::{Error, Result, C64, I};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Coordinates an operator matrix is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Plain monomials `z^m`.
    Monomial,
    /// `ψ^l_j = z^m/√(m!(n−m)!)`.
    Orthonormal,
}

impl std::str::FromStr for Basis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "monomial" => Ok(Basis::Monomial),
            "orthonormal" => Ok(Basis::Orthonormal),
            other => Err(format!("unknown basis `{other}` (expected monomial|orthonormal)")),
        }
    }
}

/// A `(n+1)×(n+1)` operator at a fixed spin weight, tagged with its basis.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    weight: SpinWeight,
    basis: Basis,
    entries: DMatrix<C64>,
}

impl OperatorMatrix {
    pub fn new(weight: SpinWeight, basis: Basis, entries: DMatrix<C64>) -> Result<Self> {
        if entries.nrows() != weight.dim() || entries.ncols() != weight.dim() {
            return Err(Error::Mismatch);
        }
        Ok(Self { weight, basis, entries })
    }

    pub fn identity(weight: SpinWeight, basis: Basis) -> Self {
        Self { weight, basis, entries: DMatrix::identity(weight.dim(), weight.dim()) }
    }

    pub fn zeros(weight: SpinWeight, basis: Basis) -> Self {
        Self { weight, basis, entries: DMatrix::zeros(weight.dim(), weight.dim()) }
    }

    pub fn weight(&self) -> SpinWeight {
        self.weight
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<C64> {
        self.entries
    }

    /// The same operator written in `basis`.
    ///
    /// With `W = diag(1/√(m!(n−m)!))` taking orthonormal coordinates to
    /// monomial ones, `A_orth = W⁻¹ A_mono W`.
    pub fn in_basis(&self, basis: Basis) -> Self {
        if basis == self.basis {
            return self.clone();
        }
        let w = self.weight;
        let scale: Vec<f64> = (0..w.dim()).map(|m| w.monomial_norm_sqr(m).sqrt()).collect();
        let entries = DMatrix::from_fn(w.dim(), w.dim(), |r, c| {
            let ratio = match basis {
                Basis::Orthonormal => scale[r] / scale[c],
                Basis::Monomial => scale[c] / scale[r],
            };
            self.entries[(r, c)] * ratio
        });
        Self { weight: w, basis, entries }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.weight != other.weight || self.basis != other.basis {
            Err(Error::Mismatch)
        } else {
            Ok(())
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.with_entries(&self.entries * &other.entries))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.with_entries(&self.entries + &other.entries))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.with_entries(&self.entries - &other.entries))
    }

    pub fn scale(&self, s: C64) -> Self {
        self.with_entries(self.entries.map(|x| x * s))
    }

    pub fn adjoint(&self) -> Self {
        self.with_entries(self.entries.adjoint())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.norm()
    }

    /// `‖self − other‖_F`.
    pub fn frobenius_distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.frobenius_norm())
    }

    /// Reverses the index order. For `n = 1` this is the qubit ordering
    /// `(|0⟩, |1⟩) = (z, 1)`.
    pub fn to_qubit_ordering(&self) -> DMatrix<C64> {
        let d = self.weight.dim();
        DMatrix::from_fn(d, d, |r, c| self.entries[(d - 1 - r, d - 1 - c)])
    }

    fn with_entries(&self, entries: DMatrix<C64>) -> Self {
        Self { weight: self.weight, basis: self.basis, entries }
    }
}

/// One of the five spin operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpinOp {
    S1,
    S2,
    S3,
    Raise,
    Lower,
}

impl SpinOp {
    pub fn axis(k: u8) -> Result<Self> {
        match k {
            1 => Ok(SpinOp::S1),
            2 => Ok(SpinOp::S2),
            3 => Ok(SpinOp::S3),
            _ => Err(Error::InvalidAxis(k)),
        }
    }
}

/// Monomial-basis matrix of `op`, read off its action on each `z^m`.
fn monomial_matrix(op: SpinOp, weight: SpinWeight) -> DMatrix<C64> {
    let n = weight.twice() as usize;
    let l = weight.l();
    let mut a = DMatrix::zeros(n + 1, n + 1);
    for m in 0..=n {
        let mf = m as f64;
        // Coefficients of z^{m+1} and z^{m−1} in op(z^m); the diagonal only for Ŝ₃.
        let (up, down) = match op {
            // l z^{m+1} + (m/2) z^{m−1} − (m/2) z^{m+1}
            SpinOp::S1 => (C64::new(l - 0.5 * mf, 0.0), C64::new(0.5 * mf, 0.0)),
            // −il z^{m+1} + (im/2) z^{m−1} + (im/2) z^{m+1}
            SpinOp::S2 => (I * (0.5 * mf - l), I * (0.5 * mf)),
            SpinOp::S3 => {
                a[(m, m)] = C64::new(mf - l, 0.0);
                (ZERO, ZERO)
            }
            // 2l z^{m+1} − m z^{m+1}
            SpinOp::Raise => (C64::new(2.0 * l - mf, 0.0), ZERO),
            SpinOp::Lower => (ZERO, C64::new(mf, 0.0)),
        };
        if m < n {
            a[(m + 1, m)] = up;
        }
        if m > 0 {
            a[(m - 1, m)] = down;
        }
    }
    a
}

fn build(op: SpinOp, weight: SpinWeight, basis: Basis) -> OperatorMatrix {
    OperatorMatrix { weight, basis: Basis::Monomial, entries: monomial_matrix(op, weight) }.in_basis(basis)
}

/// `Ŝ_k`, `k ∈ 1..=3`.
pub fn spin_operator(k: u8, weight: SpinWeight, basis: Basis) -> Result<OperatorMatrix> {
    Ok(build(SpinOp::axis(k)?, weight, basis))
}

/// `Ŝ₊` when `raise`, otherwise `Ŝ₋`.
pub fn ladder_operator(raise: bool, weight: SpinWeight, basis: Basis) -> OperatorMatrix {
    build(if raise { SpinOp::Raise } else { SpinOp::Lower }, weight, basis)
}

/// `Ŝ₁² + Ŝ₂² + Ŝ₃²`.
pub fn casimir(weight: SpinWeight, basis: Basis) -> OperatorMatrix {
    let mut total = OperatorMatrix::zeros(weight, basis);
    for k in 1..=3 {
        let s = spin_operator(k, weight, basis).expect("valid axis");
        total = total.add(&s.mul(&s).expect("same shape")).expect("same shape");
    }
    total
}

/// `AB − BA`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Applies `a` to `ψ`. Wavefunctions carry monomial coefficients, so an
/// orthonormal-basis operator is converted first.
pub fn apply(a: &OperatorMatrix, psi: &HoloWavefunction) -> Result<HoloWavefunction> {
    if a.weight != psi.weight() {
        return Err(Error::WeightMismatch { left: a.weight.twice(), right: psi.weight().twice() });
    }
    let mono = a.in_basis(Basis::Monomial);
    let v = nalgebra::DVector::from_column_slice(psi.coeffs());
    let out = mono.entries * v;
    HoloWavefunction::from_coeffs(out.as_slice().to_vec())
}

/// Applies the differential operator by coefficient recurrence, without a matrix.
pub fn apply_raw_differential(op: SpinOp, psi: &HoloWavefunction) -> HoloWavefunction {
    let c = psi.coeffs();
    let n = c.len() - 1;
    let l = psi.weight().l();
    // ψ' has coefficients (m+1)c_{m+1} at z^m.
    let deriv = |m: usize| if m < n { c[m + 1] * (m + 1) as f64 } else { ZERO };
    // z·ψ and z²·ψ' at z^m; the z^{n+1} terms cancel for every operator here.
    let z_psi = |m: usize| if m >= 1 { c[m - 1] } else { ZERO };
    let z2_deriv = |m: usize| if m >= 1 { c[m - 1] * (m - 1) as f64 } else { ZERO };
    let out = (0..=n)
        .map(|m| match op {
            SpinOp::S1 => l * z_psi(m) + 0.5 * (deriv(m) - z2_deriv(m)),
            SpinOp::S2 => -I * l * z_psi(m) + 0.5 * I * (deriv(m) + z2_deriv(m)),
            SpinOp::S3 => c[m] * (m as f64 - l),
            SpinOp::Raise => 2.0 * l * z_psi(m) - z2_deriv(m),
            SpinOp::Lower => deriv(m),
        })
        .collect();
    HoloWavefunction::from_coeffs(out).expect("same length")
}
