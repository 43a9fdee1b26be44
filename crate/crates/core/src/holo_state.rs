//! Holomorphic wavefunctions of spin weight `l`.
//!
//! A wavefunction is a polynomial `ψ(z) = Σ_m c_m z^m` of degree at most
//! `n = 2l`, stored densely by monomial index `m = l + j`. The inner product
//! makes `z^m/√(m!(n−m)!)` orthonormal.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::Rng;

use crate::combinatorics::{factorial, MAX_TWICE_SPIN};
use crate::riemann_sphere::{ExtendedComplex, Finite, Infinity};
use crate::{Error, Execution, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Twice the spin, `n = 2l`; the representation has dimension `n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct SpinWeight(u32);

impl SpinWeight {
    pub const ZERO: Self = Self(0);
    pub const HALF: Self = Self(1);

    pub fn new(n: u32) -> Result<Self> {
        if n > MAX_TWICE_SPIN {
            Err(Error::Overflow(n))
        } else {
            Ok(Self(n))
        }
    }

    /// `n = 2l`.
    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn l(self) -> f64 {
        0.5 * f64::from(self.0)
    }

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// `j = m − l` for monomial index `m`.
    pub fn j_of(self, m: usize) -> f64 {
        m as f64 - self.l()
    }

    /// Monomial index `m = l + j`, given `2j`.
    pub fn index_of(self, twice_j: i32) -> Result<usize> {
        let n = self.0 as i32;
        if twice_j.abs() > n || (twice_j + n) % 2 != 0 {
            return Err(Error::IndexOutOfRange { n: self.0, twice_j });
        }
        Ok(((twice_j + n) / 2) as usize)
    }

    /// `m!(n−m)!`, the squared norm of the monomial `z^m`.
    pub fn monomial_norm_sqr(self, m: usize) -> f64 {
        factorial(m as u32) * factorial(self.0 - m as u32)
    }
}

/// Coefficients of `ψ(z) = Σ_m c_m z^m` at a fixed spin weight.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct HoloWavefunction {
    weight: SpinWeight,
    coeffs: Vec<C64>,
}

impl HoloWavefunction {
    /// `coeffs.len()` fixes the weight (`n = len − 1`).
    pub fn from_coeffs(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Mismatch);
        }
        let weight = SpinWeight::new(coeffs.len() as u32 - 1)?;
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Mismatch);
        }
        Ok(Self { weight, coeffs })
    }

    pub fn zero(weight: SpinWeight) -> Self {
        Self { weight, coeffs: vec![ZERO; weight.dim()] }
    }

    /// Random coefficients with real and imaginary parts uniform in `[-1, 1)`.
    pub fn random<R: Rng + ?Sized>(weight: SpinWeight, rng: &mut R) -> Self {
        let coeffs =
            (0..weight.dim()).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        Self { weight, coeffs }
    }

    pub fn weight(&self) -> SpinWeight {
        self.weight
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficients in the orthonormal basis `ψ^l_j`.
    pub fn orthonormal_coeffs(&self) -> Vec<C64> {
        self.coeffs.iter().enumerate().map(|(m, c)| c * self.weight.monomial_norm_sqr(m).sqrt()).collect()
    }

    /// Inverse of [`orthonormal_coeffs`](Self::orthonormal_coeffs).
    pub fn from_orthonormal_coeffs(coeffs: &[C64]) -> Result<Self> {
        let mut psi = Self::from_coeffs(coeffs.to_vec())?;
        let w = psi.weight;
        for (m, c) in psi.coeffs.iter_mut().enumerate() {
            *c /= w.monomial_norm_sqr(m).sqrt();
        }
        Ok(psi)
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self { weight: self.weight, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// `‖ψ‖` under [`inner_product`].
    pub fn norm(&self) -> f64 {
        inner_product(self, self).expect("same weight").re.max(0.0).sqrt()
    }

    /// Largest coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

fn same_weight(a: SpinWeight, b: SpinWeight) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::WeightMismatch { left: a.twice(), right: b.twice() })
    }
}

/// `ψ^l_j = z^{l+j}/√((l+j)!(l−j)!)`, with `j` given as `2j`.
pub fn basis_wavefunction(weight: SpinWeight, twice_j: i32) -> Result<HoloWavefunction> {
    let m = weight.index_of(twice_j)?;
    let mut psi = HoloWavefunction::zero(weight);
    psi.coeffs[m] = C64::new(1.0 / weight.monomial_norm_sqr(m).sqrt(), 0.0);
    Ok(psi)
}

/// `⟨ψ, φ⟩ = Σ_m conj(c_m) d_m m!(n−m)!`, antilinear in the first slot.
pub fn inner_product(psi: &HoloWavefunction, phi: &HoloWavefunction) -> Result<C64> {
    same_weight(psi.weight, phi.weight)?;
    Ok(psi
        .coeffs
        .iter()
        .zip(&phi.coeffs)
        .enumerate()
        .map(|(m, (c, d))| c.conj() * d * psi.weight.monomial_norm_sqr(m))
        .sum())
}

/// `Σ_k (l−k)! c̄_k (d/dz)^{l+k} ψ |_{z=0}`.
///
/// The `(l+k)`-th derivative at the origin is taken directly from the
/// coefficients: `(d/dz)^m ψ(0) = m!·d_m`.
pub fn derivative_pairing(c: &[C64], psi: &HoloWavefunction) -> Result<C64> {
    let n = psi.weight.twice();
    if c.len() != psi.weight.dim() {
        return Err(Error::WeightMismatch { left: c.len().saturating_sub(1) as u32, right: n });
    }
    Ok(c.iter()
        .enumerate()
        .map(|(m, ck)| {
            let derivative_at_zero = psi.coeffs[m] * factorial(m as u32);
            ck.conj() * derivative_at_zero * factorial(n - m as u32)
        })
        .sum())
}

/// Numerical `∫ conj(ψ) φ (1+|z|²)^{−2l} dμ` over the plane, with
/// `dμ = (2l+1) dx dy / (π (1+|z|²)²)`, on a `resolution²` polar grid.
///
/// The radius is reparametrized as `r = tan s`; midpoint rule in `s`,
/// trapezoid rule in the angle. With this measure the monomial Gram matrix
/// coincides with the coefficient form, so `⟨ψ^l_l, ψ^l_l⟩ = 1`.
pub fn quadrature_inner_product(psi: &HoloWavefunction, phi: &HoloWavefunction, resolution: usize) -> Result<C64> {
    quadrature_inner_product_with(psi, phi, resolution, Execution::default())
}

pub fn quadrature_inner_product_with(
    psi: &HoloWavefunction,
    phi: &HoloWavefunction,
    resolution: usize,
    exec: Execution,
) -> Result<C64> {
    same_weight(psi.weight, phi.weight)?;
    if resolution < 64 {
        return Err(Error::ResolutionTooLow { got: resolution, min: 64 });
    }
    let n = psi.weight.twice() as i32;
    let ds = FRAC_PI_2 / resolution as f64;
    let dphi = TAU / resolution as f64;
    let rows = exec.map(resolution, |i| {
        let s = (i as f64 + 0.5) * ds;
        let r = s.tan();
        let one_plus = 1.0 + r * r;
        // weight (1+r²)^{−2l−2} · r · dr/ds, with dr/ds = 1 + r²
        let radial = one_plus.powi(-n - 1) * r;
        let mut row = ZERO;
        for a in 0..resolution {
            let z = C64::from_polar(r, a as f64 * dphi);
            row += eval_poly(&psi.coeffs, z).conj() * eval_poly(&phi.coeffs, z);
        }
        row * radial
    });
    let total: C64 = rows.iter().sum();
    Ok(total * (ds * dphi * f64::from(psi.weight.twice() + 1) / PI))
}

fn eval_poly(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
}

/// Polynomial value; at `∞` the leading (`z^n`) coefficient.
pub fn evaluate(psi: &HoloWavefunction, z: ExtendedComplex) -> C64 {
    match z {
        Finite(z) => eval_poly(&psi.coeffs, z),
        Infinity => psi.coeffs[psi.coeffs.len() - 1],
    }
}

/// Normalized qubit amplitudes `a₀|0⟩ + a₁|1⟩`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct QubitState {
    pub a0: C64,
    pub a1: C64,
}

impl QubitState {
    pub const ZERO_KET: Self = Self { a0: C64::new(1.0, 0.0), a1: ZERO };
    pub const ONE_KET: Self = Self { a0: ZERO, a1: C64::new(1.0, 0.0) };

    /// Normalizes; fails on the zero vector.
    pub fn new(a0: C64, a1: C64) -> Result<Self> {
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        Ok(Self { a0: a0 / norm, a1: a1 / norm })
    }

    /// Uniform on the sphere of states (Haar on the amplitudes).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u1: f64 = rng.random();
        let (p0, p1): (f64, f64) = (rng.random(), rng.random());
        Self { a0: C64::from_polar((1.0 - u1).sqrt(), TAU * p0), a1: C64::from_polar(u1.sqrt(), TAU * p1) }
    }

    pub fn as_array(&self) -> [C64; 2] {
        [self.a0, self.a1]
    }

    /// `min_c max |self − c·other|` over unit `c`, with `c` aligned on the
    /// larger amplitude of `other`.
    pub fn phase_distance(&self, other: &Self) -> f64 {
        let pivot = if other.a0.norm() >= other.a1.norm() { (self.a0, other.a0) } else { (self.a1, other.a1) };
        let ratio = pivot.0 / pivot.1;
        let c = if ratio.norm() > 0.0 { ratio / ratio.norm() } else { C64::new(1.0, 0.0) };
        (self.a0 - c * other.a0).norm().max((self.a1 - c * other.a1).norm())
    }
}

/// `ψ(z) = a₁ + a₀ z`: `|0⟩` is the top monomial, matching `|0⟩ ↔ z = ∞`.
pub fn from_qubit(q: &QubitState) -> HoloWavefunction {
    HoloWavefunction { weight: SpinWeight::HALF, coeffs: vec![q.a1, q.a0] }
}

/// Inverse of [`from_qubit`], normalized.
pub fn to_qubit(psi: &HoloWavefunction) -> Result<QubitState> {
    if psi.weight != SpinWeight::HALF {
        return Err(Error::WrongWeight { expected: 1, found: psi.weight.twice() });
    }
    QubitState::new(psi.coeffs[1], psi.coeffs[0])
}

/// `z = a₀/a₁`, with `a₁ = 0 ↦ ∞`.
pub fn coherent_point(q: &QubitState) -> Result<ExtendedComplex> {
    if q.a0 == ZERO && q.a1 == ZERO {
        return Err(Error::ZeroState);
    }
    if q.a1 == ZERO {
        Ok(Infinity)
    } else {
        Ok(Finite(q.a0 / q.a1))
    }
}
