//! Euler-angle matrix elements from the Jacobi-polynomial closed form,
//!
//! ```text
//! D^l_{kj} = ((−1)^{l+k}/2^l) √((l+k)!/((l−k)!(l−j)!(l+j)!)) e^{i(jθ₃+kθ′₃)}
//!            · sin(θ₂/2)^{j−k} cos(θ₂/2)^{−(k+j)} · P^{(j−k, −(k+j))}_{l+k}(cos θ₂),
//! ```
//!
//! and a cross-check against the binomial expansion of [`representation_matrix`].
//!
//! The printed prefactor does not give a unitary matrix. Measured against the
//! expansion, row `k` carries an extra real factor `(−1)^{l+k}/(2^l (l−k)!)`;
//! the `corrected` variant of [`dmatrix`] divides it out.
//!
//! [`representation_matrix`]: crate::gate_rep::representation_matrix

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, ToPrimitive};
use serde::Serialize;

use crate::combinatorics::{factorial, generalized_binomial_exact, MAX_TWICE_SPIN};
use crate::gate_rep::{phase_align, representation_matrix};
use crate::holo_state::SpinWeight;
use crate::mobius::{euler_compose, EulerAngles};
use crate::spin_ops::{Basis, OperatorMatrix};
use crate::{Error, Result, C64};

/// Half-angle sines or cosines below this count as zero for negative powers.
pub const SINGULAR_HALF_ANGLE: f64 = 1e-12;

/// Offset used to approach `θ₂ ∈ {0, π}` from both sides in [`dmatrix`].
pub const CONTINUITY_OFFSET: f64 = 1e-8;

/// `m·2^e`, exact.
#[derive(Clone, Debug)]
struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    fn one() -> Self {
        Self { mant: BigInt::from(1), exp: 0 }
    }

    fn from_f64(x: f64) -> Self {
        let (m, e, sign) = x.integer_decode();
        Self { mant: BigInt::from(m) * i64::from(sign), exp: i64::from(e) }
    }

    fn mul(&self, other: &Self) -> Self {
        Self { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    fn scale_int(&self, k: i128) -> Self {
        Self { mant: &self.mant * BigInt::from(k), exp: self.exp }
    }

    fn add(&self, other: &Self) -> Self {
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        Self { mant: a + b, exp: e }
    }

    fn half(&self) -> Self {
        Self { mant: self.mant.clone(), exp: self.exp - 1 }
    }

    /// Correctly rounded.
    fn to_f64(&self) -> f64 {
        let r = if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::from(1) << (-self.exp) as usize)
        };
        r.to_f64().unwrap_or(f64::NAN)
    }
}

fn power_table(x: &Dyadic, n: usize) -> Vec<Dyadic> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Dyadic::one());
    for i in 1..=n {
        out.push(out[i - 1].mul(x));
    }
    out
}

/// `Σ_s C(n+a, s) C(n+b, n−s) xm^{n−s} xp^s` from precomputed powers.
fn jacobi_sum(n: usize, a: i64, b: i64, xm_pows: &[Dyadic], xp_pows: &[Dyadic]) -> f64 {
    let n_i = n as i64;
    let mut acc = Dyadic { mant: BigInt::from(0), exp: 0 };
    for s in 0..=n {
        let c = generalized_binomial_exact(n_i + a, s as u32) * generalized_binomial_exact(n_i + b, (n - s) as u32);
        if c != 0 {
            acc = acc.add(&xm_pows[n - s].mul(&xp_pows[s]).scale_int(c));
        }
    }
    acc.to_f64()
}

/// Arguments of `P^{(a,b)}_n(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JacobiParams {
    pub degree: u32,
    pub a: i64,
    pub b: i64,
    pub x: f64,
}

/// Jacobi polynomial by the explicit binomial sum
/// `Σ_s C(n+a, s) C(n+b, n−s) ((x−1)/2)^{n−s} ((x+1)/2)^s`, valid for any
/// integer `a, b`.
///
/// The sum alternates in sign and cancels badly in floating point, so it is
/// carried out exactly in dyadic rationals and rounded once.
pub fn jacobi(p: JacobiParams) -> Result<f64> {
    if p.degree > MAX_TWICE_SPIN {
        return Err(Error::DegreeTooLarge(p.degree));
    }
    let n = p.degree as usize;
    let x = Dyadic::from_f64(p.x);
    let xm = x.add(&Dyadic { mant: BigInt::from(-1), exp: 0 }).half();
    let xp = x.add(&Dyadic::one()).half();
    Ok(jacobi_sum(n, p.a, p.b, &power_table(&xm, n), &power_table(&xp, n)))
}

/// Per-angle data shared by every element of one matrix.
struct HalfAngle {
    sin: f64,
    cos: f64,
    theta2: f64,
    xm_pows: Vec<Dyadic>,
    xp_pows: Vec<Dyadic>,
}

impl HalfAngle {
    fn new(theta2: f64, n: usize) -> Self {
        let (sin, cos) = (theta2 / 2.0).sin_cos();
        // (cos θ₂ − 1)/2 = −sin², (cos θ₂ + 1)/2 = cos², without the cancellation.
        let xm = Dyadic::from_f64(-sin * sin);
        let xp = Dyadic::from_f64(cos * cos);
        Self { sin, cos, theta2, xm_pows: power_table(&xm, n), xp_pows: power_table(&xp, n) }
    }
}

fn checked_powi(base: f64, exp: i32, theta2: f64) -> Result<f64> {
    if exp < 0 && base.abs() < SINGULAR_HALF_ANGLE {
        return Err(Error::AngleSingularity(theta2));
    }
    Ok(base.powi(exp))
}

/// The element with monomial indices `mk = l+k`, `mj = l+j`.
fn element(weight: SpinWeight, mk: usize, mj: usize, e: &EulerAngles, h: &HalfAngle) -> Result<C64> {
    let n = weight.twice() as usize;
    let l = weight.l();
    let (k, j) = (weight.j_of(mk), weight.j_of(mj));
    let sign = if mk.is_multiple_of(2) { 1.0 } else { -1.0 };
    let norm = (factorial(mk as u32)
        / (factorial((n - mk) as u32) * factorial((n - mj) as u32) * factorial(mj as u32)))
    .sqrt();
    let phase = C64::from_polar(1.0, j * e.theta3 + k * e.theta3p);
    let a = mj as i64 - mk as i64;
    let b = n as i64 - mk as i64 - mj as i64;
    let trig = checked_powi(h.sin, a as i32, h.theta2)? * checked_powi(h.cos, b as i32, h.theta2)?;
    let p = jacobi_sum(mk, a, b, &h.xm_pows, &h.xp_pows);
    Ok(phase * (sign * 2f64.powf(-l) * norm * trig * p))
}

/// The closed-form element exactly as printed, for `k = twice_k/2`,
/// `j = twice_j/2`.
pub fn matrix_element_verbatim(weight: SpinWeight, twice_k: i32, twice_j: i32, e: EulerAngles) -> Result<C64> {
    let mk = weight.index_of(twice_k)?;
    let mj = weight.index_of(twice_j)?;
    let h = HalfAngle::new(e.theta2, weight.twice() as usize);
    element(weight, mk, mj, &e, &h)
}

/// The printed row factor `(−1)^{l+k} 2^{−l}` for row `mk = l+k`.
pub fn hypothesis_row_factor(weight: SpinWeight, mk: usize) -> f64 {
    let sign = if mk.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * 2f64.powf(-weight.l())
}

/// The row factor measured against the binomial expansion,
/// `(−1)^{l+k} / (2^l (l−k)!)`.
pub fn corrected_row_factor(weight: SpinWeight, mk: usize) -> f64 {
    hypothesis_row_factor(weight, mk) / factorial(weight.twice() - mk as u32)
}

fn dmatrix_at(weight: SpinWeight, e: &EulerAngles, corrected: bool) -> Result<DMatrix<C64>> {
    let d = weight.dim();
    let h = HalfAngle::new(e.theta2, d - 1);
    let mut out = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
    for mk in 0..d {
        let scale = if corrected { 1.0 / corrected_row_factor(weight, mk) } else { 1.0 };
        for mj in 0..d {
            out[(mk, mj)] = element(weight, mk, mj, e, &h)? * scale;
        }
    }
    Ok(out)
}

/// Full matrix, rows `k` and columns `j` ascending. `corrected` divides row
/// `k` by [`corrected_row_factor`].
///
/// Where the closed form is singular (`θ₂` at a pole of a negative power)
/// the matrix is the average of its values at `θ₂ ± 1e−8`.
pub fn dmatrix(weight: SpinWeight, e: EulerAngles, corrected: bool) -> Result<OperatorMatrix> {
    let entries = match dmatrix_at(weight, &e, corrected) {
        Err(Error::AngleSingularity(_)) => {
            let near = |dt: f64| dmatrix_at(weight, &EulerAngles { theta2: e.theta2 + dt, ..e }, corrected);
            (near(CONTINUITY_OFFSET)? + near(-CONTINUITY_OFFSET)?) * C64::new(0.5, 0.0)
        }
        other => other?,
    };
    OperatorMatrix::new(weight, Basis::Orthonormal, entries)
}

/// Which sign flips and transposition map the closed form onto the expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Convention {
    pub theta3_sign: i8,
    pub theta2_sign: i8,
    pub theta3p_sign: i8,
    /// The oracle is transposed before comparison.
    pub transposed: bool,
}

impl Convention {
    /// All sixteen candidates, `+` before `−` and untransposed first.
    pub fn all() -> Vec<Convention> {
        let mut out = Vec::with_capacity(16);
        for theta3_sign in [1, -1] {
            for theta2_sign in [1, -1] {
                for theta3p_sign in [1, -1] {
                    for transposed in [false, true] {
                        out.push(Convention { theta3_sign, theta2_sign, theta3p_sign, transposed });
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, e: EulerAngles) -> EulerAngles {
        EulerAngles::new(
            f64::from(self.theta3_sign) * e.theta3,
            f64::from(self.theta2_sign) * e.theta2,
            f64::from(self.theta3p_sign) * e.theta3p,
        )
    }

    /// Orthonormal-basis expansion matrix under this convention.
    pub fn oracle(&self, weight: SpinWeight, e: EulerAngles) -> DMatrix<C64> {
        let u = representation_matrix(&euler_compose(self.apply(e)), weight, Basis::Orthonormal).into_entries();
        if self.transposed {
            u.transpose()
        } else {
            u
        }
    }
}

/// Outcome of [`cross_validate`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossValidationReport {
    pub weight: SpinWeight,
    pub angles: EulerAngles,
    /// `min ‖corrected − c·oracle‖_F` over conventions and unit `c`.
    pub residual: f64,
    pub convention: Convention,
    pub global_phase: C64,
    /// Per row `k`: verbatim element over `c·oracle` element.
    pub row_factor: Vec<C64>,
    /// Largest departure of any element's ratio from its row's factor.
    pub row_factor_spread: f64,
    pub hypothesis_row_factor: Vec<f64>,
    pub corrected_row_factor: Vec<f64>,
    /// `max_k |row_factor − hypothesis|`.
    pub hypothesis_deviation: f64,
    /// `max_k |row_factor − corrected|`.
    pub corrected_deviation: f64,
    pub hypothesis_confirmed: bool,
}

/// Compares [`dmatrix`] with the binomial expansion over every [`Convention`].
pub fn cross_validate(weight: SpinWeight, e: EulerAngles) -> CrossValidationReport {
    let corrected = dmatrix(weight, e, true).expect("continuity handles the poles").into_entries();
    let verbatim = dmatrix(weight, e, false).expect("continuity handles the poles").into_entries();
    let mut best: Option<(f64, Convention, C64, DMatrix<C64>)> = None;
    for conv in Convention::all() {
        let oracle = conv.oracle(weight, e);
        let (c, r) = phase_align(&corrected, &oracle);
        if best.as_ref().is_none_or(|b| r < b.0) {
            best = Some((r, conv, c, oracle));
        }
    }
    let (residual, convention, global_phase, oracle) = best.expect("non-empty convention set");
    let d = weight.dim();
    let mut row_factor = Vec::with_capacity(d);
    let mut spread: f64 = 0.0;
    for r in 0..d {
        let target = oracle.row(r).map(|x| x * global_phase);
        let pivot = (0..d).max_by(|&a, &b| target[a].norm().total_cmp(&target[b].norm())).expect("d ≥ 1");
        let f = verbatim[(r, pivot)] / target[pivot];
        let scale = target[pivot].norm();
        for cidx in 0..d {
            spread = spread.max((verbatim[(r, cidx)] - f * target[cidx]).norm() / scale);
        }
        row_factor.push(f);
    }
    let hypothesis: Vec<f64> = (0..d).map(|m| hypothesis_row_factor(weight, m)).collect();
    let fitted: Vec<f64> = (0..d).map(|m| corrected_row_factor(weight, m)).collect();
    let deviation = |want: &[f64]| row_factor.iter().zip(want).map(|(f, w)| (f - w).norm()).fold(0.0, f64::max);
    let hypothesis_deviation = deviation(&hypothesis);
    let corrected_deviation = deviation(&fitted);
    CrossValidationReport {
        weight,
        angles: e,
        residual,
        convention,
        global_phase,
        row_factor_spread: spread,
        hypothesis_confirmed: hypothesis_deviation <= 1e-9,
        row_factor,
        hypothesis_row_factor: hypothesis,
        corrected_row_factor: fitted,
        hypothesis_deviation,
        corrected_deviation,
    }
}
