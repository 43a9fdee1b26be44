//! Classical phase-space structures on the sphere, in both charts.
//!
//! Sign conventions follow `ξ_f ⌟ ω = −df` throughout. The Poisson bracket of the
//! position observables is reported with the anti-homomorphic sign
//! `{x_j, x_k} = −ε_{jkl} x_l`, which is `ω(ξ_k, ξ_j)` for the fields below.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use crate::riemann_sphere::{project, BlochPoint, ExtendedComplex};
use crate::{Error, Execution, Result, C64, I};

/// Sphere-chart points closer than this to a pole are refused.
pub const POLE_TOLERANCE: f64 = 1e-9;

/// Default central-difference step.
pub const DEFAULT_STEP: f64 = 1e-4;

/// Minimum `sin θ` for the finite-difference Lie bracket.
pub const LIE_POLE_TOLERANCE: f64 = 1e-3;

/// Tangent vector in the `(∂/∂θ, ∂/∂φ)` basis.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct TangentVectorSphere {
    pub d_theta: f64,
    pub d_phi: f64,
}

impl TangentVectorSphere {
    pub fn new(d_theta: f64, d_phi: f64) -> Self {
        Self { d_theta, d_phi }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.d_theta - other.d_theta).abs().max((self.d_phi - other.d_phi).abs())
    }

    fn scaled(self, s: f64) -> Self {
        Self::new(s * self.d_theta, s * self.d_phi)
    }
}

/// A real tangent vector `v ∂/∂z + v̄ ∂/∂z̄`, stored by its `∂/∂z` component.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct TangentVectorCP1 {
    pub v: C64,
}

impl TangentVectorCP1 {
    pub fn new(v: C64) -> Self {
        Self { v }
    }
}

/// Base point in one of the two charts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChartPoint {
    Sphere(BlochPoint),
    Plane(ExtendedComplex),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TangentVector {
    Sphere(TangentVectorSphere),
    Cp1(TangentVectorCP1),
}

/// Totally antisymmetric symbol with `ε(1,2,3) = 1`. Indices are 1-based.
pub fn levi_civita(j: u8, k: u8, l: u8) -> i8 {
    match (j, k, l) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// The axis completing `(j, k)` to a permutation of `(1, 2, 3)`, if `j ≠ k`.
pub fn third_axis(j: u8, k: u8) -> Option<u8> {
    (j != k).then(|| 6 - j - k)
}

fn check_axis(k: u8) -> Result<()> {
    if (1..=3).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidAxis(k))
    }
}

fn check_pole(theta: f64, min_sin: f64) -> Result<()> {
    let s = theta.sin();
    if s < min_sin {
        Err(Error::PoleSingularity { sin_theta: s })
    } else {
        Ok(())
    }
}

/// Components of `ξ_k` at raw coordinates; no range or pole checks.
fn hamvf_sphere_raw(k: u8, theta: f64, phi: f64) -> TangentVectorSphere {
    let cot = theta.cos() / theta.sin();
    let (sp, cp) = phi.sin_cos();
    match k {
        1 => TangentVectorSphere::new(sp, cot * cp),
        2 => TangentVectorSphere::new(-cp, cot * sp),
        _ => TangentVectorSphere::new(0.0, -1.0),
    }
}

/// Hamiltonian vector field of `x_k`:
/// `ξ₁ = sin φ ∂_θ + cot θ cos φ ∂_φ`, `ξ₂ = −cos φ ∂_θ + cot θ sin φ ∂_φ`,
/// `ξ₃ = −∂_φ`.
pub fn hamvf_sphere(k: u8, p: BlochPoint) -> Result<TangentVectorSphere> {
    check_axis(k)?;
    check_pole(p.theta(), POLE_TOLERANCE)?;
    Ok(hamvf_sphere_raw(k, p.theta(), p.phi()))
}

/// Holomorphic component of the CP¹ field `ξ̃_k`:
/// `(i/2)(1−z²)`, `(1/2)(1+z²)` and `iz`.
pub fn hamvf_cp1(k: u8, z: ExtendedComplex) -> Result<TangentVectorCP1> {
    check_axis(k)?;
    let z = z.finite().ok_or(Error::InfinityChart)?;
    let one = C64::new(1.0, 0.0);
    let v = match k {
        1 => 0.5 * I * (one - z * z),
        2 => 0.5 * (one + z * z),
        _ => I * z,
    };
    Ok(TangentVectorCP1::new(v))
}

/// Evaluates the symplectic form on two tangent vectors at `point`.
///
/// Sphere chart: `ω = sin θ dθ∧dφ`. Plane chart: `Ω = 2i dz∧dz̄/(1+zz̄)²`,
/// which on real vectors equals `4 Im(v̄w)/(1+|z|²)²`.
pub fn symplectic_eval(point: ChartPoint, v: TangentVector, w: TangentVector) -> Result<f64> {
    match (point, v, w) {
        (ChartPoint::Sphere(p), TangentVector::Sphere(v), TangentVector::Sphere(w)) => {
            check_pole(p.theta(), POLE_TOLERANCE)?;
            Ok(p.theta().sin() * (v.d_theta * w.d_phi - v.d_phi * w.d_theta))
        }
        (ChartPoint::Plane(z), TangentVector::Cp1(v), TangentVector::Cp1(w)) => {
            let z = z.finite().ok_or(Error::InfinityChart)?;
            // dz∧dz̄ (V, W) = v w̄ − v̄ w
            let wedge = v.v * w.v.conj() - v.v.conj() * w.v;
            let value = 2.0 * I * wedge / (1.0 + z.norm_sqr()).powi(2);
            Ok(value.re)
        }
        _ => Err(Error::ChartMismatch),
    }
}

/// `{x_j, x_k}` at `p`, evaluated as `ω(ξ_k, ξ_j)` so that `{x₁, x₂} = −x₃`.
pub fn poisson_bracket(j: u8, k: u8, p: BlochPoint) -> Result<f64> {
    let xj = hamvf_sphere(j, p)?;
    let xk = hamvf_sphere(k, p)?;
    symplectic_eval(ChartPoint::Sphere(p), TangentVector::Sphere(xk), TangentVector::Sphere(xj))
}

/// Central-difference Lie bracket `[ξ_j, ξ_k]` at `p`.
///
/// `[X, Y]^i = X^a ∂_a Y^i − Y^a ∂_a X^i`, derivatives by central differences
/// of step `h`. Requires `sin θ ≥ 1e-3` and `h ∈ [1e-6, 1e-3]`.
pub fn lie_bracket_numeric(j: u8, k: u8, p: BlochPoint, h: f64) -> Result<TangentVectorSphere> {
    check_axis(j)?;
    check_axis(k)?;
    check_pole(p.theta(), LIE_POLE_TOLERANCE)?;
    if !(1e-6..=1e-3).contains(&h) {
        return Err(Error::InvalidStep(h));
    }
    let (t, f) = (p.theta(), p.phi());
    // Partial derivatives of a field's components along θ and φ.
    let partials = |axis: u8| {
        let dt = |sign: f64| hamvf_sphere_raw(axis, t + sign * h, f);
        let df = |sign: f64| hamvf_sphere_raw(axis, t, f + sign * h);
        let (tp, tm, fp, fm) = (dt(1.0), dt(-1.0), df(1.0), df(-1.0));
        let inv = 0.5 / h;
        (
            TangentVectorSphere::new((tp.d_theta - tm.d_theta) * inv, (tp.d_phi - tm.d_phi) * inv),
            TangentVectorSphere::new((fp.d_theta - fm.d_theta) * inv, (fp.d_phi - fm.d_phi) * inv),
        )
    };
    let x = hamvf_sphere_raw(j, t, f);
    let y = hamvf_sphere_raw(k, t, f);
    let (dy_t, dy_f) = partials(k);
    let (dx_t, dx_f) = partials(j);
    Ok(TangentVectorSphere::new(
        x.d_theta * dy_t.d_theta + x.d_phi * dy_f.d_theta - y.d_theta * dx_t.d_theta - y.d_phi * dx_f.d_theta,
        x.d_theta * dy_t.d_phi + x.d_phi * dy_f.d_phi - y.d_theta * dx_t.d_phi - y.d_phi * dx_f.d_phi,
    ))
}

/// `ε_{jkl} ξ_l(p)`, the analytic value of `[ξ_j, ξ_k]`.
pub fn lie_bracket_expected(j: u8, k: u8, p: BlochPoint) -> Result<TangentVectorSphere> {
    match third_axis(j, k) {
        None => {
            check_axis(j)?;
            Ok(TangentVectorSphere::new(0.0, 0.0))
        }
        Some(l) => Ok(hamvf_sphere(l, p)?.scaled(f64::from(levi_civita(j, k, l)))),
    }
}

/// Pushes a sphere-chart tangent vector through the projection `z(θ, φ)` by
/// central differences, returning the `∂/∂z` component.
pub fn stereographic_pushforward(p: BlochPoint, v: TangentVectorSphere, h: f64) -> Result<TangentVectorCP1> {
    check_pole(p.theta(), POLE_TOLERANCE)?;
    let z_at = |s: f64| {
        let theta = p.theta() + s * h * v.d_theta;
        let half = 0.5 * theta;
        C64::from_polar(half.cos() / half.sin(), p.phi() + s * h * v.d_phi)
    };
    Ok(TangentVectorCP1::new((z_at(1.0) - z_at(-1.0)) / (2.0 * h)))
}

/// Residual `|dz(ξ_k) − ξ̃_k(z)|` at `p`, with `z = project(p)`.
pub fn pushforward_residual(k: u8, p: BlochPoint, h: f64) -> Result<f64> {
    let pushed = stereographic_pushforward(p, hamvf_sphere(k, p)?, h)?;
    let expected = hamvf_cp1(k, project(p))?;
    Ok((pushed.v - expected.v).norm())
}

/// Signs `σ_k` with `dz(ξ_k) = σ_k ξ̃_k` under `z = cot(θ/2) e^{iφ}`.
///
/// The CP¹ fields above are written for the opposite orientation
/// `z = cot(θ/2) e^{−iφ}`; with the projection used here the first and third
/// fields come out reversed, so [`pushforward_residual`] does not vanish.
pub const PUSHFORWARD_ORIENTATION: [f64; 3] = [-1.0, 1.0, -1.0];

/// `|dz(ξ_k) − σ_k ξ̃_k(z)|`, the pushforward relation that does hold.
pub fn pushforward_orientation_residual(k: u8, p: BlochPoint, h: f64) -> Result<f64> {
    let pushed = stereographic_pushforward(p, hamvf_sphere(k, p)?, h)?;
    let expected = hamvf_cp1(k, project(p))?;
    Ok((pushed.v - expected.v * PUSHFORWARD_ORIENTATION[k as usize - 1]).norm())
}

/// Region of the `z` plane to integrate `Ω` over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// All of ℂ (the sphere minus a point).
    Plane,
    /// `|z| ≤ 1`, the southern hemisphere.
    UnitDisk,
}

/// `∫ Ω` over the plane; converges to `4π`.
pub fn total_symplectic_volume(resolution: usize) -> Result<f64> {
    symplectic_volume(Region::Plane, resolution, Execution::default())
}

/// `∫_region Ω` on a `resolution × resolution` polar grid.
///
/// The radius is reparametrized as `r = tan s` so the plane maps onto
/// `s ∈ [0, π/2)`; the midpoint rule is used in `s` and the trapezoid rule in
/// the angle. The form density is `Ω(∂_x, ∂_y)`, evaluated through
/// [`symplectic_eval`].
pub fn symplectic_volume(region: Region, resolution: usize, exec: Execution) -> Result<f64> {
    if resolution < 64 {
        return Err(Error::ResolutionTooLow { got: resolution, min: 64 });
    }
    let s_max = match region {
        Region::Plane => FRAC_PI_2,
        Region::UnitDisk => FRAC_PI_4,
    };
    let ds = s_max / resolution as f64;
    let dphi = TAU / resolution as f64;
    let dx = TangentVector::Cp1(TangentVectorCP1::new(C64::new(1.0, 0.0)));
    let dy = TangentVector::Cp1(TangentVectorCP1::new(I));
    let rows = exec.map(resolution, |i| {
        let s = (i as f64 + 0.5) * ds;
        let (r, jac) = (s.tan(), 1.0 / s.cos().powi(2));
        let mut row = 0.0;
        for a in 0..resolution {
            let z = ExtendedComplex::from(C64::from_polar(r, a as f64 * dphi));
            row += symplectic_eval(ChartPoint::Plane(z), dx, dy).expect("finite point");
        }
        row * r * jac
    });
    Ok(rows.iter().sum::<f64>() * ds * dphi)
}
