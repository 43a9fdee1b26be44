//! Coordinates on the qubit state sphere.
//!
//! Two charts describe the same points: spherical angles `(θ, φ)` and the
//! inhomogeneous coordinate `z ∈ ℂ ∪ {∞}` obtained by projecting from the north
//! pole, `z = cot(θ/2)·e^{iφ}`. The north pole (`|0⟩`) sits at `z = ∞` and the
//! south pole (`|1⟩`) at `z = 0`.

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::ser::{Serialize, SerializeTuple, Serializer};

use crate::{Error, Result, C64};

/// A point of the extended complex plane. Infinity is an explicit tag, never a
/// large float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedComplex {
    Finite(C64),
    Infinity,
}

pub use ExtendedComplex::{Finite, Infinity};

impl ExtendedComplex {
    pub const ZERO: Self = Finite(C64::new(0.0, 0.0));

    pub fn new(re: f64, im: f64) -> Self {
        Finite(C64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Infinity)
    }

    pub fn finite(&self) -> Option<C64> {
        match *self {
            Finite(z) => Some(z),
            Infinity => None,
        }
    }

    /// `1/z` with `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(self) -> Self {
        match self {
            Infinity => Self::ZERO,
            Finite(z) if z == C64::new(0.0, 0.0) => Infinity,
            Finite(z) => Finite(z.inv()),
        }
    }

    pub fn conj(self) -> Self {
        match self {
            Infinity => Infinity,
            Finite(z) => Finite(z.conj()),
        }
    }

    /// `a·z`, with `a·∞ = ∞` for `a ≠ 0`. `0·∞` is taken to be `0`.
    pub fn scale(self, a: C64) -> Self {
        match self {
            Infinity if a == C64::new(0.0, 0.0) => Self::ZERO,
            Infinity => Infinity,
            Finite(z) => Finite(a * z),
        }
    }

    /// Chordal distance: Euclidean distance between the images on the unit
    /// sphere, `2|z−w|/√((1+|z|²)(1+|w|²))`. Bounded by 2 and finite at ∞.
    pub fn chordal_distance(self, other: Self) -> f64 {
        match (self, other) {
            (Infinity, Infinity) => 0.0,
            (Finite(z), Infinity) | (Infinity, Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
            (Finite(z), Finite(w)) => 2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt(),
        }
    }
}

impl From<C64> for ExtendedComplex {
    fn from(z: C64) -> Self {
        Finite(z)
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infinity => f.write_str("∞"),
            Finite(z) => write!(f, "{z}"),
        }
    }
}

/// Serialized as `"inf"` or as a `[re, im]` pair.
impl Serialize for ExtendedComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Infinity => serializer.serialize_str("inf"),
            Finite(z) => {
                let mut t = serializer.serialize_tuple(2)?;
                t.serialize_element(&z.re)?;
                t.serialize_element(&z.im)?;
                t.end()
            }
        }
    }
}

/// Polar `θ ∈ [0, π]` and azimuthal `φ ∈ [0, 2π)` angles; `φ = 0` at the poles.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct BlochPoint {
    theta: f64,
    phi: f64,
}

impl BlochPoint {
    pub const NORTH: Self = Self { theta: 0.0, phi: 0.0 };
    pub const SOUTH: Self = Self { theta: PI, phi: 0.0 };

    /// Wraps `phi` into `[0, 2π)`; rejects `theta` outside `[0, π]`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() || !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidBlochPoint { theta, phi });
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU || theta == 0.0 || theta == PI {
            phi = 0.0;
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// A unit vector `(x₁, x₂, x₃)` on the sphere.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ObservableTriple {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl ObservableTriple {
    pub fn as_array(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn component(&self, axis: u8) -> f64 {
        self.as_array()[axis as usize - 1]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn neg(&self) -> Self {
        Self { x1: -self.x1, x2: -self.x2, x3: -self.x3 }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.x1 - other.x1).abs().max((self.x2 - other.x2).abs()).max((self.x3 - other.x3).abs())
    }
}

/// Stereographic projection from the north pole, `z = cot(θ/2)·e^{iφ}`.
pub fn project(p: BlochPoint) -> ExtendedComplex {
    if p.theta == 0.0 {
        return Infinity;
    }
    if p.theta == PI {
        return ExtendedComplex::ZERO;
    }
    let half = 0.5 * p.theta;
    Finite(C64::from_polar(half.cos() / half.sin(), p.phi))
}

/// Inverse of [`project`].
pub fn unproject(z: ExtendedComplex) -> BlochPoint {
    match z {
        Infinity => BlochPoint::NORTH,
        Finite(z) => {
            let theta = 2.0 * 1f64.atan2(z.norm());
            // theta is in (0, π] here; BlochPoint::new cannot fail.
            BlochPoint::new(theta, z.arg()).expect("theta in range")
        }
    }
}

/// `(sin θ cos φ, sin θ sin φ, cos θ)`.
pub fn observables_from_bloch(p: BlochPoint) -> ObservableTriple {
    let (st, ct) = p.theta.sin_cos();
    let (sp, cp) = p.phi.sin_cos();
    ObservableTriple { x1: st * cp, x2: st * sp, x3: ct }
}

/// The same observables written in the `z` chart:
/// `u₁ = (z+z̄)/(zz̄+1)`, `u₂ = −i(z−z̄)/(zz̄+1)`, `u₃ = (zz̄−1)/(zz̄+1)`.
pub fn observables_from_z(z: ExtendedComplex) -> ObservableTriple {
    match z {
        Infinity => ObservableTriple { x1: 0.0, x2: 0.0, x3: 1.0 },
        Finite(z) if z.norm_sqr() <= 1.0 => {
            let r2 = z.norm_sqr();
            let s = 1.0 + r2;
            ObservableTriple { x1: 2.0 * z.re / s, x2: 2.0 * z.im / s, x3: (r2 - 1.0) / s }
        }
        Finite(z) => {
            // Rewrite in w = 1/z so large |z| neither overflows nor cancels.
            let w = z.inv();
            let r2 = w.norm_sqr();
            let s = 1.0 + r2;
            ObservableTriple { x1: 2.0 * w.re / s, x2: -2.0 * w.im / s, x3: (1.0 - r2) / s }
        }
    }
}

/// Antipodal point `−1/z̄`.
pub fn antipode(z: ExtendedComplex) -> ExtendedComplex {
    z.conj().recip().scale(C64::new(-1.0, 0.0))
}
