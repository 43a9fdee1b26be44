//! SU(2) elements and their Möbius actions on the Riemann sphere.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_8, PI, TAU};
use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix2;
use rand::Rng;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::riemann_sphere::{ExtendedComplex, Finite, Infinity};
use crate::{Error, Result, C64, I};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// `[[α, β], [−β̄, ᾱ]]` with `|α|² + |β|² = 1`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct SU2Element {
    alpha: C64,
    beta: C64,
}

impl SU2Element {
    pub const IDENTITY: Self = Self { alpha: ONE, beta: ZERO };

    /// Normalizes `(α, β)` onto the unit 3-sphere.
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        Ok(Self { alpha: alpha / norm, beta: beta / norm })
    }

    /// Haar-random element (Shoemake's parametrization of the 3-sphere).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u1: f64 = rng.random();
        let u2: f64 = rng.random();
        let u3: f64 = rng.random();
        Self { alpha: C64::from_polar((1.0 - u1).sqrt(), TAU * u2), beta: C64::from_polar(u1.sqrt(), TAU * u3) }
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn beta(&self) -> C64 {
        self.beta
    }

    pub fn matrix(&self) -> Matrix2<C64> {
        Matrix2::new(self.alpha, self.beta, -self.beta.conj(), self.alpha.conj())
    }

    /// Deviation of `|α|² + |β|²` from one.
    pub fn unitarity_defect(&self) -> f64 {
        (self.alpha.norm_sqr() + self.beta.norm_sqr() - 1.0).abs()
    }

    pub fn neg(&self) -> Self {
        Self { alpha: -self.alpha, beta: -self.beta }
    }

    /// `max(|Δα|, |Δβ|)`.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.alpha - other.alpha).norm().max((self.beta - other.beta).norm())
    }
}

/// Matrix product `g·h`.
pub fn compose(g: &SU2Element, h: &SU2Element) -> SU2Element {
    // First row of [[α, β], [−β̄, ᾱ]]·[[γ, δ], [−δ̄, γ̄]] determines the product.
    SU2Element { alpha: g.alpha * h.alpha - g.beta * h.beta.conj(), beta: g.alpha * h.beta + g.beta * h.alpha.conj() }
}

/// Conjugate transpose.
pub fn inverse(g: &SU2Element) -> SU2Element {
    SU2Element { alpha: g.alpha.conj(), beta: -g.beta }
}

fn check_axis(axis: u8) -> Result<()> {
    if (1..=3).contains(&axis) {
        Ok(())
    } else {
        Err(Error::InvalidAxis(axis))
    }
}

/// `exp(−iθσ_k/2)` in closed form.
pub fn ops_element(axis: u8, angle: f64) -> Result<SU2Element> {
    check_axis(axis)?;
    let (s, c) = (0.5 * angle).sin_cos();
    Ok(match axis {
        1 => SU2Element { alpha: C64::new(c, 0.0), beta: C64::new(0.0, -s) },
        2 => SU2Element { alpha: C64::new(c, 0.0), beta: C64::new(-s, 0.0) },
        _ => SU2Element { alpha: C64::new(c, -s), beta: ZERO },
    })
}

/// A named single-qubit gate. Rotations carry their angle in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateName {
    I,
    X,
    Y,
    Z,
    H,
    S,
    T,
    Rx(f64),
    Ry(f64),
    Rz(f64),
}

impl GateName {
    /// The fixed-angle gates of the table, in table order.
    pub const FIXED: [GateName; 7] =
        [GateName::I, GateName::X, GateName::Y, GateName::Z, GateName::H, GateName::S, GateName::T];

    /// Table order with the three rotations at `angle`.
    pub fn table(angle: f64) -> [GateName; 10] {
        let [i, x, y, z, h, s, t] = Self::FIXED;
        [i, x, y, z, h, s, t, GateName::Rx(angle), GateName::Ry(angle), GateName::Rz(angle)]
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            GateName::I => "I",
            GateName::X => "X",
            GateName::Y => "Y",
            GateName::Z => "Z",
            GateName::H => "H",
            GateName::S => "S",
            GateName::T => "T",
            GateName::Rx(_) => "RX",
            GateName::Ry(_) => "RY",
            GateName::Rz(_) => "RZ",
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateName::Rx(a) | GateName::Ry(a) | GateName::Rz(a) => Some(a),
            _ => None,
        }
    }

    /// Parses a bare symbol, supplying `angle` to rotations written without one.
    pub fn parse_with_angle(s: &str, angle: Option<f64>) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.find('(') {
            Some(open) if s.ends_with(')') => {
                let inner = &s[open + 1..s.len() - 1];
                let value = inner.trim().parse::<f64>().map_err(|_| Error::UnknownGate(s.to_string()))?;
                (&s[..open], Some(value))
            }
            Some(_) => return Err(Error::UnknownGate(s.to_string())),
            None => (s, None),
        };
        let rotation = |make: fn(f64) -> GateName| {
            arg.or(angle).map(make).ok_or_else(|| Error::UnknownGate(format!("{s} (missing angle)")))
        };
        let fixed = |g: GateName| if arg.is_some() { Err(Error::UnknownGate(s.to_string())) } else { Ok(g) };
        match head.to_ascii_uppercase().as_str() {
            "I" | "ID" => fixed(GateName::I),
            "X" => fixed(GateName::X),
            "Y" => fixed(GateName::Y),
            "Z" => fixed(GateName::Z),
            "H" => fixed(GateName::H),
            "S" => fixed(GateName::S),
            "T" => fixed(GateName::T),
            "RX" => rotation(GateName::Rx),
            "RY" => rotation(GateName::Ry),
            "RZ" => rotation(GateName::Rz),
            _ => Err(Error::UnknownGate(s.to_string())),
        }
    }
}

impl FromStr for GateName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with_angle(s, None)
    }
}

impl fmt::Display for GateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.angle() {
            Some(a) => write!(f, "{}({a})", self.symbol()),
            None => f.write_str(self.symbol()),
        }
    }
}

impl Serialize for GateName {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The SU(2) lift of a named gate. The global phase relative to the usual
/// U(2) matrix is fixed: `X → −iσ₁`, `Y → −iσ₂`, `Z → −iσ₃`, `H → iH`,
/// `S → e^{−iπ/4}S`, `T → e^{−iπ/8}T`; rotations are [`ops_element`].
pub fn named_gate(name: GateName) -> SU2Element {
    let e = |alpha: C64, beta: C64| SU2Element { alpha, beta };
    match name {
        GateName::I => SU2Element::IDENTITY,
        GateName::X => e(ZERO, -I),
        GateName::Y => e(ZERO, -ONE),
        GateName::Z => e(-I, ZERO),
        GateName::H => e(I * FRAC_1_SQRT_2, I * FRAC_1_SQRT_2),
        GateName::S => e(C64::from_polar(1.0, -FRAC_PI_4), ZERO),
        GateName::T => e(C64::from_polar(1.0, -FRAC_PI_8), ZERO),
        GateName::Rx(a) => ops_element(1, a).expect("valid axis"),
        GateName::Ry(a) => ops_element(2, a).expect("valid axis"),
        GateName::Rz(a) => ops_element(3, a).expect("valid axis"),
    }
}

/// The Hadamard lift built from one-parameter subgroups: `R_Y(−π/2)·R_X(−π)`.
///
/// This is the two-rotation product with both angles negated, which reproduces
/// `iH` exactly.
pub fn hadamard_from_rotations() -> SU2Element {
    compose(&ops_element(2, -PI / 2.0).expect("axis"), &ops_element(1, -PI).expect("axis"))
}

/// `z ↦ (az + b)/(cz + d)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct MobiusMap {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl MobiusMap {
    pub const IDENTITY: Self = Self { a: ONE, b: ZERO, c: ZERO, d: ONE };

    pub fn determinant(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    fn scale(&self) -> f64 {
        self.a.norm().max(self.b.norm()).max(self.c.norm()).max(self.d.norm())
    }

    pub fn apply(&self, z: ExtendedComplex) -> ExtendedComplex {
        match z {
            Infinity if self.c == ZERO => Infinity,
            Infinity => Finite(self.a / self.c),
            Finite(z) => {
                let den = self.c * z + self.d;
                let num = self.a * z + self.b;
                if den == ZERO {
                    Infinity
                } else {
                    Finite(num / den)
                }
            }
        }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn after(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// Sine of the angle between the coefficient vectors in `C⁴`; zero exactly
    /// when the two matrices define the same map.
    pub fn projective_distance(&self, other: &MobiusMap) -> f64 {
        let u = [self.a, self.b, self.c, self.d];
        let v = [other.a, other.b, other.c, other.d];
        let nu: f64 = u.iter().map(|x| x.norm_sqr()).sum();
        let nv: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        let dot: C64 = u.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
        (1.0 - dot.norm_sqr() / (nu * nv)).max(0.0).sqrt()
    }

    /// True when the map is a scalar multiple of the identity matrix.
    pub fn is_identity(&self) -> bool {
        let tol = 1e-14 * self.scale();
        self.b.norm() <= tol && self.c.norm() <= tol && (self.a - self.d).norm() <= tol
    }
}

/// The gate's action on points, `z ↦ (αz + β)/(−β̄z + ᾱ)`.
pub fn action_map(g: &SU2Element) -> MobiusMap {
    MobiusMap { a: g.alpha, b: g.beta, c: -g.beta.conj(), d: g.alpha.conj() }
}

/// Möbius image of `z` under `g`, exact at `∞`.
pub fn act(g: &SU2Element, z: ExtendedComplex) -> ExtendedComplex {
    action_map(g).apply(z)
}

/// The argument substitution of the wavefunction representation,
/// `z ↦ (αz − β̄)/(βz + ᾱ)`.
///
/// Its coefficient matrix is the transpose of `g`, so
/// `rep_mobius_arg(g·h) = rep_mobius_arg(h) ∘ rep_mobius_arg(g)`.
pub fn rep_mobius_arg(g: &SU2Element) -> MobiusMap {
    MobiusMap { a: g.alpha, b: -g.beta.conj(), c: g.beta, d: g.alpha.conj() }
}

/// Fixed points of a Möbius map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FixedPointSet {
    /// Every point is fixed.
    IdentityMap,
    /// Exactly two fixed points (equal for a parabolic map).
    Pair(ExtendedComplex, ExtendedComplex),
}

impl FixedPointSet {
    pub fn points(&self) -> Vec<ExtendedComplex> {
        match *self {
            FixedPointSet::IdentityMap => Vec::new(),
            FixedPointSet::Pair(p, q) => vec![p, q],
        }
    }

    /// Chordal distance from `z` to the nearest listed point (0 for the identity).
    pub fn distance_to(&self, z: ExtendedComplex) -> f64 {
        match *self {
            FixedPointSet::IdentityMap => 0.0,
            FixedPointSet::Pair(p, q) => z.chordal_distance(p).min(z.chordal_distance(q)),
        }
    }

    /// Set distance (order-independent) between two pairs; `∞` if one is the identity
    /// marker and the other is not.
    pub fn set_distance(&self, other: &FixedPointSet) -> f64 {
        match (*self, *other) {
            (FixedPointSet::IdentityMap, FixedPointSet::IdentityMap) => 0.0,
            (FixedPointSet::Pair(p, q), FixedPointSet::Pair(r, s)) => {
                let straight = p.chordal_distance(r).max(q.chordal_distance(s));
                let crossed = p.chordal_distance(s).max(q.chordal_distance(r));
                straight.min(crossed)
            }
            _ => f64::INFINITY,
        }
    }
}

impl Serialize for FixedPointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FixedPointSet", 2)?;
        match self {
            FixedPointSet::IdentityMap => {
                st.serialize_field("kind", "all_points_fixed")?;
                st.serialize_field("points", &Vec::<ExtendedComplex>::new())?;
            }
            FixedPointSet::Pair(p, q) => {
                st.serialize_field("kind", "pair")?;
                st.serialize_field("points", &[p, q])?;
            }
        }
        st.end()
    }
}

/// Roots of `cz² + (d − a)z − b = 0`, with `∞` when `c = 0`.
///
/// For `c ≠ 0` the pair is ordered as `((a−d) + √Δ)/2c, ((a−d) − √Δ)/2c` with the
/// principal square root; for `c = 0` the finite root comes first.
pub fn fixed_points(m: &MobiusMap) -> FixedPointSet {
    if m.is_identity() {
        return FixedPointSet::IdentityMap;
    }
    let tol = 1e-14 * m.scale();
    let amd = m.a - m.d;
    if m.c.norm() <= tol {
        // Linear map z ↦ (az + b)/d: fixes ∞ and, unless parabolic, b/(d − a).
        if amd.norm() <= tol {
            return FixedPointSet::Pair(Infinity, Infinity);
        }
        return FixedPointSet::Pair(Finite(m.b / (-amd)), Infinity);
    }
    let root = (amd * amd + 4.0 * m.b * m.c).sqrt();
    // Evaluate the larger-numerator root directly and the other from the
    // product of roots, −b/c, to avoid cancellation.
    let (plus_big, num) =
        if (amd + root).norm() >= (amd - root).norm() { (true, amd + root) } else { (false, amd - root) };
    if num.norm() <= tol {
        // Double root at zero: amd = 0 and Δ = 0.
        return FixedPointSet::Pair(Finite(ZERO), Finite(ZERO));
    }
    let big = num / (2.0 * m.c);
    let small = -m.b / (m.c * big);
    if plus_big {
        FixedPointSet::Pair(Finite(big), Finite(small))
    } else {
        FixedPointSet::Pair(Finite(small), Finite(big))
    }
}

/// Fiber phase `(βw + ᾱ)/|βw + ᾱ|` with `w = w₁/w₂`.
pub fn hopf_lift_phase(g: &SU2Element, w: (C64, C64)) -> Result<C64> {
    if w.1 == ZERO {
        return Err(Error::ChartSingularity);
    }
    let value = g.beta * (w.0 / w.1) + g.alpha.conj();
    let norm = value.norm();
    if norm <= 1e-15 {
        return Err(Error::PhaseUndefined);
    }
    Ok(value / norm)
}

/// Angles of `R_Z(θ₃)·R_Y(θ₂)·R_Z(θ′₃)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct EulerAngles {
    pub theta3: f64,
    pub theta2: f64,
    pub theta3p: f64,
}

impl EulerAngles {
    pub fn new(theta3: f64, theta2: f64, theta3p: f64) -> Self {
        Self { theta3, theta2, theta3p }
    }
}

/// `ops(3, θ₃)·ops(2, θ₂)·ops(3, θ′₃)`.
pub fn euler_compose(e: EulerAngles) -> SU2Element {
    let z1 = ops_element(3, e.theta3).expect("axis");
    let y = ops_element(2, e.theta2).expect("axis");
    let z2 = ops_element(3, e.theta3p).expect("axis");
    compose(&compose(&z1, &y), &z2)
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct EulerDecomposition {
    pub angles: EulerAngles,
    /// `±1`: `euler_compose(angles) = sign·g`.
    pub sign: f64,
}

/// Inverse of [`euler_compose`] with `θ₂ ∈ [0, π]`.
///
/// From `α = e^{−i(θ₃+θ′₃)/2} cos(θ₂/2)` and `β = −e^{−i(θ₃−θ′₃)/2} sin(θ₂/2)`.
/// At `θ₂ ∈ {0, π}` only one combination of `θ₃, θ′₃` is determined and
/// `θ′₃ = 0` is chosen.
pub fn euler_decompose(g: &SU2Element) -> EulerDecomposition {
    let (a, b) = (g.alpha.norm(), g.beta.norm());
    let theta2 = 2.0 * b.atan2(a);
    let (theta3, theta3p) = if b <= 1e-15 {
        (-2.0 * g.alpha.arg(), 0.0)
    } else if a <= 1e-15 {
        (-2.0 * (-g.beta).arg(), 0.0)
    } else {
        let sum = -2.0 * g.alpha.arg();
        let diff = -2.0 * (-g.beta).arg();
        (0.5 * (sum + diff), 0.5 * (sum - diff))
    };
    let angles = EulerAngles::new(theta3, theta2, theta3p);
    let recomposed = euler_compose(angles);
    let sign = if recomposed.distance(g) <= recomposed.distance(&g.neg()) { 1.0 } else { -1.0 };
    EulerDecomposition { angles, sign }
}
