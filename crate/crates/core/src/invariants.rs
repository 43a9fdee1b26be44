//! The library's invariant suites, run as one sweep.
//!
//! All random inputs are drawn up front from a single seeded generator in a
//! fixed order, then the suites are evaluated (possibly in parallel). Residuals
//! therefore depend only on the configuration, never on scheduling.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classical::{
    levi_civita, lie_bracket_expected, lie_bracket_numeric, poisson_bracket, pushforward_orientation_residual,
    pushforward_residual, symplectic_eval, symplectic_volume, third_axis, ChartPoint, Region, TangentVector,
    TangentVectorCP1, TangentVectorSphere, DEFAULT_STEP,
};
use crate::exec::nan_max;
use crate::gate_rep::{apply_gate, generator_of, representation_matrix, table1_report_with, ROTATION_SAMPLE_ANGLE};
use crate::holo_state::{
    basis_wavefunction, coherent_point, derivative_pairing, from_qubit, inner_product, quadrature_inner_product_with,
    to_qubit, HoloWavefunction, QubitState, SpinWeight,
};
use crate::mobius::{
    act, compose, fixed_points, inverse, named_gate, rep_mobius_arg, EulerAngles, FixedPointSet, GateName, SU2Element,
};
use crate::qubit_oracle::{apply, bloch_of, eigenstates, standard_gate};
use crate::riemann_sphere::{
    antipode, observables_from_bloch, observables_from_z, project, unproject, BlochPoint, ExtendedComplex, Finite,
};
use crate::spin_ops::{
    apply as apply_operator, apply_raw_differential, casimir, commutator, ladder_operator, spin_operator, Basis,
    OperatorMatrix, SpinOp,
};
use crate::wigner::{cross_validate, dmatrix, jacobi, JacobiParams};
use crate::{Execution, C64, I};

/// Tolerance the nominal thresholds are calibrated to.
pub const NOMINAL_TOL: f64 = 1e-10;

/// Resolution of the quadrature Gram check.
pub const QUADRATURE_RESOLUTION: usize = 512;

/// Polar-angle margin for the classical samples. The central-difference Lie
/// bracket error grows like `h²/θ⁴`, and only stays under 1e−4 for `θ ≳ 0.1`.
pub const CLASSICAL_POLE_MARGIN: f64 = 0.2;

/// Step for the finite-difference Jacobian of the projection.
pub const PUSHFORWARD_STEP: f64 = 1e-6;

/// Resolution of the symplectic volume check.
pub const VOLUME_RESOLUTION: usize = 256;

/// Parameters of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CheckConfig {
    /// Largest `n = 2l` swept (individual suites cap it lower).
    pub n_max: u32,
    /// Base sample count; some suites draw a fixed multiple of it.
    pub samples: usize,
    pub seed: u64,
    /// Every threshold is its nominal value times `tol / 1e−10`.
    pub tol: f64,
    #[serde(skip)]
    pub exec: Execution,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self { n_max: 8, samples: 100, seed: 42, tol: NOMINAL_TOL, exec: Execution::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantResult {
    pub module: &'static str,
    pub name: &'static str,
    pub max_residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl InvariantResult {
    pub fn id(&self) -> String {
        format!("{}.{}", self.module, self.name)
    }
}

/// A relation the source states but which does not hold as written. Reported,
/// never counted as a failure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnownConflict {
    pub module: &'static str,
    pub name: &'static str,
    pub max_residual: f64,
    pub nominal_threshold: f64,
    pub note: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub config: CheckConfig,
    pub invariants: Vec<InvariantResult>,
    pub known_conflicts: Vec<KnownConflict>,
    pub passed: bool,
    pub failing: Vec<String>,
}

/// Random inputs for one sweep.
struct Samples {
    n_max: u32,
    bloch: Vec<BlochPoint>,
    finite_z: Vec<C64>,
    off_pole: Vec<BlochPoint>,
    tangent_quads: Vec<([TangentVectorSphere; 3], [f64; 2])>,
    group_triples: Vec<(SU2Element, SU2Element, ExtendedComplex)>,
    rep_pairs: Vec<(SU2Element, SU2Element)>,
    elements: Vec<SU2Element>,
    qubits: Vec<QubitState>,
    wavefunctions: Vec<Vec<HoloWavefunction>>,
    jacobi: Vec<JacobiParams>,
    euler: Vec<EulerAngles>,
}

impl Samples {
    fn draw(cfg: &CheckConfig) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let k = cfg.samples;
        let bloch_in = |rng: &mut ChaCha8Rng, margin: f64| {
            BlochPoint::new(rng.random_range(margin..=PI - margin), rng.random_range(0.0..TAU)).expect("in range")
        };
        let bloch = (0..10 * k).map(|_| bloch_in(&mut rng, 1e-6)).collect();
        let finite_z = (0..10 * k)
            .map(|_| {
                let r = rng.random_range(0.0f64..1.0).tan() * rng.random_range(0.0..4.0);
                C64::from_polar(r, rng.random_range(0.0..TAU))
            })
            .collect();
        let off_pole = (0..k).map(|_| bloch_in(&mut rng, CLASSICAL_POLE_MARGIN)).collect();
        let tangent_quads = (0..k)
            .map(|_| {
                let mut v = || TangentVectorSphere::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                let vs = [v(), v(), v()];
                (vs, [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)])
            })
            .collect();
        let group_triples = (0..10 * k)
            .map(|_| {
                let g = SU2Element::random(&mut rng);
                let h = SU2Element::random(&mut rng);
                let z = project(bloch_in(&mut rng, 0.0));
                (g, h, z)
            })
            .collect();
        let rep_pairs = (0..2 * k).map(|_| (SU2Element::random(&mut rng), SU2Element::random(&mut rng))).collect();
        let elements = (0..k).map(|_| SU2Element::random(&mut rng)).collect();
        let qubits = (0..k).map(|_| QubitState::random(&mut rng)).collect();
        let wavefunctions = (0..=cfg.n_max)
            .map(|n| {
                let w = SpinWeight::new(n).expect("validated n_max");
                (0..k).map(|_| HoloWavefunction::random(w, &mut rng)).collect()
            })
            .collect();
        let jacobi = (0..10 * k)
            .map(|_| JacobiParams {
                degree: rng.random_range(0..=20),
                a: rng.random_range(0..=6),
                b: rng.random_range(0..=6),
                x: rng.random_range(-1.0..=1.0),
            })
            .collect();
        let euler = (0..k.div_ceil(5))
            .map(|_| {
                EulerAngles::new(rng.random_range(-PI..PI), rng.random_range(0.1..PI - 0.1), rng.random_range(-PI..PI))
            })
            .collect();
        Self {
            n_max: cfg.n_max,
            bloch,
            finite_z,
            off_pole,
            tangent_quads,
            group_triples,
            rep_pairs,
            elements,
            qubits,
            wavefunctions,
            jacobi,
            euler,
        }
    }

    /// Weights `0..=min(n_max, cap)`.
    fn weights(&self, cap: u32) -> impl Iterator<Item = SpinWeight> {
        (0..=self.n_max.min(cap)).map(|n| SpinWeight::new(n).expect("validated n_max"))
    }
}

fn max_over<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> f64) -> f64 {
    items.into_iter().map(f).fold(0.0, nan_max)
}

fn fro(a: &OperatorMatrix, b: &OperatorMatrix) -> f64 {
    a.frobenius_distance(b).expect("same weight and basis")
}

fn cross(a: &OperatorMatrix, b: &OperatorMatrix) -> OperatorMatrix {
    commutator(a, b).expect("same weight and basis")
}

fn spins(w: SpinWeight, basis: Basis) -> [OperatorMatrix; 3] {
    [1, 2, 3].map(|k| spin_operator(k, w, basis).expect("valid axis"))
}

const BASES: [Basis; 2] = [Basis::Monomial, Basis::Orthonormal];
const SPIN_OPS: [SpinOp; 5] = [SpinOp::S1, SpinOp::S2, SpinOp::S3, SpinOp::Raise, SpinOp::Lower];

/// Standard three-term recurrence for `P^{(a,b)}_n`, `a, b ≥ 0`.
fn jacobi_recurrence(p: &JacobiParams) -> f64 {
    let (a, b, x) = (p.a as f64, p.b as f64, p.x);
    let mut p0 = 1.0;
    if p.degree == 0 {
        return p0;
    }
    let mut p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=p.degree {
        let k = f64::from(k);
        let s = 2.0 * k + a + b;
        let lead = 2.0 * k * (k + a + b) * (s - 2.0);
        let mid = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let tail = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        (p0, p1) = (p1, (mid * p1 - tail * p0) / lead);
    }
    p1
}

fn bloch_from_triple(u: [f64; 3]) -> BlochPoint {
    BlochPoint::new(u[2].clamp(-1.0, 1.0).acos(), u[1].atan2(u[0])).expect("θ in range")
}

type Suite = (&'static str, &'static str, f64, fn(&Samples, Execution) -> f64);

fn phi_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

const SUITES: &[Suite] = &[
    ("riemann_sphere", "round_trip", 1e-12, |s, _| {
        max_over(&s.bloch, |p| {
            let q = unproject(project(*p));
            (q.theta() - p.theta()).abs().max(phi_distance(q.phi(), p.phi()))
        })
    }),
    ("riemann_sphere", "chart_consistency", 1e-12, |s, _| {
        max_over(&s.bloch, |p| observables_from_z(project(*p)).max_abs_diff(&observables_from_bloch(*p)))
    }),
    ("riemann_sphere", "unit_norm", 1e-12, |s, _| {
        let from_bloch = max_over(&s.bloch, |p| (observables_from_bloch(*p).norm_sqr() - 1.0).abs());
        let from_z = max_over(&s.finite_z, |z| (observables_from_z(Finite(*z)).norm_sqr() - 1.0).abs());
        from_bloch.max(from_z)
    }),
    ("riemann_sphere", "antipode", 1e-12, |s, _| {
        max_over(&s.finite_z, |z| {
            observables_from_z(antipode(Finite(*z))).max_abs_diff(&observables_from_z(Finite(*z)).neg())
        })
    }),
    ("classical_dynamics", "poisson_closure", 1e-9, |s, _| {
        max_over(&s.off_pole, |p| {
            let x = observables_from_bloch(*p);
            let mut worst: f64 = 0.0;
            for j in 1..=3u8 {
                for k in 1..=3u8 {
                    let expected = third_axis(j, k).map_or(0.0, |l| -f64::from(levi_civita(j, k, l)) * x.component(l));
                    worst = nan_max(worst, (poisson_bracket(j, k, *p).expect("off pole") - expected).abs());
                }
            }
            worst
        })
    }),
    ("classical_dynamics", "lie_bracket", 1e-4, |s, _| {
        max_over(&s.off_pole, |p| {
            let mut worst: f64 = 0.0;
            for j in 1..=3u8 {
                for k in 1..=3u8 {
                    let got = lie_bracket_numeric(j, k, *p, DEFAULT_STEP).expect("off pole");
                    let want = lie_bracket_expected(j, k, *p).expect("off pole");
                    worst = nan_max(worst, got.max_abs_diff(&want));
                }
            }
            worst
        })
    }),
    ("classical_dynamics", "pushforward_oriented", 1e-6, |s, _| {
        max_over(&s.off_pole, |p| {
            max_over(1..=3u8, |k| pushforward_orientation_residual(k, *p, PUSHFORWARD_STEP).expect("off pole"))
        })
    }),
    ("classical_dynamics", "symplectic_antisymmetry_bilinearity", 1e-12, |s, _| {
        max_over(s.off_pole.iter().zip(&s.tangent_quads), |(p, (v, c))| {
            let at = ChartPoint::Sphere(*p);
            let om = |a: TangentVectorSphere, b: TangentVectorSphere| {
                symplectic_eval(at, TangentVector::Sphere(a), TangentVector::Sphere(b)).expect("off pole")
            };
            let anti = (om(v[0], v[1]) + om(v[1], v[0])).abs();
            let combo = TangentVectorSphere::new(
                c[0] * v[0].d_theta + c[1] * v[1].d_theta,
                c[0] * v[0].d_phi + c[1] * v[1].d_phi,
            );
            let linear = (om(combo, v[2]) - c[0] * om(v[0], v[2]) - c[1] * om(v[1], v[2])).abs();
            // Same checks in the plane chart, with the vectors read as ∂/∂z components.
            let z = ChartPoint::Plane(project(*p));
            let cp = |t: TangentVectorSphere| TangentVector::Cp1(TangentVectorCP1::new(C64::new(t.d_theta, t.d_phi)));
            let omz = |a, b| symplectic_eval(z, cp(a), cp(b)).expect("finite point");
            let anti_z = (omz(v[0], v[1]) + omz(v[1], v[0])).abs();
            let linear_z = (omz(combo, v[2]) - c[0] * omz(v[0], v[2]) - c[1] * omz(v[1], v[2])).abs();
            anti.max(linear).max(anti_z).max(linear_z)
        })
    }),
    ("classical_dynamics", "total_symplectic_volume", 1e-3, |_, exec| {
        (symplectic_volume(Region::Plane, VOLUME_RESOLUTION, exec).expect("resolution ≥ 64") - 4.0 * PI).abs()
    }),
    ("mobius", "group_action", 1e-10, |s, _| {
        max_over(&s.group_triples, |(g, h, z)| act(&compose(g, h), *z).chordal_distance(act(g, act(h, *z))))
    }),
    ("mobius", "antipodality", 1e-10, |s, _| {
        max_over(&s.group_triples, |(g, _, _)| match fixed_points(&rep_mobius_arg(g)) {
            FixedPointSet::Pair(p, q) => q.chordal_distance(antipode(p)),
            FixedPointSet::IdentityMap => 0.0,
        })
    }),
    ("mobius", "rep_arg_transpose_law", 1e-10, |s, _| {
        max_over(&s.group_triples, |(g, h, z)| {
            let lhs = rep_mobius_arg(&compose(g, h)).apply(*z);
            lhs.chordal_distance(rep_mobius_arg(h).apply(rep_mobius_arg(g).apply(*z)))
        })
    }),
    ("mobius", "su2_closure", 1e-12, |s, _| {
        max_over(&s.group_triples, |(g, h, _)| compose(g, h).unitarity_defect().max(inverse(g).unitarity_defect()))
    }),
    ("holo_state", "orthonormality", 1e-12, |s, _| {
        max_over(s.weights(40), |w| {
            let basis: Vec<_> = (0..w.dim())
                .map(|m| basis_wavefunction(w, 2 * m as i32 - w.twice() as i32).expect("in range"))
                .collect();
            let mut worst: f64 = 0.0;
            for (a, pa) in basis.iter().enumerate() {
                for (b, pb) in basis.iter().enumerate() {
                    let want = if a == b { 1.0 } else { 0.0 };
                    worst = nan_max(worst, (inner_product(pa, pb).expect("same weight") - want).norm());
                }
            }
            worst
        })
    }),
    ("holo_state", "derivative_pairing_constant", 1e-10, |s, _| {
        max_over(s.weights(40), |w| {
            let basis: Vec<_> = (0..w.dim())
                .map(|m| basis_wavefunction(w, 2 * m as i32 - w.twice() as i32).expect("in range"))
                .collect();
            let reference = derivative_pairing(basis[0].coeffs(), &basis[0]).expect("same weight")
                / inner_product(&basis[0], &basis[0]).expect("same weight");
            let mut worst: f64 = 0.0;
            for pa in &basis {
                for pb in &basis {
                    let pairing = derivative_pairing(pa.coeffs(), pb).expect("same weight");
                    let inner = inner_product(pa, pb).expect("same weight");
                    worst = nan_max(worst, (pairing - reference * inner).norm());
                }
            }
            worst
        })
    }),
    ("holo_state", "quadrature_offdiagonal", 1e-6, |s, exec| quadrature_gram(s, exec).0),
    ("holo_state", "quadrature_constant_spread", 1e-4, |s, exec| quadrature_gram(s, exec).1),
    ("holo_state", "qubit_round_trip", 1e-12, |s, _| {
        max_over(&s.qubits, |q| to_qubit(&from_qubit(q)).expect("weight 1/2").phase_distance(q))
    }),
    ("holo_state", "coherent_point_vs_bloch", 1e-10, |s, _| {
        max_over(&s.qubits, |q| {
            let via_bloch = project(bloch_from_triple(bloch_of(q).expect("nonzero").as_array()));
            coherent_point(q).expect("nonzero").chordal_distance(via_bloch)
        })
    }),
    ("spin_ops", "su2_relations", 1e-10, |s, _| {
        max_over(s.weights(40), |w| {
            max_over(BASES, |basis| {
                let ops = spins(w, basis);
                let mut worst: f64 = 0.0;
                for j in 1..=3u8 {
                    for k in 1..=3u8 {
                        let mut want = OperatorMatrix::zeros(w, basis);
                        if let Some(l) = third_axis(j, k) {
                            want = ops[l as usize - 1].scale(I * f64::from(levi_civita(j, k, l)));
                        }
                        worst = nan_max(worst, fro(&cross(&ops[j as usize - 1], &ops[k as usize - 1]), &want));
                    }
                }
                worst
            })
        })
    }),
    ("spin_ops", "ladder_relations", 1e-10, |s, _| {
        max_over(s.weights(40), |w| {
            max_over(BASES, |basis| {
                let (up, down) = (ladder_operator(true, w, basis), ladder_operator(false, w, basis));
                let s3 = spin_operator(3, w, basis).expect("valid axis");
                let two = C64::new(2.0, 0.0);
                fro(&cross(&up, &down), &s3.scale(two))
                    .max(fro(&cross(&s3, &up), &up))
                    .max(fro(&cross(&s3, &down), &down.scale(C64::new(-1.0, 0.0))))
            })
        })
    }),
    ("spin_ops", "hermiticity", 1e-12, |s, _| {
        max_over(s.weights(40), |w| {
            let ops = spins(w, Basis::Orthonormal);
            let sym = max_over(&ops, |a| fro(a, &a.adjoint()));
            let up = ladder_operator(true, w, Basis::Orthonormal);
            sym.max(fro(&up, &ladder_operator(false, w, Basis::Orthonormal).adjoint()))
        })
    }),
    ("spin_ops", "casimir", 1e-10, |s, _| {
        max_over(s.weights(40), |w| {
            max_over(BASES, |basis| {
                let c = casimir(w, basis);
                let l = w.l();
                let value = fro(&c, &OperatorMatrix::identity(w, basis).scale(C64::new(l * (l + 1.0), 0.0)));
                let commutes = max_over(spins(w, basis), |sk| cross(&c, &sk).frobenius_norm());
                value.max(commutes)
            })
        })
    }),
    ("spin_ops", "s3_spectrum_exact", 0.0, |s, _| {
        max_over(s.weights(40), |w| {
            max_over(BASES, |basis| {
                let s3 = spin_operator(3, w, basis).expect("valid axis");
                let e = s3.entries();
                let mut worst: f64 = 0.0;
                for r in 0..w.dim() {
                    for c in 0..w.dim() {
                        let want = if r == c { w.j_of(r) } else { 0.0 };
                        worst = worst.max((e[(r, c)] - want).norm());
                    }
                }
                worst
            })
        })
    }),
    ("spin_ops", "raw_differential_consistency", 1e-13, |s, _| {
        max_over(s.weights(40), |w| {
            let mats = SPIN_OPS.map(|op| match op {
                SpinOp::Raise => ladder_operator(true, w, Basis::Monomial),
                SpinOp::Lower => ladder_operator(false, w, Basis::Monomial),
                SpinOp::S1 => spin_operator(1, w, Basis::Monomial).expect("axis"),
                SpinOp::S2 => spin_operator(2, w, Basis::Monomial).expect("axis"),
                SpinOp::S3 => spin_operator(3, w, Basis::Monomial).expect("axis"),
            });
            max_over(&s.wavefunctions[w.twice() as usize], |psi| {
                max_over(SPIN_OPS.iter().zip(&mats), |(op, m)| {
                    let raw = apply_raw_differential(*op, psi);
                    let via = apply_operator(m, psi).expect("same weight");
                    raw.max_abs_diff(&via) / psi.coeffs().iter().map(|c| c.norm()).fold(f64::MIN_POSITIVE, f64::max)
                })
            })
        })
    }),
    ("spin_ops", "linear_combinations", 1e-12, |s, _| {
        max_over(s.weights(40), |w| {
            max_over(BASES, |basis| {
                let [s1, s2, _] = spins(w, basis);
                let (up, down) = (ladder_operator(true, w, basis), ladder_operator(false, w, basis));
                let sum = up.add(&down).expect("same shape").scale(C64::new(0.5, 0.0));
                let diff = up.sub(&down).expect("same shape").scale(C64::new(0.0, -0.5));
                fro(&s1, &sum).max(fro(&s2, &diff))
            })
        })
    }),
    ("gate_rep", "homomorphism", 1e-9, |s, _| {
        max_over(s.weights(6), |w| {
            max_over(&s.rep_pairs, |(g, h)| {
                let lhs = representation_matrix(&compose(g, h), w, Basis::Monomial);
                let rhs = representation_matrix(g, w, Basis::Monomial)
                    .mul(&representation_matrix(h, w, Basis::Monomial))
                    .expect("same shape");
                fro(&lhs, &rhs)
            })
        })
    }),
    ("gate_rep", "unitarity", 1e-10, |s, _| {
        max_over(s.weights(8), |w| {
            let d = w.dim();
            let gram =
                DMatrix::from_fn(
                    d,
                    d,
                    |r, c| {
                        if r == c {
                            C64::new(w.monomial_norm_sqr(r), 0.0)
                        } else {
                            C64::new(0.0, 0.0)
                        }
                    },
                );
            let gram_scale = gram.norm();
            max_over(&s.elements, |g| {
                let u = representation_matrix(g, w, Basis::Orthonormal);
                let orth =
                    fro(&u.adjoint().mul(&u).expect("same shape"), &OperatorMatrix::identity(w, Basis::Orthonormal));
                let m = representation_matrix(g, w, Basis::Monomial).into_entries();
                let weighted = (m.adjoint() * &gram * &m - &gram).norm() / gram_scale;
                orth.max(weighted)
            })
        })
    }),
    ("gate_rep", "defining_representation", 1e-12, |s, _| {
        max_over(&s.elements, |g| {
            let u = representation_matrix(g, SpinWeight::HALF, Basis::Monomial).to_qubit_ordering();
            let m = g.matrix();
            (u - DMatrix::from_fn(2, 2, |r, c| m[(r, c)])).norm()
        })
    }),
    ("gate_rep", "spin_parity", 1e-12, |s, _| {
        let minus = SU2Element::new(C64::new(-1.0, 0.0), C64::new(0.0, 0.0)).expect("unit");
        max_over(s.weights(40), |w| {
            let sign = if w.twice() % 2 == 0 { 1.0 } else { -1.0 };
            let want = OperatorMatrix::identity(w, Basis::Monomial).scale(C64::new(sign, 0.0));
            fro(&representation_matrix(&minus, w, Basis::Monomial), &want)
        })
    }),
    ("gate_rep", "generator_consistency", 1e-5, |s, _| {
        max_over(s.weights(6), |w| {
            max_over(BASES, |basis| {
                max_over(1..=3u8, |k| {
                    fro(&generator_of(k, w, basis).expect("axis"), &spin_operator(k, w, basis).expect("axis"))
                })
            })
        })
    }),
    ("gate_rep", "fixed_point_eigenstate_alignment", 1e-10, |_, exec| {
        max_over(table1_report_with(exec), |row| row.alignment_residual)
    }),
    ("gate_rep", "norm_preservation", 1e-10, |s, _| {
        max_over(s.weights(40), |w| {
            max_over(s.wavefunctions[w.twice() as usize].iter().zip(s.elements.iter().cycle()), |(psi, g)| {
                let before = inner_product(psi, psi).expect("same weight").re;
                let out = apply_gate(g, psi);
                let after = inner_product(&out, &out).expect("same weight").re;
                (after - before).abs() / before.max(f64::MIN_POSITIVE)
            })
        })
    }),
    ("wigner", "jacobi_vs_recurrence", 1e-12, |s, _| {
        max_over(&s.jacobi, |p| {
            let rec = jacobi_recurrence(p);
            (jacobi(*p).expect("degree ≤ 20") - rec).abs() / rec.abs().max(1.0)
        })
    }),
    ("wigner", "corrected_unitarity", 1e-8, |s, _| {
        max_over(s.weights(4), |w| {
            max_over(&s.euler, |e| {
                let u = dmatrix(w, *e, true).expect("continuity").into_entries();
                (u.adjoint() * &u - DMatrix::identity(w.dim(), w.dim())).norm()
            })
        })
    }),
    ("wigner", "oracle_agreement", 1e-8, |s, _| {
        max_over(s.weights(4), |w| max_over(&s.euler, |e| cross_validate(w, *e).residual))
    }),
    ("wigner", "phase_structure", 1e-12, |s, _| {
        max_over(s.weights(4), |w| {
            max_over(&s.euler, |e| {
                let full = dmatrix(w, *e, false).expect("continuity").into_entries();
                let bare = dmatrix(w, EulerAngles::new(0.0, e.theta2, 0.0), false).expect("continuity").into_entries();
                max_over(full.iter().zip(bare.iter()), |(a, b)| (a.norm() - b.norm()).abs())
            })
        })
    }),
    ("qubit_oracle", "oracle_equivalence", 1e-10, |s, _| {
        max_over(GateName::table(ROTATION_SAMPLE_ANGLE), |name| {
            let lift = named_gate(name);
            let gate = standard_gate(name);
            max_over(&s.qubits, |q| {
                let holo = to_qubit(&apply_gate(&lift, &from_qubit(q))).expect("weight 1/2");
                holo.phase_distance(&apply(&gate, q).state)
            })
        })
    }),
    ("qubit_oracle", "eigenstate_mapping", 1e-10, |_, _| {
        max_over(GateName::table(ROTATION_SAMPLE_ANGLE).into_iter().skip(1), |name| {
            let fixed = fixed_points(&rep_mobius_arg(&named_gate(name))).points();
            max_over(eigenstates(name).expect("non-identity"), |pair| {
                let b = bloch_of(&pair.state).expect("normalized");
                fixed.iter().map(|z| observables_from_z(*z).max_abs_diff(&b)).fold(f64::INFINITY, f64::min)
            })
        })
    }),
    ("qubit_oracle", "standard_gate_unitarity", 1e-12, |_, _| {
        max_over(GateName::table(ROTATION_SAMPLE_ANGLE), |name| standard_gate(name).unitarity_defect())
    }),
];

/// Off-diagonal ratio and constant spread of the quadrature Gram matrices.
fn quadrature_gram(s: &Samples, exec: Execution) -> (f64, f64) {
    let mut off: f64 = 0.0;
    let mut spread: f64 = 0.0;
    for w in s.weights(4) {
        let basis: Vec<_> =
            (0..w.dim()).map(|m| basis_wavefunction(w, 2 * m as i32 - w.twice() as i32).expect("in range")).collect();
        let q = |a: usize, b: usize| {
            quadrature_inner_product_with(&basis[a], &basis[b], QUADRATURE_RESOLUTION, exec).expect("same weight")
        };
        let diag: Vec<f64> = (0..w.dim()).map(|a| q(a, a).re).collect();
        let scale = diag.iter().cloned().fold(0.0, f64::max);
        for a in 0..w.dim() {
            for b in a + 1..w.dim() {
                off = nan_max(off, q(a, b).norm() / scale);
            }
        }
        // The coefficient Gram is the identity, so the diagonal is the constant.
        let (lo, hi) = diag.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), d| (lo.min(*d), hi.max(*d)));
        let mean = diag.iter().sum::<f64>() / diag.len() as f64;
        spread = nan_max(spread, (hi - lo) / mean);
    }
    (off, spread)
}

fn known_conflicts(s: &Samples) -> Vec<KnownConflict> {
    let pushforward = max_over(&s.off_pole, |p| {
        max_over(1..=3u8, |k| pushforward_residual(k, *p, PUSHFORWARD_STEP).expect("off pole"))
    });
    let hypothesis = max_over(s.weights(4), |w| max_over(&s.euler, |e| cross_validate(w, *e).hypothesis_deviation));
    vec![
        KnownConflict {
            module: "classical_dynamics",
            name: "pushforward_verbatim",
            max_residual: pushforward,
            nominal_threshold: 1e-6,
            note: "the CP1 fields match dz(ξ_k) only up to the signs (−1, +1, −1); they are written for z = cot(θ/2)e^{−iφ}",
        },
        KnownConflict {
            module: "wigner",
            name: "row_factor_hypothesis",
            max_residual: hypothesis,
            nominal_threshold: 1e-9,
            note: "measured row factor is (−1)^{l+k}/(2^l (l−k)!), which reduces to the printed (−1)^{l+k}2^{−l} only at l = 1/2",
        },
    ]
}

/// Runs every suite.
pub fn run_all(cfg: &CheckConfig) -> CheckReport {
    let samples = Samples::draw(cfg);
    let scale = cfg.tol / NOMINAL_TOL;
    let invariants: Vec<InvariantResult> = cfg.exec.map_slice(SUITES, |(module, name, nominal, f)| {
        let max_residual = f(&samples, cfg.exec);
        let threshold = nominal * scale;
        InvariantResult { module, name, max_residual, threshold, pass: max_residual <= threshold }
    });
    let failing: Vec<String> = invariants.iter().filter(|r| !r.pass).map(InvariantResult::id).collect();
    CheckReport {
        config: *cfg,
        known_conflicts: known_conflicts(&samples),
        passed: failing.is_empty(),
        failing,
        invariants,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_pass() {
        let report = run_all(&CheckConfig::default());
        for r in &report.invariants {
            assert!(r.pass, "{} residual {:e} > {:e}", r.id(), r.max_residual, r.threshold);
        }
        assert!(report.passed);
        let push = &report.known_conflicts[0];
        assert!(push.max_residual > push.nominal_threshold);
    }

    #[test]
    fn impossible_tolerance_fails() {
        let cfg = CheckConfig { tol: 1e-30, samples: 5, n_max: 2, ..CheckConfig::default() };
        let report = run_all(&cfg);
        assert!(!report.passed && !report.failing.is_empty());
    }

    #[test]
    fn spin_zero_sweep_passes() {
        let report = run_all(&CheckConfig { n_max: 0, ..CheckConfig::default() });
        assert!(report.passed, "{:?}", report.failing);
    }

    #[test]
    fn scheduling_does_not_change_residuals() {
        let cfg = CheckConfig { samples: 10, n_max: 3, ..CheckConfig::default() };
        let seq = run_all(&CheckConfig { exec: Execution::Sequential, ..cfg });
        let par = run_all(&CheckConfig { exec: Execution::Parallel, ..cfg });
        assert_eq!(seq.invariants, par.invariants);
        assert_eq!(seq.known_conflicts, par.known_conflicts);
    }
}
