//! Acceptance suite: one PASS/FAIL line per criterion, with its sub-checks.
//!
//! Runs without the libtest harness so the report is always printed. The
//! process fails if any criterion fails, except those listed in
//! `KNOWN_UNATTAINABLE`, which must keep failing (a pass there means the
//! recorded analysis is stale).

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::process::{Command, ExitCode};
use std::time::Instant;

use nalgebra::{DMatrix, Matrix2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use holoqubit::classical::{
    hamvf_sphere, levi_civita, lie_bracket_numeric, poisson_bracket, pushforward_orientation_residual,
    pushforward_residual, third_axis, total_symplectic_volume,
};
use holoqubit::gate_rep::{
    apply_gate, generator_of, representation_matrix, table1_report, GENERATOR_SIGN, ROTATION_SAMPLE_ANGLE,
};
use holoqubit::holo_state::{
    basis_wavefunction, coherent_point, derivative_pairing, from_qubit, inner_product, quadrature_inner_product,
    to_qubit, HoloWavefunction, QubitState, SpinWeight,
};
use holoqubit::mobius::{compose, fixed_points, named_gate, rep_mobius_arg, EulerAngles, GateName, SU2Element};
use holoqubit::qubit_oracle::eigenstates;
use holoqubit::riemann_sphere::{BlochPoint, ExtendedComplex, Infinity};
use holoqubit::spin_ops::{casimir, commutator, ladder_operator, spin_operator, Basis, OperatorMatrix};
use holoqubit::wigner::{cross_validate, dmatrix};
use holoqubit::C64;

/// Criteria whose verbatim statement cannot hold; see the README.
const KNOWN_UNATTAINABLE: &[u8] = &[9];

const SEED: u64 = 20_240_601;

struct Sub {
    name: String,
    value: f64,
    bound: f64,
    pass: bool,
}

fn sub(name: impl Into<String>, value: f64, bound: f64) -> Sub {
    Sub { name: name.into(), value, bound, pass: value <= bound }
}

fn flag(name: impl Into<String>, ok: bool) -> Sub {
    Sub { name: name.into(), value: if ok { 0.0 } else { 1.0 }, bound: 0.0, pass: ok }
}

struct Criterion {
    id: u8,
    title: &'static str,
    subs: Vec<Sub>,
    notes: Vec<String>,
}

impl Criterion {
    fn pass(&self) -> bool {
        self.subs.iter().all(|s| s.pass)
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn w(n: u32) -> SpinWeight {
    SpinWeight::new(n).unwrap()
}

fn max(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, |a, b| if b.is_nan() || a.is_nan() { f64::NAN } else { a.max(b) })
}

/// `min_c ‖a − c·b‖_F` over unit `c`.
fn phase_residual(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    let overlap: C64 = b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { c(1.0, 0.0) };
    (a - b.map(|x| x * phase)).norm()
}

fn fro(a: &OperatorMatrix, b: &OperatorMatrix) -> f64 {
    a.frobenius_distance(b).unwrap()
}

fn set_distance(got: &[ExtendedComplex], want: &[ExtendedComplex]) -> f64 {
    let one_way = |a: &[ExtendedComplex], b: &[ExtendedComplex]| {
        max(a.iter().map(|x| b.iter().map(|y| x.chordal_distance(*y)).fold(f64::INFINITY, f64::min)))
    };
    if got.len() != want.len() {
        return f64::INFINITY;
    }
    one_way(got, want).max(one_way(want, got))
}

fn random_state(rng: &mut ChaCha8Rng) -> QubitState {
    QubitState::new(
        c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
        c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
    )
    .unwrap()
}

fn random_su2(rng: &mut ChaCha8Rng) -> SU2Element {
    SU2Element::new(
        c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
        c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
    )
    .unwrap()
}

fn criterion_1() -> Criterion {
    let fin = |re, im| ExtendedComplex::new(re, im);
    let expected: [(GateName, Vec<ExtendedComplex>); 9] = [
        (GateName::H, vec![fin(1.0 + SQRT_2, 0.0), fin(1.0 - SQRT_2, 0.0)]),
        (GateName::X, vec![fin(1.0, 0.0), fin(-1.0, 0.0)]),
        (GateName::Y, vec![fin(0.0, 1.0), fin(0.0, -1.0)]),
        (GateName::Z, vec![fin(0.0, 0.0), Infinity]),
        (GateName::Rz(ROTATION_SAMPLE_ANGLE), vec![fin(0.0, 0.0), Infinity]),
        (GateName::Rz(2.1), vec![fin(0.0, 0.0), Infinity]),
        (GateName::S, vec![fin(0.0, 0.0), Infinity]),
        (GateName::T, vec![fin(0.0, 0.0), Infinity]),
        (GateName::Rz(-0.4), vec![fin(0.0, 0.0), Infinity]),
    ];
    let worst = max(expected
        .iter()
        .map(|(g, want)| set_distance(&fixed_points(&rep_mobius_arg(&named_gate(*g))).points(), want)));
    let rows = table1_report();
    let flagged = |sym: &str, field: &str| {
        rows.iter().any(|r| r.gate.symbol() == sym && r.discrepancies.iter().any(|d| d.field == field))
    };
    let fixed_flags: Vec<&str> = rows
        .iter()
        .filter(|r| r.discrepancies.iter().any(|d| d.field == "fixed_points"))
        .map(|r| r.gate.symbol())
        .collect();
    Criterion {
        id: 1,
        title: "gate table fixed points and discrepancy flags",
        subs: vec![
            sub("fixed-point sets, max chordal distance", worst, 1e-12),
            flag("Z row wavefunction form flagged", flagged("Z", "wavefunction")),
            flag("S/T rows flagged for omitting ∞ (and no other fixed-point flags)", fixed_flags == ["S", "T"]),
            flag("table has 10 rows", rows.len() == 10),
        ],
        notes: Vec::new(),
    }
}

fn criterion_2() -> Criterion {
    let h = named_gate(GateName::H);
    let image = |q: QubitState| {
        let psi = apply_gate(&h, &from_qubit(&q));
        // ψ = a₁ + a₀z, so the ket is (c₁, c₀).
        [psi.coeffs()[1], psi.coeffs()[0]]
    };
    let zero = image(QubitState::ZERO_KET);
    let one = image(QubitState::ONE_KET);
    let s = FRAC_1_SQRT_2;
    let want_zero = [c(s, 0.0), c(s, 0.0)];
    let want_one = [c(s, 0.0), c(-s, 0.0)];
    // One phase for both images, read off |0⟩'s first component.
    let phase = zero[0] / want_zero[0];
    let residual =
        max((0..2).flat_map(|i| [(zero[i] - phase * want_zero[i]).norm(), (one[i] - phase * want_one[i]).norm()]));
    Criterion {
        id: 2,
        title: "holomorphic Hadamard action on |0⟩ and |1⟩",
        subs: vec![
            sub("residual with one common phase", residual, 1e-12),
            sub("|phase| − 1", (phase.norm() - 1.0).abs(), 1e-12),
        ],
        notes: Vec::new(),
    }
}

fn criterion_3() -> Criterion {
    let mut worst: f64 = 0.0;
    for g in GateName::table(ROTATION_SAMPLE_ANGLE).into_iter().filter(|g| *g != GateName::I) {
        let set = fixed_points(&rep_mobius_arg(&named_gate(g)));
        for pair in eigenstates(g).unwrap() {
            worst = worst.max(set.distance_to(coherent_point(&pair.state).unwrap()));
        }
    }
    let mut hadamard: f64 = 0.0;
    for sign in [1.0, -1.0] {
        let norm_sqr = 4.0 + sign * 2.0 * SQRT_2;
        let want =
            QubitState { a0: c((1.0 + sign * SQRT_2) / norm_sqr.sqrt(), 0.0), a1: c(1.0 / norm_sqr.sqrt(), 0.0) };
        let closest = eigenstates(GateName::H)
            .unwrap()
            .iter()
            .map(|p| p.state.phase_distance(&want))
            .fold(f64::INFINITY, f64::min);
        hadamard = hadamard.max(closest);
    }
    Criterion {
        id: 3,
        title: "eigenstates sit on Möbius fixed points",
        subs: vec![
            sub("nine gates, max chordal distance", worst, 1e-10),
            sub("Hadamard eigenvectors (1±√2, 1)/√(4±2√2)", hadamard, 1e-12),
        ],
        notes: Vec::new(),
    }
}

fn criterion_4() -> Criterion {
    let (mut algebra, mut ladder, mut spectrum) = (0.0f64, 0.0f64, 0.0f64);
    for n in 0..=8 {
        let wt = w(n);
        for basis in [Basis::Monomial, Basis::Orthonormal] {
            let s: Vec<_> = (1..=3).map(|k| spin_operator(k, wt, basis).unwrap()).collect();
            for j in 1..=3u8 {
                for k in 1..=3u8 {
                    let mut want = OperatorMatrix::zeros(wt, basis);
                    if let Some(l) = third_axis(j, k) {
                        want = s[l as usize - 1].scale(c(0.0, f64::from(levi_civita(j, k, l))));
                    }
                    let got = commutator(&s[j as usize - 1], &s[k as usize - 1]).unwrap();
                    algebra = algebra.max(fro(&got, &want));
                }
            }
            let up = ladder_operator(true, wt, basis);
            let down = ladder_operator(false, wt, basis);
            ladder = ladder
                .max(fro(&commutator(&up, &down).unwrap(), &s[2].scale(c(2.0, 0.0))))
                .max(fro(&commutator(&s[2], &up).unwrap(), &up))
                .max(fro(&commutator(&s[2], &down).unwrap(), &down.scale(c(-1.0, 0.0))));
            let e = s[2].entries();
            let d = wt.dim();
            for r in 0..d {
                for col in 0..d {
                    let want = if r == col { r as f64 - f64::from(n) / 2.0 } else { 0.0 };
                    spectrum = spectrum.max((e[(r, col)] - want).norm());
                }
            }
        }
    }
    Criterion {
        id: 4,
        title: "spin operator algebra, n ≤ 8, both bases",
        subs: vec![
            sub("[S_j, S_k] − iε S_l", algebra, 1e-10),
            sub("[S+, S−] − 2S3 and [S3, S±] ∓ S±", ladder, 1e-10),
            sub("S3 is exactly diag(−l..l)", spectrum, 0.0),
        ],
        notes: Vec::new(),
    }
}

fn criterion_5() -> Criterion {
    let half = casimir(SpinWeight::HALF, Basis::Monomial);
    let three_quarters = OperatorMatrix::identity(SpinWeight::HALF, Basis::Monomial).scale(c(0.75, 0.0));
    let mut worst: f64 = 0.0;
    for n in 0..=8 {
        let l = f64::from(n) / 2.0;
        for basis in [Basis::Monomial, Basis::Orthonormal] {
            let want = OperatorMatrix::identity(w(n), basis).scale(c(l * (l + 1.0), 0.0));
            worst = worst.max(fro(&casimir(w(n), basis), &want));
        }
    }
    Criterion {
        id: 5,
        title: "Casimir operator",
        subs: vec![
            sub("l = 1/2 equals (3/4)·I", fro(&half, &three_quarters), 1e-10),
            sub("l(l+1)·I for n ≤ 8", worst, 1e-10),
        ],
        notes: Vec::new(),
    }
}

fn criterion_6(rng: &mut ChaCha8Rng) -> Criterion {
    let mut defining: f64 = 0.0;
    let mut unitary: f64 = 0.0;
    for _ in 0..100 {
        let g = random_su2(rng);
        let u = representation_matrix(&g, SpinWeight::HALF, Basis::Monomial).to_qubit_ordering();
        let m = g.matrix();
        defining = defining.max((u - DMatrix::from_fn(2, 2, |r, k| m[(r, k)])).norm());
        for n in 0..=8 {
            let u = representation_matrix(&g, w(n), Basis::Orthonormal).into_entries();
            unitary = unitary.max((u.adjoint() * &u - DMatrix::identity(n as usize + 1, n as usize + 1)).norm());
        }
    }
    let mut homomorphism: f64 = 0.0;
    for _ in 0..200 {
        let (g, h) = (random_su2(rng), random_su2(rng));
        for n in 0..=6 {
            let lhs = representation_matrix(&compose(&g, &h), w(n), Basis::Monomial);
            let rhs = representation_matrix(&g, w(n), Basis::Monomial)
                .mul(&representation_matrix(&h, w(n), Basis::Monomial))
                .unwrap();
            homomorphism = homomorphism.max(fro(&lhs, &rhs));
        }
    }
    let minus = SU2Element::new(c(-1.0, 0.0), c(0.0, 0.0)).unwrap();
    let parity = max((0..=40).map(|n| {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let want = OperatorMatrix::identity(w(n), Basis::Monomial).scale(c(sign, 0.0));
        fro(&representation_matrix(&minus, w(n), Basis::Monomial), &want)
    }));
    Criterion {
        id: 6,
        title: "spin-l representation",
        subs: vec![
            sub("rep(g, 1/2) = g, 100 random g", defining, 1e-12),
            sub("homomorphism, 200 pairs, n ≤ 6", homomorphism, 1e-9),
            sub("orthonormal-basis unitarity, n ≤ 8", unitary, 1e-10),
            sub("rep(−I) = (−1)^{2l} I, n ≤ 40", parity, 1e-12),
        ],
        notes: Vec::new(),
    }
}

fn criterion_7() -> Criterion {
    let mut worst: f64 = 0.0;
    for n in 0..=6 {
        for basis in [Basis::Monomial, Basis::Orthonormal] {
            for k in 1..=3 {
                worst = worst.max(fro(&generator_of(k, w(n), basis).unwrap(), &spin_operator(k, w(n), basis).unwrap()));
            }
        }
    }
    Criterion {
        id: 7,
        title: "finite-difference generators",
        subs: vec![
            sub("all axes, n ≤ 6, both bases", worst, 1e-5),
            flag(format!("single global sign G = {GENERATOR_SIGN:+}·i dU/dθ"), GENERATOR_SIGN.abs() == 1.0),
        ],
        notes: Vec::new(),
    }
}

/// Textbook small-d matrix by the explicit finite sum, rows and columns in
/// ascending `m`.
fn small_d(n: u32, beta: f64) -> DMatrix<f64> {
    let f = |k: i64| (1..=k).map(|x| x as f64).product::<f64>();
    let tj = i64::from(n);
    let (cb, sb) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    DMatrix::from_fn(n as usize + 1, n as usize + 1, |r, col| {
        // Work with doubled indices: 2m' = 2r − n.
        let (mp, m) = (2 * r as i64 - tj, 2 * col as i64 - tj);
        let (jpm, jmm, jpmp, jmmp) = ((tj + m) / 2, (tj - m) / 2, (tj + mp) / 2, (tj - mp) / 2);
        let pref = (f(jpmp) * f(jmmp) * f(jpm) * f(jmm)).sqrt();
        let mut sum = 0.0;
        for s in 0..=tj {
            let (a, b, d) = (jpm - s, (mp - m) / 2 + s, jmmp - s);
            if a < 0 || b < 0 || d < 0 {
                continue;
            }
            let sign = if b % 2 == 0 { 1.0 } else { -1.0 };
            let cos_pow = (tj + (m - mp) / 2 - 2 * s) as i32;
            let sin_pow = ((mp - m) / 2 + 2 * s) as i32;
            sum += sign * pref / (f(a) * f(s) * f(b) * f(d)) * cb.powi(cos_pow) * sb.powi(sin_pow);
        }
        sum
    })
}

fn criterion_8(rng: &mut ChaCha8Rng) -> Criterion {
    let mut oracle: f64 = 0.0;
    let mut library: f64 = 0.0;
    let mut spread: f64 = 0.0;
    let mut corrected_dev: f64 = 0.0;
    let mut hypothesis_dev: f64 = 0.0;
    let mut half_dev: f64 = 0.0;
    for _ in 0..20 {
        let e = EulerAngles::new(rng.random_range(-PI..PI), rng.random_range(0.1..PI - 0.1), rng.random_range(-PI..PI));
        for n in 0..=4 {
            let got = dmatrix(w(n), e, true).unwrap().into_entries();
            // Best member of the sign/transpose convention family.
            let mut best = f64::INFINITY;
            for mask in 0..16u8 {
                let sg = |bit: u8| if mask & (1 << bit) != 0 { -1.0 } else { 1.0 };
                let (a, b, g) = (sg(0) * e.theta3, sg(1) * e.theta2, sg(2) * e.theta3p);
                let d = small_d(n, b);
                let mut m = DMatrix::from_fn(n as usize + 1, n as usize + 1, |r, col| {
                    let (mp, mm) = (r as f64 - f64::from(n) / 2.0, col as f64 - f64::from(n) / 2.0);
                    C64::from_polar(d[(r, col)], -mp * a - mm * g)
                });
                if mask & 8 != 0 {
                    m = m.transpose();
                }
                best = best.min(phase_residual(&got, &m));
            }
            oracle = oracle.max(best);
            let report = cross_validate(w(n), e);
            library = library.max(report.residual);
            spread = spread.max(report.row_factor_spread);
            corrected_dev = corrected_dev.max(report.corrected_deviation);
            hypothesis_dev = hypothesis_dev.max(report.hypothesis_deviation);
            if n == 1 {
                half_dev = half_dev.max(report.hypothesis_deviation);
            }
        }
    }
    Criterion {
        id: 8,
        title: "Euler-angle matrix elements vs. independent oracle",
        subs: vec![
            sub("corrected formula vs explicit Wigner sum, best convention", oracle, 1e-8),
            sub("library cross-validation residual", library, 1e-8),
            sub("verbatim formula differs from the oracle by a per-row factor", spread, 1e-8),
            sub("measured row factors match (−1)^(l+k)/(2^l (l−k)!)", corrected_dev, 1e-9),
            sub("printed hypothesis holds at l = 1/2", half_dev, 1e-9),
        ],
        notes: vec![format!(
            "row factor departs from (−1)^(l+k) 2^(−l) by up to {hypothesis_dev:.3e} for n ≤ 4; that form holds only at l = 1/2"
        )],
    }
}

fn criterion_9(rng: &mut ChaCha8Rng) -> Criterion {
    let points: Vec<BlochPoint> = (0..100)
        .map(|_| BlochPoint::new(rng.random_range(0.2..PI - 0.2), rng.random_range(0.0..2.0 * PI)).unwrap())
        .collect();
    let mut poisson: f64 = 0.0;
    let mut lie: f64 = 0.0;
    let mut push: f64 = 0.0;
    let mut oriented: f64 = 0.0;
    for p in &points {
        let (t, f) = (p.theta(), p.phi());
        let x = [t.sin() * f.cos(), t.sin() * f.sin(), t.cos()];
        for j in 1..=3u8 {
            push = push.max(pushforward_residual(j, *p, 1e-6).unwrap());
            oriented = oriented.max(pushforward_orientation_residual(j, *p, 1e-6).unwrap());
            for k in 1..=3u8 {
                let (want_pb, want_lie) = match third_axis(j, k) {
                    Some(l) => {
                        let e = f64::from(levi_civita(j, k, l));
                        let xi = hamvf_sphere(l, *p).unwrap();
                        (-e * x[l as usize - 1], [e * xi.d_theta, e * xi.d_phi])
                    }
                    None => (0.0, [0.0, 0.0]),
                };
                poisson = poisson.max((poisson_bracket(j, k, *p).unwrap() - want_pb).abs());
                let got = lie_bracket_numeric(j, k, *p, 1e-4).unwrap();
                lie = lie.max((got.d_theta - want_lie[0]).abs()).max((got.d_phi - want_lie[1]).abs());
            }
        }
    }
    let volume = (total_symplectic_volume(256).unwrap() - 4.0 * PI).abs();
    Criterion {
        id: 9,
        title: "classical layer, 100 points with sin θ ≥ sin 0.2",
        subs: vec![
            sub("{x_j, x_k} + ε x_l", poisson, 1e-9),
            sub("finite-difference Lie brackets vs ε ξ_l", lie, 1e-4),
            sub("pushforward of sphere fields onto the CP1 fields as written", push, 1e-6),
            sub("total symplectic volume − 4π at resolution 256", volume, 1e-3),
        ],
        notes: vec![format!(
            "with z = cot(θ/2)e^(iφ) the sphere fields push forward to (−ξ̃₁, ξ̃₂, −ξ̃₃); that oriented relation holds to {oriented:.3e}"
        )],
    }
}

fn criterion_10() -> Criterion {
    let basis = |n: u32| -> Vec<HoloWavefunction> {
        (0..=n).map(|m| basis_wavefunction(w(n), 2 * m as i32 - n as i32).unwrap()).collect()
    };
    let mut gram: f64 = 0.0;
    let mut pairing: f64 = 0.0;
    for n in 0..=8 {
        let b = basis(n);
        let constant = derivative_pairing(b[0].coeffs(), &b[0]).unwrap();
        for (j, pj) in b.iter().enumerate() {
            for (k, pk) in b.iter().enumerate() {
                let g = inner_product(pj, pk).unwrap();
                gram = gram.max((g - if j == k { 1.0 } else { 0.0 }).norm());
                pairing = pairing.max((derivative_pairing(pj.coeffs(), pk).unwrap() - constant * g).norm());
            }
        }
    }
    let mut offdiag: f64 = 0.0;
    for n in 0..=4 {
        let b = basis(n);
        let q: Vec<Vec<C64>> =
            b.iter().map(|x| b.iter().map(|y| quadrature_inner_product(x, y, 512).unwrap()).collect()).collect();
        let scale = max((0..b.len()).map(|j| q[j][j].norm()));
        for (j, row) in q.iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                if j != k {
                    offdiag = offdiag.max(x.norm() / scale);
                }
            }
        }
    }
    Criterion {
        id: 10,
        title: "inner products",
        subs: vec![
            sub("orthonormal Gram identity, n ≤ 8", gram, 1e-12),
            sub("derivative pairing is one constant times the inner product", pairing, 1e-10),
            sub("quadrature Gram off-diagonal / scale, n ≤ 4, resolution 512", offdiag, 1e-6),
        ],
        notes: Vec::new(),
    }
}

/// Textbook gate matrices, in `(|0⟩, |1⟩)` ordering.
fn textbook(g: GateName) -> Matrix2<C64> {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    let s = FRAC_1_SQRT_2;
    let rot = |a: f64, axis: [[C64; 2]; 2]| {
        let (ch, sh) = ((a / 2.0).cos(), (a / 2.0).sin());
        Matrix2::new(
            c(ch, 0.0) - i * sh * axis[0][0],
            -i * sh * axis[0][1],
            -i * sh * axis[1][0],
            c(ch, 0.0) - i * sh * axis[1][1],
        )
    };
    match g {
        GateName::I => Matrix2::new(o, z, z, o),
        GateName::X => Matrix2::new(z, o, o, z),
        GateName::Y => Matrix2::new(z, -i, i, z),
        GateName::Z => Matrix2::new(o, z, z, -o),
        GateName::H => Matrix2::new(c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)),
        GateName::S => Matrix2::new(o, z, z, i),
        GateName::T => Matrix2::new(o, z, z, C64::from_polar(1.0, PI / 4.0)),
        GateName::Rx(a) => rot(a, [[z, o], [o, z]]),
        GateName::Ry(a) => rot(a, [[z, -i], [i, z]]),
        GateName::Rz(a) => rot(a, [[o, z], [z, -o]]),
    }
}

fn run_check(args: &[&str]) -> Option<i32> {
    Command::new(env!("CARGO_BIN_EXE_holoqubit")).arg("check").args(args).output().ok()?.status.code()
}

fn criterion_11(rng: &mut ChaCha8Rng) -> Criterion {
    let mut gates: Vec<GateName> = GateName::table(ROTATION_SAMPLE_ANGLE).to_vec();
    for _ in 0..3 {
        gates.push(GateName::Rx(rng.random_range(-PI..PI)));
        gates.push(GateName::Ry(rng.random_range(-PI..PI)));
        gates.push(GateName::Rz(rng.random_range(-PI..PI)));
    }
    let states: Vec<QubitState> = (0..100).map(|_| random_state(rng)).collect();
    let mut worst: f64 = 0.0;
    for g in &gates {
        let m = textbook(*g);
        let lift = named_gate(*g);
        for q in &states {
            let holo = to_qubit(&apply_gate(&lift, &from_qubit(q))).unwrap();
            let v = m * nalgebra::Vector2::new(q.a0, q.a1);
            worst = worst.max(holo.phase_distance(&QubitState::new(v[0], v[1]).unwrap()));
        }
    }
    let defaults = run_check(&[]);
    let impossible = run_check(&["--tol", "1e-30"]);
    Criterion {
        id: 11,
        title: "holomorphic route equals matrix route; check exit codes",
        subs: vec![
            sub(format!("{} gates × 100 states, up to global phase", gates.len()), worst, 1e-10),
            flag(format!("`check` on defaults exits 0 (got {defaults:?})"), defaults == Some(0)),
            flag(format!("`check --tol 1e-30` exits 4 (got {impossible:?})"), impossible == Some(4)),
        ],
        notes: Vec::new(),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let criteria = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(&mut rng),
        criterion_7(),
        criterion_8(&mut rng),
        criterion_9(&mut rng),
        criterion_10(),
        criterion_11(&mut rng),
    ];
    println!();
    let mut unexpected = Vec::new();
    for cr in &criteria {
        let known = KNOWN_UNATTAINABLE.contains(&cr.id);
        let tag = if cr.pass() { "PASS" } else { "FAIL" };
        let note = if known { "  [recorded as unattainable as stated]" } else { "" };
        println!("{tag} {:>2}  {}{note}", cr.id, cr.title);
        for s in &cr.subs {
            let mark = if s.pass { "ok " } else { "BAD" };
            println!("        {mark} {}: {:.3e} (bound {:.0e})", s.name, s.value, s.bound);
        }
        for n in &cr.notes {
            println!("        note: {n}");
        }
        if cr.pass() == known {
            unexpected.push(cr.id);
        }
    }
    let passed = criteria.iter().filter(|c| c.pass()).count();
    println!("\n{passed}/{} criteria pass in {:.2?}", criteria.len(), start.elapsed());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
