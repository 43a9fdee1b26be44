//! The spin-`l` representation of SU(2) on holomorphic wavefunctions,
//!
//! ```text
//! (U_g ψ)(z) = (βz + ᾱ)^{2l} ψ((αz − β̄)/(βz + ᾱ)),
//! ```
//!
//! with its generators and the single-qubit gate table built on top of it.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::holo_state::{coherent_point, HoloWavefunction, QubitState, SpinWeight};
use crate::mobius::{
    fixed_points, named_gate, ops_element, rep_mobius_arg, FixedPointSet, GateName, MobiusMap, SU2Element,
};
use crate::qubit_oracle::{eigenstates, EigenPair};
use crate::riemann_sphere::{observables_from_z, ExtendedComplex, Finite, Infinity, ObservableTriple};
use crate::spin_ops::{Basis, OperatorMatrix};
use crate::{Error, Execution, Result, C64, I};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Step of the central difference in [`generator_of`].
pub const GENERATOR_STEP: f64 = 1e-5;

/// `s` in `G = s·i·dU/dθ`, fixed by matching `Ŝ₃` at `l = 1/2`.
pub const GENERATOR_SIGN: f64 = 1.0;

/// Angle used for the rotation rows of [`table1_report`].
pub const ROTATION_SAMPLE_ANGLE: f64 = PI / 3.0;

/// Chordal tolerance for the eigenstate/fixed-point alignment flag.
pub const ALIGNMENT_TOLERANCE: f64 = 1e-10;

fn powers(x: C64, n: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = ONE;
    for _ in 0..=n {
        out.push(acc);
        acc *= x;
    }
    out
}

/// Matrix of `U_g` at weight `l`.
///
/// Column `m` holds the coefficients of `(αz − β̄)^m (βz + ᾱ)^{n−m}`, expanded
/// with exact binomials and convolved.
pub fn representation_matrix(g: &SU2Element, weight: SpinWeight, basis: Basis) -> OperatorMatrix {
    let n = weight.twice() as usize;
    let (a, b) = (g.alpha(), g.beta());
    let pa = powers(a, n);
    let pnb = powers(-b.conj(), n);
    let pb = powers(b, n);
    let pac = powers(a.conj(), n);
    let mut entries = DMatrix::from_element(n + 1, n + 1, ZERO);
    for m in 0..=n {
        let rest = n - m;
        for p in 0..=m {
            let u = pa[p] * pnb[m - p] * binomial(m as u32, p as u32) as f64;
            for q in 0..=rest {
                let v = pb[q] * pac[rest - q] * binomial(rest as u32, q as u32) as f64;
                entries[(p + q, m)] += u * v;
            }
        }
    }
    OperatorMatrix::new(weight, Basis::Monomial, entries).expect("square of the right size").in_basis(basis)
}

/// [`representation_matrix`] for many elements at once.
pub fn representation_batch(
    gates: &[SU2Element],
    weight: SpinWeight,
    basis: Basis,
    exec: Execution,
) -> Vec<OperatorMatrix> {
    exec.map_slice(gates, |g| representation_matrix(g, weight, basis))
}

pub fn apply_gate(g: &SU2Element, psi: &HoloWavefunction) -> HoloWavefunction {
    let u = representation_matrix(g, psi.weight(), Basis::Monomial);
    let out = u.entries() * DVector::from_column_slice(psi.coeffs());
    HoloWavefunction::from_coeffs(out.as_slice().to_vec()).expect("same length")
}

/// `s·i·d/dθ U_{ops(k,θ)}` at `θ = 0`, by central difference.
pub fn generator_of(k: u8, weight: SpinWeight, basis: Basis) -> Result<OperatorMatrix> {
    let h = GENERATOR_STEP;
    let plus = representation_matrix(&ops_element(k, h)?, weight, basis);
    let minus = representation_matrix(&ops_element(k, -h)?, weight, basis);
    let d = plus.sub(&minus)?.scale(C64::new(0.5 / h, 0.0));
    Ok(d.scale(I * GENERATOR_SIGN))
}

/// Outcome of [`phase_equivalent`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseMatch {
    pub equivalent: bool,
    /// Unit `c` with `A ≈ c·B`.
    pub phase: C64,
    /// `‖A − c·B‖_F`.
    pub residual: f64,
}

/// Unit `c` from the ratio at the largest-magnitude entry of `b`, and
/// `‖a − c·b‖_F`.
pub fn phase_align(a: &DMatrix<C64>, b: &DMatrix<C64>) -> (C64, f64) {
    let (mut idx, mut best) = (0, -1.0);
    for (i, x) in b.iter().enumerate() {
        if x.norm() > best {
            best = x.norm();
            idx = i;
        }
    }
    let ratio = if best > 0.0 { a.as_slice()[idx] / b.as_slice()[idx] } else { ONE };
    let c = if ratio.norm() > 0.0 { ratio / ratio.norm() } else { ONE };
    (c, (a - b.map(|x| x * c)).norm())
}

/// Whether `A = c·B` for a unit scalar `c`, within `tol` in Frobenius norm.
pub fn phase_equivalent(a: &OperatorMatrix, b: &OperatorMatrix, tol: f64) -> Result<PhaseMatch> {
    if a.weight() != b.weight() || a.basis() != b.basis() {
        return Err(Error::Mismatch);
    }
    let (phase, residual) = phase_align(a.entries(), b.entries());
    Ok(PhaseMatch { equivalent: residual <= tol, phase, residual })
}

/// What the published gate table states for one row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PublishedRow {
    /// The wavefunction column as printed.
    pub wavefunction: &'static str,
    /// Argument substitution of that column, prefactors dropped.
    pub argument_map: MobiusMap,
    /// `None` for "all points".
    pub fixed_points: Option<Vec<ExtendedComplex>>,
    /// Listed eigenvectors, unnormalized `(a₀, a₁)`.
    pub eigenstates: Vec<[C64; 2]>,
}

/// The published table entries for `name`; rotations use the angle it carries.
pub fn published_row(name: GateName) -> PublishedRow {
    let map = |a, b, c, d| MobiusMap { a, b, c, d };
    let re = |x: f64| C64::new(x, 0.0);
    let none = Vec::new;
    let (wavefunction, argument_map, fixed_points, eigenstates) = match name {
        GateName::I => ("ψ(z)", MobiusMap::IDENTITY, None, none()),
        GateName::X => {
            ("ψ(1/z)", map(ZERO, ONE, ONE, ZERO), Some(vec![Finite(ONE), Finite(-ONE)]), vec![[ONE, ONE], [ONE, -ONE]])
        }
        GateName::Y => {
            ("ψ(−1/z)", map(ZERO, -ONE, ONE, ZERO), Some(vec![Finite(I), Finite(-I)]), vec![[ZERO, I], [-I, ZERO]])
        }
        GateName::Z => {
            ("−ψ(z)", MobiusMap::IDENTITY, Some(vec![Infinity, Finite(ZERO)]), vec![[ONE, ZERO], [ZERO, ONE]])
        }
        GateName::H => (
            "ψ((z+1)/(z−1))",
            map(ONE, ONE, ONE, -ONE),
            Some(vec![Finite(re(1.0 + SQRT_2)), Finite(re(1.0 - SQRT_2))]),
            vec![[re(1.0 + SQRT_2), ONE], [re(1.0 - SQRT_2), ONE]],
        ),
        GateName::S => ("ψ(iz)", map(I, ZERO, ZERO, ONE), Some(vec![Finite(ZERO)]), vec![[ONE, ZERO], [ZERO, I]]),
        GateName::T => (
            "(1/√2)ψ(z+iz)",
            map(C64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2), ZERO, ZERO, ONE),
            Some(vec![Finite(ZERO)]),
            vec![[ONE, ZERO], [ZERO, C64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)]],
        ),
        GateName::Rx(t) => {
            let (s, c) = (t / 2.0).sin_cos();
            let fixed = Some(vec![Finite(ONE), Finite(-ONE)]);
            ("ψ((cos(θ/2)z + i sin(θ/2))/(i sin(θ/2)z + cos(θ/2)))", map(re(c), I * s, I * s, re(c)), fixed, none())
        }
        GateName::Ry(t) => {
            let (s, c) = (t / 2.0).sin_cos();
            let fixed = Some(vec![Finite(I), Finite(-I)]);
            ("ψ((cos(θ/2)z − sin(θ/2))/(sin(θ/2)z + cos(θ/2)))", map(re(c), re(-s), re(s), re(c)), fixed, none())
        }
        GateName::Rz(t) => {
            let fixed = Some(vec![Infinity, Finite(ZERO)]);
            ("ψ(e^{iθ}z)", map(C64::from_polar(1.0, t), ZERO, ZERO, ONE), fixed, none())
        }
    };
    PublishedRow { wavefunction, argument_map, fixed_points, eigenstates }
}

/// A disagreement between a computed row and the published one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    pub field: &'static str,
    pub published: String,
    pub computed: String,
}

/// One gate's row of the geometric gate table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Row {
    pub gate: GateName,
    pub lift: SU2Element,
    /// `z ↦ (αz − β̄)/(βz + ᾱ)`.
    pub argument_map: MobiusMap,
    /// `(β, ᾱ)` of the prefactor `(βz + ᾱ)^{2l}`.
    pub prefactor: [C64; 2],
    pub fixed_points: FixedPointSet,
    /// `(x₁, x₂, x₃)` of each fixed point.
    pub fixed_point_bloch: Vec<ObservableTriple>,
    pub eigenstates: Vec<EigenPair>,
    pub eigen_coherent_points: Vec<ExtendedComplex>,
    /// Largest chordal distance from an eigenstate's coherent point to the
    /// fixed-point set.
    pub alignment_residual: f64,
    pub aligned: bool,
    pub published: PublishedRow,
    pub discrepancies: Vec<Discrepancy>,
}

fn fmt_c(z: C64) -> String {
    format!("{:.6}{:+.6}i", z.re, z.im)
}

fn fmt_ext(z: ExtendedComplex) -> String {
    match z {
        Infinity => "∞".into(),
        Finite(z) => fmt_c(z),
    }
}

fn fmt_points(points: &[ExtendedComplex]) -> String {
    format!("{{{}}}", points.iter().map(|p| fmt_ext(*p)).collect::<Vec<_>>().join(", "))
}

fn nearest(points: &[ExtendedComplex], z: ExtendedComplex) -> f64 {
    points.iter().map(|p| p.chordal_distance(z)).fold(f64::INFINITY, f64::min)
}

fn discrepancies(row: &Table1Row) -> Vec<Discrepancy> {
    let tol = 1e-10;
    let mut out = Vec::new();
    let m = &row.argument_map;
    if m.projective_distance(&row.published.argument_map) > tol {
        out.push(Discrepancy {
            field: "wavefunction",
            published: row.published.wavefunction.into(),
            computed: format!(
                "({}z + {})·ψ(({}z + {})/({}z + {}))",
                fmt_c(row.prefactor[0]),
                fmt_c(row.prefactor[1]),
                fmt_c(m.a),
                fmt_c(m.b),
                fmt_c(m.c),
                fmt_c(m.d)
            ),
        });
    }
    let computed = row.fixed_points.points();
    let fixed_mismatch = match (&row.published.fixed_points, row.fixed_points) {
        (None, FixedPointSet::IdentityMap) => None,
        (None, _) => Some("all points".to_string()),
        (Some(_), FixedPointSet::IdentityMap) => Some("all points".to_string()),
        (Some(listed), _) => {
            let missing = computed.iter().any(|z| nearest(listed, *z) > tol);
            let extra = listed.iter().any(|z| nearest(&computed, *z) > tol);
            (missing || extra).then(|| fmt_points(listed))
        }
    };
    if let Some(published) = fixed_mismatch {
        let computed = match row.fixed_points {
            FixedPointSet::IdentityMap => "all points".into(),
            _ => fmt_points(&computed),
        };
        out.push(Discrepancy { field: "fixed_points", published, computed });
    }
    let unmatched: Vec<_> = row
        .published
        .eigenstates
        .iter()
        .filter(|v| {
            QubitState::new(v[0], v[1])
                .map(|q| row.eigenstates.iter().all(|e| e.state.phase_distance(&q) > tol))
                .unwrap_or(true)
        })
        .collect();
    if !unmatched.is_empty() {
        let show = |v: &[C64; 2]| format!("({}, {})", fmt_c(v[0]), fmt_c(v[1]));
        out.push(Discrepancy {
            field: "eigenstates",
            published: unmatched.iter().map(|v| show(v)).collect::<Vec<_>>().join(", "),
            computed: row.eigenstates.iter().map(|e| show(&e.state.as_array())).collect::<Vec<_>>().join(", "),
        });
    }
    out
}

/// Builds the row for one gate.
pub fn table1_row(name: GateName) -> Table1Row {
    let lift = named_gate(name);
    let argument_map = rep_mobius_arg(&lift);
    let fixed = fixed_points(&argument_map);
    let pairs: Vec<EigenPair> = eigenstates(name).map(|p| p.to_vec()).unwrap_or_default();
    let coherent: Vec<ExtendedComplex> =
        pairs.iter().map(|p| coherent_point(&p.state).expect("normalized eigenvector")).collect();
    let alignment_residual = coherent.iter().map(|z| fixed.distance_to(*z)).fold(0.0, f64::max);
    let mut row = Table1Row {
        gate: name,
        lift,
        argument_map,
        prefactor: [lift.beta(), lift.alpha().conj()],
        fixed_points: fixed,
        fixed_point_bloch: fixed.points().into_iter().map(observables_from_z).collect(),
        eigenstates: pairs,
        eigen_coherent_points: coherent,
        alignment_residual,
        aligned: alignment_residual <= ALIGNMENT_TOLERANCE,
        published: published_row(name),
        discrepancies: Vec::new(),
    };
    row.discrepancies = discrepancies(&row);
    row
}

/// All ten rows, rotations at [`ROTATION_SAMPLE_ANGLE`].
pub fn table1_report() -> Vec<Table1Row> {
    table1_report_with(Execution::default())
}

pub fn table1_report_with(exec: Execution) -> Vec<Table1Row> {
    exec.map_slice(&GateName::table(ROTATION_SAMPLE_ANGLE), |g| table1_row(*g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holo_state::{from_qubit, inner_product, to_qubit};
    use crate::mobius::compose;
    use crate::spin_ops::spin_operator;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(n: u32) -> SpinWeight {
        SpinWeight::new(n).unwrap()
    }

    fn dm(m: nalgebra::Matrix2<C64>) -> DMatrix<C64> {
        DMatrix::from_fn(2, 2, |r, c| m[(r, c)])
    }

    #[test]
    fn identity_and_parity() {
        let minus = SU2Element::new(-ONE, ZERO).unwrap();
        for n in 0..=8 {
            let id = OperatorMatrix::identity(w(n), Basis::Monomial);
            assert_eq!(representation_matrix(&SU2Element::IDENTITY, w(n), Basis::Monomial), id);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let got = representation_matrix(&minus, w(n), Basis::Monomial);
            assert!(got.frobenius_distance(&id.scale(C64::new(sign, 0.0))).unwrap() < 1e-12);
        }
    }

    #[test]
    fn defining_representation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let g = SU2Element::random(&mut rng);
            let u = representation_matrix(&g, SpinWeight::HALF, Basis::Monomial);
            assert!((u.to_qubit_ordering() - dm(g.matrix())).norm() <= 1e-12);
        }
    }

    #[test]
    fn z_rotation_is_diagonal() {
        let theta = 0.77;
        let g = ops_element(3, theta).unwrap();
        for n in 0..=6 {
            let u = representation_matrix(&g, w(n), Basis::Orthonormal);
            let want = DMatrix::from_fn(n as usize + 1, n as usize + 1, |r, c| {
                if r == c {
                    C64::from_polar(1.0, -theta * w(n).j_of(r))
                } else {
                    ZERO
                }
            });
            assert!((u.entries() - want).norm() < 1e-13);
        }
    }

    #[test]
    fn homomorphism_and_unitarity() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let (g, h) = (SU2Element::random(&mut rng), SU2Element::random(&mut rng));
            for n in 0..=6 {
                let lhs = representation_matrix(&compose(&g, &h), w(n), Basis::Monomial);
                let rhs = representation_matrix(&g, w(n), Basis::Monomial)
                    .mul(&representation_matrix(&h, w(n), Basis::Monomial))
                    .unwrap();
                assert!(lhs.frobenius_distance(&rhs).unwrap() <= 1e-9);
                let u = representation_matrix(&g, w(n), Basis::Orthonormal);
                let defect = u
                    .adjoint()
                    .mul(&u)
                    .unwrap()
                    .frobenius_distance(&OperatorMatrix::identity(w(n), Basis::Orthonormal));
                assert!(defect.unwrap() <= 1e-10);
            }
        }
    }

    #[test]
    fn hadamard_on_basis_states() {
        let h = named_gate(GateName::H);
        let out = to_qubit(&apply_gate(&h, &from_qubit(&QubitState::ZERO_KET))).unwrap();
        assert!(out.phase_distance(&QubitState::new(ONE, ONE).unwrap()) < 1e-15);
        let out = to_qubit(&apply_gate(&h, &from_qubit(&QubitState::ONE_KET))).unwrap();
        assert!(out.phase_distance(&QubitState::new(ONE, -ONE).unwrap()) < 1e-15);
        let psi = HoloWavefunction::from_coeffs(vec![C64::new(0.2, 1.0), C64::new(-0.4, 0.0), I]).unwrap();
        assert_eq!(apply_gate(&SU2Element::IDENTITY, &psi), psi);
    }

    #[test]
    fn norm_is_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in 0..=6 {
            let psi = HoloWavefunction::random(w(n), &mut rng);
            let g = SU2Element::random(&mut rng);
            let before = inner_product(&psi, &psi).unwrap().re;
            let out = apply_gate(&g, &psi);
            let after = inner_product(&out, &out).unwrap().re;
            assert!((after - before).abs() <= 1e-10 * before.max(1.0));
        }
    }

    #[test]
    fn generators_match_spin_operators() {
        for n in 0..=6 {
            for k in 1..=3 {
                for basis in [Basis::Monomial, Basis::Orthonormal] {
                    let g = generator_of(k, w(n), basis).unwrap();
                    let s = spin_operator(k, w(n), basis).unwrap();
                    assert!(g.frobenius_distance(&s).unwrap() <= 1e-5, "k={k} n={n}");
                }
            }
        }
        let g = generator_of(3, SpinWeight::HALF, Basis::Monomial).unwrap();
        assert!((g.entries()[(0, 0)] - C64::new(-0.5, 0.0)).norm() < 1e-6);
        assert!((g.entries()[(1, 1)] - C64::new(0.5, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn phase_equivalence_examples() {
        let m = spin_operator(1, w(2), Basis::Orthonormal)
            .unwrap()
            .add(&OperatorMatrix::identity(w(2), Basis::Orthonormal))
            .unwrap();
        let r = phase_equivalent(&m, &m.scale(I), 1e-12).unwrap();
        assert!(r.equivalent && (r.phase + I).norm() < 1e-15);
        let shifted = m.add(&OperatorMatrix::identity(w(2), Basis::Orthonormal).scale(C64::new(100.0, 0.0))).unwrap();
        assert!(!phase_equivalent(&m, &shifted, 1e-6).unwrap().equivalent);
        let rep_h =
            representation_matrix(&named_gate(GateName::H), SpinWeight::HALF, Basis::Monomial).to_qubit_ordering();
        let table_h = DMatrix::from_row_slice(2, 2, &[ONE, ONE, ONE, -ONE]).map(|x| x * FRAC_1_SQRT_2);
        let (c, res) = phase_align(&rep_h, &table_h);
        assert!(res < 1e-15 && (c - I).norm() < 1e-15);
        assert_eq!(
            phase_equivalent(&m, &OperatorMatrix::identity(w(3), Basis::Orthonormal), 1.0),
            Err(Error::Mismatch)
        );
    }

    #[test]
    fn table_rows() {
        let rows = table1_report();
        assert_eq!(rows.len(), 10);
        let h = &rows[4];
        assert_eq!(h.gate, GateName::H);
        assert!(h.argument_map.projective_distance(&MobiusMap { a: ONE, b: ONE, c: ONE, d: -ONE }) < 1e-15);
        let want = FixedPointSet::Pair(Finite(C64::new(1.0 + SQRT_2, 0.0)), Finite(C64::new(1.0 - SQRT_2, 0.0)));
        assert!(h.fixed_points.set_distance(&want) < 1e-15);
        assert!(h.aligned && h.discrepancies.is_empty());

        let x = &rows[1];
        assert!(x.argument_map.projective_distance(&MobiusMap { a: ZERO, b: ONE, c: ONE, d: ZERO }) < 1e-15);
        assert!(x.fixed_points.set_distance(&FixedPointSet::Pair(Finite(ONE), Finite(-ONE))) < 1e-15);
        assert!(x.aligned && x.discrepancies.is_empty());

        assert_eq!(rows[0].fixed_points, FixedPointSet::IdentityMap);
        assert!(rows[0].discrepancies.is_empty());

        for row in &rows[1..] {
            assert!(row.aligned, "{}", row.gate);
        }
        let fields = |i: usize| rows[i].discrepancies.iter().map(|d| d.field).collect::<Vec<_>>();
        assert_eq!(fields(2), ["eigenstates"]);
        assert_eq!(fields(3), ["wavefunction"]);
        assert_eq!(fields(5), ["wavefunction", "fixed_points"]);
        assert_eq!(fields(6), ["wavefunction", "fixed_points"]);
    }

    #[test]
    fn sequential_and_parallel_tables_agree() {
        assert_eq!(table1_report_with(Execution::Sequential), table1_report_with(Execution::Parallel));
    }
}
