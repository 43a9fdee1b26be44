use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use holoqubit::gate_rep::{apply_gate, representation_matrix, table1_report, ROTATION_SAMPLE_ANGLE};
use holoqubit::holo_state::{coherent_point, from_qubit, to_qubit, QubitState, SpinWeight};
use holoqubit::invariants::{run_all, CheckConfig};
use holoqubit::mobius::{fixed_points, named_gate, rep_mobius_arg, EulerAngles, FixedPointSet, GateName, SU2Element};
use holoqubit::qubit_oracle::{apply, bloch_of, eigenstates, eigenstates_of, standard_gate, Gate2x2};
use holoqubit::riemann_sphere::{observables_from_z, project, BlochPoint, ExtendedComplex, Infinity};
use holoqubit::spin_ops::Basis;
use holoqubit::wigner::{cross_validate, dmatrix};
use holoqubit::{Error, C64};

use crate::output::{gate_label, matrix_rows, to_value, CsvPayload, Envelope, PointRow, VERSION};
use crate::{Cli, Command, DmatrixArgs, ElementArgs, Failure, Status};

/// Largest `n` the oracle cross-check accepts.
const DMATRIX_CHECK_MAX_N: u32 = 8;

pub struct Outcome {
    pub envelope: Envelope,
    pub csv: Option<CsvPayload>,
    pub status: Status,
    /// Extra lines for stderr.
    pub notes: Vec<String>,
}

struct Builder<'a> {
    cli: &'a Cli,
    command: &'static str,
    inputs: Value,
}

impl Builder<'_> {
    fn finish(
        self,
        results: Value,
        residuals: Option<BTreeMap<String, f64>>,
        csv: Option<CsvPayload>,
        status: Status,
    ) -> Outcome {
        let mut inputs = json!({
            "tol": self.cli.tol,
            "format": self.cli.format,
            "seed": self.cli.seed,
            "degrees": self.cli.degrees,
        });
        if let (Value::Object(all), Value::Object(own)) = (&mut inputs, self.inputs) {
            all.extend(own);
        }
        Outcome {
            envelope: Envelope { command: self.command, inputs, results, residuals, version: VERSION },
            csv,
            status,
            notes: Vec::new(),
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let start = |command: &'static str, inputs: Value| Builder { cli, command, inputs };
    match &cli.command {
        Command::Project(a) => project_cmd(cli, start("project", to_value(a)), a),
        Command::Gate(a) => gate(cli, start("gate", to_value(a)), a),
        Command::FixedPoints(a) => fixed_point_cmd(cli, start("fixed-points", to_value(a)), a),
        Command::Rep(a) => rep(cli, start("rep", to_value(a)), a),
        Command::Dmatrix(a) => dmatrix_cmd(cli, start("dmatrix", to_value(a)), a),
        Command::Check(a) => check(cli, start("check", to_value(a)), a.n_max, a.samples),
        Command::Table1 => Ok(table1(start("table1", json!({})))),
        Command::Fig1Data(a) => Ok(fig1(cli, start("fig1-data", to_value(a)), a.samples)),
    }
}

fn radians(cli: &Cli, x: f64) -> f64 {
    if cli.degrees {
        x.to_radians()
    } else {
        x
    }
}

fn parse_gate(cli: &Cli, s: &str, angle: Option<f64>) -> Result<GateName, Failure> {
    let g = GateName::parse_with_angle(s, angle)?;
    Ok(match g {
        GateName::Rx(a) => GateName::Rx(radians(cli, a)),
        GateName::Ry(a) => GateName::Ry(radians(cli, a)),
        GateName::Rz(a) => GateName::Rz(radians(cli, a)),
        other => other,
    })
}

fn element(cli: &Cli, a: &ElementArgs) -> Result<(Option<GateName>, SU2Element), Failure> {
    match (&a.gate, a.su2) {
        (Some(name), None) => {
            let g = parse_gate(cli, name, a.angle)?;
            Ok((Some(g), named_gate(g)))
        }
        (None, Some([ar, ai, br, bi])) => Ok((None, SU2Element::new(C64::new(ar, ai), C64::new(br, bi))?)),
        _ => Err(Failure::Usage("give exactly one of --gate or --su2".into())),
    }
}

fn weight(n: u32) -> Result<SpinWeight, Failure> {
    Ok(SpinWeight::new(n)?)
}

fn project_cmd(cli: &Cli, b: Builder, a: &crate::ProjectArgs) -> Result<Outcome, Failure> {
    let forms = usize::from(a.theta.is_some()) + usize::from(a.z.is_some()) + usize::from(a.inf);
    if forms != 1 {
        return Err(Failure::Usage("give exactly one of --theta/--phi, --z or --inf".into()));
    }
    let z = match (a.theta, a.phi, a.z) {
        (Some(t), Some(p), _) => project(BlochPoint::new(radians(cli, t), radians(cli, p))?),
        (_, _, Some([re, im])) => ExtendedComplex::new(re, im),
        _ => Infinity,
    };
    let point = PointRow::new("input", z);
    let results = to_value(&point);
    Ok(b.finish(results, None, Some(CsvPayload::Points(vec![point])), Status::Ok))
}

fn gate(cli: &Cli, b: Builder, a: &crate::GateArgs) -> Result<Outcome, Failure> {
    let angle = a.angle;
    let names = a.gate.iter().map(|s| parse_gate(cli, s, angle)).collect::<Result<Vec<_>, _>>()?;
    let [a0r, a0i, a1r, a1i] = a.state;
    let start = QubitState::new(C64::new(a0r, a0i), C64::new(a1r, a1i))?;
    let mut psi = from_qubit(&start);
    let mut oracle = start;
    let mut steps = Vec::with_capacity(names.len());
    let mut worst: f64 = 0.0;
    for name in &names {
        psi = apply_gate(&named_gate(*name), &psi);
        let applied = apply(&standard_gate(*name), &oracle);
        oracle = applied.state;
        let q = to_qubit(&psi)?;
        let distance = q.phase_distance(&oracle);
        worst = worst.max(distance);
        steps.push(json!({
            "gate": name,
            "wavefunction": psi.coeffs(),
            "qubit": q.as_array(),
            "bloch": bloch_of(&q)?.as_array(),
            "oracle": oracle.as_array(),
            "oracle_norm_drift": applied.norm_drift,
            "phase_distance": distance,
            "verdict": if distance <= cli.tol { "OK" } else { "MISMATCH" },
        }));
    }
    let final_state = to_qubit(&psi)?;
    let results = json!({
        "initial": start.as_array(),
        "steps": steps,
        "final": {
            "qubit": final_state.as_array(),
            "oracle": oracle.as_array(),
            "bloch": bloch_of(&final_state)?.as_array(),
        },
        "verdict": if worst <= cli.tol { "OK" } else { "MISMATCH" },
    });
    let status = if worst <= cli.tol { Status::Ok } else { Status::OracleMismatch };
    let residuals = BTreeMap::from([("oracle_phase_distance".to_string(), worst)]);
    let mut out = b.finish(results, Some(residuals), None, status);
    if status != Status::Ok {
        out.notes.push(format!("oracle mismatch: phase distance {worst:e} exceeds {:e}", cli.tol));
    }
    Ok(out)
}

fn fixed_point_cmd(cli: &Cli, b: Builder, a: &ElementArgs) -> Result<Outcome, Failure> {
    let (name, g) = element(cli, a)?;
    let map = rep_mobius_arg(&g);
    let set = fixed_points(&map);
    let points: Vec<PointRow> =
        set.points().into_iter().enumerate().map(|(i, z)| PointRow::new(format!("fixed_{i}"), z)).collect();
    let pairs = match name {
        Some(n) => eigenstates(n),
        None => eigenstates_of(&Gate2x2::new(g.matrix())),
    };
    let (eigen, alignment) = match pairs {
        Ok(pairs) => {
            let mut worst: f64 = 0.0;
            let mut worst_conj: f64 = 0.0;
            let mut rows = Vec::new();
            for pair in pairs {
                let z = coherent_point(&pair.state)?;
                let distance = set.distance_to(z);
                let conj_distance = set.distance_to(z.conj());
                worst = worst.max(distance);
                worst_conj = worst_conj.max(conj_distance);
                rows.push(json!({
                    "eigenvalue": pair.eigenvalue,
                    "state": pair.state.as_array(),
                    "coherent_point": z,
                    "bloch": observables_from_z(z).as_array(),
                    "distance_to_fixed_set": distance,
                    "conjugate_distance_to_fixed_set": conj_distance,
                }));
            }
            (Value::Array(rows), Some((worst, worst_conj)))
        }
        Err(Error::DegenerateGate(_)) => (Value::Array(Vec::new()), None),
        Err(e) => return Err(e.into()),
    };
    let description = match set {
        FixedPointSet::IdentityMap => "all points fixed",
        FixedPointSet::Pair(..) => "two antipodal points",
    };
    let results = json!({
        "element": {"gate": gate_label(name), "alpha": g.alpha(), "beta": g.beta()},
        "argument_map": map,
        "fixed_points": set,
        "description": description,
        "points": points,
        "eigenstates": eigen,
        "aligned": alignment.map(|(r, _)| r <= cli.tol),
    });
    let residuals = alignment.map(|(r, rc)| {
        BTreeMap::from([("eigenstate_alignment".to_string(), r), ("conjugate_eigenstate_alignment".to_string(), rc)])
    });
    let mut out = b.finish(results, residuals, Some(CsvPayload::Points(points)), Status::Ok);
    if let Some((r, rc)) = alignment {
        if r > cli.tol && rc <= cli.tol {
            out.notes.push("eigenstate coherent points match the fixed points only after conjugation".to_string());
        }
    }
    Ok(out)
}

fn rep(cli: &Cli, b: Builder, a: &crate::RepArgs) -> Result<Outcome, Failure> {
    let (name, g) = element(cli, &a.element)?;
    let w = weight(a.n)?;
    let u = representation_matrix(&g, w, a.basis);
    let rows = matrix_rows(u.entries());
    let orth = u.in_basis(Basis::Orthonormal).into_entries();
    let defect = (orth.adjoint() * &orth - nalgebra::DMatrix::identity(w.dim(), w.dim())).norm();
    let results = json!({
        "element": {"gate": gate_label(name), "alpha": g.alpha(), "beta": g.beta()},
        "n": a.n,
        "basis": a.basis,
        "index_order": "monomial z^m, m = 0..n",
        "matrix": rows,
        "qubit_ordering": (a.n == 1).then(|| matrix_rows(&u.to_qubit_ordering())),
    });
    let residuals = BTreeMap::from([("orthonormal_unitarity".to_string(), defect)]);
    Ok(b.finish(results, Some(residuals), Some(CsvPayload::Matrix(rows)), Status::Ok))
}

fn dmatrix_cmd(cli: &Cli, b: Builder, a: &DmatrixArgs) -> Result<Outcome, Failure> {
    let w = weight(a.n)?;
    if a.check && a.n > DMATRIX_CHECK_MAX_N {
        return Err(Failure::Usage(format!("--check supports n ≤ {DMATRIX_CHECK_MAX_N}")));
    }
    let [t3, t2, t3p] = a.euler.map(|x| radians(cli, x));
    let e = EulerAngles::new(t3, t2, t3p);
    let m = dmatrix(w, e, a.corrected)?;
    let rows = matrix_rows(m.entries());
    let report = a.check.then(|| cross_validate(w, e));
    let results = json!({
        "n": a.n,
        "angles": e,
        "corrected": a.corrected,
        "basis": Basis::Orthonormal,
        "matrix": rows,
        "report": report,
    });
    let residuals = report.as_ref().map(|r| {
        BTreeMap::from([
            ("oracle".to_string(), r.residual),
            ("hypothesis_deviation".to_string(), r.hypothesis_deviation),
            ("corrected_deviation".to_string(), r.corrected_deviation),
        ])
    });
    let failed = report.as_ref().is_some_and(|r| r.residual.is_nan() || r.residual > cli.tol);
    let status = if failed { Status::CheckFailed } else { Status::Ok };
    let mut out = b.finish(results, residuals, Some(CsvPayload::Matrix(rows)), status);
    if let Some(r) = report.filter(|_| failed) {
        out.notes.push(format!("dmatrix check failed: oracle residual {:e} exceeds {:e}", r.residual, cli.tol));
    }
    Ok(out)
}

fn check(cli: &Cli, b: Builder, n_max: u32, samples: usize) -> Result<Outcome, Failure> {
    weight(n_max)?;
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Failure::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let cfg = CheckConfig { n_max, samples, seed: cli.seed, tol: cli.tol, ..CheckConfig::default() };
    let report = run_all(&cfg);
    let residuals = report.invariants.iter().map(|r| (r.id(), r.max_residual)).collect();
    let status = if report.passed { Status::Ok } else { Status::CheckFailed };
    let notes = report.failing.iter().map(|name| format!("FAILED {name}")).collect();
    let mut out = b.finish(to_value(&report), Some(residuals), None, status);
    out.notes = notes;
    Ok(out)
}

fn table1(b: Builder) -> Outcome {
    let rows = table1_report();
    let flags: Vec<Value> = rows
        .iter()
        .flat_map(|r| r.discrepancies.iter().map(move |d| json!({"gate": r.gate, "field": d.field})))
        .collect();
    let results = json!({
        "rotation_sample_angle": ROTATION_SAMPLE_ANGLE,
        "rows": rows,
        "discrepancy_flags": flags,
        "all_aligned": rows.iter().all(|r| r.aligned),
    });
    b.finish(results, None, None, Status::Ok)
}

fn fig1(cli: &Cli, b: Builder, samples: usize) -> Outcome {
    let mut points = Vec::new();
    for name in GateName::table(ROTATION_SAMPLE_ANGLE) {
        for (i, z) in fixed_points(&rep_mobius_arg(&named_gate(name))).points().into_iter().enumerate() {
            points.push(PointRow::new(format!("{}:fixed_{i}", name), z));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    for i in 0..samples {
        // Uniform on the sphere: cos θ uniform in [−1, 1].
        let theta = rng.random_range(-1.0f64..=1.0).acos();
        let phi = rng.random_range(0.0..2.0 * PI);
        let z = project(BlochPoint::new(theta, phi).expect("θ in [0, π]"));
        points.push(PointRow::new(format!("sample_{i}"), z));
    }
    let fixed_count = points.len() - samples;
    let results = json!({"fixed_point_count": fixed_count, "sample_count": samples, "points": points});
    b.finish(results, None, Some(CsvPayload::Points(points)), Status::Ok)
}
