//! Output envelope, canonical JSON and CSV payloads.

use std::collections::BTreeMap;
use std::io::{self, Write};

use holoqubit::mobius::GateName;
use holoqubit::riemann_sphere::{observables_from_z, unproject, ExtendedComplex};
use holoqubit::C64;
use nalgebra::DMatrix;
use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Envelope {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<BTreeMap<String, f64>>,
    pub version: &'static str,
}

/// Floats as `{:.16e}` (17 significant digits), which parse back exactly.
struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Converts to a `Value` first so every object's keys come out sorted and
/// non-finite floats become `null`.
pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

pub fn write_json<W: Write>(out: W, envelope: &Envelope) -> io::Result<()> {
    let mut out = io::BufWriter::new(out);
    let value = to_value(envelope);
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedDigits);
    value.serialize(&mut ser).map_err(io::Error::other)?;
    writeln!(out)?;
    out.flush()
}

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Payloads that have a tabular form.
pub enum CsvPayload {
    /// Rows of `row, col, re, im`.
    Matrix(Vec<Vec<C64>>),
    Points(Vec<PointRow>),
}

/// A point of the sphere in both charts.
#[derive(Clone, Debug, Serialize)]
pub struct PointRow {
    pub label: String,
    pub z: ExtendedComplex,
    pub theta: f64,
    pub phi: f64,
    pub bloch: [f64; 3],
}

impl PointRow {
    pub fn new(label: impl Into<String>, z: ExtendedComplex) -> Self {
        let p = unproject(z);
        Self { label: label.into(), z, theta: p.theta(), phi: p.phi(), bloch: observables_from_z(z).as_array() }
    }
}

pub fn write_csv<W: Write>(out: W, payload: &CsvPayload) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    match payload {
        CsvPayload::Matrix(rows) => {
            w.write_record(["row", "col", "re", "im"])?;
            for (r, row) in rows.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    w.write_record([r.to_string(), c.to_string(), fmt_float(x.re), fmt_float(x.im)])?;
                }
            }
        }
        CsvPayload::Points(points) => {
            w.write_record(["label", "z_re", "z_im", "theta", "phi", "x1", "x2", "x3"])?;
            for p in points {
                let (re, im) = match p.z.finite() {
                    Some(z) => (fmt_float(z.re), fmt_float(z.im)),
                    None => ("inf".to_string(), "inf".to_string()),
                };
                let [x1, x2, x3] = p.bloch.map(fmt_float);
                w.write_record([p.label.clone(), re, im, fmt_float(p.theta), fmt_float(p.phi), x1, x2, x3])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn matrix_rows(m: &DMatrix<C64>) -> Vec<Vec<C64>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect()).collect()
}

pub fn gate_label(g: Option<GateName>) -> String {
    g.map_or_else(|| "su2".to_string(), |g| g.to_string())
}
