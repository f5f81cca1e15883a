//! Report emission: canonical JSON (fixed key order from struct
//! declarations, every float printed with 17 significant digits) so equal
//! inputs produce byte-identical bytes, plus the CSV table formats.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::geodesic::GeodesicTrace;
use crate::helix_space::HelixDirectionSpace;
use crate::hypersurface::Hypersurface;
use crate::scalar::Scalar;
use crate::theorems::TheoremReport;

/// 17 significant digits round-trip any `f64` exactly.
fn write_float<W: io::Write>(writer: &mut W, value: f64) -> io::Result<()> {
    if value.is_finite() {
        write!(writer, "{value:.16e}")
    } else {
        // reports never carry non-finite values; emit null rather than
        // invalid JSON if one slips through
        write!(writer, "null")
    }
}

struct CanonicalFormatter;

impl Formatter for CanonicalFormatter {
    fn write_f64<W: io::Write + ?Sized>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write_float(&mut NoSized(writer), value)
    }

    fn write_f32<W: io::Write + ?Sized>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write_float(&mut NoSized(writer), value as f64)
    }

    fn write_i64<W: io::Write + ?Sized>(&mut self, writer: &mut W, value: i64) -> io::Result<()> {
        CompactFormatter.write_i64(writer, value)
    }

    fn write_u64<W: io::Write + ?Sized>(&mut self, writer: &mut W, value: u64) -> io::Result<()> {
        CompactFormatter.write_u64(writer, value)
    }
}

struct NoSized<'a, W: io::Write + ?Sized>(&'a mut W);

impl<W: io::Write + ?Sized> io::Write for NoSized<'_, W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.0.write(buf)
    }
    fn flush(&mut self) -> io::Result<()> {
        self.0.flush()
    }
}

/// Serialize any report value to canonical JSON text (no trailing newline).
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, CanonicalFormatter);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Precondition(format!("report serialization failed: {e}")))?;
    Ok(String::from_utf8(out).expect("json is utf-8"))
}

/// Canonical float formatting shared by the CSV emitters.
pub fn fmt_float(value: f64) -> String {
    format!("{value:.16e}")
}

/// Detected direction space in report form.
#[derive(Debug, Clone, Serialize)]
pub struct HelixSpaceReport {
    pub r: usize,
    pub basis: Vec<Vec<f64>>,
    pub constants: Vec<f64>,
    pub angles: Vec<f64>,
    pub residuals: Vec<f64>,
    pub sv_spectrum: Vec<f64>,
    pub tolerance: f64,
    pub seed: u64,
}

impl HelixSpaceReport {
    pub fn from_space<F: Scalar>(space: &HelixDirectionSpace<F>) -> Self {
        HelixSpaceReport {
            r: space.rank(),
            basis: space
                .basis
                .iter()
                .map(|d| d.iter().map(|x| x.as_f64()).collect())
                .collect(),
            constants: space.constants.iter().map(|x| x.as_f64()).collect(),
            angles: space.angles.iter().map(|x| x.as_f64()).collect(),
            residuals: space.residuals.iter().map(|x| x.as_f64()).collect(),
            sv_spectrum: space.sv_spectrum.iter().map(|x| x.as_f64()).collect(),
            tolerance: space.tolerance.as_f64(),
            seed: space.seed,
        }
    }
}

/// Output of `analyze-surface`.
#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub schema: u64,
    pub scene: Option<String>,
    pub is_helix: bool,
    pub r: usize,
    pub space: HelixSpaceReport,
}

/// Output of `verify` (top-level JSON array plus a summary entry).
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: u64,
    pub scene: Option<String>,
    pub space: HelixSpaceReport,
    pub reports: Vec<TheoremReport>,
    pub passed: usize,
    pub failed: usize,
    pub vacuous: usize,
    pub violated: usize,
    pub errors: usize,
}

impl VerifyReport {
    pub fn new<F: Scalar>(
        scene: Option<String>,
        space: &HelixDirectionSpace<F>,
        reports: Vec<TheoremReport>,
    ) -> Self {
        let passed = reports.iter().filter(|r| r.passed()).count();
        let failed = reports.iter().filter(|r| r.failed()).count();
        let vacuous = reports.iter().filter(|r| r.is_vacuous()).count();
        let violated = reports
            .iter()
            .filter(|r| r.hypothesis == "violated")
            .count();
        let errors = reports.iter().filter(|r| r.error.is_some()).count();
        VerifyReport {
            schema: crate::scene::SCHEMA_VERSION,
            scene,
            space: HelixSpaceReport::from_space(space),
            reports,
            passed,
            failed,
            vacuous,
            violated,
            errors,
        }
    }
}

/// Per-sample frame data of `frenet` in report form.
#[derive(Debug, Clone, Serialize)]
pub struct FrenetSampleReport {
    pub t: f64,
    pub position: Vec<f64>,
    pub speed: f64,
    pub frame: Vec<Vec<f64>>,
    pub curvatures: Vec<Option<f64>>,
    pub valid_depth: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrenetReport {
    pub schema: u64,
    pub scene: Option<String>,
    pub curve: String,
    pub samples: Vec<FrenetSampleReport>,
}

/// Integrator diagnostics in report form.
#[derive(Debug, Clone, Serialize)]
pub struct GeodesicReport {
    pub schema: u64,
    pub scene: Option<String>,
    pub name: String,
    pub length: f64,
    pub step: f64,
    pub samples: usize,
    pub domain_exit: bool,
    pub max_speed_drift: f64,
    pub max_tangential_residual: f64,
}

impl GeodesicReport {
    pub fn from_trace<F: Scalar>(
        scene: Option<String>,
        name: &str,
        trace: &GeodesicTrace<F>,
    ) -> Self {
        GeodesicReport {
            schema: crate::scene::SCHEMA_VERSION,
            scene,
            name: name.to_string(),
            length: trace.length().as_f64(),
            step: trace.step().as_f64(),
            samples: trace.samples().len(),
            domain_exit: trace.domain_exit,
            max_speed_drift: trace.diagnostics.max_speed_drift.as_f64(),
            max_tangential_residual: trace.diagnostics.max_tangential_residual.as_f64(),
        }
    }
}

// ---------------------------------------------------------------------------
// CSV

/// `t,x1..xn,k1..k{n-1}` rows for curve samples. Missing curvatures (above
/// the frame's valid depth) are left empty.
pub fn curve_samples_csv<F: Scalar>(curve: &Curve<F>, params: &[F]) -> Result<String> {
    let n = curve.dim();
    let mut out = String::from("t");
    for i in 1..=n {
        out.push_str(&format!(",x{i}"));
    }
    for i in 1..n {
        out.push_str(&format!(",k{i}"));
    }
    out.push('\n');
    for &t in params {
        let fr = curve.frenet(t)?;
        let p = curve.position(t)?;
        out.push_str(&fmt_float(t.as_f64()));
        for i in 0..n {
            out.push(',');
            out.push_str(&fmt_float(p[i].as_f64()));
        }
        for k in &fr.curvatures {
            out.push(',');
            if let Some(k) = k {
                out.push_str(&fmt_float(k.as_f64()));
            }
        }
        out.push('\n');
    }
    Ok(out)
}

/// `u1..u{n-1},x1..xn,N1..Nn` rows for a sampled normal field.
pub fn normals_csv<F: Scalar>(surface: &Hypersurface<F>, points: &[Vec<F>]) -> Result<String> {
    let n = surface.ambient_dim();
    let p = surface.param_dim();
    let mut out = String::new();
    for i in 1..=p {
        if i > 1 {
            out.push(',');
        }
        out.push_str(&format!("u{i}"));
    }
    for i in 1..=n {
        out.push_str(&format!(",x{i}"));
    }
    for i in 1..=n {
        out.push_str(&format!(",N{i}"));
    }
    out.push('\n');
    for u in points {
        let pos = surface.position(u)?;
        let normal = surface.unit_normal(u)?;
        for (i, &x) in u.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&fmt_float(x.as_f64()));
        }
        for i in 0..n {
            out.push(',');
            out.push_str(&fmt_float(pos[i].as_f64()));
        }
        for i in 0..n {
            out.push(',');
            out.push_str(&fmt_float(normal[i].as_f64()));
        }
        out.push('\n');
    }
    Ok(out)
}

/// `s,u1..u{n-1},x1..xn,v1..vn` rows for a geodesic trace.
pub fn trace_csv<F: Scalar>(trace: &GeodesicTrace<F>) -> String {
    let n = trace.surface().ambient_dim();
    let p = trace.surface().param_dim();
    let mut out = String::from("s");
    for i in 1..=p {
        out.push_str(&format!(",u{i}"));
    }
    for i in 1..=n {
        out.push_str(&format!(",x{i}"));
    }
    for i in 1..=n {
        out.push_str(&format!(",v{i}"));
    }
    out.push('\n');
    for sample in trace.samples() {
        out.push_str(&fmt_float(sample.s.as_f64()));
        for &x in &sample.u {
            out.push(',');
            out.push_str(&fmt_float(x.as_f64()));
        }
        for i in 0..n {
            out.push(',');
            out.push_str(&fmt_float(sample.position[i].as_f64()));
        }
        for i in 0..n {
            out.push(',');
            out.push_str(&fmt_float(sample.velocity[i].as_f64()));
        }
        out.push('\n');
    }
    out
}
