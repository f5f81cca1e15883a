//! Numerical verification of the constant-angle statements: each check
//! samples the relevant geometric quantities, reports a three-valued
//! hypothesis status (satisfied / vacuous / violated) and evaluates its
//! conclusion only when the hypothesis is satisfied, so a vacuous setup can
//! never masquerade as a pass.

use std::collections::BTreeMap;

use nalgebra::DVector;
use serde::Serialize;

use crate::curve::{Curve, EPS_REGULAR};
use crate::error::{Error, Result};
use crate::geodesic::{trace_to_surface_curve, GeodesicTrace};
use crate::helix_space::{helix_directions, HelixDirectionSpace};
use crate::hypersurface::{Hypersurface, SurfaceCurve};
use crate::sample::{box_points, interval_params, SamplePlan};
use crate::scalar::Scalar;

/// Angles this close to 0, a right angle, or a straight angle disqualify a
/// direction from the tangent-normal decomposition test.
pub const ANGULAR_MARGIN: f64 = 1e-3;

/// A normal image counts as "not a spherical geodesic" when its tangential
/// second derivative exceeds this, independent of the check tolerance (which
/// keeps pass/fail monotone in the tolerance).
pub const NONGEODESIC_THRESHOLD: f64 = 1e-3;

/// Sampling and tolerances shared by the checks.
#[derive(Debug, Clone, Copy)]
pub struct CheckConfig<F> {
    /// Sampling along curves and over the patch.
    pub plan: SamplePlan,
    /// Conclusion tolerance (integration error accumulates here).
    pub tol: F,
    /// Hypothesis tolerance (algebraic identities).
    pub tol_hyp: F,
}

impl<F: Scalar> Default for CheckConfig<F> {
    fn default() -> Self {
        CheckConfig {
            plan: SamplePlan::default(),
            tol: F::lit(1e-6),
            tol_hyp: F::lit(1e-8),
        }
    }
}

/// One check outcome. `conclusion` is populated only for a satisfied
/// hypothesis; every float is `f64` for stable report emission.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub subject: String,
    /// "satisfied" | "vacuous" | "violated".
    pub hypothesis: String,
    pub hypothesis_detail: Option<String>,
    pub hypothesis_residual: Option<f64>,
    /// "pass" | "fail" | null (when the hypothesis did not hold).
    pub conclusion: Option<String>,
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub samples: usize,
    pub flags: Vec<String>,
    pub details: BTreeMap<String, f64>,
    pub error: Option<String>,
}

impl TheoremReport {
    fn new(id: &str, subject: &str, tolerance: f64, samples: usize) -> Self {
        TheoremReport {
            id: id.to_string(),
            subject: subject.to_string(),
            hypothesis: String::new(),
            hypothesis_detail: None,
            hypothesis_residual: None,
            conclusion: None,
            max_residual: None,
            tolerance,
            samples,
            flags: Vec::new(),
            details: BTreeMap::new(),
            error: None,
        }
    }

    fn vacuous(mut self, reason: &str) -> Self {
        self.hypothesis = "vacuous".to_string();
        self.hypothesis_detail = Some(reason.to_string());
        self
    }

    fn violated(mut self, reason: &str, residual: Option<f64>) -> Self {
        self.hypothesis = "violated".to_string();
        self.hypothesis_detail = Some(reason.to_string());
        self.hypothesis_residual = residual;
        self
    }

    fn concluded(mut self, pass: bool, residual: f64) -> Self {
        self.hypothesis = "satisfied".to_string();
        self.conclusion = Some(if pass { "pass" } else { "fail" }.to_string());
        self.max_residual = Some(residual);
        self
    }

    pub fn passed(&self) -> bool {
        self.conclusion.as_deref() == Some("pass")
    }

    pub fn failed(&self) -> bool {
        self.conclusion.as_deref() == Some("fail")
    }

    pub fn is_vacuous(&self) -> bool {
        self.hypothesis == "vacuous"
    }

    fn errored(id: &str, subject: &str, tolerance: f64, err: &Error) -> Self {
        let mut r = TheoremReport::new(id, subject, tolerance, 0);
        r.hypothesis = "error".to_string();
        r.error = Some(format!("{} ({})", err, err.kind()));
        r
    }
}

fn curve_params<F: Scalar>(curve: &Curve<F>, plan: &SamplePlan) -> Vec<F> {
    let (a, b) = curve.domain();
    interval_params(a, b, plan)
}

/// Max deviation of inner products from their mean, per direction.
fn constancy_residual<F: Scalar>(values: &[Vec<F>]) -> Vec<(F, F)> {
    // values[sample][direction]
    let dirs = values[0].len();
    let m = F::from_usize(values.len()).unwrap();
    (0..dirs)
        .map(|j| {
            let mut mean = F::zero();
            for row in values {
                mean += row[j];
            }
            mean /= m;
            let mut worst = F::zero();
            for row in values {
                worst = worst.max((row[j] - mean).abs());
            }
            (mean, worst)
        })
        .collect()
}

fn require_geodesic<F: Scalar>(sc: &SurfaceCurve<F>, config: &CheckConfig<F>) -> Result<F> {
    let (ok, residual) = sc.is_geodesic(&config.plan, config.tol)?;
    if !ok {
        return Err(Error::Precondition(format!(
            "input curve is not a geodesic (tangential residual {:.3e})",
            residual.as_f64()
        )));
    }
    Ok(residual)
}

/// Geodesics on a constant-angle patch keep a constant inner product
/// between the second frame vector and every detected direction; the proof
/// identity that the patch normal is `±V_2` along the curve is verified at
/// the same time.
pub fn check_thm_2_2<F: Scalar>(
    trace: &GeodesicTrace<F>,
    space: &HelixDirectionSpace<F>,
    config: &CheckConfig<F>,
    subject: &str,
) -> Result<TheoremReport> {
    let report = TheoremReport::new("thm_2_2", subject, config.tol.as_f64(), config.plan.total());
    if space.rank() == 0 {
        return Ok(report.vacuous("no constant-angle directions (rank 0)"));
    }
    let sc = trace_to_surface_curve(trace)?;
    let geo_residual = require_geodesic(&sc, config)?;
    let ambient = sc.ambient_curve();
    let gauss = sc.gauss_curve();
    let params = curve_params(&ambient, &config.plan);

    let mut inner = Vec::with_capacity(params.len());
    let mut identity_residual = F::zero();
    for &t in &params {
        let fr = ambient.frenet(t)?;
        if fr.valid_depth < 2 {
            return Ok(report.vacuous("straight geodesic: second frame vector undefined"));
        }
        let v2 = &fr.frame[1];
        let xi = gauss.position(t)?;
        let plus = (&xi - v2).norm();
        let minus = (&xi + v2).norm();
        identity_residual = identity_residual.max(plus.min(minus));
        inner.push(space.basis.iter().map(|d| v2.dot(d)).collect::<Vec<F>>());
    }

    let stats = constancy_residual(&inner);
    let mut worst = identity_residual;
    let mut report = report;
    for (j, &(mean, res)) in stats.iter().enumerate() {
        worst = worst.max(res);
        if mean.abs() <= config.tol {
            report.flags.push(format!("orthogonal(d{})", j + 1));
        }
        report
            .details
            .insert(format!("constant_d{}", j + 1), mean.as_f64());
    }
    report.details.insert(
        "normal_frame_identity".to_string(),
        identity_residual.as_f64(),
    );
    report.hypothesis_residual = Some(geo_residual.as_f64());
    Ok(report.concluded(worst <= config.tol, worst.as_f64()))
}

/// The unit tangent image of a geodesic keeps a constant angle with every
/// detected direction (it is a spherical helix), and lies on the unit
/// sphere.
pub fn check_thm_3_1<F: Scalar>(
    trace: &GeodesicTrace<F>,
    space: &HelixDirectionSpace<F>,
    config: &CheckConfig<F>,
    subject: &str,
) -> Result<TheoremReport> {
    let report = TheoremReport::new("thm_3_1", subject, config.tol.as_f64(), config.plan.total());
    if space.rank() == 0 {
        return Ok(report.vacuous("no constant-angle directions (rank 0)"));
    }
    let sc = trace_to_surface_curve(trace)?;
    let geo_residual = require_geodesic(&sc, config)?;
    let ambient = sc.ambient_curve();
    let beta = ambient.tangent_indicatrix();
    let params = curve_params(&ambient, &config.plan);

    let mut sphere_dev = F::zero();
    let mut inner = Vec::with_capacity(params.len());
    for &t in &params {
        let p = beta.position(t)?;
        sphere_dev = sphere_dev.max((p.norm() - F::one()).abs());
        let d = match beta.derivatives(t, 1) {
            Ok(d) => d,
            Err(Error::NonRegular { .. }) => {
                return Ok(report.vacuous("tangent image degenerate (straight geodesic)"))
            }
            Err(e) => return Err(e),
        };
        let speed = d[1].norm();
        if speed < F::lit(EPS_REGULAR) {
            return Ok(report.vacuous("tangent image degenerate (straight geodesic)"));
        }
        let tangent = &d[1] / speed;
        inner.push(
            space
                .basis
                .iter()
                .map(|dj| tangent.dot(dj))
                .collect::<Vec<F>>(),
        );
    }

    let stats = constancy_residual(&inner);
    let mut worst = sphere_dev;
    let mut report = report;
    for (j, &(mean, res)) in stats.iter().enumerate() {
        worst = worst.max(res);
        if mean.abs() <= config.tol {
            report.flags.push(format!("orthogonal(d{})", j + 1));
        }
        report
            .details
            .insert(format!("constant_d{}", j + 1), mean.as_f64());
    }
    report
        .details
        .insert("sphere_deviation".to_string(), sphere_dev.as_f64());
    report.hypothesis_residual = Some(geo_residual.as_f64());
    Ok(report.concluded(worst <= config.tol, worst.as_f64()))
}

/// The normal image of the whole patch keeps each detected constant:
/// re-verified here on fresh samples.
pub fn check_thm_3_2<F: Scalar>(
    surface: &Hypersurface<F>,
    space: &HelixDirectionSpace<F>,
    config: &CheckConfig<F>,
    subject: &str,
) -> Result<TheoremReport> {
    let report = TheoremReport::new("thm_3_2", subject, config.tol.as_f64(), config.plan.total());
    if space.rank() == 0 {
        return Ok(report.vacuous("no constant-angle directions (rank 0)"));
    }
    let fresh = config.plan.reseeded(0x3_2);
    let points = box_points(surface.domain(), &fresh);
    let mut worst = F::zero();
    for u in &points {
        let n = surface.unit_normal(u)?;
        for (j, d) in space.basis.iter().enumerate() {
            worst = worst.max((n.dot(d) - space.constants[j]).abs());
        }
    }
    Ok(report.concluded(worst <= config.tol, worst.as_f64()))
}

/// Max tangential (to the sphere) part of the unit-speed second derivative
/// of a spherical curve; zero exactly for spherical geodesics.
pub fn spherical_geodesic_residual<F: Scalar>(beta: &Curve<F>, plan: &SamplePlan) -> Result<F> {
    let mut worst = F::zero();
    for t in curve_params(beta, plan) {
        let d = beta.derivatives(t, 2)?;
        let speed_sq = d[1].norm_squared();
        let speed = speed_sq.sqrt();
        if speed < F::lit(EPS_REGULAR) {
            return Err(Error::NonRegular {
                t: t.as_f64(),
                speed: speed.as_f64(),
            });
        }
        let sigma2 = &d[2] / speed_sq - &d[1] * (d[2].dot(&d[1]) / (speed_sq * speed_sq));
        let radial = &d[0] * (sigma2.dot(&d[0]) / d[0].norm_squared());
        worst = worst.max((sigma2 - radial).norm());
    }
    Ok(worst)
}

/// When some detected direction is nowhere tangent to the patch, the normal
/// image of a surface curve cannot be a spherical geodesic. Also verifies
/// that the second derivative of the normal image stays orthogonal to every
/// detected direction.
pub fn check_thm_3_3<F: Scalar>(
    gamma: &SurfaceCurve<F>,
    space: &HelixDirectionSpace<F>,
    config: &CheckConfig<F>,
    subject: &str,
) -> Result<TheoremReport> {
    let mut report =
        TheoremReport::new("thm_3_3", subject, config.tol.as_f64(), config.plan.total());
    if space.rank() == 0 {
        return Ok(report.vacuous("no constant-angle directions (rank 0)"));
    }
    let beta = gamma.gauss_curve();
    // the normal image must actually move
    for t in curve_params(&beta, &config.plan) {
        let d = beta.derivatives(t, 1)?;
        if d[1].norm() < F::lit(EPS_REGULAR) {
            return Err(Error::NonRegular {
                t: t.as_f64(),
                speed: d[1].norm().as_f64(),
            });
        }
    }

    // hypothesis: some direction stays off the tangent planes, i.e. its
    // constant is bounded away from zero
    let mut best = F::zero();
    for &c in &space.constants {
        best = best.max(c.abs());
    }
    report.hypothesis_residual = Some(best.as_f64());
    if best <= config.tol_hyp {
        return Ok(report.violated(
            "every detected direction is tangent to the patch (constant = 0)",
            Some(best.as_f64()),
        ));
    }

    let geo_residual = spherical_geodesic_residual(&beta, &config.plan)?;
    report
        .details
        .insert("sphere_geodesy_residual".to_string(), geo_residual.as_f64());

    // second-derivative orthogonality along the normal image
    let mut ortho = F::zero();
    for t in curve_params(&beta, &config.plan) {
        let d = beta.derivatives(t, 2)?;
        let scale = d[1].norm_squared().max(F::lit(EPS_REGULAR));
        for dj in &space.basis {
            ortho = ortho.max(d[2].dot(dj).abs() / scale);
        }
    }
    report.details.insert(
        "second_derivative_orthogonality".to_string(),
        ortho.as_f64(),
    );

    let not_geodesic = geo_residual > F::lit(NONGEODESIC_THRESHOLD);
    Ok(report.concluded(not_geodesic && ortho <= config.tol, ortho.as_f64()))
}

/// Every detected direction is orthogonal to the velocity of the normal
/// image, along any surface curve.
pub fn check_thm_3_4<F: Scalar>(
    gamma: &SurfaceCurve<F>,
    space: &HelixDirectionSpace<F>,
    config: &CheckConfig<F>,
    subject: &str,
) -> Result<TheoremReport> {
    let report = TheoremReport::new("thm_3_4", subject, config.tol.as_f64(), config.plan.total());
    if space.rank() == 0 {
        return Ok(report.vacuous("no constant-angle directions (rank 0)"));
    }
    let ambient = gamma.ambient_curve();
    for t in curve_params(&ambient, &config.plan) {
        let d = ambient.derivatives(t, 1)?;
        if d[1].norm() < F::lit(EPS_REGULAR) {
            return Err(Error::Precondition(format!(
                "curve not regular at t = {}",
                t.as_f64()
            )));
        }
    }
    let beta = gamma.gauss_curve();
    let mut worst = F::zero();
    for t in curve_params(&beta, &config.plan) {
        let d = beta.derivatives(t, 1)?;
        let speed = d[1].norm();
        for dj in &space.basis {
            let raw = d[1].dot(dj).abs();
            let residual = if speed >= F::lit(EPS_REGULAR) {
                raw / speed
            } else {
                raw
            };
            worst = worst.max(residual);
        }
    }
    Ok(report.concluded(worst <= config.tol, worst.as_f64()))
}

/// Along a geodesic, every detected direction is orthogonal to the
/// derivative of the second frame vector.
pub fn check_thm_3_5<F: Scalar>(
    trace: &GeodesicTrace<F>,
    space: &HelixDirectionSpace<F>,
    config: &CheckConfig<F>,
    subject: &str,
) -> Result<TheoremReport> {
    let report = TheoremReport::new("thm_3_5", subject, config.tol.as_f64(), config.plan.total());
    if space.rank() == 0 {
        return Ok(report.vacuous("no constant-angle directions (rank 0)"));
    }
    let sc = trace_to_surface_curve(trace)?;
    let geo_residual = require_geodesic(&sc, config)?;
    let ambient = sc.ambient_curve();
    let mut worst = F::zero();
    for t in curve_params(&ambient, &config.plan) {
        let fr = ambient.frenet(t)?;
        if fr.valid_depth < 2 {
            return Ok(report.vacuous("straight geodesic: second frame vector undefined"));
        }
        // d/dt V_2 from the frame relation when the third vector is
        // trustworthy, else from the exact jet derivative of the frame
        let v2_prime: DVector<F> = if fr.valid_depth >= 3 {
            let k1 = fr.curvature(1)?;
            let k2 = fr.curvature(2)?;
            (&fr.frame[0] * (-k1) + &fr.frame[2] * k2) * fr.speed
        } else {
            fr.frame_derivative[1].clone()
        };
        for dj in &space.basis {
            worst = worst.max(v2_prime.dot(dj).abs());
        }
    }
    let mut report = report;
    report.hypothesis_residual = Some(geo_residual.as_f64());
    Ok(report.concluded(worst <= config.tol, worst.as_f64()))
}

/// Outcome of the tangent-normal decomposition hypothesis shared by the
/// asymptotic-curve statement and its corollaries: some detected direction
/// must lie in the span of the unit tangent and the patch normal along the
/// whole curve, at an angle safely away from 0, a right angle and a
/// straight angle.
struct DecompositionHypothesis<F> {
    witness: Option<usize>,
    best_distance: F,
    excluded_angle: bool,
}

fn thm_3_6_hypothesis<F: Scalar>(
    gamma: &SurfaceCurve<F>,
    space: &HelixDirectionSpace<F>,
    config: &CheckConfig<F>,
) -> Result<DecompositionHypothesis<F>> {
    let ambient = gamma.ambient_curve();
    let gauss = gamma.gauss_curve();
    let params = curve_params(&ambient, &config.plan);
    let margin = F::lit(ANGULAR_MARGIN);
    let mut best_distance = F::max_value().unwrap();
    let mut witness = None;
    let mut excluded_angle = false;
    for (j, dj) in space.basis.iter().enumerate() {
        let theta = space.angles[j];
        let off = theta
            .min((theta - F::frac_pi_2()).abs())
            .min(F::pi() - theta);
        if off <= margin {
            excluded_angle = true;
            continue;
        }
        let mut worst = F::zero();
        for &t in &params {
            let d = ambient.derivatives(t, 1)?;
            let speed = d[1].norm();
            if speed < F::lit(EPS_REGULAR) {
                return Err(Error::NonRegular {
                    t: t.as_f64(),
                    speed: speed.as_f64(),
                });
            }
            let v1 = &d[1] / speed;
            let n = gauss.position(t)?;
            // distance as an explicit projection residual; the algebraic
            // form sqrt(1 - |proj|^2) cancels catastrophically near zero
            let off = dj - &v1 * dj.dot(&v1) - &n * dj.dot(&n);
            worst = worst.max(off.norm());
        }
        if worst < best_distance {
            best_distance = worst;
        }
        if worst <= config.tol_hyp && witness.is_none() {
            witness = Some(j);
        }
    }
    Ok(DecompositionHypothesis {
        witness,
        best_distance,
        excluded_angle,
    })
}

fn describe_violation<F: Scalar>(h: &DecompositionHypothesis<F>) -> String {
    if h.excluded_angle && h.best_distance == F::max_value().unwrap() {
        "every candidate direction sits at an excluded angle (0 or a right angle)".to_string()
    } else {
        format!(
            "no direction lies in the tangent-normal plane along the curve (best distance {:.3e})",
            h.best_distance.as_f64()
        )
    }
}

/// A direction in the tangent-normal plane at a valid angle forces the
/// curve to be asymptotic.
pub fn check_thm_3_6<F: Scalar>(
    gamma: &SurfaceCurve<F>,
    space: &HelixDirectionSpace<F>,
    config: &CheckConfig<F>,
    subject: &str,
) -> Result<TheoremReport> {
    let mut report =
        TheoremReport::new("thm_3_6", subject, config.tol.as_f64(), config.plan.total());
    if space.rank() == 0 {
        return Ok(report.vacuous("no constant-angle directions (rank 0)"));
    }
    let hyp = thm_3_6_hypothesis(gamma, space, config)?;
    match hyp.witness {
        None => Ok(report.violated(
            &describe_violation(&hyp),
            (hyp.best_distance < F::max_value().unwrap()).then(|| hyp.best_distance.as_f64()),
        )),
        Some(j) => {
            report
                .details
                .insert("witness_direction".to_string(), (j + 1) as f64);
            report.hypothesis_residual = Some(hyp.best_distance.as_f64());
            let (ok, residual) = gamma.is_asymptotic(&config.plan, config.tol)?;
            Ok(report.concluded(ok, residual.as_f64()))
        }
    }
}

/// A geodesic satisfying the decomposition hypothesis must be a straight
/// line.
pub fn check_cor_3_3<F: Scalar>(
    gamma: &SurfaceCurve<F>,
    space: &HelixDirectionSpace<F>,
    config: &CheckConfig<F>,
    subject: &str,
) -> Result<TheoremReport> {
    let report = TheoremReport::new("cor_3_3", subject, config.tol.as_f64(), config.plan.total());
    if space.rank() == 0 {
        return Ok(report.vacuous("no constant-angle directions (rank 0)"));
    }
    require_geodesic(gamma, config)?;
    let hyp = thm_3_6_hypothesis(gamma, space, config)?;
    match hyp.witness {
        None => Ok(report.violated(
            &describe_violation(&hyp),
            (hyp.best_distance < F::max_value().unwrap()).then(|| hyp.best_distance.as_f64()),
        )),
        Some(_) => {
            let ambient = gamma.ambient_curve();
            let mut worst = F::zero();
            for t in curve_params(&ambient, &config.plan) {
                let fr = ambient.frenet(t)?;
                if let Some(k1) = fr.curvatures[0] {
                    worst = worst.max(k1.abs());
                }
            }
            Ok(report.concluded(worst <= config.tol, worst.as_f64()))
        }
    }
}

/// A line of curvature satisfying the decomposition hypothesis must be a
/// straight line.
pub fn check_cor_3_4<F: Scalar>(
    gamma: &SurfaceCurve<F>,
    space: &HelixDirectionSpace<F>,
    config: &CheckConfig<F>,
    subject: &str,
) -> Result<TheoremReport> {
    let report = TheoremReport::new("cor_3_4", subject, config.tol.as_f64(), config.plan.total());
    if space.rank() == 0 {
        return Ok(report.vacuous("no constant-angle directions (rank 0)"));
    }
    let (is_loc, residual) = gamma.is_line_of_curvature(&config.plan, config.tol)?;
    if !is_loc {
        return Err(Error::Precondition(format!(
            "input curve is not a line of curvature (residual {:.3e})",
            residual.as_f64()
        )));
    }
    let hyp = thm_3_6_hypothesis(gamma, space, config)?;
    match hyp.witness {
        None => Ok(report.violated(
            &describe_violation(&hyp),
            (hyp.best_distance < F::max_value().unwrap()).then(|| hyp.best_distance.as_f64()),
        )),
        Some(_) => {
            let ambient = gamma.ambient_curve();
            let mut worst = F::zero();
            for t in curve_params(&ambient, &config.plan) {
                let fr = ambient.frenet(t)?;
                if let Some(k1) = fr.curvatures[0] {
                    worst = worst.max(k1.abs());
                }
            }
            Ok(report.concluded(worst <= config.tol, worst.as_f64()))
        }
    }
}

// ---------------------------------------------------------------------------
// suite

/// Named inputs for one suite run.
pub struct SuiteInput<F> {
    pub geodesics: Vec<(String, GeodesicTrace<F>)>,
    pub curves: Vec<(String, SurfaceCurve<F>)>,
}

/// Everything the suite produced, including the detected direction space.
pub struct SuiteOutcome<F> {
    pub space: HelixDirectionSpace<F>,
    pub reports: Vec<TheoremReport>,
}

impl<F: Scalar> SuiteOutcome<F> {
    pub fn any_failed(&self) -> bool {
        self.reports.iter().any(|r| r.failed())
    }
}

fn id_rank(id: &str) -> usize {
    [
        "thm_2_2", "thm_3_1", "thm_3_2", "thm_3_3", "thm_3_4", "thm_3_5", "thm_3_6", "cor_3_3",
        "cor_3_4",
    ]
    .iter()
    .position(|&x| x == id)
    .unwrap_or(usize::MAX)
}

/// Run every applicable check on the configured curves and geodesics.
///
/// Applicability is decided by each statement's preconditions: geodesic
/// checks run on integrated traces, the corollaries additionally require
/// their curve class, and the normal-image checks skip curves whose normal
/// image is stationary. Per-check errors are recorded in the report list
/// without aborting the suite; report order is canonical (check id, then
/// subject).
pub fn run_suite<F: Scalar>(
    surface: &Hypersurface<F>,
    input: &SuiteInput<F>,
    config: &CheckConfig<F>,
) -> Result<SuiteOutcome<F>> {
    let space = helix_directions(surface, &config.plan, config.tol)?;
    let mut reports = Vec::new();

    reports.push(
        check_thm_3_2(surface, &space, config, "surface").unwrap_or_else(|e| {
            TheoremReport::errored("thm_3_2", "surface", config.tol.as_f64(), &e)
        }),
    );

    for (name, trace) in &input.geodesics {
        for (id, f) in [
            ("thm_2_2", check_thm_2_2 as fn(_, _, _, _) -> _),
            ("thm_3_1", check_thm_3_1),
            ("thm_3_5", check_thm_3_5),
        ] {
            reports.push(
                f(trace, &space, config, name.as_str())
                    .unwrap_or_else(|e| TheoremReport::errored(id, name, config.tol.as_f64(), &e)),
            );
        }
        // corollary: geodesic + decomposition hypothesis => line
        match trace_to_surface_curve(trace) {
            Ok(sc) => reports.push(
                check_cor_3_3(&sc, &space, config, name.as_str()).unwrap_or_else(|e| {
                    TheoremReport::errored("cor_3_3", name, config.tol.as_f64(), &e)
                }),
            ),
            Err(e) => reports.push(TheoremReport::errored(
                "cor_3_3",
                name,
                config.tol.as_f64(),
                &e,
            )),
        }
    }

    // curve checks run on the named curves and on the geodesic traces alike
    let mut all_curves: Vec<(String, SurfaceCurve<F>)> = Vec::new();
    for (name, trace) in &input.geodesics {
        if let Ok(sc) = trace_to_surface_curve(trace) {
            all_curves.push((name.clone(), sc));
        }
    }
    all_curves.extend(input.curves.iter().map(|(n, c)| (n.clone(), c.clone())));

    for (name, gamma) in &all_curves {
        // skip curves whose normal image is stationary (rulings, planes):
        // their normal image carries no curve to test
        let beta_moves = space.rank() == 0 || {
            let beta = gamma.gauss_curve();
            curve_params(&beta, &config.plan).iter().all(|&t| {
                beta.derivatives(t, 1)
                    .map(|d| d[1].norm() >= F::lit(EPS_REGULAR))
                    .unwrap_or(false)
            })
        };
        if beta_moves {
            reports.push(
                check_thm_3_3(gamma, &space, config, name.as_str()).unwrap_or_else(|e| {
                    TheoremReport::errored("thm_3_3", name, config.tol.as_f64(), &e)
                }),
            );
        }
        reports.push(
            check_thm_3_4(gamma, &space, config, name.as_str()).unwrap_or_else(|e| {
                TheoremReport::errored("thm_3_4", name, config.tol.as_f64(), &e)
            }),
        );
        reports.push(
            check_thm_3_6(gamma, &space, config, name.as_str()).unwrap_or_else(|e| {
                TheoremReport::errored("thm_3_6", name, config.tol.as_f64(), &e)
            }),
        );
        // corollary for lines of curvature: only applicable when the curve
        // class precondition holds
        if space.rank() > 0 {
            if let Ok((true, _)) = gamma.is_line_of_curvature(&config.plan, config.tol) {
                reports.push(
                    check_cor_3_4(gamma, &space, config, name.as_str()).unwrap_or_else(|e| {
                        TheoremReport::errored("cor_3_4", name, config.tol.as_f64(), &e)
                    }),
                );
            }
        }
    }

    reports.sort_by(|a, b| {
        (id_rank(&a.id), a.subject.clone()).cmp(&(id_rank(&b.id), b.subject.clone()))
    });
    Ok(SuiteOutcome { space, reports })
}
