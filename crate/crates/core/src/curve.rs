//! Parametric curves in Euclidean n-space: derivatives, arc length,
//! unit-speed reparametrization, the moving orthonormal frame with its
//! curvatures, constant-angle direction spaces of frame vectors, and the
//! tangent indicatrix.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::expr::{Bindings, Expr};
use crate::jet::{compose, invert_series, Jet};
use crate::linalg::{
    canonical_sign, complete_orthonormal, cross_generalized, derivatives_of, dot_jets, null_space,
    sub_scaled_jets, values_of,
};
use crate::sample::{interval_params, SamplePlan};
use crate::scalar::Scalar;

/// Speeds below this are treated as a regularity failure.
pub const EPS_REGULAR: f64 = 1e-8;
/// Relative residual below which a Gram-Schmidt stage counts as degenerate.
pub const EPS_DEGENERATE: f64 = 1e-7;
/// Absolute tolerance of the arc-length quadrature.
pub const ARC_LENGTH_TOL: f64 = 1e-10;

/// Something that can be evaluated as a curve: all component jets at a
/// parameter value, to a requested order.
pub trait CurveFn<F>: Send + Sync {
    fn dim(&self) -> usize;
    fn eval_jets(&self, t: F, order: usize) -> Result<Vec<Jet<F>>>;
}

/// A parametric curve with a closed parameter interval.
#[derive(Clone)]
pub struct Curve<F> {
    inner: Arc<dyn CurveFn<F>>,
    domain: (F, F),
}

struct ExprCurve {
    components: Vec<Expr>,
    var: String,
}

impl<F: Scalar> CurveFn<F> for ExprCurve {
    fn dim(&self) -> usize {
        self.components.len()
    }

    fn eval_jets(&self, t: F, order: usize) -> Result<Vec<Jet<F>>> {
        let binds = vec![(self.var.clone(), Jet::variable(t, order))];
        let b = Bindings::new(&binds);
        self.components.iter().map(|c| c.eval_jet(&b)).collect()
    }
}

impl<F: Scalar> Curve<F> {
    /// Curve from one expression per component, all in the single variable
    /// `var`.
    pub fn from_exprs(components: Vec<Expr>, var: &str, domain: (F, F)) -> Result<Self> {
        for (i, c) in components.iter().enumerate() {
            for name in c.variables() {
                if name != var {
                    return Err(Error::Precondition(format!(
                        "component {i} uses undeclared variable `{name}`"
                    )));
                }
            }
        }
        Ok(Curve {
            inner: Arc::new(ExprCurve {
                components,
                var: var.to_string(),
            }),
            domain,
        })
    }

    /// Parse curve components from text.
    pub fn parse(texts: &[&str], var: &str, domain: (F, F)) -> Result<Self> {
        let vars = crate::expr::var_set(&[var]);
        let components = texts
            .iter()
            .map(|t| crate::expr::parse(t, &vars))
            .collect::<Result<Vec<_>>>()?;
        Self::from_exprs(components, var, domain)
    }

    pub fn from_fn(inner: Arc<dyn CurveFn<F>>, domain: (F, F)) -> Self {
        Curve { inner, domain }
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn domain(&self) -> (F, F) {
        self.domain
    }

    /// Component jets at `t`.
    pub fn eval_jets(&self, t: F, order: usize) -> Result<Vec<Jet<F>>> {
        self.inner.eval_jets(t, order)
    }

    /// Position at `t`.
    pub fn position(&self, t: F) -> Result<DVector<F>> {
        let jets = self.eval_jets(t, 0)?;
        Ok(values_of(&jets))
    }

    /// Derivative vectors `α, α', ..., α^(order)` at `t`, exact to roundoff.
    pub fn derivatives(&self, t: F, order: usize) -> Result<Vec<DVector<F>>> {
        let jets = self.eval_jets(t, order)?;
        Ok((0..=order)
            .map(|j| DVector::from_iterator(self.dim(), jets.iter().map(|c| c.derivative(j))))
            .collect())
    }

    /// `|α'(t)|`, failing when below the regularity threshold.
    pub fn speed(&self, t: F) -> Result<F> {
        let d = self.derivatives(t, 1)?;
        let speed = d[1].norm();
        if speed < F::lit(EPS_REGULAR) {
            return Err(Error::NonRegular {
                t: t.as_f64(),
                speed: speed.as_f64(),
            });
        }
        Ok(speed)
    }

    /// Arc length between two parameters by adaptive quadrature of the
    /// speed, to an absolute tolerance of `ARC_LENGTH_TOL`. Antisymmetric in
    /// its arguments and additive over subintervals.
    pub fn arc_length(&self, a: F, b: F) -> Result<F> {
        if a == b {
            return Ok(F::zero());
        }
        let (lo, hi, sign) = if a < b {
            (a, b, F::one())
        } else {
            (b, a, -F::one())
        };
        let f = |t: F| self.speed(t);
        Ok(sign * adaptive_simpson(&f, lo, hi, F::lit(ARC_LENGTH_TOL))?)
    }

    /// Unit-speed reparametrization over `[0, L]`. The new parameter is
    /// inverted by safeguarded Newton (bracketed by bisection) on the
    /// arc-length function.
    pub fn unit_speed(&self) -> Result<Curve<F>> {
        let (t0, t1) = self.domain;
        let length = self.arc_length(t0, t1)?;
        Ok(Curve {
            inner: Arc::new(UnitSpeedCurve {
                base: self.clone(),
                length,
            }),
            domain: (F::zero(), length),
        })
    }

    /// Tangent indicatrix `t ↦ α'(t)/|α'(t)|` on the unit sphere.
    pub fn tangent_indicatrix(&self) -> Curve<F> {
        Curve {
            inner: Arc::new(TangentIndicatrixCurve { base: self.clone() }),
            domain: self.domain,
        }
    }

    /// The curve `Q α + b`.
    pub fn transformed(&self, q: &DMatrix<F>, b: &DVector<F>) -> Curve<F> {
        Curve {
            inner: Arc::new(TransformedCurve {
                base: self.clone(),
                q: q.clone(),
                b: b.clone(),
            }),
            domain: self.domain,
        }
    }

    /// Moving frame, frame derivatives and curvatures at `t`.
    ///
    /// The first `n-1` frame vectors come from Gram-Schmidt over
    /// `α', ..., α^(n-1)` carried out in order-1 jet arithmetic, so the frame
    /// derivatives fall out exactly; the last vector completes a positively
    /// oriented basis via the generalized cross product. `valid_depth`
    /// counts how many of `α', ..., α^(n)` are independent; curvature `k_i`
    /// is reported only for `i <= valid_depth` and the last curvature is
    /// signed by orientation.
    pub fn frenet(&self, t: F) -> Result<FrenetData<F>> {
        let n = self.dim();
        if n < 2 {
            return Err(Error::Precondition(
                "frames need ambient dimension at least 2".to_string(),
            ));
        }
        let jets = self.eval_jets(t, n + 1)?;

        let deriv_vec = |j: usize| -> Vec<Jet<F>> {
            jets.iter()
                .map(|c| Jet::from_coeffs(&[c.derivative(j), c.derivative(j + 1)]))
                .collect()
        };

        let speed = values_of(&deriv_vec(1)).norm();
        if speed < F::lit(EPS_REGULAR) {
            return Err(Error::NonRegular {
                t: t.as_f64(),
                speed: speed.as_f64(),
            });
        }

        let mut frame_jets: Vec<Vec<Jet<F>>> = Vec::with_capacity(n - 1);
        let mut valid_depth = 0usize;
        for j in 1..=n {
            let d = deriv_vec(j);
            let input_norm = values_of(&d).norm();
            let mut w = d;
            for v in &frame_jets {
                let c = dot_jets(v, &w);
                sub_scaled_jets(&mut w, v, &c);
            }
            let norm_sq = dot_jets(&w, &w);
            let norm_val = norm_sq.value().sqrt();
            let floor = F::lit(1e-30);
            let degenerate = if j == 1 {
                false // regularity already checked against EPS_REGULAR
            } else {
                norm_val < F::lit(EPS_DEGENERATE) * input_norm.max(floor)
            };
            if degenerate {
                break;
            }
            valid_depth = j;
            if j < n {
                let norm_jet = norm_sq
                    .sqrt()
                    .map_err(|e| Error::domain(format!("frame stage {j}"), e.message()))?;
                for wi in w.iter_mut() {
                    *wi = wi.div(&norm_jet).expect("positive frame norm");
                }
                frame_jets.push(w);
            }
        }

        let mut frame: Vec<DVector<F>> = frame_jets.iter().map(|v| values_of(v)).collect();
        if frame.len() == n - 1 {
            let vn = cross_generalized(&frame);
            let norm = vn.norm();
            frame.push(vn / norm);
        } else {
            frame = complete_orthonormal(&frame, n);
            let vn = cross_generalized(&frame[..n - 1]);
            let norm = vn.norm();
            frame[n - 1] = vn / norm;
        }

        let frame_derivative: Vec<DVector<F>> =
            frame_jets.iter().map(|v| derivatives_of(v)).collect();

        let mut curvatures: Vec<Option<F>> = Vec::with_capacity(n - 1);
        for i in 1..=n - 1 {
            if i <= valid_depth {
                let k = frame_derivative[i - 1].dot(&frame[i]) / speed;
                curvatures.push(Some(k));
            } else {
                curvatures.push(None);
            }
        }

        Ok(FrenetData {
            t,
            speed,
            frame,
            frame_derivative,
            curvatures,
            valid_depth,
        })
    }

    /// Directions making a constant angle with the `level`-th frame vector,
    /// detected as the numerical null space of the sampled frame-vector
    /// differences and re-verified on a denser, reseeded grid.
    pub fn slant_helix_space(
        &self,
        level: usize,
        plan: &SamplePlan,
        tol: F,
    ) -> Result<SlantHelixSpace<F>> {
        let n = self.dim();
        if level == 0 || level > n {
            return Err(Error::Precondition(format!(
                "frame level {level} out of range for dimension {n}"
            )));
        }
        let (a, b) = self.domain;
        let params = interval_params(a, b, plan);
        let samples = self.frame_vector_samples(level, &params)?;

        let mut rows = DMatrix::zeros(samples.len() - 1, n);
        for (r, s) in samples.iter().skip(1).enumerate() {
            rows.set_row(r, &(s - &samples[0]).transpose());
        }
        let ns = null_space(&rows, tol, tol);
        let basis: Vec<DVector<F>> = ns.basis.into_iter().map(canonical_sign).collect();

        let mut constants = Vec::with_capacity(basis.len());
        let mut residuals = Vec::with_capacity(basis.len());
        let mut orthogonal = Vec::with_capacity(basis.len());
        for d in &basis {
            let (mean, residual) = mean_and_residual(&samples, d);
            constants.push(mean);
            residuals.push(residual);
            orthogonal.push(mean.abs() <= tol);
        }

        // independent re-check on a denser grid with a fresh seed
        let dense = plan.densified(2);
        let dense_params = interval_params(a, b, &dense);
        let dense_samples = self.frame_vector_samples(level, &dense_params)?;
        for (j, d) in basis.iter().enumerate() {
            let mut worst = F::zero();
            for s in &dense_samples {
                worst = worst.max((s.dot(d) - constants[j]).abs());
            }
            if worst > F::lit(10.0) * tol {
                return Err(Error::VerificationFailed {
                    residual: worst.as_f64(),
                    limit: (F::lit(10.0) * tol).as_f64(),
                });
            }
            residuals[j] = residuals[j].max(worst);
        }

        Ok(SlantHelixSpace {
            level,
            basis,
            constants,
            residuals,
            orthogonal,
            singular_values: ns.singular_values,
            tolerance: tol,
            seed: plan.seed,
        })
    }

    fn frame_vector_samples(&self, level: usize, params: &[F]) -> Result<Vec<DVector<F>>> {
        params
            .iter()
            .map(|&t| {
                let fr = self.frenet(t)?;
                if fr.valid_depth < level {
                    return Err(Error::DegenerateFrame {
                        stage: level,
                        valid_depth: fr.valid_depth,
                    });
                }
                Ok(fr.frame[level - 1].clone())
            })
            .collect()
    }

    /// True when the whole sampled curve lies on the unit sphere.
    pub fn is_spherical(&self, plan: &SamplePlan, tol: F) -> Result<bool> {
        Ok(self.sphere_deviation(plan)? <= tol)
    }

    /// `max_t | |α(t)| - 1 |` over the sample plan.
    pub fn sphere_deviation(&self, plan: &SamplePlan) -> Result<F> {
        let (a, b) = self.domain;
        let mut worst = F::zero();
        for t in interval_params(a, b, plan) {
            let p = self.position(t)?;
            worst = worst.max((p.norm() - F::one()).abs());
        }
        Ok(worst)
    }

    /// True when the first curvature vanishes along the whole sample plan
    /// (or the frame is everywhere degenerate past the tangent).
    pub fn is_line(&self, plan: &SamplePlan, tol: F) -> Result<bool> {
        let (a, b) = self.domain;
        for t in interval_params(a, b, plan) {
            let fr = self.frenet(t)?;
            match fr.curvatures[0] {
                Some(k) => {
                    if k.abs() > tol {
                        return Ok(false);
                    }
                }
                None => continue, // valid_depth == 1: straight here
            }
        }
        Ok(true)
    }
}

fn mean_and_residual<F: Scalar>(samples: &[DVector<F>], d: &DVector<F>) -> (F, F) {
    let mut mean = F::zero();
    for s in samples {
        mean += s.dot(d);
    }
    mean /= F::from_usize(samples.len()).unwrap();
    let mut residual = F::zero();
    for s in samples {
        residual = residual.max((s.dot(d) - mean).abs());
    }
    (mean, residual)
}

/// Frame data at one parameter.
#[derive(Debug, Clone)]
pub struct FrenetData<F> {
    pub t: F,
    /// `|α'(t)|`.
    pub speed: F,
    /// Orthonormal frame `V_1, ..., V_n`, positively oriented.
    pub frame: Vec<DVector<F>>,
    /// `d/dt V_i` for the Gram-Schmidt stages that succeeded.
    pub frame_derivative: Vec<DVector<F>>,
    /// `k_1, ..., k_{n-1}`; `None` above `valid_depth`.
    pub curvatures: Vec<Option<F>>,
    /// Number of independent derivatives among `α', ..., α^(n)`.
    pub valid_depth: usize,
}

impl<F: Scalar> FrenetData<F> {
    /// `k_i` (1-based), failing when the frame is too shallow there.
    pub fn curvature(&self, i: usize) -> Result<F> {
        self.curvatures
            .get(i - 1)
            .copied()
            .flatten()
            .ok_or(Error::DegenerateFrame {
                stage: i + 1,
                valid_depth: self.valid_depth,
            })
    }
}

/// Directions at constant angle with one frame vector.
#[derive(Debug, Clone)]
pub struct SlantHelixSpace<F> {
    /// Which frame vector was tested (1 = unit tangent).
    pub level: usize,
    /// Orthonormal, sign-canonicalized basis of the direction space.
    pub basis: Vec<DVector<F>>,
    /// Mean inner product (cosine of the constant angle) per direction.
    pub constants: Vec<F>,
    /// Max deviation from the mean per direction, over both sample passes.
    pub residuals: Vec<F>,
    /// Flags directions whose constant angle is a right angle.
    pub orthogonal: Vec<bool>,
    /// Singular-value spectrum behind the rank decision, descending.
    pub singular_values: Vec<F>,
    pub tolerance: F,
    pub seed: u64,
}

impl<F: Scalar> SlantHelixSpace<F> {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

// ---------------------------------------------------------------------------
// derived curve evaluators

struct UnitSpeedCurve<F> {
    base: Curve<F>,
    length: F,
}

impl<F: Scalar> UnitSpeedCurve<F> {
    fn param_for_arc(&self, s: F) -> Result<F> {
        let (t0, t1) = self.base.domain();
        let span = t1 - t0;
        let frac = (s / self.length).max(F::zero()).min(F::one());
        let mut lo = t0;
        let mut hi = t1;
        let mut t = t0 + span * frac;
        let mut s_cur = self.base.arc_length(t0, t)?;
        let tol = F::lit(1e-12) * (F::one() + self.length.abs());
        for _ in 0..80 {
            let err = s - s_cur;
            if err.abs() <= tol {
                return Ok(t);
            }
            if err > F::zero() {
                lo = t;
            } else {
                hi = t;
            }
            let speed = self.base.speed(t)?;
            let mut t_next = t + err / speed;
            if t_next <= lo || t_next >= hi {
                t_next = (lo + hi) * F::lit(0.5);
            }
            s_cur += self.base.arc_length(t, t_next)?;
            t = t_next;
        }
        Err(Error::Precondition(
            "arc-length inversion did not converge".to_string(),
        ))
    }
}

impl<F: Scalar> CurveFn<F> for UnitSpeedCurve<F> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn eval_jets(&self, s: F, order: usize) -> Result<Vec<Jet<F>>> {
        let t = self.param_for_arc(s)?;
        let base_jets = self.base.eval_jets(t, order.max(1))?;
        if order == 0 {
            return Ok(base_jets.into_iter().map(|j| j.resized(0)).collect());
        }
        // jet of the arc-length function s(t) at t: value s, then the
        // termwise-integrated speed series
        let speed_jet = {
            let d: Vec<Jet<F>> = base_jets.iter().map(|j| j.differentiate()).collect();
            dot_jets(&d, &d)
                .sqrt()
                .map_err(|e| Error::domain("speed", e.message()))?
        };
        let mut s_coeffs = vec![F::zero(); order + 1];
        s_coeffs[0] = s;
        for j in 1..=order {
            s_coeffs[j] = speed_jet.coeff(j - 1) / F::from_usize(j).unwrap();
        }
        let s_jet = Jet::from_coeffs(&s_coeffs);
        let t_jet = invert_series(&s_jet, t).map_err(|_| Error::NonRegular {
            t: t.as_f64(),
            speed: speed_jet.value().as_f64(),
        })?;
        let mut inner_coeffs = t_jet.coeffs().to_vec();
        inner_coeffs[0] = F::zero();
        let inner = Jet::from_coeffs(&inner_coeffs);
        Ok(base_jets
            .iter()
            .map(|c| compose(c.coeffs(), &inner))
            .collect())
    }
}

struct TangentIndicatrixCurve<F> {
    base: Curve<F>,
}

impl<F: Scalar> CurveFn<F> for TangentIndicatrixCurve<F> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn eval_jets(&self, t: F, order: usize) -> Result<Vec<Jet<F>>> {
        let base_jets = self.base.eval_jets(t, order + 1)?;
        let d: Vec<Jet<F>> = base_jets.iter().map(|j| j.differentiate()).collect();
        let norm_sq = dot_jets(&d, &d);
        let speed = norm_sq.value().sqrt();
        if speed < F::lit(EPS_REGULAR) {
            return Err(Error::NonRegular {
                t: t.as_f64(),
                speed: speed.as_f64(),
            });
        }
        let norm_jet = norm_sq
            .sqrt()
            .map_err(|e| Error::domain("tangent norm", e.message()))?;
        d.iter()
            .map(|c| {
                c.div(&norm_jet)
                    .map_err(|e| Error::domain("tangent indicatrix", e.message()))
            })
            .collect()
    }
}

struct TransformedCurve<F> {
    base: Curve<F>,
    q: DMatrix<F>,
    b: DVector<F>,
}

impl<F: Scalar> CurveFn<F> for TransformedCurve<F> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn eval_jets(&self, t: F, order: usize) -> Result<Vec<Jet<F>>> {
        let base_jets = self.base.eval_jets(t, order)?;
        let n = base_jets.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = Jet::constant(self.b[i], order);
            for (j, bj) in base_jets.iter().enumerate() {
                acc = acc.add(&bj.scale(self.q[(i, j)]));
            }
            out.push(acc);
        }
        Ok(out)
    }
}

fn adaptive_simpson<F: Scalar>(f: &dyn Fn(F) -> Result<F>, a: F, b: F, tol: F) -> Result<F> {
    let half = F::lit(0.5);
    let sixth = F::one() / F::lit(6.0);
    let four = F::lit(4.0);
    let m = (a + b) * half;
    let fa = f(a)?;
    let fm = f(m)?;
    let fb = f(b)?;
    let whole = (b - a) * sixth * (fa + four * fm + fb);

    #[allow(clippy::too_many_arguments)]
    fn step<F: Scalar>(
        f: &dyn Fn(F) -> Result<F>,
        a: F,
        b: F,
        fa: F,
        fm: F,
        fb: F,
        whole: F,
        tol: F,
        depth: usize,
    ) -> Result<F> {
        let half = F::lit(0.5);
        let sixth = F::one() / F::lit(6.0);
        let four = F::lit(4.0);
        let fifteen = F::lit(15.0);
        let m = (a + b) * half;
        let lm = (a + m) * half;
        let rm = (m + b) * half;
        let flm = f(lm)?;
        let frm = f(rm)?;
        let left = (m - a) * sixth * (fa + four * flm + fm);
        let right = (b - m) * sixth * (fm + four * frm + fb);
        let delta = left + right - whole;
        if depth >= 48 || delta.abs() <= fifteen * tol {
            return Ok(left + right + delta / fifteen);
        }
        let half_tol = tol * half;
        Ok(step(f, a, m, fa, flm, fm, left, half_tol, depth + 1)?
            + step(f, m, b, fm, frm, fb, right, half_tol, depth + 1)?)
    }

    step(f, a, b, fa, fm, fb, whole, tol, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::SamplePlan;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

    fn line() -> Curve<f64> {
        Curve::parse(&["t", "2*t", "3*t"], "t", (0.0, 1.0)).unwrap()
    }

    fn unit_circle() -> Curve<f64> {
        Curve::parse(&["cos(t)", "sin(t)"], "t", (0.0, 2.0 * PI)).unwrap()
    }

    fn helix() -> Curve<f64> {
        Curve::parse(&["cos(t)", "sin(t)", "t"], "t", (0.0, 2.0 * PI)).unwrap()
    }

    #[test]
    fn line_derivatives() {
        let d = line().derivatives(0.37, 2).unwrap();
        assert_relative_eq!(
            d[1],
            DVector::from_vec(vec![1.0, 2.0, 3.0]),
            epsilon = 1e-15
        );
        assert!(d[2].norm() < 1e-15);
    }

    #[test]
    fn circle_derivatives_at_zero() {
        let d = unit_circle().derivatives(0.0, 2).unwrap();
        assert_relative_eq!(d[1], DVector::from_vec(vec![0.0, 1.0]), epsilon = 1e-15);
        assert_relative_eq!(d[2], DVector::from_vec(vec![-1.0, 0.0]), epsilon = 1e-15);
    }

    #[test]
    fn helix_derivatives_at_zero() {
        let d = helix().derivatives(0.0, 3).unwrap();
        assert_relative_eq!(
            d[1],
            DVector::from_vec(vec![0.0, 1.0, 1.0]),
            epsilon = 1e-15
        );
        assert_relative_eq!(
            d[2],
            DVector::from_vec(vec![-1.0, 0.0, 0.0]),
            epsilon = 1e-15
        );
        assert_relative_eq!(
            d[3],
            DVector::from_vec(vec![0.0, -1.0, 0.0]),
            epsilon = 1e-14
        );
    }

    #[test]
    fn arc_lengths_of_known_curves() {
        assert_relative_eq!(
            unit_circle().arc_length(0.0, 2.0 * PI).unwrap(),
            2.0 * PI,
            epsilon = 1e-10
        );
        assert_relative_eq!(
            line().arc_length(0.0, 1.0).unwrap(),
            14.0f64.sqrt(),
            epsilon = 1e-10
        );
        assert_relative_eq!(
            helix().arc_length(0.0, 2.0 * PI).unwrap(),
            2.0 * PI * SQRT_2,
            epsilon = 1e-9
        );
        // additivity
        let c = helix();
        let whole = c.arc_length(0.5, 4.0).unwrap();
        let split = c.arc_length(0.5, 2.2).unwrap() + c.arc_length(2.2, 4.0).unwrap();
        assert_relative_eq!(whole, split, epsilon = 1e-9);
    }

    #[test]
    fn arc_length_nonregular_curve_fails() {
        // speed vanishes at t = 0
        let c = Curve::parse(&["t^2", "t^3"], "t", (-1.0, 1.0)).unwrap();
        assert!(matches!(
            c.arc_length(-1.0, 1.0),
            Err(Error::NonRegular { .. })
        ));
    }

    #[test]
    fn unit_speed_scales_a_line() {
        let c = Curve::parse(&["2*t", "0", "0"], "t", (0.0, 1.0)).unwrap();
        let u = c.unit_speed().unwrap();
        assert_relative_eq!(u.domain().1, 2.0, epsilon = 1e-10);
        let p = u.position(1.5).unwrap();
        assert_relative_eq!(p[0], 1.5, epsilon = 1e-9);
        assert_relative_eq!(
            u.derivatives(0.7, 1).unwrap()[1].norm(),
            1.0,
            epsilon = 1e-10
        );
    }

    #[test]
    fn unit_speed_helix_matches_closed_form() {
        let u = helix().unit_speed().unwrap();
        for &s in &[0.3, 1.0, 4.0, 7.5] {
            let p = u.position(s).unwrap();
            assert_relative_eq!(p[0], (s / SQRT_2).cos(), epsilon = 1e-9);
            assert_relative_eq!(p[1], (s / SQRT_2).sin(), epsilon = 1e-9);
            assert_relative_eq!(p[2], s / SQRT_2, epsilon = 1e-9);
            let d = u.derivatives(s, 2).unwrap();
            assert_relative_eq!(d[1].norm(), 1.0, epsilon = 1e-8);
            // second derivative of a unit-speed circle-helix has |σ''| = k1 = 1/2
            assert_relative_eq!(d[2].norm(), 0.5, epsilon = 1e-7);
        }
    }

    #[test]
    fn unit_speed_of_already_unit_speed_curve_is_shift_only() {
        let c = Curve::parse(&["cos(t)", "sin(t)"], "t", (1.0, 1.0 + PI)).unwrap();
        let u = c.unit_speed().unwrap();
        let p = u.position(0.5).unwrap();
        let q = c.position(1.5).unwrap();
        assert_relative_eq!(p, q, epsilon = 1e-9);
    }

    #[test]
    fn helix_frenet_curvatures() {
        let c = helix();
        for &t in &[0.0, 0.9, 3.3, 5.9] {
            let fr = c.frenet(t).unwrap();
            assert_eq!(fr.valid_depth, 3);
            assert_relative_eq!(fr.curvature(1).unwrap(), 0.5, epsilon = 1e-12);
            assert_relative_eq!(fr.curvature(2).unwrap(), 0.5, epsilon = 1e-12);
            // orthonormality
            for i in 0..3 {
                for j in 0..3 {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert_relative_eq!(fr.frame[i].dot(&fr.frame[j]), expect, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn line_frenet_is_depth_one() {
        let fr = line().frenet(0.5).unwrap();
        assert_eq!(fr.valid_depth, 1);
        assert_relative_eq!(fr.curvature(1).unwrap(), 0.0, epsilon = 1e-12);
        assert!(fr.curvatures[1].is_none());
        assert!(matches!(
            fr.curvature(2),
            Err(Error::DegenerateFrame { .. })
        ));
    }

    #[test]
    fn planar_circle_in_space_has_depth_two() {
        let c = Curve::parse(&["2*cos(t)", "2*sin(t)", "0"], "t", (0.0, 2.0 * PI)).unwrap();
        let fr = c.frenet(1.1).unwrap();
        assert_eq!(fr.valid_depth, 2);
        assert_relative_eq!(fr.curvature(1).unwrap(), 0.5, epsilon = 1e-12);
        assert_relative_eq!(fr.curvature(2).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn plane_curve_signed_curvature() {
        // counterclockwise unit circle: k1 = +1; clockwise: k1 = -1
        let ccw = unit_circle();
        assert_relative_eq!(
            ccw.frenet(0.3).unwrap().curvature(1).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        let cw = Curve::parse(&["cos(t)", "-sin(t)"], "t", (0.0, 2.0 * PI)).unwrap();
        assert_relative_eq!(
            cw.frenet(0.3).unwrap().curvature(1).unwrap(),
            -1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn frenet_ode_consistency() {
        // || dV_i/dt - speed * (-k_{i-1} V_{i-1} + k_i V_{i+1}) || small,
        // using the exact jet-computed frame derivatives
        let c = helix();
        let fr = c.frenet(1.7).unwrap();
        let k1 = fr.curvature(1).unwrap();
        let k2 = fr.curvature(2).unwrap();
        let rhs1 = &fr.frame[1] * (k1 * fr.speed);
        assert!((&fr.frame_derivative[0] - rhs1).norm() < 1e-12);
        let rhs2 = &fr.frame[0] * (-k1 * fr.speed) + &fr.frame[2] * (k2 * fr.speed);
        assert!((&fr.frame_derivative[1] - rhs2).norm() < 1e-12);
    }

    #[test]
    fn helix_slant_space_level_one() {
        let plan = SamplePlan::default();
        let sp = helix().slant_helix_space(1, &plan, 1e-6).unwrap();
        assert_eq!(sp.rank(), 1);
        let d = &sp.basis[0];
        assert_relative_eq!(d[2].abs(), 1.0, epsilon = 1e-9);
        assert_relative_eq!(sp.constants[0].abs(), FRAC_1_SQRT_2, epsilon = 1e-9);
        assert!(!sp.orthogonal[0]);
        assert!(sp.residuals[0] < 1e-9);
    }

    #[test]
    fn line_slant_space_is_everything() {
        let plan = SamplePlan::default();
        let sp = line().slant_helix_space(1, &plan, 1e-6).unwrap();
        assert_eq!(sp.rank(), 3);
    }

    #[test]
    fn slant_space_needs_enough_frame_depth() {
        let err = line()
            .slant_helix_space(2, &SamplePlan::default(), 1e-6)
            .unwrap_err();
        assert!(matches!(err, Error::DegenerateFrame { .. }));
    }

    #[test]
    fn slant_level_two_matches_indicatrix_level_one() {
        // a curve makes a constant angle between its second frame vector and
        // a direction exactly when its tangent image is a constant-angle
        // curve for the same direction; both detections must agree
        let c = helix();
        let plan = SamplePlan::default();
        let of_curve = c.slant_helix_space(2, &plan, 1e-6).unwrap();
        let of_image = c
            .tangent_indicatrix()
            .slant_helix_space(1, &plan, 1e-6)
            .unwrap();
        assert_eq!(of_curve.rank(), 1);
        assert_eq!(of_image.rank(), 1);
        assert!((&of_curve.basis[0] - &of_image.basis[0]).norm() < 1e-8);
        assert_relative_eq!(of_curve.basis[0][2].abs(), 1.0, epsilon = 1e-9);
        // the helix realizes the right-angle case on both sides
        assert!(of_curve.orthogonal[0] && of_image.orthogonal[0]);
    }

    #[test]
    fn planar_circle_slant_space_is_orthogonal_axis() {
        let c = Curve::parse(&["cos(t)", "sin(t)", "0"], "t", (0.0, 2.0 * PI)).unwrap();
        let sp = c
            .slant_helix_space(1, &SamplePlan::default(), 1e-6)
            .unwrap();
        assert_eq!(sp.rank(), 1);
        assert_relative_eq!(sp.basis[0][2].abs(), 1.0, epsilon = 1e-9);
        assert!(sp.constants[0].abs() < 1e-10);
        assert!(sp.orthogonal[0]);
    }

    #[test]
    fn helix_slant_spaces_at_higher_levels() {
        // level 2: the second frame vector of the circular helix is
        // horizontal, so the axis qualifies with a right angle
        let sp = helix()
            .slant_helix_space(2, &SamplePlan::default(), 1e-6)
            .unwrap();
        assert_eq!(sp.rank(), 1);
        assert!(sp.constants[0].abs() < 1e-10);
        assert!(sp.orthogonal[0]);
        // level 3 (last frame vector): constant cosine 1/sqrt(2) with the axis
        let sp = helix()
            .slant_helix_space(3, &SamplePlan::default(), 1e-6)
            .unwrap();
        assert_eq!(sp.rank(), 1);
        assert_relative_eq!(sp.constants[0].abs(), FRAC_1_SQRT_2, epsilon = 1e-9);
        assert!(!sp.orthogonal[0]);
    }

    #[test]
    fn works_in_single_precision() {
        let c: Curve<f32> = Curve::parse(&["cos(t)", "sin(t)", "t"], "t", (0.0, 6.0)).unwrap();
        let fr = c.frenet(1.0).unwrap();
        assert!((fr.curvature(1).unwrap() - 0.5).abs() < 1e-5);
        assert!((fr.curvature(2).unwrap() - 0.5).abs() < 1e-5);
        let len = c.arc_length(0.0, 1.0).unwrap();
        assert!((len - std::f32::consts::SQRT_2).abs() < 1e-5);
    }

    #[test]
    fn curves_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Curve<f64>>();
        assert_send_sync::<Curve<f32>>();
        assert_send_sync::<FrenetData<f64>>();
    }

    #[test]
    fn indicatrix_of_line_is_constant() {
        let b = line().tangent_indicatrix();
        let p = b.position(0.1).unwrap();
        let q = b.position(0.9).unwrap();
        assert_relative_eq!(p, q, epsilon = 1e-12);
        assert_relative_eq!(p.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn indicatrix_of_helix_is_horizontal_circle() {
        let b = helix().tangent_indicatrix();
        for &t in &[0.0, 1.0, 2.5] {
            let p = b.position(t).unwrap();
            assert_relative_eq!(p[2], FRAC_1_SQRT_2, epsilon = 1e-12);
            assert_relative_eq!(p.norm(), 1.0, epsilon = 1e-12);
            assert_relative_eq!(p[0], -t.sin() * FRAC_1_SQRT_2, epsilon = 1e-12);
        }
        assert!(b.is_spherical(&SamplePlan::default(), 1e-12).unwrap());
    }

    #[test]
    fn sphericity_checks() {
        assert!(unit_circle()
            .is_spherical(&SamplePlan::default(), 1e-12)
            .unwrap());
        assert!(!helix().is_spherical(&SamplePlan::default(), 1e-6).unwrap());
    }

    #[test]
    fn line_checks() {
        let plan = SamplePlan::default();
        assert!(line().is_line(&plan, 1e-9).unwrap());
        assert!(!unit_circle().is_line(&plan, 1e-9).unwrap());
        // straight ruling through a cone apex direction
        let g: f64 = PI / 6.0;
        let ruling = Curve::parse(
            &[
                &format!("t*{}", (g.sin() * 0.5f64.cos())),
                &format!("t*{}", (g.sin() * 0.5f64.sin())),
                &format!("t*{}", g.cos()),
            ],
            "t",
            (0.2, 2.0),
        )
        .unwrap();
        assert!(ruling.is_line(&plan, 1e-9).unwrap());
    }

    #[test]
    fn reparametrization_leaves_curvatures_alone() {
        let c = helix();
        let u = c.unit_speed().unwrap();
        // t = 1.2 corresponds to s = sqrt(2) * 1.2
        let fr_c = c.frenet(1.2).unwrap();
        let fr_u = u.frenet(SQRT_2 * 1.2).unwrap();
        assert_relative_eq!(
            fr_c.curvature(1).unwrap(),
            fr_u.curvature(1).unwrap(),
            epsilon = 1e-7
        );
        assert_relative_eq!(
            fr_c.curvature(2).unwrap(),
            fr_u.curvature(2).unwrap(),
            epsilon = 1e-7
        );
        assert_relative_eq!(fr_u.speed, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn rigid_motion_equivariance() {
        use crate::sample::derive_seed;
        use rand::{Rng, SeedableRng};
        let c = helix();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(derive_seed(11, 4));
        for _ in 0..5 {
            let raw: DMatrix<f64> = DMatrix::from_fn(3, 3, |_, _| rng.gen_range(-1.0..1.0));
            let qr = raw.qr();
            let mut q = qr.q();
            if q.determinant() < 0.0 {
                let col = q.column(0) * -1.0;
                q.set_column(0, &col);
            }
            let b = DVector::from_fn(3, |_, _| rng.gen_range(-2.0..2.0));
            let moved = c.transformed(&q, &b);
            let fr = c.frenet(0.8).unwrap();
            let fr_m = moved.frenet(0.8).unwrap();
            assert_relative_eq!(
                fr.curvature(1).unwrap(),
                fr_m.curvature(1).unwrap(),
                epsilon = 1e-9
            );
            assert_relative_eq!(
                fr.curvature(2).unwrap(),
                fr_m.curvature(2).unwrap(),
                epsilon = 1e-9
            );
            for i in 0..3 {
                let rotated = &q * &fr.frame[i];
                assert!((&fr_m.frame[i] - rotated).norm() < 1e-9);
            }
        }
    }
}
