//! The space of directions that make a constant angle with a hypersurface's
//! tangent planes, detected numerically: sample the unit normal field, take
//! the SVD null space of the normal differences, then re-verify the fit on
//! an independent random sample set before returning it.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hypersurface::Hypersurface;
use crate::linalg::{canonical_sign, null_space};
use crate::sample::{box_points, SamplePlan};
use crate::scalar::Scalar;

/// Anything that exposes a unit normal field over a parameter box. The
/// production implementation is [`Hypersurface`]; tests substitute corrupted
/// fields to exercise the re-verification path.
pub trait NormalSource<F>: Sync {
    fn ambient_dim(&self) -> usize;
    fn domain(&self) -> Vec<(F, F)>;
    fn normal(&self, u: &[F]) -> Result<DVector<F>>;
}

impl<F: Scalar> NormalSource<F> for Hypersurface<F> {
    fn ambient_dim(&self) -> usize {
        self.ambient_dim()
    }

    fn domain(&self) -> Vec<(F, F)> {
        self.domain().to_vec()
    }

    fn normal(&self, u: &[F]) -> Result<DVector<F>> {
        self.unit_normal(u)
    }
}

/// Detected space of constant-angle directions.
#[derive(Debug, Clone)]
pub struct HelixDirectionSpace<F> {
    pub ambient_dim: usize,
    /// Orthonormal, sign-canonicalized basis directions.
    pub basis: Vec<DVector<F>>,
    /// Signed constants `c_j = <N, d_j>`; flipping the patch orientation
    /// negates all of them.
    pub constants: Vec<F>,
    /// Angles against the normal, `θ_j = arccos(c_j)`.
    pub angles: Vec<F>,
    /// Worst deviation from the constant per direction, over both the fit
    /// and the verification samples.
    pub residuals: Vec<F>,
    /// Singular-value spectrum behind the rank decision, descending.
    pub sv_spectrum: Vec<F>,
    pub tolerance: F,
    pub seed: u64,
}

impl<F: Scalar> HelixDirectionSpace<F> {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Trivial space (rank 0) placeholder.
    pub fn trivial(ambient_dim: usize, tolerance: F, seed: u64) -> Self {
        HelixDirectionSpace {
            ambient_dim,
            basis: Vec::new(),
            constants: Vec::new(),
            angles: Vec::new(),
            residuals: Vec::new(),
            sv_spectrum: Vec::new(),
            tolerance,
            seed,
        }
    }
}

fn sample_normals<F: Scalar>(
    source: &dyn NormalSource<F>,
    points: &[Vec<F>],
) -> Result<Vec<DVector<F>>> {
    points.iter().map(|u| source.normal(u)).collect()
}

/// Compute the space of constant-angle directions of `source`.
///
/// Uses the sample plan's low-discrepancy + random points for the fit, then
/// an equally large, independently seeded pure-random set for verification;
/// a verification residual above `10 * tol` is reported as
/// [`Error::VerificationFailed`] (typically under-sampling or an
/// inconsistent normal field).
pub fn helix_directions<F: Scalar>(
    source: &dyn NormalSource<F>,
    plan: &SamplePlan,
    tol: F,
) -> Result<HelixDirectionSpace<F>> {
    let n = source.ambient_dim();
    let domain = source.domain();
    let points = box_points(&domain, plan);
    if points.len() < n + 1 {
        return Err(Error::Precondition(format!(
            "need at least {} samples for ambient dimension {n}",
            n + 1
        )));
    }
    let normals = sample_normals(source, &points)?;

    let mut rows = DMatrix::zeros(normals.len() - 1, n);
    for (r, nv) in normals.iter().skip(1).enumerate() {
        rows.set_row(r, &(nv - &normals[0]).transpose());
    }
    let ns = null_space(&rows, tol, tol);
    let basis: Vec<DVector<F>> = ns.basis.into_iter().map(canonical_sign).collect();

    let mut constants = Vec::with_capacity(basis.len());
    let mut residuals = Vec::with_capacity(basis.len());
    for d in &basis {
        let mut mean = F::zero();
        for nv in &normals {
            mean += nv.dot(d);
        }
        mean /= F::from_usize(normals.len()).unwrap();
        let mut worst = F::zero();
        for nv in &normals {
            worst = worst.max((nv.dot(d) - mean).abs());
        }
        constants.push(mean);
        residuals.push(worst);
    }

    // independent re-verification on fresh, purely random samples
    if !basis.is_empty() {
        let check_plan =
            SamplePlan::new(0, plan.total().max(2 * (n + 1)), 0).reseeded(plan.seed ^ 0x7e11_c0de);
        let check_points = box_points(&domain, &check_plan);
        let check_normals = sample_normals(source, &check_points)?;
        let limit = F::lit(10.0) * tol;
        for (j, d) in basis.iter().enumerate() {
            let mut worst = F::zero();
            for nv in &check_normals {
                worst = worst.max((nv.dot(d) - constants[j]).abs());
            }
            if worst > limit {
                return Err(Error::VerificationFailed {
                    residual: worst.as_f64(),
                    limit: limit.as_f64(),
                });
            }
            residuals[j] = residuals[j].max(worst);
        }
    }

    let angles = constants
        .iter()
        .map(|&c| c.min(F::one()).max(-F::one()).acos())
        .collect();

    Ok(HelixDirectionSpace {
        ambient_dim: n,
        basis,
        constants,
        angles,
        residuals,
        sv_spectrum: ns.singular_values,
        tolerance: tol,
        seed: plan.seed,
    })
}

/// Rank classification: a patch counts as a constant-angle (helix) surface
/// when the direction space is at least one-dimensional; rank 0 does not.
pub fn classify_strong_r_helix<F: Scalar>(
    source: &dyn NormalSource<F>,
    plan: &SamplePlan,
    tol: F,
) -> Result<(bool, usize, HelixDirectionSpace<F>)> {
    let space = helix_directions(source, plan, tol)?;
    let r = space.rank();
    Ok((r >= 1, r, space))
}

/// Result of testing one fixed direction.
#[derive(Debug, Clone)]
pub struct HelixAngle<F> {
    pub is_constant: bool,
    /// Angle against the normal (the complement of the angle with the
    /// tangent planes).
    pub angle: F,
    /// Signed mean of `<N, d>`.
    pub constant: F,
    pub residual: F,
    /// Set when the sampled points do not actually spread over the patch
    /// (zero-volume parameter box), which makes constancy vacuous.
    pub degenerate_sampling: bool,
}

/// Test whether one unit direction `d` makes a constant angle with the
/// normal field.
pub fn helix_angle<F: Scalar>(
    source: &dyn NormalSource<F>,
    d: &DVector<F>,
    plan: &SamplePlan,
    tol: F,
) -> Result<HelixAngle<F>> {
    if (d.norm() - F::one()).abs() > F::lit(1e-9) {
        return Err(Error::Precondition(
            "direction must be a unit vector".to_string(),
        ));
    }
    let domain = source.domain();
    let points = box_points(&domain, plan);
    let normals = sample_normals(source, &points)?;
    let mut mean = F::zero();
    for nv in &normals {
        mean += nv.dot(d);
    }
    mean /= F::from_usize(normals.len()).unwrap();
    let mut residual = F::zero();
    for nv in &normals {
        residual = residual.max((nv.dot(d) - mean).abs());
    }
    let degenerate_sampling = domain.iter().all(|&(lo, hi)| hi - lo == F::zero());
    Ok(HelixAngle {
        is_constant: residual <= tol,
        angle: mean.min(F::one()).max(-F::one()).acos(),
        constant: mean,
        residual,
        degenerate_sampling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, PI};
    use std::sync::atomic::{AtomicUsize, Ordering};

    fn plan() -> SamplePlan {
        SamplePlan::default()
    }

    fn hyperplane() -> Hypersurface<f64> {
        Hypersurface::parse(
            &["u1", "u2", "0"],
            &["u1", "u2"],
            vec![(-1.0, 1.0), (-1.0, 1.0)],
        )
        .unwrap()
    }

    fn cylinder() -> Hypersurface<f64> {
        Hypersurface::parse(
            &["cos(u1)", "sin(u1)", "u2"],
            &["u1", "u2"],
            vec![(0.0, 2.0 * PI), (-1.0, 1.0)],
        )
        .unwrap()
    }

    fn helicoid() -> Hypersurface<f64> {
        Hypersurface::parse(
            &["u1*cos(u2)", "u1*sin(u2)", "u2"],
            &["u1", "u2"],
            vec![(0.3, 1.5), (0.0, 2.0 * PI)],
        )
        .unwrap()
    }

    #[test]
    fn hyperplane_has_full_space() {
        let h = helix_directions(&hyperplane(), &plan(), 1e-6).unwrap();
        assert_eq!(h.rank(), 3);
        // e3 direction has constant +-1, the tangent ones 0
        assert!(h.constants.iter().any(|c| (c.abs() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn sphere_patch_has_trivial_space() {
        let s = Hypersurface::parse(
            &["cos(u1)*cos(u2)", "sin(u1)*cos(u2)", "sin(u2)"],
            &["u1", "u2"],
            vec![(0.2, 2.8), (-1.1, 1.1)],
        )
        .unwrap();
        let h = helix_directions(&s, &plan(), 1e-6).unwrap();
        assert_eq!(h.rank(), 0);
    }

    #[test]
    fn cylinder_axis_is_the_direction_space() {
        let h = helix_directions(&cylinder(), &plan(), 1e-6).unwrap();
        assert_eq!(h.rank(), 1);
        let d = &h.basis[0];
        assert_relative_eq!(d[2].abs(), 1.0, epsilon = 1e-10);
        assert!(h.constants[0].abs() < 1e-10);
        assert_relative_eq!(h.angles[0], FRAC_PI_2, epsilon = 1e-9);
        assert!(h.residuals[0] < 1e-9);
    }

    #[test]
    fn cone_axis_with_constant_cosine() {
        let g: f64 = PI / 6.0;
        let surf = Hypersurface::parse(
            &[
                &format!("u1*{}*cos(u2)", g.sin()),
                &format!("u1*{}*sin(u2)", g.sin()),
                &format!("u1*{}", g.cos()),
            ],
            &["u1", "u2"],
            vec![(0.2, 2.0), (0.0, 2.0 * PI)],
        )
        .unwrap();
        let h = helix_directions(&surf, &plan(), 1e-6).unwrap();
        assert_eq!(h.rank(), 1);
        assert_relative_eq!(h.basis[0][2].abs(), 1.0, epsilon = 1e-10);
        assert_relative_eq!(h.constants[0].abs(), g.sin(), epsilon = 1e-10);
    }

    #[test]
    fn generalized_cylinder_in_e4_has_rank_two() {
        let s = Hypersurface::parse(
            &["cos(u1)", "sin(u1)", "u2", "u3"],
            &["u1", "u2", "u3"],
            vec![(0.0, 2.0 * PI), (-1.0, 1.0), (-1.0, 1.0)],
        )
        .unwrap();
        let h = helix_directions(&s, &plan(), 1e-6).unwrap();
        assert_eq!(h.rank(), 2);
        for d in &h.basis {
            assert!(d[0].abs() < 1e-10 && d[1].abs() < 1e-10);
        }
    }

    #[test]
    fn helicoid_is_not_a_helix_surface() {
        let (is_helix, r, _) = classify_strong_r_helix(&helicoid(), &plan(), 1e-6).unwrap();
        assert!(!is_helix);
        assert_eq!(r, 0);
    }

    #[test]
    fn classification_of_cylinder_and_hyperplane() {
        let (is_helix, r, h) = classify_strong_r_helix(&cylinder(), &plan(), 1e-6).unwrap();
        assert!(is_helix);
        assert_eq!(r, 1);
        assert_eq!(h.rank(), 1);
        let (is_helix, r, _) = classify_strong_r_helix(&hyperplane(), &plan(), 1e-6).unwrap();
        assert!(is_helix);
        assert_eq!(r, 3);
    }

    #[test]
    fn helix_angle_on_cylinder() {
        let e3 = DVector::from_vec(vec![0.0, 0.0, 1.0]);
        let a = helix_angle(&cylinder(), &e3, &plan(), 1e-8).unwrap();
        assert!(a.is_constant);
        assert!(a.constant.abs() < 1e-12);
        assert!(!a.degenerate_sampling);

        let e1 = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        let a = helix_angle(&cylinder(), &e1, &plan(), 1e-8).unwrap();
        assert!(!a.is_constant);
    }

    #[test]
    fn single_point_domain_is_flagged_degenerate() {
        let s = Hypersurface::parse(
            &["cos(u1)", "sin(u1)", "u2"],
            &["u1", "u2"],
            vec![(0.5, 0.5), (0.2, 0.2)],
        )
        .unwrap();
        let d = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        let a = helix_angle(&s, &d, &plan(), 1e-8).unwrap();
        assert!(a.is_constant); // vacuously
        assert!(a.degenerate_sampling);
    }

    #[test]
    fn subspace_property_of_detected_space() {
        use rand::{Rng, SeedableRng};
        let s = Hypersurface::parse(
            &["cos(u1)", "sin(u1)", "u2", "u3"],
            &["u1", "u2", "u3"],
            vec![(0.0, 2.0 * PI), (-1.0, 1.0), (-1.0, 1.0)],
        )
        .unwrap();
        let h = helix_directions(&s, &plan(), 1e-6).unwrap();
        assert_eq!(h.rank(), 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..8 {
            let a: f64 = rng.gen_range(-2.0..2.0);
            let b: f64 = rng.gen_range(-2.0..2.0);
            let combo = (&h.basis[0] * a + &h.basis[1] * b).normalize();
            let res = helix_angle(&s, &combo, &plan(), 1e-6).unwrap();
            assert!(res.is_constant, "residual {}", res.residual);
        }
    }

    #[test]
    fn rotation_equivariance_and_scale_invariance() {
        use crate::linalg::principal_angles;
        use rand::{Rng, SeedableRng};
        let s = cylinder();
        let base = helix_directions(&s, &plan(), 1e-6).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let raw: DMatrix<f64> = DMatrix::from_fn(3, 3, |_, _| rng.gen_range(-1.0..1.0));
        let mut q = raw.qr().q();
        if q.determinant() < 0.0 {
            let col = q.column(0) * -1.0;
            q.set_column(0, &col);
        }
        let rotated = s.transformed(&q, &DVector::zeros(3)).unwrap();
        let h_rot = helix_directions(&rotated, &plan(), 1e-6).unwrap();
        assert_eq!(h_rot.rank(), base.rank());
        let expected: Vec<DVector<f64>> = base.basis.iter().map(|d| &q * d).collect();
        let angles = principal_angles(&expected, &h_rot.basis);
        assert!(angles.iter().all(|&a| a < 1e-6));

        let scaled = s.scaled(3.7).unwrap();
        let h_scaled = helix_directions(&scaled, &plan(), 1e-6).unwrap();
        let angles = principal_angles(&base.basis, &h_scaled.basis);
        assert!(angles.iter().all(|&a| a < 1e-8));
    }

    #[test]
    fn determinism_given_seed() {
        let h1 = helix_directions(&cylinder(), &plan(), 1e-6).unwrap();
        let h2 = helix_directions(&cylinder(), &plan(), 1e-6).unwrap();
        assert_eq!(h1.basis[0], h2.basis[0]);
        assert_eq!(h1.constants[0].to_bits(), h2.constants[0].to_bits());
    }

    /// Normal field that silently flips sign after a number of queries;
    /// simulates a corrupted pipeline between fit and verification.
    struct CorruptedNormals {
        inner: Hypersurface<f64>,
        calls: AtomicUsize,
        flip_after: usize,
    }

    impl NormalSource<f64> for CorruptedNormals {
        fn ambient_dim(&self) -> usize {
            self.inner.ambient_dim()
        }
        fn domain(&self) -> Vec<(f64, f64)> {
            self.inner.domain().to_vec()
        }
        fn normal(&self, u: &[f64]) -> crate::error::Result<DVector<f64>> {
            let k = self.calls.fetch_add(1, Ordering::SeqCst);
            let n = self.inner.unit_normal(u)?;
            Ok(if k >= self.flip_after { -n } else { n })
        }
    }

    #[test]
    fn corrupted_normals_fail_reverification() {
        let g: f64 = PI / 6.0;
        let cone = Hypersurface::parse(
            &[
                &format!("u1*{}*cos(u2)", g.sin()),
                &format!("u1*{}*sin(u2)", g.sin()),
                &format!("u1*{}", g.cos()),
            ],
            &["u1", "u2"],
            vec![(0.2, 2.0), (0.0, 2.0 * PI)],
        )
        .unwrap();
        let p = plan();
        let corrupted = CorruptedNormals {
            inner: cone,
            calls: AtomicUsize::new(0),
            // clean through the fit pass, corrupted for re-verification
            flip_after: p.total(),
        };
        let err = helix_directions(&corrupted, &p, 1e-6).unwrap_err();
        assert!(matches!(err, Error::VerificationFailed { .. }), "{err:?}");
    }
}
