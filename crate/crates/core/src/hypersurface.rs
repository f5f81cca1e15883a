//! Parametric hypersurface patches in Euclidean n-space: tangent spaces,
//! the unit normal field, the shape operator, the normal image along a
//! surface curve, and the geodesic / asymptotic / line-of-curvature
//! classifiers for curves on the patch.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::curve::{Curve, CurveFn, EPS_REGULAR};
use crate::error::{Error, Result};
use crate::expr::{Bindings, Expr};
use crate::jet::Jet;
use crate::linalg::{cross_generalized_jets, dot_jets, smallest_singular_value, values_of};
use crate::sample::{interval_params, SamplePlan};
use crate::scalar::Scalar;

struct SurfaceData<F> {
    components: Vec<Expr>,
    vars: Vec<String>,
    domain: Vec<(F, F)>,
    /// `partials[i][j] = d components[i] / d vars[j]`, built once.
    partials: Vec<Vec<Expr>>,
}

/// An immersed patch `M: box in R^(n-1) -> R^n`. Cheap to clone.
pub struct Hypersurface<F> {
    data: Arc<SurfaceData<F>>,
}

impl<F> Clone for Hypersurface<F> {
    fn clone(&self) -> Self {
        Hypersurface {
            data: self.data.clone(),
        }
    }
}

impl<F: Scalar> Hypersurface<F> {
    pub fn new(components: Vec<Expr>, vars: Vec<String>, domain: Vec<(F, F)>) -> Result<Self> {
        let n = components.len();
        if n < 3 {
            return Err(Error::Precondition(
                "hypersurfaces need ambient dimension at least 3".to_string(),
            ));
        }
        if vars.len() != n - 1 || domain.len() != n - 1 {
            return Err(Error::Precondition(format!(
                "expected {} parameters for ambient dimension {n}",
                n - 1
            )));
        }
        for (i, c) in components.iter().enumerate() {
            for name in c.variables() {
                if !vars.contains(&name) {
                    return Err(Error::Precondition(format!(
                        "component {i} uses undeclared variable `{name}`"
                    )));
                }
            }
        }
        let partials = components
            .iter()
            .map(|c| vars.iter().map(|v| c.derivative(v)).collect())
            .collect();
        Ok(Hypersurface {
            data: Arc::new(SurfaceData {
                components,
                vars,
                domain,
                partials,
            }),
        })
    }

    /// Parse surface components from text; parameters are named by `vars`.
    pub fn parse(texts: &[&str], vars: &[&str], domain: Vec<(F, F)>) -> Result<Self> {
        let var_set = crate::expr::var_set(vars);
        let components = texts
            .iter()
            .map(|t| crate::expr::parse(t, &var_set))
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            components,
            vars.iter().map(|s| s.to_string()).collect(),
            domain,
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.data.components.len()
    }

    pub fn param_dim(&self) -> usize {
        self.data.vars.len()
    }

    pub fn domain(&self) -> &[(F, F)] {
        &self.data.domain
    }

    pub fn vars(&self) -> &[String] {
        &self.data.vars
    }

    pub fn components(&self) -> &[Expr] {
        &self.data.components
    }

    fn check_params(&self, u: &[F]) -> Result<()> {
        if u.len() != self.param_dim() {
            return Err(Error::Precondition(format!(
                "expected {} parameters, got {}",
                self.param_dim(),
                u.len()
            )));
        }
        Ok(())
    }

    /// Evaluate all components with one parameter seeded as the identity jet
    /// and the rest constant.
    fn component_jets_seeded(&self, u: &[F], seed: &[F], order: usize) -> Result<Vec<Jet<F>>> {
        let binds: Vec<(String, Jet<F>)> = self
            .data
            .vars
            .iter()
            .enumerate()
            .map(|(j, name)| {
                let mut jet = Jet::constant(u[j], order);
                if order >= 1 && seed[j] != F::zero() {
                    let mut coeffs = jet.coeffs().to_vec();
                    coeffs[1] = seed[j];
                    jet = Jet::from_coeffs(&coeffs);
                }
                (name.clone(), jet)
            })
            .collect();
        let b = Bindings::new(&binds);
        self.data
            .components
            .iter()
            .map(|c| c.eval_jet(&b))
            .collect()
    }

    pub fn position(&self, u: &[F]) -> Result<DVector<F>> {
        self.check_params(u)?;
        let seed = vec![F::zero(); self.param_dim()];
        let jets = self.component_jets_seeded(u, &seed, 0)?;
        Ok(values_of(&jets))
    }

    /// Jacobian `n x (n-1)`, column `j = dM/du_j`, via jets.
    pub fn jacobian(&self, u: &[F]) -> Result<DMatrix<F>> {
        self.check_params(u)?;
        let n = self.ambient_dim();
        let p = self.param_dim();
        let mut jac = DMatrix::zeros(n, p);
        for j in 0..p {
            let mut seed = vec![F::zero(); p];
            seed[j] = F::one();
            let jets = self.component_jets_seeded(u, &seed, 1)?;
            for i in 0..n {
                jac[(i, j)] = jets[i].derivative(1);
            }
        }
        let sigma_min = smallest_singular_value(&jac);
        if sigma_min < F::lit(EPS_REGULAR) {
            return Err(Error::RankDeficient {
                params: u.iter().map(|x| x.as_f64()).collect(),
                sigma_min: sigma_min.as_f64(),
            });
        }
        Ok(jac)
    }

    /// Outward-by-parameter-order unit normal: the normalized generalized
    /// cross product of the Jacobian columns.
    pub fn unit_normal(&self, u: &[F]) -> Result<DVector<F>> {
        let jac = self.jacobian(u)?;
        let cols: Vec<DVector<F>> = (0..self.param_dim())
            .map(|j| jac.column(j).clone_owned())
            .collect();
        let cross = crate::linalg::cross_generalized(&cols);
        let norm = cross.norm();
        if norm < F::lit(EPS_REGULAR) {
            return Err(Error::RankDeficient {
                params: u.iter().map(|x| x.as_f64()).collect(),
                sigma_min: norm.as_f64(),
            });
        }
        Ok(cross / norm)
    }

    /// Position, tangent basis and unit normal at `u`.
    pub fn surface_point(&self, u: &[F]) -> Result<SurfacePoint<F>> {
        let position = self.position(u)?;
        let jac = self.jacobian(u)?;
        let tangent_basis: Vec<DVector<F>> = (0..self.param_dim())
            .map(|j| jac.column(j).clone_owned())
            .collect();
        let cross = crate::linalg::cross_generalized(&tangent_basis);
        let norm = cross.norm();
        if norm < F::lit(EPS_REGULAR) {
            return Err(Error::RankDeficient {
                params: u.iter().map(|x| x.as_f64()).collect(),
                sigma_min: norm.as_f64(),
            });
        }
        Ok(SurfacePoint {
            params: u.to_vec(),
            position,
            tangent_basis,
            normal: cross / norm,
        })
    }

    /// All second partial derivatives `d2 M / du_j du_k` as ambient vectors,
    /// from order-2 jets: diagonal entries from single seeds, mixed entries
    /// by bilinear seeding of the parameter pair.
    pub fn second_derivatives(&self, u: &[F]) -> Result<Vec<Vec<DVector<F>>>> {
        self.check_params(u)?;
        let n = self.ambient_dim();
        let p = self.param_dim();
        // c2 coefficients for single-direction seeds
        let mut single = Vec::with_capacity(p);
        for j in 0..p {
            let mut seed = vec![F::zero(); p];
            seed[j] = F::one();
            let jets = self.component_jets_seeded(u, &seed, 2)?;
            single.push(DVector::from_iterator(n, jets.iter().map(|c| c.coeff(2))));
        }
        let two = F::lit(2.0);
        let mut out = vec![vec![DVector::zeros(n); p]; p];
        for j in 0..p {
            out[j][j] = &single[j] * two;
            for k in (j + 1)..p {
                let mut seed = vec![F::zero(); p];
                seed[j] = F::one();
                seed[k] = F::one();
                let jets = self.component_jets_seeded(u, &seed, 2)?;
                let pair = DVector::from_iterator(n, jets.iter().map(|c| c.coeff(2)));
                let mixed = pair - &single[j] - &single[k];
                out[j][k] = mixed.clone();
                out[k][j] = mixed;
            }
        }
        Ok(out)
    }

    /// First fundamental form `G = J^T J`.
    pub fn first_fundamental(&self, u: &[F]) -> Result<DMatrix<F>> {
        let jac = self.jacobian(u)?;
        Ok(jac.transpose() * jac)
    }

    /// Shape operator (matrix of `-dN` in the tangent basis), computed as
    /// `G^{-1} B` with `B_{jk} = <d2M/du_j du_k, N>`.
    pub fn shape_operator(&self, u: &[F]) -> Result<DMatrix<F>> {
        let jac = self.jacobian(u)?;
        let normal = self.unit_normal(u)?;
        let second = self.second_derivatives(u)?;
        let p = self.param_dim();
        let g = jac.transpose() * &jac;
        let mut b = DMatrix::zeros(p, p);
        for j in 0..p {
            for k in 0..p {
                b[(j, k)] = second[j][k].dot(&normal);
            }
        }
        let g_inv = g
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::RankDeficient {
                params: u.iter().map(|x| x.as_f64()).collect(),
                sigma_min: smallest_singular_value(&g).as_f64(),
            })?;
        Ok(g_inv * b)
    }

    /// Principal curvatures: eigenvalues of the shape operator, obtained
    /// from the symmetrized form `L^{-1} B L^{-T}` with `G = L L^T`.
    pub fn principal_curvatures(&self, u: &[F]) -> Result<Vec<F>> {
        let jac = self.jacobian(u)?;
        let normal = self.unit_normal(u)?;
        let second = self.second_derivatives(u)?;
        let p = self.param_dim();
        let g = jac.transpose() * &jac;
        let mut b = DMatrix::zeros(p, p);
        for j in 0..p {
            for k in 0..p {
                b[(j, k)] = second[j][k].dot(&normal);
            }
        }
        let chol = g.cholesky().ok_or_else(|| Error::RankDeficient {
            params: u.iter().map(|x| x.as_f64()).collect(),
            sigma_min: 0.0,
        })?;
        let l_inv = chol
            .l()
            .try_inverse()
            .expect("triangular factor invertible");
        let sym = &l_inv * b * l_inv.transpose();
        let mut eig: Vec<F> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(eig)
    }

    /// Christoffel symbols of the first kind,
    /// `Γ_{l,ij} = (1/2)(d_i g_{jl} + d_j g_{il} - d_l g_{ij})`,
    /// with the metric derivatives taken by jet-evaluating the Jacobian
    /// component trees along each parameter direction. Returns
    /// `(G, gamma)` with `gamma[l][(i, j)]`.
    pub fn metric_and_christoffel(&self, u: &[F]) -> Result<(DMatrix<F>, Vec<DMatrix<F>>)> {
        self.check_params(u)?;
        let n = self.ambient_dim();
        let p = self.param_dim();

        // jet-evaluate every partial-derivative tree with u_d seeded, for
        // each direction d: gives g_{jl} and d_d g_{jl}
        let mut g = DMatrix::zeros(p, p);
        let mut dg = vec![DMatrix::zeros(p, p); p];
        for d in 0..p {
            let binds: Vec<(String, Jet<F>)> = self
                .data
                .vars
                .iter()
                .enumerate()
                .map(|(j, name)| {
                    if j == d {
                        (name.clone(), Jet::variable(u[j], 1))
                    } else {
                        (name.clone(), Jet::constant(u[j], 1))
                    }
                })
                .collect();
            let bindings = Bindings::new(&binds);
            let mut cols: Vec<Vec<Jet<F>>> = vec![Vec::with_capacity(n); p];
            for i in 0..n {
                for j in 0..p {
                    cols[j].push(self.data.partials[i][j].eval_jet(&bindings)?);
                }
            }
            for j in 0..p {
                for l in j..p {
                    let dot = dot_jets(&cols[j], &cols[l]);
                    if d == 0 {
                        g[(j, l)] = dot.value();
                        g[(l, j)] = dot.value();
                    }
                    dg[d][(j, l)] = dot.derivative(1);
                    dg[d][(l, j)] = dg[d][(j, l)];
                }
            }
        }

        let half = F::lit(0.5);
        let mut gamma = vec![DMatrix::zeros(p, p); p];
        for l in 0..p {
            for i in 0..p {
                for j in 0..p {
                    gamma[l][(i, j)] = half * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                }
            }
        }
        Ok((g, gamma))
    }

    /// The patch `Q M + b`.
    pub fn transformed(&self, q: &DMatrix<F>, b: &DVector<F>) -> Result<Hypersurface<F>> {
        let n = self.ambient_dim();
        assert_eq!(q.nrows(), n);
        let mut components = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = Expr::constant(b[i].as_f64());
            for (j, comp) in self.data.components.iter().enumerate() {
                let term = Expr::constant(q[(i, j)].as_f64()).mul(comp.clone());
                acc = acc.add(term);
            }
            components.push(acc);
        }
        Hypersurface::new(components, self.data.vars.clone(), self.data.domain.clone())
    }

    /// The patch `s M`.
    pub fn scaled(&self, s: F) -> Result<Hypersurface<F>> {
        let n = self.ambient_dim();
        let q = DMatrix::from_diagonal(&DVector::from_element(n, s));
        self.transformed(&q, &DVector::zeros(n))
    }
}

/// Point data on a patch.
#[derive(Debug, Clone)]
pub struct SurfacePoint<F> {
    pub params: Vec<F>,
    pub position: DVector<F>,
    /// Jacobian columns (not orthonormalized).
    pub tangent_basis: Vec<DVector<F>>,
    pub normal: DVector<F>,
}

// ---------------------------------------------------------------------------
// curves on a surface

/// A curve in the parameter domain together with its induced ambient curve.
#[derive(Clone)]
pub struct SurfaceCurve<F> {
    surface: Hypersurface<F>,
    param: Curve<F>,
}

impl<F: Scalar> SurfaceCurve<F> {
    pub fn new(surface: Hypersurface<F>, param: Curve<F>) -> Result<Self> {
        if param.dim() != surface.param_dim() {
            return Err(Error::Precondition(format!(
                "parameter curve has dimension {}, surface expects {}",
                param.dim(),
                surface.param_dim()
            )));
        }
        Ok(SurfaceCurve { surface, param })
    }

    /// Parse a parameter-domain curve from expressions in `t`.
    pub fn parse(surface: Hypersurface<F>, texts: &[&str], domain: (F, F)) -> Result<Self> {
        let param = Curve::parse(texts, "t", domain)?;
        SurfaceCurve::new(surface, param)
    }

    pub fn surface(&self) -> &Hypersurface<F> {
        &self.surface
    }

    pub fn param_curve(&self) -> &Curve<F> {
        &self.param
    }

    pub fn domain(&self) -> (F, F) {
        self.param.domain()
    }

    /// The induced ambient curve `t ↦ M(u(t))`.
    pub fn ambient_curve(&self) -> Curve<F> {
        Curve::from_fn(
            Arc::new(ComposedCurve {
                surface: self.surface.clone(),
                param: self.param.clone(),
            }),
            self.param.domain(),
        )
    }

    /// The normal image `t ↦ N(u(t))` on the unit sphere.
    pub fn gauss_curve(&self) -> Curve<F> {
        Curve::from_fn(
            Arc::new(NormalAlongCurve {
                surface: self.surface.clone(),
                param: self.param.clone(),
            }),
            self.param.domain(),
        )
    }

    fn classifier_samples(&self, plan: &SamplePlan) -> Vec<F> {
        let (a, b) = self.param.domain();
        interval_params(a, b, plan)
    }

    /// Geodesic test: at every sample the tangential part of the unit-speed
    /// acceleration must vanish. Returns the verdict and the worst residual.
    pub fn is_geodesic(&self, plan: &SamplePlan, tol: F) -> Result<(bool, F)> {
        let ambient = self.ambient_curve();
        let gauss = self.gauss_curve();
        let mut worst = F::zero();
        for t in self.classifier_samples(plan) {
            let d = ambient.derivatives(t, 2)?;
            let speed_sq = d[1].norm_squared();
            if speed_sq.sqrt() < F::lit(EPS_REGULAR) {
                return Err(Error::NonRegular {
                    t: t.as_f64(),
                    speed: speed_sq.sqrt().as_f64(),
                });
            }
            // unit-speed acceleration
            let sigma2 = &d[2] / speed_sq - &d[1] * (d[2].dot(&d[1]) / (speed_sq * speed_sq));
            let n = gauss.position(t)?;
            let tangential = &sigma2 - &n * sigma2.dot(&n);
            worst = worst.max(tangential.norm());
        }
        Ok((worst <= tol, worst))
    }

    /// Asymptotic test: the normal curvature `<dN/dt, α'> / |α'|^2` must
    /// vanish at every sample.
    pub fn is_asymptotic(&self, plan: &SamplePlan, tol: F) -> Result<(bool, F)> {
        let ambient = self.ambient_curve();
        let gauss = self.gauss_curve();
        let mut worst = F::zero();
        for t in self.classifier_samples(plan) {
            let d = ambient.derivatives(t, 1)?;
            let speed_sq = d[1].norm_squared();
            if speed_sq.sqrt() < F::lit(EPS_REGULAR) {
                return Err(Error::NonRegular {
                    t: t.as_f64(),
                    speed: speed_sq.sqrt().as_f64(),
                });
            }
            let ng = gauss.derivatives(t, 1)?;
            let residual = ng[1].dot(&d[1]).abs() / speed_sq;
            worst = worst.max(residual);
        }
        Ok((worst <= tol, worst))
    }

    /// Line-of-curvature test: `dN/dt` must stay parallel to `α'`
    /// (`||dN/dt - μ α'|| <= tol |α'|` with the least-squares `μ`).
    pub fn is_line_of_curvature(&self, plan: &SamplePlan, tol: F) -> Result<(bool, F)> {
        let ambient = self.ambient_curve();
        let gauss = self.gauss_curve();
        let mut worst = F::zero();
        for t in self.classifier_samples(plan) {
            let d = ambient.derivatives(t, 1)?;
            let speed_sq = d[1].norm_squared();
            let speed = speed_sq.sqrt();
            if speed < F::lit(EPS_REGULAR) {
                return Err(Error::NonRegular {
                    t: t.as_f64(),
                    speed: speed.as_f64(),
                });
            }
            let ng = gauss.derivatives(t, 1)?;
            let mu = ng[1].dot(&d[1]) / speed_sq;
            let residual = (&ng[1] - &d[1] * mu).norm() / speed;
            worst = worst.max(residual);
        }
        Ok((worst <= tol, worst))
    }
}

struct ComposedCurve<F> {
    surface: Hypersurface<F>,
    param: Curve<F>,
}

impl<F: Scalar> CurveFn<F> for ComposedCurve<F> {
    fn dim(&self) -> usize {
        self.surface.ambient_dim()
    }

    fn eval_jets(&self, t: F, order: usize) -> Result<Vec<Jet<F>>> {
        let u_jets = self.param.eval_jets(t, order)?;
        let binds: Vec<(String, Jet<F>)> =
            self.surface.vars().iter().cloned().zip(u_jets).collect();
        let b = Bindings::new(&binds);
        self.surface
            .components()
            .iter()
            .map(|c| c.eval_jet(&b))
            .collect()
    }
}

struct NormalAlongCurve<F> {
    surface: Hypersurface<F>,
    param: Curve<F>,
}

impl<F: Scalar> CurveFn<F> for NormalAlongCurve<F> {
    fn dim(&self) -> usize {
        self.surface.ambient_dim()
    }

    fn eval_jets(&self, t: F, order: usize) -> Result<Vec<Jet<F>>> {
        let u_jets = self.param.eval_jets(t, order)?;
        let binds: Vec<(String, Jet<F>)> =
            self.surface.vars().iter().cloned().zip(u_jets).collect();
        let b = Bindings::new(&binds);
        let n = self.surface.ambient_dim();
        let p = self.surface.param_dim();
        let mut cols: Vec<Vec<Jet<F>>> = vec![Vec::with_capacity(n); p];
        for i in 0..n {
            for j in 0..p {
                cols[j].push(self.surface.data.partials[i][j].eval_jet(&b)?);
            }
        }
        let cross = cross_generalized_jets(&cols);
        let norm_sq = dot_jets(&cross, &cross);
        let norm_val = norm_sq.value().sqrt();
        if norm_val < F::lit(EPS_REGULAR) {
            return Err(Error::RankDeficient {
                params: vec![t.as_f64()],
                sigma_min: norm_val.as_f64(),
            });
        }
        let norm_jet = norm_sq
            .sqrt()
            .map_err(|e| Error::domain("normal norm", e.message()))?;
        cross
            .iter()
            .map(|c| {
                c.div(&norm_jet)
                    .map_err(|e| Error::domain("unit normal", e.message()))
            })
            .collect()
    }
}
