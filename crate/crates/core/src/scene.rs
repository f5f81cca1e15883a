//! Scene files: JSON descriptions of a surface (explicit components or a
//! gallery reference), named analysis curves, and sampling configuration.
//! Validation errors carry a JSON pointer to the offending field.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::expr::var_set;
use crate::geodesic::{integrate_geodesic, GeodesicTrace};
use crate::hypersurface::{Hypersurface, SurfaceCurve};
use crate::sample::SamplePlan;
use crate::scalar::Scalar;
use crate::theorems::{CheckConfig, SuiteInput};

/// Domain shrink applied on the sides that a scene declares singular.
pub const SINGULAR_MARGIN: f64 = 1e-3;

/// Supported scene schema version.
pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceSpec {
    Gallery {
        name: String,
        params: BTreeMap<String, GalleryParam>,
    },
    Explicit {
        components: Vec<String>,
        domain: Vec<(f64, f64)>,
        /// `(parameter index, shrink lower side?)`; the named side moves
        /// inward by [`SINGULAR_MARGIN`].
        singular: Vec<(usize, bool)>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum GalleryParam {
    Number(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurveSpec {
    Param {
        name: String,
        components: Vec<String>,
        domain: (f64, f64),
    },
    Geodesic {
        name: String,
        start: Vec<f64>,
        direction: Vec<f64>,
        length: f64,
        step: f64,
    },
}

impl CurveSpec {
    pub fn name(&self) -> &str {
        match self {
            CurveSpec::Param { name, .. } | CurveSpec::Geodesic { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConfig {
    pub samples: usize,
    pub random_samples: usize,
    pub tol: f64,
    pub hypothesis_tol: f64,
    pub seed: u64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            samples: 64,
            random_samples: 16,
            tol: 1e-6,
            hypothesis_tol: 1e-8,
            seed: 0x5eed,
        }
    }
}

/// A parsed and validated scene.
#[derive(Debug, Clone)]
pub struct Scene {
    pub name: Option<String>,
    pub dim: usize,
    pub surface: SurfaceSpec,
    pub curves: Vec<CurveSpec>,
    pub analysis: AnalysisConfig,
}

impl Scene {
    /// Build the surface at the scene's declared ambient dimension.
    pub fn surface<F: Scalar>(&self) -> Result<Hypersurface<F>> {
        match &self.surface {
            SurfaceSpec::Gallery { name, params } => gallery_surface(name, params),
            SurfaceSpec::Explicit {
                components,
                domain,
                singular,
            } => {
                let mut shrunk = domain.clone();
                for &(idx, lower) in singular {
                    if lower {
                        shrunk[idx].0 += SINGULAR_MARGIN;
                    } else {
                        shrunk[idx].1 -= SINGULAR_MARGIN;
                    }
                }
                let vars: Vec<String> = (1..components.len()).map(|i| format!("u{i}")).collect();
                let refs: Vec<&str> = components.iter().map(|s| s.as_str()).collect();
                let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
                Hypersurface::parse(
                    &refs,
                    &var_refs,
                    shrunk
                        .iter()
                        .map(|&(a, b)| (F::lit(a), F::lit(b)))
                        .collect(),
                )
            }
        }
    }

    /// The curve specs to analyze: the scene's own, or the gallery defaults
    /// when the scene names a gallery surface and lists none.
    pub fn curve_specs(&self) -> Vec<CurveSpec> {
        if !self.curves.is_empty() {
            return self.curves.clone();
        }
        match &self.surface {
            SurfaceSpec::Gallery { name, params } => gallery_default_curves(name, params),
            SurfaceSpec::Explicit { .. } => Vec::new(),
        }
    }

    pub fn find_curve(&self, name: &str) -> Result<CurveSpec> {
        self.curve_specs()
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| Error::scene("/curves", format!("no curve named `{name}`")))
    }

    /// Instantiate one curve spec against the surface.
    pub fn build_surface_curve<F: Scalar>(
        &self,
        surface: &Hypersurface<F>,
        spec: &CurveSpec,
    ) -> Result<SurfaceCurve<F>> {
        match spec {
            CurveSpec::Param {
                components, domain, ..
            } => {
                let refs: Vec<&str> = components.iter().map(|s| s.as_str()).collect();
                let param = Curve::parse(&refs, "t", (F::lit(domain.0), F::lit(domain.1)))?;
                SurfaceCurve::new(surface.clone(), param)
            }
            CurveSpec::Geodesic { .. } => {
                let trace = self.build_geodesic(surface, spec)?;
                crate::geodesic::trace_to_surface_curve(&trace)
            }
        }
    }

    pub fn build_geodesic<F: Scalar>(
        &self,
        surface: &Hypersurface<F>,
        spec: &CurveSpec,
    ) -> Result<GeodesicTrace<F>> {
        match spec {
            CurveSpec::Geodesic {
                start,
                direction,
                length,
                step,
                ..
            } => {
                let u0: Vec<F> = start.iter().map(|&x| F::lit(x)).collect();
                let v0: Vec<F> = direction.iter().map(|&x| F::lit(x)).collect();
                integrate_geodesic(surface, &u0, &v0, F::lit(*length), F::lit(*step))
            }
            CurveSpec::Param { name, .. } => Err(Error::Precondition(format!(
                "curve `{name}` is not a geodesic spec"
            ))),
        }
    }

    pub fn sample_plan(&self) -> SamplePlan {
        SamplePlan::new(
            self.analysis.samples,
            self.analysis.random_samples,
            self.analysis.seed,
        )
    }

    pub fn check_config<F: Scalar>(&self) -> CheckConfig<F> {
        CheckConfig {
            plan: self.sample_plan(),
            tol: F::lit(self.analysis.tol),
            tol_hyp: F::lit(self.analysis.hypothesis_tol),
        }
    }

    /// Integrate every geodesic spec and instantiate every parametric curve.
    pub fn suite_input<F: Scalar>(&self, surface: &Hypersurface<F>) -> Result<SuiteInput<F>> {
        let mut geodesics = Vec::new();
        let mut curves = Vec::new();
        for spec in self.curve_specs() {
            match &spec {
                CurveSpec::Geodesic { name, .. } => {
                    geodesics.push((name.clone(), self.build_geodesic(surface, &spec)?));
                }
                CurveSpec::Param { name, .. } => {
                    curves.push((name.clone(), self.build_surface_curve(surface, &spec)?));
                }
            }
        }
        Ok(SuiteInput { geodesics, curves })
    }
}

// ---------------------------------------------------------------------------
// JSON parsing with pointer-tracked errors

pub fn load_scene(path: &std::path::Path) -> Result<Scene> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::scene("", format!("cannot read `{}`: {e}", path.display())))?;
    parse_scene(&text)
}

pub fn parse_scene(text: &str) -> Result<Scene> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::scene("", format!("invalid JSON: {e}")))?;
    scene_from_value(&value)
}

fn want_object<'a>(v: &'a Value, ptr: &str) -> Result<&'a serde_json::Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::scene(ptr, "expected an object"))
}

fn want_f64(v: &Value, ptr: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::scene(ptr, "expected a number"))
}

fn want_u64(v: &Value, ptr: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::scene(ptr, "expected a non-negative integer"))
}

fn want_str<'a>(v: &'a Value, ptr: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::scene(ptr, "expected a string"))
}

fn want_array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::scene(ptr, "expected an array"))
}

fn scene_from_value(value: &Value) -> Result<Scene> {
    let obj = want_object(value, "")?;
    if let Some(schema) = obj.get("schema") {
        let v = want_u64(schema, "/schema")?;
        if v != SCHEMA_VERSION {
            return Err(Error::scene(
                "/schema",
                format!("unsupported schema version {v}, expected {SCHEMA_VERSION}"),
            ));
        }
    }
    let name = match obj.get("name") {
        Some(v) => Some(want_str(v, "/name")?.to_string()),
        None => None,
    };
    let dim = want_u64(
        obj.get("dim")
            .ok_or_else(|| Error::scene("/dim", "missing ambient dimension"))?,
        "/dim",
    )? as usize;
    if !(3..=6).contains(&dim) {
        return Err(Error::scene("/dim", "ambient dimension must be 3..=6"));
    }

    let surface_val = obj
        .get("surface")
        .ok_or_else(|| Error::scene("/surface", "missing surface"))?;
    let surface = surface_from_value(surface_val, dim)?;

    let mut curves = Vec::new();
    if let Some(curves_val) = obj.get("curves") {
        let arr = want_array(curves_val, "/curves")?;
        for (i, cv) in arr.iter().enumerate() {
            curves.push(curve_from_value(cv, &format!("/curves/{i}"), dim)?);
        }
        let mut names: Vec<&str> = curves.iter().map(|c| c.name()).collect();
        names.sort_unstable();
        names.dedup();
        if names.len() != curves.len() {
            return Err(Error::scene("/curves", "curve names must be unique"));
        }
    }

    let mut analysis = AnalysisConfig::default();
    if let Some(av) = obj.get("analysis") {
        let a = want_object(av, "/analysis")?;
        if let Some(v) = a.get("samples") {
            analysis.samples = want_u64(v, "/analysis/samples")? as usize;
        }
        if let Some(v) = a.get("random_samples") {
            analysis.random_samples = want_u64(v, "/analysis/random_samples")? as usize;
        }
        if let Some(v) = a.get("tol") {
            analysis.tol = want_f64(v, "/analysis/tol")?;
        }
        if let Some(v) = a.get("hypothesis_tol") {
            analysis.hypothesis_tol = want_f64(v, "/analysis/hypothesis_tol")?;
        }
        if let Some(v) = a.get("seed") {
            analysis.seed = want_u64(v, "/analysis/seed")?;
        }
    }

    let scene = Scene {
        name,
        dim,
        surface,
        curves,
        analysis,
    };
    // expressions and gallery names validated eagerly
    let surface = scene.surface::<f64>()?;
    if surface.ambient_dim() != dim {
        return Err(Error::scene(
            "/dim",
            format!(
                "scene declares dim {dim} but the surface lives in dimension {}",
                surface.ambient_dim()
            ),
        ));
    }
    for spec in scene.curve_specs() {
        if let CurveSpec::Param {
            components, domain, ..
        } = &spec
        {
            if components.len() != dim - 1 {
                return Err(Error::scene(
                    "/curves",
                    format!(
                        "curve `{}` has {} components, surface expects {}",
                        spec.name(),
                        components.len(),
                        dim - 1
                    ),
                ));
            }
            if domain.0 >= domain.1 {
                return Err(Error::scene(
                    "/curves",
                    format!("curve `{}` has an empty domain", spec.name()),
                ));
            }
            for c in components {
                crate::expr::parse(c, &var_set(&["t"]))?;
            }
        }
        if let CurveSpec::Geodesic {
            start, direction, ..
        } = &spec
        {
            if start.len() != dim - 1 || direction.len() != dim - 1 {
                return Err(Error::scene(
                    "/curves",
                    format!(
                        "geodesic `{}` start/direction must have {} entries",
                        spec.name(),
                        dim - 1
                    ),
                ));
            }
        }
    }
    Ok(scene)
}

fn surface_from_value(v: &Value, dim: usize) -> Result<SurfaceSpec> {
    let obj = want_object(v, "/surface")?;
    let has_gallery = obj.contains_key("gallery");
    let has_components = obj.contains_key("components");
    if has_gallery == has_components {
        return Err(Error::scene(
            "/surface",
            "exactly one of `gallery` or `components` is required",
        ));
    }
    if has_gallery {
        let name = want_str(&obj["gallery"], "/surface/gallery")?.to_string();
        if !GALLERY.iter().any(|g| g.name == name) {
            return Err(Error::scene(
                "/surface/gallery",
                format!("unknown gallery name `{name}`"),
            ));
        }
        let mut params = BTreeMap::new();
        if let Some(pv) = obj.get("params") {
            let pobj = want_object(pv, "/surface/params")?;
            for (k, val) in pobj {
                let ptr = format!("/surface/params/{k}");
                let p = match val {
                    Value::Number(_) => GalleryParam::Number(want_f64(val, &ptr)?),
                    Value::String(s) => GalleryParam::Text(s.clone()),
                    _ => return Err(Error::scene(&ptr, "expected a number or string")),
                };
                params.insert(k.clone(), p);
            }
        }
        // dimension consistency is checked when the surface is built
        Ok(SurfaceSpec::Gallery { name, params })
    } else {
        let comps = want_array(&obj["components"], "/surface/components")?;
        if comps.len() != dim {
            return Err(Error::scene(
                "/surface/components",
                format!(
                    "expected {dim} components for dim = {dim}, got {}",
                    comps.len()
                ),
            ));
        }
        let mut components = Vec::with_capacity(comps.len());
        let vars: Vec<String> = (1..dim).map(|i| format!("u{i}")).collect();
        let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let vset = var_set(&var_refs);
        for (i, cv) in comps.iter().enumerate() {
            let ptr = format!("/surface/components/{i}");
            let text = want_str(cv, &ptr)?;
            crate::expr::parse(text, &vset).map_err(|e| Error::scene(&ptr, format!("{e}")))?;
            components.push(text.to_string());
        }
        let domain_val = obj
            .get("domain")
            .ok_or_else(|| Error::scene("/surface/domain", "missing domain"))?;
        let domain_arr = want_array(domain_val, "/surface/domain")?;
        if domain_arr.len() != dim - 1 {
            return Err(Error::scene(
                "/surface/domain",
                format!("expected {} intervals", dim - 1),
            ));
        }
        let mut domain = Vec::with_capacity(dim - 1);
        for (i, dv) in domain_arr.iter().enumerate() {
            let ptr = format!("/surface/domain/{i}");
            let pair = want_array(dv, &ptr)?;
            if pair.len() != 2 {
                return Err(Error::scene(&ptr, "expected [lo, hi]"));
            }
            let lo = want_f64(&pair[0], &format!("{ptr}/0"))?;
            let hi = want_f64(&pair[1], &format!("{ptr}/1"))?;
            if lo >= hi {
                return Err(Error::scene(&ptr, "interval must have lo < hi"));
            }
            domain.push((lo, hi));
        }
        let mut singular = Vec::new();
        if let Some(sv) = obj.get("singular") {
            let arr = want_array(sv, "/surface/singular")?;
            for (i, entry) in arr.iter().enumerate() {
                let ptr = format!("/surface/singular/{i}");
                let eobj = want_object(entry, &ptr)?;
                let idx = want_u64(
                    eobj.get("param")
                        .ok_or_else(|| Error::scene(&ptr, "missing `param` index"))?,
                    &format!("{ptr}/param"),
                )? as usize;
                if idx >= dim - 1 {
                    return Err(Error::scene(
                        format!("{ptr}/param"),
                        "parameter index out of range",
                    ));
                }
                let side = want_str(
                    eobj.get("side")
                        .ok_or_else(|| Error::scene(&ptr, "missing `side`"))?,
                    &format!("{ptr}/side"),
                )?;
                let lower = match side {
                    "min" => true,
                    "max" => false,
                    _ => {
                        return Err(Error::scene(
                            format!("{ptr}/side"),
                            "side must be \"min\" or \"max\"",
                        ))
                    }
                };
                singular.push((idx, lower));
            }
        }
        Ok(SurfaceSpec::Explicit {
            components,
            domain,
            singular,
        })
    }
}

fn curve_from_value(v: &Value, ptr: &str, _dim: usize) -> Result<CurveSpec> {
    let obj = want_object(v, ptr)?;
    let name = want_str(
        obj.get("name")
            .ok_or_else(|| Error::scene(ptr, "curve needs a `name`"))?,
        &format!("{ptr}/name"),
    )?
    .to_string();
    let kind = want_str(
        obj.get("kind")
            .ok_or_else(|| Error::scene(ptr, "curve needs a `kind`"))?,
        &format!("{ptr}/kind"),
    )?;
    match kind {
        "param" => {
            let comps = want_array(
                obj.get("components")
                    .ok_or_else(|| Error::scene(ptr, "param curve needs `components`"))?,
                &format!("{ptr}/components"),
            )?;
            let components = comps
                .iter()
                .enumerate()
                .map(|(i, c)| Ok(want_str(c, &format!("{ptr}/components/{i}"))?.to_string()))
                .collect::<Result<Vec<_>>>()?;
            let dv = want_array(
                obj.get("domain")
                    .ok_or_else(|| Error::scene(ptr, "param curve needs `domain`"))?,
                &format!("{ptr}/domain"),
            )?;
            if dv.len() != 2 {
                return Err(Error::scene(format!("{ptr}/domain"), "expected [lo, hi]"));
            }
            let lo = want_f64(&dv[0], &format!("{ptr}/domain/0"))?;
            let hi = want_f64(&dv[1], &format!("{ptr}/domain/1"))?;
            Ok(CurveSpec::Param {
                name,
                components,
                domain: (lo, hi),
            })
        }
        "geodesic" => {
            let read_vec = |key: &str| -> Result<Vec<f64>> {
                let arr = want_array(
                    obj.get(key)
                        .ok_or_else(|| Error::scene(ptr, format!("geodesic needs `{key}`")))?,
                    &format!("{ptr}/{key}"),
                )?;
                arr.iter()
                    .enumerate()
                    .map(|(i, x)| want_f64(x, &format!("{ptr}/{key}/{i}")))
                    .collect()
            };
            let start = read_vec("start")?;
            let direction = read_vec("direction")?;
            let length = want_f64(
                obj.get("length")
                    .ok_or_else(|| Error::scene(ptr, "geodesic needs `length`"))?,
                &format!("{ptr}/length"),
            )?;
            let step = match obj.get("step") {
                Some(v) => want_f64(v, &format!("{ptr}/step"))?,
                None => 1e-3,
            };
            if length <= 0.0 || step <= 0.0 {
                return Err(Error::scene(ptr, "length and step must be positive"));
            }
            Ok(CurveSpec::Geodesic {
                name,
                start,
                direction,
                length,
                step,
            })
        }
        other => Err(Error::scene(
            format!("{ptr}/kind"),
            format!("unknown curve kind `{other}` (expected \"param\" or \"geodesic\")"),
        )),
    }
}

// ---------------------------------------------------------------------------
// gallery

pub struct GalleryInfo {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static str,
}

pub const GALLERY: &[GalleryInfo] = &[
    GalleryInfo {
        name: "hyperplane",
        summary: "flat hyperplane x_n = 0; full direction space",
        params: "dim (int, default 3)",
    },
    GalleryInfo {
        name: "sphere",
        summary: "unit sphere patch; trivial direction space",
        params: "dim (int, default 3)",
    },
    GalleryInfo {
        name: "cylinder",
        summary: "right circular cylinder around the z-axis; axis direction space",
        params: "radius (default 1)",
    },
    GalleryInfo {
        name: "cone",
        summary: "circular cone around the z-axis (apex excluded); axis direction space",
        params: "half_angle (radians from the axis, default pi/6)",
    },
    GalleryInfo {
        name: "generalized-cylinder-e4",
        summary: "circle times a 2-plane in E^4; two-dimensional direction space",
        params: "(none)",
    },
    GalleryInfo {
        name: "helicoid",
        summary: "standard helicoid; no constant-angle direction",
        params: "(none)",
    },
    GalleryInfo {
        name: "plane-curve-cylinder",
        summary: "cylinder over a plane curve (x(u1), y(u1), u2)",
        params: "x, y (expressions in u1; default a trefoil-like profile)",
    },
];

fn num_param(params: &BTreeMap<String, GalleryParam>, key: &str, default: f64) -> Result<f64> {
    match params.get(key) {
        None => Ok(default),
        Some(GalleryParam::Number(x)) => Ok(*x),
        Some(GalleryParam::Text(_)) => Err(Error::scene(
            format!("/surface/params/{key}"),
            "expected a number",
        )),
    }
}

fn text_param<'a>(
    params: &'a BTreeMap<String, GalleryParam>,
    key: &str,
    default: &'a str,
) -> Result<&'a str> {
    match params.get(key) {
        None => Ok(default),
        Some(GalleryParam::Text(s)) => Ok(s.as_str()),
        Some(GalleryParam::Number(_)) => Err(Error::scene(
            format!("/surface/params/{key}"),
            "expected an expression string",
        )),
    }
}

/// Build a named gallery surface.
pub fn gallery_surface<F: Scalar>(
    name: &str,
    params: &BTreeMap<String, GalleryParam>,
) -> Result<Hypersurface<F>> {
    let pi = std::f64::consts::PI;
    let lift = |d: Vec<(f64, f64)>| -> Vec<(F, F)> {
        d.into_iter().map(|(a, b)| (F::lit(a), F::lit(b))).collect()
    };
    match name {
        "hyperplane" => {
            let dim = num_param(params, "dim", 3.0)? as usize;
            if !(3..=6).contains(&dim) {
                return Err(Error::scene("/surface/params/dim", "dim must be 3..=6"));
            }
            let mut comps: Vec<String> = (1..dim).map(|i| format!("u{i}")).collect();
            comps.push("0".to_string());
            let vars: Vec<String> = (1..dim).map(|i| format!("u{i}")).collect();
            let refs: Vec<&str> = comps.iter().map(|s| s.as_str()).collect();
            let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
            Hypersurface::parse(&refs, &var_refs, lift(vec![(-1.0, 1.0); dim - 1]))
        }
        "sphere" => {
            let dim = num_param(params, "dim", 3.0)? as usize;
            match dim {
                3 => Hypersurface::parse(
                    &["cos(u1)*cos(u2)", "sin(u1)*cos(u2)", "sin(u2)"],
                    &["u1", "u2"],
                    lift(vec![(-7.0, 7.0), (-1.2, 1.2)]),
                ),
                4 => Hypersurface::parse(
                    &[
                        "cos(u1)*cos(u2)*cos(u3)",
                        "sin(u1)*cos(u2)*cos(u3)",
                        "sin(u2)*cos(u3)",
                        "sin(u3)",
                    ],
                    &["u1", "u2", "u3"],
                    lift(vec![(0.2, 2.8), (-1.1, 1.1), (-1.0, 1.0)]),
                ),
                _ => Err(Error::scene(
                    "/surface/params/dim",
                    "sphere supports dim 3 or 4",
                )),
            }
        }
        "cylinder" => {
            let radius = num_param(params, "radius", 1.0)?;
            if radius <= 0.0 {
                return Err(Error::scene(
                    "/surface/params/radius",
                    "radius must be positive",
                ));
            }
            Hypersurface::parse(
                &[
                    &format!("{radius}*cos(u1)"),
                    &format!("{radius}*sin(u1)"),
                    "u2",
                ],
                &["u1", "u2"],
                lift(vec![(-7.0, 7.0), (-8.0, 8.0)]),
            )
        }
        "cone" => {
            let half_angle = num_param(params, "half_angle", pi / 6.0)?;
            if !(half_angle > 0.0 && half_angle < pi / 2.0) {
                return Err(Error::scene(
                    "/surface/params/half_angle",
                    "half_angle must lie strictly between 0 and pi/2",
                ));
            }
            let s = half_angle.sin();
            let c = half_angle.cos();
            Hypersurface::parse(
                &[
                    &format!("u1*{s}*cos(u2)"),
                    &format!("u1*{s}*sin(u2)"),
                    &format!("u1*{c}"),
                ],
                &["u1", "u2"],
                lift(vec![(0.05, 2.5), (0.0, 2.0 * pi)]),
            )
        }
        "generalized-cylinder-e4" => Hypersurface::parse(
            &["cos(u1)", "sin(u1)", "u2", "u3"],
            &["u1", "u2", "u3"],
            lift(vec![(-7.0, 7.0), (-2.5, 2.5), (-2.5, 2.5)]),
        ),
        "helicoid" => Hypersurface::parse(
            &["u1*cos(u2)", "u1*sin(u2)", "u2"],
            &["u1", "u2"],
            lift(vec![(0.3, 1.5), (0.0, 2.0 * pi)]),
        ),
        "plane-curve-cylinder" => {
            let x = text_param(params, "x", "cos(u1)+0.3*cos(2*u1)")?;
            let y = text_param(params, "y", "sin(u1)+0.3*sin(2*u1)")?;
            Hypersurface::parse(
                &[x, y, "u2"],
                &["u1", "u2"],
                lift(vec![(0.0, 2.0 * pi), (-1.5, 1.5)]),
            )
        }
        other => Err(Error::scene(
            "/surface/gallery",
            format!("unknown gallery name `{other}`"),
        )),
    }
}

/// Default analysis curves per gallery surface; used when a scene lists no
/// curves of its own.
pub fn gallery_default_curves(
    name: &str,
    params: &BTreeMap<String, GalleryParam>,
) -> Vec<CurveSpec> {
    let pi = std::f64::consts::PI;
    let geod = |name: &str, start: Vec<f64>, dir: Vec<f64>, length: f64| CurveSpec::Geodesic {
        name: name.to_string(),
        start,
        direction: dir,
        length,
        step: 2e-3,
    };
    let param = |name: &str, comps: &[&str], lo: f64, hi: f64| CurveSpec::Param {
        name: name.to_string(),
        components: comps.iter().map(|s| s.to_string()).collect(),
        domain: (lo, hi),
    };
    match name {
        "hyperplane" => {
            let dim = num_param(params, "dim", 3.0).unwrap_or(3.0) as usize;
            let p = dim - 1;
            let mut start = vec![0.0; p];
            let mut dir = vec![0.3; p];
            dir[0] = 1.0;
            start[0] = -0.5;
            let mut comps: Vec<String> = vec!["t".to_string(), "t*t".to_string()];
            comps.resize(p, "0".to_string());
            vec![
                geod("g1", start, dir, 1.2),
                CurveSpec::Param {
                    name: "parabola".to_string(),
                    components: comps,
                    domain: (-0.8, 0.8),
                },
            ]
        }
        "sphere" => {
            let dim = num_param(params, "dim", 3.0).unwrap_or(3.0) as usize;
            if dim == 4 {
                vec![
                    geod("g1", vec![1.0, 0.0, 0.0], vec![1.0, 0.4, 0.2], 1.5),
                    param("circle", &["t", "0.3", "0.2"], 0.3, 2.7),
                ]
            } else {
                vec![
                    geod("g1", vec![0.0, 0.0], vec![1.0, 0.8], 2.0),
                    param("latitude", &["t", "0.4"], -2.0, 2.0),
                ]
            }
        }
        "cylinder" => vec![
            geod("g45", vec![0.0, 0.0], vec![1.0, 1.0], 4.0),
            geod("gcircle", vec![0.0, 0.0], vec![1.0, 0.0], 4.0),
            param("circle", &["t", "0"], 0.0, 2.0 * pi),
            param("ruling", &["0.0", "t"], -1.5, 1.5),
        ],
        "cone" => vec![
            geod("g1", vec![1.0, pi], vec![1.0, 1.2], 1.2),
            geod("g2", vec![1.0, pi], vec![1.0, 2.4], 1.2),
            geod("g3", vec![1.0, pi], vec![0.7, 3.0], 1.1),
            geod("gruling", vec![0.3, pi], vec![1.0, 0.0], 1.8),
            param("ruling", &["t", "1.0"], 0.3, 2.2),
            param("circle", &["1", "t"], 0.0, 2.0 * pi),
        ],
        "generalized-cylinder-e4" => vec![
            geod("g1", vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 0.5], 3.0),
            param("circle", &["t", "0", "0"], 0.0, 2.0 * pi),
            param("slant", &["t", "0.5*t", "0.3*t"], 0.0, 3.0),
        ],
        "helicoid" => vec![
            geod("g1", vec![0.9, 3.0], vec![0.5, 1.0], 0.5),
            param("radial", &["t", "3.0"], 0.35, 1.45),
            param("coil", &["0.9", "t"], 0.2, 6.0),
        ],
        "plane-curve-cylinder" => vec![
            geod("g1", vec![0.5, 0.0], vec![1.0, 1.0], 2.0),
            param("profile", &["t", "0"], 0.0, 2.0 * pi),
            param("ruling", &["0.5", "t"], -1.2, 1.2),
        ],
        _ => Vec::new(),
    }
}
