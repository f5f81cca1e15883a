//! Batch command-line interface: scene ingestion, analysis subcommands,
//! deterministic JSON/CSV report emission.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or scene error,
//! 3 numerical error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use helixlab_core::error::Error;
use helixlab_core::helix_space;
use helixlab_core::report::{
    curve_samples_csv, normals_csv, to_canonical_json, trace_csv, AnalyzeReport, FrenetReport,
    FrenetSampleReport, GeodesicReport, HelixSpaceReport,
};
use helixlab_core::sample::{box_points, interval_params};
use helixlab_core::scene::{load_scene, CurveSpec, Scene, GALLERY};
use helixlab_core::theorems::run_suite;

#[derive(Parser)]
#[command(
    name = "helixlab",
    version,
    about = "Numerical analysis of curves and constant-angle hypersurfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonFlags {
    /// Override the scene's structured sample count.
    #[arg(long)]
    samples: Option<usize>,
    /// Override the scene's random sample count.
    #[arg(long)]
    random_samples: Option<usize>,
    /// Override the scene's conclusion tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Override the scene's sampling seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Also write the JSON output to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Detect the constant-angle direction space of the scene's surface.
    AnalyzeSurface {
        scene: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
        /// Dump the sampled normal field as CSV to this path.
        #[arg(long)]
        dump_normals: Option<PathBuf>,
    },
    /// Frames and curvatures along a named curve of the scene.
    Frenet {
        scene: PathBuf,
        /// Curve name (from the scene or the gallery defaults).
        #[arg(long)]
        curve: String,
        /// Report a single parameter value instead of the sample grid.
        #[arg(long)]
        at: Option<f64>,
        #[command(flatten)]
        flags: CommonFlags,
        /// Write sampled positions and curvatures as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Integrate a named geodesic of the scene; prints diagnostics JSON.
    Geodesic {
        scene: PathBuf,
        /// Geodesic name (from the scene or the gallery defaults).
        #[arg(long)]
        name: String,
        #[command(flatten)]
        flags: CommonFlags,
        /// Write the trace as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run every applicable statement check; prints a JSON report array.
    Verify {
        scene: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// List the built-in surfaces.
    GalleryList,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", error_json(&e));
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn error_json(e: &Error) -> String {
    serde_json::json!({
        "error": { "kind": e.kind(), "message": e.to_string() }
    })
    .to_string()
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Scene { .. } | Error::Syntax { .. } | Error::Precondition(_) => 2,
        _ => 3,
    }
}

fn apply_flags(scene: &mut Scene, flags: &CommonFlags) {
    if let Some(s) = flags.samples {
        scene.analysis.samples = s;
    }
    if let Some(r) = flags.random_samples {
        scene.analysis.random_samples = r;
    }
    if let Some(t) = flags.tol {
        scene.analysis.tol = t;
    }
    if let Some(s) = flags.seed {
        scene.analysis.seed = s;
    }
}

fn emit(json: &str, report_path: Option<&Path>) -> Result<(), Error> {
    println!("{json}");
    if let Some(path) = report_path {
        write_file(path, json)?;
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents)
        .map_err(|e| Error::scene("", format!("cannot write `{}`: {e}", path.display())))
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::AnalyzeSurface {
            scene,
            flags,
            dump_normals,
        } => {
            let mut scene = load_scene(&scene)?;
            apply_flags(&mut scene, &flags);
            let surface = scene.surface::<f64>()?;
            let plan = scene.sample_plan();
            let (is_helix, r, space) =
                helix_space::classify_strong_r_helix(&surface, &plan, scene.analysis.tol)?;
            if let Some(path) = dump_normals {
                let points = box_points(surface.domain(), &plan);
                write_file(&path, &normals_csv(&surface, &points)?)?;
            }
            let report = AnalyzeReport {
                schema: helixlab_core::scene::SCHEMA_VERSION,
                scene: scene.name.clone(),
                is_helix,
                r,
                space: HelixSpaceReport::from_space(&space),
            };
            emit(&to_canonical_json(&report)?, flags.report.as_deref())?;
            Ok(0)
        }

        Command::Frenet {
            scene,
            curve,
            at,
            flags,
            csv,
        } => {
            let mut scene = load_scene(&scene)?;
            apply_flags(&mut scene, &flags);
            let surface = scene.surface::<f64>()?;
            let spec = scene.find_curve(&curve)?;
            let ambient = match &spec {
                CurveSpec::Param { .. } => {
                    scene.build_surface_curve(&surface, &spec)?.ambient_curve()
                }
                CurveSpec::Geodesic { .. } => {
                    let trace = scene.build_geodesic(&surface, &spec)?;
                    helixlab_core::geodesic::trace_to_surface_curve(&trace)?.ambient_curve()
                }
            };
            let params: Vec<f64> = match at {
                Some(t) => vec![t],
                None => {
                    let (a, b) = ambient.domain();
                    interval_params(a, b, &scene.sample_plan())
                }
            };
            let mut samples = Vec::with_capacity(params.len());
            for &t in &params {
                let fr = ambient.frenet(t)?;
                let p = ambient.position(t)?;
                samples.push(FrenetSampleReport {
                    t,
                    position: p.iter().copied().collect(),
                    speed: fr.speed,
                    frame: fr
                        .frame
                        .iter()
                        .map(|v| v.iter().copied().collect())
                        .collect(),
                    curvatures: fr.curvatures.clone(),
                    valid_depth: fr.valid_depth,
                });
            }
            if let Some(path) = csv {
                write_file(&path, &curve_samples_csv(&ambient, &params)?)?;
            }
            let report = FrenetReport {
                schema: helixlab_core::scene::SCHEMA_VERSION,
                scene: scene.name.clone(),
                curve,
                samples,
            };
            emit(&to_canonical_json(&report)?, flags.report.as_deref())?;
            Ok(0)
        }

        Command::Geodesic {
            scene,
            name,
            flags,
            csv,
        } => {
            let mut scene = load_scene(&scene)?;
            apply_flags(&mut scene, &flags);
            let surface = scene.surface::<f64>()?;
            let spec = scene.find_curve(&name)?;
            let trace = scene.build_geodesic(&surface, &spec)?;
            if let Some(path) = csv {
                write_file(&path, &trace_csv(&trace))?;
            }
            let report = GeodesicReport::from_trace(scene.name.clone(), &name, &trace);
            emit(&to_canonical_json(&report)?, flags.report.as_deref())?;
            Ok(0)
        }

        Command::Verify { scene, flags } => {
            let mut scene = load_scene(&scene)?;
            apply_flags(&mut scene, &flags);
            let surface = scene.surface::<f64>()?;
            let input = scene.suite_input(&surface)?;
            let config = scene.check_config::<f64>();
            let outcome = run_suite(&surface, &input, &config)?;
            let failed = outcome.any_failed();
            emit(
                &to_canonical_json(&outcome.reports)?,
                flags.report.as_deref(),
            )?;
            Ok(if failed { 1 } else { 0 })
        }

        Command::GalleryList => {
            for info in GALLERY {
                println!(
                    "{:<26} {:<55} params: {}",
                    info.name, info.summary, info.params
                );
            }
            Ok(0)
        }
    }
}
