//! The subcommands. Each returns `Ok(true)` when every check passed, `Ok(false)` when a
//! check failed and `Err` on configuration or I/O errors.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use subgeom::atlas::{self, conformality_residual, conformality_tolerance, CatalogOptions};
use subgeom::fields::{related_residual, AmbientField};
use subgeom::gallery::{by_name, ClaimKind, ImmersionSpec, GALLERY_NAMES};
use subgeom::kernel::Scheme;
use subgeom::spaces::{SpaceForm, Warping};
use subgeom::tolerances::{DEFAULT_GRID, FD_STEP, PROPERTY_TOL};
use subgeom::verify::*;

use crate::config::{env_f64, grid_shape, merge_params, resolve_name, ConfigFile};
use crate::export::{fmt_e, shape_label, write_csv, write_obj, write_ply, Samples};
use crate::{AtlasCheckArgs, Format, GenerateArgs, VerifyArgs};

/// Bound on `|F' − ρ(F)|` for the mercator profile.
const ODE_TOL: f64 = 1e-8;

fn load_config(path: Option<&Path>) -> Result<ConfigFile> {
    path.map(ConfigFile::load).transpose().map(Option::unwrap_or_default)
}

/// Gallery entry named on the command line or in the config file.
fn build_entry(name: Option<&str>, rho: Option<&str>, params: &[String], file: &ConfigFile) -> Result<ImmersionSpec> {
    let name = name.or(file.get("name")).ok_or_else(|| anyhow!("no gallery entry named (see `gallery list`)"))?;
    let rho = rho.or(file.get("rho"));
    let name = resolve_name(name, rho)?;
    let params = merge_params(file, params)?;
    Ok(by_name(&name, &params)?)
}

/// Opens the output file, or standard output.
fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn meshable(f: &ImmersionSpec) -> bool {
    f.dim() == 2 && f.ambient.dim() == 3 && f.ambient.embed_dim() == 3 && f.ambient.signature().is_euclidean()
}

fn format_from_path(path: &Path) -> Option<Format> {
    path.extension().and_then(|e| e.to_str()).and_then(|e| Format::from_str(e, true).ok())
}

#[derive(Serialize)]
struct PointCloud<'a> {
    schema: u32,
    immersion: &'a str,
    params: &'a BTreeMap<String, f64>,
    ambient: String,
    grid_shape: &'a [usize],
    u: &'a [Vec<f64>],
    x: &'a [Vec<f64>],
}

pub fn generate(args: &GenerateArgs) -> Result<bool> {
    let file = load_config(args.config.as_deref())?;
    let f = build_entry(args.name.as_deref(), args.rho.as_deref(), &args.param, &file)?;
    let default = if f.dim() <= 2 { 64 } else { 16 };
    let shape = grid_shape(args.grid.as_deref().or(file.get("grid")), f.dim(), default)?;
    let mut output: Option<PathBuf> = args.output.clone().or_else(|| file.get("output").map(PathBuf::from));
    let fmt_file = file
        .get("fmt")
        .map(|s| Format::from_str(s, true).map_err(|_| anyhow!("config key fmt: unknown format {s:?}")))
        .transpose()?;
    let mut fmt = args
        .fmt
        .or(fmt_file)
        .or_else(|| output.as_deref().and_then(format_from_path))
        .unwrap_or(if meshable(&f) { Format::Obj } else { Format::Csv });
    if matches!(fmt, Format::Obj | Format::Ply) && !meshable(&f) {
        if let Some(p) = &mut output {
            p.set_extension("csv");
        }
        eprintln!(
            "warning: {} is {}-dimensional in {}; meshes need a surface in euclidean 3-space, writing a CSV point cloud{}",
            f.name,
            f.dim(),
            f.ambient,
            output.as_ref().map(|p| format!(" to {}", p.display())).unwrap_or_default()
        );
        fmt = Format::Csv;
    }
    if matches!(fmt, Format::Obj | Format::Ply) && shape.iter().any(|&k| k < 2) {
        bail!("a mesh needs at least two samples per axis");
    }

    let grid = Grid::with_shape(&f.domain, &shape);
    let params = grid.points();
    let points = f.sample(&grid)?;
    let samples = Samples { name: &f.name, shape: &shape, params: &params, points: &points };
    let mut w = sink(output.as_deref())?;
    match fmt {
        Format::Obj => write_obj(&mut w, &samples)?,
        Format::Ply => write_ply(&mut w, &samples)?,
        Format::Csv => write_csv(&mut w, &samples)?,
        Format::Json => {
            let cloud = PointCloud {
                schema: 1,
                immersion: &f.name,
                params: &f.params,
                ambient: f.ambient.to_string(),
                grid_shape: &shape,
                u: &params,
                x: &points,
            };
            serde_json::to_writer_pretty(&mut w, &cloud)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    if let Some(p) = &output {
        eprintln!("{}: {} vertices ({}) -> {}", f.name, points.len(), shape_label(&shape), p.display());
    }
    Ok(true)
}

/// One requested property and the reports backing its verdict.
#[derive(Serialize)]
struct Check {
    property: String,
    field: Option<String>,
    passed: bool,
    verdict: String,
    max_residual: f64,
    error: Option<String>,
    reports: Vec<DiagnosticsReport>,
}

#[derive(Serialize)]
struct VerifyRun {
    schema: u32,
    immersion: String,
    params: BTreeMap<String, f64>,
    ambient: String,
    grid_shape: Vec<usize>,
    tolerance: f64,
    scheme: String,
    passed: bool,
    checks: Vec<Check>,
}

/// A property as requested on the command line.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Prop {
    Claim(ClaimKind),
    /// T-constant or N-constant.
    Tn,
    NormalPerp,
    NormalUnit,
    Geodesic,
    Polar,
}

impl Prop {
    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "cr" => Prop::Claim(ClaimKind::ConstantRatio),
            "pd" => Prop::Claim(ClaimKind::PrincipalDirection),
            "tn" => Prop::Tn,
            "t_constant" => Prop::Claim(ClaimKind::TConstant),
            "n_constant" => Prop::Claim(ClaimKind::NConstant),
            "nc" | "normal_parallel" => Prop::Claim(ClaimKind::NormalParallel),
            "nc_perp" => Prop::NormalPerp,
            "nc_unit" => Prop::NormalUnit,
            "geodesic" => Prop::Geodesic,
            "polar" => Prop::Polar,
            "gauss" => Prop::Claim(ClaimKind::ConstantGaussCurvature),
            other => bail!("unknown property {other:?}"),
        })
    }

    fn label(self) -> &'static str {
        match self {
            Prop::Claim(k) => k.name(),
            Prop::Tn => "tn",
            Prop::NormalPerp => "nc_perp",
            Prop::NormalUnit => "nc_unit",
            Prop::Geodesic => "geodesic",
            Prop::Polar => "polar",
        }
    }

    fn needs_field(self) -> bool {
        !matches!(self, Prop::Polar | Prop::Claim(ClaimKind::ConstantGaussCurvature))
    }
}

/// The field a name refers to on `f`: a declared field whose name matches (`killing`
/// matches `killing:1,2`), otherwise the parsed name.
fn named_field(f: &ImmersionSpec, name: &str) -> Result<AmbientField> {
    let prefix = format!("{name}:");
    for z in f.claims.iter().filter_map(|c| c.field.as_ref()) {
        if z.name() == name || z.name().starts_with(&prefix) || z.unscaled().name() == name {
            return Ok(z.clone());
        }
    }
    Ok(AmbientField::parse(name, &f.ambient)?)
}

/// Field for `prop` when none was given: the one its claim declares, else any declared field.
fn default_field(f: &ImmersionSpec, prop: Prop) -> Option<AmbientField> {
    let kind = match prop {
        Prop::Claim(k) => Some(k),
        Prop::Tn => Some(ClaimKind::TConstant),
        _ => None,
    };
    kind.and_then(|k| f.claim(k))
        .and_then(|c| c.field.clone())
        .or_else(|| f.claims.iter().find_map(|c| c.field.clone()))
}

/// Constant declared by a claim of `kind` for `z`, if any.
fn declared(f: &ImmersionSpec, kind: ClaimKind, z: Option<&AmbientField>) -> Option<f64> {
    f.claims
        .iter()
        .find(|c| c.kind == kind && c.field.as_ref().map(AmbientField::name) == z.map(AmbientField::name))
        .and_then(|c| c.expected)
}

fn run_prop(f: &ImmersionSpec, prop: Prop, z: Option<&AmbientField>, grid: &Grid, opts: &VerifyOptions) -> Check {
    let result = (|| -> Result<Vec<DiagnosticsReport>> {
        let need = || z.ok_or_else(|| anyhow!("property {} needs a field", prop.label()));
        Ok(match prop {
            Prop::Claim(kind) => {
                let claim = subgeom::gallery::Claim { kind, field: z.cloned(), expected: declared(f, kind, z) };
                vec![check_claim(f, &claim, grid, opts)?]
            }
            Prop::Tn => {
                let z = need()?;
                vec![
                    length_report(f, z, Part::Tangent, grid, opts, declared(f, ClaimKind::TConstant, Some(z)))?,
                    length_report(f, z, Part::Normal, grid, opts, declared(f, ClaimKind::NConstant, Some(z)))?,
                ]
            }
            Prop::NormalPerp => vec![normal_connection_residual(f, need()?, grid, Along::PerpToTangentPart, false, opts)?],
            Prop::NormalUnit => vec![normal_connection_residual(f, need()?, grid, Along::AllDirections, true, opts)?],
            Prop::Geodesic => vec![geodesic_residual(f, need()?, grid, opts)?],
            Prop::Polar => {
                let c = f.polar_constant.ok_or_else(|| anyhow!("{} has no polar chart", f.name))?;
                vec![polar_residual(f, c, grid, opts)?]
            }
        })
    })();
    let field = z.map(|z| z.name().to_string());
    match result {
        Ok(reports) => {
            // T- or N-constant: either length may be the constant one.
            let passed = if prop == Prop::Tn {
                reports.iter().any(DiagnosticsReport::passed)
            } else {
                reports.iter().all(DiagnosticsReport::passed)
            };
            let verdict = match prop {
                Prop::Tn => reports.iter().map(|r| format!("{}: {}", r.property, r.verdict.label())).collect::<Vec<_>>().join(", "),
                _ => reports[0].verdict.label(),
            };
            let max_residual = reports.iter().map(|r| r.summary.max).fold(0.0, f64::max);
            Check { property: prop.label().into(), field, passed, verdict, max_residual, error: None, reports }
        }
        Err(e) => Check {
            property: prop.label().into(),
            field,
            passed: false,
            verdict: "error".into(),
            max_residual: f64::INFINITY,
            error: Some(format!("{e:#}")),
            reports: Vec::new(),
        },
    }
}

fn parse_scheme(s: &str) -> Result<Scheme> {
    match s {
        "analytic" => Ok(Scheme::Analytic),
        "fd" => Ok(Scheme::fd_default()),
        other => bail!("unknown scheme {other:?} (analytic or fd)"),
    }
}

pub fn verify(args: &VerifyArgs) -> Result<bool> {
    let file = load_config(args.config.as_deref())?;
    let f = build_entry(args.name.as_deref(), args.rho.as_deref(), &args.param, &file)?;
    let shape = grid_shape(args.grid.as_deref().or(file.get("grid")), f.dim(), DEFAULT_GRID)?;
    let grid = Grid::with_shape(&f.domain, &shape);

    let opts = VerifyOptions {
        tol: args.tol.or(file.parsed("tol")?).or(env_f64("SUBGEOM_TOL")?).unwrap_or(PROPERTY_TOL),
        fd_step: args.fd_step.or(file.parsed("fd_step")?).or(env_f64("SUBGEOM_FD_STEP")?).unwrap_or(FD_STEP),
        scheme: args.scheme.as_deref().or(file.get("scheme")).map(parse_scheme).transpose()?.unwrap_or(Scheme::Analytic),
        ..VerifyOptions::default()
    };
    if !(opts.tol > 0.0 && opts.fd_step > 0.0) {
        bail!("tolerance and fd step must be positive");
    }

    let field_name = args.field.as_deref().or(file.get("field"));
    let given = field_name.map(|n| named_field(&f, n)).transpose()?;
    let props = args.property.as_deref().or(file.get("property")).unwrap_or("all");
    let mut plan: Vec<(Prop, Option<AmbientField>)> = Vec::new();
    for p in props.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if p == "all" {
            for c in &f.claims {
                if let (Some(g), Some(z)) = (&given, &c.field) {
                    if g.name() != z.name() {
                        continue;
                    }
                }
                plan.push((Prop::Claim(c.kind), c.field.clone()));
            }
            if f.polar_constant.is_some() {
                plan.push((Prop::Polar, None));
            }
            continue;
        }
        let prop = Prop::parse(p)?;
        let z = if prop.needs_field() {
            Some(given.clone().or_else(|| default_field(&f, prop)).ok_or_else(|| {
                anyhow!("property {p} needs --field: {} declares no field", f.name)
            })?)
        } else {
            None
        };
        plan.push((prop, z));
    }
    if plan.is_empty() {
        bail!("nothing to verify for {}", f.name);
    }

    let checks: Vec<Check> = plan.iter().map(|(p, z)| run_prop(&f, *p, z.as_ref(), &grid, &opts)).collect();
    let passed = checks.iter().all(|c| c.passed);
    for c in &checks {
        eprintln!(
            "{:<10} {:<16} {:<4} max residual {}  [{}]",
            c.property,
            c.field.as_deref().unwrap_or("-"),
            if c.passed { "PASS" } else { "FAIL" },
            fmt_e(c.max_residual),
            c.error.as_deref().unwrap_or(&c.verdict)
        );
    }

    if let Some(path) = &args.csv {
        write_report_csv(path, &f, &checks)?;
    }
    let run = VerifyRun {
        schema: 1,
        immersion: f.name.clone(),
        params: f.params.clone(),
        ambient: f.ambient.to_string(),
        grid_shape: shape,
        tolerance: opts.tol,
        scheme: f.scheme_for(opts.scheme).label(),
        passed,
        checks,
    };
    let output = args.output.clone().or_else(|| file.get("output").map(PathBuf::from));
    write_json(output.as_deref(), &run)?;
    Ok(passed)
}

/// One row per (report, grid point).
fn write_report_csv(path: &Path, f: &ImmersionSpec, checks: &[Check]) -> Result<()> {
    let mut w = sink(Some(path))?;
    let us: Vec<String> = (1..=f.dim()).map(|i| format!("u{i}")).collect();
    writeln!(w, "property,report,field,index,{},value,residual,flagged", us.join(","))?;
    for c in checks {
        for r in &c.reports {
            for (i, u) in r.points.iter().enumerate() {
                let coords: Vec<String> = u.iter().map(|&v| fmt_e(v)).collect();
                writeln!(
                    w,
                    "{},{},{},{i},{},{},{},{}",
                    c.property,
                    r.property,
                    r.field.as_deref().unwrap_or(""),
                    coords.join(","),
                    fmt_e(r.values[i]),
                    fmt_e(r.residuals[i]),
                    u8::from(r.flagged.contains(&i))
                )?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn atlas_list() -> Result<bool> {
    for m in atlas::catalog(2) {
        println!(
            "{:<20} {} -> {}{}{}",
            m.name,
            m.source,
            m.target,
            if m.is_isometry { "  isometry" } else { "" },
            if m.is_analytic() { "" } else { "  (finite differences)" }
        );
    }
    Ok(true)
}

#[derive(Serialize)]
struct Series {
    residuals: Vec<f64>,
    max: f64,
    tolerance: f64,
    passed: bool,
    errors: Vec<(usize, String)>,
}

impl Series {
    fn new(results: Vec<subgeom::Result<f64>>, tolerance: f64) -> Self {
        let mut errors = Vec::new();
        let residuals: Vec<f64> = results
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                r.unwrap_or_else(|e| {
                    errors.push((i, e.to_string()));
                    f64::INFINITY
                })
            })
            .collect();
        let max = residuals.iter().copied().fold(0.0, f64::max);
        Self { passed: max <= tolerance && errors.is_empty(), residuals, max, tolerance, errors }
    }
}

#[derive(Serialize)]
struct Related {
    source_field: String,
    target_field: String,
    #[serde(flatten)]
    series: Series,
}

#[derive(Serialize)]
struct FactorRange {
    min: f64,
    max: f64,
    /// `max |φ − 1|` for isometries.
    isometry_residual: Option<f64>,
}

#[derive(Serialize)]
struct OdeCheck {
    warping: String,
    closed_form: bool,
    t_range: (f64, f64),
    grid_points: usize,
    residual: f64,
    tolerance: f64,
    passed: bool,
}

#[derive(Serialize)]
struct AtlasRun {
    schema: u32,
    map: String,
    source: String,
    target: String,
    n: usize,
    is_isometry: bool,
    scheme: String,
    seed: u64,
    points: Vec<Vec<f64>>,
    conformality: Series,
    factor: FactorRange,
    related: Vec<Related>,
    ode: Option<OdeCheck>,
    passed: bool,
}

pub fn atlas_check(args: &AtlasCheckArgs) -> Result<bool> {
    let rho = Warping::from_name(&args.rho)?;
    let opts = CatalogOptions {
        n: args.n,
        form: rho.model_form().unwrap_or(SpaceForm::Euclidean),
        rho,
        initial: None,
        force_rk4: args.rk4,
    };
    let map = Arc::new(atlas::by_name(&args.map, &opts)?);
    let scheme = if map.is_analytic() { Scheme::Analytic } else { Scheme::fd_default() };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let points: Vec<Vec<f64>> = (0..args.points).map(|_| map.sample_source(&mut rng)).collect();

    let conformality = Series::new(
        points.iter().map(|p| conformality_residual(&map, p, 4, &mut rng, scheme)).collect(),
        conformality_tolerance(scheme),
    );
    let factors: Vec<f64> = points.iter().filter_map(|p| map.factor(p).ok()).collect();
    let factor = FactorRange {
        min: factors.iter().copied().fold(f64::INFINITY, f64::min),
        max: factors.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        isometry_residual: map.is_isometry.then(|| factors.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max)),
    };
    let related: Vec<Related> = map
        .related_fields()?
        .into_iter()
        .map(|(src, tgt)| Related {
            source_field: src.name().to_string(),
            target_field: tgt.name().to_string(),
            series: Series::new(points.iter().map(|p| related_residual(&map, &src, &tgt, p)).collect(), PROPERTY_TOL),
        })
        .collect();
    let ode = match &map.mercator_profile() {
        Some(m) => {
            let (lo, hi) = map.t_range();
            let k = 201;
            let ts: Vec<f64> = (0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect();
            let residual = m.ode_residual(&ts)?;
            Some(OdeCheck {
                warping: m.warping().name().into(),
                closed_form: m.uses_closed_form(),
                t_range: (lo, hi),
                grid_points: k,
                residual,
                tolerance: ODE_TOL,
                passed: residual <= ODE_TOL,
            })
        }
        None => None,
    };
    let isometry_ok = factor.isometry_residual.is_none_or(|r| r <= PROPERTY_TOL);
    let passed = conformality.passed
        && isometry_ok
        && related.iter().all(|r| r.series.passed)
        && ode.as_ref().is_none_or(|o| o.passed);

    eprintln!(
        "{}: conformality max {} (tol {}){}",
        map.name,
        fmt_e(conformality.max),
        fmt_e(conformality.tolerance),
        if conformality.passed { "" } else { "  FAIL" }
    );
    if let Some(r) = factor.isometry_residual {
        eprintln!("  isometry: max |phi - 1| = {}", fmt_e(r));
    }
    for r in &related {
        eprintln!(
            "  {} -> {}: max {}{}",
            r.source_field,
            r.target_field,
            fmt_e(r.series.max),
            if r.series.passed { "" } else { "  FAIL" }
        );
    }
    if let Some(o) = &ode {
        eprintln!("  F' - rho(F): max {}{}", fmt_e(o.residual), if o.passed { "" } else { "  FAIL" });
    }

    let run = AtlasRun {
        schema: 1,
        map: map.name.clone(),
        source: map.source.to_string(),
        target: map.target.to_string(),
        n: args.n,
        is_isometry: map.is_isometry,
        scheme: scheme.label(),
        seed: args.seed,
        points,
        conformality,
        factor,
        related,
        ode,
        passed,
    };
    write_json(args.output.as_deref(), &run)?;
    Ok(passed)
}

pub fn gallery_list() -> Result<bool> {
    for (name, defaults) in GALLERY_NAMES {
        let params: Vec<String> = defaults.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let f = by_name(name, &BTreeMap::new())?;
        let claims: Vec<String> = f.claims.iter().map(ToString::to_string).collect();
        println!(
            "{:<22} m={} in {:<28} [{}]  claims: {}",
            name,
            f.dim(),
            f.ambient.to_string(),
            params.join(", "),
            claims.join("; ")
        );
    }
    Ok(true)
}
