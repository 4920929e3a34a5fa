//! Command-line front end. [`run`] parses arguments, validates them, computes
//! the requested report and only then writes it, returning the exit code:
//! `0` pass, `1` numerical check failed, `2` invalid arguments, `3` I/O error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::{canonical_ordering, ks_clifford, standard_clifford, verify_clifford, AlgebraReport};
use crate::continuum::{
    convergence_sweep, default_grid_density, default_h_list, make_window, ConvergenceParams, Pairing, RhoRule,
};
use crate::diag::{block_check, conjugator, one_dimensional_check, BlockReport};
use crate::error::{Error, Result};
use crate::lattice::LatticeGrid;
use crate::staggered::{operator_relations, verify_pair, StaggeredPair};
use crate::symbols::{count_light_minima, default_threshold, dispersion_surface, SymbolSpec};

#[derive(Parser, Debug)]
#[command(name = "lattice-dirac", version, about = "Lattice Dirac operators: algebra, doubling and continuum limits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the anticommutation relations of a matrix family.
    Algebra(AlgebraArgs),
    /// Export the dispersion relation on a momentum grid.
    Dispersion(DispersionArgs),
    /// Count light dispersion minima on the dual torus.
    Doubling(DoublingArgs),
    /// Measure the symbol-level continuum-limit rate.
    Converge(ConvergeArgs),
    /// Check the staggered regrouping on a finite lattice.
    VerifyKs(VerifyKsArgs),
    /// Check the block-diagonalization of the staggered continuum symbol.
    Diag(DiagArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Standard,
    Continuum,
    Naive,
    Wilson,
    Ks,
    KsContinuum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct Output {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    #[arg(long, value_enum, default_value = "standard")]
    model: Model,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-13)]
    tol: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct LatticeModelArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    #[arg(long, default_value_t = 0.1)]
    h: f64,
    #[arg(long, default_value = "h")]
    rho_rule: RhoRule,
}

#[derive(Args, Debug)]
struct DispersionArgs {
    #[command(flatten)]
    spec: LatticeModelArgs,
    #[arg(long, default_value_t = 64)]
    grid: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct DoublingArgs {
    #[command(flatten)]
    spec: LatticeModelArgs,
    #[arg(long, default_value_t = 64)]
    grid: usize,
    /// Largest energy counted as light; model-dependent default.
    #[arg(long)]
    threshold: Option<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Comma-separated, strictly decreasing spacings.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    h_list: Option<Vec<f64>>,
    #[arg(long, default_value = "h")]
    rho_rule: RhoRule,
    /// Spectral parameter as `re,im`.
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    z: String,
    #[arg(long)]
    grid: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyKsArgs {
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Side of the fine lattice (even).
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    #[arg(long, default_value_t = 0.1)]
    h: f64,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct DiagArgs {
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    output: Output,
}

/// A computed result ready to be written.
struct Rendered {
    body: Vec<u8>,
    summary: String,
    pass: bool,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Argument(_) | Error::UnsupportedDimension { .. } | Error::Precondition(_) | Error::Resource { .. } => 2,
        Error::Fit(_) => 1,
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => 3,
    }
}

fn execute(command: Command) -> Result<i32> {
    let (rendered, output) = match command {
        Command::Algebra(a) => (algebra(&a)?, a.output),
        Command::Dispersion(a) => (dispersion(&a)?, a.output),
        Command::Doubling(a) => (doubling(&a)?, a.output),
        Command::Converge(a) => (converge(&a)?, a.output),
        Command::VerifyKs(a) => (verify_ks(&a)?, a.output),
        Command::Diag(a) => (diag(&a)?, a.output),
    };
    write_output(&rendered, output.out.as_ref())?;
    Ok(if rendered.pass { 0 } else { 1 })
}

fn write_output(r: &Rendered, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(&r.body)?;
            w.flush()?;
            println!("{}", r.summary);
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(&r.body)?;
            stdout.flush()?;
            eprintln!("{}", r.summary);
        }
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut body = serde_json::to_vec_pretty(value)?;
    body.push(b'\n');
    Ok(body)
}

fn csv_table(header: &[String], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Argument(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

fn check_mass(m: f64) -> Result<()> {
    if !(m.is_finite() && m >= 0.0) {
        return Err(Error::Argument(format!("mass must be non-negative, got {m}")));
    }
    Ok(())
}

fn parse_z(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Error::Argument(format!("spectral parameter must be 're,im', got '{s}'"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let re = parts[0].parse::<f64>().map_err(|_| bad())?;
    let im = parts[1].parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

#[derive(Serialize)]
struct AlgebraOutput {
    model: &'static str,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    tolerance: f64,
    #[serde(flatten)]
    report: AlgebraReport,
}

fn algebra(a: &AlgebraArgs) -> Result<Rendered> {
    check_tol(a.tol)?;
    let (name, report, seed) = match a.model {
        Model::Standard => ("standard", verify_clifford(&standard_clifford(a.dim)?, a.tol), None),
        Model::Ks => {
            let set = ks_clifford(a.dim, &canonical_ordering(a.dim)?)?;
            let mut relations = verify_clifford(&set, a.tol).relations;
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let grid = LatticeGrid::new(a.dim, 4, 1.0)?;
            let lattice = operator_relations(grid, &mut rng, a.tol)?;
            relations.extend(lattice.relations.into_iter().map(|mut r| {
                r.name = format!("lattice {}", r.name);
                r
            }));
            ("ks", AlgebraReport::from_relations(relations, a.tol), Some(a.seed))
        }
        other => {
            return Err(Error::Argument(format!(
                "algebra supports --model standard or ks, got {other:?}"
            )))
        }
    };
    let out = AlgebraOutput {
        model: name,
        dim: a.dim,
        seed,
        tolerance: a.tol,
        report,
    };
    let body = match a.output.format.unwrap_or(Format::Json) {
        Format::Json => json(&out)?,
        Format::Csv => csv_table(
            &["relation".into(), "residual".into()],
            &out.report
                .relations
                .iter()
                .map(|r| vec![r.name.clone(), r.residual.to_string()])
                .collect::<Vec<_>>(),
        )?,
    };
    Ok(Rendered {
        summary: format!(
            "algebra model={name} dim={} relations={} max_residual={:e} {}",
            a.dim,
            out.report.relations.len(),
            out.report.max_residual,
            verdict(out.report.pass)
        ),
        pass: out.report.pass,
        body,
    })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn build_spec(a: &LatticeModelArgs) -> Result<SymbolSpec> {
    check_mass(a.m)?;
    match a.model {
        Model::Continuum => SymbolSpec::continuum(a.dim, a.m),
        Model::Naive => SymbolSpec::naive(a.dim, a.m, a.h),
        Model::Wilson => SymbolSpec::wilson(a.dim, a.m, a.h, a.rho_rule.rho(a.h)),
        Model::Ks => SymbolSpec::ks_lattice(a.dim, a.m, a.h),
        Model::KsContinuum => SymbolSpec::ks_continuum(a.dim, a.m),
        Model::Standard => Err(Error::Argument(
            "'standard' names a matrix family, not a Hamiltonian model".into(),
        )),
    }
}

#[derive(Serialize)]
struct SpecSummary {
    model: &'static str,
    dim: usize,
    m: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<f64>,
}

impl SpecSummary {
    fn of(spec: &SymbolSpec) -> Self {
        Self {
            model: spec.model().name(),
            dim: spec.dim(),
            m: spec.mass(),
            h: spec.spacing(),
            rho: spec.rho(),
        }
    }
}

#[derive(Serialize)]
struct DispersionPoint {
    xi: Vec<f64>,
    energy: f64,
}

#[derive(Serialize)]
struct DispersionOutput {
    #[serde(flatten)]
    spec: SpecSummary,
    grid: usize,
    extent: f64,
    points: Vec<DispersionPoint>,
}

fn dispersion(a: &DispersionArgs) -> Result<Rendered> {
    let spec = build_spec(&a.spec)?;
    let extent = spec.period().unwrap_or(1.0);
    let surface = dispersion_surface(&spec, a.grid, extent)?;
    let points: Vec<DispersionPoint> = surface
        .into_iter()
        .map(|(xi, e)| DispersionPoint {
            xi,
            energy: *e.last().expect("non-empty spectrum"),
        })
        .collect();
    let body = match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut header: Vec<String> = (1..=spec.dim()).map(|j| format!("xi_{j}")).collect();
            header.push("E".into());
            let rows: Vec<Vec<String>> = points
                .iter()
                .map(|p| {
                    p.xi.iter()
                        .map(f64::to_string)
                        .chain([p.energy.to_string()])
                        .collect()
                })
                .collect();
            csv_table(&header, &rows)?
        }
        Format::Json => json(&DispersionOutput {
            spec: SpecSummary::of(&spec),
            grid: a.grid,
            extent,
            points,
        })?,
    };
    Ok(Rendered {
        summary: format!(
            "dispersion model={} dim={} points={}",
            spec.model().name(),
            spec.dim(),
            a.grid.pow(spec.dim() as u32)
        ),
        pass: true,
        body,
    })
}

#[derive(Serialize)]
struct DoublingOutput {
    #[serde(flatten)]
    spec: SpecSummary,
    grid: usize,
    threshold: f64,
    count: usize,
    locations: Vec<Vec<f64>>,
    values: Vec<f64>,
}

fn doubling(a: &DoublingArgs) -> Result<Rendered> {
    let spec = build_spec(&a.spec)?;
    let threshold = a.threshold.unwrap_or_else(|| default_threshold(&spec));
    if threshold.is_nan() {
        return Err(Error::Argument("threshold must be a number".into()));
    }
    let report = count_light_minima(&spec, a.grid, threshold)?;
    let out = DoublingOutput {
        spec: SpecSummary::of(&spec),
        grid: a.grid,
        threshold,
        count: report.count,
        locations: report.locations,
        values: report.values,
    };
    let body = match a.output.format.unwrap_or(Format::Json) {
        Format::Json => json(&out)?,
        Format::Csv => {
            let mut header: Vec<String> = (1..=spec.dim()).map(|j| format!("xi_{j}")).collect();
            header.push("E".into());
            let rows: Vec<Vec<String>> = out
                .locations
                .iter()
                .zip(&out.values)
                .map(|(xi, e)| xi.iter().map(f64::to_string).chain([e.to_string()]).collect())
                .collect();
            csv_table(&header, &rows)?
        }
    };
    Ok(Rendered {
        summary: format!(
            "doubling model={} dim={} light_minima={}",
            spec.model().name(),
            spec.dim(),
            out.count
        ),
        pass: true,
        body,
    })
}

fn converge(a: &ConvergeArgs) -> Result<Rendered> {
    check_mass(a.m)?;
    let pairing = match a.model {
        Model::Naive => Pairing::Naive,
        Model::Wilson => Pairing::Wilson(a.rho_rule),
        Model::Ks => Pairing::Ks,
        other => {
            return Err(Error::Argument(format!(
                "converge supports --model naive, wilson or ks, got {other:?}"
            )))
        }
    };
    let params = ConvergenceParams {
        pairing,
        dim: a.dim,
        mass: a.m,
        h_list: a.h_list.clone().unwrap_or_else(default_h_list),
        z: parse_z(&a.z)?,
        grid_density: a.grid.unwrap_or_else(|| default_grid_density(a.dim)),
    };
    params.validate()?;
    if params.h_list.len() < 3 {
        return Err(Error::Argument(format!(
            "a rate fit needs at least 3 spacings, got {}",
            params.h_list.len()
        )));
    }
    let report = convergence_sweep(&params, &make_window())?;
    let mut body = Vec::new();
    match a.output.format.unwrap_or(Format::Json) {
        Format::Json => body = json(&report)?,
        Format::Csv => report.write_csv(&mut body)?,
    }
    let d_min = report.samples.iter().map(|s| s.distance).fold(f64::INFINITY, f64::min);
    let behaviour = if report.slope < 0.2 {
        format!("non-convergent (D stays above {d_min:.3})")
    } else {
        format!("converging, D(h_min)={:.3e}", report.samples.last().map_or(0.0, |s| s.distance))
    };
    Ok(Rendered {
        summary: format!(
            "converge model={} dim={} slope={:.4} intercept={:.4} r2={:.4} {behaviour}",
            report.model, report.dim, report.slope, report.intercept, report.r2
        ),
        pass: true,
        body,
    })
}

fn verify_ks(a: &VerifyKsArgs) -> Result<Rendered> {
    check_tol(a.tol)?;
    check_mass(a.m)?;
    let pair = StaggeredPair::from_fine_side(a.n, a.h, canonical_ordering(a.dim)?)?;
    let report = verify_pair(&pair, a.m, a.tol)?;
    let body = match a.output.format.unwrap_or(Format::Json) {
        Format::Json => json(&report)?,
        Format::Csv => csv_table(
            &["check".into(), "residual".into()],
            &[
                ("unitarity_fine", report.unitarity_fine),
                ("unitarity_coarse", report.unitarity_coarse),
                ("intertwine", report.intertwine),
                ("square", report.square),
            ]
            .iter()
            .map(|(n, r)| vec![n.to_string(), r.to_string()])
            .collect::<Vec<_>>(),
        )?,
    };
    let worst = [report.unitarity_fine, report.unitarity_coarse, report.intertwine, report.square]
        .into_iter()
        .fold(0.0, f64::max);
    Ok(Rendered {
        summary: format!(
            "verify-ks dim={} n={} max_residual={worst:e} {}",
            a.dim,
            a.n,
            verdict(report.pass)
        ),
        pass: report.pass,
        body,
    })
}

#[derive(Serialize)]
struct DiagOutput {
    dim: usize,
    m: f64,
    seed: u64,
    samples: usize,
    tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    identification: Option<&'static str>,
    max_offblock: f64,
    max_block1: f64,
    max_block2: f64,
    pass: bool,
    reports: Vec<BlockReport>,
}

fn diag(a: &DiagArgs) -> Result<Rendered> {
    check_tol(a.tol)?;
    check_mass(a.m)?;
    if a.samples == 0 {
        return Err(Error::Argument("need at least one sample".into()));
    }
    let case = match a.dim {
        1 => None,
        d => Some(conjugator(d)?),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let reports: Vec<BlockReport> = (0..a.samples)
        .map(|_| {
            let xi: Vec<f64> = (0..a.dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
            match &case {
                Some(c) => block_check(c, &xi, a.m, a.tol),
                None => one_dimensional_check(xi[0], a.m, a.tol),
            }
        })
        .collect::<Result<_>>()?;
    let max = |f: fn(&BlockReport) -> f64| reports.iter().map(f).fold(0.0, f64::max);
    let out = DiagOutput {
        dim: a.dim,
        m: a.m,
        seed: a.seed,
        samples: a.samples,
        tolerance: a.tol,
        identification: (a.dim == 1).then_some("A_1 = sigma_1, B = sigma_3"),
        max_offblock: max(|r| r.offblock),
        max_block1: max(|r| r.block1),
        max_block2: max(|r| r.block2),
        pass: reports.iter().all(|r| r.pass),
        reports,
    };
    let body = match a.output.format.unwrap_or(Format::Json) {
        Format::Json => json(&out)?,
        Format::Csv => {
            let mut header: Vec<String> = (1..=a.dim).map(|j| format!("xi_{j}")).collect();
            header.extend(["m", "offblock", "block1", "block2"].map(String::from));
            let rows: Vec<Vec<String>> = out
                .reports
                .iter()
                .map(|r| {
                    r.xi.iter()
                        .chain([&r.m, &r.offblock, &r.block1, &r.block2])
                        .map(f64::to_string)
                        .collect()
                })
                .collect();
            csv_table(&header, &rows)?
        }
    };
    let worst = out.max_offblock.max(out.max_block1).max(out.max_block2);
    let summary = match out.identification {
        Some(id) => format!("diag dim=1 {id} max_residual={worst:e} {}", verdict(out.pass)),
        None => format!(
            "diag dim={} samples={} max_residual={worst:e} {}",
            a.dim,
            a.samples,
            verdict(out.pass)
        ),
    };
    Ok(Rendered {
        summary,
        pass: out.pass,
        body,
    })
}
