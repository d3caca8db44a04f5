//! Command-line front end: `verify` (symbolic certificates), `solve`
//! (single run), `convergence` (mesh-sequence study with rate verdicts).
//!
//! Exit codes: 0 success, 1 usage/config error, 2 inadmissible element,
//! 3 solver failure, 4 verdict mismatch.

pub mod report;
pub mod study;
pub mod verify;

use crate::element::{lookup, DofKind, ElementFamily, SMITH_KIDGER};
use crate::fem::{solutions, Discretization, FemError, SolverConfig};
use crate::mesh::{enumerate_dofs, BoxMesh};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INADMISSIBLE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "brick14",
    about = "14-node nonconforming brick elements: verification and convergence studies"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the symbolic structure checks and compare with the expected
    /// verdicts.
    Verify(VerifyArgs),
    /// Solve one Poisson problem and print its errors.
    Solve(SolveArgs),
    /// Run a mesh sequence, estimate convergence rates and check them
    /// against the expected orders.
    Convergence(ConvergenceArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated element types (default: sk1..sk6).
    #[arg(long)]
    pub types: Option<String>,
    /// centroid | integral | both.
    #[arg(long, default_value = "both")]
    pub dofs: String,
    /// Write the full certificate as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long = "type")]
    pub element: String,
    /// centroid | integral.
    #[arg(long, default_value = "centroid")]
    pub dofs: String,
    /// linear | quadratic | cubic | trig.
    #[arg(long, default_value = "trig")]
    pub solution: String,
    /// Cells per axis, e.g. 4,4,4.
    #[arg(long, default_value = "4,4,4")]
    pub cells: String,
    /// Domain box as x0,y0,z0,x1,y1,z1 (default unit cube).
    #[arg(long = "box")]
    pub domain: Option<String>,
    /// Grid file: three lines, each the strictly increasing coordinates of
    /// one axis (overrides --cells/--box).
    #[arg(long)]
    pub grid_file: Option<PathBuf>,
    /// Quadrature points per axis for assembly.
    #[arg(long, default_value_t = 5)]
    pub quad: usize,
    /// Quadrature points per axis for error norms.
    #[arg(long, default_value_t = 7)]
    pub quad_error: usize,
    /// CG relative residual tolerance.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Dump the reduced system in coordinate text format (row col value).
    #[arg(long)]
    pub dump_matrix: Option<PathBuf>,
    /// Export the solution as a plain-text DOF table.
    #[arg(long)]
    pub export: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    /// Comma-separated element types.
    #[arg(long, default_value = "sk1,sk2,sk5,sk6,new")]
    pub types: String,
    /// centroid | integral | both.
    #[arg(long, default_value = "both")]
    pub dofs: String,
    #[arg(long, default_value = "trig")]
    pub solution: String,
    /// Cells per axis for each mesh, e.g. 2,4,8,16.
    #[arg(long, default_value = "2,4,8,16")]
    pub meshes: String,
    #[arg(long = "box")]
    pub domain: Option<String>,
    #[arg(long, default_value_t = 5)]
    pub quad: usize,
    #[arg(long, default_value_t = 7)]
    pub quad_error: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

/// A usage/config error (exit code 1).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

fn parse_types(arg: Option<&str>) -> Result<Vec<&'static dyn ElementFamily>, UsageError> {
    match arg {
        None => Ok(SMITH_KIDGER.to_vec()),
        Some(s) => s
            .split(',')
            .map(|name| {
                lookup(name.trim())
                    .ok_or_else(|| UsageError(format!("unknown element type '{name}'")))
            })
            .collect(),
    }
}

fn parse_kinds(arg: &str) -> Result<Vec<DofKind>, UsageError> {
    match arg {
        "both" => Ok(DofKind::BOTH.to_vec()),
        s => DofKind::parse(s)
            .map(|k| vec![k])
            .ok_or_else(|| UsageError(format!("unknown DOF kind '{s}' (centroid|integral|both)"))),
    }
}

fn parse_floats(s: &str, n: usize, what: &str) -> Result<Vec<f64>, UsageError> {
    let vals: Result<Vec<f64>, _> = s.split(',').map(|p| p.trim().parse::<f64>()).collect();
    let vals = vals.map_err(|e| UsageError(format!("bad {what} '{s}': {e}")))?;
    if vals.len() != n {
        return Err(UsageError(format!(
            "{what} needs {n} comma-separated values"
        )));
    }
    Ok(vals)
}

fn parse_counts(s: &str, what: &str) -> Result<Vec<usize>, UsageError> {
    let vals: Result<Vec<usize>, _> = s.split(',').map(|p| p.trim().parse::<usize>()).collect();
    vals.map_err(|e| UsageError(format!("bad {what} '{s}': {e}")))
}

fn parse_domain(arg: Option<&str>) -> Result<([f64; 3], [f64; 3]), UsageError> {
    match arg {
        None => Ok(([0.0; 3], [1.0; 3])),
        Some(s) => {
            let v = parse_floats(s, 6, "--box")?;
            Ok(([v[0], v[1], v[2]], [v[3], v[4], v[5]]))
        }
    }
}

fn mesh_from_args(
    cells: &str,
    domain: Option<&str>,
    grid_file: Option<&PathBuf>,
) -> Result<BoxMesh, CliError> {
    if let Some(path) = grid_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
        let mut axes: Vec<Vec<f64>> = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let coords: Result<Vec<f64>, _> =
                line.split_whitespace().map(|t| t.parse::<f64>()).collect();
            axes.push(coords.map_err(|e| UsageError(format!("bad grid file: {e}")))?);
        }
        if axes.len() != 3 {
            return Err(UsageError("grid file needs exactly 3 non-empty lines".into()).into());
        }
        let [x, y, z]: [Vec<f64>; 3] = axes.try_into().unwrap();
        return Ok(BoxMesh::from_axes([x, y, z]).map_err(FemError::from)?);
    }
    let c = parse_counts(cells, "--cells")?;
    if c.len() != 3 || c.contains(&0) {
        return Err(UsageError("--cells needs three positive values".into()).into());
    }
    let (lo, hi) = parse_domain(domain)?;
    Ok(BoxMesh::uniform(lo, hi, [c[0], c[1], c[2]]).map_err(FemError::from)?)
}

/// Everything a command can fail with, mapped to exit codes by [`exit_code`].
#[derive(Debug)]
pub enum CliError {
    Usage(UsageError),
    Fem(FemError),
    Io(std::io::Error),
    /// A verdict did not match its expectation (verify or convergence).
    Mismatch(String),
}

impl From<UsageError> for CliError {
    fn from(e: UsageError) -> Self {
        CliError::Usage(e)
    }
}

impl From<FemError> for CliError {
    fn from(e: FemError) -> Self {
        CliError::Fem(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(e) => write!(f, "{e}"),
            CliError::Fem(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Mismatch(e) => write!(f, "{e}"),
        }
    }
}

pub fn exit_code(err: &CliError) -> i32 {
    match err {
        CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
        CliError::Fem(FemError::Inadmissible(_)) => EXIT_INADMISSIBLE,
        CliError::Fem(FemError::SolverDiverged { .. }) => EXIT_SOLVER,
        CliError::Fem(_) => EXIT_USAGE,
        CliError::Mismatch(_) => EXIT_MISMATCH,
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let families = parse_types(args.types.as_deref())?;
    let kinds = parse_kinds(&args.dofs)?;
    let report = verify::run_verify(&families, &kinds);
    for row in &report.rows {
        println!("{}", verify::row_summary(row));
    }
    if let Some(path) = &args.json {
        std::fs::write(
            path,
            serde_json::to_string_pretty(&report).expect("serializable"),
        )?;
    }
    if report.all_match {
        println!(
            "verify: all {} rows match the expected verdicts",
            report.rows.len()
        );
        Ok(())
    } else {
        Err(CliError::Mismatch(
            "verify: observed verdicts deviate from the expected table".into(),
        ))
    }
}

pub fn cmd_solve(args: &SolveArgs) -> Result<(), CliError> {
    let family = lookup(&args.element)
        .ok_or_else(|| UsageError(format!("unknown element type '{}'", args.element)))?;
    let kind = DofKind::parse(&args.dofs)
        .ok_or_else(|| UsageError(format!("unknown DOF kind '{}'", args.dofs)))?;
    let sol = solutions::lookup(&args.solution)
        .ok_or_else(|| UsageError(format!("unknown solution '{}'", args.solution)))?;
    let mesh = mesh_from_args(&args.cells, args.domain.as_deref(), args.grid_file.as_ref())?;

    let def = crate::element::build_basis(family, kind).map_err(FemError::from)?;
    let dofs = enumerate_dofs(&mesh, kind);
    let disc = Discretization::new(&mesh, &dofs, &def, args.quad, args.quad_error)
        .map_err(CliError::Fem)?;
    let cfg = SolverConfig {
        tol: args.tol,
        ..SolverConfig::default()
    };

    let (a, b) = disc.assemble(sol);
    let reduced = disc.apply_dirichlet(&a, &b, sol);
    if let Some(path) = &args.dump_matrix {
        use std::io::Write;
        let mut out = String::new();
        for (i, j, v) in reduced.matrix.entries() {
            out.push_str(&format!("{} {} {}\n", i, j, v));
        }
        let mut f = std::fs::File::create(path)?;
        f.write_all(out.as_bytes())?;
    }
    let maxit = (cfg.maxit_factor * reduced.free.len()).max(50);
    let (x, stats) =
        crate::numerics::cg_solve(&reduced.matrix, &reduced.rhs, cfg.tol, maxit, cfg.precond);
    if !stats.converged {
        return Err(FemError::SolverDiverged {
            iterations: stats.iterations,
            relative_residual: stats.relative_residual,
        }
        .into());
    }
    let coeffs = reduced.expand(&x);
    let err = disc.error_norms(&coeffs, sol);

    if let Some(path) = &args.export {
        let mut out = String::from("# dof_kind global_index x y z coefficient\n");
        for (g, entity) in dofs.entities.iter().enumerate() {
            let p = entity.position();
            out.push_str(&format!(
                "{} {} {} {} {} {}\n",
                kind.name(),
                g,
                p[0],
                p[1],
                p[2],
                coeffs[g]
            ));
        }
        std::fs::write(path, out)?;
    }

    println!(
        "element={} dofs={} solution={} ndofs={} cg_iters={} residual={:.3e}",
        family.name(),
        kind.name(),
        sol.name(),
        dofs.n_total(),
        stats.iterations,
        stats.relative_residual
    );
    println!("l2={} energy={}", err.l2, err.energy);
    Ok(())
}

pub fn cmd_convergence(args: &ConvergenceArgs, timer: &dyn Fn() -> f64) -> Result<(), CliError> {
    let families = parse_types(Some(&args.types))?;
    let kinds = parse_kinds(&args.dofs)?;
    let sol = solutions::lookup(&args.solution)
        .ok_or_else(|| UsageError(format!("unknown solution '{}'", args.solution)))?;
    let meshes = parse_counts(&args.meshes, "--meshes")?;
    let domain = parse_domain(args.domain.as_deref())?;
    let cfg = study::StudyConfig {
        families,
        kinds,
        solution: sol,
        meshes,
        domain,
        quad_volume: args.quad,
        quad_error: args.quad_error,
        solver: SolverConfig {
            tol: args.tol,
            ..SolverConfig::default()
        },
    };
    cfg.validate().map_err(UsageError)?;
    let report = study::run_study(&cfg, timer).map_err(CliError::Fem)?;

    println!(
        "{:4} {:9} {:8} {:>6} {:>9} {:>9} {:>7} {:>7}  verdict",
        "type", "dof_kind", "solution", "h", "l2", "energy", "rate_l2", "rate_en"
    );
    for s in &report.studies {
        for r in &s.rows {
            println!(
                "{:4} {:9} {:8} {:>6.4} {:>9.3e} {:>9.3e} {:>7} {:>7}",
                s.element,
                s.dof_kind,
                s.solution,
                r.h,
                r.l2,
                r.energy,
                r.rate_l2.map(|x| format!("{x:.3}")).unwrap_or_default(),
                r.rate_energy.map(|x| format!("{x:.3}")).unwrap_or_default(),
            );
        }
        println!(
            "{:4} {:9} -> energy rate {:.3} (expected {:.1}) {}, l2 rate {:.3} (expected {:.1}) {}{}",
            s.element,
            s.dof_kind,
            s.observed_rate_energy,
            s.expected_rate_energy,
            if s.energy_pass { "PASS" } else { "FAIL" },
            s.observed_rate_l2,
            s.expected_rate_l2,
            if s.l2_pass { "PASS" } else { "FAIL" },
            match (s.superconvergent, s.preasymptotic_warning) {
                (true, _) => " [superconvergent at this mesh range]",
                (false, true) => " [warning: pre-asymptotic]",
                (false, false) => "",
            },
        );
    }

    if let Some(path) = &args.csv {
        std::fs::write(path, report::write_csv(&report))?;
    }
    if let Some(path) = &args.json {
        std::fs::write(
            path,
            serde_json::to_string_pretty(&report).expect("serializable"),
        )?;
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(CliError::Mismatch(
            "convergence: at least one rate verdict failed".into(),
        ))
    }
}

/// Parse argv and dispatch; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit code 0.
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let start = std::time::Instant::now();
    let timer = move || start.elapsed().as_secs_f64();
    let result = match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Convergence(args) => cmd_convergence(args, &timer),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
