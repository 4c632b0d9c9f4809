//! Command-line front end: reproduces every headline number and
//! figure-grade dataset of the toolkit as CSV/JSON files from a single
//! configuration.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical error,
//! 4 I/O error. Failures print a single machine-readable JSON line on
//! stderr: `{"error": code, "detail": text}`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use phasekit::analysis::{
    expectation_trajectory, expected_field, field_to_csv, rotate_state, trajectory_to_csv,
    FieldSampleConfig, WindowState,
};
use phasekit::basis::FockIndex;
use phasekit::fock::build_basis;
use phasekit::phase::{
    forward_phase_operator, phase_operator, selection_rule_violation, PhaseSequence,
};
use phasekit::quad::{compare_interior, comparison_to_csv};
use phasekit::wavefunc::{evaluate_grid, grid_to_csv, wavefunction};
use phasekit::StateVector;

#[derive(Parser)]
#[command(
    name = "phasekit",
    about = "Phase operator toolkit for a truncated two-mode photon register",
    version
)]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Truncation on the total occupation number.
    #[arg(long, global = true, default_value_t = 40)]
    n_max: u32,

    /// Interior margin for trust regions; defaults to n_max / 2.
    #[arg(long, global = true)]
    margin: Option<u32>,

    /// Wave number of the mode pair.
    #[arg(long, global = true, default_value_t = 1.0)]
    k: f64,

    /// Quadrature order for the wavefunction oracle; defaults to n_max + 8.
    #[arg(long, global = true)]
    quad_order: Option<usize>,

    /// Relative spectral floor below which the inverse square root refuses
    /// to proceed.
    #[arg(long, global = true, default_value_t = 1e-12)]
    rel_floor: f64,

    /// Directory all output files are written to. The environment variable
    /// PHASEKIT_OUTPUT_DIR overrides this flag when set.
    #[arg(long, global = true, default_value = "phasekit-out")]
    output_dir: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Table of the correction sequence a_n.
    AnTable {
        /// Number of sequence values to emit.
        #[arg(long, default_value_t = 40)]
        count: usize,
    },
    /// Full phase operator as JSON plus selection-rule and
    /// interior-unitarity reports.
    PhaseMatrix,
    /// CSV diff of operator-algebra matrix elements against the
    /// wavefunction-integration oracle over the interior.
    OracleCompare,
    /// Window-state phase variances against the ideal (2m-1)/m^2 limit.
    Variance {
        /// Window start index.
        #[arg(long, default_value_t = 200)]
        l: usize,
        /// Comma-separated window widths.
        #[arg(long, default_value = "1,2,3,4,5,6,7,8,9,10")]
        m_list: String,
    },
    /// Trajectory of the forward phase expectation under free evolution.
    Evolve {
        /// Window start index.
        #[arg(long, default_value_t = 200)]
        l: usize,
        /// Window width.
        #[arg(long, default_value_t = 10)]
        m: usize,
        /// Times: either comma-separated values or start:stop:count.
        #[arg(long, default_value = "0:6.283185307179586:25")]
        t_grid: String,
    },
    /// Polar samples of one occupation-pair wavefunction.
    WavefunctionGrid {
        #[arg(long, default_value_t = 1)]
        nfwd: u32,
        #[arg(long, default_value_t = 1)]
        nbwd: u32,
        /// Largest sampled radius.
        #[arg(long, default_value_t = 4.0)]
        rho_max: f64,
        /// Number of samples along each axis.
        #[arg(long, default_value_t = 50)]
        resolution: usize,
    },
    /// Expected field of a serialized state before and after a rotation,
    /// next to the equivalent translation.
    Field {
        /// JSON state file (same schema as the operator dumps).
        #[arg(long)]
        state_file: PathBuf,
        /// Rotation angle.
        #[arg(long, default_value_t = 0.3)]
        theta: f64,
    },
}

enum CliError {
    Config(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> (&'static str, u8) {
        match self {
            CliError::Config(_) => ("invalid_config", 2),
            CliError::Numerical(_) => ("numerical", 3),
            CliError::Io(_) => ("io", 4),
        }
    }

    fn detail(&self) -> &str {
        match self {
            CliError::Config(d) | CliError::Numerical(d) | CliError::Io(d) => d,
        }
    }
}

impl From<phasekit::Error> for CliError {
    fn from(err: phasekit::Error) -> Self {
        match err {
            phasekit::Error::NonPositiveSpectrum { .. } => CliError::Numerical(err.to_string()),
            _ => CliError::Config(err.to_string()),
        }
    }
}

/// Validated run configuration shared by all subcommands.
struct RunConfig {
    n_max: u32,
    margin: u32,
    k: f64,
    quad_order: usize,
    rel_floor: f64,
    output_dir: PathBuf,
}

impl RunConfig {
    fn from_args(args: &ConfigArgs) -> Result<Self, CliError> {
        let n_max = args.n_max;
        if n_max == 0 {
            return Err(CliError::Config("n_max must be positive".into()));
        }
        let margin = args.margin.unwrap_or(n_max / 2);
        if margin == 0 || margin >= n_max {
            return Err(CliError::Config(format!(
                "margin must satisfy 0 < margin < n_max, got margin = {margin}, n_max = {n_max}"
            )));
        }
        if args.k <= 0.0 || !args.k.is_finite() {
            return Err(CliError::Config(format!(
                "wave number k must be positive, got {}",
                args.k
            )));
        }
        let quad_order = args.quad_order.unwrap_or(n_max as usize + 8);
        if quad_order == 0 {
            return Err(CliError::Config("quad_order must be positive".into()));
        }
        if args.rel_floor <= 0.0 || !args.rel_floor.is_finite() {
            return Err(CliError::Config(format!(
                "rel_floor must be positive, got {}",
                args.rel_floor
            )));
        }
        let output_dir = match std::env::var_os("PHASEKIT_OUTPUT_DIR") {
            Some(dir) => PathBuf::from(dir),
            None => args.output_dir.clone(),
        };
        Ok(Self {
            n_max,
            margin,
            k: args.k,
            quad_order,
            rel_floor: args.rel_floor,
            output_dir,
        })
    }

    fn write(&self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        std::fs::create_dir_all(&self.output_dir)
            .map_err(|e| CliError::Io(format!("creating {}: {e}", self.output_dir.display())))?;
        let path = self.output_dir.join(name);
        std::fs::write(&path, contents)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
        Ok(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let (code, status) = err.code();
            eprintln!(
                "{}",
                serde_json::json!({ "error": code, "detail": err.detail() })
            );
            ExitCode::from(status)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = RunConfig::from_args(&cli.config)?;
    match &cli.command {
        Command::AnTable { count } => an_table(&cfg, *count),
        Command::PhaseMatrix => phase_matrix(&cfg),
        Command::OracleCompare => oracle_compare(&cfg),
        Command::Variance { l, m_list } => variance(&cfg, *l, m_list),
        Command::Evolve { l, m, t_grid } => evolve(&cfg, *l, *m, t_grid),
        Command::WavefunctionGrid {
            nfwd,
            nbwd,
            rho_max,
            resolution,
        } => wavefunction_grid(&cfg, *nfwd, *nbwd, *rho_max, *resolution),
        Command::Field { state_file, theta } => field(&cfg, state_file, *theta),
    }
}

fn an_table(cfg: &RunConfig, count: usize) -> Result<(), CliError> {
    if count == 0 {
        return Err(CliError::Config("count must be positive".into()));
    }
    let table = PhaseSequence::by_recurrence(count);
    let path = cfg.write("an_table.csv", &table.to_csv())?;
    println!("wrote {} ({count} values)", path.display());
    Ok(())
}

fn phase_matrix(cfg: &RunConfig) -> Result<(), CliError> {
    let basis = build_basis(cfg.n_max);
    let e = phase_operator(&basis, cfg.k, cfg.rel_floor)?;
    let matrix_path = cfg.write("phase_matrix.json", &e.to_json_string()?)?;

    let violation = selection_rule_violation(&e, &basis);
    let unitarity = (&e.adjoint() * &e).interior_max_abs_vs_identity(cfg.margin);
    let report = serde_json::json!({
        "n_max": cfg.n_max,
        "margin": cfg.margin,
        "k": cfg.k,
        "rel_floor": cfg.rel_floor,
        "selection_rule_violation": violation,
        "interior_unitarity": unitarity,
    });
    let report_path = cfg.write("phase_report.json", &format!("{report}\n"))?;
    println!(
        "wrote {} and {} (selection rule {violation:.3e}, interior unitarity {unitarity:.3e})",
        matrix_path.display(),
        report_path.display()
    );
    Ok(())
}

fn oracle_compare(cfg: &RunConfig) -> Result<(), CliError> {
    let basis = build_basis(cfg.n_max);
    let e = phase_operator(&basis, cfg.k, cfg.rel_floor)?;
    let rows = compare_interior(&e, &basis, cfg.margin, cfg.quad_order)?;
    let worst = rows.iter().fold(0.0_f64, |acc, r| acc.max(r.abs_diff));
    let path = cfg.write("oracle_compare.csv", &comparison_to_csv(&rows))?;
    println!(
        "wrote {} ({} interior elements, max |oracle - operator| = {worst:.3e})",
        path.display(),
        rows.len()
    );
    Ok(())
}

fn variance(cfg: &RunConfig, l: usize, m_list: &str) -> Result<(), CliError> {
    let widths = parse_usize_list(m_list)?;
    if widths.is_empty() {
        return Err(CliError::Config("m_list must not be empty".into()));
    }
    let max_m = *widths.iter().max().unwrap();
    let n_keep = l + max_m;
    let e_plus = forward_phase_operator(n_keep);
    let mut out = String::from("m,l,variance,limit\n");
    for &m in &widths {
        if m == 0 {
            return Err(CliError::Config("window widths must be positive".into()));
        }
        let window = WindowState::new(l, m, n_keep);
        let v = phasekit::analysis::variance_phase_forward(window.state(), &e_plus);
        out.push_str(&format!(
            "{},{},{:.16e},{:.16e}\n",
            m,
            l,
            v,
            window.ideal_variance()
        ));
    }
    let path = cfg.write("variance.csv", &out)?;
    println!("wrote {} ({} window widths at l = {l})", path.display(), widths.len());
    Ok(())
}

fn evolve(cfg: &RunConfig, l: usize, m: usize, t_grid: &str) -> Result<(), CliError> {
    if m == 0 {
        return Err(CliError::Config("window width must be positive".into()));
    }
    let times = parse_time_grid(t_grid)?;
    let n_keep = l + m;
    let window = WindowState::new(l, m, n_keep);
    let e_plus = forward_phase_operator(n_keep);
    let values = expectation_trajectory(window.state(), &e_plus, cfg.k, &times);
    let path = cfg.write("trajectory.csv", &trajectory_to_csv(&times, &values))?;
    println!("wrote {} ({} times)", path.display(), times.len());
    Ok(())
}

fn wavefunction_grid(
    cfg: &RunConfig,
    nfwd: u32,
    nbwd: u32,
    rho_max: f64,
    resolution: usize,
) -> Result<(), CliError> {
    if resolution < 1 {
        return Err(CliError::Config("resolution must be positive".into()));
    }
    if rho_max <= 0.0 || !rho_max.is_finite() {
        return Err(CliError::Config(format!(
            "rho_max must be positive, got {rho_max}"
        )));
    }
    let wf = wavefunction(FockIndex::new(nfwd, nbwd), cfg.k)?;
    let rhos: Vec<f64> = (0..resolution)
        .map(|i| rho_max * i as f64 / (resolution.max(2) - 1) as f64)
        .collect();
    let phis: Vec<f64> = (0..resolution)
        .map(|j| 2.0 * std::f64::consts::PI * j as f64 / resolution as f64)
        .collect();
    let grid = evaluate_grid(&wf, &rhos, &phis)?;
    let path = cfg.write("wavefunction_grid.csv", &grid_to_csv(&grid, &rhos, &phis))?;
    println!(
        "wrote {} ({resolution}x{resolution} samples for ({nfwd},{nbwd}))",
        path.display()
    );
    Ok(())
}

fn field(cfg: &RunConfig, state_file: &Path, theta: f64) -> Result<(), CliError> {
    let text = std::fs::read_to_string(state_file)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", state_file.display())))?;
    let state = StateVector::from_json_str(&text)?;
    let norm = state.norm();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(CliError::Config(format!(
            "state in {} must be unit norm, got {norm}",
            state_file.display()
        )));
    }
    let phasekit::BasisTag::TwoMode { n_max } = state.tag() else {
        return Err(CliError::Config("state must live on a two-mode basis".into()));
    };
    let basis = build_basis(n_max);

    let xs: Vec<f64> = (0..=200)
        .map(|i| 4.0 * std::f64::consts::PI / cfg.k * i as f64 / 200.0)
        .collect();
    let sample_cfg = FieldSampleConfig::new(cfg.k, 1.0, xs.clone())?;
    let original = expected_field(&state, &sample_cfg, &basis)?;

    let rotated_state = rotate_state(&state, &basis, theta)?;
    let rotated = expected_field(&rotated_state, &sample_cfg, &basis)?;

    let shifted: Vec<f64> = xs.iter().map(|&x| x - theta / cfg.k).collect();
    let shift_cfg = FieldSampleConfig::new(cfg.k, 1.0, shifted)?;
    let translated = expected_field(&state, &shift_cfg, &basis)?;

    let p1 = cfg.write("field.csv", &field_to_csv(&xs, &original))?;
    let p2 = cfg.write("field_rotated.csv", &field_to_csv(&xs, &rotated))?;
    let p3 = cfg.write("field_translated.csv", &field_to_csv(&xs, &translated))?;
    let worst = rotated
        .iter()
        .zip(&translated)
        .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()));
    println!(
        "wrote {}, {}, {} (rotation vs translation agree to {worst:.3e})",
        p1.display(),
        p2.display(),
        p3.display()
    );
    Ok(())
}

fn parse_usize_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| CliError::Config(format!("bad list entry {s:?}: {e}")))
        })
        .collect()
}

/// Accepts `a,b,c` or `start:stop:count` (inclusive linear grid).
fn parse_time_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 3 {
        let start: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|e| CliError::Config(format!("bad grid start {:?}: {e}", parts[0])))?;
        let stop: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|e| CliError::Config(format!("bad grid stop {:?}: {e}", parts[1])))?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|e| CliError::Config(format!("bad grid count {:?}: {e}", parts[2])))?;
        if count < 2 {
            return Err(CliError::Config("time grid needs at least 2 points".into()));
        }
        return Ok((0..count)
            .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
            .collect());
    }
    let times: Result<Vec<f64>, CliError> = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Config(format!("bad time value {s:?}: {e}")))
        })
        .collect();
    let times = times?;
    if times.is_empty() {
        return Err(CliError::Config("time grid must not be empty".into()));
    }
    Ok(times)
}
