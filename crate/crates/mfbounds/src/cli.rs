//! Command-line surface: simulate / partition / scaling / spectrum / bounds /
//! figure / run / list-runs.
//!
//! Exit codes: 0 on success, 1 on validation errors (bad flags or parameter
//! ranges, nothing written), 2 on numeric or runtime failures (for pipeline
//! runs the registry still receives a failed record).

use crate::error::{Error, Result};
use crate::estimate::{
    modified_partition_function, partition_function, scaling_function, MomentGrid, ScaleGrid,
    TableMode, DEFAULT_BLOCK_LEN, DEFAULT_SCALE_COUNT,
};
use crate::harness::{reproduce_figure, run_experiment, ExperimentConfig, Registry, RunStatus};
use crate::io;
use crate::sim::{generate_with_warnings, ProcessSpec, Seed};
use crate::spectrum::{
    h_grid, hsssi_bounds, h_plus_from_factor_tau, legendre_spectrum, support_bounds_from_tau,
    theoretical_spectrum, theoretical_tau, ScalingFunction, SpectrumBounds, SpectrumFamily,
    TauFamily, DEFAULT_Q_STEP, DEFAULT_Q_WINDOW,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "mfbounds",
    version,
    about = "Multifractal analysis toolkit: process simulation, partition-function scaling estimation, Legendre spectra, and spectrum-support bounds",
    long_about = None
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate one sample path and write it as CSV (t,x) with a JSON sidecar
    #[command(allow_negative_numbers = true)]
    Simulate(SimulateArgs),
    /// Compute a partition-function table from a path CSV
    #[command(allow_negative_numbers = true)]
    Partition(PartitionArgs),
    /// Estimate the scaling function (log-log regression) from a path CSV
    #[command(allow_negative_numbers = true)]
    Scaling(ScalingArgs),
    /// Compute a singularity spectrum (numeric Legendre transform or closed form)
    #[command(allow_negative_numbers = true)]
    Spectrum(SpectrumArgs),
    /// Compute spectrum-support bounds for a process family
    #[command(allow_negative_numbers = true)]
    Bounds(BoundsArgs),
    /// Reproduce one of the four reference experiments (1: BM, 2: stable,
    /// 3: LFSM, 4: MRW) with a two-panel SVG
    Figure(FigureArgs),
    /// Run a full experiment from a JSON configuration file
    Run(RunArgs),
    /// List recorded runs (or show one by id)
    ListRuns(ListRunsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum ProcessFamilyArg {
    /// Brownian motion
    Bm,
    /// Fractional Brownian motion (needs --hurst)
    Fbm,
    /// Alpha-stable Levy motion (needs --alpha; --sigma/--beta/--mu optional)
    Stable,
    /// Linear fractional stable motion (needs --hurst and --alpha)
    Lfsm,
    /// Inverse Gaussian Levy subordinator (needs --delta and --lambda)
    IgLevy,
    /// Totally skewed stable subordinator (needs --alpha in (0,1))
    StableSubordinator,
    /// Inverse stable subordinator / first-passage process (needs --alpha in (0,1))
    InverseSubordinator,
    /// Log-normal cascade measure process (needs --lambda2)
    Cascade,
    /// Multifractal random walk (needs --lambda2)
    Mrw,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Process family to simulate
    #[arg(long, value_enum)]
    pub process: ProcessFamilyArg,
    /// Number of increments; the path has n+1 samples (dimensionless count)
    #[arg(long)]
    pub n: usize,
    /// Time horizon T in path-time units (default: n, i.e. unit spacing)
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Random seed (64-bit unsigned integer)
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Hurst index H in (0,1) (dimensionless)
    #[arg(long)]
    pub hurst: Option<f64>,
    /// Stability index alpha (dimensionless)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Stable scale parameter sigma > 0 (units of x)
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Stable skewness beta in [-1,1] (dimensionless)
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    /// Stable location mu (units of x per unit time)
    #[arg(long, default_value_t = 0.0)]
    pub mu: f64,
    /// Inverse Gaussian shape delta > 0 (dimensionless)
    #[arg(long)]
    pub delta: Option<f64>,
    /// Inverse Gaussian tilt lambda >= 0 (dimensionless)
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Cascade intermittency lambda^2 in (0, 1/2) (dimensionless)
    #[arg(long)]
    pub lambda2: Option<f64>,
    /// LFSM kernel truncation in time units (default 600)
    #[arg(long, default_value_t = 600)]
    pub kernel_cutoff: u32,
    /// LFSM mesh points per time unit (default 256)
    #[arg(long, default_value_t = 256)]
    pub mesh: u32,
    /// Inverse-subordinator grid refinement factor (default 8)
    #[arg(long, default_value_t = 8)]
    pub refine: u32,
    /// Cascade/MRW decorrelation length in time units (default: horizon)
    #[arg(long)]
    pub corr_length: Option<f64>,
    /// Output CSV path (a .json sidecar is written next to it)
    #[arg(long)]
    pub out: PathBuf,
}

fn require(name: &str, value: Option<f64>, family: &str) -> Result<f64> {
    value.ok_or_else(|| Error::invalid(name, format!("required for process family {family}")))
}

impl SimulateArgs {
    fn process_spec(&self, horizon: f64) -> Result<ProcessSpec> {
        Ok(match self.process {
            ProcessFamilyArg::Bm => ProcessSpec::Bm,
            ProcessFamilyArg::Fbm => ProcessSpec::Fbm {
                hurst: require("hurst", self.hurst, "fbm")?,
            },
            ProcessFamilyArg::Stable => ProcessSpec::StableLevy {
                alpha: require("alpha", self.alpha, "stable")?,
                sigma: self.sigma,
                beta: self.beta,
                mu: self.mu,
            },
            ProcessFamilyArg::Lfsm => ProcessSpec::Lfsm {
                hurst: require("hurst", self.hurst, "lfsm")?,
                alpha: require("alpha", self.alpha, "lfsm")?,
                kernel_cutoff: self.kernel_cutoff,
                mesh: self.mesh,
            },
            ProcessFamilyArg::IgLevy => ProcessSpec::IgLevy {
                delta: require("delta", self.delta, "ig-levy")?,
                lambda: require("lambda", self.lambda, "ig-levy")?,
            },
            ProcessFamilyArg::StableSubordinator => ProcessSpec::StableSubordinator {
                alpha: require("alpha", self.alpha, "stable-subordinator")?,
                sigma: self.sigma,
            },
            ProcessFamilyArg::InverseSubordinator => ProcessSpec::InverseStableSubordinator {
                alpha: require("alpha", self.alpha, "inverse-subordinator")?,
                refine: self.refine,
            },
            ProcessFamilyArg::Cascade => ProcessSpec::LognormalCascade {
                lambda2: require("lambda2", self.lambda2, "cascade")?,
                horizon: self.corr_length.unwrap_or(horizon),
            },
            ProcessFamilyArg::Mrw => ProcessSpec::Mrw {
                lambda2: require("lambda2", self.lambda2, "mrw")?,
                horizon: self.corr_length.unwrap_or(horizon),
            },
        })
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum ModeArg {
    /// Plain increments
    Standard,
    /// Block-wise maxima of m increments (robust to negative orders)
    Modified,
}

#[derive(Args, Debug)]
pub struct GridArgs {
    /// Smallest moment order q (dimensionless)
    #[arg(long, default_value_t = -3.0)]
    pub q_min: f64,
    /// Largest moment order q (dimensionless)
    #[arg(long, default_value_t = 4.0)]
    pub q_max: f64,
    /// Moment grid step (dimensionless)
    #[arg(long, default_value_t = 0.25)]
    pub q_step: f64,
    /// Number of geometric scales max_dt^{i/N} (dimensionless count)
    #[arg(long, default_value_t = DEFAULT_SCALE_COUNT)]
    pub scales: usize,
    /// Largest lag in path-time units (default: T/2 standard, T/(2m) modified)
    #[arg(long)]
    pub max_delta: Option<f64>,
}

#[derive(Args, Debug)]
pub struct PartitionArgs {
    /// Input path CSV (header t,x)
    #[arg(long)]
    pub input: PathBuf,
    /// Partition-function variant
    #[arg(long, value_enum, default_value_t = ModeArg::Standard)]
    pub mode: ModeArg,
    /// Block length m for the modified variant (count of increments)
    #[arg(long, default_value_t = DEFAULT_BLOCK_LEN)]
    pub m: u32,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Output CSV path (q,delta_t,S; a .json sidecar is written next to it)
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ScalingArgs {
    /// Input path CSV (header t,x)
    #[arg(long)]
    pub input: PathBuf,
    /// Partition-function variant
    #[arg(long, value_enum, default_value_t = ModeArg::Standard)]
    pub mode: ModeArg,
    /// Block length m for the modified variant (count of increments)
    #[arg(long, default_value_t = DEFAULT_BLOCK_LEN)]
    pub m: u32,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Output CSV path (q,tau_hat,r2)
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum CurveFamilyArg {
    /// tau(q) = H q (needs --hurst)
    SelfSimilar,
    /// Stable Levy asymptotic (needs --alpha)
    Stable,
    /// LFSM asymptotic (needs --hurst and --alpha)
    Lfsm,
    /// Heavy-tailed Levy asymptotic tau (needs --alpha); closed-form spectrum
    /// needs --beta and optionally --gaussian
    Levy,
    /// Log-normal cascade (needs --lambda2)
    Cascade,
    /// Cascade with the dyadic-estimator linearization (needs --lambda2)
    CascadeLinearized,
    /// Multifractal random walk (needs --lambda2)
    Mrw,
}

#[derive(Args, Debug)]
pub struct CurveParams {
    /// Hurst/self-similarity index H (dimensionless)
    #[arg(long)]
    pub hurst: Option<f64>,
    /// Stability or tail index alpha (dimensionless)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Cascade intermittency lambda^2 in (0, 1/2) (dimensionless)
    #[arg(long)]
    pub lambda2: Option<f64>,
    /// Blumenthal-Getoor small-jump index beta in `[0,2]` (dimensionless)
    #[arg(long)]
    pub beta: Option<f64>,
    /// The Levy process has a Gaussian component (forces beta' = 2)
    #[arg(long)]
    pub gaussian: bool,
}

impl CurveParams {
    fn tau_family(&self, family: CurveFamilyArg) -> Result<TauFamily> {
        Ok(match family {
            CurveFamilyArg::SelfSimilar => TauFamily::SelfSimilar {
                hurst: require("hurst", self.hurst, "self-similar")?,
            },
            CurveFamilyArg::Stable => TauFamily::StableAsym {
                alpha: require("alpha", self.alpha, "stable")?,
            },
            CurveFamilyArg::Lfsm => TauFamily::LfsmAsym {
                hurst: require("hurst", self.hurst, "lfsm")?,
                alpha: require("alpha", self.alpha, "lfsm")?,
            },
            CurveFamilyArg::Levy => TauFamily::LevyAsym {
                alpha: require("alpha", self.alpha, "levy")?,
            },
            CurveFamilyArg::Cascade => TauFamily::Cascade {
                lambda2: require("lambda2", self.lambda2, "cascade")?,
            },
            CurveFamilyArg::CascadeLinearized => TauFamily::CascadeLinearized {
                lambda2: require("lambda2", self.lambda2, "cascade-linearized")?,
            },
            CurveFamilyArg::Mrw => TauFamily::Mrw {
                lambda2: require("lambda2", self.lambda2, "mrw")?,
            },
        })
    }

    fn spectrum_family(&self, family: CurveFamilyArg) -> Result<SpectrumFamily> {
        Ok(match family {
            CurveFamilyArg::Stable => SpectrumFamily::Stable {
                alpha: require("alpha", self.alpha, "stable")?,
            },
            CurveFamilyArg::Lfsm => SpectrumFamily::Lfsm {
                hurst: require("hurst", self.hurst, "lfsm")?,
                alpha: require("alpha", self.alpha, "lfsm")?,
            },
            CurveFamilyArg::Levy => SpectrumFamily::Levy {
                beta: require("beta", self.beta, "levy")?,
                has_gaussian_component: self.gaussian,
            },
            CurveFamilyArg::Cascade | CurveFamilyArg::CascadeLinearized => {
                SpectrumFamily::Cascade {
                    lambda2: require("lambda2", self.lambda2, "cascade")?,
                }
            }
            CurveFamilyArg::Mrw => SpectrumFamily::Mrw {
                lambda2: require("lambda2", self.lambda2, "mrw")?,
            },
            CurveFamilyArg::SelfSimilar => {
                return Err(Error::Argument(
                    "self-similar spectra are a single point; use bounds instead".into(),
                ))
            }
        })
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum SpectrumMethodArg {
    /// Numeric Legendre transform of tau over the q window
    Legendre,
    /// Closed-form spectrum of the family
    ClosedForm,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Tabulated scaling function CSV (q,tau_hat,r2), e.g. from `scaling`
    #[arg(long, conflicts_with = "family")]
    pub tau: Option<PathBuf>,
    /// Closed-form family instead of a tabulated tau
    #[arg(long, value_enum)]
    pub family: Option<CurveFamilyArg>,
    #[command(flatten)]
    pub params: CurveParams,
    /// Method (closed-form requires --family)
    #[arg(long, value_enum, default_value_t = SpectrumMethodArg::Legendre)]
    pub method: SpectrumMethodArg,
    /// Smallest Holder exponent h on the output grid (dimensionless)
    #[arg(long, default_value_t = 0.0)]
    pub h_min: f64,
    /// Largest Holder exponent h on the output grid (dimensionless)
    #[arg(long, default_value_t = 1.6)]
    pub h_max: f64,
    /// h grid step (dimensionless)
    #[arg(long, default_value_t = 0.005)]
    pub h_step: f64,
    /// Lower end of the Legendre q window (default: -20, or the tabulated range)
    #[arg(long)]
    pub q_min: Option<f64>,
    /// Upper end of the Legendre q window (default: 20, or the tabulated range)
    #[arg(long)]
    pub q_max: Option<f64>,
    /// Legendre q grid step (dimensionless)
    #[arg(long, default_value_t = DEFAULT_Q_STEP)]
    pub q_step: f64,
    /// Output CSV path (h,d with -inf for unattained h)
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// Process family
    #[arg(long, value_enum)]
    pub family: CurveFamilyArg,
    #[command(flatten)]
    pub params: CurveParams,
    /// Override the lower end of the finite-moment range (dimensionless)
    #[arg(long)]
    pub q_lower: Option<f64>,
    /// Override the upper end of the finite-moment range (dimensionless)
    #[arg(long)]
    pub q_upper: Option<f64>,
    /// Output JSON path (default: stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    /// Which reference experiment (1: BM, 2: stable alpha=1,
    /// 3: LFSM H=0.9 alpha=1.2, 4: MRW lambda^2=0.025)
    pub which: u8,
    /// Output directory for CSVs and `figure<k>.svg`
    #[arg(long)]
    pub outdir: PathBuf,
    /// Number of seeds (default: 10)
    #[arg(long)]
    pub seeds: Option<usize>,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Experiment configuration JSON (full ExperimentConfig)
    #[arg(long)]
    pub config: PathBuf,
    /// Override: number of increments (dimensionless count)
    #[arg(long)]
    pub n: Option<usize>,
    /// Override: horizon T in path-time units
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Override: comma-separated seed list, e.g. 1,2,3
    #[arg(long)]
    pub seeds: Option<String>,
}

#[derive(Args, Debug)]
pub struct ListRunsArgs {
    /// Show the full record for one run id
    #[arg(long)]
    pub id: Option<String>,
}

/// Parse argv and run; returns the process exit code.
pub fn parse_and_dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 1;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_validation() {
                1
            } else {
                2
            }
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Simulate(args) => {
            let horizon = args.horizon.unwrap_or(args.n as f64);
            let spec = args.process_spec(horizon)?;
            let (path, warnings) =
                generate_with_warnings(&spec, args.n, horizon, Seed(args.seed))?;
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            io::write_path_csv(&path, &args.out)?;
            Ok(0)
        }
        Command::Partition(args) => {
            let mode = table_mode(args.mode, args.m)?;
            let path = io::read_path_csv(&args.input)?;
            let (qs, deltas) = build_grids(&args.grid, &path, mode)?;
            let table = match mode {
                TableMode::Standard => partition_function(&path, &qs, &deltas)?,
                TableMode::Modified { m } => modified_partition_function(&path, &qs, &deltas, m)?,
            };
            io::write_table_csv(&table, &args.out)?;
            Ok(0)
        }
        Command::Scaling(args) => {
            let mode = table_mode(args.mode, args.m)?;
            let path = io::read_path_csv(&args.input)?;
            let (qs, deltas) = build_grids(&args.grid, &path, mode)?;
            let table = match mode {
                TableMode::Standard => partition_function(&path, &qs, &deltas)?,
                TableMode::Modified { m } => modified_partition_function(&path, &qs, &deltas, m)?,
            };
            let est = scaling_function(&table)?;
            io::write_tau_csv(&est, &table.source, deltas.deltas(), &args.out)?;
            Ok(0)
        }
        Command::Spectrum(args) => {
            let hs = h_grid(args.h_min, args.h_max, args.h_step)?;
            let curve = match (&args.tau, args.family, args.method) {
                (Some(file), None, SpectrumMethodArg::Legendre) => {
                    let (qs, tau, _) = io::read_tau_csv(file)?;
                    let span = (
                        *qs.first().ok_or_else(|| {
                            Error::Parse(format!("{}: empty tau table", file.display()))
                        })?,
                        *qs.last().unwrap(),
                    );
                    let tabulated = ScalingFunction::tabulated(qs, tau, span)?;
                    let window = (args.q_min.unwrap_or(span.0), args.q_max.unwrap_or(span.1));
                    legendre_spectrum(&tabulated, &hs, window, args.q_step)?
                }
                (Some(_), None, SpectrumMethodArg::ClosedForm) => {
                    return Err(Error::Argument(
                        "closed-form spectra need --family, not --tau".into(),
                    ))
                }
                (None, Some(family), SpectrumMethodArg::Legendre) => {
                    let tau = theoretical_tau(args.params.tau_family(family)?)?;
                    let window = (
                        args.q_min.unwrap_or(DEFAULT_Q_WINDOW.0),
                        args.q_max.unwrap_or(DEFAULT_Q_WINDOW.1),
                    );
                    legendre_spectrum(&tau, &hs, window, args.q_step)?
                }
                (None, Some(family), SpectrumMethodArg::ClosedForm) => {
                    theoretical_spectrum(&args.params.spectrum_family(family)?, &hs)?
                }
                _ => {
                    return Err(Error::Argument(
                        "need exactly one of --tau or --family".into(),
                    ))
                }
            };
            io::write_spectrum_csv(&curve, &args.out)?;
            Ok(0)
        }
        Command::Bounds(args) => {
            let json = bounds_json(&args)?;
            match &args.out {
                Some(path) => io::atomic_write(path, &json)?,
                None => println!("{json}"),
            }
            Ok(0)
        }
        Command::Figure(args) => {
            let registry = Registry::from_env();
            let record = reproduce_figure(args.which, &args.outdir, &registry, args.seeds)?;
            match record.status {
                RunStatus::Success => {
                    println!("run {} -> {}", record.id, record.output_dir);
                    Ok(0)
                }
                RunStatus::Failed { error } => {
                    eprintln!("error: {error} (failed record {} registered)", record.id);
                    Ok(2)
                }
            }
        }
        Command::Run(args) => {
            let text = std::fs::read_to_string(&args.config)?;
            let mut config: ExperimentConfig = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("{}: {e}", args.config.display())))?;
            if let Some(n) = args.n {
                config.n = n;
            }
            if let Some(h) = args.horizon {
                config.horizon = h;
            }
            if let Some(seeds) = &args.seeds {
                config.seeds = seeds
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::invalid("seeds", format!("bad seed `{s}`")))
                    })
                    .collect::<Result<Vec<u64>>>()?;
            }
            let registry = Registry::from_env();
            let record = run_experiment(&config, &registry)?;
            match record.status {
                RunStatus::Success => {
                    println!("run {} -> {}", record.id, record.output_dir);
                    Ok(0)
                }
                RunStatus::Failed { error } => {
                    eprintln!("error: {error} (failed record {} registered)", record.id);
                    Ok(2)
                }
            }
        }
        Command::ListRuns(args) => {
            let registry = Registry::from_env();
            match &args.id {
                Some(id) => {
                    let record = registry.get(id)?;
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&record).expect("record serializes")
                    );
                }
                None => {
                    for record in registry.list()? {
                        let status = match &record.status {
                            RunStatus::Success => "success".to_string(),
                            RunStatus::Failed { error } => format!("failed: {error}"),
                        };
                        println!(
                            "{}  n={} seeds={} {}ms  {}",
                            record.id,
                            record.config.n,
                            record.config.seeds.len(),
                            record.millis,
                            status
                        );
                    }
                }
            }
            Ok(0)
        }
    }
}

fn table_mode(mode: ModeArg, m: u32) -> Result<TableMode> {
    match mode {
        ModeArg::Standard => Ok(TableMode::Standard),
        ModeArg::Modified => {
            if m == 0 {
                return Err(Error::invalid("m", "must be a positive integer"));
            }
            Ok(TableMode::Modified { m })
        }
    }
}

fn build_grids(
    grid: &GridArgs,
    path: &crate::sim::SamplePath,
    mode: TableMode,
) -> Result<(MomentGrid, ScaleGrid)> {
    let qs = MomentGrid::range(grid.q_min, grid.q_max, grid.q_step)?;
    let default_max = match mode {
        TableMode::Standard => path.horizon() / 2.0,
        TableMode::Modified { m } => path.horizon() / (2.0 * m as f64),
    };
    let max_delta = grid.max_delta.unwrap_or(default_max);
    let deltas = ScaleGrid::geometric(max_delta, grid.scales, path.spacing())?;
    Ok((qs, deltas))
}

fn bounds_json(args: &BoundsArgs) -> Result<String> {
    let family = args.params.tau_family(args.family)?;
    let mut tau = theoretical_tau(family)?;
    let (mut lo, mut hi) = tau.moment_range();
    if let Some(v) = args.q_lower {
        lo = v;
    }
    if let Some(v) = args.q_upper {
        hi = v;
    }
    tau = tau.with_moment_range(lo, hi);
    let mut bounds: SpectrumBounds = support_bounds_from_tau(&tau);

    // H+ uses the scaling factor's moment range: every negative order is
    // finite for the log-normal families and for a deterministic factor.
    bounds.h_plus = match family {
        TauFamily::Cascade { .. }
        | TauFamily::CascadeLinearized { .. }
        | TauFamily::Mrw { .. }
        | TauFamily::SelfSimilar { .. } => {
            h_plus_from_factor_tau(&tau.clone().with_moment_range(f64::NEG_INFINITY, hi))
        }
        _ => None,
    };
    bounds.hsssi = match family {
        TauFamily::SelfSimilar { hurst } => Some(hsssi_bounds(hurst, hi)?),
        TauFamily::StableAsym { alpha } => Some(hsssi_bounds(1.0 / alpha, alpha)?),
        TauFamily::LfsmAsym { hurst, alpha } => Some(hsssi_bounds(hurst, alpha)?),
        _ => None,
    };
    Ok(io::bounds_to_json(&bounds))
}
