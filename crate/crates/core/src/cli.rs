//! The `wdesign` command line: `construct`, `verify`, `tomo`, `search` and `table`.
//!
//! Exit codes: 0 success, 1 checked negative (not a design, error outside
//! 3 SE, search not certified), 2 usage or parse error, 3 verification or
//! informational-completeness failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::algebra::FiniteField;
use crate::design::{
    bound_table, build_design, dim6_design, parse_design, serialize_design, standard_mub_family, verify_design,
    DesignReport, WeightedBasisFamily, DEFAULT_TOL,
};
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix};
use crate::nonlinear::{binomial_function, direct_sum, embed_cyclic, example_z5_z6, exp_function, NonlinearFunction};
use crate::random::{random_pure_state, trial_rng};
use crate::search::{minimize, result_family, write_progress_csv, SearchConfig};
use crate::tomography::{
    canonical_dual, expected_error_fixed, expected_error_general, expected_error_random_basis, expected_error_tight,
    monte_carlo_error, povm_for_allocation, write_trials_csv, DensityMatrix, MonteCarloConfig, Orientation,
    SamplingMode, ShotAllocation, TomographyReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "wdesign", version, about = "Weighted 2-designs from unions of orthonormal bases")]
pub struct Cli {
    /// Worker threads for trials (defaults to all cores).
    #[arg(long, global = true, env = "WDESIGN_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    MubOdd,
    MubEven,
    Exp,
    Binomial,
    Embed,
    Sum,
    Dim6,
    FromFunctionFile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StateKind {
    PureRandom,
    MixedIdentity,
    File,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Fixed,
    RandomBasis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Fixed,
    Haar,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a design and write it as a design file.
    Construct {
        #[arg(long, value_enum)]
        method: Method,
        /// Characteristic for mub-odd.
        #[arg(long)]
        p: Option<u64>,
        /// Field degree (mub-odd, mub-even) or codomain order (binomial, embed).
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        /// Function record for from-function-file, embed and sum (defaults to the Z5 -> Z6 table).
        #[arg(long)]
        function: Option<PathBuf>,
        /// Second function record for sum.
        #[arg(long)]
        function2: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Check the weighted t-design property of a design file.
    Verify {
        #[arg(long = "in", short)]
        input: PathBuf,
        #[arg(long, short, default_value_t = 2)]
        t: u32,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Simulate linear tomography with a design file and compare with the error laws.
    Tomo {
        #[arg(long = "in", short)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "pure-random")]
        state: StateKind,
        /// Density matrix as a JSON array of rows of [re, im] pairs (for --state file).
        #[arg(long)]
        state_file: Option<PathBuf>,
        #[arg(long = "shots", short = 'N')]
        shots: u64,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "fixed")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "fixed")]
        orientation: OrientationArg,
        /// Run even if the family is not a 2-design.
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// JSON report path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Per-trial errors as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Minimize the frame potential over m bases in dimension d.
    Search {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3000)]
        max_iters: usize,
        /// Design file on success, gap report otherwise.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Progress log as CSV.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Upper bounds on the number of bases for a 2-design, d = 2..=dmax.
    Table {
        #[arg(long, default_value_t = 50)]
        dmax: u64,
    },
}

/// Runs the command line on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // a pool may already exist when embedded in a larger program
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut out = std::io::stdout().lock();
    match dispatch(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NotInformationallyComplete(_) => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Construct {
            method,
            p,
            n,
            d,
            k,
            function,
            function2,
            tol,
            out: path,
        } => cmd_construct(method, Params { p, n, d, k, function, function2 }, tol, &path, out),
        Command::Verify { input, t, tol } => cmd_verify(&input, t, tol, out),
        Command::Tomo {
            input,
            state,
            state_file,
            shots,
            trials,
            seed,
            mode,
            orientation,
            force,
            tol,
            report,
            csv,
        } => {
            let opts = TomoOptions {
                state,
                state_file,
                shots,
                trials,
                seed,
                mode: match mode {
                    ModeArg::Fixed => SamplingMode::Fixed,
                    ModeArg::RandomBasis => SamplingMode::RandomBasis,
                },
                orientation: match orientation {
                    OrientationArg::Fixed => Orientation::Fixed,
                    OrientationArg::Haar => Orientation::Haar,
                },
                force,
                tol,
                report,
                csv,
            };
            cmd_tomo(&input, &opts, out)
        }
        Command::Search {
            d,
            m,
            restarts,
            tol,
            seed,
            max_iters,
            out: path,
            log,
        } => {
            let mut config = SearchConfig::new(d, m);
            config.restarts = restarts;
            config.tol = tol;
            config.seed = seed;
            config.max_iters = max_iters;
            cmd_search(&config, path.as_deref(), log.as_deref(), out)
        }
        Command::Table { dmax } => cmd_table(dmax, out),
    }
}

/// Method parameters for `construct`.
#[derive(Debug, Default)]
pub struct Params {
    pub p: Option<u64>,
    pub n: Option<u64>,
    pub d: Option<u64>,
    pub k: Option<u64>,
    pub function: Option<PathBuf>,
    pub function2: Option<PathBuf>,
}

fn need(v: Option<u64>, flag: &str, method: &str) -> Result<u64> {
    v.ok_or_else(|| Error::Domain(format!("--{flag} is required for {method}")))
}

fn read_function(path: Option<&Path>) -> Result<NonlinearFunction> {
    match path {
        Some(p) => NonlinearFunction::parse_record(&std::fs::read_to_string(p)?),
        None => Ok(example_z5_z6()),
    }
}

/// The family a `construct` invocation describes.
pub fn construct_family(method: Method, params: &Params) -> Result<WeightedBasisFamily> {
    match method {
        Method::MubOdd => {
            let p = need(params.p, "p", "mub-odd")?;
            if p == 2 {
                return Err(Error::Domain("mub-odd needs an odd characteristic; use mub-even".into()));
            }
            standard_mub_family(&FiniteField::new(p, params.n.unwrap_or(1) as usize)?)
        }
        Method::MubEven => {
            if params.p.is_some_and(|p| p != 2) {
                return Err(Error::Domain("mub-even works in characteristic 2".into()));
            }
            standard_mub_family(&FiniteField::new(2, need(params.n, "n", "mub-even")? as usize)?)
        }
        Method::Exp => build_design(&exp_function(need(params.d, "d", "exp")?, params.k.unwrap_or(1))?),
        Method::Binomial => build_design(&binomial_function(need(params.d, "d", "binomial")?, need(params.n, "n", "binomial")?)?),
        Method::Embed => build_design(&embed_cyclic(&read_function(params.function.as_deref())?, need(params.n, "n", "embed")?)?),
        Method::Sum => build_design(&direct_sum(
            &read_function(params.function.as_deref())?,
            &read_function(params.function2.as_deref())?,
        )?),
        Method::Dim6 => Ok(dim6_design()),
        Method::FromFunctionFile => {
            let path = params
                .function
                .as_deref()
                .ok_or_else(|| Error::Domain("--function is required for from-function-file".into()))?;
            build_design(&read_function(Some(path))?)
        }
    }
}

fn print_report(report: &DesignReport, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "dimension: {}  bases: {}  tolerance: {:e}", report.dim, report.bases, report.tolerance)?;
    for l in &report.levels {
        write!(
            out,
            "t={}: welch {:.12} bound {:.12} residual {:.3e} design {}",
            l.t, l.welch_sum, l.bound, l.residual, l.is_design
        )?;
        if let Some(r) = l.moment_residual {
            write!(out, " (moment residual {r:.3e})")?;
        }
        writeln!(out)?;
    }
    writeln!(out, "mutually unbiased pairs: {} of {}", report.mub_pairs, report.total_pairs)?;
    if let (Some(lo), Some(hi)) = (report.min_cross_overlap, report.max_cross_overlap) {
        writeln!(out, "cross-basis overlaps: min {lo:.6} max {hi:.6}")?;
    }
    Ok(())
}

pub fn cmd_construct(method: Method, params: Params, tol: f64, path: &Path, out: &mut dyn Write) -> Result<i32> {
    let family = construct_family(method, &params)?;
    let report = verify_design(&family, 2, tol)?;
    print_report(&report, out)?;
    if !report.is_design(2) {
        eprintln!("error: constructed family failed verification");
        return Ok(EXIT_VERIFY);
    }
    std::fs::write(path, serialize_design(&family, Some(&report)))?;
    writeln!(out, "wrote {}", path.display())?;
    Ok(EXIT_OK)
}

fn read_family(path: &Path) -> Result<(WeightedBasisFamily, Vec<u8>)> {
    let bytes = std::fs::read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((parse_design(&text)?.family, bytes))
}

pub fn cmd_verify(path: &Path, t: u32, tol: f64, out: &mut dyn Write) -> Result<i32> {
    let (family, _) = read_family(path)?;
    let report = verify_design(&family, t, tol)?;
    print_report(&report, out)?;
    Ok(if report.is_design(t) { EXIT_OK } else { EXIT_NEGATIVE })
}

#[derive(Debug)]
pub struct TomoOptions {
    pub state: StateKind,
    pub state_file: Option<PathBuf>,
    pub shots: u64,
    pub trials: usize,
    pub seed: u64,
    pub mode: SamplingMode,
    pub orientation: Orientation,
    pub force: bool,
    pub tol: f64,
    pub report: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

/// Parses a density matrix written as rows of `[re, im]` pairs.
pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let d = rows.len();
    if rows.iter().any(|r| r.len() != d) {
        return Err(Error::Parse("state matrix is not square".into()));
    }
    DensityMatrix::new(CMatrix::from_fn(d, d, |i, j| c(rows[i][j][0], rows[i][j][1])))
}

fn input_state(opts: &TomoOptions, d: usize) -> Result<(DensityMatrix, String)> {
    Ok(match opts.state {
        StateKind::PureRandom => {
            // a stream no trial uses
            let mut rng = trial_rng(opts.seed, u64::MAX);
            (DensityMatrix::pure(&random_pure_state(d, &mut rng))?, "pure-random".into())
        }
        StateKind::MixedIdentity => (DensityMatrix::maximally_mixed(d), "mixed-identity".into()),
        StateKind::File => {
            let path = opts
                .state_file
                .as_deref()
                .ok_or_else(|| Error::Domain("--state-file is required for --state file".into()))?;
            let rho = parse_state(&std::fs::read_to_string(path)?)?;
            if rho.dim() != d {
                return Err(Error::Structural(format!("state has dimension {}, design has {d}", rho.dim())));
            }
            (rho, format!("file:{}", path.display()))
        }
    })
}

pub fn cmd_tomo(path: &Path, opts: &TomoOptions, out: &mut dyn Write) -> Result<i32> {
    let (family, bytes) = read_family(path)?;
    let d = family.dim();
    if !opts.force {
        let report = verify_design(&family, 2, opts.tol)?;
        if !report.is_design(2) {
            eprintln!("error: family is not a weighted 2-design (pass --force to simulate anyway)");
            return Ok(EXIT_VERIFY);
        }
    }
    let v: Vec<f64> = family.weight_values().iter().map(|w| w * d as f64).collect();
    let alloc = ShotAllocation::from_weights(&v, opts.shots)?;
    let povm = povm_for_allocation(&family, &alloc)?;
    let dual = canonical_dual(&povm)?;
    let (sigma, state_name) = input_state(opts, d)?;
    let purity = sigma.purity();
    let config = MonteCarloConfig {
        trials: opts.trials,
        seed: opts.seed,
        orientation: opts.orientation,
        mode: opts.mode,
    };
    let mc = monte_carlo_error(&povm, &dual, &sigma, &alloc, &config)?;
    let n = alloc.total();
    let prediction_tight = expected_error_tight(d, n, purity);
    let prediction_frame = expected_error_general(&povm, purity, &alloc)?;
    let (prediction_exact, prediction) = match (opts.mode, opts.orientation) {
        (SamplingMode::Fixed, Orientation::Fixed) => {
            let e = expected_error_fixed(&povm, &dual, &sigma, &alloc)?;
            (Some(e), e)
        }
        (SamplingMode::Fixed, Orientation::Haar) => (None, prediction_frame),
        (SamplingMode::RandomBasis, Orientation::Fixed) => {
            let e = expected_error_random_basis(&povm, &dual, &sigma, n)?;
            (Some(e), e)
        }
        (SamplingMode::RandomBasis, Orientation::Haar) => {
            // p(x) averages to τ(x)/d over orientations
            let diag: f64 = (0..povm.len())
                .map(|x| povm.tau(x) / d as f64 * crate::linalg::frobenius(&dual.operator(x)).powi(2))
                .sum();
            (None, (diag - purity) / n as f64)
        }
    };
    let deviation = (mc.mean - prediction).abs() / mc.std_error;
    let report = TomographyReport {
        family_hash: format!("{:x}", Sha256::digest(&bytes)),
        construction: family.provenance().construction.clone(),
        dim: d,
        state: state_name,
        purity,
        allocation: alloc.counts().to_vec(),
        total_shots: n,
        trials: opts.trials,
        seed: opts.seed,
        orientation: opts.orientation,
        mode: opts.mode,
        mean: mc.mean,
        std_error: mc.std_error,
        prediction_tight,
        prediction_frame,
        prediction_exact,
        prediction,
        deviation_in_se: deviation,
        pass: deviation <= 3.0,
    };
    write!(out, "{}", report.summary())?;
    if let Some(p) = &opts.report {
        std::fs::write(p, report.to_json())?;
    }
    if let Some(p) = &opts.csv {
        write_trials_csv(p, &mc.errors)?;
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_NEGATIVE })
}

pub fn cmd_search(config: &SearchConfig, path: Option<&Path>, log: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let result = minimize(config)?;
    writeln!(
        out,
        "d={} m={}: potential {:.12} bound {:.12} gap {:.3e} certified {}",
        config.d, config.m, result.potential, result.bound, result.gap, result.certified
    )?;
    if let Some(p) = log {
        write_progress_csv(p, &result.log)?;
    }
    if result.certified {
        if let Some(p) = path {
            let family = result_family(&result, config)?;
            let report = verify_design(&family, 2, config.tol)?;
            std::fs::write(p, serialize_design(&family, Some(&report)))?;
        }
        Ok(EXIT_OK)
    } else {
        if let Some(p) = path {
            let gap = serde_json::json!({
                "d": config.d,
                "m": config.m,
                "potential": result.potential,
                "bound": result.bound,
                "gap": result.gap,
                "certified": false,
                "config": config,
            });
            std::fs::write(p, serde_json::to_string_pretty(&gap).expect("json") + "\n")?;
        }
        Ok(EXIT_NEGATIVE)
    }
}

pub fn cmd_table(dmax: u64, out: &mut dyn Write) -> Result<i32> {
    writeln!(out, "{:>3}  {:>5}  recipe", "d", "bound")?;
    for row in bound_table(dmax)? {
        writeln!(out, "{:>3}  {:>5}  {}", row.d, row.bases, row.recipe)?;
    }
    Ok(EXIT_OK)
}
