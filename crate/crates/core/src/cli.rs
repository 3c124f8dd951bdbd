use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use tqrm::dissipator::BathParams;
use tqrm::harness::{run_sweep, write_outputs, SweepConfig};
use tqrm::model::{converge_cutoff, diagonalize_model, CutoffPolicy, ModelParams};
use tqrm::qops::HilbertSpace;
use tqrm::quantifiers::{evaluate_all, EvaluateOptions, Quantity};
use tqrm::{selftest, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_FAILURES: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tqrm",
    version,
    about = "Thermal two-qubit Rabi model: spectra, quantifiers and parameter sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a parameter sweep described by a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides output.dir in the config).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (overrides sweep.workers).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Evaluate all quantifiers at one point and print the report as JSON.
    Point {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0.1)]
        temp: f64,
        /// Also compute the Liouvillian gap ratio.
        #[arg(long)]
        gap: bool,
        /// Comma-separated subset of quantities (default: all).
        #[arg(long, value_delimiter = ',')]
        quantities: Vec<Quantity>,
    },
    /// Print the lowest excitation energies E_k - E_0 and their parities.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        levels: usize,
    },
    /// Run the built-in invariant checks.
    Selftest,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 1.0)]
    delta1: f64,
    #[arg(long, default_value_t = 1.0)]
    delta2: f64,
    #[arg(long, default_value_t = 0.0)]
    g1: f64,
    #[arg(long, default_value_t = 0.0)]
    g2: f64,
}

impl ModelArgs {
    fn params(&self) -> tqrm::Result<ModelParams> {
        ModelParams::new(self.omega, self.delta1, self.delta2, self.g1, self.g2)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::AtPoint { source, .. } => exit_code(source),
        Error::Config(_) | Error::InvalidParameter(_) | Error::InvalidSpace(_) => EXIT_CONFIG,
        _ => EXIT_FAILURES,
    }
}

/// Parse `args` and run; output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_CONFIG;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> tqrm::Result<i32> {
    match cmd {
        Command::Sweep {
            config,
            out: dir,
            workers,
        } => {
            let mut cfg = SweepConfig::from_file(&config)?;
            if let Some(w) = workers {
                cfg.sweep.workers = w;
            }
            if let Some(d) = dir {
                cfg.output.dir = Some(d);
            }
            cfg.validate()?;
            let dir = cfg.output.dir.clone().ok_or_else(|| {
                Error::Config("no output directory: pass --out or set output.dir".into())
            })?;
            let result = run_sweep(&cfg)?;
            let files = write_outputs(&result, &cfg, &dir)
                .map_err(|e| Error::Config(format!("writing output: {e}")))?;
            writeln!(
                err,
                "{} points, {} failed; wrote {}",
                result.rows.len() + result.failures.len(),
                result.failures.len(),
                files.csv.display()
            )?;
            for f in &result.failures {
                writeln!(err, "  failed {:?}: {}", f.axis_values, f.error)?;
            }
            Ok(if result.failures.is_empty() {
                EXIT_OK
            } else {
                EXIT_FAILURES
            })
        }
        Command::Point {
            model,
            temp,
            gap,
            quantities,
        } => {
            let p = model.params()?;
            let bath = BathParams::for_mode(p.omega, temp)?;
            let opts = EvaluateOptions {
                quantities: if quantities.is_empty() {
                    Quantity::ALL.to_vec()
                } else {
                    quantities
                },
                include_gap: gap,
                ..EvaluateOptions::default()
            };
            let report = evaluate_all(&p, &bath, temp, &opts)?;
            writeln!(out, "{}", serde_json::to_string(&report)?)?;
            Ok(EXIT_OK)
        }
        Command::Spectrum { model, levels } => {
            let p = model.params()?;
            if levels == 0 {
                return Err(Error::Config("--levels must be at least 1".into()));
            }
            let policy = CutoffPolicy::default();
            let conv = converge_cutoff(&p, &policy, |n| {
                let eigs = diagonalize_model(&p, HilbertSpace::new(n)?)?;
                let k = levels.min(eigs.len());
                let e0 = eigs.energy(0);
                let gaps: Vec<f64> = (0..k).map(|i| eigs.energy(i) - e0).collect();
                let par: Vec<i8> = (0..k).map(|i| eigs.parity(i)).collect();
                let mut target = gaps.clone();
                target.push(e0);
                Ok((target, (gaps, par)))
            })?;
            let (gaps, par) = conv.value;
            writeln!(out, "# {p}, n_fock = {}", conv.n_fock)?;
            writeln!(out, "k,E_k-E_0,parity")?;
            for (k, (e, s)) in gaps.iter().zip(&par).enumerate() {
                writeln!(out, "{k},{e:?},{s}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Selftest => {
            let checks = selftest::run();
            let mut failed = 0;
            for c in &checks {
                writeln!(
                    out,
                    "{} {}: {}",
                    if c.passed { "ok  " } else { "FAIL" },
                    c.name,
                    c.detail
                )?;
                failed += usize::from(!c.passed);
            }
            writeln!(out, "{} checks, {failed} failed", checks.len())?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURES })
        }
    }
}
