use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use dsh_cli::commands::{cmd_tail_scan, eval_kernel, format_value, EvalRequest, KernelKind};
use dsh_cli::config::{Format, RunConfig};
use dsh_cli::error::CliError;
use dsh_cli::output::{emit, Metadata};
use dsh_cli::verify::{outcome, render_table, run_suite, Suite};

#[derive(Parser)]
#[command(name = "dsh", version, about = "Kernels and Huygens tail scans for Dirac fields in de Sitter spacetime")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one kernel value and print it as `re,im` or JSON.
    EvalKernel(EvalArgs),
    /// Scan the origin tail over a time grid and compare with the asymptotics.
    TailScan(ScanArgs),
    /// Run an invariant suite and report pass/fail per check.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[command(rename_all = "kebab-case")]
struct EvalArgs {
    #[arg(long, value_enum, ignore_case = true)]
    kernel: KernelKind,
    #[arg(long, allow_hyphen_values = true)]
    r: f64,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    /// Source time for E.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t0: f64,
    /// Klein-Gordon mass, e.g. `H/2` or `0.5+0.2i`.
    #[arg(long = "M", allow_hyphen_values = true)]
    big_m: Option<String>,
    /// Dirac mass, e.g. `iH/4`.
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    /// Lattice index; sets m = i(ell+1)H/2.
    #[arg(long, allow_hyphen_values = true)]
    ell: Option<i32>,
    #[arg(long = "H", default_value_t = 1.0)]
    h: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Flags override values loaded from `--config`.
#[derive(Args)]
struct ScanArgs {
    /// Config file in `key = value` or JSON form.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "H")]
    h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    ell: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    amp: Option<String>,
    #[arg(long)]
    t_min: Option<String>,
    #[arg(long)]
    t_max: Option<String>,
    #[arg(long)]
    t_steps: Option<String>,
    #[arg(long)]
    split: Option<String>,
    #[arg(long)]
    huygens_tol: Option<String>,
    #[arg(long)]
    rate_tol: Option<String>,
    #[arg(long)]
    noise_floor: Option<String>,
    #[arg(long)]
    output: Option<String>,
    #[arg(long)]
    format: Option<String>,
}

impl ScanArgs {
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let flags = [
            ("H", &self.h),
            ("m", &self.m),
            ("ell", &self.ell),
            ("eps", &self.eps),
            ("amp", &self.amp),
            ("t_min", &self.t_min),
            ("t_max", &self.t_max),
            ("t_steps", &self.t_steps),
            ("split", &self.split),
            ("huygens_tol", &self.huygens_tol),
            ("rate_tol", &self.rate_tol),
            ("noise_floor", &self.noise_floor),
            ("output", &self.output),
            ("format", &self.format),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        Ok(cfg)
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Scan settings for the theorem suite.
    #[arg(long)]
    config: Option<PathBuf>,
    /// `json` prints the summary as JSON instead of a table.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Also write the JSON summary here.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("DSH_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Parse(format!("DSH_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Numerics(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::EvalKernel(a) => {
            let req = EvalRequest {
                kernel: a.kernel,
                r: a.r,
                t: a.t,
                t0: a.t0,
                h: a.h,
                big_m: a.big_m,
                m: a.m,
                ell: a.ell,
                format: a.format,
            };
            let z = eval_kernel(&req)?;
            println!("{}", format_value(z, req.format));
            Ok(())
        }
        Command::TailScan(a) => cmd_tail_scan(&a.resolve()?),
        Command::Verify(a) => {
            let start = Instant::now();
            let cfg = match &a.config {
                Some(p) => RunConfig::load(p)?,
                None => RunConfig::default(),
            };
            let summary = run_suite(a.suite, &cfg);
            let mut json = serde_json::to_vec_pretty(&summary)?;
            json.push(b'\n');
            match a.format {
                Format::Json => emit(None, &json, &Metadata::new("verify", &cfg, 0.0))?,
                Format::Csv => print!("{}", render_table(&summary)),
            }
            if let Some(p) = &a.output {
                let meta = Metadata::new("verify", &cfg, start.elapsed().as_secs_f64());
                emit(Some(p), &json, &meta)?;
            }
            outcome(&summary)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dsh: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
