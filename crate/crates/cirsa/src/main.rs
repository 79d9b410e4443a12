//! `cirsa` command-line interface.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use cirsa::{sweep, write_records, Axis, Error, Format, PolicySpec, Result, SweepMode};
use cirsa_core::config::{db_to_linear, DEFAULT_MAX_ITERATIONS};
use cirsa_core::degree::SOLITON_4;
use cirsa_core::policy::DEFAULT_BACKOFF;
use cirsa_core::{
    active_load_under_policy, censor_threshold, de_fixed_point, inflection_load, load_grid,
    target_load_from_plr, theta_r, DEControls, DegreeDistribution, SystemConfig,
};

#[derive(Parser)]
#[command(
    name = "cirsa",
    version,
    about = "Censored IRSA simulator and density-evolution toolkit"
)]
struct Cli {
    /// JSON file whose keys mirror the flag names; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo simulation at one operating point.
    Simulate(SimulateArgs),
    /// Density evolution at one active load.
    De(DeArgs),
    /// Active inflection load at nu = gamma_th / snr.
    Inflection(ChannelArgs),
    /// Censor threshold from the g-policy.
    Threshold(ThresholdArgs),
    /// Monte Carlo estimate of theta_r next to the closed form.
    Oracle(OracleArgs),
    /// Parameter sweep written as CSV or JSON.
    Sweep(SweepArgs),
}

#[derive(Args, Default)]
struct ChannelArgs {
    /// Per-user SNR in dB.
    #[arg(long, allow_hyphen_values = true)]
    snr_db: Option<f64>,
    #[arg(long)]
    gamma_th: Option<f64>,
    /// Degree distribution, "d:prob,..." or a JSON object.
    #[arg(long)]
    dist: Option<String>,
    /// JSON file with density-evolution controls.
    #[arg(long)]
    controls: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    #[arg(long)]
    slots: Option<usize>,
    #[arg(long)]
    load: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    runs: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DeArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    #[arg(long)]
    active_load: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    #[arg(long)]
    load: Option<f64>,
    #[arg(long, conflicts_with = "target_plr_a")]
    target_load: Option<f64>,
    #[arg(long)]
    target_plr_a: Option<f64>,
    /// Back-off applied to a target load derived from --target-plr-a.
    #[arg(long)]
    backoff: Option<f64>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    base: SimulateArgs,
    /// L, La or nu.
    #[arg(long)]
    axis: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    /// empirical or de.
    #[arg(long)]
    mode: Option<String>,
    /// fixed, g or random.
    #[arg(long)]
    policy: Option<String>,
    /// Target load of the g-policy.
    #[arg(long)]
    l_tgt: Option<f64>,
    /// Active-load cap of random censoring.
    #[arg(long)]
    la_star: Option<f64>,
}

/// Flag values backed by an optional JSON config file.
struct Settings {
    file: Map<String, Value>,
}

impl Settings {
    fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Settings { file: Map::new() });
        };
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        match serde_json::from_str(&text) {
            Ok(Value::Object(file)) => Ok(Settings { file }),
            Ok(_) => Err(Error::Usage(format!(
                "{}: config must be a JSON object",
                path.display()
            ))),
            Err(e) => Err(Error::Usage(format!("{}: {e}", path.display()))),
        }
    }

    fn get<T: DeserializeOwned>(&self, flag: Option<T>, key: &str) -> Result<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(v) => serde_json::from_value(v.clone())
                .map(Some)
                .map_err(|e| Error::Usage(format!("config key `{key}`: {e}"))),
        }
    }

    fn or<T: DeserializeOwned>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        Ok(self.get(flag, key)?.unwrap_or(default))
    }

    fn required<T: DeserializeOwned>(&self, flag: Option<T>, key: &str) -> Result<T> {
        self.get(flag, key)?
            .ok_or_else(|| Error::Usage(format!("missing --{key}")))
    }

    fn dist(&self, flag: Option<String>) -> Result<DegreeDistribution> {
        if let Some(text) = flag {
            return parse_dist(&text);
        }
        match self.file.get("dist") {
            None => Ok(SOLITON_4.parse()?),
            Some(Value::String(s)) => parse_dist(s),
            Some(v) => serde_json::from_value(v.clone())
                .map_err(|e| Error::Usage(format!("config key `dist`: {e}"))),
        }
    }

    fn controls(&self, flag: Option<PathBuf>) -> Result<DEControls> {
        let Some(path) = self.get(flag, "controls")? else {
            return Ok(DEControls::default());
        };
        let text = std::fs::read_to_string(&path).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
        let c: DEControls = serde_json::from_str(&text)
            .map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
        c.validate()?;
        Ok(c)
    }

    fn channel(&self, args: &ChannelArgs) -> Result<(f64, f64)> {
        let snr = db_to_linear(self.or(args.snr_db, "snr-db", 10.0)?);
        let gamma = self.or(args.gamma_th, "gamma-th", 10.0)?;
        Ok((snr, gamma))
    }

    fn system(&self, args: &SimulateArgs) -> Result<SystemConfig> {
        let (snr, gamma_th) = self.channel(&args.channel)?;
        let cfg = SystemConfig {
            snr,
            gamma_th,
            slots: self.or(args.slots, "slots", 250)?,
            load: self.or(args.load, "load", 1.0)?,
            censor_threshold: self.or(args.nu, "nu", gamma_th / snr)?,
            max_iterations: self.or(
                args.max_iterations,
                "max-iterations",
                DEFAULT_MAX_ITERATIONS,
            )?,
            seed: self.or(args.seed, "seed", 7)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_dist(text: &str) -> Result<DegreeDistribution> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::Usage(format!("--dist: {e}")))
    } else {
        Ok(text.parse()?)
    }
}

fn run(cli: Cli) -> Result<()> {
    let s = Settings::load(cli.config.as_deref())?;
    match cli.command {
        Command::Simulate(args) => {
            let cfg = s.system(&args)?;
            let dist = s.dist(args.channel.dist.clone())?;
            let runs = s.or(args.runs, "runs", 1000)?;
            let format: Format = s.or(args.format.clone(), "format", "csv".into())?.parse()?;
            let out: Option<PathBuf> = s.get(args.out.clone(), "out")?;
            let record = cirsa::run_monte_carlo(&cfg, &dist, runs)?;
            write_records(&[record], format, out.as_deref())
        }
        Command::De(args) => {
            let (snr, gamma) = s.channel(&args.channel)?;
            let dist = s.dist(args.channel.dist.clone())?;
            let controls = s.controls(args.channel.controls.clone())?;
            let active_load = s.required(args.active_load, "active-load")?;
            let nu = s.or(args.nu, "nu", gamma / snr)?;
            let r = de_fixed_point(active_load, nu, &dist, snr, gamma, &controls)?;
            println!("{}", json!({ "system_load": r.system_load(), "result": r }));
            Ok(())
        }
        Command::Inflection(args) => {
            let (snr, gamma) = s.channel(&args)?;
            let dist = s.dist(args.dist.clone())?;
            let controls = s.controls(args.controls.clone())?;
            let nu = gamma / snr;
            let la = inflection_load(nu, &dist, snr, gamma, &controls)?;
            println!("L_a_star={la}");
            println!("L_star={}", la / (-nu).exp());
            Ok(())
        }
        Command::Threshold(args) => {
            let (snr, gamma) = s.channel(&args.channel)?;
            let load: f64 = s.required(args.load, "load")?;
            let target_load = match (
                s.get(args.target_load, "target-load")?,
                s.get(args.target_plr_a, "target-plr-a")?,
            ) {
                (Some(t), None) => t,
                (None, Some(plr)) => {
                    let dist = s.dist(args.channel.dist.clone())?;
                    let controls = s.controls(args.channel.controls.clone())?;
                    let backoff = s.or(args.backoff, "backoff", DEFAULT_BACKOFF)?;
                    let t = target_load_from_plr(plr, &dist, snr, gamma, &controls, backoff)?;
                    println!("L_tgt_raw={}", t.raw);
                    println!("L_tgt={}", t.backed_off);
                    t.backed_off
                }
                _ => {
                    return Err(Error::Usage(
                        "give exactly one of --target-load and --target-plr-a".into(),
                    ))
                }
            };
            println!("nu={}", censor_threshold(load, target_load, snr, gamma));
            println!(
                "L_a={}",
                active_load_under_policy(load, target_load, snr, gamma)
            );
            Ok(())
        }
        Command::Oracle(args) => {
            let (snr, gamma) = s.channel(&args.channel)?;
            let r = s.required(args.r, "r")?;
            let nu = s.or(args.nu, "nu", 0.0)?;
            let samples = s.or(args.samples, "samples", 1_000_000)?;
            let seed = s.or(args.seed, "seed", 7)?;
            let est = cirsa::estimate_theta_parallel(r, nu, snr, gamma, samples, seed)?;
            println!("r={r} nu={nu} samples={samples}");
            println!("theta_hat={} std_error={}", est.estimate, est.std_error);
            match theta_r(r, nu, snr, gamma) {
                Ok(theta) => {
                    let z = if est.std_error > 0.0 {
                        (est.estimate - theta) / est.std_error
                    } else {
                        0.0
                    };
                    println!("theta_closed_form={theta} z={z:.3}");
                }
                Err(e) => println!("theta_closed_form=NA ({e})"),
            }
            Ok(())
        }
        Command::Sweep(args) => {
            let base = s.system(&args.base)?;
            let dist = s.dist(args.base.channel.dist.clone())?;
            let controls = s.controls(args.base.channel.controls.clone())?;
            let runs = s.or(args.base.runs, "runs", 1000)?;
            let axis = match s.required(args.axis.clone(), "axis")?.as_str() {
                "L" => Axis::Load,
                "La" => Axis::ActiveLoad,
                "nu" => Axis::Nu,
                other => {
                    return Err(Error::Usage(format!(
                        "unknown axis `{other}` (expected L, La or nu)"
                    )))
                }
            };
            let mode = match s
                .or(args.mode.clone(), "mode", "empirical".to_string())?
                .as_str()
            {
                "empirical" => SweepMode::Empirical,
                "de" => SweepMode::De,
                other => return Err(Error::Usage(format!("unknown mode `{other}`"))),
            };
            let policy = match s
                .or(args.policy.clone(), "policy", "fixed".to_string())?
                .as_str()
            {
                "fixed" => PolicySpec::Fixed,
                "g" => PolicySpec::G {
                    target_load: s.required(args.l_tgt, "l-tgt")?,
                },
                "random" => PolicySpec::Random {
                    la_star: s.or(args.la_star, "la-star", 0.6)?,
                },
                other => return Err(Error::Usage(format!("unknown policy `{other}`"))),
            };
            let grid = load_grid(
                s.required(args.from, "from")?,
                s.required(args.to, "to")?,
                s.required(args.step, "step")?,
            );
            let format: Format = s
                .or(args.base.format.clone(), "format", "csv".into())?
                .parse()?;
            let out: Option<PathBuf> = s.get(args.base.out.clone(), "out")?;

            let points = sweep(axis, &grid, &base, &dist, policy, mode, runs, &controls)?;
            let mut records = Vec::with_capacity(points.len());
            for p in points {
                match p.flag {
                    Some(e) => eprintln!(
                        "{}",
                        error_line(
                            e.kind(),
                            &format!("L={} nu={}: {e}", p.record.load, p.record.nu)
                        )
                    ),
                    None => records.push(p.record),
                }
            }
            write_records(&records, format, out.as_deref())
        }
    }
}

fn error_line(kind: &str, message: &str) -> String {
    json!({ "error": kind, "message": message }).to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e
                .kind()
                .as_str()
                .map(str::to_string)
                .unwrap_or_else(|| e.to_string());
            let first = e
                .to_string()
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ")
                .to_string();
            eprintln!(
                "{}",
                error_line("Usage", if first.is_empty() { &rendered } else { &first })
            );
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", error_line(e.kind(), &e.to_string()));
            ExitCode::FAILURE
        }
    }
}
