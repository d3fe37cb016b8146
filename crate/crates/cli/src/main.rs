//! `spinlock`: evaluate spin-locking pulse programs and their quantum
//! correlations from the command line.

mod config;
mod presets;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use spinlock_core::sweep::{run_sweep, SchemeChoice, SweepSpec};

use config::KeyValues;

#[derive(Parser)]
#[command(
    name = "spinlock",
    version,
    about = "Two-spin multiple-pulse spin-locking simulator: magnetization, concurrence, quantum discord"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate observables at one parameter point; prints a CSV row to stdout.
    Eval(EvalArgs),
    /// Evaluate a parameter grid into a CSV file.
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Default)]
struct EvalArgs {
    /// Key=value defaults file; explicit flags override its entries.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Pulse scheme: A (90-degree pulses, alternating delays) or B
    /// (phi-pulses, equal delays).
    #[arg(long)]
    scheme: Option<String>,
    /// Scheme-A delay ratio (positive; scheme A only).
    #[arg(long)]
    a: Option<f64>,
    /// Scheme-B flip angle in radians, in (0, pi) (scheme B only).
    #[arg(long)]
    phi: Option<f64>,
    /// Scheme-B flip angle in degrees (convenience alternative to --phi).
    #[arg(long)]
    phi_deg: Option<f64>,
    /// Dimensionless inter-pulse delay t-bar.
    #[arg(long)]
    tbar: Option<f64>,
    /// Inverse temperature of the initial thermal state.
    #[arg(long)]
    beta: Option<f64>,
    /// Number of sequence periods.
    #[arg(long)]
    periods: Option<u64>,
    /// Comma-separated list: magnetization, concurrence_oracle,
    /// concurrence_closed, discord_exact, discord_optimized,
    /// conditional_entropy_curve.
    #[arg(long)]
    observables: Option<String>,
    /// Measurement angle used by conditional_entropy_curve (radians).
    #[arg(long)]
    theta: Option<f64>,
    /// Seed for the measurement-angle optimizer.
    #[arg(long)]
    seed: Option<u64>,
    /// Optimizer population size.
    #[arg(long)]
    opt_population: Option<u64>,
    /// Optimizer generation budget.
    #[arg(long)]
    opt_generations: Option<u64>,
    /// Initial mutation scale in radians.
    #[arg(long)]
    opt_sigma0: Option<f64>,
    /// Per-generation mutation decay factor.
    #[arg(long)]
    opt_decay: Option<f64>,
}

#[derive(Args, Debug, Default)]
struct SweepArgs {
    /// Key=value defaults file for the flags below.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Sweep definition file (key=value with axis.<param> entries).
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Built-in definition: fig3, fig4, fig5a, or fig5b.
    #[arg(long)]
    preset: Option<String>,
    /// Output CSV path.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Base seed for seeded observables.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Eval(args) => cmd_eval(args),
        Cmd::Sweep(args) => cmd_sweep(args),
    };
    if let Err(msg) = result {
        eprintln!("error: {msg}");
        std::process::exit(2);
    }
}

const EVAL_CONFIG_KEYS: [&str; 14] = [
    "scheme",
    "a",
    "phi",
    "phi-deg",
    "tbar",
    "beta",
    "periods",
    "observables",
    "theta",
    "seed",
    "opt-population",
    "opt-generations",
    "opt-sigma0",
    "opt-decay",
];

fn load_config(path: &Option<PathBuf>, allowed: &[&str]) -> Result<KeyValues, String> {
    let text = match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| format!("cannot read config {}: {e}", p.display()))?,
        None => String::new(),
    };
    let kv = KeyValues::parse(&text)?;
    kv.reject_unknown(allowed)?;
    Ok(kv)
}

fn cmd_eval(mut args: EvalArgs) -> Result<(), String> {
    let file = load_config(&args.config, &EVAL_CONFIG_KEYS)?;
    // File values fill whatever the command line left unset.
    if args.scheme.is_none() {
        args.scheme = file.get("scheme").map(str::to_string);
    }
    let fill_f64 = |slot: &mut Option<f64>, key: &str| -> Result<(), String> {
        if slot.is_none() {
            if let Some(v) = file.get(key) {
                *slot = Some(config::parse_f64(key, v)?);
            }
        }
        Ok(())
    };
    let fill_u64 = |slot: &mut Option<u64>, key: &str| -> Result<(), String> {
        if slot.is_none() {
            if let Some(v) = file.get(key) {
                *slot = Some(config::parse_u64(key, v)?);
            }
        }
        Ok(())
    };
    fill_f64(&mut args.a, "a")?;
    fill_f64(&mut args.phi, "phi")?;
    fill_f64(&mut args.phi_deg, "phi-deg")?;
    fill_f64(&mut args.tbar, "tbar")?;
    fill_f64(&mut args.beta, "beta")?;
    fill_f64(&mut args.theta, "theta")?;
    fill_f64(&mut args.opt_sigma0, "opt-sigma0")?;
    fill_f64(&mut args.opt_decay, "opt-decay")?;
    fill_u64(&mut args.periods, "periods")?;
    fill_u64(&mut args.seed, "seed")?;
    fill_u64(&mut args.opt_population, "opt-population")?;
    fill_u64(&mut args.opt_generations, "opt-generations")?;
    if args.observables.is_none() {
        args.observables = file.get("observables").map(str::to_string);
    }

    let scheme_name = args.scheme.as_deref().ok_or("missing --scheme (A or B)")?;
    let scheme = SchemeChoice::from_name(scheme_name)
        .ok_or_else(|| format!("bad scheme '{scheme_name}' (expected A or B)"))?;
    let a = match (scheme, args.a) {
        (SchemeChoice::A, Some(a)) => Some(a),
        (SchemeChoice::A, None) => return Err("scheme A requires --a".into()),
        (SchemeChoice::B, Some(_)) => {
            return Err("scheme B does not take --a".into());
        }
        (SchemeChoice::B, None) => None,
    };
    let phi = match (scheme, args.phi, args.phi_deg) {
        (SchemeChoice::A, None, None) => None,
        (SchemeChoice::A, _, _) => {
            return Err("scheme A does not take --phi / --phi-deg".into());
        }
        (SchemeChoice::B, Some(_), Some(_)) => {
            return Err("give either --phi or --phi-deg, not both".into());
        }
        (SchemeChoice::B, Some(rad), None) => Some(rad),
        (SchemeChoice::B, None, Some(deg)) => Some(deg.to_radians()),
        (SchemeChoice::B, None, None) => {
            return Err("scheme B requires --phi (radians) or --phi-deg".into());
        }
    };
    let tbar = args.tbar.ok_or("missing --tbar")?;
    let beta = args.beta.ok_or("missing --beta")?;
    let periods = args.periods.ok_or("missing --periods")?;
    let observables =
        config::parse_observables(args.observables.as_deref().ok_or("missing --observables")?)?;

    let mut spec = SweepSpec::new(scheme);
    if let Some(a) = a {
        spec.a = a;
    }
    if let Some(phi) = phi {
        spec.phi = phi;
    }
    spec.tbar = tbar;
    spec.beta = beta;
    spec.periods = periods;
    if let Some(theta) = args.theta {
        spec.theta = theta;
    }
    spec.observables = observables;
    spec.seed = args.seed.unwrap_or(0);
    if let Some(v) = args.opt_population {
        spec.optimizer.population = v as usize;
    }
    if let Some(v) = args.opt_generations {
        spec.optimizer.generations = v as usize;
    }
    if let Some(v) = args.opt_sigma0 {
        spec.optimizer.sigma0 = v;
    }
    if let Some(v) = args.opt_decay {
        spec.optimizer.decay = v;
    }

    // A sweep with no axes is exactly one point.
    let report = run_sweep(&spec).map_err(|e| e.to_string())?;
    let row = &report.rows[0];
    if let Some(err) = &row.error {
        return Err(err.clone());
    }

    let mut header = vec![
        "scheme".to_string(),
        "a".to_string(),
        "phi".to_string(),
        "tbar".to_string(),
        "beta".to_string(),
        "periods".to_string(),
    ];
    let mut fields = vec![
        scheme.name().to_string(),
        a.map(fmt_real).unwrap_or_default(),
        phi.map(fmt_real).unwrap_or_default(),
        fmt_real(tbar),
        fmt_real(beta),
        periods.to_string(),
    ];
    for (obs, value) in spec.observables.iter().zip(&row.values) {
        header.push(obs.name().to_string());
        fields.push(value.map(fmt_real).unwrap_or_default());
    }
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", header.join(",")).map_err(|e| e.to_string())?;
    writeln!(out, "{}", fields.join(",")).map_err(|e| e.to_string())?;
    Ok(())
}

fn fmt_real(v: f64) -> String {
    format!("{v:.14e}")
}

const SWEEP_CONFIG_KEYS: [&str; 5] = ["spec", "preset", "out", "threads", "seed"];

fn cmd_sweep(mut args: SweepArgs) -> Result<(), String> {
    let file = load_config(&args.config, &SWEEP_CONFIG_KEYS)?;
    if args.spec.is_none() {
        args.spec = file.get("spec").map(PathBuf::from);
    }
    if args.preset.is_none() {
        args.preset = file.get("preset").map(str::to_string);
    }
    if args.out.is_none() {
        args.out = file.get("out").map(PathBuf::from);
    }
    if args.threads.is_none() {
        if let Some(v) = file.get("threads") {
            args.threads = Some(config::parse_u64("threads", v)? as usize);
        }
    }
    if args.seed.is_none() {
        if let Some(v) = file.get("seed") {
            args.seed = Some(config::parse_u64("seed", v)?);
        }
    }

    let mut spec: SweepSpec<f64> = match (&args.spec, &args.preset) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read spec {}: {e}", path.display()))?;
            config::parse_sweep_spec(&text)?
        }
        (None, Some(name)) => presets::preset(name).ok_or_else(|| {
            format!(
                "unknown preset '{name}'; available: {}",
                presets::PRESET_NAMES.join(", ")
            )
        })?,
        _ => return Err("give exactly one of --spec or --preset".into()),
    };
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    let out_path = args.out.ok_or("missing --out")?;

    let started = Instant::now();
    let report = match args.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| format!("cannot build thread pool: {e}"))?;
            pool.install(|| run_sweep(&spec))
        }
        None => run_sweep(&spec),
    }
    .map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();

    let file = fs::File::create(&out_path)
        .map_err(|e| format!("cannot create {}: {e}", out_path.display()))?;
    let mut writer = std::io::BufWriter::new(file);
    report
        .write_csv(&mut writer)
        .and_then(|()| writer.flush())
        .map_err(|e| format!("cannot write {}: {e}", out_path.display()))?;
    eprintln!(
        "wrote {} rows to {} in {:.3} s",
        report.rows.len(),
        out_path.display(),
        elapsed.as_secs_f64()
    );
    Ok(())
}
