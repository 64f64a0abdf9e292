//! Batch verification runner for the catalog of Hamiltonian-stationary
//! Lagrangian constructions.
//!
//! Exit codes: 0 when every required check passes, 1 on a tier A failure or
//! an unexplained tier B failure, 2 on usage or configuration errors.

use clap::{Args, Parser, Subcommand};
use lagver::catalog::{registry, FamilyFilter, GridSpec, ModelKind, ParamSet, SampleMode, Tier};
use lagver::diffgeo::{first_variation, BumpSpec};
use lagver::specfun::{bessel_j, SeriesPolicy};
use lagver::twistor::{find_solution, full_system_residual};
use lagver::verify::{
    emit_report, exit_status, run_verification, CheckReport, ReportFormat, RunConfig, RunItem,
};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lagver", version, about)]
struct Cli {
    /// Force serial execution (for determinism audits); otherwise the
    /// worker count comes from LAGVER_WORKERS or the machine.
    #[arg(long, global = true)]
    single_thread: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Browse the registry of immersion families.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Verify one family over a deterministic grid.
    Verify(VerifyArgs),
    /// Twistor-solution residuals.
    Twistor {
        #[command(subcommand)]
        cmd: TwistorCmd,
    },
    /// First-variation oracle for a flat-ambient family.
    Variation(VariationArgs),
    /// Evaluate the Bessel series of complex order.
    Bessel(BesselArgs),
    /// Run a batch described by a JSON config file.
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List families (canonical entries, variants and controls).
    List {
        #[arg(long)]
        json: bool,
        /// Filter by ambient: flat | spherical-lift | hyperbolic-lift.
        #[arg(long)]
        ambient: Option<String>,
        /// Filter by tier: A | B.
        #[arg(long)]
        tier: Option<String>,
        /// Filter by intrinsic dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Describe one family.
    Describe { id: String },
}

#[derive(Args)]
struct VerifyArgs {
    /// Family id, e.g. `cp2-type2-sech`.
    id: String,
    /// Parameter assignments `name=value`; defaults to the smoke set.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Grid point count.
    #[arg(long, default_value_t = 200)]
    grid: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Tolerance profile (only `default` is defined).
    #[arg(long, default_value = "default")]
    tol_profile: String,
    /// Per-check tolerance overrides `check=value`.
    #[arg(long = "tol", value_name = "CHECK=VALUE")]
    tol: Vec<String>,
    /// Write the JSON report here in addition to the text table.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum TwistorCmd {
    /// Residuals of the over-determined system for one solution.
    Residual {
        #[arg(long)]
        solution: String,
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Args)]
struct VariationArgs {
    id: String,
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Bump center, comma-separated chart coordinates.
    #[arg(long, allow_hyphen_values = true)]
    center: String,
    #[arg(long)]
    radius: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    amplitude: f64,
}

#[derive(Args)]
struct BesselArgs {
    #[arg(long, allow_negative_numbers = true)]
    nu_re: f64,
    #[arg(long, allow_negative_numbers = true)]
    nu_im: f64,
    /// Real argument z.
    #[arg(long, allow_negative_numbers = true)]
    z: f64,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: std::path::PathBuf,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Emit JSON instead of the text table on stdout.
    #[arg(long)]
    json: bool,
}

fn parse_params(fragments: &[String]) -> Result<Option<ParamSet>, String> {
    if fragments.is_empty() {
        return Ok(None);
    }
    let mut p = ParamSet::new();
    for f in fragments {
        p.parse_assignment(f).map_err(|e| e.to_string())?;
    }
    Ok(Some(p))
}

fn parse_tols(fragments: &[String]) -> Result<BTreeMap<String, f64>, String> {
    let mut out = BTreeMap::new();
    for f in fragments {
        let (k, v) = f
            .split_once('=')
            .ok_or_else(|| format!("cannot parse tolerance override `{f}`"))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| format!("cannot parse tolerance override `{f}`"))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn finish(reports: &[CheckReport], out: Option<&std::path::Path>, json: bool) -> ExitCode {
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, emit_report(reports, ReportFormat::Json)) {
            eprintln!("error: cannot write report: {e}");
            return ExitCode::from(2);
        }
    }
    let format = if json {
        ReportFormat::Json
    } else {
        ReportFormat::Text
    };
    print!("{}", emit_report(reports, format));
    match exit_status(reports) {
        0 => ExitCode::SUCCESS,
        _ => ExitCode::from(1),
    }
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();

    let threads = if cli.single_thread {
        1
    } else {
        std::env::var("LAGVER_WORKERS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .unwrap_or(0)
    };
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| e.to_string())?;
    }

    match cli.command {
        Command::Catalog { cmd } => match cmd {
            CatalogCmd::List {
                json,
                ambient,
                tier,
                dim,
            } => {
                let ambient = match ambient.as_deref() {
                    None => None,
                    Some("flat") => Some(ModelKind::Flat),
                    Some("spherical-lift") => Some(ModelKind::SphericalLift),
                    Some("hyperbolic-lift") => Some(ModelKind::HyperbolicLift),
                    Some(other) => return Err(format!("unknown ambient `{other}`")),
                };
                let tier = match tier.as_deref() {
                    None => None,
                    Some("A") | Some("a") => Some(Tier::A),
                    Some("B") | Some("b") => Some(Tier::B),
                    Some(other) => return Err(format!("unknown tier `{other}`")),
                };
                let filter = FamilyFilter {
                    ambient,
                    tier,
                    dim,
                    include_variants: true,
                    include_controls: true,
                };
                let reg = registry();
                if json {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&reg.manifest_json(&filter))
                            .expect("manifest serializes")
                    );
                } else {
                    for f in reg.list(&filter) {
                        println!(
                            "{:<28} {:?} n={} ell={} tier {:?}{}",
                            f.id,
                            f.ambient.kind,
                            f.n,
                            f.ell,
                            f.tier,
                            if f.variant_of.is_some() {
                                "  (variant)"
                            } else {
                                ""
                            }
                        );
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
            CatalogCmd::Describe { id } => {
                let reg = registry();
                let f = reg.get(&id).map_err(|e| e.to_string())?;
                println!("id:       {}", f.id);
                println!("lineage:  {}", f.lineage);
                println!(
                    "ambient:  {:?} (n = {}, embedding dim = {})",
                    f.ambient.kind,
                    f.n,
                    f.ambient.m()
                );
                println!("twisted factors: {}", f.ell);
                println!("tier:     {:?}", f.tier);
                for p in &f.param_schema {
                    println!("param:    {} ({})", p.name, p.constraint);
                }
                for (j, (lo, hi)) in f.domain.intervals.iter().enumerate() {
                    println!("domain:   x_{j} in [{lo}, {hi}]");
                }
                for s in &f.domain.singular {
                    println!("singular: {}", s.desc);
                }
                println!("smoke:    {}", f.smoke);
                if let Some(v) = f.variant_of {
                    println!("variant of {v}");
                }
                for note in &f.notes {
                    println!("note:     {note}");
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Verify(args) => {
            if args.tol_profile != "default" {
                return Err(format!("unknown tolerance profile `{}`", args.tol_profile));
            }
            let params = parse_params(&args.params)?;
            let config = RunConfig {
                families: vec![RunItem {
                    id: args.id,
                    params,
                }],
                grid: GridSpec {
                    count: args.grid,
                    mode: SampleMode::Random,
                    seed: args.seed,
                    margin: 0.05,
                },
                tol_overrides: parse_tols(&args.tol)?,
            };
            let reports = run_verification(&config).map_err(|e| e.to_string())?;
            Ok(finish(&reports, args.out.as_deref(), false))
        }
        Command::Twistor { cmd } => match cmd {
            TwistorCmd::Residual {
                solution,
                params,
                grid,
                seed,
            } => {
                let fam = find_solution(&solution).map_err(|e| e.to_string())?;
                let sol = match parse_params(&params)? {
                    Some(p) => fam.build(&p).map_err(|e| e.to_string())?,
                    None => fam.build_default(),
                };
                let report = full_system_residual(&sol, grid, seed);
                println!("solution {} ({} points, seed {seed})", sol.id, grid);
                for eq in &report.equations {
                    println!(
                        "  {:<14} max {:.3e}  rms {:.3e}",
                        format!("{:?}", eq.equation),
                        eq.max,
                        eq.rms
                    );
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Variation(args) => {
            let reg = registry();
            let fam = reg.get(&args.id).map_err(|e| e.to_string())?;
            let params = parse_params(&args.params)?.unwrap_or_else(|| fam.smoke.clone());
            let handle = reg
                .instantiate(&args.id, &params)
                .map_err(|e| e.to_string())?;
            let center: Vec<f64> = args
                .center
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| format!("bad center `{}`", args.center))
                })
                .collect::<Result<_, _>>()?;
            let bump = BumpSpec {
                center,
                radius: args.radius,
                amplitude: args.amplitude,
            };
            let (dvol, rhs) = first_variation(&handle, &bump, 1e-3).map_err(|e| e.to_string())?;
            println!("dVol/dt           = {dvol:.6e}");
            println!("-int f div(J nH)  = {rhs:.6e}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Bessel(args) => {
            let nu = Complex64::new(args.nu_re, args.nu_im);
            let z = Complex64::new(args.z, 0.0);
            let ev = bessel_j(nu, z, &SeriesPolicy::default()).map_err(|e| e.to_string())?;
            println!(
                "J_nu(z) = {:.15e} + {:.15e} i   (terms {}, truncation estimate {:.2e})",
                ev.value.re, ev.value.im, ev.terms_used, ev.err_estimate
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(args) => {
            let text = std::fs::read_to_string(&args.config)
                .map_err(|e| format!("cannot read config: {e}"))?;
            let config: RunConfig =
                serde_json::from_str(&text).map_err(|e| format!("bad config: {e}"))?;
            let reports = run_verification(&config).map_err(|e| e.to_string())?;
            Ok(finish(&reports, args.out.as_deref(), args.json))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
