//! Command line front end. All real work happens in the library; this file
//! only parses arguments, applies overrides, and prints results.
//!
//! Exit codes: 0 success, 1 bad configuration, 2 numerical failure,
//! 3 run degraded under --strict.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use schmidt2d::config::Config;
use schmidt2d::grid::build_radial_grid;
use schmidt2d::oracle::oracle_spectrum;
use schmidt2d::pipeline::{build_state, run_pipeline};
use schmidt2d::Result;

#[derive(Parser)]
#[command(
    name = "schmidt2d",
    about = "Schmidt decomposition of rotationally invariant two-particle states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the configured state and write the requested outputs.
    Run(RunArgs),
    /// Cross-check occupancies against a dense bipartite sample of the state.
    Oracle(OracleArgs),
    /// Parse and validate a configuration file, reporting every problem.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Override grid.n.
    #[arg(long, value_parser = clap::value_parser!(u64).range(8..=1024))]
    grid_n: Option<u64>,
    /// Override truncation.m_max.
    #[arg(long, value_parser = clap::value_parser!(u64).range(0..=64))]
    m_max: Option<u64>,
    /// Override truncation.s_max.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1024))]
    s_max: Option<u64>,
    /// Redirect all outputs into this directory (report.json, spectrum.csv,
    /// orbitals/, kernels/), overriding any paths in the file.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Also dump the projected kernel matrices.
    #[arg(long)]
    dump_kernels: bool,
    /// Exit with code 3 when the run reports warnings.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct OracleArgs {
    /// TOML run configuration; only [model] and [grid] are used.
    #[arg(long)]
    config: PathBuf,
    /// Cells per axis of the bipartite sample grid.
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(2..=50))]
    n_cart: u64,
    /// Half width of the sampled box, in trap units.
    #[arg(long, default_value_t = 6.0)]
    half_width: f64,
    /// How many occupancies to extract and compare.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
}

#[derive(Args)]
struct ValidateArgs {
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Run(args) => run(args),
        Command::Oracle(args) => oracle(args),
        Command::Validate(args) => {
            Config::from_file(&args.config)?;
            println!("configuration OK");
            Ok(0)
        }
    }
}

fn run(args: RunArgs) -> Result<u8> {
    let mut config = Config::from_file(&args.config)?;
    if let Some(n) = args.grid_n {
        config.grid.n = n as usize;
    }
    if let Some(m) = args.m_max {
        config.truncation.m_max = m as u32;
    }
    if let Some(s) = args.s_max {
        config.truncation.s_max = s as usize;
    }
    if let Some(dir) = &args.out_dir {
        std::fs::create_dir_all(dir)?;
        config.output.report = Some(dir.join("report.json"));
        config.output.spectrum = Some(dir.join("spectrum.csv"));
        config.output.orbitals_dir = Some(dir.join("orbitals"));
        if args.dump_kernels || config.output.kernels_dir.is_some() {
            config.output.kernels_dir = Some(dir.join("kernels"));
        }
    } else if args.dump_kernels && config.output.kernels_dir.is_none() {
        config.output.kernels_dir = Some(PathBuf::from("kernels"));
    }

    let outcome = run_pipeline(&config)?;
    let report = &outcome.report;
    println!("total occupancy      {:.12}", report.total_occupancy);
    println!("norm deficit         {:.3e}", report.norm_deficit);
    println!(
        "entropy              {:.12} nats = {:.12} bits",
        report.von_neumann_entropy_nats, report.von_neumann_entropy_bits
    );
    println!("linear entropy       {:.12}", report.linear_entropy);
    println!("Schmidt number       {:.12}", report.schmidt_number);
    if let Some(r) = report.reconstruction_residual {
        println!("reconstruction       {:.3e} (squared relative L2 error)", r);
    }
    println!();
    println!("   #   s    m   lambda");
    for (i, o) in report.occupancies.iter().take(10).enumerate() {
        println!("  {i:2}  {:2}  {:3}   {:.12e}", o.s, o.m, o.lambda);
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    for path in &outcome.written {
        println!("wrote {}", path.display());
    }
    if outcome.degraded() && args.strict {
        eprintln!("strict mode: treating warnings as failure");
        return Ok(3);
    }
    Ok(0)
}

fn oracle(args: OracleArgs) -> Result<u8> {
    let config = Config::from_file(&args.config)?;
    let grid = build_radial_grid(config.grid.n, config.grid.rho_max, config.grid.rule)?;
    let state = build_state(&config.model, &grid)?;
    let k = args.k as usize;

    let oracle = oracle_spectrum(state.as_ref(), args.n_cart as usize, args.half_width, k)?;
    let outcome = run_pipeline(&Config {
        output: Default::default(),
        ..config
    })?;
    let pipeline: Vec<_> = outcome.report.occupancies.iter().take(k).collect();

    println!("   #   s    m   pipeline lambda      oracle lambda        |diff|");
    let mut worst = 0.0f64;
    for i in 0..k.min(pipeline.len()).min(oracle.len()) {
        let p = pipeline[i];
        let diff = (p.lambda - oracle[i]).abs();
        worst = worst.max(diff);
        println!(
            "  {i:2}  {:2}  {:3}   {:.12e}  {:.12e}  {diff:.3e}",
            p.s, p.m, p.lambda, oracle[i]
        );
    }
    println!("largest |difference| {worst:.3e}");
    Ok(0)
}
