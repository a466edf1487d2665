mod commands;
mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{exit, CliError};
use config::{ConfigError, RunConfig};

#[derive(Parser)]
#[command(name = "symbeta", version, about = "Thermodynamic formalism on symmetric beta-shifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Greedy, lazy and quasi-greedy expansions of `a`.
    Expand,
    /// Constants, kneading data, transitivity and forbidden words.
    Check,
    /// Admissible word counts and listing.
    Words,
    /// Perron eigendata of the discretized transfer operator.
    Spectrum,
    /// Pressure, entropy and variational checks along the t grid.
    Thermo,
    /// Zero-temperature scan of `tA`.
    Zerotemp,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Expand => "expand",
            Command::Check => "check",
            Command::Words => "words",
            Command::Spectrum => "spectrum",
            Command::Thermo => "thermo",
            Command::Zerotemp => "zerotemp",
        }
    }
}

/// Every flag overrides the config key of the same name.
#[derive(Args)]
struct Flags {
    #[arg(long, global = true)]
    m: Option<String>,
    /// Decimal, fraction, `golden`, `beta_T` or `m+1`.
    #[arg(long, global = true)]
    beta: Option<String>,
    #[arg(long, global = true)]
    depth: Option<String>,
    #[arg(long, global = true)]
    kneading_depth: Option<String>,
    /// `zero`, `digit:v0,..`, `block:k:w=v,..,*=v` or
    /// `geometric:c=..,theta=..,K=..[,offset=..]`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    potential: Option<String>,
    /// Comma-separated, strictly increasing.
    #[arg(long, global = true)]
    t_grid: Option<String>,
    #[arg(long, global = true)]
    tol: Option<String>,
    #[arg(long, global = true)]
    max_iter: Option<String>,
    /// `table`, `jsonl` or `csv`.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Point to expand, as a decimal or fraction.
    #[arg(long, global = true)]
    a: Option<String>,
    #[arg(long, global = true)]
    digits: Option<String>,
    #[arg(long, global = true)]
    top: Option<String>,
    /// List every cylinder or word instead of the top entries.
    #[arg(long, global = true)]
    dump: bool,
    #[arg(long, global = true)]
    max_period: Option<String>,
    /// Flat `key = value` file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the effective configuration and exit.
    #[arg(long, global = true)]
    print_config: bool,
}

impl Flags {
    fn overrides(&self) -> Vec<(&'static str, &Option<String>)> {
        vec![
            ("m", &self.m),
            ("beta", &self.beta),
            ("depth", &self.depth),
            ("kneading_depth", &self.kneading_depth),
            ("potential", &self.potential),
            ("t_grid", &self.t_grid),
            ("tol", &self.tol),
            ("max_iter", &self.max_iter),
            ("format", &self.format),
            ("a", &self.a),
            ("digits", &self.digits),
            ("top", &self.top),
            ("max_period", &self.max_period),
        ]
    }
}

fn resolve(flags: &Flags) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::from_env()?;
    if let Some(path) = &flags.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        cfg.apply_text(&text)?;
    }
    for (key, value) in flags.overrides() {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    if flags.dump {
        cfg.dump = true;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let invalid = |e: ConfigError| CliError {
        code: exit::INVALID_CONFIG,
        message: format!("invalid config: {e}"),
    };
    let cfg = resolve(&cli.flags).map_err(invalid)?;
    let params = cfg.validate().map_err(invalid)?;
    if cli.flags.print_config {
        print!("{}", cfg.emit());
        return Ok(exit::OK);
    }
    let report = match cli.command {
        Command::Expand => commands::expand(&cfg, &params),
        Command::Check => commands::check(&cfg, &params),
        Command::Words => commands::words(&cfg, &params),
        Command::Spectrum => commands::spectrum(&cfg, &params),
        Command::Thermo => commands::thermo(&cfg, &params),
        Command::Zerotemp => commands::zerotemp(&cfg, &params),
    }?;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(report.render(cfg.format).as_bytes());
    if cfg.format == config::Format::Csv {
        for w in &report.warnings {
            eprintln!("warning: {w}");
        }
    }
    Ok(if report.not_converged {
        exit::NOT_CONVERGED
    } else {
        exit::OK
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("symbeta {}: {}", cli.command.name(), e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
