use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stirling_cli::commands::{self, OracleParams, TableFormat};
use stirling_cli::config::{CampaignConfig, Guards};
use stirling_cli::report::VerificationReport;
use stirling_cli::triangles::parse_kind;
use stirling_cli::{campaign, CliError, EXIT_OK, EXIT_UNEXPECTED, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "stirling", version, about = "Exact verification workbench for higher-order Stirling triangles")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Working precision of the numeric root finder.
    #[arg(long, global = true)]
    precision_bits: Option<usize>,
    /// Worker threads for campaigns and root clouds.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format: text or json for reports, csv or json for tables.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    guards: GuardFlags,
}

#[derive(Args)]
struct GuardFlags {
    #[arg(long, global = true, default_value_t = Guards::default().tp_size)]
    max_tp_size: usize,
    #[arg(long, global = true, default_value_t = Guards::default().hankel_size)]
    max_hankel_size: usize,
    #[arg(long, global = true, default_value_t = Guards::default().hankel_minor_order)]
    max_hankel_order: usize,
    #[arg(long, global = true, default_value_t = Guards::default().oracle_rn)]
    max_oracle_rn: usize,
}

impl GuardFlags {
    fn guards(&self) -> Guards {
        Guards {
            tp_size: self.max_tp_size,
            hankel_size: self.max_hankel_size,
            hankel_minor_order: self.max_hankel_order,
            oracle_rn: self.max_oracle_rn,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print a triangle, rows 0..=n_max.
    Gen {
        kind: String,
        r: u32,
        n_max: usize,
        /// `csv` or `json`; overrides --format.
        #[arg(value_name = "FORMAT")]
        table_format: Option<String>,
    },
    /// Total positivity of the leading size x size block.
    Tp {
        kind: String,
        r: u32,
        size: usize,
        /// Reverse every row first.
        #[arg(long)]
        reversed: bool,
    },
    /// Coefficientwise Hankel total positivity of the row polynomials.
    Hankel { kind: String, r: u32, size: usize, minor_order: usize },
    /// Root certificates, discriminants and nonreal-zero confirmations.
    Roots { kind: String, r: u32, n_max: usize },
    /// Normalized root clouds as CSV.
    Plot {
        kind: String,
        /// Comma-separated orders, e.g. `3,4,5`.
        #[arg(value_delimiter = ',', num_args = 1, required = true)]
        r: Vec<u32>,
        /// Comma-separated sizes, e.g. `50,100`.
        #[arg(value_delimiter = ',', num_args = 1, required = true)]
        n: Vec<usize>,
    },
    /// The full desk-scale campaign.
    Verify {
        /// TOML campaign configuration; defaults apply when absent.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Brute-force enumeration against the triangles.
    Oracle {
        /// I, II, III, IV, V or r-general.
        interpretation: String,
        /// `key=value` parameters and flavor words, e.g. `r=2 n=5` or `cyclic n=4`.
        params: Vec<String>,
        /// Also write the enumerated objects, one per line, to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn render(report: &VerificationReport, format: Option<Format>) -> Result<String, CliError> {
    match format {
        None | Some(Format::Text) => Ok(report.to_text()),
        Some(Format::Json) => Ok(report.to_json()),
        Some(Format::Csv) => Err(CliError::Usage("reports are text or json".into())),
    }
}

fn emit_report(report: &VerificationReport, g: &Global) -> Result<i32, CliError> {
    write_out(g.out.as_deref(), &render(report, g.format)?)?;
    Ok(if report.all_expected() { EXIT_OK } else { EXIT_UNEXPECTED })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    let guards = g.guards.guards();
    let bits = g.precision_bits.unwrap_or(stirling_core::analysis::DEFAULT_PRECISION_BITS);
    if bits < stirling_cli::config::MIN_PRECISION_BITS {
        return Err(CliError::Usage(format!("--precision-bits must be at least {}", stirling_cli::config::MIN_PRECISION_BITS)));
    }
    if let Some(j) = g.jobs {
        // A second initialization only fails when a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match &cli.command {
        Command::Gen { kind, r, n_max, table_format } => {
            let fmt = match (table_format.as_deref(), g.format) {
                (Some("csv"), _) | (None, None | Some(Format::Csv)) => TableFormat::Csv,
                (Some("json"), _) | (None, Some(Format::Json)) => TableFormat::Json,
                (Some(o), _) => return Err(CliError::Usage(format!("unknown table format {o}"))),
                (None, Some(Format::Text)) => return Err(CliError::Usage("tables are csv or json".into())),
            };
            write_out(g.out.as_deref(), &commands::gen(parse_kind(kind)?, *r, *n_max, fmt)?)?;
            Ok(EXIT_OK)
        }
        Command::Tp { kind, r, size, reversed } => {
            emit_report(&commands::tp(parse_kind(kind)?, *r, *size, *reversed, &guards)?, g)
        }
        Command::Hankel { kind, r, size, minor_order } => {
            emit_report(&commands::hankel(parse_kind(kind)?, *r, *size, *minor_order, &guards)?, g)
        }
        Command::Roots { kind, r, n_max } => emit_report(&commands::roots(parse_kind(kind)?, *r, *n_max, bits)?, g),
        Command::Plot { kind, r, n } => {
            let (csv, report) = commands::plot(kind, r, n, bits)?;
            match &g.out {
                Some(p) => {
                    std::fs::write(p, &csv)?;
                    eprint!("{}", render(&report, g.format)?);
                }
                None => print!("{csv}"),
            }
            Ok(if report.all_expected() { EXIT_OK } else { EXIT_UNEXPECTED })
        }
        Command::Verify { config } => {
            let mut cfg = match config {
                Some(p) => CampaignConfig::from_toml(&std::fs::read_to_string(p)?)?,
                None => CampaignConfig::default(),
            };
            if let Some(b) = g.precision_bits {
                cfg.precision_bits = b;
            }
            let c = campaign::build(&cfg)?;
            let report = c.run(g.jobs.unwrap_or_else(default_jobs))?;
            let out = g.out.clone().or(cfg.output.report.clone());
            write_out(out.as_deref(), &render(&report, g.format)?)?;
            if let (Some(csv), Some(p)) = (c.plot_csv(), cfg.output.plot.as_ref()) {
                std::fs::write(p, csv)?;
            }
            for u in report.unexpected() {
                eprintln!("unexpected: {}", u.text_line());
            }
            Ok(if report.all_expected() { EXIT_OK } else { EXIT_UNEXPECTED })
        }
        Command::Oracle { interpretation, params, dump } => {
            let params = OracleParams::parse(params);
            let report = commands::oracle(interpretation, &params, &guards)?;
            if let Some(p) = dump {
                std::fs::write(p, commands::oracle_dump(interpretation, &params, &guards)?)?;
            }
            emit_report(&report, g)
        }
    }
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = run(cli).unwrap_or_else(|e| {
        eprintln!("stirling: {e}");
        e.exit_code()
    });
    ExitCode::from(code as u8)
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        super::Cli::command().debug_assert();
    }
}
