use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qcat::{check_instance, emit_report, parse_instance, run_suite, Format, Instance, Report, SuiteConfig, SuiteName, EXIT_INPUT};
use qcat_core::TNorm;

#[derive(Parser)]
#[command(name = "qcat", version, about = "Exact audits for [0,1]-enriched categories on finite instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named audit sweep.
    Verify {
        /// quantale-axioms, monad-laws, representability, functoriality, total-partial,
        /// stone-weierstrass, enriched-roundtrip, lemma1, twovalued or tensor-maximality
        #[arg(long)]
        suite: String,
        /// min, product, lukasiewicz or ordinal:lo..hi=inner,...
        #[arg(long, default_value = "lukasiewicz")]
        tnorm: String,
        /// Grid bound n: sweeps Q_1..Q_n unless --exact-grid is set.
        #[arg(long, default_value_t = 2)]
        grid: u32,
        #[arg(long)]
        exact_grid: bool,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        corpus: usize,
        /// table or json
        #[arg(long, default_value = "table")]
        report: String,
        /// Replace the enumeration with the carrier from this instance file.
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Append elapsed time to the report.
        #[arg(long)]
        timing: bool,
    },
    /// Validate an instance file and run the checks for its kind.
    Check {
        file: PathBuf,
        #[arg(long, default_value = "table")]
        report: String,
        #[arg(long)]
        timing: bool,
    },
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT as u8)
}

fn load(path: &Path) -> Result<(String, Instance), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let inst = parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    Ok((label, inst))
}

fn finish(report: &Report, format: Format, timing: bool) -> ExitCode {
    print!("{}", emit_report(report, format, timing));
    ExitCode::from(report.status().exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_INPUT as u8);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match cli.command {
        Command::Verify {
            suite,
            tnorm,
            grid,
            exact_grid,
            max_size,
            seed,
            corpus,
            report,
            instance,
            timing,
        } => {
            let suite: SuiteName = match suite.parse() {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let tnorm: TNorm = match tnorm.parse() {
                Ok(t) => t,
                Err(e) => return input_error(e),
            };
            let format: Format = match report.parse() {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            let instance = match instance.as_deref().map(load).transpose() {
                Ok(i) => i,
                Err(e) => return input_error(e),
            };
            let cfg = SuiteConfig {
                suite,
                tnorm,
                grid,
                exact_grid,
                max_size,
                seed,
                corpus,
                instance,
            };
            match run_suite(&cfg) {
                Ok(r) => finish(&r, format, timing),
                Err(e) => input_error(e),
            }
        }
        Command::Check { file, report, timing } => {
            let format: Format = match report.parse() {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            let (label, inst) = match load(&file) {
                Ok(x) => x,
                Err(e) => return input_error(e),
            };
            match check_instance(&label, &inst) {
                Ok(r) => finish(&r, format, timing),
                Err(e) => input_error(e),
            }
        }
    }
}
