use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use weylindex::cli::{self, exit, Format, MethodChoice};

#[derive(Parser)]
#[command(name = "weylindex", version, about = "Exact degrees, Chern-class indices and Euler characteristics of hyperplane sections of reductive groups")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task in a job file and print the reports.
    Compute {
        config: PathBuf,
        /// Integration method, overriding the job file.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// Also run the flag-subdivision path for Chern indices.
        #[arg(long, num_args = 0..=1, default_missing_value = "true")]
        flag_path: Option<bool>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Validate a job file without computing anything.
    Check { config: PathBuf },
    /// Cross-check both integration methods and the flag path on built-in inputs.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Monomial,
    Polarization,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

fn load(path: &PathBuf) -> Result<cli::Job, i32> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        exit::VALIDATION
    })?;
    cli::parse_config(text.as_str())
        .and_then(|c| c.validate())
        .map_err(|e| {
            eprintln!("error: {}: {e}", path.display());
            exit::VALIDATION
        })
}

fn configure_threads() {
    if let Ok(v) = std::env::var("WEYLINDEX_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("warning: ignoring WEYLINDEX_THREADS={v:?}"),
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let code = match Args::parse().command {
        Command::Check { config } => match load(&config) {
            Ok(job) => {
                println!("{}: ok ({} tasks, {})", config.display(), job.tasks.len(), job.root_system.describe());
                exit::OK
            }
            Err(code) => code,
        },
        Command::Compute { config, method, flag_path, format } => match load(&config) {
            Err(code) => code,
            Ok(mut job) => {
                if let Some(m) = method {
                    let choice = match m {
                        MethodArg::Monomial => MethodChoice::Monomial,
                        MethodArg::Polarization => MethodChoice::Polarization,
                        MethodArg::Both => MethodChoice::Both,
                    };
                    job.options.methods = choice.methods();
                }
                if let Some(f) = flag_path {
                    job.options.flag_path = f;
                }
                let format = match format {
                    FormatArg::Text => Format::Text,
                    FormatArg::Structured => Format::Structured,
                };
                match cli::run(&job) {
                    Ok(reports) => {
                        print!("{}", cli::render(&reports, format));
                        exit::OK
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        cli::exit_code(&e.error)
                    }
                }
            }
        },
        Command::Selftest => match cli::selftest() {
            Ok(lines) => {
                for l in lines {
                    println!("{l}");
                }
                exit::OK
            }
            Err((case, e)) => {
                eprintln!("FAIL {case}: {e}");
                cli::exit_code(&e)
            }
        },
    };
    ExitCode::from(code as u8)
}
