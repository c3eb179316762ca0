//! Command-line front end for `spherelab`.
//!
//! Every subcommand prints one summary line and, given `--out`, writes its
//! files there. Exit codes: 0 ok, 2 usage, 3 domain error, 4 resource or
//! guard, 5 I/O.
//!
//! Each subcommand documents every flag, with units where they apply and the
//! default where there is one:
//!
//! ```
//! let cmd = spherelab_cli::command();
//! for sub in cmd.get_subcommands() {
//!     let leaves: Vec<_> = if sub.has_subcommands() {
//!         sub.get_subcommands().collect()
//!     } else {
//!         vec![sub]
//!     };
//!     for leaf in leaves {
//!         for arg in leaf.get_arguments().filter(|a| a.get_id() != "help") {
//!             let help = arg.get_help().map(|h| h.to_string()).unwrap_or_default();
//!             assert!(!help.is_empty(), "{} --{}", leaf.get_name(), arg.get_id());
//!             let documented_default = !arg.get_default_values().is_empty()
//!                 || arg.is_required_set()
//!                 || help.contains("optional")
//!                 || help.contains("one per")
//!                 || help.contains("required");
//!             assert!(documented_default, "{} --{}", leaf.get_name(), arg.get_id());
//!         }
//!     }
//! }
//! ```

use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches};

pub mod args;
pub mod cache;
pub mod commands;
pub mod config;
pub mod error;

pub use args::Cli;
pub use error::CliError;

pub fn command() -> clap::Command {
    Cli::command()
}

fn parse(argv: &[OsString]) -> Result<Cli, clap::Error> {
    let matches = command().try_get_matches_from(argv)?;
    Cli::from_arg_matches(&matches)
}

/// Parses with config-file merging: flags > config > defaults.
pub fn parse_with_config(argv: &[OsString]) -> Result<Result<Cli, CliError>, clap::Error> {
    let Some(config) = config::config_path(argv) else {
        return parse(argv).map(Ok);
    };
    match config::merge(argv, &command(), &config) {
        Ok(merged) => parse(&merged).map(Ok),
        Err(e) => Ok(Err(e)),
    }
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    use args::Command::*;
    let threads = cli.command.common().threads;
    if threads > 0 {
        // only the first pool request in a process takes effect
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match &cli.command {
        Count(a) => commands::count(a),
        Sphere(a) => commands::sphere(a),
        SigmaHat(a) => commands::sigma_hat(a),
        Arcs(a) => commands::arcs(a),
        Gauss(a) => commands::gauss(a),
        Weyl(a) => commands::weyl(a),
        Average(a) => commands::average(a),
        Maximal(a) => commands::maximal(a),
        Multiplier(a) => commands::multiplier(a),
        Experiment(e) => commands::experiment(e),
    }
}

/// Full run: parse, merge config, execute, print, and map failures to exit codes.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match parse_with_config(&argv) {
        Ok(Ok(cli)) => cli,
        Ok(Err(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.code();
        }
        Err(e) => {
            let code = e.exit_code() as u8;
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(line) => {
            let _ = writeln!(stdout, "{line}");
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code()
        }
    }
}

pub fn main_entry() -> ExitCode {
    let code = run(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    ExitCode::from(code)
}
