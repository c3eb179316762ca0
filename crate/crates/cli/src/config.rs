//! Config files: TOML with one table per subcommand path, e.g. `[count]` or
//! `[experiment.scaling]`, whose keys are long flag names.
//!
//! Values are spliced into the argument list ahead of the user's flags, and
//! only for flags the user did not pass, so flags win over the file and the
//! file wins over built-in defaults.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Arg, Command};

use crate::error::CliError;

/// Subcommand path (`["experiment", "scaling"]`) at the head of `argv` and its leaf command.
fn leaf<'a>(argv: &[OsString], cmd: &'a Command) -> (Vec<String>, &'a Command) {
    let mut path = Vec::new();
    let mut c = cmd;
    for token in argv.iter().skip(1) {
        let Some(sub) = token.to_str().and_then(|t| c.find_subcommand(t)) else {
            break;
        };
        path.push(sub.get_name().to_string());
        c = sub;
    }
    (path, c)
}

/// The `--config` value, if any, without running the full parser.
pub fn config_path(argv: &[OsString]) -> Option<PathBuf> {
    let mut it = argv.iter().skip(1);
    while let Some(token) = it.next() {
        let t = token.to_str()?;
        if t == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(v) = t.strip_prefix("--config=") {
            return Some(PathBuf::from(v));
        }
    }
    None
}

fn given_on_command_line(arg: &Arg, flags: &[OsString]) -> bool {
    let mut longs: Vec<&str> = arg.get_long().into_iter().collect();
    longs.extend(arg.get_all_aliases().unwrap_or_default());
    flags.iter().filter_map(|f| f.to_str()).any(|f| {
        longs.iter().any(|l| {
            f.strip_prefix("--")
                .is_some_and(|rest| rest == *l || rest.starts_with(&format!("{l}=")))
        }) || arg
            .get_short()
            .is_some_and(|s| f.starts_with(&format!("-{s}")) && !f.starts_with("--"))
    })
}

fn render(value: &toml::Value) -> Result<Option<String>, CliError> {
    Ok(match value {
        toml::Value::String(s) => Some(s.clone()),
        toml::Value::Integer(i) => Some(i.to_string()),
        toml::Value::Float(f) => Some(f.to_string()),
        toml::Value::Boolean(true) => Some(String::new()),
        toml::Value::Boolean(false) => None,
        toml::Value::Array(items) => {
            let parts = items
                .iter()
                .map(|v| render(v).map(|s| s.unwrap_or_default()))
                .collect::<Result<Vec<_>, _>>()?;
            Some(parts.join(","))
        }
        other => return Err(CliError::Usage(format!("unsupported config value {other}"))),
    })
}

/// Arguments with config values inserted for every flag the user left unset.
pub fn merge(argv: &[OsString], cmd: &Command, config: &Path) -> Result<Vec<OsString>, CliError> {
    let text = std::fs::read_to_string(config)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", config.display())))?;
    let doc: toml::Table = text
        .parse()
        .map_err(|e| CliError::Usage(format!("config {}: {e}", config.display())))?;
    let (path, leaf_cmd) = leaf(argv, cmd);
    // argv = program, subcommand path, flags...
    let split = 1 + path.len();

    let mut section = Some(&doc);
    for name in &path {
        section = section
            .and_then(|t| t.get(name))
            .and_then(toml::Value::as_table);
    }
    let Some(section) = section else {
        return Ok(argv.to_vec());
    };

    let mut injected: Vec<OsString> = Vec::new();
    for (key, value) in section {
        if value.is_table() {
            continue;
        }
        let long = key.replace('_', "-");
        if long == "config" {
            return Err(CliError::Usage(
                "a config file cannot name another config file".into(),
            ));
        }
        let arg = leaf_cmd
            .get_arguments()
            .find(|a| a.get_long() == Some(long.as_str()))
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "config key '{key}' is not a flag of '{}'",
                    path.join(" ")
                ))
            })?;
        if given_on_command_line(arg, &argv[split..]) {
            continue;
        }
        if let Some(rendered) = render(value)? {
            if rendered.is_empty() {
                injected.push(format!("--{long}").into());
            } else {
                injected.push(format!("--{long}={rendered}").into());
            }
        }
    }
    let mut out = argv[..split].to_vec();
    out.extend(injected);
    out.extend_from_slice(&argv[split..]);
    Ok(out)
}
