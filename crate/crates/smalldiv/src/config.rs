//! Plain `key = value` configuration files.
//!
//! Each entry becomes the matching `--key value` flag, placed ahead of the
//! user's own arguments. A key the user also passes on the command line is
//! skipped, so flags always win. Keys may use `_` or `-`; blank lines and
//! `#` comments are ignored. Boolean flags take `true` or `false`, and a
//! repeatable flag such as `override` may appear on several lines.

use std::ffi::OsString;
use std::fmt;

use clap::{ArgAction, Command};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "config: {}", self.message)
        } else {
            write!(f, "config line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

pub fn parse_config(text: &str) -> Result<Vec<Entry>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError { line: i + 1, message: format!("expected key = value, got {line:?}") })?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() || key.starts_with('-') {
            return Err(ConfigError { line: i + 1, message: format!("bad key {key:?}") });
        }
        let value = value.trim().trim_matches('"').to_string();
        out.push(Entry { line: i + 1, key, value });
    }
    Ok(out)
}

/// Finds the value of `--config` in raw arguments.
pub fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            break;
        }
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some(v.into());
        }
    }
    None
}

/// Index of the subcommand token in `args`, skipping leading global options.
fn subcommand_index(args: &[OsString], cmd: &Command) -> Option<usize> {
    let mut i = 1;
    while i < args.len() {
        let s = args[i].to_string_lossy();
        if let Some(long) = s.strip_prefix("--") {
            if !long.contains('=') && takes_value(cmd, long) {
                i += 1;
            }
        } else if !s.starts_with('-') {
            return Some(i);
        }
        i += 1;
    }
    None
}

fn takes_value(cmd: &Command, long: &str) -> bool {
    cmd.get_arguments().any(|a| a.get_long() == Some(long) && a.get_action().takes_values())
}

fn user_passed(args: &[OsString], long: &str) -> bool {
    let flag = format!("--{long}");
    let prefixed = format!("--{long}=");
    args.iter().skip(1).any(|a| {
        let s = a.to_string_lossy();
        s == flag.as_str() || s.starts_with(prefixed.as_str())
    })
}

/// Splices config entries into `args` right after the subcommand.
///
/// Keys that belong to some other subcommand are ignored; keys no command
/// knows are an error.
pub fn inject(args: &[OsString], entries: &[Entry], cmd: &Command) -> Result<Vec<OsString>, ConfigError> {
    let Some(at) = subcommand_index(args, cmd) else {
        return Ok(args.to_vec());
    };
    let name = args[at].to_string_lossy().into_owned();
    let Some(sub) = cmd.find_subcommand(&name) else {
        return Ok(args.to_vec());
    };
    let mut extra: Vec<OsString> = Vec::new();
    for e in entries {
        if e.key == "config" {
            return Err(ConfigError { line: e.line, message: "config files cannot nest".into() });
        }
        let own = sub.get_arguments().chain(cmd.get_arguments()).find(|a| a.get_long() == Some(e.key.as_str()));
        let Some(arg) = own else {
            let elsewhere = cmd.get_subcommands().any(|s| s.get_arguments().any(|a| a.get_long() == Some(e.key.as_str())));
            if elsewhere {
                continue;
            }
            return Err(ConfigError { line: e.line, message: format!("unknown key {:?}", e.key) });
        };
        if user_passed(args, &e.key) {
            continue;
        }
        match arg.get_action() {
            ArgAction::SetTrue => match e.value.as_str() {
                "true" => extra.push(format!("--{}", e.key).into()),
                "false" => {}
                v => return Err(ConfigError { line: e.line, message: format!("{}: expected true or false, got {v:?}", e.key) }),
            },
            _ => {
                extra.push(format!("--{}", e.key).into());
                extra.push(e.value.clone().into());
            }
        }
    }
    let mut out = args[..=at].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[at + 1..]);
    Ok(out)
}
