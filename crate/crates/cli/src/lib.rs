//! Command-line front end: single evaluations, sweeps and the verification
//! driver. [`run`] is the whole program minus process plumbing.

pub mod args;
pub mod commands;
pub mod error;
pub mod model;
pub mod record;
pub mod table;
pub mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use clap::Parser;

use args::{Cli, Command};
use error::{CliError, CliResult};
use record::{Field, Format};

/// Replaces every `--args-file <path>` (or `--args-file=<path>`) by the
/// file's contents: one flag per line, optionally followed by its value.
/// Blank lines and lines starting with `#` are skipped.
pub fn expand_args_files(argv: Vec<OsString>) -> CliResult<Vec<OsString>> {
    let mut out = Vec::with_capacity(argv.len());
    let mut iter = argv.into_iter();
    while let Some(arg) = iter.next() {
        let path = match arg.to_str() {
            Some("--args-file") => iter
                .next()
                .ok_or_else(|| CliError::usage("--args-file needs a path"))?,
            Some(s) if s.starts_with("--args-file=") => OsString::from(&s["--args-file=".len()..]),
            _ => {
                out.push(arg);
                continue;
            }
        };
        let text = std::fs::read_to_string(Path::new(&path)).map_err(|e| {
            CliError::usage(format!("--args-file {}: {e}", Path::new(&path).display()))
        })?;
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match line.split_once(char::is_whitespace) {
                Some((flag, value)) => {
                    out.push(flag.into());
                    out.push(value.trim().into());
                }
                None => out.push(line.into()),
            }
        }
    }
    Ok(out)
}

fn emit<W: Write>(cli: &Cli, records: &[record::Record], stdout: &mut W) -> CliResult<()> {
    let default = match cli.command {
        Command::Table { .. } => Format::Csv,
        _ => Format::Json,
    };
    let format = cli.output.unwrap_or(default);
    match &cli.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            record::write_records(records, format, &mut file)?;
            file.flush()?;
        }
        None => record::write_records(records, format, stdout)?,
    }
    Ok(())
}

/// Runs one invocation and returns the exit status: 0 on success, 1 on
/// numerical failure or a failed verification check, 2 on usage errors.
pub fn run<W: Write, E: Write>(argv: Vec<OsString>, stdout: &mut W, stderr: &mut E) -> u8 {
    let argv = match expand_args_files(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{rendered}")
            } else {
                write!(stderr, "{rendered}")
            };
            return code;
        }
    };
    let outcome = commands::execute(&cli.command).and_then(|records| {
        emit(&cli, &records, stdout)?;
        Ok(records)
    });
    match outcome {
        Ok(records) => {
            let failed = records
                .iter()
                .filter(|r| r.get("passed") == Some(&Field::Flag(false)))
                .count();
            if failed > 0 {
                let _ = writeln!(stderr, "{failed} verification check(s) failed");
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
