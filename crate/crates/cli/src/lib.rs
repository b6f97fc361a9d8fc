//! Command-line front end: argument parsing, pipelines, certificates.

pub mod cert;
pub mod commands;

use std::time::Instant;

use clap::Parser;
use qgr_core::{Config, Error};

pub use cert::{CertError, Certificate, SCHEMA_VERSION};
pub use commands::{Cli, Cmd};

pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_WITNESS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug)]
pub struct RunResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub cert: Option<Certificate>,
}

/// Desk-scale bound from QGR_MAX_N, if set.
pub fn config_from_env() -> Result<Config, String> {
    match std::env::var("QGR_MAX_N") {
        Ok(s) => s
            .trim()
            .parse::<u32>()
            .map(|n| Config::default().with_max_n(n))
            .map_err(|_| format!("QGR_MAX_N must be a nonnegative integer, got {s:?}")),
        Err(std::env::VarError::NotPresent) => Ok(Config::default()),
        Err(e) => Err(format!("QGR_MAX_N: {e}")),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) => EXIT_INPUT,
        Error::Capability(_) => EXIT_CAPABILITY,
        Error::Internal(_) => EXIT_INTERNAL,
    }
}

/// Runs one command line (program name first) under `cfg`.
pub fn run<I, S>(args: I, cfg: &Config) -> RunResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_CERTIFIED };
            let text = e.render().to_string();
            return if code == 0 {
                RunResult { code, stdout: text, stderr: String::new(), cert: None }
            } else {
                RunResult { code, stdout: String::new(), stderr: text, cert: None }
            };
        }
    };
    let start = Instant::now();
    let out = match commands::execute(&cli.cmd, cfg) {
        Ok(o) => o,
        Err(e) => {
            return RunResult { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n"), cert: None };
        }
    };
    let mut cert = out.cert;
    cert.timing_ms = start.elapsed().as_millis() as u64;
    let mut stdout = out.summary.join("\n") + "\n";
    if cert.oracle_checked {
        stdout.push_str("oracle cross-check: agree\n");
    }
    if let Some(path) = &cli.cmd.common().json {
        if let Err(e) = cert.write(path) {
            return RunResult {
                code: EXIT_INPUT,
                stdout,
                stderr: format!("error: cannot write certificate to {}: {e}\n", path.display()),
                cert: Some(cert),
            };
        }
        stdout.push_str(&format!("certificate written to {}\n", path.display()));
    }
    RunResult { code: out.exit, stdout, stderr: String::new(), cert: Some(cert) }
}
