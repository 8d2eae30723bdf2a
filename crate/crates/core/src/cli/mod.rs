//! The `naw` command line: one subcommand per construction, each printing
//! (or atomically writing) a versioned certificate.

mod commands;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::cert::Certificate;
use crate::waring::DeltaMode;

pub use commands::{
    cmd_action, cmd_bundle, cmd_egroup, cmd_ghys, cmd_heisenberg, cmd_manifold, cmd_special, cmd_waring, parse_pairs,
};

#[derive(Debug, Parser)]
#[command(name = "naw", version, about = "Certificates for finite group actions on tori, bundles and SU(2)")]
pub struct Cli {
    /// Seed for every randomized step; recorded in the certificate.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the certificate to this path instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Build E(d, j) and optionally check its defining relations.
    Egroup {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        verify: bool,
    },
    /// Build H_{2n+1}(Z/d) and optionally certify its decomposition.
    Heisenberg {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        decompose: bool,
    },
    /// Assemble the faithful and line actions of a group expression.
    Action {
        expr: String,
        /// Label of the amalgamated central element of a leaf, e.g. "0,0,1".
        #[arg(long)]
        z: Option<String>,
    },
    /// Cancel the Chern character of the line-bundle sum for S_{n,m}.
    Bundle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value_t = DeltaMode::Factorial)]
        delta_mode: DeltaMode,
        /// Multiple of Σω in c_1(π_1); defaults to d.
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<i64>,
    },
    /// Dimensions of the target manifolds for a set of (n, m) pairs.
    Manifold {
        /// Pairs as "(n,m);(n,m)".
        #[arg(long = "I")]
        pairs: String,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Exact and numeric audit of the explicit action on T² × SU(2).
    Ghys {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        j: u32,
        #[arg(long, default_value_t = 100)]
        numeric_samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Same as --out.
        #[arg(long)]
        emit_cert: Option<PathBuf>,
    },
    /// Minimal representation of −1 mod q by k-th powers.
    Waring {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        modulus: u64,
    },
    /// Decompose a special p-group into members of S_{n,m}.
    Special {
        expr: String,
        #[arg(long)]
        p: u64,
        /// log_p |S|; derived from the order when omitted.
        #[arg(long)]
        r: Option<usize>,
    },
}

impl Cli {
    /// Parses an argument list whose first entry is the program name.
    pub fn parse_args<I, T>(args: I) -> std::result::Result<Cli, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Cli::try_parse_from(args)
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Egroup { .. } => "egroup",
            Command::Heisenberg { .. } => "heisenberg",
            Command::Action { .. } => "action",
            Command::Bundle { .. } => "bundle",
            Command::Manifold { .. } => "manifold",
            Command::Ghys { .. } => "ghys",
            Command::Waring { .. } => "waring",
            Command::Special { .. } => "special",
        }
    }
}

/// Runs a parsed command. Errors become certificates with exit code 2.
pub fn run(cli: &Cli) -> Certificate {
    let seed = cli.seed;
    let result = match &cli.command {
        Command::Egroup { d, j, verify } => cmd_egroup(*d, *j, *verify, seed),
        Command::Heisenberg { n, d, decompose } => cmd_heisenberg(*n, *d, *decompose, seed),
        Command::Action { expr, z } => cmd_action(expr, z.as_deref(), seed),
        Command::Bundle { n, m, d, delta_mode, delta } => cmd_bundle(*n, *m, *d, *delta_mode, *delta, seed),
        Command::Manifold { pairs, r } => cmd_manifold(pairs, *r, seed),
        Command::Ghys { d, j, numeric_samples, tol, .. } => cmd_ghys(*d, *j, *numeric_samples, *tol, seed),
        Command::Waring { k, modulus } => cmd_waring(*k, *modulus, seed),
        Command::Special { expr, p, r } => cmd_special(expr, *p, *r, seed),
    };
    result.unwrap_or_else(|e| {
        let mut cert = Certificate::new(cli.command.name(), &cli.command, seed);
        cert.fail_with(e);
        cert
    })
}

/// Parses arguments, runs, emits the certificate and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::parse_args(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let cert = run(&cli);
    let target = match &cli.command {
        Command::Ghys { emit_cert: Some(p), .. } => Some(p.clone()),
        _ => cli.out.clone(),
    };
    match target {
        Some(path) => {
            if let Err(e) = cert.write_atomic(&path) {
                eprintln!("naw: cannot write {}: {e}", path.display());
                return 2;
            }
            eprintln!("naw {}: exit {}", cert.command, cert.exit_code());
        }
        None => print!("{}", cert.to_json()),
    }
    if let Some(err) = &cert.error {
        eprintln!("naw: {err}");
    }
    cert.exit_code()
}
