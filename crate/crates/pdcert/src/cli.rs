//! Command-line interface.
//!
//! Exit codes: 0 every check passes strictly, 1 the mandatory checks pass
//! but some published target needs its slack, 2 a mandatory check fails,
//! 3 configuration or IO error.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, ValueEnum};
use pdcert_core::certify::{run_pipeline, Config};
use pdcert_core::ivreal::parse_decimal;
use pdcert_core::midpoint::RadicandBound;
use pdcert_core::scalings::PerturbationRadius;
use pdcert_core::seedmap::SeedTable;
use pdcert_core::Interval;

use crate::oracle::{crosscheck, solve_fixed_point, CrossCheck, CrossLine, OracleParams};
use crate::render;
use crate::table::{load_table, table_hash, TableError};

pub const EXIT_CONFIG: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Radicand {
    Joint,
    Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LambdaRadius {
    Single,
    Double,
}

#[derive(Debug, Parser)]
#[command(
    name = "pdcert",
    version,
    about = "Emit a certificate of the renormalization bounds around a seed generating function"
)]
pub struct Args {
    /// Outer bidisk radius.
    #[arg(long, default_value = "1.75")]
    pub rho: String,
    /// Inner bidisk radius for the midpoint root.
    #[arg(long, default_value = "0.483119964599609")]
    pub r: String,
    /// Radius of the ball around the seed.
    #[arg(long, default_value = "0.00405550003051758")]
    pub delta: String,
    /// Radius of the contraction ball for the midpoint root.
    #[arg(long = "eps-ball", default_value = "0.01465")]
    pub eps_ball: String,
    /// Inflation factor of the bidisk.
    #[arg(long, default_value = "1.0699996948242188")]
    pub kappa: String,
    /// Second inflation factor, or `none`.
    #[arg(long = "kappa-corollary", default_value = "1.0699462890625")]
    pub kappa_corollary: String,
    /// A priori increment bound, or `auto`.
    #[arg(long = "eps-prime", default_value = "auto")]
    pub eps_prime: String,
    /// Shift of the x variable in the seed decomposition.
    #[arg(long = "shift-p", default_value = "0")]
    pub shift_p: String,
    /// Coefficient table file, or `builtin`.
    #[arg(long, default_value = "builtin")]
    pub table: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file, or `stdout`.
    #[arg(long, default_value = "stdout")]
    pub out: String,
    /// Relative slack on published targets.
    #[arg(long = "soft-slack", default_value = "1e-3")]
    pub soft_slack: String,
    /// Bound on the midpoint radicand perturbation.
    #[arg(long, value_enum, default_value_t = Radicand::Joint)]
    pub radicand: Radicand,
    /// Radius of the constant term in the scaling shift equation.
    #[arg(long = "lambda-radius", value_enum, default_value_t = LambdaRadius::Single)]
    pub lambda_radius: LambdaRadius,
    /// Use this midpoint bound instead of the certified one (must be larger).
    #[arg(long = "t-override")]
    pub t_override: Option<String>,
    /// Append the numerical fixed-point crosscheck.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long = "oracle-nx", default_value_t = 20)]
    pub oracle_nx: usize,
    #[arg(long = "oracle-ny", default_value_t = 9)]
    pub oracle_ny: usize,
    /// Samples per circle of the oracle torus grid.
    #[arg(long = "oracle-samples", default_value_t = 64)]
    pub oracle_samples: usize,
    /// Record the wall-clock time (makes output non-reproducible).
    #[arg(long)]
    pub timestamp: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid --{flag} value {value:?}: {msg}")]
    Value { flag: &'static str, value: String, msg: String },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Core(#[from] pdcert_core::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn decimal(flag: &'static str, value: &str) -> Result<Interval, CliError> {
    parse_decimal(value).map_err(|e| CliError::Value { flag, value: value.to_string(), msg: e.to_string() })
}

fn decimal_or(flag: &'static str, value: &str, keyword: &str) -> Result<Option<Interval>, CliError> {
    if value == keyword {
        Ok(None)
    } else {
        decimal(flag, value).map(Some)
    }
}

pub fn build_config(args: &Args) -> Result<Config, CliError> {
    let (table, table_source) = if args.table == "builtin" {
        (SeedTable::builtin(), String::from("builtin"))
    } else {
        (load_table(Path::new(&args.table))?, args.table.clone())
    };
    let soft_slack: f64 = args.soft_slack.parse().map_err(|_| CliError::Value {
        flag: "soft-slack",
        value: args.soft_slack.clone(),
        msg: String::from("not a number"),
    })?;
    let cfg = Config {
        rho: decimal("rho", &args.rho)?,
        r: decimal("r", &args.r)?,
        delta: decimal("delta", &args.delta)?,
        eps_ball: decimal("eps-ball", &args.eps_ball)?,
        kappa: decimal("kappa", &args.kappa)?,
        kappa_corollary: decimal_or("kappa-corollary", &args.kappa_corollary, "none")?,
        eps_prime: decimal_or("eps-prime", &args.eps_prime, "auto")?,
        shift: decimal("shift-p", &args.shift_p)?,
        table,
        table_source,
        soft_slack,
        radicand: match args.radicand {
            Radicand::Joint => RadicandBound::Joint,
            Radicand::Split => RadicandBound::Split,
        },
        lambda_radius: match args.lambda_radius {
            LambdaRadius::Single => PerturbationRadius::Single,
            LambdaRadius::Double => PerturbationRadius::Double,
        },
        t_override: args.t_override.as_deref().map(|t| decimal("t-override", t)).transpose()?,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Renders the certificate for `args`; returns the output and the exit code.
pub fn execute(args: &Args) -> Result<(String, i32), CliError> {
    let cfg = build_config(args)?;
    let mut cert = run_pipeline(&cfg)?;
    cert.config.table_hash = Some(table_hash(&cfg.table));
    if args.timestamp {
        cert.meta.timestamp = Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    }
    let oracle = args.oracle.then(|| {
        let params = OracleParams {
            nx: args.oracle_nx,
            ny: args.oracle_ny,
            samples: args.oracle_samples,
            rho: cfg.rho.mid(),
            ..OracleParams::default()
        };
        match solve_fixed_point(&cfg.table, &params) {
            Ok(fp) => crosscheck(&cert, &fp),
            Err(e) => CrossCheck {
                params,
                iterations: 0,
                residual: f64::NAN,
                lines: vec![CrossLine { name: "oracle_solve", value: f64::NAN, target: e.to_string(), pass: false }],
            },
        }
    });
    let body = match args.format {
        Format::Text => render::text(&cert, oracle.as_ref()),
        Format::Structured => render::structured(&cert, oracle.as_ref()),
    };
    Ok((body, cert.verdict().exit_code()))
}

fn emit(out: &str, body: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: out.to_string(), source };
    if out == "stdout" || out == "-" {
        let mut h = std::io::stdout().lock();
        h.write_all(body.as_bytes()).map_err(io)?;
        h.flush().map_err(io)
    } else {
        std::fs::write(out, body).map_err(io)
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&args).and_then(|(body, code)| emit(&args.out, &body).map(|_| code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("pdcert: {e}");
            EXIT_CONFIG
        }
    }
}
