//! `dinv`: build breadth-one D-invariant bases, generate coalescing point
//! schemes and verify their limits.
//!
//! Data goes to stdout, diagnostics to stderr. Exit status is 0 when every
//! requested check passed, 1 when a check failed and 2 on bad input.

mod cmd;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "dinv", version, about = "Breadth-one D-invariant subspaces and their discrete points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Source {
    Recursive,
    Explicit,
    General,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Check {
    Closure,
    Equivalence,
    Breadth,
    Identities,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SchemeArg {
    A,
    B,
}

impl From<SchemeArg> for dinv_core::Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::A => dinv_core::Scheme::A,
            SchemeArg::B => dinv_core::Scheme::B,
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct LimitArgs {
    /// Parameter table JSON file
    #[arg(long)]
    pub spec: std::path::PathBuf,
    /// Test function as text, e.g. "x1^5*x2^2"
    #[arg(long, conflicts_with = "f_file", required_unless_present = "f_file")]
    pub f: Option<String>,
    /// File holding the test function (text or JSON form)
    #[arg(long)]
    pub f_file: Option<std::path::PathBuf>,
    /// Order m of the functional L_m(D)
    #[arg(long)]
    pub m: usize,
    #[arg(long, value_enum, default_value = "a")]
    pub scheme: SchemeArg,
    /// Base point as comma-separated rationals; defaults to the origin
    #[arg(long, allow_hyphen_values = true)]
    pub z0: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a basis and print it as JSON
    Basis {
        #[arg(long, value_enum)]
        source: Source,
        /// ParamTable JSON (recursive, explicit, general) or GeneralSpec JSON (general)
        #[arg(long)]
        spec: std::path::PathBuf,
        /// Write to this file instead of stdout
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Human-readable polynomials, one per line
        #[arg(long)]
        pretty: bool,
    },
    /// Run a verification and print a JSON report
    Verify {
        #[arg(long, value_enum)]
        what: Check,
        #[arg(long)]
        spec: Option<std::path::PathBuf>,
        /// Basis JSON as written by `basis`; built from --spec when absent
        #[arg(long)]
        basis: Option<std::path::PathBuf>,
        /// Check this many random parameter tables (equivalence, closure); seeded by DINV_SEED
        #[arg(long)]
        random: Option<usize>,
        /// Expected breadth
        #[arg(long, default_value_t = 1)]
        expect: usize,
        #[arg(long, default_value_t = 20)]
        m_max: u32,
        #[arg(long, default_value_t = 12)]
        oracle_max: usize,
        #[arg(long, default_value_t = 8)]
        r_max: u32,
        #[arg(long, default_value_t = 8)]
        i_max: u32,
    },
    /// Print a discrete point scheme, symbolic in h or evaluated at --h
    Points {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long)]
        spec: std::path::PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        z0: Option<String>,
        /// Evaluate at this step size (a rational such as 1/10)
        #[arg(long)]
        h: Option<String>,
        /// Coordinates as text polynomials in h instead of JSON polynomials
        #[arg(long)]
        pretty: bool,
    },
    /// Exact h-expansion of the order-m stencil combination
    Limit(LimitArgs),
    /// Floating-point h-sweep as CSV
    Sweep {
        #[command(flatten)]
        limit: LimitArgs,
        /// Initial step size (rational or decimal)
        #[arg(long, default_value = "1/4")]
        h0: String,
        #[arg(long, default_value_t = 12)]
        steps: usize,
        /// Rows in exact arithmetic instead of floating point
        #[arg(long)]
        exact: bool,
    },
    /// Reproduce the worked two-variable example end to end
    Example1 {
        /// Test function used for the expansion reports
        #[arg(long)]
        f: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Basis {
            source,
            spec,
            out,
            pretty,
        } => cmd::basis::run(source, &spec, out.as_deref(), pretty),
        Command::Verify {
            what,
            spec,
            basis,
            random,
            expect,
            m_max,
            oracle_max,
            r_max,
            i_max,
        } => cmd::verify::run(cmd::verify::VerifyArgs {
            what,
            spec,
            basis,
            random,
            expect,
            ranges: dinv_core::identities::ScanRanges {
                m_max,
                oracle_max,
                r_max,
                i_max,
            },
        }),
        Command::Points {
            scheme,
            spec,
            z0,
            h,
            pretty,
        } => cmd::points::run(scheme.into(), &spec, z0.as_deref(), h.as_deref(), pretty),
        Command::Limit(args) => cmd::limit::run_limit(&args),
        Command::Sweep {
            limit,
            h0,
            steps,
            exact,
        } => cmd::limit::run_sweep(&limit, &h0, steps, exact),
        Command::Example1 { f } => cmd::example1::run(f.as_deref()),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
