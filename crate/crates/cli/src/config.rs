//! Command-line configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Calculator for CM values of higher automorphic Green functions.
#[derive(Debug, Parser)]
#[command(name = "greencm", version, about)]
pub struct Cli {
    /// Directory for cached basis expansions and functionals.
    #[arg(long, global = true, env = "GREENCM_CACHE", default_value = ".greencm-cache")]
    pub cache_dir: PathBuf,

    /// Disable the on-disk cache.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Omit timings so that identical runs produce byte-identical output.
    #[arg(long, global = true)]
    pub deterministic: bool,

    /// Log progress to stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reproduce one of the worked examples and check it against its reference values.
    Example(ExampleArgs),
    /// Evaluate a Hecke-translated Green function G_s^m(z1, z2) by direct summation.
    GreenEval(GreenArgs),
    /// Compute the exact CM-value functional and evaluate it against a coefficient table.
    CmFormula(FormulaArgs),
    /// Count fundamental discriminants whose class group has exponent dividing 2.
    SurveyClassgroups(SurveyArgs),
    /// Echelon basis of the plus space of weight 1/2 − j.
    Basis(BasisArgs),
    /// Validate a coefficient table and list its coefficients.
    TableValidate(TableArgs),
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    /// Example number (1, 2 or 3).
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    pub number: u8,
    /// Tolerance for the direct Green-function cross-check.
    #[arg(long, default_value_t = 1e-9, value_parser = positive)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct GreenArgs {
    /// Spectral parameter s > 1.
    #[arg(long)]
    pub s: f64,
    /// Hecke index m ≥ 1.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    /// First point, e.g. `i`, `0.5+1.2i` or `(1+sqrt(-23))/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub z1: String,
    /// Second point.
    #[arg(long, allow_hyphen_values = true)]
    pub z2: String,
    /// Certified absolute tolerance.
    #[arg(long, default_value_t = 1e-9, value_parser = positive)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct FormulaArgs {
    /// Discriminant d₂ < 0 of the second CM point.
    #[arg(long, allow_hyphen_values = true)]
    pub d2: i64,
    /// Fundamental twisting discriminant Δ.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub delta: i64,
    /// Discriminant d₁ of the first CM point.
    #[arg(long, allow_hyphen_values = true)]
    pub d1: i64,
    /// Index j ≥ 1 (the Green function G_{1+j}).
    #[arg(long)]
    pub j: u32,
    /// Coefficient table (JSON); defaults to the bundled table for d₂ = −23 or −7.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Series order of the input form.
    #[arg(long, default_value_t = 4)]
    pub order: i64,
    /// Output precision in bits.
    #[arg(long, default_value_t = 128)]
    pub prec: u32,
    /// Also evaluate the Green function directly and compare.
    #[arg(long)]
    pub crosscheck: bool,
    /// Tolerance of the cross-check.
    #[arg(long, default_value_t = 1e-8, value_parser = positive)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SurveyArgs {
    /// Strict upper bound for |D|.
    #[arg(long)]
    pub bound: u64,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    /// Weight 1/2 − j.
    #[arg(long)]
    pub j: i64,
    /// Maximal pole order (scalar model).
    #[arg(long, default_value_t = 8)]
    pub depth: i64,
    /// Series order (scalar model, exclusive).
    #[arg(long, default_value_t = 20)]
    pub order: i64,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Table file.
    pub path: PathBuf,
    /// Significant digits of the listed coefficients.
    #[arg(long, default_value_t = 15)]
    pub digits: usize,
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s} is not a positive number"))
    }
}
