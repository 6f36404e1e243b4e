//! Command-line and environment configuration. Flags take precedence over
//! `ELLIPMONO_*` environment variables, which take precedence over defaults.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub const DEFAULT_N_MAX: usize = 100;
pub const DEFAULT_PRECISION_BITS: u32 = 128;
pub const DEFAULT_MAX_BITS: u32 = 8192;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ellipmono", version, about = "Certified coefficients and inequalities for the complete elliptic integral K(r)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Largest index n (coefficient tables, sequence claims, J truncation length).
    #[arg(long, global = true, env = "ELLIPMONO_N_MAX", value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: Option<u64>,

    /// Starting working precision in bits.
    #[arg(long, visible_alias = "start-bits", global = true, env = "ELLIPMONO_PRECISION_BITS",
          value_parser = clap::value_parser!(u32).range(8..))]
    pub precision_bits: Option<u32>,

    /// Cap for adaptive precision doubling.
    #[arg(long, global = true, env = "ELLIPMONO_MAX_BITS", value_parser = clap::value_parser!(u32).range(8..))]
    pub max_bits: Option<u32>,

    /// Uniform interior grid points per unit of r.
    #[arg(long, global = true, env = "ELLIPMONO_GRID_DENSITY", value_parser = clap::value_parser!(u64).range(2..))]
    pub grid_density: Option<u64>,

    /// Output format; tables default to csv, certificates to json.
    #[arg(long, global = true, env = "ELLIPMONO_FORMAT", value_enum)]
    pub format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, env = "ELLIPMONO_OUT")]
    pub out: Option<PathBuf>,

    /// Omit the runtime field so repeated runs are byte-identical.
    #[arg(long, global = true, env = "ELLIPMONO_NO_TIMESTAMP")]
    pub no_timestamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of n, W_n, b_n, b_n/W_n and the sign of c_n(4).
    Coeffs,
    /// Certify a sequence claim over an index range.
    Certify {
        /// Claim name (same as --claim).
        #[arg(conflicts_with = "claim")]
        name: Option<String>,
        #[arg(long)]
        claim: Option<String>,
        /// Lower index (defaults to the smallest index the claim covers).
        #[arg(long)]
        lo: Option<u64>,
        /// Threshold p for c_sign claims, e.g. `4`, `pi*exp_half_pi/4`, `ratio(2)`.
        #[arg(long)]
        p: Option<String>,
    },
    /// Verify an inequality family on the default grid.
    Verify {
        /// Family name (same as --family).
        #[arg(conflicts_with = "family")]
        name: Option<String>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 0)]
        m: u64,
        /// Constant of the bound; defaults to the best constant. `beta` is accepted.
        #[arg(long)]
        p: Option<String>,
    },
    /// Perturb a best constant by epsilon and search for a failing point.
    Sharpness {
        #[arg(conflicts_with = "family")]
        name: Option<String>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 0)]
        m: u64,
        #[arg(long)]
        p: Option<String>,
        #[arg(long, default_value = "1/100")]
        epsilon: String,
    },
    /// Enclose K(r), exp(K(r)), g, G, G' and H at x = r².
    Eval {
        /// Comma-separated rationals or decimals in (0, 1).
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<String>,
    },
    /// Print the enclosed thresholds and constants.
    Constants,
}

impl Cli {
    pub fn n_max(&self) -> usize {
        self.n_max.map(|n| n as usize).unwrap_or(DEFAULT_N_MAX)
    }

    pub fn precision(&self) -> u32 {
        self.precision_bits.unwrap_or(DEFAULT_PRECISION_BITS)
    }

    pub fn max_bits(&self) -> u32 {
        self.max_bits.unwrap_or(DEFAULT_MAX_BITS).max(self.precision())
    }

    pub fn grid_density(&self) -> usize {
        self.grid_density
            .map(|d| d as usize)
            .unwrap_or(ellipmono_core::verify::DEFAULT_GRID_DENSITY)
    }
}
