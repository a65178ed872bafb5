use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(
    name = "genus",
    version,
    about = "Genus and extended genus fields of abelian extensions of F_q(T)"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Size of the constant field.
    #[arg(long, global = true, default_value_t = 5)]
    pub q: u64,
    /// Monic modulus of F_q over F_p, coefficients low to high (e.g. 2,1,1).
    #[arg(long = "field-modulus", global = true)]
    pub field_modulus: Option<String>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Worker threads for the oracle sweep.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Structure of (F_q[T]/N)^*.
    Unitgroup {
        #[arg(long = "N")]
        n: String,
    },
    /// A group of Dirichlet characters mod N.
    Char {
        #[arg(long = "N")]
        n: String,
        /// `full`, `dual:c1,c2,...` or `kummer:m:A`; repeatable.
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Polynomials to evaluate the generators at.
        #[arg(long)]
        at: Vec<String>,
    },
    /// E, its genus field and extended genus field.
    Extgenus {
        #[arg(long = "N")]
        n: String,
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
    },
    /// Genus fields of k(m-th root of gamma D).
    Kummer {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        gamma: String,
        #[arg(long = "D")]
        d: String,
    },
    /// Exhaustive invariant sweep over small moduli.
    Oracle {
        #[arg(long = "max-phi", default_value_t = 200)]
        max_phi: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 5])]
        qs: Vec<u64>,
        /// Random non-cyclic character groups in total.
        #[arg(long, default_value_t = 100)]
        random: usize,
        #[arg(long = "max-degree")]
        max_degree: Option<usize>,
        /// Replace one character component by a wrong one.
        #[arg(long)]
        corrupt: bool,
    },
    /// The two reference instances, q = 5, with their expected fields.
    WorkedExamples {
        /// Alternative gamma for the quadratic instance.
        #[arg(long)]
        gamma: Option<String>,
    },
}
