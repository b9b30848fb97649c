//! Argument declarations and their resolution into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mincomp::{Caps, FamilyTag, Side};

use crate::{CliResult, Failure, RunConfig};

#[derive(Parser)]
#[command(
    name = "mincomp",
    version,
    about = "Exact minimal complements and co-minimal tuples in finite groups and the integers",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 usage error, 3 cap/budget exhausted."
)]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args)]
pub struct ConfigArgs {
    /// Seed for all randomized searches (0: fully deterministic default).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Max group order for exhaustive 𝒮 spectra.
    #[arg(long, global = true)]
    pub s_cap: Option<usize>,
    /// Max group order for exhaustive 𝒜 spectra.
    #[arg(long, global = true)]
    pub a_cap: Option<usize>,
    /// Max group order for a single minimal-to-some decision.
    #[arg(long, global = true)]
    pub min_to_some_cap: Option<usize>,
    /// Max group order for the co-minimal pair spectrum.
    #[arg(long, global = true)]
    pub co_min_cap: Option<usize>,
    /// Spectra cache directory (default: $MINCOMP_CACHE when set).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Output format for tabular reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for spectra scans (default: $MINCOMP_THREADS, else all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl ConfigArgs {
    pub fn resolve(&self) -> CliResult<RunConfig> {
        let mut caps = Caps::default();
        if let Some(v) = self.s_cap {
            caps.s_cap = v;
        }
        if let Some(v) = self.a_cap {
            caps.a_cap = v;
        }
        if let Some(v) = self.min_to_some_cap {
            caps.min_to_some_cap = v;
        }
        if let Some(v) = self.co_min_cap {
            caps.co_min_cap = v;
        }
        for (name, v) in [
            ("--s-cap", caps.s_cap),
            ("--a-cap", caps.a_cap),
            ("--min-to-some-cap", caps.min_to_some_cap),
            ("--co-min-cap", caps.co_min_cap),
        ] {
            if v == 0 {
                return Err(Failure::Usage(format!("{name} must be positive")));
            }
        }
        let cache_dir = self
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os("MINCOMP_CACHE").map(PathBuf::from));
        let threads = match self.threads {
            Some(t) => Some(t),
            None => match std::env::var("MINCOMP_THREADS") {
                Ok(raw) => Some(raw.trim().parse::<usize>().map_err(|_| {
                    Failure::Usage(format!(
                        "MINCOMP_THREADS must be a positive integer, got {raw:?}"
                    ))
                })?),
                Err(_) => None,
            },
        };
        if threads == Some(0) {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        Ok(RunConfig {
            seed: self.seed,
            caps,
            cache_dir,
            format: self.format,
            threads,
            out: self.out.clone(),
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TagArg {
    Cyc,
    Ab,
    Nil,
    Ssol,
    Sol,
    All,
}

impl From<TagArg> for FamilyTag {
    fn from(t: TagArg) -> FamilyTag {
        match t {
            TagArg::Cyc => FamilyTag::Cyclic,
            TagArg::Ab => FamilyTag::Abelian,
            TagArg::Nil => FamilyTag::Nilpotent,
            TagArg::Ssol => FamilyTag::Supersolvable,
            TagArg::Sol => FamilyTag::Solvable,
            TagArg::All => FamilyTag::All,
        }
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Create, validate, or describe Cayley tables.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Re-verify a certificate file against its group.
    Verify {
        /// Certificate JSON (bare, or wrapped as emitted by `construct`).
        #[arg(long)]
        cert: PathBuf,
        /// Cayley table of the group; defaults to rebuilding from the
        /// certificate's group label.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Produce a verified certificate by a constructive method.
    Construct(ConstructArgs),
    /// Size spectra of one group (or its co-minimal tuple spectrum with --k).
    Spectrum {
        /// Group spec such as cyclic:6, dihedral:4, abelian:2x2x3, or a
        /// catalog label.
        #[arg(long)]
        group: Option<String>,
        /// Cayley-table file.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
        /// Enumerate co-minimal k-tuple sizes instead (k = 2 or 3).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Intersected spectra over every group of one order in a family.
    Family {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        tag: TagArg,
    },
    /// Gap sets over a divisor chain, optionally oracle-certified.
    Gaps {
        #[arg(long)]
        n: u64,
        /// Divisor chain, e.g. 2,4.
        #[arg(long, value_delimiter = ',', required = true)]
        chain: Vec<u64>,
        /// Certify each gap size against the oracle in ℤ/n.
        #[arg(long)]
        verify: bool,
    },
    /// Integer-line certificates: construct, verify, lift.
    Zline {
        #[command(subcommand)]
        cmd: ZlineCmd,
    },
    /// Density of the normalized cyclic spectrum in [a, b].
    Density {
        /// Left endpoint, as p/q or an integer.
        #[arg(long)]
        a: String,
        /// Right endpoint, at most 2/3.
        #[arg(long)]
        b: String,
        /// Orders to evaluate, e.g. 300,3000.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
    },
    /// Corner-region avoidance for U_n over a range of n.
    Avoidance {
        /// Margin ε, as p/q (strictly between 0 and 1/2).
        #[arg(long)]
        eps: String,
        /// Inclusive range of n, e.g. 36..100.
        #[arg(long)]
        range: String,
    },
    /// Replay a frozen suite end to end and report pass/fail per job.
    Scan {
        #[arg(long, default_value = "golden")]
        suite: String,
        /// Also write each job's output file into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum GroupCmd {
    /// Build a named group and emit its Cayley table.
    Make {
        #[arg(long, value_enum)]
        kind: GroupKind,
        /// Order parameter for cyclic/dihedral/symmetric kinds.
        #[arg(long)]
        n: Option<usize>,
        /// Cyclic factors for an abelian direct sum, e.g. 2x2x3.
        #[arg(long)]
        factors: Option<String>,
        /// Left factor table for a direct product.
        #[arg(long)]
        left: Option<PathBuf>,
        /// Right factor table for a direct product.
        #[arg(long)]
        right: Option<PathBuf>,
    },
    /// Validate a table file and re-emit it in canonical bytes.
    Load {
        #[arg(long)]
        table: PathBuf,
    },
    /// Structural summary: order, classification, subgroup counts.
    Info {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        table: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupKind {
    Cyclic,
    Abelian,
    Dihedral,
    Symmetric,
    Product,
}

#[derive(Clone, Default, Args)]
pub struct ConstructArgs {
    /// Constructive method to run.
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// Group spec (thm31, lift).
    #[arg(long)]
    pub group: Option<String>,
    /// Cayley-table file (thm31, lift).
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Elements of the set to complement, e.g. 0,1 (thm31).
    #[arg(long)]
    pub set: Option<String>,
    /// Index of the normal subgroup to lift through (lift).
    #[arg(long)]
    pub index: Option<usize>,
    /// Coset labels in the quotient group, e.g. 1,3 (lift).
    #[arg(long)]
    pub cosets: Option<String>,
    /// Inner certificate files, one per coset; defaults to the trivial
    /// singleton certificate inside the subgroup (lift).
    #[arg(long)]
    pub inner_cert: Vec<PathBuf>,
    /// Spread parameter; defaults to the smallest passing value (lift).
    #[arg(long)]
    pub s: Option<usize>,
    /// Left factor group spec (product).
    #[arg(long)]
    pub left_group: Option<String>,
    /// Left factor table file (product).
    #[arg(long)]
    pub left_table: Option<PathBuf>,
    /// First set of the left co-minimal pair, e.g. 0,3 (product).
    #[arg(long)]
    pub left_a: Option<String>,
    /// Second set of the left co-minimal pair (product).
    #[arg(long)]
    pub left_b: Option<String>,
    /// Right factor group spec (product).
    #[arg(long)]
    pub right_group: Option<String>,
    /// Right factor table file (product).
    #[arg(long)]
    pub right_table: Option<PathBuf>,
    /// First set of the right co-minimal pair (product).
    #[arg(long)]
    pub right_a: Option<String>,
    /// Second set of the right co-minimal pair (product).
    #[arg(long)]
    pub right_b: Option<String>,
    /// Also save the product group's table here (product).
    #[arg(long)]
    pub out_table: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    #[default]
    Thm31,
    Lift,
    Product,
}

#[derive(Subcommand)]
pub enum ZlineCmd {
    /// Anchor construction: a verified witness set for a finite set.
    Construct {
        /// Elements of the finite set, e.g. 0,1,3.
        #[arg(long)]
        set: String,
        /// Translation offset of the anchor train.
        #[arg(long, default_value_t = 0)]
        offset: i64,
    },
    /// Verify a {w, c} certificate file.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Lift verified pairs through n·ℤ into prescribed residue classes.
    Lift {
        /// Modulus of the lift.
        #[arg(long)]
        n: usize,
        /// Coset representatives, e.g. 3,7.
        #[arg(long, value_delimiter = ',', required = true)]
        reps: Vec<i64>,
        /// JSON list of {c, w} pairs, one per representative; defaults to
        /// the singleton pair ({0}, ℤ) for each.
        #[arg(long)]
        inner: Option<PathBuf>,
        /// Spread parameter; defaults to the smallest passing value.
        #[arg(long)]
        s: Option<usize>,
    },
}
