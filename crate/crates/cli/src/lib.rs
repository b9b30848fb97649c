//! Command-line surface for the mincomp toolkit.
//!
//! The binary wires the exact kernels in the `mincomp` crate to files and
//! stdout: group-table I/O, certificate construction and re-verification,
//! spectra and family scans, gap-set certification, integer-line
//! certificates, and the density/avoidance experiments.  Everything is
//! deterministic under a fixed seed: identical argv and configuration
//! produce byte-identical primary outputs.
//!
//! Exit codes: 0 success; 1 a verification or construction failed;
//! 2 usage error (bad flags, malformed inputs); 3 a cap or search budget
//! was exhausted.

pub mod args;
pub mod golden;
pub mod ops;

use std::path::PathBuf;

use mincomp::Caps;

use crate::args::Format;

/// A failed run, classified by which exit code it must produce.
#[derive(Debug)]
pub enum Failure {
    /// Bad invocation or malformed input (exit 2).
    Usage(String),
    /// A certificate, construction, or scan failed verification (exit 1).
    Verification(String),
    /// A cap or search budget was exhausted (exit 3).
    Budget(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<mincomp::Error> for Failure {
    fn from(e: mincomp::Error) -> Self {
        use mincomp::Error as E;
        match e {
            E::CapExceeded { .. } | E::BudgetExhausted(_) => Failure::Budget(e.to_string()),
            E::VerificationFailed(_) | E::NotComplement(_) | E::ConstructionFailed(_) => {
                Failure::Verification(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;

/// Resolved run configuration: flags merged with environment defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Seed for every randomized search; 0 by default, so default runs
    /// are fully deterministic.
    pub seed: u64,
    pub caps: Caps,
    /// Spectra cache directory (flag, else $MINCOMP_CACHE, else none).
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    /// Worker threads (flag, else $MINCOMP_THREADS, else all cores).
    pub threads: Option<usize>,
    /// Primary output file; stdout when absent.
    pub out: Option<PathBuf>,
}
