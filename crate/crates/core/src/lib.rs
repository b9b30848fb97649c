//! Exact computation of minimal complements and co-minimal tuples in finite
//! groups and in the integers.
//!
//! The crate is organized around a small set of exact kernels:
//!
//! - [`group`] — finite groups as validated dense Cayley tables, with
//!   constructors, subgroup enumeration, quotients, and classification
//!   predicates (abelian, nilpotent, solvable, supersolvable).
//! - [`subset`] — bitmask subsets with product sets, translates, complement
//!   checks, and uniqueness-witness extraction.
//! - [`cert`] — JSON-serializable minimal-complement certificates that
//!   re-verify from scratch against the group table.
//! - [`oracle`] — decision procedures: minimality, trimming, the complete
//!   "minimal complement to some subset" search, size spectra, co-minimal
//!   tuples.
//! - [`catalog`] — every group of order ≤ 16 as shipped Cayley-table data,
//!   with classification tags and group-family enumeration.
//! - [`constructions`] — certificate-producing algorithms: greedy
//!   disjoint-translate placement, coset lifting through a normal subgroup,
//!   and cartesian products of co-minimal pairs.
//! - [`zline`] — the integer line: eventually periodic sets with exact set
//!   algebra, certificate verification over ℤ, the anchor construction,
//!   and the lift through `nℤ`.
//! - [`spectra`] — cached size spectra per group and per family, gap sets
//!   with exact rational lower bounds, co-minimal size-tuple spectra, the
//!   region `Uₙ` and its corner-avoidance check, density of the cyclic
//!   spectrum, and the coprime scaling inclusion.
//!
//! Everything is deterministic: randomized searches take explicit seeds, and
//! all verdicts (`true`/`false`/error) are backed by exhaustive checks or
//! checkable certificates, never by sampling.

mod error;

pub mod catalog;
pub mod cert;
pub mod constructions;
pub mod group;
pub mod oracle;
pub mod spectra;
pub mod subset;
pub mod zline;

pub use catalog::{
    abelian_groups_of_order, catalog, family_groups, groups_of_order, CatalogEntry, FamilyTag,
    CATALOG_COMPLETE_ORDER,
};
pub use cert::{ComplementCertificate, GroupRef};
pub use constructions::{
    build_disjoint_system, build_w_from_system, cartesian_co_minimal, check_sk_tuple,
    construction_feasible, lift_minimal_complement, proper_right_translate_contained,
    search_sk_tuple, sk_inequality_holds, DisjointSystem, LiftResult, SKTuple, SKTupleVerdict,
};
pub use error::{Error, Result};
pub use group::{
    enumerate_subgroups, enumerate_subgroups_with_cap, is_subgroup_mask, quotient,
    subgroup_as_group, subgroup_from_mask, FiniteGroup, QuotientData, Subgroup,
};
pub use oracle::{
    bound_check, compute_sizes_a, compute_sizes_s, find_subgroup_obstruction,
    is_co_minimal_pair, is_co_minimal_tuple, is_minimal_complement, is_minimal_to_some,
    trim_to_co_minimal_pair, trim_to_minimal_complement, MembershipVerdict, SizesEvery,
    SizesSome,
};
pub use spectra::{
    compute_co_minimal_spectrum, compute_family_spectrum, compute_spectrum, density_experiment,
    exclusion_count_lower_bound, gap_lower_bound, gap_sets, region_u_contains,
    verify_avoidance, verify_gap_exclusions, verify_scaling_inclusion, AvoidanceReport,
    CoMinimalSpectrum, DensityReport, ExclusionRow, FamilySpectrum, GapExclusionReport, GapSet,
    RatioRepr, ScalingReport, Spectrum,
};
pub use subset::{
    canonical_left_rep, canonical_rep, canonical_right_rep, inverse_set, is_complement,
    product_set, translate, uniqueness_witnesses, Side, SubsetMask,
};
pub use zline::{
    construct_z_complement, lift_z, verify_z_certificate, EventuallyPeriodicSet, FiniteIntSet,
    ZLiftResult, ZVerdict,
};

/// Search budgets. Exhaustive routines refuse (with a budget error) rather
/// than silently degrade when an input exceeds its cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Max group order for full minimal-complement spectra.
    pub s_cap: usize,
    /// Max group order for full minimal-to-some-complement spectra.
    pub a_cap: usize,
    /// Max group order for a single minimal-to-some decision.
    pub min_to_some_cap: usize,
    /// Max group order for the exhaustive co-minimal pair spectrum (k = 2).
    pub co_min_cap: usize,
    /// Max group order for the exhaustive co-minimal triple spectrum (k = 3).
    pub co_min_cap3: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            s_cap: 15,
            a_cap: 14,
            min_to_some_cap: 24,
            co_min_cap: 10,
            co_min_cap3: 8,
        }
    }
}
