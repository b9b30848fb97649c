//! Size spectra and their asymptotics.
//!
//! For a finite group `G` of order `n`, the spectrum 𝒮(G) collects the
//! sizes `k` such that **some** size-`k` subset of `G` is a minimal
//! complement, and 𝒜(G) the sizes such that **every** size-`k` subset is
//! one; 𝒜(G) ⊆ 𝒮(G) always.  Intersecting over all groups of order `n`
//! in a family (cyclic, abelian, nilpotent, supersolvable, solvable, or
//! all groups) gives the family spectra 𝒮ₙ*, 𝒜ₙ*.
//!
//! This module wraps the exhaustive oracle in cacheable [`Spectrum`]
//! values, computes family intersections, and implements the closed-form
//! machinery describing how the spectra behave as `n` grows:
//!
//! * [`gap_sets`] — explicit runs of sizes missing from 𝒜(G) for every
//!   group with subgroups of prescribed indices, with a verified
//!   disjointness and cardinality formula.
//! * [`gap_lower_bound`] / [`exclusion_count_lower_bound`] — the exact
//!   rational lower bound `n/(p²(2 + 1/p)) − M` on how many sizes the gap
//!   sets certify, compared against oracle-confirmed exclusions.
//! * [`compute_co_minimal_spectrum`] — the exact set of size tuples
//!   realized by co-minimal pairs and triples.
//! * [`region_u_contains`] / [`verify_avoidance`] — the planar region
//!   `Uₙ` that contains `(1/n)·𝒮₂`, and exact-rational confirmation that
//!   the corner region `R_ε` avoids it for all `n` past the proof's
//!   threshold.
//! * [`density_experiment`] — the density of `(1/n)·𝒮ₙ^cyc` in a
//!   subinterval of `[0, 2/3]`, from the closed form for cyclic spectra,
//!   converging to `3(b−a)/2`.
//! * [`verify_scaling_inclusion`] — the inclusion `m·𝒮ₙ* ⊆ 𝒮ₘₙ*` for
//!   coprime `m, n`, with a constructive product witness per element.
//!
//! All region and ratio arithmetic is exact rational; floating point
//! appears only in rendered reports.  Expensive spectra are cached in
//! content-addressed files written atomically (write to a temporary name,
//! then rename), so concurrent runs never corrupt an entry.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalog::{family_groups, FamilyTag};
use crate::cert::{ComplementCertificate, GroupRef};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::oracle::{
    compute_sizes_a, compute_sizes_s, is_co_minimal_tuple, is_minimal_to_some,
    trim_to_co_minimal_pair, MembershipVerdict,
};
use crate::constructions::cartesian_co_minimal;
use crate::subset::{Side, SubsetMask};
use crate::Caps;

/// An exact rational rendered for reports: the exact value as a string
/// plus a floating approximation for quick reading.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRepr {
    pub exact: String,
    pub value: f64,
}

impl RatioRepr {
    pub fn of(r: &BigRational) -> Self {
        let exact = if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        };
        RatioRepr {
            exact,
            value: r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

// ---------------------------------------------------------------------------
// content-addressed cache

static CACHE_COUNTER: AtomicU64 = AtomicU64::new(0);

fn cache_key(parts: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update(part.as_bytes());
        hasher.update([0x1f]);
    }
    hex::encode(hasher.finalize())
}

fn cache_load<T: DeserializeOwned>(dir: Option<&Path>, key: &str) -> Option<T> {
    let path = dir?.join(format!("{key}.json"));
    let text = fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

/// Writes a cache entry atomically: the value is serialized to a unique
/// temporary file in the same directory and renamed into place, so a
/// concurrent reader sees either the old entry or the new one, never a
/// truncated file.
fn cache_store<T: Serialize>(dir: Option<&Path>, key: &str, value: &T) -> Result<()> {
    let Some(dir) = dir else {
        return Ok(());
    };
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        "{key}.json.tmp.{}.{}",
        std::process::id(),
        CACHE_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    fs::write(&tmp, serde_json::to_string_pretty(value)?)?;
    fs::rename(&tmp, dir.join(format!("{key}.json")))?;
    Ok(())
}

// ---------------------------------------------------------------------------
// per-group spectra

/// The size spectra of one group: which sizes admit some minimal
/// complement (with a verified certificate each), and which sizes force
/// every subset to be one (with a counterexample for each excluded size).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Spectrum {
    pub group: GroupRef,
    pub side: Side,
    /// k ↦ certificate of a size-k minimal complement; the key set is 𝒮.
    pub s_witnesses: BTreeMap<usize, ComplementCertificate>,
    /// Sizes k for which every size-k subset is a minimal complement.
    pub a_set: BTreeSet<usize>,
    /// Excluded k ↦ a size-k subset that is minimal to no witness set.
    pub a_counterexamples: BTreeMap<usize, Vec<u32>>,
    /// False when the order exceeded a cap and only the trivially known
    /// part of the spectrum is reported.
    pub complete: bool,
}

impl Spectrum {
    pub fn s_set(&self) -> BTreeSet<usize> {
        self.s_witnesses.keys().copied().collect()
    }

    pub fn order(&self) -> usize {
        self.group.order
    }

    fn assert_invariants(&self) {
        let n = self.order();
        assert!(
            self.s_witnesses.contains_key(&1),
            "singletons are always minimal complements"
        );
        assert!(
            self.s_witnesses.contains_key(&n),
            "the whole group is always a minimal complement"
        );
        assert!(
            self.a_set.iter().all(|k| self.s_witnesses.contains_key(k)),
            "every-size membership implies some-size membership"
        );
    }
}

/// The sizes that are always present: 1 (any singleton is a minimal
/// complement to the whole group) and n (the whole group is a minimal
/// complement to any singleton).
fn trivial_s_witnesses(
    g: &FiniteGroup,
    side: Side,
) -> Result<BTreeMap<usize, ComplementCertificate>> {
    let n = g.order();
    let identity = SubsetMask::singleton(n, g.identity());
    let full = SubsetMask::full(n);
    let mut witnesses = BTreeMap::new();
    witnesses.insert(1, ComplementCertificate::new(g, &full, &identity, side)?);
    witnesses.insert(n, ComplementCertificate::new(g, &identity, &full, side)?);
    Ok(witnesses)
}

/// Computes the spectra 𝒮(G), 𝒜(G) exhaustively when the order is within
/// the caps.  Over-cap inputs are not refused: the result carries the
/// trivially known sizes only and is flagged incomplete.  Results are
/// cached by (table hash, side, caps) when a cache directory is given.
pub fn compute_spectrum(
    g: &FiniteGroup,
    side: Side,
    caps: &Caps,
    cache_dir: Option<&Path>,
) -> Result<Spectrum> {
    let key = cache_key(&[
        "spectrum",
        g.table_hash(),
        side_name(side),
        &caps.s_cap.to_string(),
        &caps.a_cap.to_string(),
    ]);
    if let Some(spectrum) = cache_load::<Spectrum>(cache_dir, &key) {
        if spectrum.group.matches(g) && spectrum.side == side {
            return Ok(spectrum);
        }
    }

    let n = g.order();
    let (s_witnesses, s_complete) = if n <= caps.s_cap {
        let sizes = compute_sizes_s(g, side, None, caps)?;
        (sizes.witnesses, true)
    } else {
        (trivial_s_witnesses(g, side)?, false)
    };
    let (a_set, a_counterexamples, a_complete) = if n <= caps.a_cap {
        let sizes = compute_sizes_a(g, side, caps)?;
        let counterexamples = sizes
            .counterexamples
            .into_iter()
            .map(|(k, mask)| (k, mask.elements()))
            .collect();
        (
            sizes.sizes.into_iter().collect::<BTreeSet<usize>>(),
            counterexamples,
            true,
        )
    } else {
        // Sizes 1 and n lie in 𝒜 for every group; nothing else is known
        // without the exhaustive scan.
        ([1, n].into_iter().collect(), BTreeMap::new(), false)
    };

    let spectrum = Spectrum {
        group: GroupRef::of(g),
        side,
        s_witnesses,
        a_set,
        a_counterexamples,
        complete: s_complete && a_complete,
    };
    spectrum.assert_invariants();
    cache_store(cache_dir, &key, &spectrum)?;
    Ok(spectrum)
}

// ---------------------------------------------------------------------------
// family spectra

/// The intersected spectra over every group of order `n` in a family.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilySpectrum {
    pub n: usize,
    pub tag: FamilyTag,
    /// ⋂ 𝒮(G) over the family members.
    pub s_set: BTreeSet<usize>,
    /// ⋂ 𝒜(G) over the family members.
    pub a_set: BTreeSet<usize>,
    /// Labels of the groups intersected.
    pub members: Vec<String>,
    /// True when the member list provably contains every group of order
    /// `n` with the family property (up to isomorphism).
    pub catalog_complete: bool,
    /// True when every member's spectrum was computed exhaustively.
    pub spectra_complete: bool,
}

/// Intersects the spectra of all groups of order `n` carrying the family
/// tag.  An incomplete group listing or a capped member spectrum is
/// reported through the flags, never silently ignored: in both cases the
/// reported sets may be over- (listing) or under- (caps) approximations.
///
/// Sizes are side-independent (inversion swaps left and right witnesses
/// preserving cardinalities), so members are evaluated on the right.
pub fn compute_family_spectrum(
    n: usize,
    tag: FamilyTag,
    caps: &Caps,
    cache_dir: Option<&Path>,
) -> Result<FamilySpectrum> {
    let (groups, catalog_complete) = family_groups(n, tag)?;
    let mut s_set: Option<BTreeSet<usize>> = None;
    let mut a_set: Option<BTreeSet<usize>> = None;
    let mut members = Vec::with_capacity(groups.len());
    let mut spectra_complete = true;
    for g in &groups {
        let spectrum = compute_spectrum(g, Side::Right, caps, cache_dir)?;
        spectra_complete &= spectrum.complete;
        let gs = spectrum.s_set();
        let ga = spectrum.a_set.clone();
        s_set = Some(match s_set {
            None => gs,
            Some(acc) => acc.intersection(&gs).copied().collect(),
        });
        a_set = Some(match a_set {
            None => ga,
            Some(acc) => acc.intersection(&ga).copied().collect(),
        });
        members.push(g.label().to_string());
    }
    Ok(FamilySpectrum {
        n,
        tag,
        s_set: s_set.unwrap_or_default(),
        a_set: a_set.unwrap_or_default(),
        members,
        catalog_complete,
        spectra_complete,
    })
}

// ---------------------------------------------------------------------------
// gap sets

/// Runs of consecutive sizes certified to be missing from 𝒜(G) for any
/// group of order `n` with subgroups of the chain's indices.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GapSet {
    pub n: u64,
    /// Divisors d₁ | d₂ | … | d_k of n, pairwise distinct.
    pub chain: Vec<u64>,
    /// Per-divisor set Bᵢ = { n/dᵢ − 1, …, n/dᵢ − (⌈n/(dᵢ(2dᵢ+1))⌉ − 1) }.
    pub sets: Vec<BTreeSet<u64>>,
    pub union: BTreeSet<u64>,
    /// Closed-form size Σᵢ (⌈n/(dᵢ(2dᵢ+1))⌉ − 1); equals |union|.
    pub cardinality: u64,
}

fn ceil_div(a: u128, b: u128) -> u128 {
    (a + b - 1) / b
}

/// Evaluates the per-divisor gap sets for a divisibility chain and checks
/// the two structural facts: the Bᵢ are pairwise disjoint, and the union
/// size equals the closed-form sum.
pub fn gap_sets(n: u64, chain: &[u64]) -> Result<GapSet> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if chain.is_empty() {
        return Err(Error::InvalidArgument("empty divisor chain".into()));
    }
    for (i, d) in chain.iter().enumerate() {
        if *d == 0 || n % d != 0 {
            return Err(Error::InvalidArgument(format!(
                "{d} does not divide {n}"
            )));
        }
        if i + 1 < chain.len() {
            let next = chain[i + 1];
            if next == *d || next % d != 0 {
                return Err(Error::InvalidArgument(format!(
                    "chain must be strictly increasing by divisibility, got {d} then {next}"
                )));
            }
        }
    }

    let mut sets = Vec::with_capacity(chain.len());
    let mut cardinality: u64 = 0;
    for d in chain {
        let denom = (*d as u128) * (2 * (*d as u128) + 1);
        let count = (ceil_div(n as u128, denom) - 1) as u64;
        let b: BTreeSet<u64> = (1..=count).map(|r| n / d - r).collect();
        debug_assert_eq!(b.len() as u64, count);
        cardinality += count;
        sets.push(b);
    }
    let mut union: BTreeSet<u64> = BTreeSet::new();
    for b in &sets {
        for x in b {
            if !union.insert(*x) {
                return Err(Error::VerificationFailed(format!(
                    "gap sets are not disjoint at {x}"
                )));
            }
        }
    }
    assert_eq!(union.len() as u64, cardinality);
    Ok(GapSet {
        n,
        chain: chain.to_vec(),
        sets,
        union,
        cardinality,
    })
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The exact rational `n/(p²(2 + 1/p)) − M = n/(p(2p+1)) − M`: a lower
/// bound on the number of sizes the gap sets over the chain
/// `p, p², …, p^M` certify outside 𝒜 for groups of order n.
pub fn gap_lower_bound(n: u64, p: u64, m: u32) -> Result<BigRational> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("exponent must be positive".into()));
    }
    let pm = (p as u128)
        .checked_pow(m)
        .ok_or_else(|| Error::InvalidArgument("p^M overflows".into()))?;
    if (n as u128) % pm != 0 {
        return Err(Error::InvalidArgument(format!(
            "{p}^{m} does not divide {n}"
        )));
    }
    let main = BigRational::new(BigInt::from(n), BigInt::from(p * (2 * p + 1)));
    Ok(main - BigRational::from(BigInt::from(m)))
}

/// One oracle check inside [`verify_gap_exclusions`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExclusionCheck {
    /// The divisor whose gap set contains `b`.
    pub d: u64,
    /// The certified-excluded size.
    pub b: u64,
    /// The size-b subset of the index-d subgroup that was tested.
    pub subset: Vec<u32>,
    /// True when the oracle confirmed it is minimal to no witness set.
    pub excluded: bool,
    /// True when the complete search ran; false when a subgroup counting
    /// obstruction settled the question without a search.
    pub exhaustive: bool,
    /// Size of the obstructing subgroup, when one settled the question.
    pub obstruction_size: Option<usize>,
}

/// Result of [`verify_gap_exclusions`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GapExclusionReport {
    pub n: u64,
    pub chain: Vec<u64>,
    pub checks: Vec<ExclusionCheck>,
    /// Divisors whose gap set was empty (nothing to certify).
    pub vacuous_divisors: Vec<u64>,
    pub all_excluded: bool,
}

/// Confirms each gap-set size by the oracle: for every `b ∈ Bᵢ` it builds
/// the size-b initial segment of the index-dᵢ subgroup of ℤ/n and checks
/// that no witness set makes it a minimal complement.  Each such subset
/// triggers the subgroup counting obstruction, so the confirmation never
/// needs the exponential search and works for any n.
pub fn verify_gap_exclusions(n: u64, chain: &[u64], caps: &Caps) -> Result<GapExclusionReport> {
    let gap = gap_sets(n, chain)?;
    let g = FiniteGroup::make_cyclic(n as usize);
    let mut checks = Vec::new();
    let mut vacuous = Vec::new();
    let mut all_excluded = true;
    for (d, b_set) in gap.chain.iter().zip(&gap.sets) {
        if b_set.is_empty() {
            vacuous.push(*d);
            continue;
        }
        for b in b_set {
            // The first b elements of the subgroup dℤ/nℤ.
            let elements: Vec<u32> = (0..*b).map(|r| (r * d) as u32).collect();
            let c = SubsetMask::from_elements(n as usize, &elements)?;
            let verdict = is_minimal_to_some(&g, &c, Side::Right, caps.min_to_some_cap)?;
            let (excluded, exhaustive, obstruction_size) = match verdict {
                MembershipVerdict::Minimal(_) => (false, true, None),
                MembershipVerdict::NotMinimalToAny {
                    search_exhausted,
                    obstruction,
                } => (true, search_exhausted, obstruction.map(|h| h.mask.len())),
            };
            all_excluded &= excluded;
            checks.push(ExclusionCheck {
                d: *d,
                b: *b,
                subset: elements,
                excluded,
                exhaustive,
                obstruction_size,
            });
        }
    }
    Ok(GapExclusionReport {
        n,
        chain: gap.chain,
        checks,
        vacuous_divisors: vacuous,
        all_excluded,
    })
}

// ---------------------------------------------------------------------------
// co-minimal size spectra

/// The exact set of size tuples realized by co-minimal k-tuples in one
/// group, with one witness tuple per size tuple.
///
/// JSON object keys must be strings, so the size-tuple map crosses the
/// wire as a sorted list of {sizes, witness} entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(from = "CoMinimalWire", into = "CoMinimalWire")]
pub struct CoMinimalSpectrum {
    pub group: GroupRef,
    pub k: usize,
    /// (|A₁|, …, |A_k|) ↦ a witness tuple of subsets, listed by elements.
    pub tuples: BTreeMap<Vec<usize>, Vec<Vec<u32>>>,
}

#[derive(Serialize, Deserialize)]
struct CoMinimalEntry {
    sizes: Vec<usize>,
    witness: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct CoMinimalWire {
    group: GroupRef,
    k: usize,
    tuples: Vec<CoMinimalEntry>,
}

impl From<CoMinimalSpectrum> for CoMinimalWire {
    fn from(s: CoMinimalSpectrum) -> Self {
        CoMinimalWire {
            group: s.group,
            k: s.k,
            tuples: s
                .tuples
                .into_iter()
                .map(|(sizes, witness)| CoMinimalEntry { sizes, witness })
                .collect(),
        }
    }
}

impl From<CoMinimalWire> for CoMinimalSpectrum {
    fn from(w: CoMinimalWire) -> Self {
        CoMinimalSpectrum {
            group: w.group,
            k: w.k,
            tuples: w
                .tuples
                .into_iter()
                .map(|e| (e.sizes, e.witness))
                .collect(),
        }
    }
}

impl CoMinimalSpectrum {
    pub fn contains_sizes(&self, sizes: &[usize]) -> bool {
        self.tuples.contains_key(&sizes.to_vec())
    }
}

/// Enumerates all co-minimal k-tuples up to translation and records the
/// realized size tuples.  Every co-minimal tuple can be translated slot
/// by slot (Aᵢ ↦ u⁻¹Aᵢv, with the neighbours compensating) until each
/// slot contains the identity, so scanning only identity-containing
/// subsets is exhaustive for size tuples.  Tuples whose size product is
/// below the group order cannot cover it and are pruned by counting.
pub fn compute_co_minimal_spectrum(
    g: &FiniteGroup,
    k: usize,
    caps: &Caps,
    cache_dir: Option<&Path>,
) -> Result<CoMinimalSpectrum> {
    let cap = match k {
        2 => caps.co_min_cap,
        3 => caps.co_min_cap3,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "co-minimal spectra are computed for k = 2 or 3, got {k}"
            )))
        }
    };
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "group order for the co-minimal size spectrum",
            value: n,
            cap,
        });
    }
    let key = cache_key(&[
        "cominimal",
        g.table_hash(),
        &k.to_string(),
        &cap.to_string(),
    ]);
    if let Some(spectrum) = cache_load::<CoMinimalSpectrum>(cache_dir, &key) {
        if spectrum.group.matches(g) && spectrum.k == k {
            return Ok(spectrum);
        }
    }

    let id_bit: u32 = 1 << g.identity();
    let all: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut tuples: BTreeMap<Vec<usize>, Vec<Vec<u32>>> = BTreeMap::new();
    let mut slots: Vec<u32> = Vec::with_capacity(k);
    scan_tuples(g, k, n, id_bit, all, &mut slots, &mut tuples)?;

    let spectrum = CoMinimalSpectrum {
        group: GroupRef::of(g),
        k,
        tuples,
    };
    cache_store(cache_dir, &key, &spectrum)?;
    Ok(spectrum)
}

fn scan_tuples(
    g: &FiniteGroup,
    k: usize,
    n: usize,
    id_bit: u32,
    all: u32,
    slots: &mut Vec<u32>,
    tuples: &mut BTreeMap<Vec<usize>, Vec<Vec<u32>>>,
) -> Result<()> {
    if slots.len() == k {
        let sizes: Vec<usize> = slots.iter().map(|m| m.count_ones() as usize).collect();
        // Counting prune: |A₁|⋯|A_k| ≥ n is necessary for coverage.
        if sizes.iter().product::<usize>() < n || tuples.contains_key(&sizes) {
            return Ok(());
        }
        let masks: Vec<SubsetMask> = slots
            .iter()
            .map(|bits| {
                let mut mask = SubsetMask::empty(n);
                for x in 0..n as u32 {
                    if bits & (1 << x) != 0 {
                        mask.insert(x);
                    }
                }
                mask
            })
            .collect();
        if is_co_minimal_tuple(g, &masks)? {
            let witness = masks.iter().map(|m| m.elements()).collect();
            tuples.insert(sizes, witness);
        }
        return Ok(());
    }
    let mut bits = id_bit;
    loop {
        slots.push(bits);
        scan_tuples(g, k, n, id_bit, all, slots, tuples)?;
        slots.pop();
        // Next identity-containing subset: step the non-identity bits.
        let rest = (bits | id_bit) & !id_bit;
        let next = next_subset_with(rest, all & !id_bit);
        match next {
            Some(r) => bits = r | id_bit,
            None => break,
        }
    }
    Ok(())
}

/// Steps through the subsets of `universe` in increasing numeric order;
/// returns None after the full set.
fn next_subset_with(current: u32, universe: u32) -> Option<u32> {
    if current == universe {
        return None;
    }
    // Increment within the masked positions: standard subset stepping.
    Some(((current | !universe).wrapping_add(1)) & universe)
}

// ---------------------------------------------------------------------------
// the region Uₙ and avoidance

/// Exact membership test for the region
/// `Uₙ = {(x, y) ∈ [0,1]² | 2xy ≤ x + y/n and 2xy ≤ y + x/n}`,
/// which contains every normalized co-minimal size pair (a/n, b/n).
pub fn region_u_contains(n: u64, x: &BigRational, y: &BigRational) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let zero = BigRational::zero();
    let one = BigRational::one();
    if *x < zero || *x > one || *y < zero || *y > one {
        return Err(Error::InvalidArgument(format!(
            "({x}, {y}) lies outside the unit square"
        )));
    }
    let n_rat = BigRational::from(BigInt::from(n));
    let two = BigRational::from(BigInt::from(2));
    let lhs = &two * x * y;
    Ok(lhs <= x + y / &n_rat && lhs <= y + x / &n_rat)
}

/// Integer form of the same test at a grid point (i/n, j/n): multiply
/// both inequalities by n².
fn grid_point_in_u(n: u64, i: u64, j: u64) -> bool {
    let (n, i, j) = (n as u128, i as u128, j as u128);
    2 * i * j <= i * n + j && 2 * i * j <= j * n + i
}

/// One row of an avoidance report.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AvoidanceRow {
    pub n: u64,
    pub grid_points_checked: u64,
    pub violations: u64,
}

/// Result of [`verify_avoidance`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AvoidanceReport {
    pub epsilon: RatioRepr,
    /// Least N with 1/(2N) + 1/(2⌊√N⌋) < ε.
    pub least_n: u64,
    pub rows: Vec<AvoidanceRow>,
    pub total_violations: u64,
}

/// The least integer N satisfying `1/(2N) + 1/(2⌊√N⌋) < ε`.  The floor
/// on the square root makes the bound slightly conservative (the real
/// threshold may be one step lower), so every n ≥ N provably avoids the
/// corner region.
fn least_avoidance_threshold(epsilon: &BigRational) -> u64 {
    let mut n: u64 = 1;
    loop {
        let s = n.isqrt();
        // 1/(2n) + 1/(2s) < ε  ⟺  den·(s + n) < 2·num·n·s
        let lhs = epsilon.denom() * BigInt::from(s + n);
        let rhs = BigInt::from(2) * epsilon.numer() * BigInt::from(n) * BigInt::from(s);
        if lhs < rhs {
            return n;
        }
        n += 1;
    }
}

/// Verifies that the corner region
/// `R_ε = ([ε,1] × [1/2+ε,1]) ∪ ([1/2+ε,1] × [ε,1])`
/// contains no point of Uₙ for any n in the range at or past the proof
/// threshold.  Every grid point (i/n, j/n) of R_ε is tested exactly.
pub fn verify_avoidance(
    epsilon: &BigRational,
    n_lo: u64,
    n_hi: u64,
) -> Result<AvoidanceReport> {
    let zero = BigRational::zero();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    if *epsilon <= zero || *epsilon >= half {
        return Err(Error::InvalidArgument(
            "epsilon must lie strictly between 0 and 1/2".into(),
        ));
    }
    let least_n = least_avoidance_threshold(epsilon);
    let mut rows = Vec::new();
    let mut total_violations = 0;
    for n in n_lo.max(least_n)..=n_hi {
        // Smallest i with i/n ≥ ε, and with i/n ≥ 1/2 + ε, exactly.
        let i_eps = ceil_big(&(epsilon * BigRational::from(BigInt::from(n))));
        let i_half = ceil_big(
            &((&half + epsilon) * BigRational::from(BigInt::from(n))),
        );
        let mut checked = 0u64;
        let mut violations = 0u64;
        let mut visit = |i: u64, j: u64| {
            checked += 1;
            if grid_point_in_u(n, i, j) {
                violations += 1;
            }
        };
        // Upper strip: x ≥ ε, y ≥ 1/2 + ε.
        for i in i_eps..=n {
            for j in i_half..=n {
                visit(i, j);
            }
        }
        // Right strip minus the overlap: x ≥ 1/2 + ε, ε ≤ y < 1/2 + ε.
        for i in i_half..=n {
            for j in i_eps..i_half.min(n + 1) {
                visit(i, j);
            }
        }
        total_violations += violations;
        rows.push(AvoidanceRow {
            n,
            grid_points_checked: checked,
            violations,
        });
    }
    Ok(AvoidanceReport {
        epsilon: RatioRepr::of(epsilon),
        least_n,
        rows,
        total_violations,
    })
}

fn ceil_big(r: &BigRational) -> u64 {
    let c = r.ceil().to_integer();
    c.max(BigInt::zero()).to_u64().unwrap_or(u64::MAX)
}

fn floor_big(r: &BigRational) -> u64 {
    let f = r.floor().to_integer();
    f.max(BigInt::zero()).to_u64().unwrap_or(u64::MAX)
}

// ---------------------------------------------------------------------------
// density of the cyclic spectrum

/// One row of a density experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DensityRow {
    pub n: u64,
    /// |[a, b] ∩ (1/n)·𝒮ₙ^cyc|, counted from the closed form.
    pub count: u64,
    /// |𝒮ₙ^cyc| = ⌊2n/3⌋ + 1.
    pub total: u64,
    pub ratio: RatioRepr,
    pub limit: RatioRepr,
}

/// Result of [`density_experiment`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DensityReport {
    pub a: RatioRepr,
    pub b: RatioRepr,
    pub rows: Vec<DensityRow>,
}

/// Measures how much of the normalized cyclic spectrum falls in `[a, b]`.
/// The cyclic spectrum has the closed form {1, …, ⌊2n/3⌋} ∪ {n}, so the
/// count is an interval length — no search is involved — and the ratio
/// converges to `3(b−a)/2`.
pub fn density_experiment(
    n_list: &[u64],
    a: &BigRational,
    b: &BigRational,
) -> Result<DensityReport> {
    let zero = BigRational::zero();
    let two_thirds = BigRational::new(BigInt::from(2), BigInt::from(3));
    if *a < zero || a >= b || *b > two_thirds {
        return Err(Error::InvalidArgument(
            "need 0 ≤ a < b ≤ 2/3".into(),
        ));
    }
    let limit = BigRational::new(BigInt::from(3), BigInt::from(2)) * (b - a);
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let n_rat = BigRational::from(BigInt::from(n));
        // k/n ∈ [a, b] ⟺ ⌈an⌉ ≤ k ≤ ⌊bn⌋; clip to the spectrum
        // {1, …, ⌊2n/3⌋} (the extra element n is out of reach: b ≤ 2/3).
        let lo = ceil_big(&(a * &n_rat)).max(1);
        let hi = floor_big(&(b * &n_rat)).min(2 * n / 3);
        let count = if lo > hi { 0 } else { hi - lo + 1 };
        let total = 2 * n / 3 + 1;
        let ratio = BigRational::new(BigInt::from(count), BigInt::from(total));
        rows.push(DensityRow {
            n,
            count,
            total,
            ratio: RatioRepr::of(&ratio),
            limit: RatioRepr::of(&limit),
        });
    }
    Ok(DensityReport {
        a: RatioRepr::of(a),
        b: RatioRepr::of(b),
        rows,
    })
}

// ---------------------------------------------------------------------------
// the scaling inclusion m·𝒮ₙ* ⊆ 𝒮ₘₙ*

/// One constructive witness inside a scaling report: the element m·k is
/// realized by the product of a full order-m group with a size-k minimal
/// complement of an order-n group.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScalingWitness {
    pub k: usize,
    pub mk: usize,
    /// Label of the product group in which the witness lives.
    pub product_group: String,
    /// The size-mk minimal complement, by elements of the product.
    pub subset: Vec<u32>,
    pub verified: bool,
}

/// Result of [`verify_scaling_inclusion`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScalingReport {
    pub m: usize,
    pub n: usize,
    pub tag: FamilyTag,
    pub s_n: BTreeSet<usize>,
    pub s_mn: BTreeSet<usize>,
    pub holds: bool,
    pub witnesses: Vec<ScalingWitness>,
}

/// Checks `m·𝒮ₙ* ⊆ 𝒮ₘₙ*` for coprime m, n over a factor-closed family
/// (cyclic, abelian, or nilpotent — each group of order mn then splits as
/// an order-m times an order-n group).  Besides intersecting the computed
/// spectra, each element m·k is certified constructively: a size-k
/// minimal-complement witness (W, C) in an order-n member is trimmed to a
/// co-minimal pair (coverage-redundant elements leave W; C stays intact
/// because shrinking W preserves each element's uniqueness witness), and
/// the product with ({e}, G₁) realizes G₁ × C as a verified minimal
/// complement of size m·k.
pub fn verify_scaling_inclusion(
    m: usize,
    n: usize,
    tag: FamilyTag,
    caps: &Caps,
    cache_dir: Option<&Path>,
) -> Result<ScalingReport> {
    if !matches!(
        tag,
        FamilyTag::Cyclic | FamilyTag::Abelian | FamilyTag::Nilpotent
    ) {
        return Err(Error::InvalidArgument(format!(
            "the scaling inclusion needs a factor-closed family, got {tag}"
        )));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("orders must be positive".into()));
    }
    if num::integer::gcd(m, n) != 1 {
        return Err(Error::InvalidArgument(format!(
            "{m} and {n} are not coprime"
        )));
    }

    let family_n = compute_family_spectrum(n, tag, caps, cache_dir)?;
    let family_mn = compute_family_spectrum(m * n, tag, caps, cache_dir)?;
    let holds = family_n
        .s_set
        .iter()
        .all(|k| family_mn.s_set.contains(&(m * k)));

    // Constructive witness per element, in one concrete product group.
    let (groups_m, _) = family_groups(m, tag)?;
    let (groups_n, _) = family_groups(n, tag)?;
    let g1 = &groups_m[0];
    let g2 = &groups_n[0];
    let spectrum2 = compute_spectrum(g2, Side::Right, caps, cache_dir)?;
    let e1 = SubsetMask::singleton(g1.order(), g1.identity());
    let full1 = SubsetMask::full(g1.order());
    let mut witnesses = Vec::new();
    for k in &family_n.s_set {
        let cert = spectrum2
            .s_witnesses
            .get(k)
            .expect("family spectrum sizes come from member spectra");
        let w2 = cert.w_mask()?;
        let c2 = cert.c_mask()?;
        let (w2_trimmed, c2_trimmed) = trim_to_co_minimal_pair(g2, &w2, &c2)?;
        assert_eq!(
            c2_trimmed, c2,
            "trimming the witness side never disturbs the complement"
        );
        let (product, _, product_c) =
            cartesian_co_minimal(g1, g2, (&e1, &full1), (&w2_trimmed, &c2_trimmed))?;
        let verified = product_c.len() == m * k;
        witnesses.push(ScalingWitness {
            k: *k,
            mk: m * k,
            product_group: product.label().to_string(),
            subset: product_c.elements(),
            verified,
        });
    }
    Ok(ScalingReport {
        m,
        n,
        tag,
        s_n: family_n.s_set,
        s_mn: family_mn.s_set,
        holds,
        witnesses,
    })
}

// ---------------------------------------------------------------------------
// certified exclusion counts vs. the rational lower bound

/// One row comparing certified exclusions against the closed-form bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExclusionRow {
    pub n: u64,
    /// Largest exponent M with p^M | n.
    pub exponent: u32,
    /// The divisor chain p, p², …, p^M.
    pub chain: Vec<u64>,
    /// Oracle-certified exclusions from the gap sets over the chain.
    pub certified_count: u64,
    /// |{1, …, ⌊2n/3⌋} ∖ 𝒜(ℤ/n)| when n is small enough to compute 𝒜.
    pub actual_count: Option<u64>,
    /// The bound n/(p²(2 + 1/p)) − M.
    pub bound: RatioRepr,
    /// certified_count ≥ bound (always true; the bound may be negative).
    pub satisfied: bool,
}

/// For each n (divisible by p), certifies gap-set exclusions over the
/// chain p, p², …, p^M with M maximal, counts them, and compares against
/// the exact rational bound.  For n within the exhaustive cap the true
/// exclusion count of ℤ/n is reported alongside.
pub fn exclusion_count_lower_bound(
    p: u64,
    n_list: &[u64],
    caps: &Caps,
    cache_dir: Option<&Path>,
) -> Result<Vec<ExclusionRow>> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if n == 0 || n % p != 0 {
            return Err(Error::InvalidArgument(format!(
                "{p} must divide every n, got {n}"
            )));
        }
        let mut exponent = 0u32;
        let mut power = 1u64;
        while n % (power * p) == 0 {
            power *= p;
            exponent += 1;
        }
        let chain: Vec<u64> = (1..=exponent)
            .scan(1u64, |acc, _| {
                *acc *= p;
                Some(*acc)
            })
            .collect();
        let report = verify_gap_exclusions(n, &chain, caps)?;
        assert!(
            report.all_excluded,
            "gap-set sizes are excluded by counting for every n"
        );
        let certified_count = report.checks.len() as u64;
        let bound = gap_lower_bound(n, p, exponent)?;
        let satisfied = BigRational::from(BigInt::from(certified_count)) >= bound;
        let actual_count = if (n as usize) <= caps.a_cap {
            let g = FiniteGroup::make_cyclic(n as usize);
            let spectrum = compute_spectrum(&g, Side::Right, caps, cache_dir)?;
            let excluded = (1..=(2 * n / 3))
                .filter(|k| !spectrum.a_set.contains(&(*k as usize)))
                .count() as u64;
            // Certified exclusions are genuine exclusions.
            for check in &report.checks {
                assert!(!spectrum.a_set.contains(&(check.b as usize)));
            }
            Some(excluded)
        } else {
            None
        };
        rows.push(ExclusionRow {
            n,
            exponent,
            chain,
            certified_count,
            actual_count,
            bound: RatioRepr::of(&bound),
            satisfied,
        });
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// CSV rendering

fn join_elements(elements: &[u32]) -> String {
    elements
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

/// One row per size k = 1..n: membership in 𝒮 and 𝒜, with the witness
/// for sizes in 𝒮 and the counterexample for sizes excluded from 𝒜.
pub fn spectrum_csv(spectrum: &Spectrum) -> String {
    let mut out = String::from("group,n,side,k,inS,inA,witness/counterexample\n");
    let n = spectrum.order();
    for k in 1..=n {
        let in_s = spectrum.s_witnesses.contains_key(&k);
        let in_a = spectrum.a_set.contains(&k);
        let detail = if in_s {
            join_elements(&spectrum.s_witnesses[&k].c)
        } else if let Some(ce) = spectrum.a_counterexamples.get(&k) {
            join_elements(ce)
        } else {
            String::new()
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            spectrum.group.label,
            n,
            side_name(spectrum.side),
            k,
            in_s,
            in_a,
            detail
        ));
    }
    out
}

/// Two rows per family spectrum: the 𝒮 set and the 𝒜 set.
pub fn family_csv(rows: &[FamilySpectrum]) -> String {
    let mut out = String::from("n,tag,set,members,catalogComplete\n");
    for family in rows {
        for (name, set) in [("S", &family.s_set), ("A", &family.a_set)] {
            let members = set
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(";");
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                family.n, family.tag, name, members, family.catalog_complete
            ));
        }
    }
    out
}

pub fn density_csv(report: &DensityReport) -> String {
    let mut out = String::from("n,a,b,ratio,limit\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.n, report.a.exact, report.b.exact, row.ratio.value, row.limit.value
        ));
    }
    out
}

pub fn avoidance_csv(report: &AvoidanceReport) -> String {
    let mut out = String::from("epsilon,n,gridPointsChecked,violations\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            report.epsilon.exact, row.n, row.grid_points_checked, row.violations
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;

    const ALL_TAGS: [FamilyTag; 6] = FamilyTag::ALL_TAGS;

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn default_caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn cyclic_spectra_match_the_closed_form() {
        let caps = default_caps();
        let z6 = FiniteGroup::make_cyclic(6);
        let spectrum = compute_spectrum(&z6, Side::Right, &caps, None).unwrap();
        assert!(spectrum.complete);
        assert_eq!(
            spectrum.s_set(),
            [1, 2, 3, 4, 6].into_iter().collect::<BTreeSet<usize>>()
        );
        for cert in spectrum.s_witnesses.values() {
            assert!(cert.verify(&z6).is_ok());
        }

        let z9 = FiniteGroup::make_cyclic(9);
        let spectrum = compute_spectrum(&z9, Side::Right, &caps, None).unwrap();
        assert_eq!(
            spectrum.s_set(),
            [1, 2, 3, 4, 5, 6, 9].into_iter().collect::<BTreeSet<usize>>()
        );
    }

    #[test]
    fn trivial_group_spectrum_is_one() {
        let caps = default_caps();
        let g = FiniteGroup::trivial();
        let spectrum = compute_spectrum(&g, Side::Right, &caps, None).unwrap();
        assert_eq!(spectrum.s_set(), BTreeSet::from([1]));
        assert_eq!(spectrum.a_set, BTreeSet::from([1]));
        assert!(spectrum.complete);
    }

    #[test]
    fn over_cap_orders_yield_flagged_partial_spectra() {
        let caps = default_caps();
        let g = FiniteGroup::make_cyclic(20);
        let spectrum = compute_spectrum(&g, Side::Right, &caps, None).unwrap();
        assert!(!spectrum.complete);
        assert_eq!(spectrum.s_set(), BTreeSet::from([1, 20]));
        assert_eq!(spectrum.a_set, BTreeSet::from([1, 20]));
    }

    #[test]
    fn spectra_cache_round_trips_and_is_reused() {
        let caps = default_caps();
        let dir = tempfile::tempdir().unwrap();
        let g = FiniteGroup::make_cyclic(8);
        let first = compute_spectrum(&g, Side::Right, &caps, Some(dir.path())).unwrap();
        // One cache entry appeared.
        let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(entries.len(), 1);
        let second = compute_spectrum(&g, Side::Right, &caps, Some(dir.path())).unwrap();
        assert_eq!(first.s_set(), second.s_set());
        assert_eq!(first.a_set, second.a_set);
        // A corrupt entry is ignored and rewritten, not trusted.
        let path = entries[0].as_ref().unwrap().path();
        std::fs::write(&path, "not json").unwrap();
        let third = compute_spectrum(&g, Side::Right, &caps, Some(dir.path())).unwrap();
        assert_eq!(first.s_set(), third.s_set());
    }

    #[test]
    fn concurrent_cache_writes_never_corrupt_entries() {
        use rayon::prelude::*;
        let caps = default_caps();
        let dir = tempfile::tempdir().unwrap();
        let results: Vec<BTreeSet<usize>> = (0..8u32)
            .into_par_iter()
            .map(|_| {
                let g = FiniteGroup::make_cyclic(9);
                compute_spectrum(&g, Side::Right, &caps, Some(dir.path()))
                    .unwrap()
                    .s_set()
            })
            .collect();
        for r in &results {
            assert_eq!(r, &results[0]);
        }
    }

    #[test]
    fn family_spectrum_of_a_prime_is_the_cyclic_spectrum() {
        let caps = default_caps();
        let cyclic = compute_family_spectrum(7, FamilyTag::Cyclic, &caps, None).unwrap();
        for tag in ALL_TAGS {
            let family = compute_family_spectrum(7, tag, &caps, None).unwrap();
            assert_eq!(family.s_set, cyclic.s_set, "tag {tag}");
            assert_eq!(family.a_set, cyclic.a_set, "tag {tag}");
            assert_eq!(family.members.len(), 1);
            assert!(family.catalog_complete);
        }
    }

    #[test]
    fn family_spectrum_intersects_all_groups_of_the_order() {
        let caps = default_caps();
        // Order 6: the cyclic group and the symmetric group.
        let family = compute_family_spectrum(6, FamilyTag::All, &caps, None).unwrap();
        assert_eq!(family.members.len(), 2);
        assert!(family.catalog_complete && family.spectra_complete);
        let z6 = compute_spectrum(&FiniteGroup::make_cyclic(6), Side::Right, &caps, None).unwrap();
        let s3 = compute_spectrum(&FiniteGroup::make_symmetric(3).unwrap(), Side::Right, &caps, None)
            .unwrap();
        let expected: BTreeSet<usize> =
            z6.s_set().intersection(&s3.s_set()).copied().collect();
        assert_eq!(family.s_set, expected);

        // Order 4, abelian: ℤ/4 and ℤ/2 × ℤ/2.
        let family = compute_family_spectrum(4, FamilyTag::Abelian, &caps, None).unwrap();
        assert_eq!(family.members.len(), 2);
        let z4 = compute_spectrum(&FiniteGroup::make_cyclic(4), Side::Right, &caps, None).unwrap();
        let v4 = compute_spectrum(
            &FiniteGroup::make_abelian(&[2, 2]).unwrap(),
            Side::Right,
            &caps,
            None,
        )
        .unwrap();
        let expected: BTreeSet<usize> =
            z4.s_set().intersection(&v4.s_set()).copied().collect();
        assert_eq!(family.s_set, expected);
    }

    #[test]
    fn family_chain_inclusions_hold() {
        let caps = default_caps();
        let dir = tempfile::tempdir().unwrap();
        for n in [6usize, 8, 12] {
            let families: Vec<FamilySpectrum> = ALL_TAGS
                .iter()
                .map(|tag| compute_family_spectrum(n, *tag, &caps, Some(dir.path())).unwrap())
                .collect();
            // Tags are ordered from the narrowest family (cyclic) to the
            // widest (all groups); intersections only shrink.
            for pair in families.windows(2) {
                assert!(
                    pair[1].s_set.is_subset(&pair[0].s_set),
                    "n = {n}: 𝒮 chain between {} and {}",
                    pair[0].tag,
                    pair[1].tag
                );
                assert!(
                    pair[1].a_set.is_subset(&pair[0].a_set),
                    "n = {n}: 𝒜 chain between {} and {}",
                    pair[0].tag,
                    pair[1].tag
                );
            }
            for family in &families {
                assert!(family.a_set.is_subset(&family.s_set));
            }
        }
    }

    #[test]
    fn spectra_avoid_the_upper_third() {
        // Excluding n itself, no size exceeds 2n/3.
        let caps = default_caps();
        for g in [
            FiniteGroup::make_cyclic(6),
            FiniteGroup::make_cyclic(9),
            FiniteGroup::make_dihedral(4).unwrap(),
            FiniteGroup::make_symmetric(3).unwrap(),
        ] {
            let n = g.order();
            let spectrum = compute_spectrum(&g, Side::Right, &caps, None).unwrap();
            for k in spectrum.s_set() {
                assert!(k == n || 3 * k <= 2 * n, "{}: size {k}", g.label());
            }
        }
    }

    #[test]
    fn gap_sets_match_hand_evaluation() {
        let gap = gap_sets(12, &[2]).unwrap();
        assert_eq!(gap.sets, vec![BTreeSet::from([5])]);
        assert_eq!(gap.cardinality, 1);

        let gap = gap_sets(36, &[2, 4]).unwrap();
        assert_eq!(gap.sets[0], BTreeSet::from([15, 16, 17]));
        assert!(gap.sets[1].is_empty());
        assert_eq!(gap.union, BTreeSet::from([15, 16, 17]));
        assert_eq!(gap.cardinality, 3);

        // The full-order divisor certifies nothing.
        let gap = gap_sets(30, &[30]).unwrap();
        assert_eq!(gap.cardinality, 0);

        assert!(gap_sets(12, &[5]).is_err());
        assert!(gap_sets(12, &[2, 3]).is_err());
        assert!(gap_sets(12, &[2, 2]).is_err());
        assert!(gap_sets(12, &[]).is_err());
    }

    #[test]
    fn gap_bound_evaluates_exactly() {
        assert_eq!(gap_lower_bound(64, 2, 6).unwrap(), rat(2, 5));
        assert!(gap_lower_bound(4, 2, 2).unwrap() < BigRational::zero());
        assert_eq!(gap_lower_bound(1024, 2, 10).unwrap(), rat(462, 5));
        assert!(gap_lower_bound(12, 2, 3).is_err());
        assert!(gap_lower_bound(12, 4, 1).is_err());
    }

    #[test]
    fn gap_exclusions_are_oracle_confirmed() {
        let caps = default_caps();
        let report = verify_gap_exclusions(12, &[2], &caps).unwrap();
        assert!(report.all_excluded);
        assert_eq!(report.checks.len(), 1);
        assert_eq!(report.checks[0].b, 5);
        assert_eq!(report.checks[0].subset, vec![0, 2, 4, 6, 8]);
        // Counting settles it without the exponential search.
        assert!(!report.checks[0].exhaustive);
        assert_eq!(report.checks[0].obstruction_size, Some(6));

        let report = verify_gap_exclusions(16, &[2], &caps).unwrap();
        assert!(report.all_excluded);
        assert_eq!(report.checks.len(), 1);
        assert_eq!(report.checks[0].b, 7);

        let report = verify_gap_exclusions(18, &[3], &caps).unwrap();
        assert!(report.checks.is_empty());
        assert_eq!(report.vacuous_divisors, vec![3]);
    }

    #[test]
    fn gap_exclusions_work_past_the_search_cap() {
        // Counting obstructions settle every gap size, so even orders far
        // beyond the exhaustive-search cap verify quickly.
        let caps = default_caps();
        let report = verify_gap_exclusions(64, &[2, 4], &caps).unwrap();
        assert!(report.all_excluded);
        assert_eq!(report.checks.len(), 7);
        assert!(report.checks.iter().all(|c| !c.exhaustive));
    }

    #[test]
    fn co_minimal_spectrum_has_the_pinned_pairs() {
        let caps = default_caps();
        let z6 = FiniteGroup::make_cyclic(6);
        let spectrum = compute_co_minimal_spectrum(&z6, 2, &caps, None).unwrap();
        // (n, 1) via (G, {e}) and its mirror.
        assert!(spectrum.contains_sizes(&[6, 1]));
        assert!(spectrum.contains_sizes(&[1, 6]));
        assert!(spectrum.contains_sizes(&[2, 3]));
        for (sizes, witness) in &spectrum.tuples {
            assert_eq!(sizes.len(), 2);
            let masks: Vec<SubsetMask> = witness
                .iter()
                .map(|els| SubsetMask::from_elements(6, els).unwrap())
                .collect();
            assert!(is_co_minimal_tuple(&z6, &masks).unwrap());
            assert_eq!(
                sizes,
                &masks.iter().map(|m| m.len()).collect::<Vec<usize>>()
            );
        }

        let z4 = FiniteGroup::make_cyclic(4);
        let spectrum = compute_co_minimal_spectrum(&z4, 2, &caps, None).unwrap();
        assert!(spectrum.contains_sizes(&[2, 2]));

        assert!(matches!(
            compute_co_minimal_spectrum(&FiniteGroup::make_cyclic(11), 2, &caps, None),
            Err(Error::CapExceeded { .. })
        ));
        assert!(compute_co_minimal_spectrum(&z4, 4, &caps, None).is_err());
    }

    #[test]
    fn co_minimal_triples_cover_the_small_cases() {
        let caps = default_caps();
        let z4 = FiniteGroup::make_cyclic(4);
        let spectrum = compute_co_minimal_spectrum(&z4, 3, &caps, None).unwrap();
        assert!(spectrum.contains_sizes(&[4, 1, 1]));
        assert!(spectrum.contains_sizes(&[1, 4, 1]));
        assert!(spectrum.contains_sizes(&[1, 1, 4]));
        assert!(spectrum.contains_sizes(&[2, 2, 1]));
        for (sizes, witness) in &spectrum.tuples {
            let masks: Vec<SubsetMask> = witness
                .iter()
                .map(|els| SubsetMask::from_elements(4, els).unwrap())
                .collect();
            assert!(is_co_minimal_tuple(&z4, &masks).unwrap());
            assert_eq!(
                sizes,
                &masks.iter().map(|m| m.len()).collect::<Vec<usize>>()
            );
        }
    }

    #[test]
    fn co_minimal_spectra_round_trip_through_json_and_the_cache() {
        let caps = default_caps();
        let z6 = FiniteGroup::make_cyclic(6);
        let spectrum = compute_co_minimal_spectrum(&z6, 2, &caps, None).unwrap();

        // Size tuples are list entries on the wire, not object keys.
        let json = serde_json::to_string(&spectrum).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(value["tuples"].is_array());
        let back: CoMinimalSpectrum = serde_json::from_str(&json).unwrap();
        assert_eq!(back.group, spectrum.group);
        assert_eq!(back.k, spectrum.k);
        assert_eq!(back.tuples, spectrum.tuples);

        let dir = tempfile::tempdir().unwrap();
        let first = compute_co_minimal_spectrum(&z6, 2, &caps, Some(dir.path())).unwrap();
        let cached = compute_co_minimal_spectrum(&z6, 2, &caps, Some(dir.path())).unwrap();
        assert_eq!(cached.tuples, first.tuples);
        assert_eq!(cached.tuples, spectrum.tuples);
        assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    }

    #[test]
    fn region_membership_is_exact() {
        for n in [1, 2, 6, 100] {
            assert!(region_u_contains(n, &rat(0, 1), &rat(0, 1)).unwrap());
        }
        for n in [2, 3, 10] {
            assert!(!region_u_contains(n, &rat(1, 1), &rat(1, 1)).unwrap());
        }
        // n = 1 degenerates: 2xy ≤ x + y always on the unit square.
        assert!(region_u_contains(1, &rat(1, 1), &rat(1, 1)).unwrap());
        assert!(region_u_contains(6, &rat(1, 6), &rat(1, 1)).unwrap());
        assert!(region_u_contains(2, &rat(3, 2), &rat(0, 1)).is_err());
    }

    #[test]
    fn co_minimal_size_pairs_lie_in_the_region() {
        let caps = default_caps();
        for g in [FiniteGroup::make_cyclic(6), FiniteGroup::make_cyclic(4)] {
            let n = g.order() as u64;
            let spectrum = compute_co_minimal_spectrum(&g, 2, &caps, None).unwrap();
            for sizes in spectrum.tuples.keys() {
                let x = rat(sizes[0] as i64, n as i64);
                let y = rat(sizes[1] as i64, n as i64);
                assert!(
                    region_u_contains(n, &x, &y).unwrap(),
                    "({}, {}) outside U_{n}",
                    sizes[0],
                    sizes[1]
                );
                // The integer specialization agrees with the rational one.
                assert!(grid_point_in_u(n, sizes[0] as u64, sizes[1] as u64));
            }
        }
    }

    #[test]
    fn avoidance_threshold_and_grid_checks() {
        // ε = 1/10: 1/72 + 1/12 < 1/10 at N = 36 and the bound fails at 35.
        assert_eq!(least_avoidance_threshold(&rat(1, 10)), 36);
        assert_eq!(least_avoidance_threshold(&rat(1, 4)), 9);

        let report = verify_avoidance(&rat(1, 10), 1, 60).unwrap();
        assert_eq!(report.least_n, 36);
        assert_eq!(report.rows.first().unwrap().n, 36);
        assert_eq!(report.total_violations, 0);
        for row in &report.rows {
            assert!(row.grid_points_checked > 0);
        }

        let report = verify_avoidance(&rat(1, 4), 9, 20).unwrap();
        assert_eq!(report.total_violations, 0);

        assert!(verify_avoidance(&rat(1, 2), 1, 10).is_err());
        assert!(verify_avoidance(&rat(0, 1), 1, 10).is_err());
    }

    #[test]
    fn density_rows_match_the_closed_form() {
        let report = density_experiment(&[300], &rat(0, 1), &rat(1, 3)).unwrap();
        assert_eq!(report.rows[0].count, 100);
        assert_eq!(report.rows[0].total, 201);
        assert_eq!(report.rows[0].limit.exact, "1/2");

        // The full interval captures everything except the point at 1.
        let report = density_experiment(&[30, 300], &rat(0, 1), &rat(2, 3)).unwrap();
        for row in &report.rows {
            assert_eq!(row.count, 2 * row.n / 3);
            assert_eq!(row.total, 2 * row.n / 3 + 1);
        }

        let report = density_experiment(&[3000], &rat(1, 5), &rat(1, 2)).unwrap();
        let row = &report.rows[0];
        let ratio = rat(row.count as i64, row.total as i64);
        let diff = (ratio - rat(45, 100)).abs();
        assert!(diff < rat(1, 100));

        assert!(density_experiment(&[10], &rat(1, 2), &rat(1, 3)).is_err());
        assert!(density_experiment(&[10], &rat(0, 1), &rat(3, 4)).is_err());
    }

    #[test]
    fn density_converges_at_the_stated_rate() {
        let a = rat(1, 10);
        let b = rat(3, 5);
        let width = &b - &a;
        let limit = rat(3, 2) * (&b - &a);
        let report = density_experiment(&[100, 150, 300, 999, 2000], &a, &b).unwrap();
        for row in &report.rows {
            let ratio = rat(row.count as i64, row.total as i64);
            let diff = (ratio - &limit).abs();
            let allowance = rat(5, row.n as i64)
                / if width < BigRational::one() {
                    width.clone()
                } else {
                    BigRational::one()
                };
            assert!(diff <= allowance, "n = {}", row.n);
        }
    }

    #[test]
    fn scaling_inclusion_with_witnesses() {
        let caps = default_caps();
        let dir = tempfile::tempdir().unwrap();
        let report =
            verify_scaling_inclusion(2, 3, FamilyTag::Cyclic, &caps, Some(dir.path())).unwrap();
        assert!(report.holds);
        assert_eq!(report.s_n, BTreeSet::from([1, 2, 3]));
        assert_eq!(report.s_mn, BTreeSet::from([1, 2, 3, 4, 6]));
        assert_eq!(report.witnesses.len(), 3);
        for witness in &report.witnesses {
            assert!(witness.verified);
            assert_eq!(witness.subset.len(), witness.mk);
        }

        let report =
            verify_scaling_inclusion(1, 6, FamilyTag::Cyclic, &caps, Some(dir.path())).unwrap();
        assert!(report.holds);

        let report =
            verify_scaling_inclusion(3, 4, FamilyTag::Cyclic, &caps, Some(dir.path())).unwrap();
        assert!(report.holds);
        assert_eq!(report.s_n, BTreeSet::from([1, 2, 4]));
        assert!(report.s_mn.contains(&3) && report.s_mn.contains(&6) && report.s_mn.contains(&12));

        assert!(verify_scaling_inclusion(2, 4, FamilyTag::Cyclic, &caps, None).is_err());
        assert!(verify_scaling_inclusion(2, 3, FamilyTag::All, &caps, None).is_err());
    }

    #[test]
    fn exclusion_rows_compare_counts_to_the_bound() {
        let caps = default_caps();
        let rows = exclusion_count_lower_bound(2, &[64, 4, 12], &caps, None).unwrap();

        assert_eq!(rows[0].n, 64);
        assert_eq!(rows[0].exponent, 6);
        assert_eq!(rows[0].chain, vec![2, 4, 8, 16, 32, 64]);
        assert_eq!(rows[0].certified_count, 7);
        assert_eq!(rows[0].bound.exact, "2/5");
        assert!(rows[0].satisfied);

        assert_eq!(rows[1].n, 4);
        assert_eq!(rows[1].certified_count, 0);
        assert!(rows[1].bound.value < 0.0);
        assert!(rows[1].satisfied);

        assert_eq!(rows[2].n, 12);
        assert_eq!(rows[2].exponent, 2);
        assert_eq!(rows[2].certified_count, 1);
        assert_eq!(rows[2].bound.exact, "-4/5");
        assert!(rows[2].satisfied);
        // Small enough to compute the true count; it dominates.
        let actual = rows[2].actual_count.unwrap();
        assert!(actual >= rows[2].certified_count);

        assert!(exclusion_count_lower_bound(2, &[9], &caps, None).is_err());
        assert!(exclusion_count_lower_bound(6, &[12], &caps, None).is_err());
    }

    #[test]
    fn csv_renderers_match_the_schemas() {
        let caps = default_caps();
        let g = FiniteGroup::make_cyclic(6);
        let spectrum = compute_spectrum(&g, Side::Right, &caps, None).unwrap();
        let csv = spectrum_csv(&spectrum);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "group,n,side,k,inS,inA,witness/counterexample"
        );
        assert_eq!(csv.lines().count(), 7);
        for line in lines {
            assert_eq!(line.split(',').count(), 7);
        }

        let family = compute_family_spectrum(6, FamilyTag::All, &caps, None).unwrap();
        let csv = family_csv(&[family]);
        assert!(csv.starts_with("n,tag,set,members,catalogComplete\n"));
        assert_eq!(csv.lines().count(), 3);

        let report = density_experiment(&[300], &rat(0, 1), &rat(1, 3)).unwrap();
        assert!(density_csv(&report).starts_with("n,a,b,ratio,limit\n"));

        let report = verify_avoidance(&rat(1, 10), 36, 38).unwrap();
        assert!(avoidance_csv(&report).starts_with("epsilon,n,gridPointsChecked,violations\n"));
    }
}
