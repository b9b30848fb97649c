//! Minimal complements on the integer line.
//!
//! Subsets of ℤ that arise as complement witnesses are eventually periodic:
//! a finite union of arithmetic progressions corrected by finitely many
//! exceptional points.  [`EventuallyPeriodicSet`] closes that class under
//! union, complement, translation, dilation, and sumset-with-finite, all
//! exactly, so membership questions about infinite sets reduce to finite
//! checks.
//!
//! On top of the set algebra sit the line analogues of the group-side
//! routines:
//!
//! * [`verify_z_certificate`] decides whether an eventually periodic `W`
//!   and a finite `C` satisfy `W + C = ℤ` with every element of `C`
//!   carrying a uniqueness witness, returning the witnesses or the first
//!   failing element.  The witness search is complete: outside finitely
//!   many exceptional points the predicate is periodic, so scanning the
//!   exceptions plus one clean period decides existence.
//! * [`construct_z_complement`] builds, for any finite nonempty `C`, an
//!   eventually periodic `W` to which `C` is a minimal complement, by
//!   spacing one anchor per element of `C` far enough apart that their
//!   difference neighbourhoods cannot interact.
//! * [`lift_z`] transports minimal complements through the subgroup
//!   `nℤ`: finite minimal complements inside each of `k` chosen cosets
//!   are glued into one minimal complement for ℤ, with the anchor data
//!   found by the tuple search on ℤ/n.

use std::collections::{BTreeMap, BTreeSet};

use num::integer::gcd;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    column_is_clear, search_sk_tuple, sk_inequality_holds, tuple_sets, SKTuple,
    DEFAULT_SK_MAX_ITER,
};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A finite set of integers, kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct FiniteIntSet {
    elements: Vec<i64>,
}

impl FiniteIntSet {
    /// Builds a set from arbitrary values; order and multiplicity are
    /// forgotten.
    pub fn new<I: IntoIterator<Item = i64>>(values: I) -> Self {
        let mut elements: Vec<i64> = values.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        FiniteIntSet { elements }
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, z: i64) -> bool {
        self.elements.binary_search(&z).is_ok()
    }

    /// `max − min`, or 0 for empty and singleton sets.
    pub fn span(&self) -> i64 {
        match (self.elements.first(), self.elements.last()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// The translate `self + t`.
    pub fn translate(&self, t: i64) -> Self {
        FiniteIntSet {
            elements: self.elements.iter().map(|x| x + t).collect(),
        }
    }
}

impl From<Vec<i64>> for FiniteIntSet {
    fn from(values: Vec<i64>) -> Self {
        FiniteIntSet::new(values)
    }
}

impl From<FiniteIntSet> for Vec<i64> {
    fn from(set: FiniteIntSet) -> Vec<i64> {
        set.elements
    }
}

/// Wire form of an eventually periodic set.
#[derive(Serialize, Deserialize)]
struct EpWire {
    m: i64,
    residues: Vec<i64>,
    add: Vec<i64>,
    remove: Vec<i64>,
}

/// An eventually periodic subset of ℤ in canonical form:
///
/// ```text
/// set = (⋃_{r ∈ residues} (r + mℤ)  ∪  add) ∖ remove
/// ```
///
/// with `residues ⊆ {0, …, m−1}`, every `add` point outside the residue
/// classes, every `remove` point inside them, and `add ∩ remove = ∅`.
/// The modulus is the least period of the residue pattern, so two values
/// are equal as sets exactly when they are equal as data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EpWire", into = "EpWire")]
pub struct EventuallyPeriodicSet {
    m: i64,
    residues: BTreeSet<i64>,
    add: BTreeSet<i64>,
    remove: BTreeSet<i64>,
}

impl EventuallyPeriodicSet {
    /// Builds a set from raw parts, validating the representation
    /// invariants and reducing the modulus to the least period.
    pub fn new<R, A, D>(m: i64, residues: R, add: A, remove: D) -> Result<Self>
    where
        R: IntoIterator<Item = i64>,
        A: IntoIterator<Item = i64>,
        D: IntoIterator<Item = i64>,
    {
        if m <= 0 {
            return Err(Error::InvalidArgument(format!(
                "modulus must be positive, got {m}"
            )));
        }
        let residues: BTreeSet<i64> = residues.into_iter().collect();
        if let Some(r) = residues.iter().find(|r| **r < 0 || **r >= m) {
            return Err(Error::InvalidArgument(format!(
                "residue {r} is outside 0..{m}"
            )));
        }
        let add: BTreeSet<i64> = add.into_iter().collect();
        let remove: BTreeSet<i64> = remove.into_iter().collect();
        if let Some(a) = add.iter().find(|a| residues.contains(&a.rem_euclid(m))) {
            return Err(Error::InvalidArgument(format!(
                "add point {a} already lies in a residue class"
            )));
        }
        if let Some(d) = remove.iter().find(|d| !residues.contains(&d.rem_euclid(m))) {
            return Err(Error::InvalidArgument(format!(
                "remove point {d} lies outside the residue classes"
            )));
        }
        if let Some(x) = add.intersection(&remove).next() {
            return Err(Error::InvalidArgument(format!(
                "point {x} is in both add and remove"
            )));
        }
        Ok(Self::canonical(m, residues, add, remove))
    }

    /// All of ℤ.
    pub fn all_integers() -> Self {
        EventuallyPeriodicSet {
            m: 1,
            residues: BTreeSet::from([0]),
            add: BTreeSet::new(),
            remove: BTreeSet::new(),
        }
    }

    /// The empty set.
    pub fn empty() -> Self {
        EventuallyPeriodicSet {
            m: 1,
            residues: BTreeSet::new(),
            add: BTreeSet::new(),
            remove: BTreeSet::new(),
        }
    }

    /// The finite set `points`, with no periodic part.
    pub fn from_finite(points: &FiniteIntSet) -> Self {
        EventuallyPeriodicSet {
            m: 1,
            residues: BTreeSet::new(),
            add: points.elements().iter().copied().collect(),
            remove: BTreeSet::new(),
        }
    }

    pub fn modulus(&self) -> i64 {
        self.m
    }

    pub fn residues(&self) -> impl Iterator<Item = i64> + '_ {
        self.residues.iter().copied()
    }

    pub fn add_points(&self) -> impl Iterator<Item = i64> + '_ {
        self.add.iter().copied()
    }

    pub fn remove_points(&self) -> impl Iterator<Item = i64> + '_ {
        self.remove.iter().copied()
    }

    /// Reduces the modulus to the least divisor under which the residue
    /// pattern is periodic.  The exceptional points are untouched: they
    /// are absolute positions, not residue data.
    fn canonical(m: i64, residues: BTreeSet<i64>, add: BTreeSet<i64>, remove: BTreeSet<i64>) -> Self {
        let mut best = m;
        for d in 1..=m {
            if m % d != 0 {
                continue;
            }
            let periodic = (0..m).all(|r| residues.contains(&r) == residues.contains(&(r % d)));
            if periodic {
                best = d;
                break;
            }
        }
        let residues = residues.into_iter().filter(|r| *r < best).collect();
        EventuallyPeriodicSet {
            m: best,
            residues,
            add,
            remove,
        }
    }

    pub fn contains(&self, z: i64) -> bool {
        if self.residues.contains(&z.rem_euclid(self.m)) {
            !self.remove.contains(&z)
        } else {
            self.add.contains(&z)
        }
    }

    /// True when the set is all of ℤ.
    pub fn equals_all_integers(&self) -> bool {
        self.first_missing().is_none()
    }

    /// Some integer not in the set, if one exists.  Prefers the smallest
    /// missing exceptional point, then the least non-negative member of
    /// the first uncovered residue class.
    pub fn first_missing(&self) -> Option<i64> {
        if let Some(d) = self.remove.iter().next() {
            return Some(*d);
        }
        let r = (0..self.m).find(|r| !self.residues.contains(r))?;
        // The class r + mℤ is disjoint from the residue classes, so only
        // finitely many add points can hide inside it.
        let mut z = r;
        while self.add.contains(&z) {
            z += self.m;
        }
        Some(z)
    }

    /// The complement ℤ ∖ self.  Exceptional points swap roles.
    pub fn complement(&self) -> Self {
        let residues: BTreeSet<i64> = (0..self.m).filter(|r| !self.residues.contains(r)).collect();
        Self::canonical(self.m, residues, self.remove.clone(), self.add.clone())
    }

    /// The translate `self + t`.
    pub fn translate(&self, t: i64) -> Self {
        let residues = self.residues.iter().map(|r| (r + t).rem_euclid(self.m)).collect();
        let add = self.add.iter().map(|a| a + t).collect();
        let remove = self.remove.iter().map(|d| d + t).collect();
        Self::canonical(self.m, residues, add, remove)
    }

    /// The dilate `f · self` for a positive factor.
    pub fn scale(&self, f: i64) -> Result<Self> {
        if f <= 0 {
            return Err(Error::InvalidArgument(format!(
                "scale factor must be positive, got {f}"
            )));
        }
        let m = self.m.checked_mul(f).ok_or_else(|| {
            Error::InvalidArgument("scaled modulus overflows i64".to_string())
        })?;
        let residues = self.residues.iter().map(|r| r * f).collect();
        let add = self.add.iter().map(|a| a * f).collect();
        let remove = self.remove.iter().map(|d| d * f).collect();
        // Scaling a canonical pattern keeps it canonical only when f = 1;
        // for f > 1 the dilated progressions cover a thinner pattern that
        // is still in least terms, but run the reduction for safety.
        Ok(Self::canonical(m, residues, add, remove))
    }

    /// The union `self ∪ other`.
    pub fn union(&self, other: &Self) -> Result<Self> {
        let m = lcm_checked(self.m, other.m)?;
        let residues: BTreeSet<i64> = (0..m)
            .filter(|r| {
                self.residues.contains(&(r % self.m)) || other.residues.contains(&(r % other.m))
            })
            .collect();
        // Away from the four exception sets both operands are periodic,
        // so the union agrees with the classes above; only the listed
        // points can deviate.
        let mut add = BTreeSet::new();
        let mut remove = BTreeSet::new();
        for z in self
            .add
            .iter()
            .chain(self.remove.iter())
            .chain(other.add.iter())
            .chain(other.remove.iter())
        {
            let member = self.contains(*z) || other.contains(*z);
            let in_class = residues.contains(&z.rem_euclid(m));
            if member && !in_class {
                add.insert(*z);
            } else if !member && in_class {
                remove.insert(*z);
            }
        }
        Ok(Self::canonical(m, residues, add, remove))
    }

    /// The sumset `self + c` for a finite nonempty `c`, computed exactly
    /// as the union of the translates `self + y`.
    pub fn sum_with_finite(&self, c: &FiniteIntSet) -> Result<Self> {
        let mut parts = c.elements().iter().map(|y| self.translate(*y));
        let first = parts
            .next()
            .ok_or(Error::EmptySet("sumset with an empty finite set"))?;
        parts.try_fold(first, |acc, part| acc.union(&part))
    }
}

impl TryFrom<EpWire> for EventuallyPeriodicSet {
    type Error = Error;

    fn try_from(wire: EpWire) -> Result<Self> {
        EventuallyPeriodicSet::new(wire.m, wire.residues, wire.add, wire.remove)
    }
}

impl From<EventuallyPeriodicSet> for EpWire {
    fn from(set: EventuallyPeriodicSet) -> EpWire {
        EpWire {
            m: set.m,
            residues: set.residues.into_iter().collect(),
            add: set.add.into_iter().collect(),
            remove: set.remove.into_iter().collect(),
        }
    }
}

fn lcm_checked(a: i64, b: i64) -> Result<i64> {
    debug_assert!(a > 0 && b > 0);
    (a / gcd(a, b))
        .checked_mul(b)
        .ok_or_else(|| Error::InvalidArgument("lcm of moduli overflows i64".to_string()))
}

/// Outcome of checking a `(W, C)` pair on the line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "camelCase")]
pub enum ZVerdict {
    /// `W + C = ℤ` and every element of `C` has a uniqueness witness.
    Verified {
        /// For each `c₀ ∈ C`, some `z` covered by `c₀` alone.
        witnesses: BTreeMap<i64, i64>,
    },
    /// `W + C` misses an integer.
    NotComplement { missing: i64 },
    /// `C` is a complement but the listed element has no uniqueness
    /// witness, so `C ∖ {element}` is still a complement.
    NotMinimal { element: i64 },
}

impl ZVerdict {
    pub fn is_minimal(&self) -> bool {
        matches!(self, ZVerdict::Verified { .. })
    }
}

/// Decides whether the finite set `c` is a minimal complement to the
/// eventually periodic set `w`, i.e. `w + c = ℤ` and no proper subset of
/// `c` still sums with `w` to ℤ.
///
/// Minimality is checked element by element: `c₀` is essential exactly
/// when some `z ∈ ℤ` satisfies `z − c₀ ∈ w` and `z − c' ∉ w` for every
/// other `c'`.  Each membership test `z − cᵢ ∈ w` depends only on
/// `z mod m` unless `z − cᵢ` hits one of `w`'s exceptional points, so the
/// witness predicate is `m`-periodic outside the finite exception window
/// `E = ⋃ᵢ (cᵢ + add ∪ remove)`.  Scanning every point of `E` plus one
/// full period beyond it is therefore a complete search: if no witness
/// appears there, none exists.
pub fn verify_z_certificate(w: &EventuallyPeriodicSet, c: &FiniteIntSet) -> Result<ZVerdict> {
    if c.is_empty() {
        return Err(Error::EmptySet("candidate complement on the line"));
    }
    let sum = w.sum_with_finite(c)?;
    if let Some(missing) = sum.first_missing() {
        return Ok(ZVerdict::NotComplement { missing });
    }

    // Candidate witnesses: the exception window, then one clean period
    // past its right edge.
    let mut window: BTreeSet<i64> = BTreeSet::new();
    for ci in c.elements() {
        for b in w.add_points().chain(w.remove_points()) {
            window.insert(ci + b);
        }
    }
    let period_start = window.iter().next_back().map_or(0, |hi| hi + 1);
    let candidates: Vec<i64> = window
        .iter()
        .copied()
        .chain(period_start..period_start + w.modulus())
        .collect();

    let mut witnesses = BTreeMap::new();
    for c0 in c.elements() {
        let witness = candidates.iter().copied().find(|z| {
            w.contains(z - c0) && c.elements().iter().all(|ci| ci == c0 || !w.contains(z - ci))
        });
        match witness {
            Some(z) => {
                witnesses.insert(*c0, z);
            }
            None => return Ok(ZVerdict::NotMinimal { element: *c0 }),
        }
    }
    Ok(ZVerdict::Verified { witnesses })
}

/// Builds an eventually periodic set to which the finite nonempty `c` is
/// a minimal complement, together with the uniqueness witnesses.
///
/// One anchor is placed per element of `c`: the anchored translates
/// `aᵢ = wᵢ + cᵢ` are spaced `2·span(c) + 1` apart starting at `seed`,
/// which keeps the strips `aᵢ − c` (each of width `span(c)`) pairwise
/// disjoint with gaps wider than `span(c)`, so any translate `z − c`
/// meets at most one strip.  The witness set is then
///
/// ```text
/// W = {w₁, …, w_k} ∪ (ℤ ∖ ⋃ᵢ (aᵢ − c))
/// ```
///
/// which is cofinite, hence eventually periodic with modulus 1.  Every
/// `z` is covered: `z − c` has `|c|` points yet each punctured strip
/// keeps only `|c| − 1`, so some `z − cⱼ` survives in `W`.  Each `aᵢ`
/// is covered through `cᵢ` alone, making it the uniqueness witness for
/// `cᵢ`.  The construction succeeds for every input; the returned pair
/// has already been re-checked by [`verify_z_certificate`].
pub fn construct_z_complement(
    c: &FiniteIntSet,
    seed: i64,
) -> Result<(EventuallyPeriodicSet, BTreeMap<i64, i64>)> {
    if c.is_empty() {
        return Err(Error::EmptySet("candidate complement on the line"));
    }
    // Strips aᵢ − c have width span(c); this spacing leaves gaps of
    // span(c) + 1 between consecutive strips, so a set of diameter
    // span(c) can never bridge two of them.
    let spacing = 2 * c.span() + 1;
    let anchors: Vec<i64> = c
        .elements()
        .iter()
        .enumerate()
        .map(|(i, ci)| seed + (i as i64) * spacing - ci)
        .collect();

    let mut removed: BTreeSet<i64> = BTreeSet::new();
    for (wi, ci) in anchors.iter().zip(c.elements()) {
        for cj in c.elements() {
            removed.insert(wi + ci - cj);
        }
    }
    // Each anchor wᵢ lies in its own removed strip (take cj = cᵢ), so W
    // is exactly ℤ minus the non-anchor removed points.
    for wi in &anchors {
        removed.remove(wi);
    }
    let w = EventuallyPeriodicSet::new(1, [0], [], removed)?;

    match verify_z_certificate(&w, c)? {
        ZVerdict::Verified { witnesses } => Ok((w, witnesses)),
        verdict => Err(Error::ConstructionFailed(format!(
            "anchor construction produced a non-certificate: {verdict:?}"
        ))),
    }
}

/// A minimal complement of ℤ assembled by [`lift_z`], with the quotient
/// data that produced it.
#[derive(Debug, Clone)]
pub struct ZLiftResult {
    /// The witness set `W ⊆ ℤ`.
    pub w: EventuallyPeriodicSet,
    /// The lifted minimal complement `𝒞 = ⋃ᵢ (cᵢ + n·𝒳ᵢ)`.
    pub c: FiniteIntSet,
    /// Uniqueness witnesses, one per element of `c`.
    pub witnesses: BTreeMap<i64, i64>,
    /// The admissible spread parameter that was used.
    pub s: usize,
    /// The anchor tuple found on ℤ/n.
    pub tuple: SKTuple,
    /// For each row, the column whose anchor was selected.
    pub row_choices: Vec<usize>,
    /// Sampling iterations spent in the tuple search.
    pub iterations: usize,
}

/// Transports minimal complements through the subgroup `nℤ ⊆ ℤ`.
///
/// Inputs: `k` coset representatives `cᵢ`, pairwise distinct mod `n`,
/// and for each a finite set `𝒳ᵢ` with an eventually periodic witness
/// `Wᵢ` such that `𝒳ᵢ` is a minimal complement to `Wᵢ` in ℤ (the pairs
/// are re-verified here).  The spread parameter `s` may be pinned or
/// searched over `2..=8`; it must satisfy the density inequality for
/// `(n, k, s)`, which guarantees that uniformly sampled `(k × s)`-tuples
/// on ℤ/n eventually avoid all three degeneracy patterns.
///
/// From a passing tuple, one clear column `pᵢ` is chosen per row and the
/// witness set is assembled as
///
/// ```text
/// W = ⋃ᵢ (wᵢ + n·Wᵢ')  ∪  (ℤ ∖ ⋃ᵢ,ⱼ (wᵢ + cᵢ − cⱼ + nℤ))
/// ```
///
/// where `wᵢ` is the chosen anchor lifted to `{0, …, n−1}` and `Wᵢ'` is
/// `Wᵢ` translated to contain 0 (witness sets may be translated freely
/// on the side opposite the complement).  The lifted complement is
/// `𝒞 = ⋃ᵢ (cᵢ + n·𝒳ᵢ)`, of size `Σᵢ |𝒳ᵢ|`, and the assembled pair is
/// re-checked by [`verify_z_certificate`] before being returned.
pub fn lift_z(
    n: usize,
    coset_reps: &[i64],
    inner: &[(FiniteIntSet, EventuallyPeriodicSet)],
    s: Option<usize>,
    seed: u64,
) -> Result<ZLiftResult> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "quotient modulus must be at least 2, got {n}"
        )));
    }
    let k = coset_reps.len();
    if k == 0 {
        return Err(Error::EmptySet("coset representatives"));
    }
    if inner.len() != k {
        return Err(Error::InvalidArgument(format!(
            "{} coset representatives but {} inner pairs",
            k,
            inner.len()
        )));
    }
    let cbar: Vec<u32> = coset_reps
        .iter()
        .map(|ci| ci.rem_euclid(n as i64) as u32)
        .collect();
    {
        let mut seen = BTreeSet::new();
        for (ci, r) in coset_reps.iter().zip(&cbar) {
            if !seen.insert(*r) {
                return Err(Error::InvalidArgument(format!(
                    "coset representative {ci} repeats residue {r} mod {n}"
                )));
            }
        }
    }
    for (i, (x, w_inner)) in inner.iter().enumerate() {
        if !verify_z_certificate(w_inner, x)?.is_minimal() {
            return Err(Error::InvalidArgument(format!(
                "inner pair {i} is not a verified minimal complement"
            )));
        }
    }
    let s = match s {
        Some(s) => {
            if !sk_inequality_holds(n as u64, k as u64, s as u64) {
                return Err(Error::InvalidArgument(format!(
                    "density inequality fails for n = {n}, k = {k}, s = {s}"
                )));
            }
            s
        }
        None => (2usize..=8)
            .find(|s| sk_inequality_holds(n as u64, k as u64, *s as u64))
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "no admissible spread parameter in 2..=8 for n = {n}, k = {k}"
                ))
            })?,
    };

    let quotient = FiniteGroup::make_cyclic(n);
    let (tuple, iterations) = search_sk_tuple(&quotient, &cbar, s, seed, DEFAULT_SK_MAX_ITER)?;
    let sets = tuple_sets(&quotient, &cbar, &tuple)?;
    let mut row_choices = Vec::with_capacity(k);
    for i in 0..k {
        let mut choice = None;
        for p in 0..s {
            if column_is_clear(&quotient, &cbar, &sets, i, p)? {
                choice = Some(p);
                break;
            }
        }
        row_choices.push(choice.expect("a passing tuple has a clear column in every row"));
    }

    // Residue classes excluded from the cofinite part: for each row the
    // chosen set w̄ᵢ·c̄ᵢ·C̄⁻¹ on ℤ/n, i.e. the classes wᵢ + cᵢ − cⱼ mod n.
    let mut kept_residues: BTreeSet<i64> = (0..n as i64).collect();
    for (i, p) in row_choices.iter().enumerate() {
        for r in sets.shifted[i * sets.s + p].iter() {
            kept_residues.remove(&(r as i64));
        }
    }
    let mut w = EventuallyPeriodicSet::new(n as i64, kept_residues, [], [])?;

    let mut c_elements: Vec<i64> = Vec::new();
    for (i, (x, w_inner)) in inner.iter().enumerate() {
        let anchor = tuple.entries[i][row_choices[i]] as i64;
        // Slide the inner witness set so it contains 0; the inner pair
        // stays verified because W may be translated opposite C.
        let shift = inner_base_point(w_inner);
        let w_norm = w_inner.translate(-shift);
        w = w.union(&w_norm.scale(n as i64)?.translate(anchor))?;
        for xi in x.elements() {
            c_elements.push(coset_reps[i] + (n as i64) * xi);
        }
    }
    let c = FiniteIntSet::new(c_elements);
    debug_assert_eq!(c.len(), inner.iter().map(|(x, _)| x.len()).sum::<usize>());

    match verify_z_certificate(&w, &c)? {
        ZVerdict::Verified { witnesses } => Ok(ZLiftResult {
            w,
            c,
            witnesses,
            s,
            tuple,
            row_choices,
            iterations,
        }),
        verdict => Err(Error::ConstructionFailed(format!(
            "lift produced a non-certificate: {verdict:?}"
        ))),
    }
}

/// A deterministic member of a nonempty eventually periodic set: the
/// least covered point of its smallest residue class, or the smallest
/// add point for sets with no periodic part.
fn inner_base_point(w: &EventuallyPeriodicSet) -> i64 {
    if let Some(r) = w.residues().next() {
        let mut z = r;
        while !w.contains(z) {
            z += w.modulus();
        }
        z
    } else if let Some(a) = w.add_points().next() {
        a
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ep(m: i64, residues: &[i64], add: &[i64], remove: &[i64]) -> EventuallyPeriodicSet {
        EventuallyPeriodicSet::new(
            m,
            residues.iter().copied(),
            add.iter().copied(),
            remove.iter().copied(),
        )
        .unwrap()
    }

    fn fine(values: &[i64]) -> FiniteIntSet {
        FiniteIntSet::new(values.iter().copied())
    }

    /// Membership oracle used by the window cross-checks.
    fn window_members(set: &EventuallyPeriodicSet, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|z| set.contains(*z)).collect()
    }

    #[test]
    fn construction_validates_and_canonicalizes() {
        assert!(EventuallyPeriodicSet::new(0, [], [], []).is_err());
        assert!(EventuallyPeriodicSet::new(3, [3], [], []).is_err());
        // add point inside a class
        assert!(EventuallyPeriodicSet::new(2, [0], [4], []).is_err());
        // remove point outside the classes
        assert!(EventuallyPeriodicSet::new(2, [0], [], [3]).is_err());
        // shared exceptional point
        assert!(EventuallyPeriodicSet::new(2, [0], [1], [1]).is_err());

        // {0, 2} mod 4 is really the evens.
        let evens = ep(4, &[0, 2], &[], &[]);
        assert_eq!(evens.modulus(), 2);
        assert_eq!(evens, ep(2, &[0], &[], &[]));

        let all = ep(3, &[0, 1, 2], &[], &[]);
        assert_eq!(all.modulus(), 1);
        assert_eq!(all, EventuallyPeriodicSet::all_integers());
    }

    #[test]
    fn membership_complement_and_missing_points() {
        let s = ep(3, &[0], &[1, -2], &[6]);
        assert!(s.contains(0));
        assert!(s.contains(1));
        assert!(s.contains(-2));
        assert!(!s.contains(6));
        assert!(!s.contains(2));
        assert!(s.contains(9));

        let comp = s.complement();
        for z in -30..30 {
            assert_eq!(comp.contains(z), !s.contains(z), "z = {z}");
        }
        assert_eq!(comp.complement(), s);

        let cofinite = ep(1, &[0], &[], &[5]);
        assert!(!cofinite.equals_all_integers());
        assert_eq!(cofinite.first_missing(), Some(5));
        assert!(EventuallyPeriodicSet::all_integers().equals_all_integers());
        // A finite add set cannot complete a missing class.
        let padded = ep(2, &[0], &[1, 3, 5, 7], &[]);
        assert_eq!(padded.first_missing(), Some(9));
    }

    #[test]
    fn union_translate_and_scale_are_exact() {
        let evens = ep(2, &[0], &[], &[]);
        let odds = evens.translate(1);
        assert!(odds.contains(3) && !odds.contains(4));
        assert!(evens.union(&odds).unwrap().equals_all_integers());

        let threes = ep(3, &[0], &[], &[0]);
        let u = threes.union(&ep(6, &[1], &[0], &[])).unwrap();
        for z in -40i64..40 {
            let expected = (z.rem_euclid(3) == 0 && z != 0) || z.rem_euclid(6) == 1 || z == 0;
            assert_eq!(u.contains(z), expected, "z = {z}");
        }

        let scaled = ep(2, &[1], &[0], &[3]).scale(3).unwrap();
        for z in -40i64..40 {
            let expected = (z.rem_euclid(6) == 3 && z != 9) || z == 0;
            assert_eq!(scaled.contains(z), expected, "z = {z}");
        }
        assert!(ep(1, &[0], &[], &[]).scale(0).is_err());
    }

    #[test]
    fn sumsets_with_finite_sets() {
        let all = EventuallyPeriodicSet::all_integers();
        assert!(all.sum_with_finite(&fine(&[7])).unwrap().equals_all_integers());

        let evens = ep(2, &[0], &[], &[]);
        assert!(evens.sum_with_finite(&fine(&[0, 1])).unwrap().equals_all_integers());

        // (3ℤ ∖ {0}) + {0, 1}, cross-checked against the definition.
        let punctured = ep(3, &[0], &[], &[0]);
        let sum = punctured.sum_with_finite(&fine(&[0, 1])).unwrap();
        for z in -50..=50 {
            let expected = (z % 3 == 0 && z != 0) || ((z - 1) % 3 == 0 && z != 1);
            assert_eq!(sum.contains(z), expected, "z = {z}");
        }

        assert!(matches!(
            all.sum_with_finite(&FiniteIntSet::new([])),
            Err(Error::EmptySet(_))
        ));
    }

    #[test]
    fn verification_accepts_and_rejects_correctly() {
        // W = ℤ covers everything but {0, 1} is redundant in both slots.
        let verdict = verify_z_certificate(&EventuallyPeriodicSet::all_integers(), &fine(&[0, 1]))
            .unwrap();
        assert_eq!(verdict, ZVerdict::NotMinimal { element: 0 });

        // Parity: {0, 1} is a minimal complement to the evens.
        let evens = ep(2, &[0], &[], &[]);
        let verdict = verify_z_certificate(&evens, &fine(&[0, 1])).unwrap();
        match verdict {
            ZVerdict::Verified { ref witnesses } => {
                assert_eq!(witnesses.len(), 2);
                for (c0, z) in witnesses {
                    assert!(evens.contains(z - c0));
                }
            }
            other => panic!("expected verification, got {other:?}"),
        }

        // The evens alone miss the odds.
        let verdict = verify_z_certificate(&evens, &fine(&[0])).unwrap();
        assert!(matches!(
            verdict,
            ZVerdict::NotComplement { missing } if missing.rem_euclid(2) == 1
        ));

        // Removing a point from ℤ is reported with the point itself.
        let verdict =
            verify_z_certificate(&ep(1, &[0], &[], &[5]), &fine(&[0])).unwrap();
        assert_eq!(verdict, ZVerdict::NotComplement { missing: 5 });
    }

    #[test]
    fn witness_search_sees_past_the_exceptions() {
        // W = evens plus a lone odd point: {0,1} stays minimal, and the
        // witness for 1 must dodge the exceptional point 3 = 1 + 2.
        let w = ep(2, &[0], &[3], &[]);
        let verdict = verify_z_certificate(&w, &fine(&[0, 1])).unwrap();
        assert!(verdict.is_minimal());

        // Padding the odds with finitely many points never makes {0}
        // a complement on its own.
        let padded = ep(2, &[0], &[1, 3, 5], &[]);
        let verdict = verify_z_certificate(&padded, &fine(&[0])).unwrap();
        assert!(matches!(verdict, ZVerdict::NotComplement { .. }));
    }

    #[test]
    fn anchor_construction_matches_the_worked_example() {
        // c = {0}: the only anchor is the seed and nothing is removed.
        let (w, _) = construct_z_complement(&fine(&[0]), 0).unwrap();
        assert_eq!(w, EventuallyPeriodicSet::all_integers());

        // c = {0, 1}: anchors at 0 and 2, removed strips {-1, 0} and
        // {2, 3}, so W = ℤ ∖ {-1, 3}.
        let (w, witnesses) = construct_z_complement(&fine(&[0, 1]), 0).unwrap();
        assert_eq!(w, ep(1, &[0], &[], &[-1, 3]));
        assert_eq!(witnesses.len(), 2);
    }

    #[test]
    fn anchor_construction_handles_wider_sets() {
        let c = fine(&[0, 1, 3]);
        let (w, witnesses) = construct_z_complement(&c, 0).unwrap();
        assert_eq!(witnesses.len(), 3);
        // Definitional recheck on a window: every integer is covered,
        // and each element of c covers its witness alone.
        let members = window_members(&w.sum_with_finite(&c).unwrap(), -100, 100);
        assert_eq!(members.len(), 201);
        for (c0, z) in &witnesses {
            assert!(w.contains(z - c0));
            for ci in c.elements() {
                if ci != c0 {
                    assert!(!w.contains(z - ci));
                }
            }
        }

        // A nonzero seed translates the whole construction.
        let (w_shifted, _) = construct_z_complement(&c, 17).unwrap();
        assert_eq!(w_shifted, w.translate(17));
    }

    #[test]
    fn anchor_construction_never_fails_on_random_inputs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for trial in 0..1000 {
            let len = rng.gen_range(1..=8);
            let lo = rng.gen_range(-60..=10);
            let span = rng.gen_range(0..=50);
            let c = FiniteIntSet::new((0..len).map(|_| lo + rng.gen_range(0..=span)));
            let seed = rng.gen_range(-100..=100);
            let (w, witnesses) = construct_z_complement(&c, seed)
                .unwrap_or_else(|e| panic!("trial {trial} failed: {e}"));
            assert_eq!(witnesses.len(), c.len());
            assert!(verify_z_certificate(&w, &c).unwrap().is_minimal());
        }
    }

    #[test]
    fn certificates_survive_translation() {
        let c = fine(&[0, 2, 5]);
        let (w, _) = construct_z_complement(&c, 3).unwrap();
        for t in [-37, -1, 0, 12, 100] {
            // Translating W keeps C minimal; translating C keeps W valid.
            assert!(verify_z_certificate(&w.translate(t), &c).unwrap().is_minimal());
            assert!(verify_z_certificate(&w, &c.translate(t)).unwrap().is_minimal());
        }
    }

    #[test]
    fn lift_with_singleton_inner_set() {
        // 𝒳₁ = {0} with W₁ = ℤ; the lift through 20ℤ keeps one element.
        let inner = vec![(fine(&[0]), EventuallyPeriodicSet::all_integers())];
        let result = lift_z(20, &[3], &inner, None, 7).unwrap();
        assert_eq!(result.c, fine(&[3]));
        assert_eq!(result.s, 2);
        assert!(verify_z_certificate(&result.w, &result.c).unwrap().is_minimal());
    }

    #[test]
    fn lift_with_two_element_inner_set() {
        // 𝒳₁ = {0, 1} with its constructed witness: 𝒞 = {c₁, c₁ + 20}.
        let x = fine(&[0, 1]);
        let (w1, _) = construct_z_complement(&x, 0).unwrap();
        let inner = vec![(x, w1)];
        let result = lift_z(20, &[3], &inner, None, 7).unwrap();
        assert_eq!(result.c, fine(&[3, 23]));
        assert!(verify_z_certificate(&result.w, &result.c).unwrap().is_minimal());
    }

    #[test]
    fn lift_rejects_bad_parameters() {
        let inner = vec![(fine(&[0]), EventuallyPeriodicSet::all_integers())];
        // No admissible spread parameter for so small a modulus.
        let err = lift_z(4, &[1], &inner, None, 0).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
        // A pinned s must satisfy the density inequality.
        assert!(lift_z(20, &[1], &inner, Some(9), 0).is_err());

        // Residues must be distinct mod n.
        let inner2 = vec![
            (fine(&[0]), EventuallyPeriodicSet::all_integers()),
            (fine(&[0]), EventuallyPeriodicSet::all_integers()),
        ];
        assert!(lift_z(20, &[1, 21], &inner2, None, 0).is_err());

        // Inner pairs must actually verify.
        let bad = vec![(fine(&[0, 1]), EventuallyPeriodicSet::all_integers())];
        assert!(lift_z(20, &[1], &bad, None, 0).is_err());
    }

    #[test]
    fn lifted_certificates_recheck_on_a_window() {
        let x = fine(&[0, 1]);
        let (w1, _) = construct_z_complement(&x, 0).unwrap();
        let inner = vec![(x.clone(), w1)];
        let result = lift_z(20, &[0], &inner, None, 1).unwrap();
        let sum = result.w.sum_with_finite(&result.c).unwrap();
        assert!(sum.equals_all_integers());
        for (c0, z) in &result.witnesses {
            assert!(result.w.contains(z - c0));
            for ci in result.c.elements() {
                if ci != c0 {
                    assert!(!result.w.contains(z - ci));
                }
            }
        }
    }

    #[test]
    fn json_round_trips() {
        let s = ep(3, &[0, 2], &[4], &[6]);
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"m\":3"));
        let back: EventuallyPeriodicSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        // Invalid wire data is rejected on the way in.
        assert!(serde_json::from_str::<EventuallyPeriodicSet>(
            "{\"m\":2,\"residues\":[0],\"add\":[4],\"remove\":[]}"
        )
        .is_err());

        let c = fine(&[3, 1, 1]);
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, "[1,3]");
        assert_eq!(serde_json::from_str::<FiniteIntSet>(&text).unwrap(), c);
    }
}
