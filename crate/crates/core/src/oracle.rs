//! Exact decision procedures: minimality of a given complement, greedy
//! trimming, the "minimal complement to some subset" search, the size
//! spectra 𝒮(G) and 𝒜(G), and co-minimal tuples.
//!
//! Every verdict here is exact. Searches are complete enumerations (with
//! sound pruning), never samples; when an input is too large for a complete
//! search the routine returns a budget error instead of a guess.

use std::collections::BTreeMap;

use crate::cert::ComplementCertificate;
use crate::group::{enumerate_subgroups, subgroup_from_mask, FiniteGroup, Subgroup};
use crate::subset::{canonical_rep, uniqueness_witnesses, Side, SubsetMask};
use crate::{product_set, Caps, Error, Result};

/// Outcome of [`is_minimal_to_some`].
#[derive(Clone, Debug)]
pub enum MembershipVerdict {
    /// c is a minimal complement to the w recorded in the certificate.
    Minimal(ComplementCertificate),
    /// No w exists. `search_exhausted` records whether the complete search
    /// ran; when it did not, `obstruction` carries the subgroup that rules
    /// every w out by counting alone.
    NotMinimalToAny {
        search_exhausted: bool,
        obstruction: Option<Subgroup>,
    },
}

impl MembershipVerdict {
    pub fn is_minimal(&self) -> bool {
        matches!(self, MembershipVerdict::Minimal(_))
    }
}

/// Sizes k for which **some** size-k subset is a minimal complement, with a
/// verified witness certificate per included size.
#[derive(Clone, Debug)]
pub struct SizesSome {
    pub sizes: Vec<usize>,
    pub witnesses: BTreeMap<usize, ComplementCertificate>,
}

/// Sizes k for which **every** size-k subset is a minimal complement, with a
/// concrete counterexample per excluded size.
#[derive(Clone, Debug)]
pub struct SizesEvery {
    pub sizes: Vec<usize>,
    pub counterexamples: BTreeMap<usize, SubsetMask>,
}

/// True iff w and c form a complement pair on the given side and every
/// element of c keeps a uniqueness witness. Total: mismatched, empty, or
/// non-complement inputs simply yield false.
pub fn is_minimal_complement(g: &FiniteGroup, w: &SubsetMask, c: &SubsetMask, side: Side) -> bool {
    match uniqueness_witnesses(g, w, c, side) {
        Ok(per_element) => per_element.iter().all(|(_, m)| !m.is_empty()),
        Err(_) => false,
    }
}

/// The group element that must lie in w for the product to cover z through
/// the element c0: z = w0·c0 on the right (so w0 = z·c0^{-1}), z = c0·w0 on
/// the left.
#[inline]
fn cover_source(g: &FiniteGroup, z: u32, c0: u32, side: Side) -> u32 {
    match side {
        Side::Right => g.mul(z, g.inv_of(c0)),
        Side::Left => g.mul(g.inv_of(c0), z),
    }
}

/// z = w0·c0 (right) or c0·w0 (left): the point covered by a (w0, c0) pair.
#[inline]
fn cover_target(g: &FiniteGroup, w0: u32, c0: u32, side: Side) -> u32 {
    match side {
        Side::Right => g.mul(w0, c0),
        Side::Left => g.mul(c0, w0),
    }
}

/// Trim c = G down to a minimal complement of w: repeatedly remove the
/// lowest-index element whose removal keeps the complement property, until
/// nothing is removable. The result is returned as the canonical translate
/// (identity-containing, lexicographically least), which is still a minimal
/// complement to the same w.
pub fn trim_to_minimal_complement(
    g: &FiniteGroup,
    w: &SubsetMask,
    side: Side,
) -> Result<ComplementCertificate> {
    if w.is_empty() {
        return Err(Error::EmptySet("w in trim_to_minimal_complement"));
    }
    if w.group_order() != g.order() {
        return Err(Error::OrderMismatch {
            mask: w.group_order(),
            group: g.order(),
        });
    }
    let n = g.order();
    let mut c = SubsetMask::full(n);
    // cover[z] = number of (w0, c0) pairs whose product is z. For fixed c0
    // the map w0 ↦ cover_target is injective, so removing c0 decrements
    // exactly |w| distinct counters; c0 is removable iff all of them stay
    // positive afterwards.
    let mut cover = vec![0u32; n];
    for c0 in c.iter() {
        for w0 in w.iter() {
            cover[cover_target(g, w0, c0, side) as usize] += 1;
        }
    }
    loop {
        let mut removed = false;
        for c0 in c.iter() {
            if w.iter().all(|w0| cover[cover_target(g, w0, c0, side) as usize] >= 2) {
                for w0 in w.iter() {
                    cover[cover_target(g, w0, c0, side) as usize] -= 1;
                }
                c.remove(c0);
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    let canon = canonical_rep(g, &c, side)?;
    ComplementCertificate::new(g, w, &canon, side)
}

/// A subgroup that rules out c as a minimal complement to anything: c ⊆ H
/// with |H| > |c| > 2·[G:H]·|H ∖ c|. Any w would then cover the [G:H]
/// cosets of H so densely near c that no element of c could keep a
/// uniqueness witness. Scans all subgroups when enumeration is in reach,
/// otherwise just H = G.
pub fn find_subgroup_obstruction(g: &FiniteGroup, c: &SubsetMask) -> Result<Option<Subgroup>> {
    if c.is_empty() {
        return Err(Error::EmptySet("c in find_subgroup_obstruction"));
    }
    let n = g.order();
    let k = c.len();
    let hits = |h_size: usize| -> bool {
        h_size > k && k > 2 * (n / h_size) * (h_size - k)
    };
    if let Ok(subs) = enumerate_subgroups(g) {
        for h in subs {
            if hits(h.mask.len()) && c.is_subset_of(&h.mask)? {
                return Ok(Some(h));
            }
        }
        return Ok(None);
    }
    // Enumeration out of reach: the whole group is still always available.
    if hits(n) {
        return Ok(Some(subgroup_from_mask(g, SubsetMask::full(n))?));
    }
    Ok(None)
}

/// Decide whether some w makes c a minimal complement. The obstruction scan
/// runs first and settles the negative case by counting alone; otherwise a
/// complete branch-and-bound search over candidate w's runs when n is within
/// `cap`, and a budget error is returned when it is not.
pub fn is_minimal_to_some(
    g: &FiniteGroup,
    c: &SubsetMask,
    side: Side,
    cap: usize,
) -> Result<MembershipVerdict> {
    if c.is_empty() {
        return Err(Error::EmptySet("c in is_minimal_to_some"));
    }
    if c.group_order() != g.order() {
        return Err(Error::OrderMismatch {
            mask: c.group_order(),
            group: g.order(),
        });
    }
    if let Some(h) = find_subgroup_obstruction(g, c)? {
        return Ok(MembershipVerdict::NotMinimalToAny {
            search_exhausted: false,
            obstruction: Some(h),
        });
    }
    let n = g.order();
    if n > cap {
        return Err(Error::BudgetExhausted(format!(
            "no obstruction found and order {n} exceeds the exhaustive-search cap {cap}"
        )));
    }
    match search_witnessing_w(g, c, side) {
        Some(w) => Ok(MembershipVerdict::Minimal(ComplementCertificate::new(
            g, &w, c, side,
        )?)),
        None => Ok(MembershipVerdict::NotMinimalToAny {
            search_exhausted: true,
            obstruction: None,
        }),
    }
}

/// Complete search for a w to which c is a minimal complement.
///
/// Covering view: w must intersect, for every z ∈ G, the size-|c| option set
/// S(z) = {cover_source(z, c0)}; c is then minimal iff every c0 owns some z
/// with w ∩ S(z) = {cover_source(z, c0)}. If any suitable w exists, every
/// covering subset of it inherits all witnesses (coverage of a witness z can
/// only come through its unique allowed element), so it suffices to
/// enumerate covers built one forced choice at a time: pick an uncovered z
/// with the fewest undecided options, branch on which option is the first
/// to be included, and prune any branch in which some c0 has no possible
/// witness left. The enumeration is exhaustive, so `None` is a proof that no
/// w exists.
fn search_witnessing_w(g: &FiniteGroup, c: &SubsetMask, side: Side) -> Option<SubsetMask> {
    let n = g.order();
    let cs: Vec<u32> = c.elements();
    let k = cs.len();
    // cov[z·k + i]: the element w must contain to cover z through cs[i].
    let mut cov = vec![0u32; n * k];
    for z in 0..n as u32 {
        for (i, &ci) in cs.iter().enumerate() {
            cov[z as usize * k + i] = cover_source(g, z, ci, side);
        }
    }
    // covers_of[e]: the k points e would cover if included.
    let mut covers_of: Vec<Vec<u32>> = vec![Vec::with_capacity(k); n];
    for z in 0..n {
        for i in 0..k {
            covers_of[cov[z * k + i] as usize].push(z as u32);
        }
    }

    #[derive(Clone, Copy, PartialEq, Eq)]
    enum St {
        Undecided,
        In,
        Out,
    }
    struct State {
        status: Vec<St>,
        /// Number of included options of S(z).
        inc: Vec<u16>,
        /// Number of excluded options of S(z).
        out: Vec<u16>,
    }
    let mut st = State {
        status: vec![St::Undecided; n],
        inc: vec![0u16; n],
        out: vec![0u16; n],
    };

    fn set(st: &mut State, covers_of: &[Vec<u32>], e: u32, to: St) {
        let from = st.status[e as usize];
        st.status[e as usize] = to;
        for &z in &covers_of[e as usize] {
            match from {
                St::In => st.inc[z as usize] -= 1,
                St::Out => st.out[z as usize] -= 1,
                St::Undecided => {}
            }
            match to {
                St::In => st.inc[z as usize] += 1,
                St::Out => st.out[z as usize] += 1,
                St::Undecided => {}
            }
        }
    }

    fn dfs(
        st: &mut State,
        covers_of: &[Vec<u32>],
        cov: &[u32],
        n: usize,
        k: usize,
    ) -> bool {
        // Witness feasibility: every ci must still have some z whose option
        // set can end up as exactly {cov[z,i]}.
        'per_ci: for i in 0..k {
            for z in 0..n {
                let e = cov[z * k + i] as usize;
                match st.status[e] {
                    St::Out => {}
                    St::In => {
                        if st.inc[z] == 1 {
                            continue 'per_ci;
                        }
                    }
                    St::Undecided => {
                        if st.inc[z] == 0 {
                            continue 'per_ci;
                        }
                    }
                }
            }
            return false;
        }
        // Most-constrained uncovered point.
        let mut pick: Option<(usize, usize)> = None;
        for z in 0..n {
            if st.inc[z] == 0 {
                let avail = k - st.out[z] as usize;
                if avail == 0 {
                    return false;
                }
                if pick.map_or(true, |(a, _)| avail < a) {
                    pick = Some((avail, z));
                }
            }
        }
        let Some((_, z_star)) = pick else {
            // Everything covered: accept iff each ci has a witness now.
            for i in 0..k {
                let ok = (0..n).any(|z| {
                    st.inc[z] == 1 && st.status[cov[z * k + i] as usize] == St::In
                });
                if !ok {
                    return false;
                }
            }
            return true;
        };
        let mut options: Vec<u32> = (0..k)
            .map(|i| cov[z_star * k + i])
            .filter(|&e| st.status[e as usize] == St::Undecided)
            .collect();
        options.sort_unstable();
        let mut tried: Vec<u32> = Vec::with_capacity(options.len());
        for &e in &options {
            set(st, covers_of, e, St::In);
            if dfs(st, covers_of, cov, n, k) {
                return true; // keep state: the In-set is the answer
            }
            set(st, covers_of, e, St::Out);
            tried.push(e);
        }
        for &e in &tried {
            set(st, covers_of, e, St::Undecided);
        }
        false
    }

    if dfs(&mut st, &covers_of, &cov, n, k) {
        let mut w = SubsetMask::empty(n);
        for e in 0..n as u32 {
            if st.status[e as usize] == St::In {
                w.insert(e);
            }
        }
        Some(w)
    } else {
        None
    }
}

/// Visit every canonical size-k representative (identity-containing,
/// lexicographically least translate on the given side) in lexicographic
/// order, stopping early when the visitor returns true.
fn for_each_canonical_rep<F>(g: &FiniteGroup, k: usize, side: Side, mut visit: F) -> Result<()>
where
    F: FnMut(&SubsetMask) -> Result<bool>,
{
    let n = g.order();
    if k == 0 || k > n {
        return Ok(());
    }
    let m = k - 1; // elements chosen from 1..n alongside the identity
    let mut comb: Vec<u32> = (1..=m as u32).collect();
    loop {
        let mut mask = SubsetMask::empty(n);
        mask.insert(0);
        for &x in &comb {
            mask.insert(x);
        }
        if canonical_rep(g, &mask, side)? == mask && visit(&mask)? {
            return Ok(());
        }
        // Next combination in lexicographic order.
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if comb[i] < (n - 1 - (m - 1 - i)) as u32 {
                comb[i] += 1;
                for j in i + 1..m {
                    comb[j] = comb[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The spectrum 𝒮: sizes k ≤ maxSize for which some size-k subset is a
/// minimal complement to some w. Searches canonical translation-orbit
/// representatives only (membership is translation-invariant on the matching
/// side).
pub fn compute_sizes_s(
    g: &FiniteGroup,
    side: Side,
    max_size: Option<usize>,
    caps: &Caps,
) -> Result<SizesSome> {
    let n = g.order();
    if n > caps.s_cap {
        return Err(Error::CapExceeded {
            what: "group order for the full size spectrum",
            value: n,
            cap: caps.s_cap,
        });
    }
    let k_max = max_size.unwrap_or(n).min(n);
    let subgroups = enumerate_subgroups(g)?;
    let mut sizes = Vec::new();
    let mut witnesses = BTreeMap::new();
    for k in 1..=k_max {
        // Whole-group counting obstruction kills every size-k subset at once.
        if k < n && k > 2 * (n - k) {
            continue;
        }
        // The obstruction inequality depends only on (|H|, k); a subset
        // inside a qualifying H can never work, so skip those outright.
        let obstructors: Vec<&Subgroup> = subgroups
            .iter()
            .filter(|h| {
                let hs = h.mask.len();
                hs > k && k > 2 * (n / hs) * (hs - k)
            })
            .collect();
        let mut found: Option<ComplementCertificate> = None;
        for_each_canonical_rep(g, k, side, |rep| {
            for h in &obstructors {
                if rep.is_subset_of(&h.mask)? {
                    return Ok(false);
                }
            }
            if let Some(w) = search_witnessing_w(g, rep, side) {
                found = Some(ComplementCertificate::new(g, &w, rep, side)?);
                return Ok(true);
            }
            Ok(false)
        })?;
        if let Some(cert) = found {
            sizes.push(k);
            witnesses.insert(k, cert);
        }
    }
    Ok(SizesSome { sizes, witnesses })
}

/// The spectrum 𝒜: sizes k for which **every** size-k subset is a minimal
/// complement to some w, decided by exhausting canonical representatives,
/// with subgroup-shaped counterexamples tried first.
pub fn compute_sizes_a(g: &FiniteGroup, side: Side, caps: &Caps) -> Result<SizesEvery> {
    let n = g.order();
    if n > caps.a_cap {
        return Err(Error::CapExceeded {
            what: "group order for the universal size spectrum",
            value: n,
            cap: caps.a_cap,
        });
    }
    let subgroups = enumerate_subgroups(g)?;
    let mut sizes = Vec::new();
    let mut counterexamples = BTreeMap::new();
    'per_k: for k in 1..=n {
        // The obstruction inequality depends only on (|H|, k): any k
        // elements of a qualifying H are a counterexample.
        for h in &subgroups {
            let hs = h.mask.len();
            if hs > k && k > 2 * (n / hs) * (hs - k) {
                let first_k: Vec<u32> = h.mask.iter().take(k).collect();
                counterexamples.insert(k, SubsetMask::from_elements(n, &first_k)?);
                continue 'per_k;
            }
        }
        // No counting obstruction exists for this k at all, so membership
        // of each representative is decided purely by the complete search.
        let mut counterexample: Option<SubsetMask> = None;
        for_each_canonical_rep(g, k, side, |rep| {
            if search_witnessing_w(g, rep, side).is_none() {
                counterexample = Some(rep.clone());
                Ok(true)
            } else {
                Ok(false)
            }
        })?;
        match counterexample {
            Some(ce) => {
                counterexamples.insert(k, ce);
            }
            None => sizes.push(k),
        }
    }
    Ok(SizesEvery {
        sizes,
        counterexamples,
    })
}

/// True iff the ordered product of the sets is the whole group and removing
/// any single element from any factor loses it.
pub fn is_co_minimal_tuple(g: &FiniteGroup, sets: &[SubsetMask]) -> Result<bool> {
    if sets.is_empty() {
        return Err(Error::EmptySet("sets in is_co_minimal_tuple"));
    }
    for s in sets {
        if s.is_empty() {
            return Err(Error::EmptySet("factor in is_co_minimal_tuple"));
        }
        if s.group_order() != g.order() {
            return Err(Error::OrderMismatch {
                mask: s.group_order(),
                group: g.order(),
            });
        }
    }
    let n = g.order();
    let kf = sets.len();
    let identity = SubsetMask::singleton(n, g.identity());
    // prefix[i] = product of sets[..i]; suffix[i] = product of sets[i+1..].
    let mut prefix = vec![identity.clone(); kf + 1];
    for i in 0..kf {
        prefix[i + 1] = product_set(g, &prefix[i], &sets[i])?;
    }
    if !prefix[kf].is_full() {
        return Ok(false);
    }
    let mut suffix = vec![identity; kf + 1];
    for i in (0..kf).rev() {
        suffix[i] = product_set(g, &sets[i], &suffix[i + 1])?;
    }
    for i in 0..kf {
        for a in sets[i].iter() {
            let mut trimmed = sets[i].clone();
            trimmed.remove(a);
            if trimmed.is_empty() {
                // An empty factor makes the product empty, which certainly
                // breaks coverage (n ≥ 1), so this removal always breaks.
                continue;
            }
            let mid = product_set(g, &prefix[i], &trimmed)?;
            if product_set(g, &mid, &suffix[i + 1])?.is_full() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Two-factor case of [`is_co_minimal_tuple`].
pub fn is_co_minimal_pair(g: &FiniteGroup, a: &SubsetMask, b: &SubsetMask) -> Result<bool> {
    is_co_minimal_tuple(g, &[a.clone(), b.clone()])
}

/// Trim a complement pair (a·b = G) to a co-minimal pair by removing
/// removable elements from a (lowest index first, to a fixpoint), then from
/// b. Shrinking b never re-enables a removal in a, so one pass over each
/// factor suffices.
pub fn trim_to_co_minimal_pair(
    g: &FiniteGroup,
    a: &SubsetMask,
    b: &SubsetMask,
) -> Result<(SubsetMask, SubsetMask)> {
    if !product_set(g, a, b)?.is_full() {
        return Err(Error::NotComplement(
            "a·b does not cover the group".into(),
        ));
    }
    let n = g.order();
    let mut a = a.clone();
    let mut b = b.clone();
    let mut cover = vec![0u32; n];
    for x in a.iter() {
        for y in b.iter() {
            cover[g.mul(x, y) as usize] += 1;
        }
    }
    // Removing x from a deletes the |b| pairs (x, y); they hit |b| distinct
    // points since y ↦ x·y is injective. Symmetrically for b.
    loop {
        let mut removed = false;
        for x in a.iter() {
            if a.len() > 1 && b.iter().all(|y| cover[g.mul(x, y) as usize] >= 2) {
                for y in b.iter() {
                    cover[g.mul(x, y) as usize] -= 1;
                }
                a.remove(x);
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    loop {
        let mut removed = false;
        for y in b.iter() {
            if b.len() > 1 && a.iter().all(|x| cover[g.mul(x, y) as usize] >= 2) {
                for x in a.iter() {
                    cover[g.mul(x, y) as usize] -= 1;
                }
                b.remove(y);
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    debug_assert!(is_co_minimal_pair(g, &a, &b)?);
    Ok((a, b))
}

/// The counting inequality every minimal complement satisfies:
/// |c|·(2|w| − 1) ≤ n·|w|.
pub fn bound_check(g: &FiniteGroup, cert: &ComplementCertificate) -> bool {
    let csz = cert.c.len() as u128;
    let wsz = cert.w.len() as u128;
    csz * (2 * wsz - 1) <= g.order() as u128 * wsz
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::make_cyclic(n)
    }

    fn mask(n: usize, elems: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(n, elems).unwrap()
    }

    #[test]
    fn minimal_complement_examples() {
        let g = z(6);
        assert!(is_minimal_complement(
            &g,
            &mask(6, &[0, 3]),
            &mask(6, &[0, 1, 2]),
            Side::Right
        ));
        assert!(is_minimal_complement(
            &g,
            &mask(6, &[0]),
            &SubsetMask::full(6),
            Side::Right
        ));
        assert!(!is_minimal_complement(
            &g,
            &SubsetMask::full(6),
            &SubsetMask::full(6),
            Side::Right
        ));
        // Five consecutive residues against w = {0,5} only reach 0..9.
        let g12 = z(12);
        assert!(!is_minimal_complement(
            &g12,
            &mask(12, &[0, 5]),
            &mask(12, &[0, 1, 2, 3, 4]),
            Side::Right
        ));
        // Empty and mismatched inputs are false, not panics.
        assert!(!is_minimal_complement(
            &g,
            &SubsetMask::empty(6),
            &mask(6, &[0]),
            Side::Right
        ));
        assert!(!is_minimal_complement(
            &z(5),
            &mask(6, &[0]),
            &mask(6, &[0]),
            Side::Right
        ));
    }

    #[test]
    fn trim_full_w_leaves_identity_singleton() {
        let g = z(6);
        let cert = trim_to_minimal_complement(&g, &SubsetMask::full(6), Side::Right).unwrap();
        assert_eq!(cert.c, vec![0]);
        cert.verify(&g).unwrap();
    }

    #[test]
    fn trim_singleton_w_keeps_everything() {
        let g = z(6);
        let cert =
            trim_to_minimal_complement(&g, &SubsetMask::singleton(6, 0), Side::Right).unwrap();
        assert_eq!(cert.c.len(), 6);
        cert.verify(&g).unwrap();
    }

    #[test]
    fn trim_two_element_w_in_z5() {
        let g = z(5);
        let cert = trim_to_minimal_complement(&g, &mask(5, &[0, 1]), Side::Right).unwrap();
        assert_eq!(cert.c.len(), 3);
        assert_eq!(cert.c, vec![0, 1, 3]);
        cert.verify(&g).unwrap();
    }

    #[test]
    fn obstruction_inside_index_two_subgroup() {
        let g = z(12);
        let c = mask(12, &[0, 2, 4, 6, 8]);
        match is_minimal_to_some(&g, &c, Side::Right, 24).unwrap() {
            MembershipVerdict::NotMinimalToAny {
                search_exhausted,
                obstruction: Some(h),
            } => {
                assert!(!search_exhausted);
                assert_eq!(h.mask.len(), 6);
                assert!(c.is_subset_of(&h.mask).unwrap());
            }
            v => panic!("expected an obstruction, got {v:?}"),
        }
    }

    #[test]
    fn singleton_is_minimal_with_full_w() {
        let g = z(7);
        match is_minimal_to_some(&g, &mask(7, &[0]), Side::Right, 24).unwrap() {
            MembershipVerdict::Minimal(cert) => {
                assert_eq!(cert.w.len(), 7);
                cert.verify(&g).unwrap();
            }
            v => panic!("expected minimal, got {v:?}"),
        }
    }

    #[test]
    fn oversized_subset_hits_whole_group_obstruction() {
        let g = z(6);
        let c = mask(6, &[0, 1, 2, 3, 4]);
        match is_minimal_to_some(&g, &c, Side::Right, 24).unwrap() {
            MembershipVerdict::NotMinimalToAny {
                obstruction: Some(h),
                ..
            } => assert_eq!(h.mask.len(), 6),
            v => panic!("expected whole-group obstruction, got {v:?}"),
        }
    }

    #[test]
    fn search_exhaustion_without_obstruction() {
        // {0,1,2,4} in ℤ/6: any witnessing w needs |w| ≤ 2 by counting, and
        // the three viable two-element w's all starve element 1 of a
        // witness, so the complete search must come back empty-handed.
        let g = z(6);
        let c = mask(6, &[0, 1, 2, 4]);
        match is_minimal_to_some(&g, &c, Side::Right, 24).unwrap() {
            MembershipVerdict::NotMinimalToAny {
                search_exhausted,
                obstruction,
            } => {
                assert!(search_exhausted);
                assert!(obstruction.is_none());
            }
            v => panic!("expected exhausted search, got {v:?}"),
        }
    }

    #[test]
    fn budget_error_beyond_cap() {
        let g = z(30);
        let c = mask(30, &[0, 1, 2]);
        assert!(matches!(
            is_minimal_to_some(&g, &c, Side::Right, 24),
            Err(Error::BudgetExhausted(_))
        ));
    }

    #[test]
    fn sizes_s_of_small_cyclic_groups() {
        let caps = Caps::default();
        let s6 = compute_sizes_s(&z(6), Side::Right, None, &caps).unwrap();
        assert_eq!(s6.sizes, vec![1, 2, 3, 4, 6]);
        for (k, cert) in &s6.witnesses {
            assert_eq!(cert.c.len(), *k);
            cert.verify(&z(6)).unwrap();
        }
        let s8 = compute_sizes_s(&z(8), Side::Right, None, &caps).unwrap();
        assert_eq!(s8.sizes, vec![1, 2, 3, 4, 5, 8]);
        let s1 = compute_sizes_s(&FiniteGroup::trivial(), Side::Right, None, &caps).unwrap();
        assert_eq!(s1.sizes, vec![1]);
    }

    #[test]
    fn sizes_s_respects_max_size() {
        let caps = Caps::default();
        let s = compute_sizes_s(&z(8), Side::Right, Some(3), &caps).unwrap();
        assert_eq!(s.sizes, vec![1, 2, 3]);
    }

    #[test]
    fn sizes_s_cap_is_enforced() {
        let caps = Caps::default();
        assert!(matches!(
            compute_sizes_s(&z(16), Side::Right, None, &caps),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn sizes_a_of_z6() {
        let caps = Caps::default();
        let a = compute_sizes_a(&z(6), Side::Right, &caps).unwrap();
        // 1 and 2 are always in (small sets are always minimal complements);
        // {0,1,2,4} rules out 4; counting rules out 5; 6 is the whole group.
        assert!(a.sizes.contains(&1));
        assert!(a.sizes.contains(&2));
        assert!(a.sizes.contains(&6));
        assert!(!a.sizes.contains(&4));
        assert!(!a.sizes.contains(&5));
        let ce4 = &a.counterexamples[&4];
        assert!(matches!(
            is_minimal_to_some(&z(6), ce4, Side::Right, 24).unwrap(),
            MembershipVerdict::NotMinimalToAny { .. }
        ));
    }

    #[test]
    fn sizes_a_excludes_five_in_z12() {
        let caps = Caps::default();
        let a = compute_sizes_a(&z(12), Side::Right, &caps).unwrap();
        assert!(!a.sizes.contains(&5));
        // The recorded counterexample sits inside a proper subgroup.
        let ce = &a.counterexamples[&5];
        assert_eq!(ce.len(), 5);
        let subs = enumerate_subgroups(&z(12)).unwrap();
        assert!(subs
            .iter()
            .any(|h| h.mask.len() == 6 && ce.is_subset_of(&h.mask).unwrap()));
        // And 𝒜 ⊆ 𝒮 with matching endpoints.
        let s = compute_sizes_s(&z(12), Side::Right, None, &caps).unwrap();
        for k in &a.sizes {
            assert!(s.sizes.contains(k));
        }
        assert!(a.sizes.contains(&1) && a.sizes.contains(&12));
    }

    #[test]
    fn membership_is_translation_invariant() {
        let g = z(8);
        for elems in [&[0u32, 1, 2][..], &[0, 1, 2, 4][..], &[0, 2, 5][..]] {
            let c = mask(8, elems);
            let base = is_minimal_to_some(&g, &c, Side::Right, 24)
                .unwrap()
                .is_minimal();
            for x in 1..8u32 {
                let shifted = crate::translate(&g, x, &c, Side::Right).unwrap();
                let v = is_minimal_to_some(&g, &shifted, Side::Right, 24)
                    .unwrap()
                    .is_minimal();
                assert_eq!(base, v, "translation by {x} changed the verdict");
            }
        }
    }

    #[test]
    fn left_and_right_agree_on_abelian_groups() {
        let g = z(6);
        let c = mask(6, &[0, 1, 2, 4]);
        let r = is_minimal_to_some(&g, &c, Side::Right, 24).unwrap();
        let l = is_minimal_to_some(&g, &c, Side::Left, 24).unwrap();
        assert_eq!(r.is_minimal(), l.is_minimal());
        let sr = compute_sizes_s(&g, Side::Right, None, &Caps::default()).unwrap();
        let sl = compute_sizes_s(&g, Side::Left, None, &Caps::default()).unwrap();
        assert_eq!(sr.sizes, sl.sizes);
    }

    #[test]
    fn co_minimal_examples() {
        let g = z(6);
        assert!(is_co_minimal_pair(&g, &mask(6, &[0, 3]), &mask(6, &[0, 1, 2])).unwrap());
        assert!(is_co_minimal_pair(&g, &SubsetMask::full(6), &mask(6, &[0])).unwrap());
        assert!(!is_co_minimal_pair(&g, &SubsetMask::full(6), &SubsetMask::full(6)).unwrap());
        let g4 = z(4);
        assert!(is_co_minimal_tuple(
            &g4,
            &[mask(4, &[0]), mask(4, &[0, 2]), mask(4, &[0, 1])]
        )
        .unwrap());
        // Padding one factor breaks co-minimality without breaking coverage.
        assert!(!is_co_minimal_tuple(
            &g4,
            &[mask(4, &[0, 1]), mask(4, &[0, 2]), mask(4, &[0, 1])]
        )
        .unwrap());
        assert!(matches!(
            is_co_minimal_tuple(&g4, &[]),
            Err(Error::EmptySet(_))
        ));
    }

    #[test]
    fn trim_to_co_minimal_pair_examples() {
        let g = z(6);
        let (a, b) = trim_to_co_minimal_pair(&g, &SubsetMask::full(6), &SubsetMask::full(6))
            .unwrap();
        assert!(is_co_minimal_pair(&g, &a, &b).unwrap());
        let (a, b) =
            trim_to_co_minimal_pair(&g, &mask(6, &[0, 3]), &mask(6, &[0, 1, 2])).unwrap();
        assert_eq!(a.elements(), vec![0, 3]);
        assert_eq!(b.elements(), vec![0, 1, 2]);
        assert!(matches!(
            trim_to_co_minimal_pair(&g, &mask(6, &[0]), &mask(6, &[0, 1])),
            Err(Error::NotComplement(_))
        ));
    }

    #[test]
    fn bound_check_on_certificates() {
        let g = z(6);
        let cert = ComplementCertificate::new(
            &g,
            &mask(6, &[0, 3]),
            &mask(6, &[0, 1, 2]),
            Side::Right,
        )
        .unwrap();
        assert!(bound_check(&g, &cert));
    }
}
