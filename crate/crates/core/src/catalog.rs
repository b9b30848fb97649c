//! The shipped group catalog: every group of order ≤ 16, as validated
//! Cayley-table data, with classification tags and family enumeration.
//!
//! Family spectra quantify over *all* groups of order n for a family tag
//! (cyclic, abelian, nilpotent, supersolvable, solvable, or unrestricted).
//! The cyclic and abelian families are enumerable for any order; the rest
//! are answered from the catalog, which is complete exactly for n ≤ 16 —
//! callers get an explicit completeness flag, never a silent guess. For
//! nilpotent groups one extension is sound at any order: a finite group is
//! nilpotent iff it is the direct product of its Sylow subgroups, so when
//! every Sylow order is ≤ 16 the products of catalog p-groups enumerate the
//! family completely.
//!
//! The data file `data/catalog.txt` is the source of truth at runtime
//! (embedded at compile time); the same groups are also constructed
//! programmatically here, and the test suite asserts the two agree byte for
//! byte, that the catalog's per-order counts match the classification of
//! groups of order ≤ 16, and that entries are pairwise non-isomorphic.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

#[cfg(test)]
use crate::group::{enumerate_subgroups, quotient, subgroup_as_group};
use crate::group::FiniteGroup;
#[cfg(test)]
use crate::subset::SubsetMask;
use crate::{Error, Result};

/// Largest order for which the catalog lists every group.
pub const CATALOG_COMPLETE_ORDER: usize = 16;

static CATALOG_DATA: &str = include_str!("../data/catalog.txt");
static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();

/// A catalog group together with its classification flags (each computed
/// from the table alone).
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub group: FiniteGroup,
    pub cyclic: bool,
    pub abelian: bool,
    pub nilpotent: bool,
    pub supersolvable: bool,
    pub solvable: bool,
}

impl CatalogEntry {
    pub fn classify(group: FiniteGroup) -> Result<Self> {
        let cyclic = group.is_cyclic();
        let abelian = group.is_abelian();
        let nilpotent = group.is_nilpotent();
        let supersolvable = group.is_supersolvable()?;
        let solvable = group.is_solvable();
        Ok(CatalogEntry {
            group,
            cyclic,
            abelian,
            nilpotent,
            supersolvable,
            solvable,
        })
    }
}

/// Group-family tags, ordered from the most restrictive class to no
/// restriction at all. Each class implies the next, so the intersection
/// spectra they induce form a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyTag {
    #[serde(rename = "cyc")]
    Cyclic,
    #[serde(rename = "ab")]
    Abelian,
    #[serde(rename = "nil")]
    Nilpotent,
    #[serde(rename = "ssol")]
    Supersolvable,
    #[serde(rename = "sol")]
    Solvable,
    #[serde(rename = "all")]
    All,
}

impl FamilyTag {
    pub const ALL_TAGS: [FamilyTag; 6] = [
        FamilyTag::Cyclic,
        FamilyTag::Abelian,
        FamilyTag::Nilpotent,
        FamilyTag::Supersolvable,
        FamilyTag::Solvable,
        FamilyTag::All,
    ];

    pub fn admits(&self, e: &CatalogEntry) -> bool {
        match self {
            FamilyTag::Cyclic => e.cyclic,
            FamilyTag::Abelian => e.abelian,
            FamilyTag::Nilpotent => e.nilpotent,
            FamilyTag::Supersolvable => e.supersolvable,
            FamilyTag::Solvable => e.solvable,
            FamilyTag::All => true,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyTag::Cyclic => "cyc",
            FamilyTag::Abelian => "ab",
            FamilyTag::Nilpotent => "nil",
            FamilyTag::Supersolvable => "ssol",
            FamilyTag::Solvable => "sol",
            FamilyTag::All => "all",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyc" | "cyclic" => Ok(FamilyTag::Cyclic),
            "ab" | "abelian" => Ok(FamilyTag::Abelian),
            "nil" | "nilpotent" => Ok(FamilyTag::Nilpotent),
            "ssol" | "supersolvable" => Ok(FamilyTag::Supersolvable),
            "sol" | "solvable" => Ok(FamilyTag::Solvable),
            "all" | "any" => Ok(FamilyTag::All),
            other => Err(Error::Parse(format!("unknown family tag {other:?}"))),
        }
    }
}

/// The full catalog, parsed and classified once.
pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG.get_or_init(|| {
        parse_catalog_data(CATALOG_DATA)
            .expect("embedded catalog data is valid")
            .into_iter()
            .map(|g| CatalogEntry::classify(g).expect("catalog groups classify"))
            .collect()
    })
}

/// Catalog entries of one order, in file order.
pub fn groups_of_order(n: usize) -> Vec<&'static CatalogEntry> {
    catalog().iter().filter(|e| e.group.order() == n).collect()
}

/// All groups of order n in the given family, with a flag telling whether
/// the list provably contains every such group.
pub fn family_groups(n: usize, tag: FamilyTag) -> Result<(Vec<FiniteGroup>, bool)> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    if n <= CATALOG_COMPLETE_ORDER {
        let list = groups_of_order(n)
            .into_iter()
            .filter(|e| tag.admits(e))
            .map(|e| e.group.clone())
            .collect();
        return Ok((list, true));
    }
    match tag {
        FamilyTag::Cyclic => Ok((vec![FiniteGroup::make_cyclic(n)], true)),
        FamilyTag::Abelian => Ok((abelian_groups_of_order(n)?, true)),
        FamilyTag::Nilpotent => {
            if let Some(list) = sylow_products(n)? {
                Ok((list, true))
            } else {
                // Some Sylow order is beyond the catalog; fall back to the
                // abelian groups, which are always enumerable but need not
                // exhaust the family.
                Ok((abelian_groups_of_order(n)?, false))
            }
        }
        FamilyTag::Supersolvable | FamilyTag::Solvable | FamilyTag::All => {
            let mut list: Vec<FiniteGroup> = Vec::new();
            if let Some(nil) = sylow_products(n)? {
                list.extend(nil);
            } else {
                list.extend(abelian_groups_of_order(n)?);
            }
            if n % 2 == 0 && n >= 6 {
                list.push(FiniteGroup::make_dihedral(n / 2)?);
            }
            if n % 4 == 0 && n >= 8 {
                list.push(dicyclic(n / 4)?);
            }
            let mut kept: Vec<FiniteGroup> = Vec::new();
            for g in list {
                let admitted = match tag {
                    FamilyTag::Supersolvable => g.is_supersolvable()?,
                    FamilyTag::Solvable => g.is_solvable(),
                    _ => true,
                };
                if admitted && !kept.iter().any(|h| crate::group::isomorphic(h, &g)) {
                    kept.push(g);
                }
            }
            Ok((kept, false))
        }
    }
}

/// Nilpotent groups of order n as direct products of catalog Sylow
/// subgroups, or None when some Sylow order exceeds the catalog.
fn sylow_products(n: usize) -> Result<Option<Vec<FiniteGroup>>> {
    let factors = prime_power_factorization(n);
    if factors.iter().any(|&(_, _, pe)| pe > CATALOG_COMPLETE_ORDER) {
        return Ok(None);
    }
    let per_prime: Vec<Vec<&CatalogEntry>> = factors
        .iter()
        .map(|&(_, _, pe)| groups_of_order(pe))
        .collect();
    let mut out: Vec<FiniteGroup> = vec![FiniteGroup::trivial()];
    for groups in per_prime {
        let mut next = Vec::with_capacity(out.len() * groups.len());
        for base in &out {
            for e in &groups {
                next.push(if base.order() == 1 {
                    e.group.clone()
                } else {
                    FiniteGroup::direct_product(base, &e.group)?
                });
            }
        }
        out = next;
    }
    Ok(Some(out))
}

/// All abelian groups of order n: one per choice of partition of each prime
/// exponent, factors listed as prime powers in descending order.
pub fn abelian_groups_of_order(n: usize) -> Result<Vec<FiniteGroup>> {
    let factors = prime_power_factorization(n);
    // Per prime: the list of factor multisets, one per partition of e.
    let mut per_prime: Vec<Vec<Vec<usize>>> = Vec::new();
    for &(p, e, _) in &factors {
        let parts = partitions(e);
        per_prime.push(
            parts
                .iter()
                .map(|part| part.iter().map(|&k| p.pow(k as u32)).collect())
                .collect(),
        );
    }
    let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
    for lists in per_prime {
        let mut next = Vec::with_capacity(combos.len() * lists.len());
        for c in &combos {
            for l in &lists {
                let mut merged = c.clone();
                merged.extend(l.iter().copied());
                next.push(merged);
            }
        }
        combos = next;
    }
    let mut out = Vec::with_capacity(combos.len());
    for mut factors in combos {
        factors.sort_unstable_by(|a, b| b.cmp(a));
        if factors.is_empty() {
            factors.push(1);
        }
        out.push(FiniteGroup::make_abelian(&factors)?);
    }
    out.sort_by(|a, b| a.label().cmp(b.label()));
    Ok(out)
}

/// (p, e, p^e) for each prime dividing n.
fn prime_power_factorization(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let mut rem = n;
    let mut p = 2;
    while p * p <= rem {
        if rem % p == 0 {
            let mut e = 0;
            let mut pe = 1;
            while rem % p == 0 {
                rem /= p;
                e += 1;
                pe *= p;
            }
            out.push((p, e, pe));
        }
        p += 1;
    }
    if rem > 1 {
        out.push((rem, 1, rem));
    }
    out
}

/// Integer partitions of e, each in weakly decreasing order.
fn partitions(e: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e.max(1), &mut Vec::new(), &mut out);
    out
}

// ----------------------------------------------------------------------
// Constructors for the non-abelian catalog groups beyond dihedral/symmetric
// ----------------------------------------------------------------------

/// Dicyclic group of order 4m: ⟨a, b | a^{2m} = e, b² = a^m, b·a·b^{-1} =
/// a^{-1}⟩. Element a^i·b^f is indexed f·2m + i; m = 2 gives the quaternion
/// group.
fn dicyclic(m: usize) -> Result<FiniteGroup> {
    if m < 1 {
        return Err(Error::InvalidArgument("dicyclic needs m ≥ 1".into()));
    }
    let two_m = 2 * m;
    let n = 4 * m;
    let idx = |i: usize, f: usize| (f * two_m + i) as u32;
    let mut table = vec![0u32; n * n];
    for i in 0..two_m {
        for f in 0..2 {
            for j in 0..two_m {
                for gflag in 0..2 {
                    // (a^i b^f)(a^j b^g): pushing b past a^j inverts it, and
                    // b² contributes a^m when both flags are set.
                    let (ii, ff) = if f == 0 {
                        ((i + j) % two_m, gflag)
                    } else if gflag == 0 {
                        ((i + two_m - j) % two_m, 1)
                    } else {
                        ((i + two_m - j + m) % two_m, 0)
                    };
                    table[(idx(i, f) as usize) * n + idx(j, gflag) as usize] = idx(ii, ff);
                }
            }
        }
    }
    FiniteGroup::from_table(format!("dicyclic:{m}"), n, table)
}

/// Order-16 group ⟨a, b | a^8 = b² = e, b·a·b^{-1} = a^3⟩.
#[cfg(test)]
fn semidihedral_16() -> Result<FiniteGroup> {
    two_generator_16("semidihedral:16", 3)
}

/// Order-16 group ⟨a, b | a^8 = b² = e, b·a·b^{-1} = a^5⟩.
#[cfg(test)]
fn modular_16() -> Result<FiniteGroup> {
    two_generator_16("modular:16", 5)
}

/// ⟨a, b | a^8 = b² = e, b·a·b^{-1} = a^t⟩ with element a^i·b^f at index
/// f·8 + i; multiplication (a^i b^f)(a^j b^g) = a^{i + t^f·j} b^{f+g}.
#[cfg(test)]
fn two_generator_16(label: &str, t: usize) -> Result<FiniteGroup> {
    let n = 16;
    let idx = |i: usize, f: usize| (f * 8 + i) as u32;
    let mut table = vec![0u32; n * n];
    for i in 0..8 {
        for f in 0..2 {
            for j in 0..8 {
                for gflag in 0..2 {
                    let tw = if f == 1 { t } else { 1 };
                    let ii = (i + tw * j) % 8;
                    let ff = (f + gflag) % 2;
                    table[(idx(i, f) as usize) * n + idx(j, gflag) as usize] = idx(ii, ff);
                }
            }
        }
    }
    FiniteGroup::from_table(label, n, table)
}

/// ℤ/4 ⋊ ℤ/4 with the inverting action: (i, j)·(u, v) =
/// (i + (−1)^j·u, j + v), element (i, j) at index i·4 + j.
#[cfg(test)]
fn semidirect_4_4() -> Result<FiniteGroup> {
    let n = 16;
    let idx = |i: usize, j: usize| (i * 4 + j) as u32;
    let mut table = vec![0u32; n * n];
    for i in 0..4 {
        for j in 0..4 {
            for u in 0..4 {
                for v in 0..4 {
                    let uu = if j % 2 == 1 { (4 - u) % 4 } else { u };
                    table[(idx(i, j) as usize) * n + idx(u, v) as usize] =
                        idx((i + uu) % 4, (j + v) % 4);
                }
            }
        }
    }
    FiniteGroup::from_table("semidirect:4x4", n, table)
}

/// (ℤ/4 × ℤ/2) ⋊ ℤ/2: (i, j, k)·(u, v, w) = (i + u, j + v + k·u, k + w)
/// with i, u mod 4 and the rest mod 2; element (i, j, k) at index
/// i·4 + j·2 + k.
#[cfg(test)]
fn semidirect_4_2_2() -> Result<FiniteGroup> {
    let n = 16;
    let idx = |i: usize, j: usize, k: usize| (i * 4 + j * 2 + k) as u32;
    let mut table = vec![0u32; n * n];
    for i in 0..4 {
        for j in 0..2 {
            for k in 0..2 {
                for u in 0..4 {
                    for v in 0..2 {
                        for w in 0..2 {
                            let jj = (j + v + k * u) % 2;
                            table[(idx(i, j, k) as usize) * n + idx(u, v, w) as usize] =
                                idx((i + u) % 4, jj, (k + w) % 2);
                        }
                    }
                }
            }
        }
    }
    FiniteGroup::from_table("semidirect:4x2:2", n, table)
}

/// The central product of the order-8 dihedral group and ℤ/4: their direct
/// product modulo the order-2 central subgroup ⟨(r², 2)⟩.
#[cfg(test)]
fn central_product_d4_z4() -> Result<FiniteGroup> {
    let d4 = FiniteGroup::make_dihedral(4)?;
    let z4 = FiniteGroup::make_cyclic(4);
    let p = FiniteGroup::direct_product(&d4, &z4)?;
    // r² is dihedral index 2 and pairs with 2 ∈ ℤ/4 at product index 2·4+2.
    let center_mask = SubsetMask::from_elements(32, &[0u32, 10])?;
    let h = enumerate_subgroups(&p)?
        .into_iter()
        .find(|s| s.mask == center_mask)
        .ok_or_else(|| Error::ConstructionFailed("central subgroup not found".into()))?;
    let q = quotient(&p, &h)?;
    Ok(q.group.with_label("central:d4z4"))
}

/// The alternating group on 4 letters, as the unique order-12 subgroup of
/// the symmetric group.
#[cfg(test)]
fn alternating_4() -> Result<FiniteGroup> {
    let s4 = FiniteGroup::make_symmetric(4)?;
    let h = enumerate_subgroups(&s4)?
        .into_iter()
        .find(|s| s.mask.len() == 12)
        .ok_or_else(|| Error::ConstructionFailed("A4 not found in S4".into()))?;
    let (g, _) = subgroup_as_group(&s4, &h.mask)?;
    Ok(g.with_label("alternating:4"))
}

/// Every group of order ≤ 16, constructed programmatically, sorted by
/// (order, label). This is the generator for — and the cross-check of —
/// the shipped data file.
#[cfg(test)]
pub(crate) fn programmatic_catalog() -> Result<Vec<FiniteGroup>> {
    let mut out: Vec<FiniteGroup> = Vec::new();
    for n in 1..=CATALOG_COMPLETE_ORDER {
        out.extend(abelian_groups_of_order(n)?);
    }
    // Present every cyclic group with the canonical mod-n table rather than
    // a mixed-radix abelian numbering.
    for g in &mut out {
        if g.is_cyclic() {
            *g = FiniteGroup::make_cyclic(g.order());
        }
    }
    // Non-abelian groups, order by order.
    out.push(FiniteGroup::make_symmetric(3)?); // order 6
    out.push(FiniteGroup::make_dihedral(4)?); // order 8
    out.push(dicyclic(2)?); // order 8 (quaternion)
    out.push(FiniteGroup::make_dihedral(5)?); // order 10
    out.push(FiniteGroup::make_dihedral(6)?); // order 12
    out.push(dicyclic(3)?); // order 12
    out.push(alternating_4()?); // order 12
    out.push(FiniteGroup::make_dihedral(7)?); // order 14
    out.push(FiniteGroup::make_dihedral(8)?); // order 16
    out.push(dicyclic(4)?); // order 16 (generalized quaternion)
    out.push(semidihedral_16()?);
    out.push(modular_16()?);
    out.push(semidirect_4_4()?);
    out.push(semidirect_4_2_2()?);
    let d4 = FiniteGroup::make_dihedral(4)?;
    let q8 = dicyclic(2)?;
    let z2 = FiniteGroup::make_cyclic(2);
    out.push(FiniteGroup::direct_product(&d4, &z2)?); // order 16
    out.push(FiniteGroup::direct_product(&q8, &z2)?); // order 16
    out.push(central_product_d4_z4()?); // order 16
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.label().cmp(b.label()))
    });
    Ok(out)
}

// ----------------------------------------------------------------------
// Data file format: entries of the form "= label" followed by Cayley text
// ----------------------------------------------------------------------

#[cfg(test)]
pub(crate) fn render_catalog_data(groups: &[FiniteGroup]) -> String {
    let mut s = String::new();
    for g in groups {
        s.push_str("= ");
        s.push_str(g.label());
        s.push('\n');
        s.push_str(&g.save_cayley_table());
    }
    s
}

pub(crate) fn parse_catalog_data(data: &str) -> Result<Vec<FiniteGroup>> {
    let mut out = Vec::new();
    let mut label: Option<&str> = None;
    let mut body = String::new();
    let flush = |label: Option<&str>, body: &mut String, out: &mut Vec<FiniteGroup>| -> Result<()> {
        if let Some(l) = label {
            if body.trim().is_empty() {
                return Err(Error::Parse(format!("catalog entry {l:?} has no table")));
            }
            let g = FiniteGroup::load_cayley_table(body)?.with_label(l);
            out.push(g);
        }
        body.clear();
        Ok(())
    };
    for line in data.lines() {
        if let Some(rest) = line.strip_prefix("= ") {
            flush(label, &mut body, &mut out)?;
            label = Some(rest.trim());
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    flush(label, &mut body, &mut out)?;
    if out.is_empty() {
        return Err(Error::Parse("catalog data holds no entries".into()));
    }
    Ok(out)
}
