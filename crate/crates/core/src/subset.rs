//! Dense bitmask subsets of a finite group and the sumset/translate kernel.
//!
//! `SubsetMask` is a fixed-width array of 64-bit words sized for the group it
//! was created against. Every operation that pairs a mask with a group checks
//! the recorded order, so a mask cannot silently migrate between groups of
//! different orders.
//!
//! The product kernel is the hot loop of every search in this crate: a·b is
//! assembled by OR-ing, for each x ∈ a, the image of b under the row
//! permutation y ↦ x·y read straight off the multiplication table. No
//! allocation happens inside the inner loops beyond the output mask itself.

use crate::group::FiniteGroup;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Which side a complement lives on. `Right` means `w·c = G` (c is a right
/// complement to w); `Left` means `c·w = G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Default for Side {
    fn default() -> Self {
        Side::Right
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            other => Err(Error::Parse(format!("unknown side {other:?}"))),
        }
    }
}

/// A subset of the elements `0..n` of a fixed group, stored as packed bits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    n: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(n: usize) -> usize {
    (n + 63) / 64
}

impl SubsetMask {
    /// The empty subset of a group of order `n`.
    pub fn empty(n: usize) -> Self {
        SubsetMask {
            n,
            words: vec![0u64; word_count(n)],
        }
    }

    /// The full subset {0, …, n−1}.
    pub fn full(n: usize) -> Self {
        let mut m = SubsetMask::empty(n);
        for w in m.words.iter_mut() {
            *w = !0u64;
        }
        m.clear_tail();
        m
    }

    /// Singleton {x}. Panics if `x ≥ n`.
    pub fn singleton(n: usize, x: u32) -> Self {
        assert!((x as usize) < n, "element {x} out of range for order {n}");
        let mut m = SubsetMask::empty(n);
        m.insert(x);
        m
    }

    /// Build from an iterator of element indices, rejecting out-of-range ones.
    pub fn from_elements<I>(n: usize, elems: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: std::borrow::Borrow<u32>,
    {
        let mut m = SubsetMask::empty(n);
        for x in elems {
            let x = *std::borrow::Borrow::borrow(&x);
            if (x as usize) >= n {
                return Err(Error::InvalidArgument(format!(
                    "element {x} out of range for order {n}"
                )));
            }
            m.insert(x);
        }
        Ok(m)
    }

    /// Group order this mask was sized for.
    #[inline]
    pub fn group_order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        let i = x as usize;
        i < self.n && (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: u32) {
        let i = x as usize;
        debug_assert!(i < self.n);
        self.words[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, x: u32) {
        let i = x as usize;
        debug_assert!(i < self.n);
        self.words[i >> 6] &= !(1u64 << (i & 63));
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == SubsetMask::full(self.n)
    }

    /// Lowest element, if any.
    pub fn first(&self) -> Option<u32> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some((wi * 64) as u32 + w.trailing_zeros());
            }
        }
        None
    }

    /// Iterate elements in ascending order.
    pub fn iter(&self) -> Bits<'_> {
        Bits {
            words: &self.words,
            wi: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Collect elements in ascending order.
    pub fn elements(&self) -> Vec<u32> {
        self.iter().collect()
    }

    fn clear_tail(&mut self) {
        let used = self.n & 63;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    fn check_same(&self, other: &SubsetMask) -> Result<()> {
        if self.n != other.n {
            return Err(Error::OrderMismatch {
                mask: other.n,
                group: self.n,
            });
        }
        Ok(())
    }

    pub fn union_with(&mut self, other: &SubsetMask) -> Result<()> {
        self.check_same(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        Ok(())
    }

    pub fn intersect_with(&mut self, other: &SubsetMask) -> Result<()> {
        self.check_same(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        Ok(())
    }

    pub fn subtract(&mut self, other: &SubsetMask) -> Result<()> {
        self.check_same(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        Ok(())
    }

    pub fn union(&self, other: &SubsetMask) -> Result<SubsetMask> {
        let mut m = self.clone();
        m.union_with(other)?;
        Ok(m)
    }

    pub fn intersection(&self, other: &SubsetMask) -> Result<SubsetMask> {
        let mut m = self.clone();
        m.intersect_with(other)?;
        Ok(m)
    }

    pub fn difference(&self, other: &SubsetMask) -> Result<SubsetMask> {
        let mut m = self.clone();
        m.subtract(other)?;
        Ok(m)
    }

    /// Complement within {0,…,n−1}.
    pub fn complement(&self) -> SubsetMask {
        let mut m = self.clone();
        for w in m.words.iter_mut() {
            *w = !*w;
        }
        m.clear_tail();
        m
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> Result<bool> {
        self.check_same(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0))
    }

    pub fn is_disjoint_from(&self, other: &SubsetMask) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0))
    }

    /// Count of elements in the intersection, without allocating.
    pub fn intersection_len(&self, other: &SubsetMask) -> Result<usize> {
        self.check_same(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum())
    }

    /// Order masks by the lexicographic order of their ascending element
    /// lists (e.g. {0,3} < {1,2}, and {0,1} < {0,1,2} as a proper prefix).
    pub fn cmp_elementwise(&self, other: &SubsetMask) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        debug_assert_eq!(self.n, other.n);
        // Find the lowest element where the two sets differ.
        let mut lowest_diff: Option<u32> = None;
        for (wi, (&a, &b)) in self.words.iter().zip(&other.words).enumerate() {
            let d = a ^ b;
            if d != 0 {
                lowest_diff = Some((wi * 64) as u32 + d.trailing_zeros());
                break;
            }
        }
        let Some(i) = lowest_diff else {
            return Ordering::Equal;
        };
        // The sets agree below i. If the one lacking i has no element above i,
        // its list is a proper prefix of the other's and therefore smaller;
        // otherwise the set containing i is smaller.
        let (with_i, without_i) = if self.contains(i) {
            (self, other)
        } else {
            (other, self)
        };
        let without_has_later = without_i.iter().any(|x| x > i);
        let with_is_less = without_has_later;
        if std::ptr::eq(with_i, self) {
            if with_is_less {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if with_is_less {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Render as sorted comma-separated indices in braces, e.g. `{0,1,5}`.
    pub fn to_brace_string(&self) -> String {
        let mut s = String::from("{");
        let mut sep = false;
        for x in self.iter() {
            if sep {
                s.push(',');
            }
            s.push_str(&x.to_string());
            sep = true;
        }
        s.push('}');
        s
    }

    /// Parse the `{0,1,5}` text form.
    pub fn parse_brace_string(n: usize, text: &str) -> Result<SubsetMask> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("mask text must be braced: {text:?}")))?;
        let mut m = SubsetMask::empty(n);
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let x: u32 = part
                .parse()
                .map_err(|_| Error::Parse(format!("bad element index {part:?}")))?;
            if (x as usize) >= n {
                return Err(Error::InvalidArgument(format!(
                    "element {x} out of range for order {n}"
                )));
            }
            m.insert(x);
        }
        Ok(m)
    }

    /// Raw words (read-only); used by hashing and dedup keys.
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl std::fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SubsetMask(n={}, {})", self.n, self.to_brace_string())
    }
}

/// Ascending-order bit iterator over a mask.
pub struct Bits<'a> {
    words: &'a [u64],
    wi: usize,
    cur: u64,
}

impl<'a> Iterator for Bits<'a> {
    type Item = u32;
    #[inline]
    fn next(&mut self) -> Option<u32> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros();
                self.cur &= self.cur - 1;
                return Some((self.wi * 64) as u32 + b);
            }
            self.wi += 1;
            if self.wi >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.wi];
        }
    }
}

fn check_mask(g: &FiniteGroup, m: &SubsetMask) -> Result<()> {
    if m.group_order() != g.order() {
        return Err(Error::OrderMismatch {
            mask: m.group_order(),
            group: g.order(),
        });
    }
    Ok(())
}

/// The product set { x·y : x ∈ a, y ∈ b }.
pub fn product_set(g: &FiniteGroup, a: &SubsetMask, b: &SubsetMask) -> Result<SubsetMask> {
    check_mask(g, a)?;
    check_mask(g, b)?;
    let mut out = SubsetMask::empty(g.order());
    for x in a.iter() {
        // OR in the row-permutation image of b under y ↦ x·y.
        for y in b.iter() {
            out.insert(g.mul(x, y));
        }
    }
    Ok(out)
}

/// The set of inverses { x^{-1} : x ∈ a }.
pub fn inverse_set(g: &FiniteGroup, a: &SubsetMask) -> Result<SubsetMask> {
    check_mask(g, a)?;
    let mut out = SubsetMask::empty(g.order());
    for x in a.iter() {
        out.insert(g.inv_of(x));
    }
    Ok(out)
}

/// Translate a set by one element: `Left` gives x·a, `Right` gives a·x.
pub fn translate(g: &FiniteGroup, x: u32, a: &SubsetMask, side: Side) -> Result<SubsetMask> {
    check_mask(g, a)?;
    if (x as usize) >= g.order() {
        return Err(Error::InvalidArgument(format!(
            "element {x} out of range for order {}",
            g.order()
        )));
    }
    let mut out = SubsetMask::empty(g.order());
    match side {
        Side::Left => {
            for y in a.iter() {
                out.insert(g.mul(x, y));
            }
        }
        Side::Right => {
            for y in a.iter() {
                out.insert(g.mul(y, x));
            }
        }
    }
    Ok(out)
}

/// Complement test: `Right` checks w·c = G (c is a right complement to w),
/// `Left` checks c·w = G. Errors on empty inputs.
pub fn is_complement(g: &FiniteGroup, w: &SubsetMask, c: &SubsetMask, side: Side) -> Result<bool> {
    check_mask(g, w)?;
    check_mask(g, c)?;
    if w.is_empty() {
        return Err(Error::EmptySet("w in is_complement"));
    }
    if c.is_empty() {
        return Err(Error::EmptySet("c in is_complement"));
    }
    let prod = match side {
        Side::Right => product_set(g, w, c)?,
        Side::Left => product_set(g, c, w)?,
    };
    Ok(prod.is_full())
}

/// For each c₀ ∈ c (ascending), the set of z ∈ G covered only through c₀:
/// for `Right` that is { z ∈ w·c₀ : z ∉ w·(c∖{c₀}) }. The set c is a minimal
/// complement exactly when every witness set is nonempty. Errors if (w,c) is
/// not a complement on the given side.
pub fn uniqueness_witnesses(
    g: &FiniteGroup,
    w: &SubsetMask,
    c: &SubsetMask,
    side: Side,
) -> Result<Vec<(u32, SubsetMask)>> {
    check_mask(g, w)?;
    check_mask(g, c)?;
    if w.is_empty() {
        return Err(Error::EmptySet("w in uniqueness_witnesses"));
    }
    if c.is_empty() {
        return Err(Error::EmptySet("c in uniqueness_witnesses"));
    }
    let n = g.order();
    let elems: Vec<u32> = c.elements();
    // translates[i] = w·cᵢ (Right) or cᵢ·w (Left); their union must be G.
    let mut translates = Vec::with_capacity(elems.len());
    let mut once = SubsetMask::empty(n);
    let mut twice = SubsetMask::empty(n);
    for &c0 in &elems {
        let t = match side {
            Side::Right => translate(g, c0, w, Side::Right)?,
            Side::Left => translate(g, c0, w, Side::Left)?,
        };
        let overlap = once.intersection(&t)?;
        twice.union_with(&overlap)?;
        once.union_with(&t)?;
        translates.push(t);
    }
    if !once.is_full() {
        return Err(Error::NotComplement(format!(
            "union of translates misses {}",
            once.complement().to_brace_string()
        )));
    }
    let unique = once.difference(&twice)?;
    let mut out = Vec::with_capacity(elems.len());
    for (i, &c0) in elems.iter().enumerate() {
        let wit = translates[i].intersection(&unique)?;
        out.push((c0, wit));
    }
    Ok(out)
}

/// Canonical representative of c's right-translation orbit: the translate
/// that contains the identity and is lexicographically least (by ascending
/// element list) among all identity-containing right-translates.
pub fn canonical_right_rep(g: &FiniteGroup, c: &SubsetMask) -> Result<SubsetMask> {
    check_mask(g, c)?;
    if c.is_empty() {
        return Err(Error::EmptySet("c in canonical_right_rep"));
    }
    let mut best: Option<SubsetMask> = None;
    for y in c.iter() {
        // c·y^{-1} contains the identity.
        let cand = translate(g, g.inv_of(y), c, Side::Right)?;
        best = match best {
            None => Some(cand),
            Some(b) => {
                if cand.cmp_elementwise(&b) == std::cmp::Ordering::Less {
                    Some(cand)
                } else {
                    Some(b)
                }
            }
        };
    }
    Ok(best.unwrap())
}

/// Left-translation analogue of [`canonical_right_rep`]: the
/// lexicographically least set of the form y^{-1}·c, which always contains
/// the identity.
pub fn canonical_left_rep(g: &FiniteGroup, c: &SubsetMask) -> Result<SubsetMask> {
    check_mask(g, c)?;
    if c.is_empty() {
        return Err(Error::EmptySet("c in canonical_left_rep"));
    }
    let mut best: Option<SubsetMask> = None;
    for y in c.iter() {
        let cand = translate(g, g.inv_of(y), c, Side::Left)?;
        best = match best {
            None => Some(cand),
            Some(b) => {
                if cand.cmp_elementwise(&b) == std::cmp::Ordering::Less {
                    Some(cand)
                } else {
                    Some(b)
                }
            }
        };
    }
    Ok(best.unwrap())
}

/// Canonical orbit representative under the translations that preserve the
/// complement relation on the given side: right complements are stable under
/// right translation of c, left complements under left translation.
pub fn canonical_rep(g: &FiniteGroup, c: &SubsetMask, side: Side) -> Result<SubsetMask> {
    match side {
        Side::Right => canonical_right_rep(g, c),
        Side::Left => canonical_left_rep(g, c),
    }
}
