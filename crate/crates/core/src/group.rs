//! Finite groups as dense multiplication tables.
//!
//! A group of order n is an n×n table of element indices (row g, column h
//! holds g·h) with the identity pinned at index 0. Everything downstream —
//! subset algebra, searches, constructions — works on indices only, never on
//! presentation-specific names, so one representation serves cyclic groups,
//! direct sums, dihedral/symmetric groups and arbitrary loaded tables alike.
//!
//! Construction always validates:
//!   1. Latin square — every row and column is a permutation of 0..n.
//!   2. Index 0 is a two-sided identity.
//!   3. Every element has a two-sided inverse.
//!   4. Associativity — exhaustive for n ≤ 64, otherwise 10^5 deterministic
//!      pseudo-random triples. `load_cayley_table` stays exhaustive up to
//!      order 512 since foreign tables deserve the full cubic scan.
//! Failures report the first offending triple in scan order.

use crate::subset::SubsetMask;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use std::sync::OnceLock;

/// Exhaustive associativity scan limit for constructors.
const ASSOC_EXHAUSTIVE_CAP: usize = 64;
/// Exhaustive associativity scan limit for loaded tables.
const LOAD_ASSOC_EXHAUSTIVE_CAP: usize = 512;
/// Sample count for the randomized associativity check above the caps.
const ASSOC_SAMPLES: usize = 100_000;
/// Fixed seed for the sampled validation (deterministic across runs).
const VALIDATION_SEED: u64 = 0x6d69_6e63_6f6d_7001;

/// Default cap on the order of groups accepted by subgroup enumeration.
pub const DEFAULT_SUBGROUP_CAP: usize = 64;
/// Default cap on the order of a direct product.
pub const DEFAULT_PRODUCT_CAP: usize = 1 << 20;

/// A finite group on dense element indices 0..n, with 0 the identity.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    identity: u32,
    label: String,
    hash: OnceLock<String>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

impl FiniteGroup {
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn identity(&self) -> u32 {
        self.identity
    }

    /// Product g·h.
    #[inline]
    pub fn mul(&self, g: u32, h: u32) -> u32 {
        self.table[g as usize * self.order + h as usize]
    }

    /// Inverse g^{-1}.
    #[inline]
    pub fn inv_of(&self, g: u32) -> u32 {
        self.inv[g as usize]
    }

    /// Conjugate g·h·g^{-1}.
    #[inline]
    pub fn conj(&self, g: u32, h: u32) -> u32 {
        self.mul(self.mul(g, h), self.inv_of(g))
    }

    /// Commutator g·h·g^{-1}·h^{-1}.
    #[inline]
    pub fn commutator(&self, g: u32, h: u32) -> u32 {
        self.mul(self.conj(g, h), self.inv_of(h))
    }

    /// All element indices, ascending.
    pub fn element_range(&self) -> std::ops::Range<u32> {
        0..self.order as u32
    }

    /// True when the two groups have the same order and identical tables.
    /// (Labels are ignored; this is literal table equality, not isomorphism.)
    pub fn table_eq(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    /// Raw table row for g (length n).
    pub fn row(&self, g: u32) -> &[u32] {
        let n = self.order;
        &self.table[g as usize * n..(g as usize + 1) * n]
    }

    // ------------------------------------------------------------------
    // Construction and validation
    // ------------------------------------------------------------------

    /// Validate a constructor-built table (sampled associativity above 64).
    pub fn from_table(label: impl Into<String>, order: usize, table: Vec<u32>) -> Result<Self> {
        Self::build(label.into(), order, table, ASSOC_EXHAUSTIVE_CAP)
    }

    fn build(
        label: String,
        order: usize,
        table: Vec<u32>,
        exhaustive_cap: usize,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        let n = order;
        for (i, &v) in table.iter().enumerate() {
            if (v as usize) >= n {
                return Err(Error::InvalidTable(format!(
                    "entry {} at row {} col {} out of range",
                    v,
                    i / n,
                    i % n
                )));
            }
        }
        // Latin square: rows and columns are permutations.
        let mut seen = vec![false; n];
        for g in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for h in 0..n {
                let v = table[g * n + h] as usize;
                if seen[v] {
                    return Err(Error::InvalidTable(format!(
                        "row {g} repeats entry {v}"
                    )));
                }
                seen[v] = true;
            }
        }
        for h in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for g in 0..n {
                let v = table[g * n + h] as usize;
                if seen[v] {
                    return Err(Error::InvalidTable(format!(
                        "column {h} repeats entry {v}"
                    )));
                }
                seen[v] = true;
            }
        }
        // Element 0 must be a two-sided identity.
        for h in 0..n {
            if table[h] != h as u32 {
                return Err(Error::InvalidTable(format!(
                    "element 0 is not a left identity: 0·{h} = {}",
                    table[h]
                )));
            }
            if table[h * n] != h as u32 {
                return Err(Error::InvalidTable(format!(
                    "element 0 is not a right identity: {h}·0 = {}",
                    table[h * n]
                )));
            }
        }
        // Two-sided inverses.
        let mut inv = vec![0u32; n];
        for g in 0..n {
            let mut found = None;
            for h in 0..n {
                if table[g * n + h] == 0 {
                    found = Some(h as u32);
                    break;
                }
            }
            let h = found.ok_or_else(|| {
                Error::InvalidTable(format!("element {g} has no right inverse"))
            })?;
            if table[h as usize * n + g] != 0 {
                return Err(Error::InvalidTable(format!(
                    "element {g}: right inverse {h} is not a left inverse"
                )));
            }
            inv[g] = h;
        }
        // Associativity.
        let mul = |a: usize, b: usize| table[a * n + b] as usize;
        let check_triple = |a: usize, b: usize, c: usize| -> Result<()> {
            let left = mul(mul(a, b), c);
            let right = mul(a, mul(b, c));
            if left != right {
                return Err(Error::InvalidTable(format!(
                    "associativity fails at ({a},{b},{c}): ({a}·{b})·{c} = {left} but {a}·({b}·{c}) = {right}"
                )));
            }
            Ok(())
        };
        if n <= exhaustive_cap {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check_triple(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
            for _ in 0..ASSOC_SAMPLES {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                let c = rng.gen_range(0..n);
                check_triple(a, b, c)?;
            }
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inv,
            identity: 0,
            label,
            hash: OnceLock::new(),
        })
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self::make_cyclic(1)
    }

    /// ℤ/nℤ with table[g][h] = (g+h) mod n.
    pub fn make_cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs positive order");
        let mut table = vec![0u32; n * n];
        for g in 0..n {
            for h in 0..n {
                table[g * n + h] = ((g + h) % n) as u32;
            }
        }
        Self::from_table(format!("cyclic:{n}"), n, table)
            .expect("cyclic table is always a group")
    }

    /// Direct sum of cyclic groups of the given orders, elements in
    /// mixed-radix order (first factor most significant).
    pub fn make_abelian(factors: &[usize]) -> Result<Self> {
        if factors.is_empty() {
            return Ok(Self::trivial());
        }
        if factors.iter().any(|&f| f == 0) {
            return Err(Error::InvalidArgument("zero factor in make_abelian".into()));
        }
        let mut n: usize = 1;
        for &f in factors {
            n = n
                .checked_mul(f)
                .filter(|&m| m <= DEFAULT_PRODUCT_CAP)
                .ok_or(Error::CapExceeded {
                    what: "abelian group order",
                    value: usize::MAX,
                    cap: DEFAULT_PRODUCT_CAP,
                })?;
        }
        let k = factors.len();
        // strides[i] = product of the factors after i.
        let mut strides = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1];
        }
        let decode = |mut x: usize| -> Vec<usize> {
            let mut digits = vec![0usize; k];
            for i in 0..k {
                digits[i] = x / strides[i];
                x %= strides[i];
            }
            digits
        };
        let mut table = vec![0u32; n * n];
        for g in 0..n {
            let dg = decode(g);
            for h in 0..n {
                let dh = decode(h);
                let mut idx = 0usize;
                for i in 0..k {
                    idx += ((dg[i] + dh[i]) % factors[i]) * strides[i];
                }
                table[g * n + h] = idx as u32;
            }
        }
        let label = format!(
            "abelian:{}",
            factors
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join("x")
        );
        Self::from_table(label, n, table)
    }

    /// Dihedral group of order 2m: ⟨r,s | r^m = s² = e, s·r·s = r^{-1}⟩.
    /// Element r^i·s^f is indexed f·m + i.
    pub fn make_dihedral(m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidArgument("dihedral needs m ≥ 1".into()));
        }
        let n = 2 * m;
        let idx = |i: usize, f: usize| (f * m + i) as u32;
        let mut table = vec![0u32; n * n];
        for i in 0..m {
            for f in 0..2 {
                for j in 0..m {
                    for gflag in 0..2 {
                        // (r^i s^f)(r^j s^g) = r^{i + (-1)^f j} s^{f+g}.
                        let jj = if f == 1 { (m - j) % m } else { j };
                        let ii = (i + jj) % m;
                        let ff = (f + gflag) % 2;
                        table[(idx(i, f) as usize) * n + idx(j, gflag) as usize] = idx(ii, ff);
                    }
                }
            }
        }
        Self::from_table(format!("dihedral:{m}"), n, table)
    }

    /// Symmetric group on m letters, 1 ≤ m ≤ 6, elements being the
    /// permutations of 0..m in lexicographic order (identity first).
    /// Composition convention: (p·q)(x) = p(q(x)).
    pub fn make_symmetric(m: usize) -> Result<Self> {
        if !(1..=6).contains(&m) {
            return Err(Error::InvalidArgument(format!(
                "symmetric group supported for 1 ≤ m ≤ 6, got {m}"
            )));
        }
        let perms = all_permutations_lex(m);
        let n = perms.len();
        let mut rank = std::collections::HashMap::with_capacity(n);
        for (i, p) in perms.iter().enumerate() {
            rank.insert(p.clone(), i as u32);
        }
        let mut table = vec![0u32; n * n];
        let mut buf = vec![0u8; m];
        for g in 0..n {
            for h in 0..n {
                for x in 0..m {
                    buf[x] = perms[g][perms[h][x] as usize];
                }
                table[g * n + h] = rank[&buf];
            }
        }
        Self::from_table(format!("symmetric:{m}"), n, table)
    }

    /// Direct product with elements indexed i₁·|g2| + i₂.
    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Self> {
        Self::direct_product_capped(g1, g2, DEFAULT_PRODUCT_CAP)
    }

    pub fn direct_product_capped(
        g1: &FiniteGroup,
        g2: &FiniteGroup,
        cap: usize,
    ) -> Result<Self> {
        let n1 = g1.order;
        let n2 = g2.order;
        let n = n1
            .checked_mul(n2)
            .filter(|&m| m <= cap)
            .ok_or(Error::CapExceeded {
                what: "product order",
                value: n1.saturating_mul(n2),
                cap,
            })?;
        let mut table = vec![0u32; n * n];
        for a1 in 0..n1 {
            for a2 in 0..n2 {
                let a = a1 * n2 + a2;
                for b1 in 0..n1 {
                    let p1 = g1.mul(a1 as u32, b1 as u32) as usize;
                    for b2 in 0..n2 {
                        let b = b1 * n2 + b2;
                        let p2 = g2.mul(a2 as u32, b2 as u32) as usize;
                        table[a * n + b] = (p1 * n2 + p2) as u32;
                    }
                }
            }
        }
        let label = format!("product({},{})", g1.label, g2.label);
        Self::from_table(label, n, table)
    }

    // ------------------------------------------------------------------
    // Cayley-table text format
    // ------------------------------------------------------------------

    /// Byte-deterministic text serialization: first line n, then n lines of
    /// n space-separated indices, LF endings, single spaces.
    pub fn save_cayley_table(&self) -> String {
        let n = self.order;
        let mut s = String::with_capacity(n * n * 3 + 8);
        s.push_str(&n.to_string());
        s.push('\n');
        for g in 0..n {
            for h in 0..n {
                if h > 0 {
                    s.push(' ');
                }
                s.push_str(&self.table[g * n + h].to_string());
            }
            s.push('\n');
        }
        s
    }

    /// Parse and fully validate a Cayley table (element 0 must be the
    /// identity). Associativity is exhaustive up to order 512.
    pub fn load_cayley_table(source: &str) -> Result<Self> {
        let mut tokens = source.split_ascii_whitespace();
        let n: usize = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty table source".into()))?
            .parse()
            .map_err(|_| Error::Parse("first token must be the order".into()))?;
        if n == 0 {
            return Err(Error::Parse("order must be positive".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for t in tokens.by_ref() {
            let v: u32 = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad table entry {t:?}")))?;
            table.push(v);
            if table.len() == n * n {
                break;
            }
        }
        if table.len() != n * n {
            return Err(Error::Parse(format!(
                "expected {} entries, found {}",
                n * n,
                table.len()
            )));
        }
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing tokens after table".into()));
        }
        let g = Self::build(String::new(), n, table, LOAD_ASSOC_EXHAUSTIVE_CAP)?;
        let label = format!("table:{}", &g.table_hash()[..8]);
        Ok(FiniteGroup { label, ..g })
    }

    /// Hex SHA-256 digest of the canonical Cayley-table bytes.
    pub fn table_hash(&self) -> &str {
        self.hash.get_or_init(|| {
            let mut h = Sha256::new();
            h.update(self.save_cayley_table().as_bytes());
            hex::encode(h.finalize())
        })
    }

    /// Rebuild this group under a different label (used by the catalog).
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    // ------------------------------------------------------------------
    // Element-level computations
    // ------------------------------------------------------------------

    /// Multiplicative order of element x.
    pub fn element_order(&self, x: u32) -> usize {
        let mut cur = x;
        let mut k = 1;
        while cur != self.identity {
            cur = self.mul(cur, x);
            k += 1;
        }
        k
    }

    /// Sorted multiset of all element orders.
    pub fn element_orders(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.element_range().map(|x| self.element_order(x)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        for g in 0..n {
            for h in (g + 1)..n {
                if self.table[g * n + h] != self.table[h * n + g] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_cyclic(&self) -> bool {
        self.element_range().any(|x| self.element_order(x) == self.order)
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> SubsetMask {
        let n = self.order;
        let mut m = SubsetMask::empty(n);
        'outer: for g in 0..n as u32 {
            for h in 0..n as u32 {
                if self.mul(g, h) != self.mul(h, g) {
                    continue 'outer;
                }
            }
            m.insert(g);
        }
        m
    }

    /// Subgroup generated by a set of elements (closure under the table).
    pub fn closure(&self, gens: &[u32]) -> SubsetMask {
        let n = self.order;
        let mut mask = SubsetMask::empty(n);
        mask.insert(self.identity);
        let mut elems: Vec<u32> = vec![self.identity];
        let mut frontier: Vec<u32> = Vec::new();
        for &g in gens {
            if !mask.contains(g) {
                mask.insert(g);
                elems.push(g);
                frontier.push(g);
            }
        }
        while let Some(x) = frontier.pop() {
            // Close under products with everything currently present.
            let mut i = 0;
            while i < elems.len() {
                let y = elems[i];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !mask.contains(p) {
                        mask.insert(p);
                        elems.push(p);
                        frontier.push(p);
                    }
                }
                i += 1;
            }
        }
        mask
    }

    /// Closure of all commutators: the derived subgroup.
    pub fn derived_subgroup(&self) -> SubsetMask {
        let n = self.order as u32;
        let mut gens = Vec::new();
        for g in 0..n {
            for h in 0..n {
                gens.push(self.commutator(g, h));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.closure(&gens)
    }

    /// Derived series reaches the trivial subgroup.
    pub fn is_solvable(&self) -> bool {
        let mut cur = SubsetMask::full(self.order);
        loop {
            let next = self.derived_of_subset(&cur);
            if next.len() == 1 {
                return true;
            }
            if next == cur {
                return false;
            }
            cur = next;
        }
    }

    /// Derived subgroup of the subgroup given by `mask`.
    fn derived_of_subset(&self, mask: &SubsetMask) -> SubsetMask {
        let mut gens = Vec::new();
        for g in mask.iter() {
            for h in mask.iter() {
                gens.push(self.commutator(g, h));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.closure(&gens)
    }

    /// Upper central series reaches the whole group.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.order;
        let mut z = SubsetMask::empty(n);
        z.insert(self.identity);
        loop {
            // Next term: elements g with [g,h] ∈ z for all h.
            let mut next = SubsetMask::empty(n);
            'outer: for g in 0..n as u32 {
                for h in 0..n as u32 {
                    if !z.contains(self.commutator(g, h)) {
                        continue 'outer;
                    }
                }
                next.insert(g);
            }
            if next.len() == n {
                return true;
            }
            if next == z {
                return false;
            }
            z = next;
        }
    }

    /// Huppert's criterion: every maximal subgroup has prime index.
    /// Requires full subgroup enumeration, so it is intended for small
    /// (catalog-scale) orders.
    pub fn is_supersolvable(&self) -> Result<bool> {
        let subs = enumerate_subgroups_with_cap(self, self.order.max(DEFAULT_SUBGROUP_CAP))?;
        let n = self.order;
        // Maximal: proper, and no other proper subgroup strictly contains it.
        for (i, h) in subs.iter().enumerate() {
            if h.mask.len() == n {
                continue;
            }
            let mut maximal = true;
            for (j, k) in subs.iter().enumerate() {
                if i == j || k.mask.len() == n || k.mask.len() <= h.mask.len() {
                    continue;
                }
                if h.mask.is_subset_of(&k.mask)? {
                    maximal = false;
                    break;
                }
            }
            if maximal && !is_prime(h.index) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn is_prime(x: usize) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn all_permutations_lex(m: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..m as u8).collect();
    loop {
        out.push(cur.clone());
        // Standard next-permutation step.
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..m).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

// ----------------------------------------------------------------------
// Subgroups
// ----------------------------------------------------------------------

/// A subgroup, carried as a mask plus its index and normality flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub mask: SubsetMask,
    pub index: usize,
    pub is_normal: bool,
}

/// True when `mask` is closed under the table and inverses and contains the
/// identity.
pub fn is_subgroup_mask(g: &FiniteGroup, mask: &SubsetMask) -> bool {
    if mask.group_order() != g.order() || !mask.contains(g.identity()) {
        return false;
    }
    for a in mask.iter() {
        if !mask.contains(g.inv_of(a)) {
            return false;
        }
        for b in mask.iter() {
            if !mask.contains(g.mul(a, b)) {
                return false;
            }
        }
    }
    true
}

fn is_normal_mask(g: &FiniteGroup, mask: &SubsetMask) -> bool {
    for x in g.element_range() {
        for h in mask.iter() {
            if !mask.contains(g.conj(x, h)) {
                return false;
            }
        }
    }
    true
}

/// Wrap a validated subgroup mask into a `Subgroup`.
pub fn subgroup_from_mask(g: &FiniteGroup, mask: SubsetMask) -> Result<Subgroup> {
    if !is_subgroup_mask(g, &mask) {
        return Err(Error::NotSubgroup(mask.to_brace_string()));
    }
    let index = g.order() / mask.len();
    let is_normal = is_normal_mask(g, &mask);
    Ok(Subgroup {
        mask,
        index,
        is_normal,
    })
}

/// All subgroups of g (default order cap 64), sorted by size then element
/// list. Generated by closing every ≤2-element subset and then iterating
/// pairwise joins to a fixpoint.
pub fn enumerate_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_with_cap(g, DEFAULT_SUBGROUP_CAP)
}

pub fn enumerate_subgroups_with_cap(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "group order for subgroup enumeration",
            value: n,
            cap,
        });
    }
    use std::collections::BTreeSet;
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut masks: Vec<SubsetMask> = Vec::new();
    let push = |m: SubsetMask, masks: &mut Vec<SubsetMask>, seen: &mut BTreeSet<Vec<u64>>| {
        if seen.insert(m.words().to_vec()) {
            masks.push(m);
        }
    };
    for a in 0..n as u32 {
        for b in a..n as u32 {
            let m = g.closure(&[a, b]);
            push(m, &mut masks, &mut seen);
        }
    }
    // Join fixpoint: close the set of subgroups under pairwise joins.
    let mut frontier: Vec<SubsetMask> = masks.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for m in masks.clone() {
                if f.is_subset_of(&m)? || m.is_subset_of(f)? {
                    continue;
                }
                let gens: Vec<u32> = f.iter().chain(m.iter()).collect();
                let j = g.closure(&gens);
                if seen.insert(j.words().to_vec()) {
                    next.push(j);
                }
            }
        }
        masks.extend(next.iter().cloned());
        frontier = next;
    }
    let mut subs: Vec<Subgroup> = masks
        .into_iter()
        .map(|mask| {
            let index = n / mask.len();
            let is_normal = is_normal_mask(g, &mask);
            Subgroup {
                mask,
                index,
                is_normal,
            }
        })
        .collect();
    subs.sort_by(|a, b| {
        a.mask
            .len()
            .cmp(&b.mask.len())
            .then_with(|| a.mask.cmp_elementwise(&b.mask))
    });
    Ok(subs)
}

// ----------------------------------------------------------------------
// Quotients and subgroup embeddings
// ----------------------------------------------------------------------

/// Quotient group data: the group G/H, the projection map, and the least
/// element of each coset as its representative.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub group: FiniteGroup,
    pub projection: Vec<u32>,
    pub coset_reps: Vec<u32>,
}

/// Quotient by a normal subgroup. Coset indices are assigned by the least
/// element of each coset, scanning elements in ascending order, so the
/// identity coset is index 0.
pub fn quotient(g: &FiniteGroup, h: &Subgroup) -> Result<QuotientData> {
    if !h.is_normal {
        return Err(Error::NotNormal);
    }
    if !is_subgroup_mask(g, &h.mask) {
        return Err(Error::NotSubgroup(h.mask.to_brace_string()));
    }
    let n = g.order();
    let mut projection = vec![u32::MAX; n];
    let mut coset_reps = Vec::new();
    for x in 0..n as u32 {
        if projection[x as usize] != u32::MAX {
            continue;
        }
        let idx = coset_reps.len() as u32;
        coset_reps.push(x);
        for hh in h.mask.iter() {
            projection[g.mul(x, hh) as usize] = idx;
        }
    }
    let q = coset_reps.len();
    let mut table = vec![0u32; q * q];
    for i in 0..q {
        for j in 0..q {
            table[i * q + j] = projection[g.mul(coset_reps[i], coset_reps[j]) as usize];
        }
    }
    let label = format!("{}/{}", g.label(), h.mask.to_brace_string());
    let group = FiniteGroup::from_table(label, q, table)?;
    Ok(QuotientData {
        group,
        projection,
        coset_reps,
    })
}

/// View a subgroup as a standalone group. Returns the group (elements are
/// the subgroup's elements in ascending parent order, so the identity stays
/// at index 0) and the map from new indices back to parent indices.
pub fn subgroup_as_group(g: &FiniteGroup, mask: &SubsetMask) -> Result<(FiniteGroup, Vec<u32>)> {
    if !is_subgroup_mask(g, mask) {
        return Err(Error::NotSubgroup(mask.to_brace_string()));
    }
    let to_parent: Vec<u32> = mask.elements();
    let m = to_parent.len();
    let mut to_local = vec![u32::MAX; g.order()];
    for (i, &p) in to_parent.iter().enumerate() {
        to_local[p as usize] = i as u32;
    }
    let mut table = vec![0u32; m * m];
    for i in 0..m {
        for j in 0..m {
            table[i * m + j] = to_local[g.mul(to_parent[i], to_parent[j]) as usize];
        }
    }
    let label = format!("{}|{}", g.label(), mask.to_brace_string());
    let sub = FiniteGroup::from_table(label, m, table)?;
    Ok((sub, to_parent))
}

// ----------------------------------------------------------------------
// Isomorphism testing (generator-image backtracking). Used by the catalog
// completeness checks and a handful of tests; desk-scale orders only.
// ----------------------------------------------------------------------

/// Greedy small generating sequence: repeatedly adjoin the least element
/// outside the closure so far.
pub(crate) fn generating_sequence(g: &FiniteGroup) -> Vec<u32> {
    let mut gens: Vec<u32> = Vec::new();
    let mut cl = g.closure(&gens);
    while cl.len() < g.order() {
        let next = cl.complement().first().expect("closure not full");
        gens.push(next);
        cl = g.closure(&gens);
    }
    gens
}

/// Exact isomorphism test by backtracking over generator images, with an
/// element-order profile pre-filter.
pub(crate) fn isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    if a.order() != b.order() {
        return false;
    }
    if a.element_orders() != b.element_orders() {
        return false;
    }
    let n = a.order();
    let gens = generating_sequence(a);
    if gens.is_empty() {
        return true; // trivial group
    }
    // Candidate images grouped by element order.
    let mut by_order: std::collections::HashMap<usize, Vec<u32>> = Default::default();
    for x in b.element_range() {
        by_order.entry(b.element_order(x)).or_default().push(x);
    }
    let mut images = vec![0u32; gens.len()];
    try_images(a, b, &gens, &mut images, 0, &by_order, n)
}

fn try_images(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[u32],
    images: &mut [u32],
    depth: usize,
    by_order: &std::collections::HashMap<usize, Vec<u32>>,
    n: usize,
) -> bool {
    if depth == gens.len() {
        return extends_to_isomorphism(a, b, gens, images, n);
    }
    let ord = a.element_order(gens[depth]);
    let Some(cands) = by_order.get(&ord) else {
        return false;
    };
    for &c in cands {
        images[depth] = c;
        if try_images(a, b, gens, images, depth + 1, by_order, n) {
            return true;
        }
    }
    false
}

/// Extend generator images to a full map by BFS words and verify it is a
/// bijective homomorphism.
fn extends_to_isomorphism(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[u32],
    images: &[u32],
    n: usize,
) -> bool {
    let mut img = vec![u32::MAX; n];
    img[a.identity() as usize] = b.identity();
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(a.identity());
    while let Some(x) = queue.pop_front() {
        let ix = img[x as usize];
        for (gi, &gen) in gens.iter().enumerate() {
            let y = a.mul(x, gen);
            let iy = b.mul(ix, images[gi]);
            if img[y as usize] == u32::MAX {
                img[y as usize] = iy;
                queue.push_back(y);
            } else if img[y as usize] != iy {
                return false;
            }
        }
    }
    if img.iter().any(|&v| v == u32::MAX) {
        return false;
    }
    let mut used = vec![false; n];
    for &v in &img {
        if used[v as usize] {
            return false;
        }
        used[v as usize] = true;
    }
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            if img[a.mul(x, y) as usize] != b.mul(img[x as usize], img[y as usize]) {
                return false;
            }
        }
    }
    true
}
