//! Verified minimal-complement certificates.
//!
//! A certificate fixes a group (by label, order, and table digest), a side,
//! the pair of sets, and one uniqueness witness per element of c: an element
//! z of the group that the product covers *only* through that element of c.
//! Re-verification needs nothing but the certificate and the group table —
//! it recomputes the complement property and every witness from scratch in
//! O(n·|c| + |c|²).
//!
//! Every constructed certificate also satisfies the counting inequality
//! |c|·(2|w| − 1) ≤ n·|w|, which holds for every minimal complement: each of
//! the |c| elements needs a witness covered exactly once, and double-counting
//! coverage caps how many such scarce points exist. The constructor asserts
//! it, so a violation anywhere in the pipeline fails loudly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::group::FiniteGroup;
use crate::subset::{is_complement, uniqueness_witnesses, Side, SubsetMask};
use crate::{Error, Result};

/// Identifies the group a certificate talks about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRef {
    pub label: String,
    pub order: usize,
    /// Hex SHA-256 of the canonical Cayley-table bytes.
    pub hash: String,
}

impl GroupRef {
    pub fn of(g: &FiniteGroup) -> Self {
        GroupRef {
            label: g.label().to_string(),
            order: g.order(),
            hash: g.table_hash().to_string(),
        }
    }

    /// True when `g` is (byte-for-byte) the group this reference names.
    pub fn matches(&self, g: &FiniteGroup) -> bool {
        self.order == g.order() && self.hash == g.table_hash()
    }
}

/// A checkable proof that c is a minimal complement to w on the given side.
///
/// `witnesses[c₀] = z` asserts that z lies in the product and is covered
/// only through c₀; removing c₀ from c therefore loses z, which is exactly
/// minimality once one witness per element is in hand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementCertificate {
    pub group: GroupRef,
    pub side: Side,
    #[serde(rename = "W")]
    pub w: Vec<u32>,
    #[serde(rename = "C")]
    pub c: Vec<u32>,
    pub witnesses: BTreeMap<u32, u32>,
}

impl ComplementCertificate {
    /// Build and verify a certificate. Fails with `VerificationFailed` when
    /// some element of c has no uniqueness witness (i.e. c is a complement
    /// but not a minimal one), and with `NotComplement` when the product
    /// does not cover the group.
    pub fn new(g: &FiniteGroup, w: &SubsetMask, c: &SubsetMask, side: Side) -> Result<Self> {
        let per_element = uniqueness_witnesses(g, w, c, side)?;
        let mut witnesses = BTreeMap::new();
        for (c0, mask) in &per_element {
            match mask.first() {
                Some(z) => {
                    witnesses.insert(*c0, z);
                }
                None => {
                    return Err(Error::VerificationFailed(format!(
                        "element {c0} of c has no uniqueness witness; the complement is not minimal"
                    )));
                }
            }
        }
        let cert = ComplementCertificate {
            group: GroupRef::of(g),
            side,
            w: w.elements(),
            c: c.elements(),
            witnesses,
        };
        assert!(
            cert.bound_holds(),
            "counting bound violated by a verified minimal complement: |c|={} |w|={} n={}",
            cert.c.len(),
            cert.w.len(),
            g.order()
        );
        Ok(cert)
    }

    pub fn w_mask(&self) -> Result<SubsetMask> {
        SubsetMask::from_elements(self.group.order, &self.w)
    }

    pub fn c_mask(&self) -> Result<SubsetMask> {
        SubsetMask::from_elements(self.group.order, &self.c)
    }

    /// |c|·(2|w| − 1) ≤ n·|w|, the inequality every minimal complement obeys.
    pub fn bound_holds(&self) -> bool {
        let csz = self.c.len() as u128;
        let wsz = self.w.len() as u128;
        let n = self.group.order as u128;
        csz * (2 * wsz - 1) <= n * wsz
    }

    /// Re-verify everything from scratch against the given group: the group
    /// reference, well-formedness of the element lists, the complement
    /// property, and each stored witness.
    pub fn verify(&self, g: &FiniteGroup) -> Result<()> {
        if !self.group.matches(g) {
            return Err(Error::VerificationFailed(format!(
                "certificate names group {} (order {}, hash {}…) but was checked against {} (order {})",
                self.group.label,
                self.group.order,
                &self.group.hash[..8.min(self.group.hash.len())],
                g.label(),
                g.order()
            )));
        }
        for list in [&self.w, &self.c] {
            if list.is_empty() {
                return Err(Error::VerificationFailed("empty element list".into()));
            }
            if !list.windows(2).all(|p| p[0] < p[1]) {
                return Err(Error::VerificationFailed(
                    "element lists must be strictly ascending".into(),
                ));
            }
        }
        let w = self.w_mask()?;
        let c = self.c_mask()?;
        if self.witnesses.len() != self.c.len()
            || !self.c.iter().all(|c0| self.witnesses.contains_key(c0))
        {
            return Err(Error::VerificationFailed(
                "witness map does not cover c exactly".into(),
            ));
        }
        if !is_complement(g, &w, &c, self.side)? {
            return Err(Error::VerificationFailed(
                "stored sets are not a complement pair".into(),
            ));
        }
        for (&c0, &z) in &self.witnesses {
            // z must be covered through c0 and through nothing else: on the
            // right, z = w0·c₀ for some w0 ∈ w means z·c₀^{-1} ∈ w.
            let covered_via = |ci: u32| -> bool {
                let needed = match self.side {
                    Side::Right => g.mul(z, g.inv_of(ci)),
                    Side::Left => g.mul(g.inv_of(ci), z),
                };
                w.contains(needed)
            };
            if !covered_via(c0) {
                return Err(Error::VerificationFailed(format!(
                    "witness {z} for element {c0} is not covered through it"
                )));
            }
            if let Some(other) = c.iter().find(|&ci| ci != c0 && covered_via(ci)) {
                return Err(Error::VerificationFailed(format!(
                    "witness {z} for element {c0} is also covered through {other}"
                )));
            }
        }
        if !self.bound_holds() {
            return Err(Error::VerificationFailed(
                "counting bound |c|(2|w|-1) ≤ n|w| fails".into(),
            ));
        }
        Ok(())
    }

    /// Deterministic pretty JSON (stable field order, sorted witness keys).
    pub fn to_json_string(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiling_certificate_builds_and_verifies() {
        let g = FiniteGroup::make_cyclic(6);
        let w = SubsetMask::from_elements(6, &[0, 3]).unwrap();
        let c = SubsetMask::from_elements(6, &[0, 1, 2]).unwrap();
        let cert = ComplementCertificate::new(&g, &w, &c, Side::Right).unwrap();
        assert_eq!(cert.w, vec![0, 3]);
        assert_eq!(cert.c, vec![0, 1, 2]);
        assert_eq!(cert.witnesses.len(), 3);
        cert.verify(&g).unwrap();
        assert!(cert.bound_holds());
    }

    #[test]
    fn non_minimal_complement_is_rejected() {
        let g = FiniteGroup::make_cyclic(4);
        let w = SubsetMask::singleton(4, 0);
        let c = SubsetMask::full(4);
        // w = {0}, c = G is a complement and minimal (each z covered once).
        ComplementCertificate::new(&g, &w, &c, Side::Right).unwrap();
        // w = G, c = G is a complement but nothing has a witness.
        let err = ComplementCertificate::new(&g, &SubsetMask::full(4), &c, Side::Right)
            .unwrap_err();
        assert!(matches!(err, Error::VerificationFailed(_)));
        // Disjoint-from-covering w: not a complement at all.
        let w2 = SubsetMask::from_elements(4, &[0]).unwrap();
        let c2 = SubsetMask::from_elements(4, &[0, 1]).unwrap();
        assert!(matches!(
            ComplementCertificate::new(&g, &w2, &c2, Side::Right),
            Err(Error::NotComplement(_))
        ));
    }

    #[test]
    fn json_round_trip_is_deterministic() {
        let g = FiniteGroup::make_cyclic(6);
        let w = SubsetMask::from_elements(6, &[0, 3]).unwrap();
        let c = SubsetMask::from_elements(6, &[0, 1, 2]).unwrap();
        let cert = ComplementCertificate::new(&g, &w, &c, Side::Right).unwrap();
        let json = cert.to_json_string().unwrap();
        let back = ComplementCertificate::from_json_str(&json).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json_string().unwrap(), json);
        back.verify(&g).unwrap();
        // Field spelling is part of the format.
        assert!(json.contains("\"W\""));
        assert!(json.contains("\"C\""));
        assert!(json.contains("\"witnesses\""));
        assert!(json.contains("\"hash\""));
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let g = FiniteGroup::make_cyclic(6);
        let w = SubsetMask::from_elements(6, &[0, 3]).unwrap();
        let c = SubsetMask::from_elements(6, &[0, 1, 2]).unwrap();
        let cert = ComplementCertificate::new(&g, &w, &c, Side::Right).unwrap();

        // Wrong group.
        let g7 = FiniteGroup::make_cyclic(7);
        assert!(cert.verify(&g7).is_err());

        // Edited witness: point element 0's witness at a doubly covered z.
        let mut bad = cert.clone();
        // z = 0 is covered via (w=0,c=0) — also reachable via c=3? No: only
        // c ∈ {0,1,2}. 0 = 3+3 is not available, so craft the edit from the
        // actual witness structure: witness for c0=1 must be 1 or 4; set it
        // to 0 which is covered via c0=0 instead.
        bad.witnesses.insert(1, 0);
        assert!(bad.verify(&g).is_err());

        // Drop an element from c without touching witnesses.
        let mut bad = cert.clone();
        bad.c = vec![0, 1];
        assert!(bad.verify(&g).is_err());

        // Unsorted list.
        let mut bad = cert.clone();
        bad.w = vec![3, 0];
        assert!(bad.verify(&g).is_err());
    }

    #[test]
    fn left_side_certificates_verify() {
        let s3 = FiniteGroup::make_symmetric(3).unwrap();
        // c = G is a minimal left complement to w = {identity}.
        let cert = ComplementCertificate::new(
            &s3,
            &SubsetMask::singleton(6, 0),
            &SubsetMask::full(6),
            Side::Left,
        )
        .unwrap();
        cert.verify(&s3).unwrap();
        assert_eq!(cert.side, Side::Left);
    }
}
