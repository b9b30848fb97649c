//! Randomized invariant checks for the subset algebra on finite groups and
//! for the eventually periodic set algebra on the integer line.  Every
//! property here is a law the exact kernels must satisfy on all inputs;
//! proptest supplies the inputs and shrinks any counterexample.

use proptest::prelude::*;

use mincomp::{
    catalog, construct_z_complement, inverse_set, is_complement, product_set, translate,
    uniqueness_witnesses, verify_z_certificate, EventuallyPeriodicSet, FiniteGroup, FiniteIntSet,
    Side, SubsetMask,
};

// ---------------------------------------------------------------------------
// strategies

/// Indices of catalog groups of order ≤ 12: large enough to be non-abelian,
/// small enough that O(n²) subset products stay trivial.
fn small_group() -> impl Strategy<Value = &'static FiniteGroup> {
    let pool: Vec<&'static FiniteGroup> = catalog()
        .iter()
        .filter(|e| e.group.order() <= 12)
        .map(|e| &e.group)
        .collect();
    (0..pool.len()).prop_map(move |i| pool[i])
}

/// A group together with a (possibly empty) subset of it.
fn group_and_mask() -> impl Strategy<Value = (&'static FiniteGroup, SubsetMask)> {
    small_group().prop_flat_map(|g| {
        let n = g.order();
        prop::collection::vec(any::<bool>(), n).prop_map(move |bits| {
            let mut mask = SubsetMask::empty(n);
            for (x, keep) in bits.iter().enumerate() {
                if *keep {
                    mask.insert(x as u32);
                }
            }
            (g, mask)
        })
    })
}

fn group_and_two_masks() -> impl Strategy<Value = (&'static FiniteGroup, SubsetMask, SubsetMask)> {
    small_group().prop_flat_map(|g| {
        let n = g.order();
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(b1, b2)| {
                let mut m1 = SubsetMask::empty(n);
                let mut m2 = SubsetMask::empty(n);
                for x in 0..n {
                    if b1[x] {
                        m1.insert(x as u32);
                    }
                    if b2[x] {
                        m2.insert(x as u32);
                    }
                }
                (g, m1, m2)
            })
    })
}

/// A valid eventually periodic set: random residue pattern modulo a small
/// modulus, with exceptional points sorted into add/remove by which side of
/// the pattern they fall on.
fn periodic_set() -> impl Strategy<Value = EventuallyPeriodicSet> {
    (1i64..=6).prop_flat_map(|m| {
        (
            prop::collection::vec(any::<bool>(), m as usize),
            prop::collection::vec((-25i64..=25, any::<bool>()), 0..=6),
        )
            .prop_map(move |(residue_bits, raw_points)| {
                let residues: Vec<i64> = (0..m).filter(|r| residue_bits[*r as usize]).collect();
                let mut add = Vec::new();
                let mut remove = Vec::new();
                for (p, keep) in raw_points {
                    if !keep {
                        continue;
                    }
                    if residues.contains(&p.rem_euclid(m)) {
                        remove.push(p);
                    } else {
                        add.push(p);
                    }
                }
                EventuallyPeriodicSet::new(m, residues, add, remove)
                    .expect("strategy respects the representation invariants")
            })
    })
}

/// A small nonempty finite set of integers.
fn finite_set() -> impl Strategy<Value = FiniteIntSet> {
    prop::collection::vec(-10i64..=10, 1..=4).prop_map(FiniteIntSet::new)
}

/// Window on which periodic-set identities are checked pointwise: wide
/// enough to contain every exceptional point, every finite-set element, and
/// several clean periods on both sides.
fn window(sets: &[&EventuallyPeriodicSet], finite: &[&FiniteIntSet]) -> (i64, i64) {
    let mut hi: i64 = 0;
    let mut span: i64 = 0;
    let mut modulus: i64 = 1;
    for s in sets {
        for p in s.add_points().chain(s.remove_points()) {
            hi = hi.max(p.abs());
        }
        modulus = modulus.max(s.modulus());
    }
    for f in finite {
        for x in f.elements() {
            hi = hi.max(x.abs());
        }
        span = span.max(f.span());
    }
    let w0 = 10 * modulus + 10 * span + hi + 10;
    (-w0, w0)
}

// ---------------------------------------------------------------------------
// subset algebra on finite groups

proptest! {
    /// Product sets are associative: (A·B)·C = A·(B·C).
    #[test]
    fn products_associate((g, a, b) in group_and_two_masks(), bits in prop::collection::vec(any::<bool>(), 16)) {
        let mut c = SubsetMask::empty(g.order());
        for x in 0..g.order().min(16) {
            if bits[x] {
                c.insert(x as u32);
            }
        }
        let left = product_set(g, &product_set(g, &a, &b).unwrap(), &c).unwrap();
        let right = product_set(g, &a, &product_set(g, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    /// Inversion is an involution and an antihomomorphism:
    /// (A⁻¹)⁻¹ = A and (A·B)⁻¹ = B⁻¹·A⁻¹.
    #[test]
    fn inversion_laws((g, a, b) in group_and_two_masks()) {
        prop_assert_eq!(inverse_set(g, &inverse_set(g, &a).unwrap()).unwrap(), a.clone());
        let lhs = inverse_set(g, &product_set(g, &a, &b).unwrap()).unwrap();
        let rhs = product_set(g, &inverse_set(g, &b).unwrap(), &inverse_set(g, &a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Translation by x then y is translation by the composite element,
    /// on the matching side.
    #[test]
    fn translations_compose((g, a) in group_and_mask(), x in 0u32..12, y in 0u32..12) {
        prop_assume!((x as usize) < g.order() && (y as usize) < g.order());
        let step = translate(g, y, &translate(g, x, &a, Side::Left).unwrap(), Side::Left).unwrap();
        prop_assert_eq!(step, translate(g, g.mul(y, x), &a, Side::Left).unwrap());
        let step = translate(g, y, &translate(g, x, &a, Side::Right).unwrap(), Side::Right).unwrap();
        prop_assert_eq!(step, translate(g, g.mul(x, y), &a, Side::Right).unwrap());
    }

    /// The complement predicate agrees with its definition: W·C covers G
    /// (right side), C·W covers G (left side).
    #[test]
    fn complement_predicate_is_definitional((g, w, c) in group_and_two_masks()) {
        prop_assume!(!w.is_empty() && !c.is_empty());
        let right = product_set(g, &w, &c).unwrap().is_full();
        prop_assert_eq!(is_complement(g, &w, &c, Side::Right).unwrap(), right);
        let left = product_set(g, &c, &w).unwrap().is_full();
        prop_assert_eq!(is_complement(g, &w, &c, Side::Left).unwrap(), left);
    }

    /// Every uniqueness witness reported for c₀ is covered through c₀ and
    /// through no other element of C.
    #[test]
    fn witnesses_certify_uniqueness((g, w, c) in group_and_two_masks()) {
        prop_assume!(!w.is_empty() && !c.is_empty());
        prop_assume!(is_complement(g, &w, &c, Side::Right).unwrap());
        let witnesses = uniqueness_witnesses(g, &w, &c, Side::Right).unwrap();
        for (c0, zs) in witnesses {
            for z in zs.iter() {
                // z = w·c₀ for some w ∈ W, and z ∉ W·(C ∖ {c₀}).
                let src = g.mul(z, g.inv_of(c0));
                prop_assert!(w.contains(src));
                for ci in c.iter() {
                    if ci != c0 {
                        prop_assert!(!w.contains(g.mul(z, g.inv_of(ci))));
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// eventually periodic sets on the line

proptest! {
    /// Union agrees with pointwise disjunction on a covering window.
    #[test]
    fn union_is_pointwise(a in periodic_set(), b in periodic_set()) {
        let u = a.union(&b).unwrap();
        let (lo, hi) = window(&[&a, &b, &u], &[]);
        for z in lo..=hi {
            prop_assert_eq!(u.contains(z), a.contains(z) || b.contains(z), "z = {}", z);
        }
    }

    /// Complementation agrees with pointwise negation and is an involution.
    #[test]
    fn complement_is_pointwise(a in periodic_set()) {
        let c = a.complement();
        let (lo, hi) = window(&[&a, &c], &[]);
        for z in lo..=hi {
            prop_assert_eq!(c.contains(z), !a.contains(z), "z = {}", z);
        }
        prop_assert_eq!(c.complement(), a);
    }

    /// Translation round-trips and shifts membership.
    #[test]
    fn translation_shifts_membership(a in periodic_set(), t in -30i64..=30) {
        let shifted = a.translate(t);
        let (lo, hi) = window(&[&a, &shifted], &[]);
        for z in lo..=hi {
            prop_assert_eq!(shifted.contains(z + t), a.contains(z), "z = {}", z);
        }
        prop_assert_eq!(shifted.translate(-t), a);
    }

    /// Dilation keeps exactly the multiples: f·a contains f·z iff a
    /// contains z, and nothing outside fℤ.
    #[test]
    fn dilation_is_pointwise(a in periodic_set(), f in 1i64..=5) {
        let scaled = a.scale(f).unwrap();
        let (lo, hi) = window(&[&a, &scaled], &[]);
        for z in lo..=hi {
            prop_assert_eq!(scaled.contains(f * z), a.contains(z), "z = {}", z);
            if z.rem_euclid(f) != 0 {
                prop_assert!(!scaled.contains(z), "z = {}", z);
            }
        }
    }

    /// The exact sumset agrees with the brute-force definition
    /// z ∈ W + C ⟺ ∃c ∈ C: z − c ∈ W on a covering window.
    #[test]
    fn sumset_matches_brute_force(w in periodic_set(), c in finite_set()) {
        let sum = w.sum_with_finite(&c).unwrap();
        let (lo, hi) = window(&[&w, &sum], &[&c]);
        for z in lo..=hi {
            let expected = c.elements().iter().any(|ci| w.contains(z - ci));
            prop_assert_eq!(sum.contains(z), expected, "z = {}", z);
        }
    }

    /// Serialization round-trips through JSON.
    #[test]
    fn periodic_sets_round_trip_json(a in periodic_set()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: EventuallyPeriodicSet = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    /// The anchor construction always yields a verified certificate, and
    /// the certificate survives translating either side.
    #[test]
    fn constructed_certificates_translate(c in finite_set(), seed in -40i64..=40, t in -40i64..=40) {
        let (w, witnesses) = construct_z_complement(&c, seed).unwrap();
        prop_assert_eq!(witnesses.len(), c.len());
        prop_assert!(verify_z_certificate(&w.translate(t), &c).unwrap().is_minimal());
        prop_assert!(verify_z_certificate(&w, &c.translate(t)).unwrap().is_minimal());
    }
}
