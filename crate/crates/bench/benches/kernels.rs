//! Criterion benchmarks for the hot kernels: sumset products, the
//! minimality oracle, whole-spectrum computation, and certificate checks
//! on the integer line.
//!
//! Run with `cargo bench -p mincomp-bench`; `-- --test` does a single
//! smoke pass without statistics.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use mincomp::{
    compute_spectrum, construct_z_complement, is_minimal_complement, is_minimal_to_some,
    product_set, verify_z_certificate, Caps, FiniteGroup, FiniteIntSet, Side, SubsetMask,
};

/// W·C over the dihedral group of order 32 with both factors near half the
/// group, the worst case for the row-OR loop.
fn bench_product_set(c: &mut Criterion) {
    let g = FiniteGroup::make_dihedral(16).unwrap();
    let n = g.order();
    let w = SubsetMask::from_elements(n, (0..n as u32).filter(|x| x % 2 == 0)).unwrap();
    let cset = SubsetMask::from_elements(n, (0..n as u32).filter(|x| x % 3 == 0)).unwrap();
    c.bench_function("product_set/dihedral32", |b| {
        b.iter(|| product_set(black_box(&g), black_box(&w), black_box(&cset)).unwrap())
    });
}

/// One full membership check: everything the certificate verifier does,
/// without the serde layer.
fn bench_minimal_complement(c: &mut Criterion) {
    let g = FiniteGroup::make_cyclic(64);
    let w = SubsetMask::from_elements(64, (0..64u32).filter(|x| x % 3 != 2)).unwrap();
    let cset = SubsetMask::from_elements(64, [0u32, 1, 2]).unwrap();
    c.bench_function("is_minimal_complement/z64", |b| {
        b.iter(|| is_minimal_complement(black_box(&g), black_box(&w), black_box(&cset), Side::Right))
    });
}

/// The branch-and-bound search behind "is this set minimal to some W".
fn bench_minimal_to_some(c: &mut Criterion) {
    let g = FiniteGroup::make_cyclic(18);
    let cset = SubsetMask::from_elements(18, [0u32, 1, 5]).unwrap();
    c.bench_function("is_minimal_to_some/z18", |b| {
        b.iter(|| is_minimal_to_some(black_box(&g), black_box(&cset), Side::Right, 24).unwrap())
    });
}

/// Exhaustive 𝒮 and 𝒜 for ℤ/12: the per-group unit of the family scans.
fn bench_spectrum(c: &mut Criterion) {
    let g = FiniteGroup::make_cyclic(12);
    let caps = Caps::default();
    c.bench_function("compute_spectrum/z12", |b| {
        b.iter(|| compute_spectrum(black_box(&g), Side::Right, black_box(&caps), None).unwrap())
    });
}

/// Construct-then-verify on the integer line for a spread-out finite set.
fn bench_zline(c: &mut Criterion) {
    let cset = FiniteIntSet::new([-7i64, 0, 1, 4, 11]);
    let (w, _) = construct_z_complement(&cset, 0).unwrap();
    c.bench_function("verify_z_certificate/span18", |b| {
        b.iter(|| verify_z_certificate(black_box(&w), black_box(&cset)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_product_set,
    bench_minimal_complement,
    bench_minimal_to_some,
    bench_spectrum,
    bench_zline
);
criterion_main!(benches);
