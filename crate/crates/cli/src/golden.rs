//! The frozen end-to-end suite behind `scan --suite golden`.
//!
//! Each job drives one full command path with pinned inputs, asserts its
//! domain postcondition, and returns the rendered output.  [`run`] executes
//! every job twice and fails any job whose two renderings differ by a byte,
//! so a passing scan certifies determinism as well as correctness.  Caps
//! and seeds are pinned inside the jobs — the suite means the same thing in
//! every environment.

use std::collections::BTreeSet;
use std::path::Path;

use serde_json::json;
use sha2::{Digest, Sha256};

use mincomp::{
    build_disjoint_system, build_w_from_system, compute_family_spectrum, compute_spectrum,
    construct_z_complement, density_experiment, lift_z, spectra, verify_avoidance,
    verify_z_certificate, Caps, EventuallyPeriodicSet, FamilyTag, FiniteGroup, FiniteIntSet,
    Side, ZVerdict,
};
use num::rational::BigRational;
use num::BigInt;

use crate::args::{ConstructArgs, Format, MethodArg};
use crate::ops;
use crate::{CliResult, Failure, RunConfig};

struct Job {
    name: &'static str,
    ext: &'static str,
    run: fn(&RunConfig) -> CliResult<String>,
}

fn jobs() -> Vec<Job> {
    vec![
        Job { name: "spectrum-z6", ext: "csv", run: spectrum_z6 },
        Job { name: "spectrum-z9", ext: "json", run: spectrum_z9 },
        Job { name: "family-n6-all", ext: "json", run: family_n6_all },
        Job { name: "family-n8-chain", ext: "csv", run: family_n8_chain },
        Job { name: "construct-thm31-z33", ext: "json", run: construct_thm31_z33 },
        Job { name: "construct-lift-z40", ext: "json", run: construct_lift_z40 },
        Job { name: "construct-product-z6sq", ext: "json", run: construct_product_z6sq },
        Job { name: "zline-construct", ext: "json", run: zline_construct },
        Job { name: "zline-lift-n20", ext: "json", run: zline_lift_n20 },
        Job { name: "gaps-n36", ext: "json", run: gaps_n36 },
        Job { name: "density-n300", ext: "csv", run: density_n300 },
        Job { name: "avoidance-eps10", ext: "csv", run: avoidance_eps10 },
        Job { name: "verify-tamper", ext: "json", run: verify_tamper },
    ]
}

pub fn run(config: &RunConfig, suite: &str, out_dir: Option<&Path>) -> CliResult<()> {
    if suite != "golden" {
        return Err(Failure::Usage(format!(
            "unknown suite {suite:?}; available: golden"
        )));
    }
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    // Frozen configuration: only the cache directory and thread pool come
    // from the caller; caps, seeds, and formats are pinned per job.
    let frozen = RunConfig {
        seed: 0,
        caps: Caps::default(),
        cache_dir: config.cache_dir.clone(),
        format: Format::Json,
        threads: config.threads,
        out: None,
    };
    let jobs = jobs();
    let mut failed = 0usize;
    for job in &jobs {
        match run_twice(job, &frozen) {
            Ok(text) => {
                let digest = hex::encode(Sha256::digest(text.as_bytes()));
                if let Some(dir) = out_dir {
                    ops::write_file(&dir.join(format!("{}.{}", job.name, job.ext)), &text)?;
                }
                println!(
                    "[golden] {}: PASS ({} bytes, sha256 {})",
                    job.name,
                    text.len(),
                    &digest[..12]
                );
            }
            Err(f) => {
                failed += 1;
                println!("[golden] {}: FAIL ({})", job.name, f.message());
            }
        }
    }
    println!("[golden] {}/{} jobs passed", jobs.len() - failed, jobs.len());
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} golden jobs failed")));
    }
    Ok(())
}

fn run_twice(job: &Job, config: &RunConfig) -> CliResult<String> {
    let first = (job.run)(config)?;
    let second = (job.run)(config)?;
    if first != second {
        return Err(Failure::Verification(
            "two runs differed byte for byte".into(),
        ));
    }
    Ok(first)
}

fn expect(cond: bool, msg: &str) -> CliResult<()> {
    if cond {
        Ok(())
    } else {
        Err(Failure::Verification(msg.into()))
    }
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

// ---------------------------------------------------------------------------
// jobs

fn spectrum_z6(config: &RunConfig) -> CliResult<String> {
    let mut config = config.clone();
    config.format = Format::Csv;
    let g = FiniteGroup::make_cyclic(6);
    let spectrum = compute_spectrum(&g, Side::Right, &config.caps, config.cache_dir.as_deref())?;
    expect(
        spectrum.s_set() == BTreeSet::from([1, 2, 3, 4, 6]),
        "cyclic:6 sizes drifted from {1,2,3,4,6}",
    )?;
    ops::spectrum_text(&g, Side::Right, &config)
}

fn spectrum_z9(config: &RunConfig) -> CliResult<String> {
    let g = FiniteGroup::make_cyclic(9);
    let spectrum = compute_spectrum(&g, Side::Right, &config.caps, config.cache_dir.as_deref())?;
    expect(
        spectrum.s_set() == BTreeSet::from([1, 2, 3, 4, 5, 6, 9]),
        "cyclic:9 sizes drifted from {1,…,6,9}",
    )?;
    ops::spectrum_text(&g, Side::Right, config)
}

fn family_n6_all(config: &RunConfig) -> CliResult<String> {
    let family =
        compute_family_spectrum(6, FamilyTag::All, &config.caps, config.cache_dir.as_deref())?;
    expect(family.members.len() == 2, "order 6 has two groups")?;
    expect(
        family.catalog_complete && family.spectra_complete,
        "order 6 must be fully computable",
    )?;
    expect(
        family.a_set.is_subset(&family.s_set),
        "the every-size set must embed in the some-size set",
    )?;
    ops::family_text(6, FamilyTag::All, config)
}

fn family_n8_chain(config: &RunConfig) -> CliResult<String> {
    let families: Vec<spectra::FamilySpectrum> = FamilyTag::ALL_TAGS
        .iter()
        .map(|tag| compute_family_spectrum(8, *tag, &config.caps, config.cache_dir.as_deref()))
        .collect::<mincomp::Result<_>>()?;
    for pair in families.windows(2) {
        expect(
            pair[1].s_set.is_subset(&pair[0].s_set),
            "family chain inclusion broke at order 8",
        )?;
    }
    Ok(spectra::family_csv(&families))
}

fn construct_thm31_z33(config: &RunConfig) -> CliResult<String> {
    let mut config = config.clone();
    config.seed = 7;
    let args = ConstructArgs {
        method: MethodArg::Thm31,
        group: Some("cyclic:33".into()),
        set: Some("0,1".into()),
        ..Default::default()
    };
    let text = ops::construct_text(&args, &config)?;
    let wrapped: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Verification(format!("unparseable output: {e}")))?;
    let cert: mincomp::ComplementCertificate =
        serde_json::from_value(wrapped["certificate"].clone())
            .map_err(|e| Failure::Verification(format!("no certificate block: {e}")))?;
    cert.verify(&FiniteGroup::make_cyclic(33))
        .map_err(|e| Failure::Verification(e.to_string()))?;
    Ok(text)
}

fn construct_lift_z40(config: &RunConfig) -> CliResult<String> {
    let args = ConstructArgs {
        method: MethodArg::Lift,
        group: Some("cyclic:40".into()),
        index: Some(20),
        cosets: Some("1".into()),
        s: Some(2),
        ..Default::default()
    };
    let text = ops::construct_text(&args, config)?;
    let wrapped: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Verification(format!("unparseable output: {e}")))?;
    let cert: mincomp::ComplementCertificate =
        serde_json::from_value(wrapped["certificate"].clone())
            .map_err(|e| Failure::Verification(format!("no certificate block: {e}")))?;
    expect(cert.c.len() == 1, "one coset with a singleton inner set lifts to size 1")?;
    cert.verify(&FiniteGroup::make_cyclic(40))
        .map_err(|e| Failure::Verification(e.to_string()))?;
    Ok(text)
}

fn construct_product_z6sq(config: &RunConfig) -> CliResult<String> {
    let args = ConstructArgs {
        method: MethodArg::Product,
        left_group: Some("cyclic:6".into()),
        left_a: Some("0,3".into()),
        left_b: Some("0,1,2".into()),
        right_group: Some("cyclic:6".into()),
        right_a: Some("0,3".into()),
        right_b: Some("0,1,2".into()),
        ..Default::default()
    };
    let text = ops::construct_text(&args, config)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Verification(format!("unparseable output: {e}")))?;
    expect(
        value["sizes"] == json!([4, 9]),
        "the squared pair must have sizes (4, 9)",
    )?;
    Ok(text)
}

fn zline_construct(_config: &RunConfig) -> CliResult<String> {
    let c = FiniteIntSet::new([0, 1]);
    let (w, witnesses) = construct_z_complement(&c, 0)?;
    // The anchor train for {0,1} at offset 0 removes exactly −1 and 3.
    expect(
        !w.contains(-1) && !w.contains(3) && w.contains(0) && w.contains(2),
        "the worked example drifted",
    )?;
    let verdict = verify_z_certificate(&w, &c)?;
    expect(verdict.is_minimal(), "construction must verify")?;
    Ok(ops::to_pretty_json(&json!({
        "w": w,
        "c": c,
        "witnesses": witnesses,
    })))
}

fn zline_lift_n20(_config: &RunConfig) -> CliResult<String> {
    let inner = vec![(
        FiniteIntSet::new([0]),
        EventuallyPeriodicSet::all_integers(),
    )];
    let result = lift_z(20, &[3], &inner, Some(2), 0)?;
    expect(
        result.c.elements() == [3],
        "a singleton lift lands on its representative",
    )?;
    match verify_z_certificate(&result.w, &result.c)? {
        ZVerdict::Verified { .. } => {}
        other => {
            return Err(Failure::Verification(format!(
                "lifted certificate failed: {other:?}"
            )))
        }
    }
    Ok(ops::to_pretty_json(&json!({
        "w": result.w,
        "c": result.c,
        "witnesses": result.witnesses,
        "s": result.s,
        "skTuple": {
            "k": result.tuple.k,
            "s": result.tuple.s,
            "entries": result.tuple.entries,
        },
        "rowChoices": result.row_choices,
        "iterations": result.iterations,
    })))
}

fn gaps_n36(config: &RunConfig) -> CliResult<String> {
    let (text, all_excluded) = ops::gaps_text(36, &[2, 4], true, config)?;
    expect(all_excluded, "every gap size at n = 36 is excluded")?;
    Ok(text)
}

fn density_n300(_config: &RunConfig) -> CliResult<String> {
    let report = density_experiment(&[300], &rat(0, 1), &rat(1, 3))?;
    expect(
        report.rows[0].count == 100 && report.rows[0].total == 201,
        "the closed-form count at n = 300 is 100 of 201",
    )?;
    Ok(spectra::density_csv(&report))
}

fn avoidance_eps10(_config: &RunConfig) -> CliResult<String> {
    let report = verify_avoidance(&rat(1, 10), 36, 60)?;
    expect(report.least_n == 36, "the ε = 1/10 threshold is 36")?;
    expect(report.total_violations == 0, "the corner region must avoid U_n")?;
    Ok(spectra::avoidance_csv(&report))
}

/// Negative path: a certificate with one witness redirected at an element
/// covered through a different set element must fail re-verification.
fn verify_tamper(_config: &RunConfig) -> CliResult<String> {
    let g = FiniteGroup::make_cyclic(12);
    let c = mincomp::SubsetMask::from_elements(12, &[0, 1])
        .map_err(|e| Failure::Verification(e.to_string()))?;
    let (system, _) = build_disjoint_system(&g, &c, 0)?;
    let mut cert = build_w_from_system(&g, &system)?;
    let keys: Vec<u32> = cert.witnesses.keys().copied().collect();
    expect(keys.len() == 2, "a two-element set carries two witnesses")?;
    let w0 = cert.w[0];
    // Point the first witness at something covered through the other
    // element: it can no longer be unique to its own.
    let forged = g.mul(w0, keys[1]);
    cert.witnesses.insert(keys[0], forged);
    match cert.verify(&g) {
        Ok(()) => Err(Failure::Verification(
            "a tampered certificate verified".into(),
        )),
        Err(e) => Ok(ops::to_pretty_json(&json!({
            "tampered": true,
            "failedAsExpected": true,
            "message": e.to_string(),
        }))),
    }
}
