//! Subcommand implementations.
//!
//! Each command parses its inputs, runs the corresponding kernel from the
//! core crate, renders one primary output (JSON or CSV, always ending in a
//! newline), and emits it to `--out` or stdout.  Rendering never touches
//! floating point except in fields explicitly defined as approximations,
//! so identical inputs produce byte-identical outputs.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num::rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::json;

use mincomp::{
    build_disjoint_system, build_w_from_system, cartesian_co_minimal, catalog,
    compute_co_minimal_spectrum, compute_family_spectrum, compute_spectrum,
    construct_z_complement, density_experiment, enumerate_subgroups, gap_sets,
    lift_minimal_complement, lift_z, sk_inequality_holds, spectra, subgroup_as_group,
    verify_avoidance, verify_gap_exclusions, verify_z_certificate, ComplementCertificate,
    EventuallyPeriodicSet, FamilyTag, FiniteGroup, FiniteIntSet, Side, SubsetMask,
};

use crate::args::{
    Command, ConstructArgs, Format, GroupCmd, GroupKind, MethodArg, ZlineCmd,
};
use crate::golden;
use crate::{CliResult, Failure, RunConfig};

/// Upper bound on n for `gaps --verify`: certification builds the dense
/// ℤ/n table, which is quadratic in n.
const GAPS_VERIFY_MAX_N: u64 = 4096;

pub fn dispatch(command: Command, config: &RunConfig) -> CliResult<()> {
    match command {
        Command::Group { cmd } => group(cmd, config),
        Command::Verify { cert, table } => verify(&cert, table.as_deref(), config),
        Command::Construct(args) => {
            let text = construct_text(&args, config)?;
            emit(config, &text)
        }
        Command::Spectrum {
            group,
            table,
            side,
            k,
        } => {
            let g = load_group_arg(&group, &table, "--group/--table")?;
            let text = match k {
                None => spectrum_text(&g, side.into(), config)?,
                Some(k) => {
                    if config.format == Format::Csv {
                        return Err(Failure::Usage(
                            "the co-minimal tuple spectrum emits JSON only".into(),
                        ));
                    }
                    let spectrum =
                        compute_co_minimal_spectrum(&g, k, &config.caps, config.cache_dir.as_deref())?;
                    to_pretty_json(&spectrum)
                }
            };
            emit(config, &text)
        }
        Command::Family { n, tag } => {
            let text = family_text(n, tag.into(), config)?;
            emit(config, &text)
        }
        Command::Gaps { n, chain, verify } => {
            let (text, all_excluded) = gaps_text(n, &chain, verify, config)?;
            emit(config, &text)?;
            if !all_excluded {
                return Err(Failure::Verification(
                    "a gap-set size was not excluded by the oracle".into(),
                ));
            }
            Ok(())
        }
        Command::Zline { cmd } => zline(cmd, config),
        Command::Density { a, b, n } => {
            let a = parse_ratio(&a, "--a")?;
            let b = parse_ratio(&b, "--b")?;
            let report = density_experiment(&n, &a, &b)?;
            let text = match config.format {
                Format::Csv => spectra::density_csv(&report),
                Format::Json => to_pretty_json(&report),
            };
            emit(config, &text)
        }
        Command::Avoidance { eps, range } => {
            let eps = parse_ratio(&eps, "--eps")?;
            let (lo, hi) = parse_range(&range)?;
            let report = verify_avoidance(&eps, lo, hi)?;
            let text = match config.format {
                Format::Csv => spectra::avoidance_csv(&report),
                Format::Json => to_pretty_json(&report),
            };
            emit(config, &text)?;
            if report.total_violations > 0 {
                return Err(Failure::Verification(format!(
                    "{} grid points of the corner region fell inside U_n",
                    report.total_violations
                )));
            }
            Ok(())
        }
        Command::Scan { suite, out_dir } => golden::run(config, &suite, out_dir.as_deref()),
    }
}

// ---------------------------------------------------------------------------
// group subcommands

fn group(cmd: GroupCmd, config: &RunConfig) -> CliResult<()> {
    match cmd {
        GroupCmd::Make {
            kind,
            n,
            factors,
            left,
            right,
        } => {
            let g = make_group(kind, n, factors.as_deref(), left.as_deref(), right.as_deref())?;
            emit(config, &g.save_cayley_table())
        }
        GroupCmd::Load { table } => {
            let g = load_table(&table)?;
            emit(config, &g.save_cayley_table())
        }
        GroupCmd::Info { group, table } => {
            let g = load_group_arg(&group, &table, "--group/--table")?;
            let subgroups = enumerate_subgroups(&g)?;
            let info = json!({
                "label": g.label(),
                "order": g.order(),
                "hash": g.table_hash(),
                "cyclic": g.is_cyclic(),
                "abelian": g.is_abelian(),
                "nilpotent": g.is_nilpotent(),
                "supersolvable": g.is_supersolvable()?,
                "solvable": g.is_solvable(),
                "subgroups": subgroups.len(),
                "normalSubgroups": subgroups.iter().filter(|s| s.is_normal).count(),
            });
            emit(config, &to_pretty_json(&info))
        }
    }
}

fn make_group(
    kind: GroupKind,
    n: Option<usize>,
    factors: Option<&str>,
    left: Option<&Path>,
    right: Option<&Path>,
) -> CliResult<FiniteGroup> {
    let need_n = |n: Option<usize>| {
        n.ok_or_else(|| Failure::Usage("this kind needs --n".into()))
            .and_then(|v| {
                if v == 0 {
                    Err(Failure::Usage("--n must be positive".into()))
                } else {
                    Ok(v)
                }
            })
    };
    match kind {
        GroupKind::Cyclic => Ok(FiniteGroup::make_cyclic(need_n(n)?)),
        GroupKind::Dihedral => Ok(FiniteGroup::make_dihedral(need_n(n)?)?),
        GroupKind::Symmetric => Ok(FiniteGroup::make_symmetric(need_n(n)?)?),
        GroupKind::Abelian => {
            let spec = factors
                .ok_or_else(|| Failure::Usage("--kind abelian needs --factors, e.g. 2x2x3".into()))?;
            let parsed: Vec<usize> = spec
                .split('x')
                .map(|p| {
                    p.trim().parse::<usize>().map_err(|_| {
                        Failure::Usage(format!("bad factor {p:?} in --factors {spec:?}"))
                    })
                })
                .collect::<CliResult<_>>()?;
            Ok(FiniteGroup::make_abelian(&parsed)?)
        }
        GroupKind::Product => {
            let (l, r) = match (left, right) {
                (Some(l), Some(r)) => (l, r),
                _ => {
                    return Err(Failure::Usage(
                        "--kind product needs --left and --right table files".into(),
                    ))
                }
            };
            Ok(FiniteGroup::direct_product(&load_table(l)?, &load_table(r)?)?)
        }
    }
}

// ---------------------------------------------------------------------------
// verification

/// Certificate files come in two shapes: bare, or wrapped together with a
/// provenance block as `construct` emits them.
#[derive(Deserialize)]
struct WrappedCertificate {
    certificate: ComplementCertificate,
}

fn read_certificate(path: &Path) -> CliResult<ComplementCertificate> {
    let text = read_file(path)?;
    if let Ok(wrapped) = serde_json::from_str::<WrappedCertificate>(&text) {
        return Ok(wrapped.certificate);
    }
    serde_json::from_str::<ComplementCertificate>(&text)
        .map_err(|e| Failure::Usage(format!("{} is not a certificate file: {e}", path.display())))
}

fn verify(cert_path: &Path, table: Option<&Path>, config: &RunConfig) -> CliResult<()> {
    let cert = read_certificate(cert_path)?;
    let g = match table {
        Some(path) => load_table(path)?,
        None => parse_group_spec(&cert.group.label)?,
    };
    if !cert.group.matches(&g) {
        return Err(Failure::Verification(format!(
            "group mismatch: certificate names {} of order {}, table hash differs",
            cert.group.label, cert.group.order
        )));
    }
    match cert.verify(&g) {
        Ok(()) => {
            let report = json!({
                "ok": true,
                "group": cert.group.label,
                "side": cert.side,
                "wSize": cert.w.len(),
                "cSize": cert.c.len(),
            });
            emit(config, &to_pretty_json(&report))
        }
        Err(e) => Err(Failure::Verification(e.to_string())),
    }
}

// ---------------------------------------------------------------------------
// construction

pub fn construct_text(args: &ConstructArgs, config: &RunConfig) -> CliResult<String> {
    match args.method {
        MethodArg::Thm31 => {
            let g = load_group_arg(&args.group, &args.table, "--group/--table")?;
            let set = args
                .set
                .as_deref()
                .ok_or_else(|| Failure::Usage("--method thm31 needs --set".into()))?;
            let c = mask_from_list(g.order(), set, "--set")?;
            let (system, restarts) = build_disjoint_system(&g, &c, config.seed)?;
            let cert = build_w_from_system(&g, &system)?;
            let out = json!({
                "certificate": cert,
                "provenance": {
                    "method": "thm3.1-greedy",
                    "seed": config.seed,
                    "restarts": restarts,
                },
            });
            Ok(to_pretty_json(&out))
        }
        MethodArg::Lift => {
            let g = load_group_arg(&args.group, &args.table, "--group/--table")?;
            let index = args
                .index
                .ok_or_else(|| Failure::Usage("--method lift needs --index".into()))?;
            let cosets = mask_elements(
                args.cosets
                    .as_deref()
                    .ok_or_else(|| Failure::Usage("--method lift needs --cosets".into()))?,
                "--cosets",
            )?;
            if index == 0 || g.order() % index != 0 {
                return Err(Failure::Usage(format!(
                    "--index {index} does not divide the group order {}",
                    g.order()
                )));
            }
            let subgroups = enumerate_subgroups(&g)?;
            let h = subgroups
                .iter()
                .find(|s| s.is_normal && s.mask.len() * index == g.order())
                .ok_or_else(|| {
                    Failure::Usage(format!(
                        "no normal subgroup of index {index} in {}",
                        g.label()
                    ))
                })?;
            let (h_group, _) = subgroup_as_group(&g, &h.mask)?;
            let inner: Vec<ComplementCertificate> = if args.inner_cert.is_empty() {
                let identity = SubsetMask::singleton(h_group.order(), h_group.identity());
                let full = SubsetMask::full(h_group.order());
                let cert = ComplementCertificate::new(&h_group, &full, &identity, Side::Right)?;
                vec![cert; cosets.len()]
            } else {
                if args.inner_cert.len() != cosets.len() {
                    return Err(Failure::Usage(format!(
                        "{} cosets but {} --inner-cert files",
                        cosets.len(),
                        args.inner_cert.len()
                    )));
                }
                args.inner_cert
                    .iter()
                    .map(|p| read_certificate(p))
                    .collect::<CliResult<_>>()?
            };
            let s = match args.s {
                Some(s) => s,
                None => (2..=8)
                    .find(|&s| {
                        sk_inequality_holds(index as u64, cosets.len() as u64, s as u64)
                    })
                    .ok_or_else(|| {
                        Failure::Usage(
                            "no spread parameter in 2..=8 satisfies the anchor inequality; \
                             the quotient is too small for this many cosets"
                                .into(),
                        )
                    })?,
            };
            let result = lift_minimal_complement(&g, h, &cosets, &inner, s, config.seed)?;
            let out = json!({
                "certificate": result.certificate,
                "provenance": {
                    "method": "thm3.4-lift",
                    "seed": config.seed,
                    "restarts": result.iterations,
                    "skTuple": {
                        "k": result.tuple.k,
                        "s": result.tuple.s,
                        "entries": result.tuple.entries,
                    },
                    "rowChoices": result.row_choices,
                },
            });
            Ok(to_pretty_json(&out))
        }
        MethodArg::Product => {
            let g1 = load_group_arg(&args.left_group, &args.left_table, "--left-group/--left-table")?;
            let g2 = load_group_arg(
                &args.right_group,
                &args.right_table,
                "--right-group/--right-table",
            )?;
            let take = |v: &Option<String>, name: &str| -> CliResult<String> {
                v.clone()
                    .ok_or_else(|| Failure::Usage(format!("--method product needs {name}")))
            };
            let a1 = mask_from_list(g1.order(), &take(&args.left_a, "--left-a")?, "--left-a")?;
            let b1 = mask_from_list(g1.order(), &take(&args.left_b, "--left-b")?, "--left-b")?;
            let a2 = mask_from_list(g2.order(), &take(&args.right_a, "--right-a")?, "--right-a")?;
            let b2 = mask_from_list(g2.order(), &take(&args.right_b, "--right-b")?, "--right-b")?;
            let (product, a, b) = cartesian_co_minimal(&g1, &g2, (&a1, &b1), (&a2, &b2))?;
            if let Some(path) = &args.out_table {
                write_file(path, &product.save_cayley_table())?;
            }
            let out = json!({
                "group": {
                    "label": product.label(),
                    "order": product.order(),
                    "hash": product.table_hash(),
                },
                "a": a.elements(),
                "b": b.elements(),
                "sizes": [a.len(), b.len()],
                "verified": true,
                "provenance": {
                    "method": "prop2.6-product",
                    "seed": config.seed,
                    "restarts": 0,
                },
            });
            Ok(to_pretty_json(&out))
        }
    }
}

// ---------------------------------------------------------------------------
// spectra renderings (shared with the golden suite)

pub fn spectrum_text(g: &FiniteGroup, side: Side, config: &RunConfig) -> CliResult<String> {
    let spectrum = compute_spectrum(g, side, &config.caps, config.cache_dir.as_deref())?;
    if !spectrum.complete {
        eprintln!(
            "note: order {} exceeds the spectra caps; reporting the trivially known part only",
            g.order()
        );
    }
    Ok(match config.format {
        Format::Csv => spectra::spectrum_csv(&spectrum),
        Format::Json => to_pretty_json(&spectrum),
    })
}

pub fn family_text(n: usize, tag: FamilyTag, config: &RunConfig) -> CliResult<String> {
    let family = compute_family_spectrum(n, tag, &config.caps, config.cache_dir.as_deref())?;
    if !family.catalog_complete {
        eprintln!("note: the group listing for order {n} is incomplete; sets are catalog-relative");
    }
    if !family.spectra_complete {
        eprintln!("note: a member spectrum was capped; sets may be proper subsets of the truth");
    }
    Ok(match config.format {
        Format::Csv => spectra::family_csv(&[family]),
        Format::Json => to_pretty_json(&family),
    })
}

pub fn gaps_text(
    n: u64,
    chain: &[u64],
    verify: bool,
    config: &RunConfig,
) -> CliResult<(String, bool)> {
    let gap = gap_sets(n, chain)?;
    if !verify {
        let out = json!({ "gapSet": gap, "exclusions": null });
        return Ok((to_pretty_json(&out), true));
    }
    if n > GAPS_VERIFY_MAX_N {
        return Err(Failure::Usage(format!(
            "--verify builds the full ℤ/{n} table; supported up to n = {GAPS_VERIFY_MAX_N}"
        )));
    }
    let report = verify_gap_exclusions(n, chain, &config.caps)?;
    let all_excluded = report.all_excluded;
    let out = json!({ "gapSet": gap, "exclusions": report });
    Ok((to_pretty_json(&out), all_excluded))
}

// ---------------------------------------------------------------------------
// integer line

/// On-disk shape of an integer-line certificate: the witness set and the
/// finite set.  Extra fields (witnesses, lift provenance) are ignored.
#[derive(Deserialize)]
pub struct ZCertFile {
    pub w: EventuallyPeriodicSet,
    pub c: FiniteIntSet,
}

fn zline(cmd: ZlineCmd, config: &RunConfig) -> CliResult<()> {
    match cmd {
        ZlineCmd::Construct { set, offset } => {
            let elements = parse_i64_list(&set, "--set")?;
            let c = FiniteIntSet::new(elements);
            let (w, witnesses) = construct_z_complement(&c, offset)?;
            let out = json!({ "w": w, "c": c, "witnesses": witnesses });
            emit(config, &to_pretty_json(&out))
        }
        ZlineCmd::Verify { cert } => {
            let text = read_file(&cert)?;
            let file: ZCertFile = serde_json::from_str(&text).map_err(|e| {
                Failure::Usage(format!(
                    "{} is not an integer-line certificate: {e}",
                    cert.display()
                ))
            })?;
            let verdict = verify_z_certificate(&file.w, &file.c)?;
            emit(config, &to_pretty_json(&verdict))?;
            if !verdict.is_minimal() {
                return Err(Failure::Verification(describe_z_verdict(&verdict)));
            }
            Ok(())
        }
        ZlineCmd::Lift { n, reps, inner, s } => {
            let inner_pairs: Vec<(FiniteIntSet, EventuallyPeriodicSet)> = match inner {
                None => reps
                    .iter()
                    .map(|_| {
                        (
                            FiniteIntSet::new([0]),
                            EventuallyPeriodicSet::all_integers(),
                        )
                    })
                    .collect(),
                Some(path) => {
                    let text = read_file(&path)?;
                    let files: Vec<ZCertFile> = serde_json::from_str(&text).map_err(|e| {
                        Failure::Usage(format!(
                            "{} is not a list of integer-line certificates: {e}",
                            path.display()
                        ))
                    })?;
                    files.into_iter().map(|f| (f.c, f.w)).collect()
                }
            };
            let result = lift_z(n, &reps, &inner_pairs, s, config.seed)?;
            let out = json!({
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
            });
            emit(config, &to_pretty_json(&out))
        }
    }
}

fn describe_z_verdict(verdict: &mincomp::ZVerdict) -> String {
    match verdict {
        mincomp::ZVerdict::Verified { .. } => "verified".into(),
        mincomp::ZVerdict::NotComplement { missing } => {
            format!("not a complement: {missing} is uncovered")
        }
        mincomp::ZVerdict::NotMinimal { element } => {
            format!("not minimal: {element} is redundant")
        }
    }
}

// ---------------------------------------------------------------------------
// shared input plumbing

pub fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

pub fn load_table(path: &Path) -> CliResult<FiniteGroup> {
    let text = read_file(path)?;
    let g = FiniteGroup::load_cayley_table(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let label = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("loaded")
        .to_string();
    Ok(g.with_label(label))
}

/// Accepts `cyclic:N`, `dihedral:N`, `symmetric:N`, `abelian:F1xF2x…`, or
/// the exact label of a shipped catalog group.
pub fn parse_group_spec(spec: &str) -> CliResult<FiniteGroup> {
    if let Some((kind, rest)) = spec.split_once(':') {
        let parse_n = |rest: &str| -> CliResult<usize> {
            rest.parse::<usize>()
                .map_err(|_| Failure::Usage(format!("bad order in group spec {spec:?}")))
                .and_then(|v| {
                    if v == 0 {
                        Err(Failure::Usage("group order must be positive".into()))
                    } else {
                        Ok(v)
                    }
                })
        };
        match kind {
            "cyclic" => return Ok(FiniteGroup::make_cyclic(parse_n(rest)?)),
            "dihedral" => return Ok(FiniteGroup::make_dihedral(parse_n(rest)?)?),
            "symmetric" => return Ok(FiniteGroup::make_symmetric(parse_n(rest)?)?),
            "abelian" => {
                let factors: Vec<usize> = rest
                    .split('x')
                    .map(|p| {
                        p.parse::<usize>().map_err(|_| {
                            Failure::Usage(format!("bad factor {p:?} in group spec {spec:?}"))
                        })
                    })
                    .collect::<CliResult<_>>()?;
                return Ok(FiniteGroup::make_abelian(&factors)?);
            }
            _ => {}
        }
    }
    catalog()
        .iter()
        .find(|entry| entry.group.label() == spec)
        .map(|entry| entry.group.clone())
        .ok_or_else(|| {
            Failure::Usage(format!(
                "unrecognized group spec {spec:?}; use cyclic:N, dihedral:N, symmetric:N, \
                 abelian:F1xF2x…, or a catalog label"
            ))
        })
}

pub fn load_group_arg(
    group: &Option<String>,
    table: &Option<PathBuf>,
    what: &str,
) -> CliResult<FiniteGroup> {
    match (group, table) {
        (Some(_), Some(_)) => Err(Failure::Usage(format!(
            "give one of {what}, not both"
        ))),
        (Some(spec), None) => parse_group_spec(spec),
        (None, Some(path)) => load_table(path),
        (None, None) => Err(Failure::Usage(format!("need {what}"))),
    }
}

pub fn mask_elements(list: &str, flag: &str) -> CliResult<Vec<u32>> {
    list.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Failure::Usage(format!("bad element {p:?} in {flag}")))
        })
        .collect()
}

pub fn mask_from_list(order: usize, list: &str, flag: &str) -> CliResult<SubsetMask> {
    let elements = mask_elements(list, flag)?;
    SubsetMask::from_elements(order, &elements)
        .map_err(|e| Failure::Usage(format!("{flag}: {e}")))
}

pub fn parse_i64_list(list: &str, flag: &str) -> CliResult<Vec<i64>> {
    list.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Usage(format!("bad integer {p:?} in {flag}")))
        })
        .collect()
}

pub fn parse_ratio(text: &str, flag: &str) -> CliResult<BigRational> {
    BigRational::from_str(text.trim())
        .map_err(|_| Failure::Usage(format!("{flag} must be a ratio like 1/5, got {text:?}")))
}

/// Inclusive range `lo..hi` (also accepts `lo..=hi`).
pub fn parse_range(text: &str) -> CliResult<(u64, u64)> {
    let err = || Failure::Usage(format!("--range must look like 36..100, got {text:?}"));
    let (lo, hi) = text.split_once("..").ok_or_else(err)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo = lo.trim().parse::<u64>().map_err(|_| err())?;
    let hi = hi.trim().parse::<u64>().map_err(|_| err())?;
    if lo > hi {
        return Err(Failure::Usage(format!("empty range {text:?}")));
    }
    Ok((lo, hi))
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

pub fn emit(config: &RunConfig, text: &str) -> CliResult<()> {
    match &config.out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
