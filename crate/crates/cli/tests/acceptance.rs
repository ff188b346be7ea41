//! Acceptance criteria 1 to 8. Prints one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use ordlat::convergence::{o_limit, uo_converges_to, uo_limit, OLimitOracle, UoVariant};
use ordlat::gallery::closed_sets::{halving_rays, net_sup, uo_refute, SymClosedSet};
use ordlat::gallery::ext::{ratio, Ext};
use ordlat::gallery::ray_ring::{closed_subring, open_subring, rayring_closure, RayRingElem};
use ordlat::gallery::two_chain::{regular_without_b, twochain_dm};
use ordlat::gallery::GalleryReport;
use ordlat::generators::{all_lattices, corpus, named, CorpusEntry};
use ordlat::suite::{run_suite, theorem_violations, Suite};
use ordlat::{SweepConfig, SweepMode, UpSeq, Verdict};

const GALLERY_LIMIT: Duration = Duration::from_secs(1);
const CORPUS_LIMIT: Duration = Duration::from_secs(60);
const CONVERGENCE_LIMIT: Duration = Duration::from_secs(120);

const CORPUS_DOWNSETS: usize = 200;
const CORPUS_RANDOM: usize = 50;
const CORPUS_SEED: u64 = 2024;

const CONV_MAX_SIZE: usize = 5;
const CONV_MAX_PREFIX: usize = 2;
const CONV_MAX_CYCLE: usize = 3;
const TRIAD_EXHAUSTIVE_LIMIT: usize = 15;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn claim(r: &GalleryReport, id: &str, expected: Option<&str>) -> Result<(), String> {
    let c = r.claim(id).ok_or_else(|| format!("missing claim {id}"))?;
    ensure(c.verdict == Verdict::Pass, || format!("{id}: {}", c.verdict))?;
    if let Some(e) = expected {
        ensure(c.computed == e, || format!("{id}: computed {:?}, expected {e:?}", c.computed))?;
    }
    Ok(())
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let sup = net_sup(&halving_rays()).map_err(|e| e.to_string())?;
    ensure(sup == SymClosedSet::right_ray(Ext::zero()), || format!("sup = {sup}"))?;
    let a = SymClosedSet::left_ray(Ext::int(-1));
    let b = SymClosedSet::left_ray(Ext::zero());
    let r = uo_refute(&halving_rays(), &sup, &[(a.clone(), b)]).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::Refuted, || format!("verdict {}", r.verdict))?;
    let f = r.failing().ok_or("no failing pair")?;
    ensure(f.mapped_limit == a, || format!("mapped limit {}", f.mapped_limit))?;
    let required = a.join(&SymClosedSet::point(Ext::zero()));
    ensure(f.required == required, || format!("required {}", f.required))?;
    let t = within(start, GALLERY_LIMIT)?;
    Ok(format!("sup = {sup}, mapped {} vs required {}, {t:?}", f.mapped_limit, f.required))
}

fn criterion2() -> Outcome {
    let start = Instant::now();
    let r = twochain_dm().map_err(|e| e.to_string())?;
    claim(&r, "two-chain.adjoined", Some("{(1,1), (1,∞)}"))?;
    claim(
        &r,
        "two-chain.jid-fails",
        Some("⋁x_n = (1,1), (⋁x_n) ∧ (1,1/2) = (1,1/2), ⋁(x_n ∧ (1,1/2)) = (0,1/2)"),
    )?;
    claim(&r, "two-chain.mid-holds", None)?;
    ensure(!r.has_violation(), || "violation in report".into())?;
    let t = within(start, GALLERY_LIMIT)?;
    Ok(format!("adjoined {{(1,1), (1,∞)}}, JID triple reproduced, {t:?}"))
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let closure = open_subring().first_adherence();
    ensure(closure == closed_subring(), || format!("adherence {closure}"))?;
    ensure(!closure.contains(&RayRingElem::Zero), || "{0} in closure".into())?;
    let left = RayRingElem::Left(ratio(0, 1));
    let right = RayRingElem::Right(ratio(0, 1));
    ensure(left.meet(&right) == RayRingElem::Zero, || "inf in L is not {0}".into())?;
    ensure(
        closure.inf_within(&left, &right) == Some(RayRingElem::Empty),
        || "inf within closure is not ∅".into(),
    )?;
    ensure(closure.first_adherence() == closure, || "second adherence grows".into())?;
    let r = rayring_closure().map_err(|e| e.to_string())?;
    claim(&r, "ray-ring.meet-in-ring", Some("{0}"))?;
    claim(&r, "ray-ring.meet-in-closure", Some("∅"))?;
    claim(&r, "ray-ring.stabilizes", Some("stabilized at step 1"))?;
    let t = within(start, GALLERY_LIMIT)?;
    Ok(format!("closure {closure}, {t:?}"))
}

fn criterion4() -> Outcome {
    let start = Instant::now();
    let r = regular_without_b().map_err(|e| e.to_string())?;
    claim(&r, "square.b-fails", Some("A⁺ = {0}×{1} ∪ {1}×{1}, A⁺ ∩ L₀ = ∅"))?;
    claim(&r, "square.regular", None)?;
    let t = within(start, GALLERY_LIMIT)?;
    Ok(format!("(B) fails at x = (0,1), regular on definable chains, {t:?}"))
}

fn corpus_entries() -> Result<Vec<CorpusEntry>, String> {
    corpus(CORPUS_DOWNSETS, CORPUS_RANDOM, CORPUS_SEED).map_err(|e| e.to_string())
}

fn criterion5(entries: &[CorpusEntry]) -> Outcome {
    let start = Instant::now();
    let cfg = SweepConfig::default();
    ensure(entries.len() >= CORPUS_DOWNSETS + CORPUS_RANDOM, || "corpus too small".into())?;
    let outcomes: Vec<Result<Vec<String>, String>> = std::thread::scope(|scope| {
        let handles: Vec<_> = entries
            .iter()
            .map(|e| {
                let cfg = &cfg;
                scope.spawn(move || {
                    let mut bad = Vec::new();
                    for suite in Suite::ALL {
                        let subsets: Vec<Option<&_>> = if suite.uses_subset() {
                            e.subsets.iter().map(Some).collect()
                        } else {
                            vec![None]
                        };
                        for y in subsets {
                            let r = run_suite(suite, &e.lattice, y, cfg)
                                .map_err(|err| format!("{}/{suite}: {err}", e.name))?;
                            for p in theorem_violations(&r) {
                                bad.push(format!("{}/{}", e.name, p.id));
                            }
                        }
                    }
                    Ok(bad)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("no panic")).collect()
    });
    let mut bad = Vec::new();
    for o in outcomes {
        bad.extend(o?);
    }
    ensure(bad.is_empty(), || format!("violations: {bad:?}"))?;
    let t = within(start, CORPUS_LIMIT)?;
    let largest = entries.iter().map(|e| e.lattice.len()).max().unwrap_or(0);
    Ok(format!(
        "{} lattices (largest {largest}), zero theorem violations, {t:?}",
        entries.len()
    ))
}

fn criterion6() -> Outcome {
    let start = Instant::now();
    let lattices = all_lattices(CONV_MAX_SIZE);
    let mut sequences = 0usize;
    for l in &lattices {
        let oracle = OLimitOracle::new(l).map_err(|e| e.to_string())?;
        let ids: Vec<usize> = (0..l.len()).collect();
        for s in UpSeq::enumerate(&ids, CONV_MAX_PREFIX, CONV_MAX_CYCLE) {
            let lim = o_limit(l, &s);
            for x in 0..l.len() {
                ensure(oracle.converges_to(&s, x) == (lim == Some(x)), || {
                    format!("oracle disagrees on {s:?} at {x}")
                })?;
            }
            ensure(uo_limit(l, &s).limit == lim, || format!("uo != o on {s:?}"))?;
            let limits = (0..l.len())
                .filter(|&x| uo_converges_to(l, &s, x, UoVariant::Restricted).is_ok())
                .count();
            ensure(limits <= 1, || format!("{limits} uO-limits for {s:?}"))?;
            sequences += 1;
        }
    }
    for (name, l) in [("M3", named::m3()), ("N5", named::n5())] {
        let ids: Vec<usize> = (0..l.len()).collect();
        for s in UpSeq::enumerate(&ids, CONV_MAX_PREFIX, CONV_MAX_CYCLE) {
            let limits = (0..l.len())
                .filter(|&x| uo_converges_to(&l, &s, x, UoVariant::Restricted).is_ok())
                .count();
            ensure(limits <= 1, || format!("{name}: {limits} uO-limits for {s:?}"))?;
        }
    }
    let t = within(start, CONVERGENCE_LIMIT)?;
    Ok(format!("{} lattices, {sequences} sequences, {t:?}", lattices.len()))
}

fn criterion7(entries: &[CorpusEntry]) -> Outcome {
    let cfg = SweepConfig {
        lattice_exhaustive_limit: TRIAD_EXHAUSTIVE_LIMIT,
        ..SweepConfig::default()
    };
    let mut exhaustive = 0;
    let mut sampled = 0;
    let mut distributive = 0;
    for e in entries {
        let l = &e.lattice;
        let d = l.is_distributive().holds;
        let mid = l.check_mid(&cfg);
        let jid = l.check_jid(&cfg);
        ensure(mid.holds == d && jid.holds == d, || {
            format!("{}: distributive {d}, MID {}, JID {}", e.name, mid.holds, jid.holds)
        })?;
        if l.len() <= TRIAD_EXHAUSTIVE_LIMIT {
            ensure(mid.mode == SweepMode::Exhaustive, || format!("{} not exhaustive", e.name))?;
            exhaustive += 1;
        } else {
            sampled += 1;
        }
        distributive += d as usize;
    }
    for (name, l) in [("N5", named::n5()), ("M3", named::m3())] {
        ensure(
            !l.is_distributive().holds && !l.check_mid(&cfg).holds && !l.check_jid(&cfg).holds,
            || format!("{name} passes a law"),
        )?;
    }
    for e in entries.iter().filter(|e| e.kind == ordlat::generators::CorpusKind::Downset) {
        let l = &e.lattice;
        ensure(
            l.is_distributive().holds && l.check_mid(&cfg).holds && l.check_jid(&cfg).holds,
            || format!("down-set lattice {} fails a law", e.name),
        )?;
    }
    Ok(format!(
        "{} lattices agree ({exhaustive} exhaustive, {sampled} sampled, {distributive} distributive)",
        entries.len()
    ))
}

fn ordlat(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ordlat"))
        .args(args)
        .env_remove("ORDLAT_SEED")
        .env_remove("ORDLAT_SAMPLES")
        .env_remove("ORDLAT_EXHAUSTIVE_LIMIT")
        .env_remove("ORDLAT_DM_CAP")
        .output()
        .expect("binary runs")
}

fn expect_exit(args: &[&str], want: i32) -> Result<std::process::Output, String> {
    let o = ordlat(args);
    let got = o.status.code().unwrap_or(-1);
    ensure(got == want, || {
        format!("{args:?}: exit {got}, expected {want}: {}", String::from_utf8_lossy(&o.stderr))
    })?;
    Ok(o)
}

fn criterion8() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |f: &str| dir.path().join(f).display().to_string();

    // JSON round trip: load(emit(L)) re-emits the same bytes
    let (b3, once, twice) = (path("b3.json"), path("once.json"), path("twice.json"));
    expect_exit(&["gen", "boolean", "--atoms", "3", "-o", &b3], 0)?;
    expect_exit(&["dm", "-i", &b3, "--strip", "--emit", &once], 0)?;
    expect_exit(&["dm", "-i", &once, "--strip", "--emit", &twice], 0)?;
    let (a, b) = (fs::read(&once).unwrap(), fs::read(&twice).unwrap());
    ensure(a == b, || "round trip changed the file".into())?;

    // deterministic DOT
    let dl = path("dl.json");
    expect_exit(&["gen", "downset-lattice", "--size", "6", "--seed", "3", "-o", &dl], 0)?;
    let d1 = expect_exit(&["dm", "-i", &dl, "--format", "dot"], 0)?.stdout;
    let d2 = expect_exit(&["dm", "-i", &dl, "--format", "dot"], 0)?.stdout;
    ensure(d1 == d2, || "DOT differs between runs".into())?;

    // exit codes
    let n5 = path("n5.json");
    expect_exit(&["gen", "n5", "-o", &n5], 0)?;
    expect_exit(&["check", "--suite", "distributivity", "-i", &n5], 1)?;
    let bad = path("bad.json");
    fs::write(&bad, "{\"elements\": [{\"id\": 0,").unwrap();
    expect_exit(&["check", "-i", &bad], 2)?;
    expect_exit(&["dm", "-i", &dl, "--cap", "2"], 3)?;
    expect_exit(&["check", "-i", &b3], 0)?;
    expect_exit(&["gallery", "all"], 0)?;

    // JSON report determinism with timing stripped
    let report = || -> Result<String, String> {
        let o = expect_exit(&["check", "-i", &dl, "-i", &n5, "--format", "json"], 1)?;
        let mut v: Value = serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
        v.as_object_mut().ok_or("not an object")?.remove("timing_ms");
        Ok(serde_json::to_string(&v).unwrap())
    };
    ensure(report()? == report()?, || "JSON report differs between runs".into())?;
    Ok("round trip, DOT, exit codes 0/1/2/3, report determinism".into())
}

fn main() {
    let entries = corpus_entries();
    let results: Vec<(u8, &str, Outcome)> = vec![
        (1, "closed-set net", criterion1()),
        (2, "two-chain completion", criterion2()),
        (3, "ray-ring closure", criterion3()),
        (4, "regular without (B)", criterion4()),
        (5, "corpus property suite", entries.as_deref().map_err(Clone::clone).and_then(criterion5)),
        (6, "convergence suite", criterion6()),
        (7, "distributivity triad", entries.as_deref().map_err(Clone::clone).and_then(criterion7)),
        (8, "CLI contract", criterion8()),
    ];
    let mut failed = BTreeMap::new();
    for (n, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n} PASS {name}: {detail}"),
            Err(why) => {
                println!("criterion {n} FAIL {name}: {why}");
                failed.insert(*n, why.clone());
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {:?}", failed.keys().collect::<Vec<_>>());
        std::process::exit(1);
    }
}
