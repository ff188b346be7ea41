//! Named property suites run against one finite lattice (and, for the
//! subobject suites, one sublattice of it).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::convergence::{
    check_monotone_limit, o_limit, uo_converges_to, uo_limit, uo_limit_with, OLimitOracle,
    UoVariant, UpSeq,
};
use crate::cut::{self, cut_closure, DmOptions};
use crate::error::{Error, Result};
use crate::generators::random_sublattice;
use crate::lattice::FiniteLattice;
use crate::report::{PropertyVerdict, SuiteReport, Verdict};
use crate::set::{ElementSet, MAX_ELEMENTS};
use crate::subobject::{self, iterate_adherence, Convergence, FiniteAdherence};
use crate::sweep::{EmptySubsets, SweepConfig, SweepMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Convergence,
    CutsDm,
    Distributivity,
    Preservation,
    Subobjects,
}

impl Suite {
    /// Sorted by name.
    pub const ALL: [Suite; 5] = [
        Suite::Convergence,
        Suite::CutsDm,
        Suite::Distributivity,
        Suite::Preservation,
        Suite::Subobjects,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Convergence => "convergence",
            Suite::CutsDm => "cuts-dm",
            Suite::Distributivity => "distributivity",
            Suite::Preservation => "preservation",
            Suite::Subobjects => "subobjects",
        }
    }

    pub fn uses_subset(self) -> bool {
        matches!(self, Suite::Preservation | Suite::Subobjects)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown suite `{s}`")))
    }
}

/// Verdict ids that describe the input lattice rather than a theorem:
/// FAIL on these means the lattice lacks the property.
pub const LATTICE_PROPERTIES: [&str; 3] = ["dist.distributive", "dist.jid", "dist.mid"];

/// A FAIL that is not in [`LATTICE_PROPERTIES`].
pub fn theorem_violations(report: &SuiteReport) -> Vec<&PropertyVerdict> {
    report
        .properties
        .iter()
        .filter(|p| p.verdict == Verdict::Fail && !LATTICE_PROPERTIES.contains(&p.id.as_str()))
        .collect()
}

/// Sublattice used when a subset suite gets none: a seeded random one
/// of about half the lattice.
pub fn default_subset(lattice: &FiniteLattice, cfg: &SweepConfig) -> ElementSet {
    random_sublattice(lattice, cfg.seed, lattice.len().div_ceil(2)).members
}

pub fn run_suite(
    suite: Suite,
    lattice: &FiniteLattice,
    subset: Option<&ElementSet>,
    cfg: &SweepConfig,
) -> Result<SuiteReport> {
    let y = match subset {
        Some(y) => *y,
        None => default_subset(lattice, cfg),
    };
    let properties = match suite {
        Suite::Distributivity => distributivity(lattice, cfg),
        Suite::Convergence => convergence(lattice, cfg)?,
        Suite::CutsDm => cuts_dm(lattice, cfg)?,
        Suite::Subobjects => subobjects(lattice, &y, cfg)?,
        Suite::Preservation => preservation(lattice, &y, cfg)?,
    };
    Ok(SuiteReport::new(suite.name(), properties))
}

fn check_with<W: Serialize>(id: &str, anchor: &str, failure: Option<W>) -> PropertyVerdict {
    PropertyVerdict::check(id, anchor, failure.is_none()).witness(&failure)
}

pub fn distributivity(lattice: &FiniteLattice, cfg: &SweepConfig) -> Vec<PropertyVerdict> {
    let hom = lattice.homomorphism_characterization();
    let mid = lattice.check_mid(cfg);
    let jid = lattice.check_jid(cfg);
    let identities = match hom.identities_hold {
        None => PropertyVerdict::new(
            "dist.reparametrisation",
            "in a distributive lattice f and g agree after reparametrising (s, t)",
            Verdict::Inconclusive,
        )
        .detail("lattice is not distributive"),
        Some(ok) => PropertyVerdict::check(
            "dist.reparametrisation",
            "in a distributive lattice f and g agree after reparametrising (s, t)",
            ok,
        )
        .witness(&hom.identities_witness),
    };
    let agreement = mid.holds == hom.distributive && jid.holds == hom.distributive;
    vec![
        check_with(
            "dist.distributive",
            "a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)",
            hom.distributive_witness,
        ),
        PropertyVerdict::check(
            "dist.homomorphisms",
            "distributive iff every f_{s,t} is a homomorphism iff every g_{s,t} is",
            hom.consistent,
        )
        .witness(&hom.f_witness.or(hom.g_witness)),
        identities,
        check_with("dist.mid", "x ∨ ⋀A = ⋀(x ∨ A)", mid.witness.clone())
            .mode(mid.mode)
            .empty_subsets(EmptySubsets::Nonempty),
        check_with("dist.jid", "x ∧ ⋁A = ⋁(x ∧ A)", jid.witness.clone())
            .mode(jid.mode)
            .empty_subsets(EmptySubsets::Nonempty),
        PropertyVerdict::check(
            "dist.triad",
            "on a finite lattice the infinite laws each coincide with distributivity",
            agreement,
        )
        .mode(mid.mode.and(jid.mode)),
    ]
}

/// Lattices up to this size get every sequence with prefix <= 2 and cycle
/// <= 3; larger ones get `cfg.samples` seeded random ones.
pub const CONVERGENCE_EXHAUSTIVE_LIMIT: usize = 5;
pub const MAX_PREFIX: usize = 2;
pub const MAX_CYCLE: usize = 3;
/// The uniqueness and combination checks look at this many sequences.
const PAIR_SEQUENCES: usize = 120;

fn sequence_family(lattice: &FiniteLattice, cfg: &SweepConfig) -> (Vec<UpSeq>, SweepMode) {
    let n = lattice.len();
    if n <= CONVERGENCE_EXHAUSTIVE_LIMIT && !cfg.force_sampled {
        let ids: Vec<usize> = (0..n).collect();
        return (
            UpSeq::enumerate(&ids, MAX_PREFIX, MAX_CYCLE),
            SweepMode::Exhaustive,
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seqs: Vec<UpSeq> = (0..n).map(UpSeq::constant).collect();
    while seqs.len() < cfg.samples.max(n) {
        let p = rng.gen_range(0..=MAX_PREFIX);
        let c = rng.gen_range(1..=MAX_CYCLE);
        let prefix = (0..p).map(|_| rng.gen_range(0..n)).collect();
        let cycle = (0..c).map(|_| rng.gen_range(0..n)).collect();
        seqs.push(UpSeq::new(prefix, cycle).expect("nonempty cycle"));
    }
    let mode = SweepMode::Sampled {
        samples: cfg.samples,
        max_enumerated_size: 1,
    };
    (seqs, mode)
}

#[derive(Serialize)]
struct SeqWitness<'a> {
    seq: &'a UpSeq,
    #[serde(skip_serializing_if = "Option::is_none")]
    candidate: Option<usize>,
}

pub fn convergence(lattice: &FiniteLattice, cfg: &SweepConfig) -> Result<Vec<PropertyVerdict>> {
    let n = lattice.len();
    let (seqs, mode) = sequence_family(lattice, cfg);
    let mut out = Vec::new();

    if n <= CONVERGENCE_EXHAUSTIVE_LIMIT {
        let oracle = OLimitOracle::new(lattice)?;
        let bad = seqs.iter().find_map(|s| {
            let lim = o_limit(lattice, s);
            (0..n)
                .find(|&x| oracle.converges_to(s, x) != (lim == Some(x)))
                .map(|x| SeqWitness {
                    seq: s,
                    candidate: Some(x),
                })
        });
        out.push(
            check_with(
                "conv.oracle",
                "liminf = limsup = x iff some sandwich (M, N) squeezes the tail to x",
                bad,
            )
            .mode(mode),
        );
    } else {
        out.push(
            PropertyVerdict::new(
                "conv.oracle",
                "liminf = limsup = x iff some sandwich (M, N) squeezes the tail to x",
                Verdict::Inconclusive,
            )
            .detail(format!(
                "oracle runs only for |L| <= {CONVERGENCE_EXHAUSTIVE_LIMIT}"
            )),
        );
    }

    let bad = seqs
        .iter()
        .find(|s| uo_limit(lattice, s).limit != o_limit(lattice, s))
        .map(|s| SeqWitness {
            seq: s,
            candidate: None,
        });
    out.push(
        check_with(
            "conv.uo-equals-o",
            "on a finite lattice uO-limits and O-limits coincide",
            bad,
        )
        .mode(mode),
    );

    let probe = &seqs[..seqs.len().min(PAIR_SEQUENCES.max(n))];
    let probe_mode = if probe.len() == seqs.len() {
        mode
    } else {
        SweepMode::Sampled {
            samples: probe.len(),
            max_enumerated_size: 1,
        }
    };
    let bad = probe.iter().find_map(|s| {
        let limits: Vec<usize> = (0..n)
            .filter(|&x| uo_converges_to(lattice, s, x, UoVariant::Restricted).is_ok())
            .collect();
        (limits.len() > 1).then(|| SeqWitness {
            seq: s,
            candidate: Some(limits[1]),
        })
    });
    out.push(check_with("conv.uo-unique", "a uO-limit is unique", bad).mode(probe_mode));

    let bad = seqs
        .iter()
        .find(|s| matches!(check_monotone_limit(lattice, s), Ok(r) if !r.holds))
        .map(|s| SeqWitness {
            seq: s,
            candidate: None,
        });
    out.push(
        check_with(
            "conv.monotone",
            "a monotone sequence converges to the join (meet) of its range",
            bad,
        )
        .mode(mode),
    );

    let limited: Vec<(&UpSeq, usize)> = probe
        .iter()
        .filter_map(|s| o_limit(lattice, s).map(|x| (s, x)))
        .collect();
    let mut combo = None;
    'outer: for (s, x) in &limited {
        for (t, y) in &limited {
            let join = s.zip_with(t, |a, b| lattice.join(a, b));
            let meet = s.zip_with(t, |a, b| lattice.meet(a, b));
            if uo_limit(lattice, &join).limit != Some(lattice.join(*x, *y))
                || uo_limit(lattice, &meet).limit != Some(lattice.meet(*x, *y))
            {
                combo = Some((*s, *t));
                break 'outer;
            }
        }
    }
    out.push(check_with("conv.combination", "pointwise joins and meets of convergent sequences converge to the join and meet of the limits", combo).mode(probe_mode));

    let bad = probe.iter().find(|s| {
        uo_limit_with(lattice, s, UoVariant::Unrestricted).limit != uo_limit(lattice, s).limit
    });
    let experiment = match bad {
        None => PropertyVerdict::new(
            "conv.unrestricted-variant",
            "dropping s <= t from the uO definition changes no limit",
            Verdict::Pass,
        ),
        Some(s) => PropertyVerdict::new(
            "conv.unrestricted-variant",
            "dropping s <= t from the uO definition changes no limit",
            Verdict::Inconclusive,
        )
        .witness(&SeqWitness {
            seq: s,
            candidate: None,
        })
        .detail("the variants differ here; recorded as an observation"),
    };
    out.push(experiment.mode(probe_mode));
    Ok(out)
}

pub fn cuts_dm(lattice: &FiniteLattice, cfg: &SweepConfig) -> Result<Vec<PropertyVerdict>> {
    let p = lattice.poset();
    // a lattice has exactly |L| cuts, so the carrier cap does not apply
    let opts = DmOptions {
        max_elements: MAX_ELEMENTS,
        sweep: cfg.clone(),
        ..DmOptions::default()
    };
    let dm = cut::dm_completion_with(p, &opts)?;
    let mut out = dm.verification.clone();

    let mut witness = None;
    let mut closed = Vec::new();
    let members = p.all().to_vec();
    let mode = cfg.for_each_subset(&members, cfg.subset_exhaustive_limit, true, |ids| {
        let a = ElementSet::from_ids(ids.iter().copied());
        let c = cut_closure(p, &a);
        if !a.is_subset(&c) || cut_closure(p, &c) != c {
            witness = Some(a);
            return std::ops::ControlFlow::Break(());
        }
        if closed.len() < 64 {
            closed.push((a, c));
        }
        std::ops::ControlFlow::Continue(())
    });
    if witness.is_none() {
        'm: for (a, ca) in &closed {
            for (b, cb) in &closed {
                if a.is_subset(b) && !ca.is_subset(cb) {
                    witness = Some(*a);
                    break 'm;
                }
            }
        }
    }
    out.push(
        check_with(
            "cut.closure-laws",
            "A ⊆ A⁺⁻, (A⁺⁻)⁺⁻ = A⁺⁻ and A ⊆ B implies A⁺⁻ ⊆ B⁺⁻",
            witness,
        )
        .mode(mode)
        .empty_subsets(EmptySubsets::Literal),
    );

    let onto = dm.phi.len() == dm.cuts.len() && (0..dm.cuts.len()).all(|k| dm.phi.contains(&k));
    out.push(
        PropertyVerdict::check(
            "dm.lattice-iso",
            "the completion of a finite lattice is the lattice itself",
            onto,
        )
        .detail(format!("{} elements, {} cuts", p.len(), dm.cuts.len())),
    );
    Ok(out)
}

fn nonempty(cfg: &SweepConfig) -> SweepConfig {
    cfg.clone().with_empty_subsets(EmptySubsets::Nonempty)
}

/// Adherence checks enumerate sequences over the set; skipped above this.
pub const ADHERENCE_SUITE_LIMIT: usize = 128;

pub fn subobjects(
    lattice: &FiniteLattice,
    y: &ElementSet,
    cfg: &SweepConfig,
) -> Result<Vec<PropertyVerdict>> {
    subobject::require_sublattice(lattice, y)?;
    let desc = subobject::classify(lattice, y)?;
    let ne = nonempty(cfg);
    let mut out = Vec::new();

    let a_lit = subobject::has_property_a(lattice, y, cfg)?;
    let b_lit = subobject::has_property_b(lattice, y, cfg)?;
    let a_ne = subobject::has_property_a(lattice, y, &ne)?;
    let b_ne = subobject::has_property_b(lattice, y, &ne)?;

    out.push(
        check_with(
            "sub.finite-ab",
            "a finite sublattice has (A) and (B) for nonempty subsets",
            a_ne.witness.clone().or(b_ne.witness.clone()),
        )
        .mode(a_ne.mode.and(b_ne.mode))
        .empty_subsets(EmptySubsets::Nonempty),
    );
    let expected_a = y.contains(lattice.top());
    let expected_b = y.contains(lattice.bottom());
    out.push(
        PropertyVerdict::check(
            "sub.empty-subset",
            "with the empty subset, (A) holds iff Y contains the top and (B) iff Y contains the bottom",
            a_lit.holds == expected_a && b_lit.holds == expected_b,
        )
        .mode(a_lit.mode.and(b_lit.mode))
        .empty_subsets(cfg.empty_subsets)
        .witness(&a_lit.witness.clone().or(b_lit.witness.clone())),
    );

    let reg = subobject::is_regular(lattice, y, &ne)?;
    out.push(
        check_with(
            "sub.regular",
            "a finite sublattice is regular",
            reg.witness.clone(),
        )
        .mode(reg.mode)
        .empty_subsets(EmptySubsets::Nonempty),
    );
    let reg_lit = subobject::is_regular(lattice, y, cfg)?;
    out.push(
        conditional_check(
            "sub.ab-regular",
            "(A) and (B) together imply regularity",
            a_lit.holds && b_lit.holds,
            reg_lit.witness.clone(),
        )
        .mode(reg_lit.mode)
        .empty_subsets(cfg.empty_subsets),
    );
    out.push(
        conditional_check(
            "sub.convex-b",
            "a convex sublattice with a maximum has (B)",
            desc.convex,
            b_ne.witness.clone(),
        )
        .empty_subsets(EmptySubsets::Nonempty),
    );
    out.push(
        conditional_check(
            "sub.convex-a",
            "a convex sublattice with a minimum has (A)",
            desc.convex,
            a_ne.witness.clone(),
        )
        .empty_subsets(EmptySubsets::Nonempty),
    );

    if lattice.len() > ADHERENCE_SUITE_LIMIT {
        for id in [
            "sub.adherence",
            "sub.closed-iff-sup-inf",
            "sub.ideal-adherence",
        ] {
            out.push(
                PropertyVerdict::new(
                    id,
                    "adherence of subsets of a finite lattice",
                    Verdict::Inconclusive,
                )
                .detail(format!("skipped for |L| > {ADHERENCE_SUITE_LIMIT}")),
            );
        }
        return Ok(out);
    }

    let o_adh = subobject::first_o_adherence(lattice, y)?;
    let uo_adh = subobject::first_uo_adherence(lattice, y)?;
    let trace = iterate_adherence(
        &FiniteAdherence {
            lattice,
            kind: Convergence::O,
        },
        y,
        4,
    )?;
    let ok = o_adh == *y
        && uo_adh == *y
        && subobject::is_sublattice(lattice, &o_adh)
        && trace.stabilized_at == Some(0);
    out.push(
        PropertyVerdict::check(
            "sub.adherence",
            "in a finite lattice the O- and uO-adherence of a sublattice is itself",
            ok,
        )
        .witness(&(!ok).then_some((o_adh, uo_adh))),
    );
    let sup_inf = subobject::is_sup_inf_closed(lattice, y, &ne)?;
    out.push(
        PropertyVerdict::check(
            "sub.closed-iff-sup-inf",
            "a sublattice of a complete lattice is O-closed iff it is closed under sups and infs",
            (o_adh == *y) == sup_inf,
        )
        .empty_subsets(EmptySubsets::Nonempty),
    );
    let bad_ideal = (0..lattice.len()).find(|&x| {
        let ideal = lattice.poset().down_set(x);
        let o = subobject::first_o_adherence(lattice, &ideal);
        let uo = subobject::first_uo_adherence(lattice, &ideal);
        !matches!((o, uo), (Ok(o), Ok(uo)) if o == ideal && uo == ideal)
            || !subobject::classify(lattice, &ideal).is_ok_and(|d| d.ideal)
    });
    out.push(check_with(
        "sub.ideal-adherence",
        "adherences of an ideal are the ideal itself",
        bad_ideal,
    ));
    Ok(out)
}

fn conditional_check<W: Serialize>(
    id: &str,
    anchor: &str,
    hypothesis: bool,
    failure: Option<W>,
) -> PropertyVerdict {
    match (hypothesis, failure.is_some()) {
        (true, _) => check_with(id, anchor, failure),
        (false, true) => PropertyVerdict::new(id, anchor, Verdict::Inconclusive)
            .witness(&failure)
            .detail("hypothesis fails; conclusion fails too"),
        (false, false) => PropertyVerdict::new(id, anchor, Verdict::Inconclusive)
            .detail("hypothesis fails; no witness found"),
    }
}

pub fn preservation(
    lattice: &FiniteLattice,
    y: &ElementSet,
    cfg: &SweepConfig,
) -> Result<Vec<PropertyVerdict>> {
    let mut out = cut::dm_embed_sublattice(lattice, y, cfg)?.verdicts;
    out.extend(cut::check_preservation(lattice, y, cfg)?.verdicts);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    fn fails(r: &SuiteReport) -> Vec<String> {
        theorem_violations(r).iter().map(|p| p.id.clone()).collect()
    }

    #[test]
    fn n5_fails_distributivity_but_no_theorem() {
        let l = named::n5();
        let r = run_suite(Suite::Distributivity, &l, None, &SweepConfig::default()).unwrap();
        assert!(r.has_violation());
        assert!(fails(&r).is_empty(), "{r:#?}");
        let d = r
            .properties
            .iter()
            .find(|p| p.id == "dist.distributive")
            .unwrap();
        assert_eq!(d.verdict, Verdict::Fail);
        assert!(d.witness.is_some());
    }

    #[test]
    fn every_suite_passes_on_small_lattices() {
        let cfg = SweepConfig::default();
        for l in [named::boolean(3), named::m3(), named::n5(), named::chain(4)] {
            for s in Suite::ALL {
                let r = run_suite(s, &l, None, &cfg).unwrap();
                assert!(fails(&r).is_empty(), "{s}: {r:#?}");
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
