//! Cut operators, relative cuts, the Dedekind-MacNeille completion of a
//! finite poset and the embedding of `DM(Y)` into `DM(L)` for a sublattice.

use std::collections::HashMap;
use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::poset::FinitePoset;
use crate::report::{PropertyVerdict, Verdict};
use crate::set::{ElementSet, MAX_ELEMENTS};
use crate::subobject::{self, BoundPropertyCheck};
use crate::sweep::{SweepConfig, SweepMode};

pub const DEFAULT_DM_MAX_ELEMENTS: usize = 64;
pub const DEFAULT_CUT_CAP: usize = MAX_ELEMENTS;

/// `A⁺⁻`.
pub fn cut_closure(p: &FinitePoset, a: &ElementSet) -> ElementSet {
    p.lb(&p.ub(a))
}

fn check_inside(p: &FinitePoset, a: &ElementSet, y: &ElementSet) -> Result<()> {
    p.check_set(y)?;
    p.check_set(a)?;
    if a.is_subset(y) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{} is not contained in {}",
            p.format_set(a),
            p.format_set(y)
        )))
    }
}

/// `A⁺ ∩ Y`.
pub fn rel_upper(p: &FinitePoset, a: &ElementSet, y: &ElementSet) -> Result<ElementSet> {
    check_inside(p, a, y)?;
    Ok(p.ub(a).intersection(y))
}

/// `A⁻ ∩ Y`.
pub fn rel_lower(p: &FinitePoset, a: &ElementSet, y: &ElementSet) -> Result<ElementSet> {
    check_inside(p, a, y)?;
    Ok(p.lb(a).intersection(y))
}

/// `A^{+Y -Y}`.
pub fn rel_closure(p: &FinitePoset, a: &ElementSet, y: &ElementSet) -> ElementSet {
    p.lb(&p.ub(a).intersection(y)).intersection(y)
}

/// All intersections of subfamilies of `gens`, the empty subfamily giving
/// `top`, sorted by `(size, members)`.
fn closure_system(gens: &[ElementSet], top: ElementSet, cap: usize) -> Result<Vec<ElementSet>> {
    let mut seen = HashSet::from([top]);
    let mut family = vec![top];
    for g in gens {
        for i in 0..family.len() {
            let c = family[i].intersection(g);
            if seen.insert(c) {
                family.push(c);
                if family.len() > cap {
                    return Err(Error::ResourceCap(format!(
                        "cut enumeration exceeded {cap} cuts"
                    )));
                }
            }
        }
    }
    family.sort_by(|a, b| a.size_lex_cmp(b));
    Ok(family)
}

/// Every l-cut of `p`.
pub fn all_cuts(p: &FinitePoset, cap: usize) -> Result<Vec<ElementSet>> {
    let gens: Vec<ElementSet> = (0..p.len()).map(|x| p.down_set(x)).collect();
    closure_system(&gens, p.all(), cap)
}

/// Every `D ⊆ Y` with `D = D^{+Y -Y}`, as subsets of the ambient poset.
pub fn relative_cuts(p: &FinitePoset, y: &ElementSet) -> Result<Vec<ElementSet>> {
    p.check_set(y)?;
    let gens: Vec<ElementSet> = y.iter().map(|v| p.down_set(v).intersection(y)).collect();
    closure_system(&gens, *y, DEFAULT_CUT_CAP)
}

#[derive(Clone, Debug)]
pub struct DmOptions {
    pub max_elements: usize,
    pub max_cuts: usize,
    pub sweep: SweepConfig,
}

impl Default for DmOptions {
    fn default() -> Self {
        DmOptions {
            max_elements: DEFAULT_DM_MAX_ELEMENTS,
            max_cuts: DEFAULT_CUT_CAP,
            sweep: SweepConfig::default(),
        }
    }
}

/// The completion: cuts ordered by inclusion, with `phi(x) = (←, x]`.
#[derive(Clone, Debug)]
pub struct DmLattice {
    pub carrier: FinitePoset,
    /// Sorted by `(size, members)`; cut `k` is element `k` of `lattice`.
    pub cuts: Vec<ElementSet>,
    pub phi: Vec<usize>,
    pub lattice: FiniteLattice,
    pub verification: Vec<PropertyVerdict>,
    index: HashMap<ElementSet, usize>,
}

impl DmLattice {
    pub fn index_of(&self, cut: &ElementSet) -> Option<usize> {
        self.index.get(cut).copied()
    }

    /// Cuts outside the image of `phi`.
    pub fn adjoined(&self) -> Vec<usize> {
        let image: HashSet<usize> = self.phi.iter().copied().collect();
        (0..self.cuts.len())
            .filter(|k| !image.contains(k))
            .collect()
    }

    pub fn is_verified(&self) -> bool {
        self.verification.iter().all(|v| v.verdict == Verdict::Pass)
    }

    /// `⋁ φ[A]` in the completion.
    pub fn sup_phi(&self, a: &ElementSet) -> usize {
        self.lattice.sup_iter(a.iter().map(|x| self.phi[x]))
    }

    /// `⋀ φ[A]` in the completion.
    pub fn inf_phi(&self, a: &ElementSet) -> usize {
        self.lattice.inf_iter(a.iter().map(|x| self.phi[x]))
    }
}

pub fn dm_completion(p: &FinitePoset) -> Result<DmLattice> {
    dm_completion_with(p, &DmOptions::default())
}

pub fn dm_completion_with(p: &FinitePoset, opts: &DmOptions) -> Result<DmLattice> {
    if p.len() > opts.max_elements {
        return Err(Error::TooLarge {
            size: p.len(),
            max: opts.max_elements,
        });
    }
    let mut dm = build(p, opts.max_cuts)?;
    dm.verification = verify(&dm, &opts.sweep);
    Ok(dm)
}

fn build(p: &FinitePoset, max_cuts: usize) -> Result<DmLattice> {
    let cuts = all_cuts(p, max_cuts.min(MAX_ELEMENTS))?;
    let index: HashMap<ElementSet, usize> = cuts.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let phi: Vec<usize> = (0..p.len()).map(|x| index[&p.down_set(x)]).collect();
    let mut label: Vec<Option<String>> = vec![None; cuts.len()];
    for (x, &k) in phi.iter().enumerate() {
        label[k] = Some(p.name(x).to_string());
    }
    let mut used: HashSet<String> = label.iter().flatten().cloned().collect();
    let names: Vec<String> = cuts
        .iter()
        .zip(label)
        .map(|(c, l)| {
            l.unwrap_or_else(|| {
                let mut name = p.format_set(c);
                while !used.insert(name.clone()) {
                    name.push('\'');
                }
                name
            })
        })
        .collect();
    let mut pairs = Vec::new();
    for (i, a) in cuts.iter().enumerate() {
        for (j, b) in cuts.iter().enumerate() {
            if i != j && a.is_subset(b) {
                pairs.push((i, j));
            }
        }
    }
    let order = FinitePoset::from_relation(names, &pairs)?;
    let lattice = FiniteLattice::from_poset(order)?;
    Ok(DmLattice {
        carrier: p.clone(),
        cuts,
        phi,
        lattice,
        verification: Vec::new(),
        index,
    })
}

#[derive(Serialize)]
struct SubsetWitness {
    subset: Vec<usize>,
}

fn sweep_carrier(
    dm: &DmLattice,
    cfg: &SweepConfig,
    mut bad: impl FnMut(&ElementSet) -> bool,
) -> (SweepMode, Option<Vec<usize>>) {
    let mut witness = None;
    let members = dm.carrier.all().to_vec();
    let mode = cfg.for_each_subset(&members, cfg.subset_exhaustive_limit, true, |ids| {
        let a = ElementSet::from_ids(ids.iter().copied());
        if bad(&a) {
            witness = Some(ids.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    (mode, witness)
}

fn from_sweep(
    id: &str,
    anchor: &str,
    (mode, w): (SweepMode, Option<Vec<usize>>),
) -> PropertyVerdict {
    let v = PropertyVerdict::check(id, anchor, w.is_none()).mode(mode);
    match w {
        Some(subset) => v.witness(&SubsetWitness { subset }),
        None => v,
    }
}

fn verify(dm: &DmLattice, cfg: &SweepConfig) -> Vec<PropertyVerdict> {
    let p = &dm.carrier;
    let l = &dm.lattice;
    let n = dm.cuts.len();
    let cut = |k: usize| dm.cuts[k];
    let mut out = Vec::new();

    out.push(from_sweep(
        "dm.i",
        "lower-bound sets are cuts",
        sweep_carrier(dm, cfg, |a| dm.index_of(&p.lb(a)).is_none()),
    ));

    let mut pair_witness = None;
    'pairs: for a in 0..n {
        for b in 0..n {
            let meet_ok = cut(l.meet(a, b)) == cut(a).intersection(&cut(b));
            let join_ok = cut(l.join(a, b)) == cut_closure(p, &cut(a).union(&cut(b)));
            if !(meet_ok && join_ok) {
                pair_witness = Some([a, b]);
                break 'pairs;
            }
        }
    }
    let v = PropertyVerdict::check(
        "dm.ii",
        "meet is intersection and join is the closure of the union",
        pair_witness.is_none(),
    )
    .mode(SweepMode::Exhaustive);
    out.push(match pair_witness {
        Some(w) => v.witness(&w),
        None => v,
    });

    let mut emb_witness = None;
    'emb: for x in 0..p.len() {
        for y in 0..p.len() {
            if p.leq(x, y) != cut(dm.phi[x]).is_subset(&cut(dm.phi[y])) {
                emb_witness = Some([x, y]);
                break 'emb;
            }
        }
    }
    let v = PropertyVerdict::check(
        "dm.iii",
        "the canonical map is an order-embedding",
        emb_witness.is_none(),
    )
    .mode(SweepMode::Exhaustive);
    out.push(match emb_witness {
        Some(w) => v.witness(&w),
        None => v,
    });

    let dense_witness = (0..n).find(|&k| {
        let d = cut(k);
        dm.sup_phi(&d) != k || dm.inf_phi(&p.ub(&d)) != k
    });
    let v = PropertyVerdict::check(
        "dm.iv",
        "the carrier is join-dense and meet-dense",
        dense_witness.is_none(),
    )
    .mode(SweepMode::Exhaustive);
    out.push(match dense_witness {
        Some(k) => v.witness(&cut(k)),
        None => v,
    });

    out.push(from_sweep(
        "dm.v",
        "the canonical map preserves existing joins and meets",
        sweep_carrier(dm, cfg, |a| {
            p.sup_of(a).is_some_and(|x| dm.sup_phi(a) != dm.phi[x])
                || p.inf_of(a).is_some_and(|x| dm.inf_phi(a) != dm.phi[x])
        }),
    ));

    out.push(from_sweep(
        "dm.vi",
        "lower and closed upper bound sets as joins and meets of images",
        sweep_carrier(dm, cfg, |a| {
            let lower = p.lb(a);
            let upper = p.ub(a);
            let closed = p.lb(&upper);
            let (Some(lower_k), Some(closed_k)) = (dm.index_of(&lower), dm.index_of(&closed))
            else {
                return true;
            };
            dm.inf_phi(a) != lower_k
                || dm.sup_phi(&lower) != lower_k
                || dm.sup_phi(a) != closed_k
                || dm.inf_phi(&upper) != closed_k
        }),
    ));
    out
}

/// The completion without the empty cut and the full cut, whichever of
/// them are not images of carrier elements.
pub fn dm_strip_bounds(dm: &DmLattice) -> Result<(FinitePoset, Vec<usize>)> {
    let mut keep = dm.lattice.all();
    let image: HashSet<usize> = dm.phi.iter().copied().collect();
    for k in [dm.lattice.bottom(), dm.lattice.top()] {
        let c = dm.cuts[k];
        if (c.is_empty() || c == dm.carrier.all()) && !image.contains(&k) {
            keep.remove(k);
        }
    }
    dm.lattice.poset().induced(&keep)
}

/// Subsets of `y` for pairwise checks: all of them when `|Y| <= 8`,
/// otherwise the relative cuts plus a bounded sample.
pub const PAIR_EXHAUSTIVE_LIMIT: usize = 8;
const PAIR_SAMPLE: usize = 256;

fn subset_family(
    p: &FinitePoset,
    y: &ElementSet,
    cfg: &SweepConfig,
) -> (Vec<ElementSet>, SweepMode) {
    let members = y.to_vec();
    let mut family = Vec::new();
    let exhaustive = members.len() <= PAIR_EXHAUSTIVE_LIMIT && !cfg.force_sampled;
    if !exhaustive {
        family.extend(relative_cuts(p, y).unwrap_or_default());
    }
    let include_empty = cfg.empty_subsets.includes_empty();
    let mode = cfg.for_each_subset(&members, PAIR_EXHAUSTIVE_LIMIT, include_empty, |ids| {
        family.push(ElementSet::from_ids(ids.iter().copied()));
        if !exhaustive && family.len() >= PAIR_SAMPLE {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    (family, mode)
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    /// Cuts of `DM(Y)`, taken relative to `Y`.
    pub relative_cuts: Vec<ElementSet>,
    /// `i(D) = D⁺⁻` for each relative cut, bounds taken in `L`.
    pub images: Vec<ElementSet>,
    pub verdicts: Vec<PropertyVerdict>,
}

/// Builds `i: DM(Y) → DM(L)` and checks that it is an order-embedding.
pub fn dm_embed_sublattice(
    lattice: &FiniteLattice,
    y: &ElementSet,
    cfg: &SweepConfig,
) -> Result<EmbeddingReport> {
    subobject::require_sublattice(lattice, y)?;
    let p = lattice.poset();
    let rel = relative_cuts(p, y)?;
    let images: Vec<ElementSet> = rel.iter().map(|d| cut_closure(p, d)).collect();
    let mut verdicts = Vec::new();

    let (yp, back) = p.induced(y)?;
    let intrinsic = build(&yp, DEFAULT_CUT_CAP)?;
    let mut mapped: Vec<ElementSet> = intrinsic
        .cuts
        .iter()
        .map(|c| ElementSet::from_ids(c.iter().map(|k| back[k])))
        .collect();
    mapped.sort_by(|a, b| a.size_lex_cmp(b));
    verdicts.push(PropertyVerdict::check(
        "embed.intrinsic",
        "relative cuts are the cuts of the induced order",
        mapped == rel,
    ));

    let not_cut = images.iter().position(|c| cut_closure(p, c) != *c);
    verdicts.push(
        PropertyVerdict::check("embed.images", "images are cuts of L", not_cut.is_none())
            .witness(&not_cut.map(|k| rel[k])),
    );

    let mut order_witness = None;
    'o: for a in 0..rel.len() {
        for b in 0..rel.len() {
            if rel[a].is_subset(&rel[b]) != images[a].is_subset(&images[b]) {
                order_witness = Some((rel[a], rel[b]));
                break 'o;
            }
        }
    }
    verdicts.push(
        PropertyVerdict::check(
            "embed.order",
            "the map from DM(Y) to DM(L) is an order-embedding",
            order_witness.is_none(),
        )
        .mode(SweepMode::Exhaustive)
        .witness(&order_witness),
    );
    let distinct: HashSet<ElementSet> = images.iter().copied().collect();
    verdicts.push(PropertyVerdict::check(
        "embed.injective",
        "the map from DM(Y) to DM(L) is injective",
        distinct.len() == images.len(),
    ));

    let (family, mode) = subset_family(p, y, cfg);
    let closed: Vec<ElementSet> = family.iter().map(|a| cut_closure(p, a)).collect();
    let rel_closed: Vec<ElementSet> = family.iter().map(|a| rel_closure(p, a, y)).collect();
    let mut mono_witness = None;
    'm: for a in 0..family.len() {
        for b in 0..family.len() {
            if closed[a].is_subset(&closed[b]) && !rel_closed[a].is_subset(&rel_closed[b]) {
                mono_witness = Some((family[a], family[b]));
                break 'm;
            }
        }
    }
    verdicts.push(
        PropertyVerdict::check(
            "embed.relative-monotone",
            "inclusion of closures in L forces inclusion of relative closures",
            mono_witness.is_none(),
        )
        .mode(mode)
        .empty_subsets(cfg.empty_subsets)
        .witness(&mono_witness),
    );
    let restrict_witness = family
        .iter()
        .zip(&closed)
        .find(|(_, c)| cut_closure(p, &c.intersection(y)) != **c)
        .map(|(a, _)| *a);
    verdicts.push(
        PropertyVerdict::check(
            "embed.restricted-closure",
            "closing the trace on Y of a closure gives it back",
            restrict_witness.is_none(),
        )
        .mode(mode)
        .empty_subsets(cfg.empty_subsets)
        .witness(&restrict_witness),
    );

    Ok(EmbeddingReport {
        relative_cuts: rel,
        images,
        verdicts,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PreservationReport {
    pub property_a: BoundPropertyCheck,
    pub property_b: BoundPropertyCheck,
    pub verdicts: Vec<PropertyVerdict>,
}

/// Verdict for a conditional claim: a violation only when the hypothesis
/// holds.
fn conditional<W: Serialize>(
    id: &str,
    anchor: &str,
    hypothesis: bool,
    failure: Option<W>,
) -> PropertyVerdict {
    let verdict = match (hypothesis, &failure) {
        (true, None) => Verdict::Pass,
        (true, Some(_)) => Verdict::Fail,
        (false, _) => Verdict::Inconclusive,
    };
    let v = PropertyVerdict::new(id, anchor, verdict).witness(&failure);
    match (hypothesis, failure.is_some()) {
        (false, true) => v.detail("hypothesis fails; conclusion fails too"),
        (false, false) => v.detail("hypothesis fails; no witness found"),
        _ => v,
    }
}

#[derive(Serialize)]
struct FamilyWitness {
    family: Vec<ElementSet>,
    left: ElementSet,
    right: ElementSet,
}

#[derive(Default)]
struct FirstFailure(Option<FamilyWitness>);

impl FirstFailure {
    fn record(&mut self, fam: &[ElementSet], left: ElementSet, right: ElementSet) {
        if self.0.is_none() && left != right {
            self.0 = Some(FamilyWitness {
                family: fam.to_vec(),
                left,
                right,
            });
        }
    }
}

/// Meet and join preservation of `i`, the underlying set identities, the
/// bound-set identities under (A)/(B), and regularity of the image.
pub fn check_preservation(
    lattice: &FiniteLattice,
    y: &ElementSet,
    cfg: &SweepConfig,
) -> Result<PreservationReport> {
    subobject::require_sublattice(lattice, y)?;
    let p = lattice.poset();
    let prop_a = subobject::has_property_a(lattice, y, cfg)?;
    let prop_b = subobject::has_property_b(lattice, y, cfg)?;

    let (yp, back) = p.induced(y)?;
    let dm_y = build(&yp, DEFAULT_CUT_CAP)?;
    let in_l: Vec<ElementSet> = dm_y
        .cuts
        .iter()
        .map(|c| ElementSet::from_ids(c.iter().map(|k| back[k])))
        .collect();
    let image: Vec<ElementSet> = in_l.iter().map(|c| cut_closure(p, c)).collect();
    let down = |x: usize| p.down_set(x);

    let mut meet_thm = FirstFailure::default();
    let mut join_thm = FirstFailure::default();
    let mut meet_set = FirstFailure::default();
    let mut join_set = FirstFailure::default();
    let mut regular_sup = FirstFailure::default();
    let mut regular_inf = FirstFailure::default();
    let indices: Vec<usize> = (0..in_l.len()).collect();
    let include_empty = cfg.empty_subsets.includes_empty();
    let family_mode = cfg.for_each_subset(
        &indices,
        cfg.family_exhaustive_limit,
        include_empty,
        |fam| {
            let sets: Vec<ElementSet> = fam.iter().map(|&k| in_l[k]).collect();
            let imgs: Vec<ElementSet> = fam.iter().map(|&k| image[k]).collect();

            let meet_y = image[dm_y.lattice.inf_iter(fam.iter().copied())];
            let meet_l = down(lattice.inf_iter(sets.iter().map(|a| lattice.sup(a))));
            meet_thm.record(&sets, meet_y, meet_l);
            let join_y = image[dm_y.lattice.sup_iter(fam.iter().copied())];
            let join_l = down(lattice.sup_iter(sets.iter().map(|a| lattice.sup(a))));
            join_thm.record(&sets, join_y, join_l);

            let cap_images = imgs.iter().fold(p.all(), |acc, c| acc.intersection(c));
            let cap_sets = sets.iter().fold(*y, |acc, c| acc.intersection(c));
            meet_set.record(&sets, cap_images, cut_closure(p, &cap_sets));
            let cup_sets = sets.iter().fold(ElementSet::empty(), |acc, c| acc.union(c));
            let cup_images = imgs.iter().fold(ElementSet::empty(), |acc, c| acc.union(c));
            join_set.record(
                &sets,
                cut_closure(p, &rel_closure(p, &cup_sets, y)),
                cut_closure(p, &cup_images),
            );

            let sup_in_image = image
                .iter()
                .filter(|z| imgs.iter().all(|c| c.is_subset(z)))
                .min_by_key(|z| z.len())
                .copied()
                .unwrap_or_default();
            regular_sup.record(&sets, sup_in_image, cut_closure(p, &cup_images));
            let inf_in_image = image
                .iter()
                .filter(|z| z.is_subset(&cap_images))
                .max_by_key(|z| z.len())
                .copied()
                .unwrap_or_default();
            regular_inf.record(&sets, inf_in_image, cap_images);
            ControlFlow::Continue(())
        },
    );

    let a = prop_a.holds;
    let b = prop_b.holds;
    let mut verdicts = vec![
        conditional(
            "pres.meets",
            "(A) implies the embedding preserves meets",
            a,
            meet_thm.0,
        ),
        conditional(
            "pres.joins",
            "(B) implies the embedding preserves joins",
            b,
            join_thm.0,
        ),
        conditional(
            "pres.meet-identity",
            "(A) implies intersection of closures is closure of intersection",
            a,
            meet_set.0,
        ),
        conditional(
            "pres.join-identity",
            "(B) implies closure of relative closure of union is closure of union of closures",
            b,
            join_set.0,
        ),
        conditional(
            "pres.regular-image",
            "(A) and (B) imply the image of DM(Y) is regular in DM(L)",
            a && b,
            regular_sup.0.or(regular_inf.0),
        ),
    ];
    for v in verdicts.iter_mut() {
        v.mode = Some(family_mode);
        v.empty_subsets = Some(cfg.empty_subsets);
    }

    let mut lower_witness = None;
    let mut upper_witness = None;
    let subset_mode = subobject::sweep_subsets_of(lattice, y, cfg, |s| {
        if lower_witness.is_none() && p.ub(&p.lb(s)) != p.ub(&p.lb(s).intersection(y)) {
            lower_witness = Some(*s);
        }
        if upper_witness.is_none() && p.lb(&p.ub(s)) != p.lb(&p.ub(s).intersection(y)) {
            upper_witness = Some(*s);
        }
        if lower_witness.is_some() && upper_witness.is_some() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    verdicts.push(
        conditional(
            "pres.lower-bounds",
            "(A) implies upper bounds of lower bounds may be computed from lower bounds in Y",
            a,
            lower_witness,
        )
        .mode(subset_mode)
        .empty_subsets(cfg.empty_subsets),
    );
    verdicts.push(
        conditional(
            "pres.upper-bounds",
            "(B) implies lower bounds of upper bounds may be computed from upper bounds in Y",
            b,
            upper_witness,
        )
        .mode(subset_mode)
        .empty_subsets(cfg.empty_subsets),
    );

    Ok(PreservationReport {
        property_a: prop_a,
        property_b: prop_b,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;
    use crate::sweep::EmptySubsets;

    fn set(ids: &[usize]) -> ElementSet {
        ElementSet::from_ids(ids.iter().copied())
    }

    #[test]
    fn closure_examples() {
        let anti = FinitePoset::antichain(2);
        assert_eq!(cut_closure(&anti, &set(&[0, 1])), set(&[0, 1]));
        assert_eq!(cut_closure(&anti, &set(&[])), set(&[]));
        let c3 = FinitePoset::chain(3);
        assert_eq!(cut_closure(&c3, &set(&[])), set(&[0]));
        assert_eq!(cut_closure(&c3, &set(&[0, 1])), set(&[0, 1]));
    }

    #[test]
    fn relative_bounds() {
        let b3 = named::boolean(3);
        let p = b3.poset();
        let y = set(&[0, 1, 3, 7]);
        assert_eq!(rel_upper(p, &set(&[1]), &y).unwrap(), set(&[1, 3, 7]));
        assert_eq!(rel_lower(p, &set(&[3]), &y).unwrap(), set(&[0, 1, 3]));
        assert_eq!(rel_upper(p, &set(&[1]), &p.all()).unwrap(), p.up_set(1));
        assert!(matches!(
            rel_upper(p, &set(&[2]), &y),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn antichain_completion_is_b2() {
        let dm = dm_completion(&FinitePoset::antichain(2)).unwrap();
        assert_eq!(dm.cuts, vec![set(&[]), set(&[0]), set(&[1]), set(&[0, 1])]);
        assert_eq!(dm.adjoined(), vec![0, 3]);
        assert!(dm.is_verified(), "{:?}", dm.verification);
        assert_eq!(dm.lattice.name(0), "{}");
        assert_eq!(dm.lattice.name(3), "{a,b}");
        let (stripped, _) = dm_strip_bounds(&dm).unwrap();
        assert_eq!(stripped.names(), &["a".to_string(), "b".to_string()]);
        assert!(!stripped.leq(0, 1) && !stripped.leq(1, 0));
    }

    #[test]
    fn chain_completion_is_itself() {
        let dm = dm_completion(&FinitePoset::chain(4)).unwrap();
        assert_eq!(dm.cuts.len(), 4);
        assert!(dm.adjoined().is_empty());
        assert!(dm.is_verified());
        let (stripped, _) = dm_strip_bounds(&dm).unwrap();
        assert_eq!(stripped.len(), 4);
    }

    #[test]
    fn lattice_completion_is_isomorphic() {
        for l in [
            named::m3(),
            named::n5(),
            named::boolean(3),
            named::grid(2, 3),
        ] {
            let dm = dm_completion(l.poset()).unwrap();
            assert_eq!(dm.cuts.len(), l.len());
            assert!(dm.adjoined().is_empty());
            assert!(dm.is_verified());
        }
    }

    #[test]
    fn cut_cap_is_a_resource_error() {
        // a_i < b_j for i != j has a cut for every subset of the a_i
        let n = 7;
        let names = (0..2 * n).map(|k| format!("x{k}")).collect();
        let pairs: Vec<_> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, n + j)))
            .collect();
        let crown = FinitePoset::from_relation(names, &pairs).unwrap();
        let opts = DmOptions {
            max_cuts: 100,
            ..DmOptions::default()
        };
        assert!(dm_completion_with(&crown, &opts).unwrap_err().is_resource());
        assert!(dm_completion(&crown).unwrap().is_verified());
    }

    #[test]
    fn maximal_chain_in_b3_embeds() {
        let b3 = named::boolean(3);
        let y = set(&[0, 1, 3, 7]);
        let r = dm_embed_sublattice(&b3, &y, &SweepConfig::default()).unwrap();
        assert_eq!(r.relative_cuts.len(), 4);
        assert!(
            r.verdicts.iter().all(|v| v.verdict == Verdict::Pass),
            "{:?}",
            r.verdicts
        );
        let pres = check_preservation(&b3, &y, &SweepConfig::default()).unwrap();
        assert!(pres.property_a.holds && pres.property_b.holds);
        assert!(
            pres.verdicts.iter().all(|v| v.verdict == Verdict::Pass),
            "{:?}",
            pres.verdicts
        );
    }

    #[test]
    fn missing_top_makes_meet_claims_conditional() {
        let c3 = named::chain(3);
        let y = set(&[0, 1]);
        let pres = check_preservation(&c3, &y, &SweepConfig::default()).unwrap();
        assert!(!pres.property_a.holds);
        let meets = pres.verdicts.iter().find(|v| v.id == "pres.meets").unwrap();
        assert_eq!(meets.verdict, Verdict::Inconclusive);
        assert!(meets.witness.is_some());
        let nonempty = SweepConfig::default().with_empty_subsets(EmptySubsets::Nonempty);
        let pres = check_preservation(&c3, &y, &nonempty).unwrap();
        assert!(
            pres.verdicts.iter().all(|v| v.verdict == Verdict::Pass),
            "{:?}",
            pres.verdicts
        );
    }

    #[test]
    fn non_sublattice_is_rejected() {
        let b3 = named::boolean(3);
        assert!(matches!(
            dm_embed_sublattice(&b3, &set(&[1, 2]), &SweepConfig::default()),
            Err(Error::Precondition(_))
        ));
    }
}
