use proptest::prelude::*;

use ordlat::cut::{self, cut_closure, dm_completion, dm_strip_bounds};
use ordlat::gallery::closed_sets::SymClosedSet;
use ordlat::gallery::ext::Ext;
use ordlat::generators::{downset_lattice, random_lattice, random_poset, random_sublattice};
use ordlat::io::{parse_lattice, parse_poset, poset_to_dot, poset_to_json};
use ordlat::subobject;
use ordlat::{o_limit, uo_limit, ElementSet, FinitePoset, SweepConfig, UpSeq};

fn poset() -> impl Strategy<Value = FinitePoset> {
    (1usize..=8, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, p, s)| random_poset(n, p, s).unwrap())
}

fn subset_of(n: usize) -> impl Strategy<Value = ElementSet> {
    any::<u64>().prop_map(move |m| ElementSet::from_ids((0..n).filter(|k| m >> k & 1 == 1)))
}

fn closed_set() -> impl Strategy<Value = SymClosedSet> {
    let end = prop_oneof![
        1 => Just(Ext::NegInf),
        1 => Just(Ext::PosInf),
        6 => (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Ext::frac(n, d)),
    ];
    prop::collection::vec((end.clone(), end), 0..4).prop_map(SymClosedSet::from_components)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn cut_closure_is_a_closure_operator(p in poset(), a in any::<u64>(), b in any::<u64>()) {
        let n = p.len();
        let a = ElementSet::from_ids((0..n).filter(|k| a >> k & 1 == 1));
        let b = a.union(&ElementSet::from_ids((0..n).filter(|k| b >> k & 1 == 1)));
        let ca = cut_closure(&p, &a);
        prop_assert!(a.is_subset(&ca));
        prop_assert_eq!(cut_closure(&p, &ca), ca);
        prop_assert!(ca.is_subset(&cut_closure(&p, &b)));
    }

    #[test]
    fn completion_verifies_and_strips(p in poset()) {
        let dm = dm_completion(&p).unwrap();
        prop_assert!(dm.is_verified(), "{:#?}", dm.verification);
        let mut sorted = dm.cuts.clone();
        sorted.sort_by(|x, y| x.size_lex_cmp(y));
        prop_assert_eq!(&sorted, &dm.cuts);
        let (stripped, kept) = dm_strip_bounds(&dm).unwrap();
        prop_assert_eq!(stripped.len(), kept.len());
        for &k in &dm.phi {
            prop_assert!(kept.contains(&k));
        }
    }

    #[test]
    fn completion_of_a_lattice_is_itself(n in 1usize..=7, p in 0.0f64..=1.0, s in any::<u64>()) {
        let l = random_lattice(n, p, s).unwrap();
        let dm = dm_completion(l.poset()).unwrap();
        prop_assert_eq!(dm.cuts.len(), l.len());
        prop_assert!(dm.adjoined().is_empty());
    }

    #[test]
    fn sublattice_embedding_and_finite_properties(n in 1usize..=6, p in 0.0f64..=1.0, s in any::<u64>(), t in 1usize..=12) {
        let l = downset_lattice(&random_poset(n, p, s).unwrap()).unwrap();
        let y = random_sublattice(&l, s.rotate_left(7), t);
        prop_assert!(y.sublattice);
        let cfg = SweepConfig { samples: 300, ..SweepConfig::default() }
            .with_empty_subsets(ordlat::EmptySubsets::Nonempty);
        let emb = cut::dm_embed_sublattice(&l, &y.members, &cfg).unwrap();
        for v in &emb.verdicts {
            prop_assert!(!v.verdict.is_violation(), "{v:#?}");
        }
        prop_assert!(subobject::has_property_a(&l, &y.members, &cfg).unwrap().holds);
        prop_assert!(subobject::has_property_b(&l, &y.members, &cfg).unwrap().holds);
        prop_assert!(subobject::is_regular(&l, &y.members, &cfg).unwrap().holds);
    }

    #[test]
    fn uo_and_o_limits_coincide(n in 1usize..=6, p in 0.0f64..=1.0, s in any::<u64>(),
                                pre in prop::collection::vec(any::<usize>(), 0..3),
                                cyc in prop::collection::vec(any::<usize>(), 1..4)) {
        let l = random_lattice(n, p, s).unwrap();
        let m = l.len();
        let seq = UpSeq::new(pre.iter().map(|x| x % m).collect(), cyc.iter().map(|x| x % m).collect()).unwrap();
        let lim = o_limit(&l, &seq);
        prop_assert_eq!(uo_limit(&l, &seq).limit, lim);
        if cyc.iter().all(|x| x % m == cyc[0] % m) {
            prop_assert_eq!(lim, Some(cyc[0] % m));
        }
    }

    #[test]
    fn json_round_trip_and_dot_determinism(p in poset()) {
        let json = poset_to_json(&p);
        let back = parse_poset(&json).unwrap();
        prop_assert_eq!(back.names(), p.names());
        prop_assert_eq!(back.covers(), p.covers());
        prop_assert_eq!(poset_to_json(&back), json);
        prop_assert_eq!(poset_to_dot(&back), poset_to_dot(&p));
    }

    #[test]
    fn lattice_json_round_trip(n in 1usize..=6, p in 0.0f64..=1.0, s in any::<u64>()) {
        let l = random_lattice(n, p, s).unwrap();
        let back = parse_lattice(&poset_to_json(l.poset())).unwrap();
        for a in 0..l.len() {
            for b in 0..l.len() {
                prop_assert_eq!(back.meet(a, b), l.meet(a, b));
                prop_assert_eq!(back.join(a, b), l.join(a, b));
            }
        }
    }

    #[test]
    fn relative_cuts_of_the_whole_carrier_are_cuts(p in poset(), a in subset_of(8)) {
        let all = p.all();
        let a = a.intersection(&all);
        prop_assert_eq!(cut::rel_upper(&p, &a, &all).unwrap(), p.upper_bounds(&a).unwrap());
        prop_assert_eq!(cut::relative_cuts(&p, &all).unwrap(), cut::all_cuts(&p, 1 << 12).unwrap());
    }

    #[test]
    fn closed_sets_form_a_lattice(x in closed_set(), y in closed_set(), z in closed_set()) {
        prop_assert_eq!(x.join(&y), y.join(&x));
        prop_assert_eq!(x.meet(&y), y.meet(&x));
        prop_assert_eq!(x.join(&x), x.clone());
        prop_assert_eq!(x.meet(&x), x.clone());
        prop_assert_eq!(x.join(&x.meet(&y)), x.clone());
        prop_assert_eq!(x.meet(&x.join(&y)), x.clone());
        prop_assert_eq!(x.join(&y).join(&z), x.join(&y.join(&z)));
        prop_assert_eq!(x.meet(&y).meet(&z), x.meet(&y.meet(&z)));
        prop_assert_eq!(x.meet(&y.join(&z)), x.meet(&y).join(&x.meet(&z)));
        prop_assert!(x.meet(&y).leq(&x));
        prop_assert!(x.leq(&x.join(&y)));
    }

    #[test]
    fn closed_set_canonical_form_ignores_component_order(x in closed_set()) {
        let mut rev: Vec<(Ext, Ext)> = x.components().to_vec();
        rev.reverse();
        prop_assert_eq!(SymClosedSet::from_components(rev), x.clone());
        prop_assert_eq!(SymClosedSet::from_components(x.components().to_vec()), x);
    }
}
