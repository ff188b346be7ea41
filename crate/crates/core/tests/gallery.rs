use ordlat::gallery::closed_sets::{
    halving_rays, net_inf, net_sup, uo_refute, Direction, Expr, ParamNet, SymClosedSet, Term,
};
use ordlat::gallery::ext::{ratio, Ext};
use ordlat::gallery::ray_ring::{closed_subring, open_subring, rayring_closure, ring, RayRingElem};
use ordlat::gallery::two_chain::{regular_without_b, twochain_dm};
use ordlat::gallery::{run, Example, GalleryReport, Selection};
use ordlat::Verdict;

fn computed<'a>(r: &'a GalleryReport, id: &str) -> &'a str {
    let c = r.claim(id).unwrap_or_else(|| panic!("missing claim {id}"));
    assert_eq!(c.verdict, Verdict::Pass, "{c:#?}");
    &c.computed
}

#[test]
fn closed_set_operations() {
    let half_ray = SymClosedSet::right_ray(Ext::frac(1, 2));
    let neg = SymClosedSet::left_ray(Ext::zero());
    assert!(half_ray.meet(&neg).is_empty());
    let x = SymClosedSet::interval(Ext::int(0), Ext::int(1));
    assert_eq!(x.join(&SymClosedSet::empty()), x);
    let y = SymClosedSet::interval(Ext::int(1), Ext::int(2));
    assert_eq!(x.meet(&y), SymClosedSet::point(Ext::int(1)));
    assert_eq!(x.join(&y), SymClosedSet::interval(Ext::int(0), Ext::int(2)));
}

#[test]
fn halving_rays_increase_to_the_closed_half_line() {
    assert_eq!(
        net_sup(&halving_rays()).unwrap(),
        SymClosedSet::right_ray(Ext::zero())
    );
}

#[test]
fn decreasing_intervals_shrink_to_unit_interval() {
    let net = ParamNet::new(
        vec![Term::new(
            Expr::Const(Ext::zero()),
            Expr::harmonic(ratio(1, 1), ratio(1, 1)),
        )],
        Direction::Decreasing,
    )
    .unwrap();
    assert_eq!(
        net_inf(&net).unwrap(),
        SymClosedSet::interval(Ext::int(0), Ext::int(1))
    );
}

#[test]
fn constant_net_sup_is_the_constant() {
    let c = SymClosedSet::interval(Ext::int(-3), Ext::frac(7, 2));
    assert_eq!(net_sup(&ParamNet::constant(&c)).unwrap(), c);
    assert_eq!(net_inf(&ParamNet::constant(&c)).unwrap(), c);
}

#[test]
fn witness_pair_refutes_uo_convergence() {
    let a = SymClosedSet::left_ray(Ext::int(-1));
    let b = SymClosedSet::left_ray(Ext::zero());
    let r = uo_refute(
        &halving_rays(),
        &SymClosedSet::right_ray(Ext::zero()),
        &[(a.clone(), b)],
    )
    .unwrap();
    assert_eq!(r.verdict, Verdict::Refuted);
    let f = r.failing().unwrap();
    assert_eq!(f.mapped_limit, a);
    assert_eq!(f.required, a.join(&SymClosedSet::point(Ext::zero())));
}

#[test]
fn bottom_top_pair_refutes_a_wrong_candidate() {
    let r = uo_refute(
        &halving_rays(),
        &SymClosedSet::right_ray(Ext::int(1)),
        &[(SymClosedSet::empty(), SymClosedSet::real_line())],
    )
    .unwrap();
    assert_eq!(r.verdict, Verdict::Refuted);
}

#[test]
fn non_monotone_net_is_rejected() {
    let wobble = ParamNet::new(
        vec![Term::new(
            Expr::geometric(ratio(0, 1), ratio(-1, 1), ratio(1, 2)),
            Expr::Const(Ext::PosInf),
        )],
        Direction::Increasing,
    );
    assert!(wobble.is_err());
}

#[test]
fn two_chain_completion_values() {
    let r = twochain_dm().unwrap();
    assert_eq!(computed(&r, "two-chain.adjoined"), "{(1,1), (1,∞)}");
    assert_eq!(
        computed(&r, "two-chain.jid-fails"),
        "⋁x_n = (1,1), (⋁x_n) ∧ (1,1/2) = (1,1/2), ⋁(x_n ∧ (1,1/2)) = (0,1/2)"
    );
    computed(&r, "two-chain.mid-holds");
    computed(&r, "two-chain.limit-of-joins");
}

#[test]
fn square_example_values() {
    let r = regular_without_b().unwrap();
    assert_eq!(r.example, "exmp3");
    assert_eq!(
        computed(&r, "square.b-fails"),
        "A⁺ = {0}×{1} ∪ {1}×{1}, A⁺ ∩ L₀ = ∅"
    );
    computed(&r, "square.regular");
    computed(&r, "square.a-holds");
}

#[test]
fn ray_ring_closure_values() {
    let y = open_subring();
    let closure = y.first_adherence();
    assert_eq!(closure, closed_subring());
    assert_eq!(closure.first_adherence(), closure);
    let zero = ratio(0, 1);
    let left = RayRingElem::Left(zero.clone());
    let right = RayRingElem::Right(zero);
    assert_eq!(left.meet(&right), RayRingElem::Zero);
    assert!(ring().contains(&RayRingElem::Zero));
    assert!(!closure.contains(&RayRingElem::Zero));
    assert_eq!(closure.inf_within(&left, &right), Some(RayRingElem::Empty));
    let r = rayring_closure().unwrap();
    assert_eq!(computed(&r, "ray-ring.stabilizes"), "stabilized at step 1");
    assert_eq!(computed(&r, "ray-ring.meet-in-closure"), "∅");
}

#[test]
fn runner_returns_reports_in_selection_order() {
    let reports = run(Selection::All).unwrap();
    let names: Vec<&str> = reports.iter().map(|r| r.example.as_str()).collect();
    assert_eq!(names, ["closed-sets", "two-chain-dm", "ray-ring", "exmp3"]);
    assert!(reports.iter().all(|r| !r.has_violation()));
    let one = run(Selection::One(Example::RayRing)).unwrap();
    assert_eq!(one.len(), 1);
}
