//! Subsets of `{0,1} × [-∞, ∞]` under the pointwise order, described by
//! finitely many intervals per tag.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::closed_sets::{emax, emin, Expr, N_CHECK};
use super::ext::{ratio, Ext};
use super::{Claim, GalleryReport};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub tag: u8,
    pub b: Ext,
}

impl Point {
    pub fn new(tag: u8, b: Ext) -> Self {
        Point { tag, b }
    }

    pub fn leq(&self, other: &Point) -> bool {
        self.tag <= other.tag && self.b <= other.b
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.tag, self.b)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An interval of the extended line; a closed infinite end means the
/// infinite value itself belongs to the segment.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub lo: Ext,
    pub lo_closed: bool,
    pub hi: Ext,
    pub hi_closed: bool,
}

impl Segment {
    pub fn new(lo: Ext, lo_closed: bool, hi: Ext, hi_closed: bool) -> Self {
        Segment {
            lo,
            lo_closed,
            hi,
            hi_closed,
        }
    }

    pub fn closed(lo: Ext, hi: Ext) -> Self {
        Self::new(lo, true, hi, true)
    }

    /// `[lo, hi)`
    pub fn half_open(lo: Ext, hi: Ext) -> Self {
        Self::new(lo, true, hi, false)
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Greater => true,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Less => false,
        }
    }

    pub fn contains(&self, b: &Ext) -> bool {
        let above = self.lo < *b || (self.lo == *b && self.lo_closed);
        let below = *b < self.hi || (*b == self.hi && self.hi_closed);
        above && below
    }

    pub fn intersect(&self, other: &Segment) -> Segment {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Segment::new(lo, lo_closed, hi, hi_closed)
    }

    /// Whether the union with `next` (which starts no earlier) is one
    /// segment.
    fn touches(&self, next: &Segment) -> bool {
        match self.hi.cmp(&next.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.hi_closed || next.lo_closed,
            Ordering::Less => false,
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            return write!(f, "{{{}}}", self.lo);
        }
        let open = if self.lo_closed { "[" } else { "(" };
        let close = if self.hi_closed { "]" } else { ")" };
        write!(f, "{open}{},{}{close}", self.lo, self.hi)
    }
}

/// A set of points, canonical per tag: nonempty segments, sorted, with no
/// two of them forming a single segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TwoChainSet {
    parts: [Vec<Segment>; 2],
}

fn normalize(mut segs: Vec<Segment>) -> Vec<Segment> {
    segs.retain(|s| !s.is_empty());
    segs.sort_by(|a, b| (&a.lo, !a.lo_closed).cmp(&(&b.lo, !b.lo_closed)));
    let mut out: Vec<Segment> = Vec::new();
    for s in segs {
        match out.last_mut() {
            Some(last) if last.touches(&s) => match s.hi.cmp(&last.hi) {
                Ordering::Greater => {
                    last.hi = s.hi;
                    last.hi_closed = s.hi_closed;
                }
                Ordering::Equal => last.hi_closed |= s.hi_closed,
                Ordering::Less => {}
            },
            _ => out.push(s),
        }
    }
    out
}

impl TwoChainSet {
    pub fn new(tag0: Vec<Segment>, tag1: Vec<Segment>) -> Self {
        TwoChainSet {
            parts: [normalize(tag0), normalize(tag1)],
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn chain(tag: u8, seg: Segment) -> Self {
        let mut parts = [Vec::new(), Vec::new()];
        parts[tag as usize] = vec![seg];
        TwoChainSet::new(parts[0].clone(), parts[1].clone())
    }

    /// Points `(t, b)` with `t >= tag`, `b >= c`.
    pub fn up(tag: u8, c: &Ext) -> Self {
        let seg = Segment::closed(c.clone(), Ext::PosInf);
        let t0 = if tag == 0 { vec![seg.clone()] } else { vec![] };
        TwoChainSet::new(t0, vec![seg])
    }

    /// Points `(t, b)` with `t <= tag`, `b <= c`.
    pub fn down(tag: u8, c: &Ext) -> Self {
        let seg = Segment::closed(Ext::NegInf, c.clone());
        let t1 = if tag == 1 { vec![seg.clone()] } else { vec![] };
        TwoChainSet::new(vec![seg], t1)
    }

    pub fn part(&self, tag: u8) -> &[Segment] {
        &self.parts[tag as usize]
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(Vec::is_empty)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.parts[p.tag as usize].iter().any(|s| s.contains(&p.b))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let meet = |a: &[Segment], b: &[Segment]| {
            a.iter()
                .flat_map(|x| b.iter().map(move |y| x.intersect(y)))
                .collect::<Vec<_>>()
        };
        TwoChainSet::new(
            meet(&self.parts[0], &other.parts[0]),
            meet(&self.parts[1], &other.parts[1]),
        )
    }

    pub fn union(&self, other: &Self) -> Self {
        let join = |a: &[Segment], b: &[Segment]| a.iter().chain(b).cloned().collect::<Vec<_>>();
        TwoChainSet::new(
            join(&self.parts[0], &other.parts[0]),
            join(&self.parts[1], &other.parts[1]),
        )
    }

    pub fn min_tag(&self) -> Option<u8> {
        (0..2).find(|&t| !self.parts[t as usize].is_empty())
    }

    pub fn max_tag(&self) -> Option<u8> {
        (0..2).rev().find(|&t| !self.parts[t as usize].is_empty())
    }

    pub fn sup_b(&self) -> Option<Ext> {
        self.parts.iter().flatten().map(|s| s.hi.clone()).max()
    }

    pub fn inf_b(&self) -> Option<Ext> {
        self.parts.iter().flatten().map(|s| s.lo.clone()).min()
    }

    pub fn least(&self) -> Option<Point> {
        let p = Point::new(self.min_tag()?, self.inf_b()?);
        self.contains(&p).then_some(p)
    }

    pub fn greatest(&self) -> Option<Point> {
        let p = Point::new(self.max_tag()?, self.sup_b()?);
        self.contains(&p).then_some(p)
    }
}

impl fmt::Display for TwoChainSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let mut first = true;
        for tag in 0..2u8 {
            for s in self.part(tag) {
                if !first {
                    f.write_str(" ∪ ")?;
                }
                first = false;
                write!(f, "{{{tag}}}×{s}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for TwoChainSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A poset carried by a `TwoChainSet`.
#[derive(Clone, Debug)]
pub struct TwoChain {
    pub carrier: TwoChainSet,
}

impl TwoChain {
    pub fn new(carrier: TwoChainSet) -> Self {
        TwoChain { carrier }
    }

    /// `A⁺` within the carrier.
    pub fn ub(&self, a: &TwoChainSet) -> TwoChainSet {
        match (a.max_tag(), a.sup_b()) {
            (Some(t), Some(c)) => TwoChainSet::up(t, &c).intersect(&self.carrier),
            _ => self.carrier.clone(),
        }
    }

    /// `A⁻` within the carrier.
    pub fn lb(&self, a: &TwoChainSet) -> TwoChainSet {
        match (a.min_tag(), a.inf_b()) {
            (Some(t), Some(c)) => TwoChainSet::down(t, &c).intersect(&self.carrier),
            _ => self.carrier.clone(),
        }
    }

    pub fn sup(&self, a: &TwoChainSet) -> Option<Point> {
        self.ub(a).least()
    }

    pub fn inf(&self, a: &TwoChainSet) -> Option<Point> {
        self.lb(a).greatest()
    }

    pub fn is_cut(&self, d: &TwoChainSet) -> bool {
        self.lb(&self.ub(d)) == *d
    }

    pub fn principal(&self, p: &Point) -> TwoChainSet {
        TwoChainSet::down(p.tag, &p.b).intersect(&self.carrier)
    }

    pub fn join(&self, x: &Point, y: &Point) -> Option<Point> {
        self.sup(&pair(x, y))
    }

    pub fn meet(&self, x: &Point, y: &Point) -> Option<Point> {
        self.inf(&pair(x, y))
    }
}

fn pair(x: &Point, y: &Point) -> TwoChainSet {
    let one = |p: &Point| TwoChainSet::chain(p.tag, Segment::closed(p.b.clone(), p.b.clone()));
    one(x).union(&one(y))
}

/// A monotone sequence `(tag, b(n))`, `n >= 1`.
#[derive(Clone, Debug)]
pub struct PointNet {
    pub tag: u8,
    pub b: Expr,
}

impl PointNet {
    pub fn new(tag: u8, b: Expr) -> Self {
        PointNet { tag, b }
    }

    pub fn at(&self, n: u32) -> Point {
        Point::new(self.tag, self.b.eval(n))
    }

    fn increasing(&self) -> bool {
        self.b.trend() != super::closed_sets::Trend::Decreasing
    }

    /// The supremum (increasing) or infimum (decreasing) in `l`.
    pub fn limit_in(&self, l: &TwoChain) -> Option<Point> {
        let lim = self.b.limit();
        if self.increasing() {
            TwoChainSet::up(self.tag, &lim)
                .intersect(&l.carrier)
                .least()
        } else {
            TwoChainSet::down(self.tag, &lim)
                .intersect(&l.carrier)
                .greatest()
        }
    }

    /// Pointwise join, in eventual form.
    pub fn join(&self, other: &PointNet) -> PointNet {
        PointNet::new(self.tag.max(other.tag), emax(&self.b, &other.b))
    }

    /// Pointwise meet, in eventual form.
    pub fn meet(&self, other: &PointNet) -> PointNet {
        PointNet::new(self.tag.min(other.tag), emin(&self.b, &other.b))
    }

    pub fn constant(p: &Point) -> PointNet {
        PointNet::new(p.tag, Expr::Const(p.b.clone()))
    }

    fn within(&self, l: &TwoChain) -> bool {
        (1..=N_CHECK).all(|n| l.carrier.contains(&self.at(n)))
    }
}

fn q(n: i64, d: i64) -> num_rational::BigRational {
    ratio(n, d)
}

/// Representative parameter values: the breakpoints `0`, `1`, `∞` and
/// points inside every region between them.
fn reps() -> Vec<Ext> {
    vec![
        Ext::zero(),
        Ext::frac(1, 4),
        Ext::frac(1, 2),
        Ext::frac(3, 4),
        Ext::int(1),
        Ext::frac(3, 2),
        Ext::int(2),
        Ext::PosInf,
    ]
}

/// `{(0,b) : 0 <= b < 1} ∪ {(1,b) : 0 <= b < ∞, b != 1}`
pub fn gapped_two_chain() -> TwoChain {
    TwoChain::new(TwoChainSet::new(
        vec![Segment::half_open(Ext::zero(), Ext::int(1))],
        vec![
            Segment::half_open(Ext::zero(), Ext::int(1)),
            Segment::new(Ext::int(1), false, Ext::PosInf, false),
        ],
    ))
}

/// `{(0,b) : 0 <= b < 1} ∪ {(1,b) : 0 <= b <= ∞}`
pub fn gapped_completion_carrier() -> TwoChainSet {
    TwoChainSet::new(
        vec![Segment::half_open(Ext::zero(), Ext::int(1))],
        vec![Segment::closed(Ext::zero(), Ext::PosInf)],
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutLabel {
    /// `(max tag, sup b)` of the cut.
    pub label: Point,
    pub cut: TwoChainSet,
    pub principal: bool,
}

/// Cuts among `Down(t, c) ∩ L` for the representative `c`, and `∅`,
/// deduplicated, labelled by their top point.
pub fn candidate_cuts(l: &TwoChain) -> Vec<CutLabel> {
    let mut out: Vec<CutLabel> = Vec::new();
    let mut candidates = vec![TwoChainSet::empty()];
    for tag in 0..2 {
        for c in reps() {
            candidates.push(TwoChainSet::down(tag, &c).intersect(&l.carrier));
        }
    }
    for d in candidates {
        if d.is_empty() || !l.is_cut(&d) || out.iter().any(|x| x.cut == d) {
            continue;
        }
        let label = Point::new(d.max_tag().unwrap(), d.sup_b().unwrap());
        let principal = l.carrier.contains(&label) && l.principal(&label) == d;
        out.push(CutLabel {
            label,
            cut: d,
            principal,
        });
    }
    out.sort_by(|a, b| a.label.cmp(&b.label));
    out
}

pub fn twochain_dm() -> Result<GalleryReport> {
    let l = gapped_two_chain();
    let dm_carrier = gapped_completion_carrier();
    let mut claims = Vec::new();

    let empty_is_cut = l.is_cut(&TwoChainSet::empty());
    let cuts = candidate_cuts(&l);
    let adjoined: Vec<Point> = cuts
        .iter()
        .filter(|c| !c.principal)
        .map(|c| c.label.clone())
        .collect();
    let names: Vec<String> = adjoined.iter().map(Point::to_string).collect();
    claims.push(Claim::expect(
        "two-chain.adjoined",
        "the completion adjoins exactly (1,1) and (1,∞)",
        format!("{{{}}}", names.join(", ")),
        adjoined == [Point::new(1, Ext::int(1)), Point::new(1, Ext::PosInf)] && !empty_is_cut,
    ));

    let labels_inside = cuts.iter().all(|c| dm_carrier.contains(&c.label));
    let mut carrier_hit = true;
    for tag in 0..2 {
        for c in reps() {
            let p = Point::new(tag, c);
            if dm_carrier.contains(&p) {
                let d = l.principal(&p);
                carrier_hit &= l.is_cut(&d) && cuts.iter().any(|x| x.label == p && x.cut == d);
            }
        }
    }
    claims.push(Claim::expect(
        "two-chain.carrier",
        "cuts correspond to {(0,b) : 0 <= b < 1} ∪ {(1,b) : 0 <= b <= ∞}",
        format!("{} distinct cuts on the representative grid", cuts.len()),
        labels_inside && carrier_hit,
    ));

    // the full cut is labelled (1,∞); ∅ is not a cut
    let stripped = dm_carrier.intersect(&TwoChainSet::new(
        vec![Segment::closed(Ext::NegInf, Ext::PosInf)],
        vec![Segment::half_open(Ext::NegInf, Ext::PosInf)],
    ));
    let full = cuts.iter().find(|c| c.cut == l.carrier);
    claims.push(
        Claim::expect(
            "two-chain.stripped",
            "removing the empty cut and the full cut",
            stripped.to_string(),
            !empty_is_cut
                && full.is_some_and(|c| !c.principal && c.label == Point::new(1, Ext::PosInf)),
        )
        .detail("∅ is not a cut since (0,0) is least, so only the full cut is removed"),
    );

    let dm = TwoChain::new(stripped);
    let x = PointNet::new(0, Expr::harmonic(q(1, 1), q(-1, 1)));
    let y = Point::new(1, Ext::frac(1, 2));
    let sup = x.limit_in(&dm);
    let lhs = sup.as_ref().and_then(|s| dm.meet(s, &y));
    let mapped = x.meet(&PointNet::constant(&y));
    let eventual_ok = dm.meet(&x.at(N_CHECK), &y) == Some(mapped.at(N_CHECK));
    let rhs = mapped.limit_in(&dm);
    let show = |p: &Option<Point>| p.as_ref().map_or("none".to_string(), Point::to_string);
    claims.push(Claim::expect(
        "two-chain.jid-fails",
        "join-infinite distributivity fails for x_n = (0,1-1/n) and (1,1/2)",
        format!(
            "⋁x_n = {}, (⋁x_n) ∧ (1,1/2) = {}, ⋁(x_n ∧ (1,1/2)) = {}",
            show(&sup),
            show(&lhs),
            show(&rhs)
        ),
        eventual_ok
            && sup == Some(Point::new(1, Ext::int(1)))
            && lhs == Some(y.clone())
            && rhs == Some(Point::new(0, Ext::frac(1, 2))),
    ));

    let (count, failures) = mid_grid(&dm);
    claims.push(Claim::expect(
        "two-chain.mid-holds",
        "meet-infinite distributivity holds on decreasing test nets",
        if failures.is_empty() {
            format!("{count} instances agree")
        } else {
            failures.join("; ")
        },
        failures.is_empty(),
    ));

    let (count, failures) = limit_combination_grid(&l);
    claims.push(Claim::expect(
        "two-chain.limit-of-joins",
        "joins and meets of O-convergent nets converge to the join and meet of the limits",
        if failures.is_empty() {
            format!("{count} instances agree")
        } else {
            failures.join("; ")
        },
        failures.is_empty(),
    ));

    Ok(GalleryReport::new("two-chain-dm", claims))
}

fn grid_points(l: &TwoChain) -> Vec<Point> {
    (0..2)
        .flat_map(|t| reps().into_iter().map(move |c| Point::new(t, c)))
        .filter(|p| l.carrier.contains(p))
        .collect()
}

fn test_nets(l: &TwoChain, increasing: bool) -> Vec<PointNet> {
    let r = q(if increasing { -1 } else { 1 }, 4);
    let mut nets = Vec::new();
    for tag in 0..2 {
        for c in [q(0, 1), q(1, 4), q(1, 2), q(1, 1), q(2, 1)] {
            nets.push(PointNet::new(tag, Expr::harmonic(c.clone(), r.clone())));
            nets.push(PointNet::new(tag, Expr::geometric(c, r.clone(), q(1, 2))));
        }
    }
    nets.retain(|n| n.within(l));
    nets
}

fn mid_grid(dm: &TwoChain) -> (usize, Vec<String>) {
    let mut count = 0;
    let mut failures = Vec::new();
    for x in grid_points(dm) {
        for net in test_nets(dm, false) {
            let Some(inf) = net.limit_in(dm) else {
                continue;
            };
            let lhs = dm.join(&x, &inf);
            let mapped = net.join(&PointNet::constant(&x));
            if dm.join(&x, &net.at(N_CHECK)) != Some(mapped.at(N_CHECK)) {
                failures.push(format!("eventual form of x ∨ y_n disagrees for x = {x}"));
                continue;
            }
            count += 1;
            let rhs = mapped.limit_in(dm);
            if lhs != rhs {
                failures.push(format!(
                    "x = {x}, y_n = ({},{}): {lhs:?} vs {rhs:?}",
                    net.tag, net.b
                ));
            }
        }
    }
    (count, failures)
}

fn limit_combination_grid(l: &TwoChain) -> (usize, Vec<String>) {
    let mut count = 0;
    let mut failures = Vec::new();
    for increasing in [true, false] {
        let nets = test_nets(l, increasing);
        for a in &nets {
            for b in &nets {
                let (Some(x), Some(y)) = (a.limit_in(l), b.limit_in(l)) else {
                    continue;
                };
                let (j, m) = (a.join(b), a.meet(b));
                let n = N_CHECK;
                if l.join(&a.at(n), &b.at(n)) != Some(j.at(n))
                    || l.meet(&a.at(n), &b.at(n)) != Some(m.at(n))
                {
                    failures.push(format!("eventual form disagrees for {x} and {y}"));
                    continue;
                }
                count += 1;
                if j.limit_in(l) != l.join(&x, &y) || m.limit_in(l) != l.meet(&x, &y) {
                    failures.push(format!("limits {x}, {y}"));
                }
            }
        }
    }
    (count, failures)
}

/// `{(0,b) : 0 <= b <= 1} ∪ {(1,b) : 0 <= b <= 1}`
pub fn closed_square() -> TwoChain {
    let s = Segment::closed(Ext::zero(), Ext::int(1));
    TwoChain::new(TwoChainSet::new(vec![s.clone()], vec![s]))
}

/// `{(0,b) : 0 <= b < 1} ∪ {(1,b) : 0 <= b < 1}`
pub fn half_open_square() -> TwoChainSet {
    let s = Segment::half_open(Ext::zero(), Ext::int(1));
    TwoChainSet::new(vec![s.clone()], vec![s])
}

/// Definable subsets of the half-open square: one segment per tag (or
/// none), with endpoints on a grid.
fn definable_subsets() -> Vec<TwoChainSet> {
    let vals = [Ext::zero(), Ext::frac(1, 4), Ext::frac(1, 2), Ext::int(1)];
    let mut segs = vec![None];
    for (i, lo) in vals.iter().enumerate() {
        for hi in &vals[i..] {
            for lo_closed in [true, false] {
                for hi_closed in [true, false] {
                    let s = Segment::new(lo.clone(), lo_closed, hi.clone(), hi_closed);
                    if !s.is_empty() && !s.contains(&Ext::int(1)) {
                        segs.push(Some(s));
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for a in &segs {
        for b in &segs {
            let set = TwoChainSet::new(a.iter().cloned().collect(), b.iter().cloned().collect());
            if !set.is_empty() {
                out.push(set);
            }
        }
    }
    out
}

pub fn regular_without_b() -> Result<GalleryReport> {
    let l = closed_square();
    let l0_set = half_open_square();
    let l0 = TwoChain::new(l0_set.clone());
    let mut claims = Vec::new();

    let a = TwoChainSet::chain(0, Segment::half_open(Ext::zero(), Ext::int(1)));
    let x = Point::new(0, Ext::int(1));
    let upper = l.ub(&a);
    let in_l0 = upper.intersect(&l0_set);
    let expected = TwoChainSet::new(
        vec![Segment::closed(Ext::int(1), Ext::int(1))],
        vec![Segment::closed(Ext::int(1), Ext::int(1))],
    );
    claims.push(Claim::expect(
        "square.b-fails",
        "(B) fails for A = {(0,b) : b < 1} and x = (0,1)",
        format!("A⁺ = {upper}, A⁺ ∩ L₀ = {in_l0}"),
        upper.contains(&x) && upper == expected && in_l0.is_empty(),
    ));

    let subsets = definable_subsets();
    let a_failures: Vec<String> = subsets
        .iter()
        .filter(|s| !l.lb(s).greatest().is_some_and(|g| l0_set.contains(&g)))
        .map(|s| s.to_string())
        .collect();
    claims.push(
        Claim::expect(
            "square.a-holds",
            "(A) holds for nonempty definable subsets",
            if a_failures.is_empty() {
                format!("{} subsets checked", subsets.len())
            } else {
                a_failures.join("; ")
            },
            a_failures.is_empty(),
        )
        .detail(format!(
            "with A = ∅ the literal reading fails: no point of L₀ lies above {} in A⁻ = L",
            Point::new(1, Ext::int(1))
        )),
    );

    let mut reg_failures = Vec::new();
    for s in &subsets {
        if let Some(sup0) = l0.sup(s) {
            if l.sup(s) != Some(sup0.clone()) {
                reg_failures.push(format!("sup of {s}"));
            }
        }
        if let Some(inf0) = l0.inf(s) {
            if l.inf(s) != Some(inf0.clone()) {
                reg_failures.push(format!("inf of {s}"));
            }
        }
    }
    claims.push(Claim::expect(
        "square.regular",
        "L₀ is regular in L on definable subsets",
        if reg_failures.is_empty() {
            format!("{} subsets checked", subsets.len())
        } else {
            reg_failures.join("; ")
        },
        reg_failures.is_empty(),
    ));

    Ok(GalleryReport::new("exmp3", claims))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn segments_merge_when_touching() {
        let s = TwoChainSet::new(
            vec![
                Segment::half_open(Ext::zero(), Ext::int(1)),
                Segment::closed(Ext::int(1), Ext::int(2)),
            ],
            vec![
                Segment::half_open(Ext::zero(), Ext::int(1)),
                Segment::new(Ext::int(1), false, Ext::int(2), true),
            ],
        );
        assert_eq!(s.part(0).len(), 1);
        assert_eq!(s.part(1).len(), 2);
        assert!(!s.contains(&Point::new(1, Ext::int(1))));
    }

    #[test]
    fn least_and_greatest() {
        let l = gapped_two_chain();
        assert_eq!(l.carrier.least(), Some(Point::new(0, Ext::zero())));
        assert_eq!(l.carrier.greatest(), None);
        assert!(!l.is_cut(&TwoChainSet::empty()));
        let tag0 = TwoChainSet::chain(0, Segment::half_open(Ext::zero(), Ext::int(1)));
        assert_eq!(l.sup(&tag0), None);
    }

    #[test]
    fn completion_labels() {
        let cuts = candidate_cuts(&gapped_two_chain());
        let adjoined: Vec<String> = cuts
            .iter()
            .filter(|c| !c.principal)
            .map(|c| c.label.to_string())
            .collect();
        assert_eq!(adjoined, ["(1,1)", "(1,∞)"]);
    }

    #[test]
    fn reports_pass() {
        for r in [twochain_dm().unwrap(), regular_without_b().unwrap()] {
            assert!(
                r.claims.iter().all(|c| c.verdict == Verdict::Pass),
                "{r:#?}"
            );
        }
    }
}
