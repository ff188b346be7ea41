//! The ring of subsets of the line generated by the rays `(-∞, a]`,
//! `a <= 0`, and `[b, ∞)`, `b >= 0`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::closed_sets::{net_sup, Direction, Expr, ParamNet, SymClosedSet, Term, N_CHECK};
use super::ext::{ratio, Ext};
use super::two_chain::Segment;
use super::{Claim, GalleryReport};
use crate::error::Result;
use crate::subobject::{iterate_adherence, AdherenceBackend};

/// `∅`, `(-∞,-a]`, `[b,∞)`, `(-∞,-a] ∪ [b,∞)` or `{0}`, with `a, b >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RayRingElem {
    Empty,
    Left(BigRational),
    Right(BigRational),
    Both(BigRational, BigRational),
    Zero,
}

impl RayRingElem {
    pub fn to_set(&self) -> SymClosedSet {
        let left = |a: &BigRational| SymClosedSet::left_ray(Ext::Fin(-a));
        let right = |b: &BigRational| SymClosedSet::right_ray(Ext::Fin(b.clone()));
        match self {
            RayRingElem::Empty => SymClosedSet::empty(),
            RayRingElem::Left(a) => left(a),
            RayRingElem::Right(b) => right(b),
            RayRingElem::Both(a, b) => left(a).join(&right(b)),
            RayRingElem::Zero => SymClosedSet::point(Ext::zero()),
        }
    }

    /// The element with this underlying set, if there is one.
    pub fn from_set(s: &SymClosedSet) -> Option<Self> {
        let nonneg = |x: &BigRational| !x.is_negative();
        match s.components() {
            [] => Some(RayRingElem::Empty),
            [(Ext::NegInf, Ext::PosInf)] => {
                Some(RayRingElem::Both(BigRational::zero(), BigRational::zero()))
            }
            [(Ext::NegInf, Ext::Fin(x))] if nonneg(&-x) => Some(RayRingElem::Left(-x)),
            [(Ext::Fin(y), Ext::PosInf)] if nonneg(y) => Some(RayRingElem::Right(y.clone())),
            [(Ext::Fin(x), Ext::Fin(y))] if x.is_zero() && y.is_zero() => Some(RayRingElem::Zero),
            [(Ext::NegInf, Ext::Fin(x)), (Ext::Fin(y), Ext::PosInf)]
                if nonneg(&-x) && nonneg(y) =>
            {
                Some(RayRingElem::Both(-x, y.clone()))
            }
            _ => None,
        }
    }

    pub fn meet(&self, other: &Self) -> Self {
        Self::from_set(&self.to_set().meet(&other.to_set())).expect("the ring is closed under ∩")
    }

    pub fn join(&self, other: &Self) -> Self {
        Self::from_set(&self.to_set().join(&other.to_set())).expect("the ring is closed under ∪")
    }

    fn shape(&self) -> Shape {
        match self {
            RayRingElem::Empty => Shape::Empty,
            RayRingElem::Left(_) => Shape::Left,
            RayRingElem::Right(_) => Shape::Right,
            RayRingElem::Both(..) => Shape::Both,
            RayRingElem::Zero => Shape::Zero,
        }
    }
}

impl fmt::Display for RayRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_set().fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Empty,
    Left,
    Right,
    Both,
    Zero,
}

/// All elements of one shape whose parameters lie in the given ranges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Part {
    pub shape: Shape,
    pub a: Option<Segment>,
    pub b: Option<Segment>,
}

impl Part {
    pub fn bare(shape: Shape) -> Self {
        Part {
            shape,
            a: None,
            b: None,
        }
    }

    pub fn left(a: Segment) -> Self {
        Part {
            shape: Shape::Left,
            a: Some(a),
            b: None,
        }
    }

    pub fn right(b: Segment) -> Self {
        Part {
            shape: Shape::Right,
            a: None,
            b: Some(b),
        }
    }

    pub fn both(a: Segment, b: Segment) -> Self {
        Part {
            shape: Shape::Both,
            a: Some(a),
            b: Some(b),
        }
    }

    fn contains(&self, e: &RayRingElem) -> bool {
        let inside = |range: &Option<Segment>, x: &BigRational| {
            range
                .as_ref()
                .is_some_and(|r| r.contains(&Ext::Fin(x.clone())))
        };
        self.shape == e.shape()
            && match e {
                RayRingElem::Left(a) => inside(&self.a, a),
                RayRingElem::Right(b) => inside(&self.b, b),
                RayRingElem::Both(a, b) => inside(&self.a, a) && inside(&self.b, b),
                _ => true,
            }
    }

    fn subsumed_by(&self, other: &Part) -> bool {
        let sub = |x: &Option<Segment>, y: &Option<Segment>| match (x, y) {
            (Some(x), Some(y)) => x.intersect(y) == *x,
            (None, None) => true,
            _ => false,
        };
        self.shape == other.shape && sub(&self.a, &other.a) && sub(&self.b, &other.b)
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &Option<Segment>| s.as_ref().map_or(String::new(), |s| s.to_string());
        match self.shape {
            Shape::Empty => f.write_str("∅"),
            Shape::Zero => f.write_str("{0}"),
            Shape::Left => write!(f, "(-∞,-a] a∈{}", show(&self.a)),
            Shape::Right => write!(f, "[b,∞) b∈{}", show(&self.b)),
            Shape::Both => write!(f, "(-∞,-a]∪[b,∞) a∈{} b∈{}", show(&self.a), show(&self.b)),
        }
    }
}

/// A union of parts, kept sorted with subsumed parts removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RayFamily {
    parts: Vec<Part>,
}

impl RayFamily {
    pub fn new(parts: Vec<Part>) -> Self {
        let mut parts = parts;
        parts.sort();
        parts.dedup();
        let kept: Vec<Part> = parts
            .iter()
            .enumerate()
            .filter(|(i, p)| {
                !parts
                    .iter()
                    .enumerate()
                    .any(|(j, q)| *i != j && p.subsumed_by(q) && !(q.subsumed_by(p) && j > *i))
            })
            .map(|(_, p)| p.clone())
            .collect();
        RayFamily { parts: kept }
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn contains(&self, e: &RayRingElem) -> bool {
        self.parts.iter().any(|p| p.contains(e))
    }

    /// Limits of O-convergent nets valued in the family: parameters move
    /// to the closure of their range, and a parameter tending to `∞`
    /// removes its ray.
    pub fn first_adherence(&self) -> RayFamily {
        let mut out = Vec::new();
        for p in &self.parts {
            let a = p.a.as_ref().map(closure);
            let b = p.b.as_ref().map(closure);
            match p.shape {
                Shape::Empty | Shape::Zero => out.push(p.clone()),
                Shape::Left => {
                    let (fin, unbounded) = a.expect("left part has a range");
                    out.push(Part::left(fin));
                    if unbounded {
                        out.push(Part::bare(Shape::Empty));
                    }
                }
                Shape::Right => {
                    let (fin, unbounded) = b.expect("right part has a range");
                    out.push(Part::right(fin));
                    if unbounded {
                        out.push(Part::bare(Shape::Empty));
                    }
                }
                Shape::Both => {
                    let (fa, ua) = a.expect("range");
                    let (fb, ub) = b.expect("range");
                    out.push(Part::both(fa.clone(), fb.clone()));
                    if ua {
                        out.push(Part::right(fb));
                    }
                    if ub {
                        out.push(Part::left(fa));
                    }
                    if ua && ub {
                        out.push(Part::bare(Shape::Empty));
                    }
                }
            }
        }
        RayFamily::new(out)
    }

    /// Greatest member below both `x` and `y`, when their meet in the ring
    /// is `{0}` or belongs to the family.
    pub fn inf_within(&self, x: &RayRingElem, y: &RayRingElem) -> Option<RayRingElem> {
        let m = x.meet(y);
        if self.contains(&m) {
            return Some(m);
        }
        (m == RayRingElem::Zero && self.contains(&RayRingElem::Empty)).then_some(RayRingElem::Empty)
    }
}

/// Closure of a parameter range inside `[0, ∞)`, and whether the range is
/// unbounded.
fn closure(s: &Segment) -> (Segment, bool) {
    let unbounded = s.hi == Ext::PosInf;
    (
        Segment::new(s.lo.clone(), true, s.hi.clone(), !unbounded),
        unbounded,
    )
}

impl fmt::Display for RayFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(Part::to_string).collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

impl Serialize for RayFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub struct RayAdherence;

impl AdherenceBackend for RayAdherence {
    type Set = RayFamily;
    fn first_adherence(&self, set: &RayFamily) -> Result<RayFamily> {
        Ok(set.first_adherence())
    }
}

fn positive() -> Segment {
    Segment::new(Ext::zero(), false, Ext::PosInf, false)
}

fn nonnegative() -> Segment {
    Segment::new(Ext::zero(), true, Ext::PosInf, false)
}

fn family(range: Segment, with_zero: bool) -> RayFamily {
    let mut parts = vec![
        Part::bare(Shape::Empty),
        Part::left(range.clone()),
        Part::right(range.clone()),
        Part::both(range.clone(), range),
    ];
    if with_zero {
        parts.push(Part::bare(Shape::Zero));
    }
    RayFamily::new(parts)
}

/// The whole ring: parameters `a, b >= 0` and `{0}`.
pub fn ring() -> RayFamily {
    family(nonnegative(), true)
}

/// The subring generated by the rays with `a < 0` and `b > 0`.
pub fn open_subring() -> RayFamily {
    family(positive(), false)
}

/// Parameters `a, b >= 0`, without `{0}`.
pub fn closed_subring() -> RayFamily {
    family(nonnegative(), false)
}

/// Nets in the open subring whose suprema are boundary elements.
fn boundary_nets() -> Vec<(ParamNet, RayRingElem)> {
    let half = || Expr::geometric(ratio(0, 1), ratio(1, 1), ratio(1, 2));
    let neg_half = || Expr::geometric(ratio(0, 1), ratio(-1, 1), ratio(1, 2));
    let inc = |terms| ParamNet::new(terms, Direction::Increasing).expect("increasing by shape");
    let zero = BigRational::zero();
    vec![
        (
            inc(vec![Term::new(Expr::Const(Ext::NegInf), neg_half())]),
            RayRingElem::Left(zero.clone()),
        ),
        (
            inc(vec![Term::new(half(), Expr::Const(Ext::PosInf))]),
            RayRingElem::Right(zero.clone()),
        ),
        (
            inc(vec![
                Term::new(Expr::Const(Ext::NegInf), neg_half()),
                Term::new(half(), Expr::Const(Ext::PosInf)),
            ]),
            RayRingElem::Both(zero.clone(), zero),
        ),
    ]
}

pub fn rayring_closure() -> Result<GalleryReport> {
    let y = open_subring();
    let l = ring();
    let expected = closed_subring();
    let mut claims = Vec::new();

    let adh = y.first_adherence();
    claims.push(Claim::expect(
        "ray-ring.closure",
        "the first O-adherence of Y has parameters a, b >= 0 and excludes {0}",
        adh.to_string(),
        adh == expected && !adh.contains(&RayRingElem::Zero),
    ));

    let mut net_failures = Vec::new();
    for (net, target) in boundary_nets() {
        let in_y = (1..=N_CHECK)
            .all(|n| RayRingElem::from_set(&net.at(n)).is_some_and(|e| y.contains(&e)));
        let sup = net_sup(&net)?;
        let elem = RayRingElem::from_set(&sup);
        if !in_y || elem.as_ref() != Some(&target) || !adh.contains(&target) || y.contains(&target)
        {
            net_failures.push(format!("{target}"));
        }
    }
    claims.push(Claim::expect(
        "ray-ring.boundary-nets",
        "increasing nets in Y reach (-∞,0], [0,∞) and ℝ",
        if net_failures.is_empty() {
            "suprema agree with the adherence".to_string()
        } else {
            net_failures.join("; ")
        },
        net_failures.is_empty(),
    ));

    let zero = BigRational::zero();
    let left = RayRingElem::Left(zero.clone());
    let right = RayRingElem::Right(zero);
    let meet_l = left.meet(&right);
    claims.push(Claim::expect(
        "ray-ring.meet-in-ring",
        "(-∞,0] ∧ [0,∞) = {0} in the ring",
        meet_l.to_string(),
        meet_l == RayRingElem::Zero && l.contains(&meet_l),
    ));

    let meet_closure = adh.inf_within(&left, &right);
    claims.push(Claim::expect(
        "ray-ring.meet-in-closure",
        "(-∞,0] ∧ [0,∞) = ∅ in the closure, which is therefore not a sublattice of the ring",
        meet_closure
            .as_ref()
            .map_or("none".to_string(), RayRingElem::to_string),
        meet_closure == Some(RayRingElem::Empty) && !adh.contains(&meet_l),
    ));

    let trace = iterate_adherence(&RayAdherence, &y, 8)?;
    claims.push(Claim::expect(
        "ray-ring.stabilizes",
        "iterated adherence of Y stabilizes after one step",
        match trace.stabilized_at {
            Some(k) => format!("stabilized at step {k}"),
            None => "not stabilized within max_iter".to_string(),
        },
        trace.stabilized_at == Some(1),
    ));

    Ok(GalleryReport::new("ray-ring", claims))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn set_round_trip() {
        let elems = [
            RayRingElem::Empty,
            RayRingElem::Zero,
            RayRingElem::Left(ratio(1, 2)),
            RayRingElem::Right(ratio(0, 1)),
            RayRingElem::Both(ratio(1, 1), ratio(2, 1)),
            RayRingElem::Both(ratio(0, 1), ratio(0, 1)),
        ];
        for e in &elems {
            assert_eq!(RayRingElem::from_set(&e.to_set()).as_ref(), Some(e));
        }
        assert_eq!(
            RayRingElem::from_set(&SymClosedSet::interval(Ext::int(0), Ext::int(1))),
            None
        );
    }

    #[test]
    fn families_and_membership() {
        let y = open_subring();
        assert!(!y.contains(&RayRingElem::Left(ratio(0, 1))));
        assert!(y.contains(&RayRingElem::Left(ratio(1, 3))));
        assert!(ring().contains(&RayRingElem::Zero));
        assert_eq!(closed_subring().first_adherence(), closed_subring());
    }

    #[test]
    fn report_passes() {
        let r = rayring_closure().unwrap();
        assert!(
            r.claims.iter().all(|c| c.verdict == Verdict::Pass),
            "{r:#?}"
        );
    }
}
