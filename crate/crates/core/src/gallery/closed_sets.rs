//! Closed subsets of the real line that are finite unions of closed
//! intervals and rays with rational endpoints, and monotone nets of them
//! whose endpoints are simple expressions in the index `n`.
//!
//! On finite lattices O-convergence is eventual constancy, so the gap
//! between O- and uO-convergence can only be seen on infinite lattices
//! such as this one.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::ext::{ratio, Ext};
use super::{Claim, GalleryReport};
use crate::error::{Error, Result};
use crate::report::Verdict;

/// Canonical form: components sorted, each `lo <= hi`, separated by
/// positive gaps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SymClosedSet {
    comps: Vec<(Ext, Ext)>,
}

impl SymClosedSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn real_line() -> Self {
        Self::interval(Ext::NegInf, Ext::PosInf)
    }

    /// `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: Ext, hi: Ext) -> Self {
        Self::from_components([(lo, hi)])
    }

    pub fn point(x: Ext) -> Self {
        Self::interval(x.clone(), x)
    }

    /// `(-∞, a]`
    pub fn left_ray(a: Ext) -> Self {
        Self::interval(Ext::NegInf, a)
    }

    /// `[b, ∞)`
    pub fn right_ray(b: Ext) -> Self {
        Self::interval(b, Ext::PosInf)
    }

    pub fn from_components<I: IntoIterator<Item = (Ext, Ext)>>(comps: I) -> Self {
        let mut v: Vec<(Ext, Ext)> = comps
            .into_iter()
            .filter(|(lo, hi)| lo <= hi && *lo != Ext::PosInf && *hi != Ext::NegInf)
            .collect();
        v.sort();
        let mut out: Vec<(Ext, Ext)> = Vec::with_capacity(v.len());
        for (lo, hi) in v {
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        SymClosedSet { comps: out }
    }

    pub fn components(&self) -> &[(Ext, Ext)] {
        &self.comps
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn join(&self, other: &Self) -> Self {
        Self::from_components(self.comps.iter().chain(&other.comps).cloned())
    }

    pub fn meet(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for (a, b) in &self.comps {
            for (c, d) in &other.comps {
                out.push((a.max(c).clone(), b.min(d).clone()));
            }
        }
        Self::from_components(out)
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.meet(other) == *self
    }
}

impl fmt::Display for SymClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return f.write_str("∅");
        }
        for (k, (lo, hi)) in self.comps.iter().enumerate() {
            if k > 0 {
                f.write_str("∪")?;
            }
            if lo == hi {
                write!(f, "{{{lo}}}")?;
            } else {
                let open = if *lo == Ext::NegInf { "(" } else { "[" };
                let close = if *hi == Ext::PosInf { ")" } else { "]" };
                write!(f, "{open}{lo},{hi}{close}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for SymClosedSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Endpoint expressions in the index `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(Ext),
    /// `c + r q^n` with `0 < q < 1`.
    Geometric {
        c: BigRational,
        r: BigRational,
        q: BigRational,
    },
    /// `c + r/n`
    Harmonic {
        c: BigRational,
        r: BigRational,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    Constant,
    Increasing,
    Decreasing,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Rate {
    Geometric(BigRational),
    Harmonic,
}

impl Expr {
    pub fn constant(x: Ext) -> Self {
        Expr::Const(x)
    }

    pub fn geometric(c: BigRational, r: BigRational, q: BigRational) -> Self {
        Expr::Geometric { c, r, q }
    }

    pub fn harmonic(c: BigRational, r: BigRational) -> Self {
        Expr::Harmonic { c, r }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Expr::Geometric { q, .. } if !(q.is_positive() && *q < BigRational::one()) => Err(
                Error::Precondition(format!("geometric ratio {q} is not in (0,1)")),
            ),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, n: u32) -> Ext {
        match self {
            Expr::Const(x) => x.clone(),
            Expr::Geometric { c, r, q } => Ext::Fin(c + r * num_traits::pow(q.clone(), n as usize)),
            Expr::Harmonic { c, r } => Ext::Fin(c + r / BigRational::from_integer(n.into())),
        }
    }

    pub fn limit(&self) -> Ext {
        match self {
            Expr::Const(x) => x.clone(),
            Expr::Geometric { c, .. } | Expr::Harmonic { c, .. } => Ext::Fin(c.clone()),
        }
    }

    pub fn trend(&self) -> Trend {
        match self.tail() {
            None => Trend::Constant,
            Some((_, r)) if r.is_positive() => Trend::Decreasing,
            Some(_) => Trend::Increasing,
        }
    }

    fn tail(&self) -> Option<(Rate, &BigRational)> {
        match self {
            Expr::Geometric { r, q, .. } if !r.is_zero() => Some((Rate::Geometric(q.clone()), r)),
            Expr::Harmonic { r, .. } if !r.is_zero() => Some((Rate::Harmonic, r)),
            _ => None,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(x) => write!(f, "{x}"),
            Expr::Geometric { c, r, q } => write!(
                f,
                "{} + {}*({})^n",
                Ext::Fin(c.clone()),
                Ext::Fin(r.clone()),
                Ext::Fin(q.clone())
            ),
            Expr::Harmonic { c, r } => {
                write!(f, "{} + {}/n", Ext::Fin(c.clone()), Ext::Fin(r.clone()))
            }
        }
    }
}

fn sign(r: &BigRational) -> Ordering {
    r.cmp(&BigRational::zero())
}

/// Sign of `a(n) - b(n)` for all large `n`.
pub fn cmp_eventual(a: &Expr, b: &Expr) -> Ordering {
    let (la, lb) = (a.limit(), b.limit());
    if la != lb {
        return la.cmp(&lb);
    }
    match (a.tail(), b.tail()) {
        (None, None) => Ordering::Equal,
        (Some((_, r)), None) => sign(r),
        (None, Some((_, r))) => sign(r).reverse(),
        (Some((ra, xa)), Some((rb, xb))) => match ra.cmp(&rb) {
            Ordering::Greater => sign(xa),
            Ordering::Less => sign(xb).reverse(),
            Ordering::Equal => sign(&(xa - xb)),
        },
    }
}

pub(crate) fn emax(a: &Expr, b: &Expr) -> Expr {
    if cmp_eventual(a, b) == Ordering::Less {
        b.clone()
    } else {
        a.clone()
    }
}

pub(crate) fn emin(a: &Expr, b: &Expr) -> Expr {
    if cmp_eventual(a, b) == Ordering::Greater {
        b.clone()
    } else {
        a.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub lo: Expr,
    pub hi: Expr,
}

impl Term {
    pub fn new(lo: Expr, hi: Expr) -> Self {
        Term { lo, hi }
    }

    fn at(&self, n: u32) -> (Ext, Ext) {
        (self.lo.eval(n), self.hi.eval(n))
    }

    fn eventually_empty(&self) -> bool {
        cmp_eventual(&self.lo, &self.hi) == Ordering::Greater
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

pub const N_CHECK: u32 = 64;

/// `x_n = ⋃ [lo_k(n), hi_k(n)]` for `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamNet {
    terms: Vec<Term>,
    direction: Direction,
    n_check: u32,
}

impl ParamNet {
    pub fn new(terms: Vec<Term>, direction: Direction) -> Result<Self> {
        Self::with_horizon(terms, direction, N_CHECK)
    }

    /// Checks monotonicity by term shape and then pointwise for
    /// `n = 1..=n_check`.
    pub fn with_horizon(terms: Vec<Term>, direction: Direction, n_check: u32) -> Result<Self> {
        for (k, t) in terms.iter().enumerate() {
            t.lo.validate()?;
            t.hi.validate()?;
            let (lo_bad, hi_bad) = match direction {
                Direction::Increasing => (Trend::Increasing, Trend::Decreasing),
                Direction::Decreasing => (Trend::Decreasing, Trend::Increasing),
            };
            if t.lo.trend() == lo_bad || t.hi.trend() == hi_bad {
                return Err(Error::Precondition(format!(
                    "term {k} is not {direction:?} by shape"
                )));
            }
        }
        let net = ParamNet {
            terms,
            direction,
            n_check,
        };
        for n in 1..n_check {
            let (a, b) = (net.at(n), net.at(n + 1));
            let ok = match direction {
                Direction::Increasing => a.leq(&b),
                Direction::Decreasing => b.leq(&a),
            };
            if !ok {
                return Err(Error::Precondition(format!(
                    "net is not {direction:?} between n = {n} and n = {}",
                    n + 1
                )));
            }
        }
        Ok(net)
    }

    pub fn constant(x: &SymClosedSet) -> Self {
        let terms = x
            .components()
            .iter()
            .map(|(lo, hi)| Term::new(Expr::Const(lo.clone()), Expr::Const(hi.clone())))
            .collect();
        ParamNet {
            terms,
            direction: Direction::Increasing,
            n_check: N_CHECK,
        }
    }

    /// Every endpoint is a constant.
    pub fn is_constant(&self) -> bool {
        self.terms
            .iter()
            .all(|t| matches!((&t.lo, &t.hi), (Expr::Const(_), Expr::Const(_))))
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn n_check(&self) -> u32 {
        self.n_check
    }

    pub fn at(&self, n: u32) -> SymClosedSet {
        SymClosedSet::from_components(self.terms.iter().map(|t| t.at(n)))
    }

    /// `(x_n ∧ t) ∨ s`, with every endpoint replaced by the expression it
    /// eventually equals.
    pub fn map(&self, s: &SymClosedSet, t: &SymClosedSet) -> Result<ParamNet> {
        let mut terms = Vec::new();
        for term in &self.terms {
            for (a, b) in t.components() {
                terms.push(Term::new(
                    emax(&term.lo, &Expr::Const(a.clone())),
                    emin(&term.hi, &Expr::Const(b.clone())),
                ));
            }
        }
        terms.retain(|t| !t.eventually_empty());
        for (a, b) in s.components() {
            terms.push(Term::new(Expr::Const(a.clone()), Expr::Const(b.clone())));
        }
        ParamNet::with_horizon(terms, self.direction, self.n_check)
    }

    /// Whether the eventual form of `(x_n ∧ t) ∨ s` equals the direct
    /// evaluation at `n`.
    pub fn map_agrees_at(&self, s: &SymClosedSet, t: &SymClosedSet, n: u32) -> Result<bool> {
        Ok(self.map(s, t)?.at(n) == self.at(n).meet(t).join(s))
    }

    /// Union of the endpoint-limit intervals of the eventually nonempty
    /// terms. For an increasing net this is the closure of the union; for a
    /// decreasing one the intersection.
    fn limit(&self) -> SymClosedSet {
        SymClosedSet::from_components(
            self.terms
                .iter()
                .filter(|t| !t.eventually_empty())
                .map(|t| (t.lo.limit(), t.hi.limit())),
        )
    }

    /// The O-limit, which for a monotone net is its supremum or infimum.
    pub fn o_limit(&self) -> Result<SymClosedSet> {
        match self.direction {
            Direction::Increasing => net_sup(self),
            Direction::Decreasing => net_inf(self),
        }
    }
}

fn cross_check(net: &ParamNet, limit: &SymClosedSet) -> Result<()> {
    for n in 1..=net.n_check {
        let x = net.at(n);
        let ok = match net.direction {
            Direction::Increasing => x.leq(limit),
            Direction::Decreasing => limit.leq(&x),
        };
        if !ok {
            return Err(Error::Precondition(format!(
                "limit {limit} does not bound x_{n} = {x}"
            )));
        }
    }
    Ok(())
}

pub fn net_sup(net: &ParamNet) -> Result<SymClosedSet> {
    if net.direction != Direction::Increasing && !net.is_constant() {
        return Err(Error::Precondition(
            "net_sup needs an increasing net".into(),
        ));
    }
    let limit = net.limit();
    cross_check(net, &limit)?;
    Ok(limit)
}

pub fn net_inf(net: &ParamNet) -> Result<SymClosedSet> {
    if net.direction != Direction::Decreasing && !net.is_constant() {
        return Err(Error::Precondition("net_inf needs a decreasing net".into()));
    }
    let limit = net.limit();
    cross_check(net, &limit)?;
    Ok(limit)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairOutcome {
    pub s: SymClosedSet,
    pub t: SymClosedSet,
    pub mapped_limit: SymClosedSet,
    pub required: SymClosedSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UoRefutation {
    pub verdict: Verdict,
    pub candidate: SymClosedSet,
    /// Outcomes up to and including the first failing pair.
    pub outcomes: Vec<PairOutcome>,
}

impl UoRefutation {
    pub fn failing(&self) -> Option<&PairOutcome> {
        match self.verdict {
            Verdict::Refuted => self.outcomes.last(),
            _ => None,
        }
    }
}

/// Tries to refute `x_n →uO candidate` on the given `(s, t)` pairs: for
/// each pair the O-limit of `(x_n ∧ t) ∨ s` is compared with
/// `(candidate ∧ t) ∨ s`. Passing every pair proves nothing, so the
/// verdict is then `Inconclusive`.
pub fn uo_refute(
    net: &ParamNet,
    candidate: &SymClosedSet,
    witnesses: &[(SymClosedSet, SymClosedSet)],
) -> Result<UoRefutation> {
    let mut outcomes = Vec::new();
    for (s, t) in witnesses {
        let mapped_limit = net.map(s, t)?.o_limit()?;
        let required = candidate.meet(t).join(s);
        let failed = mapped_limit != required;
        outcomes.push(PairOutcome {
            s: s.clone(),
            t: t.clone(),
            mapped_limit,
            required,
        });
        if failed {
            return Ok(UoRefutation {
                verdict: Verdict::Refuted,
                candidate: candidate.clone(),
                outcomes,
            });
        }
    }
    Ok(UoRefutation {
        verdict: Verdict::Inconclusive,
        candidate: candidate.clone(),
        outcomes,
    })
}

/// `(x ∧ ⋁ y_n, ⋁ (x ∧ y_n))` for an increasing net.
pub fn jid_sides(x: &SymClosedSet, net: &ParamNet) -> Result<(SymClosedSet, SymClosedSet)> {
    let lhs = x.meet(&net_sup(net)?);
    let rhs = net_sup(&net.map(&SymClosedSet::empty(), x)?)?;
    Ok((lhs, rhs))
}

/// `(x ∨ ⋀ y_n, ⋀ (x ∨ y_n))` for a decreasing net.
pub fn mid_sides(x: &SymClosedSet, net: &ParamNet) -> Result<(SymClosedSet, SymClosedSet)> {
    let lhs = x.join(&net_inf(net)?);
    let rhs = net_inf(&net.map(x, &SymClosedSet::real_line())?)?;
    Ok((lhs, rhs))
}

fn q(n: i64, d: i64) -> BigRational {
    ratio(n, d)
}

/// `X_n = [2^-n, ∞)`.
pub fn halving_rays() -> ParamNet {
    ParamNet::new(
        vec![Term::new(
            Expr::geometric(q(0, 1), q(1, 1), q(1, 2)),
            Expr::Const(Ext::PosInf),
        )],
        Direction::Increasing,
    )
    .expect("increasing by shape")
}

fn mid_grid() -> Vec<(SymClosedSet, ParamNet)> {
    let dec = |terms| ParamNet::new(terms, Direction::Decreasing).expect("decreasing by shape");
    let c = |x: Ext| Expr::Const(x);
    let nets = vec![
        dec(vec![Term::new(
            c(Ext::zero()),
            Expr::harmonic(q(1, 1), q(1, 1)),
        )]),
        dec(vec![Term::new(
            Expr::geometric(q(0, 1), q(-1, 1), q(1, 2)),
            Expr::geometric(q(0, 1), q(1, 1), q(1, 2)),
        )]),
        dec(vec![
            Term::new(Expr::harmonic(q(2, 1), q(-1, 1)), c(Ext::PosInf)),
            Term::new(c(Ext::NegInf), Expr::geometric(q(-1, 1), q(1, 1), q(1, 3))),
        ]),
        dec(vec![
            Term::new(c(Ext::zero()), Expr::harmonic(q(1, 1), q(1, 1))),
            Term::new(Expr::geometric(q(3, 1), q(-1, 1), q(1, 2)), c(Ext::int(4))),
        ]),
    ];
    let xs = vec![
        SymClosedSet::empty(),
        SymClosedSet::point(Ext::zero()),
        SymClosedSet::interval(Ext::int(1), Ext::int(2)),
        SymClosedSet::left_ray(Ext::int(-1)),
        SymClosedSet::right_ray(Ext::frac(1, 2)),
        SymClosedSet::real_line(),
        SymClosedSet::point(Ext::int(1)).join(&SymClosedSet::interval(Ext::int(3), Ext::int(5))),
    ];
    let mut grid = Vec::new();
    for x in &xs {
        for net in &nets {
            grid.push((x.clone(), net.clone()));
        }
    }
    grid
}

pub fn report() -> Result<GalleryReport> {
    let xn = halving_rays();
    let big_x = SymClosedSet::right_ray(Ext::zero());
    let a = SymClosedSet::left_ray(Ext::int(-1));
    let b = SymClosedSet::left_ray(Ext::zero());
    let mut claims = Vec::new();

    let sup = net_sup(&xn)?;
    claims.push(Claim::expect(
        "closed-sets.sup",
        "X_n = [2^-n,∞) increases to [0,∞), hence O-converges to it",
        sup.to_string(),
        sup == big_x,
    ));

    let refutation = uo_refute(&xn, &big_x, &[(a.clone(), b.clone())])?;
    let expected_required = SymClosedSet::point(Ext::zero()).join(&a);
    let reproduced = refutation.verdict == Verdict::Refuted
        && refutation
            .failing()
            .is_some_and(|o| o.mapped_limit == a && o.required == expected_required);
    let computed = match refutation.failing() {
        Some(o) => format!(
            "REFUTED at (s,t) = ({}, {}): mapped limit {} but required {}",
            o.s, o.t, o.mapped_limit, o.required
        ),
        None => "INCONCLUSIVE".to_string(),
    };
    claims.push(
        Claim::expect(
            "closed-sets.not-uo",
            "X_n does not uO-converge to [0,∞)",
            computed,
            reproduced,
        )
        .detail("whether X_n uO-converges to some other element is not decided"),
    );

    let agrees = xn.map_agrees_at(&a, &b, xn.n_check())?;
    claims.push(Claim::expect(
        "closed-sets.eventual-form",
        "the eventual form of the mapped net matches direct evaluation",
        format!("agrees at n = {}: {agrees}", xn.n_check()),
        agrees,
    ));

    let wrong = SymClosedSet::right_ray(Ext::int(1));
    let r = uo_refute(
        &xn,
        &wrong,
        &[(SymClosedSet::empty(), SymClosedSet::real_line())],
    )?;
    claims.push(Claim::expect(
        "closed-sets.wrong-candidate",
        "the pair (∅, ℝ) separates a wrong candidate from the O-limit",
        format!("{} for candidate {}", r.verdict, wrong),
        r.verdict == Verdict::Refuted,
    ));

    let (lhs, rhs) = jid_sides(&b, &xn)?;
    claims.push(Claim::expect(
        "closed-sets.jid-fails",
        "join-infinite distributivity fails for x = (-∞,0] and X_n",
        format!("x ∧ ⋁X_n = {lhs}, ⋁(x ∧ X_n) = {rhs}"),
        lhs == SymClosedSet::point(Ext::zero()) && rhs.is_empty(),
    ));

    let grid = mid_grid();
    let mut failures = Vec::new();
    for (x, net) in &grid {
        let (l, r) = mid_sides(x, net)?;
        if l != r {
            failures.push(format!("x = {x}: {l} vs {r}"));
        }
    }
    claims.push(Claim::expect(
        "closed-sets.mid-holds",
        "meet-infinite distributivity holds on decreasing test nets",
        if failures.is_empty() {
            format!("{} instances agree", grid.len())
        } else {
            failures.join("; ")
        },
        failures.is_empty(),
    ));

    Ok(GalleryReport::new("closed-sets", claims))
}
