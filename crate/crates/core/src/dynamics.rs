//! Periodic structure of a map: fixed sets, 2-cycles, period detection,
//! fixed-point typing and the boundary profile.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::interval::IntervalQ;
use num_traits::ToPrimitive;

use crate::plmap::{PLMap, Segment};
use crate::rational::{half, one, zero, Rational};

/// The exact fixed-point set of a map: isolated points plus maximal
/// segments on which the map is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FixedSet {
    pub points: Vec<Rational>,
    pub segments: Vec<IntervalQ>,
}

impl FixedSet {
    pub fn contains(&self, x: &Rational) -> bool {
        self.points.binary_search(x).is_ok() || self.segments.iter().any(|s| s.contains(x))
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.segments.is_empty()
    }

    /// Points and segments merged into one left-to-right list; points are
    /// degenerate intervals.
    pub fn elements(&self) -> Vec<IntervalQ> {
        let mut all: Vec<IntervalQ> = self
            .points
            .iter()
            .map(|p| IntervalQ::point(p.clone()).unwrap())
            .chain(self.segments.iter().cloned())
            .collect();
        all.sort();
        all
    }

    pub fn min(&self) -> Option<Rational> {
        self.elements().first().map(|e| e.lo().clone())
    }

    pub fn max(&self) -> Option<Rational> {
        self.elements().last().map(|e| e.hi().clone())
    }

    /// Number of fixed points, or `None` when there are infinitely many.
    pub fn finite_count(&self) -> Option<usize> {
        self.segments.is_empty().then_some(self.points.len())
    }

    /// Whether every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &FixedSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
            && self
                .segments
                .iter()
                .all(|s| other.segments.iter().any(|o| o.contains_interval(s)))
    }

    /// Fixed elements strictly inside `I`, isolated points only.
    pub fn points_inside<'a>(&'a self, i: &'a IntervalQ) -> impl Iterator<Item = &'a Rational> + 'a {
        self.points.iter().filter(move |p| i.contains_interior(p))
    }

    /// Isolated points together with both endpoints of every segment.
    pub fn distinguished_points(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.points.clone();
        for s in &self.segments {
            out.push(s.lo().clone());
            out.push(s.hi().clone());
        }
        out.sort();
        out.dedup();
        out
    }
}

pub fn fixed_set(f: &PLMap) -> FixedSet {
    let mut raw: Vec<(Rational, Rational)> = Vec::new();
    for seg in f.segments() {
        let g0 = seg.y0 - seg.x0;
        let g1 = seg.y1 - seg.x1;
        let z = zero();
        if g0 == z && g1 == z {
            raw.push((seg.x0.clone(), seg.x1.clone()));
            continue;
        }
        if g0 == z {
            raw.push((seg.x0.clone(), seg.x0.clone()));
        }
        if g1 == z {
            raw.push((seg.x1.clone(), seg.x1.clone()));
        }
        if (g0 < z && g1 > z) || (g0 > z && g1 < z) {
            // g is linear on the piece; its root.
            let x = seg.x0 + (seg.x1 - seg.x0) * (&z - &g0) / (&g1 - &g0);
            raw.push((x.clone(), x));
        }
    }
    raw.sort();
    let mut merged: Vec<(Rational, Rational)> = Vec::new();
    for (a, b) in raw {
        match merged.last_mut() {
            Some(last) if a <= last.1 => {
                if b > last.1 {
                    last.1 = b;
                }
            }
            _ => merged.push((a, b)),
        }
    }
    let mut out = FixedSet::default();
    for (a, b) in merged {
        if a == b {
            out.points.push(a);
        } else {
            out.segments.push(IntervalQ::new(a, b).unwrap());
        }
    }
    out
}

/// A period-2 orbit `{s, t}` with `s < t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoCycle {
    pub s: Rational,
    pub t: Rational,
}

impl TwoCycle {
    pub fn new(x: Rational, y: Rational) -> Self {
        if x <= y {
            Self { s: x, t: y }
        } else {
            Self { s: y, t: x }
        }
    }
}

/// Every point of period exactly two, grouped into isolated cycles and
/// segments on which `f²` is the identity but `f` is not.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleSet {
    pub isolated: Vec<TwoCycle>,
    pub swapped_segments: Vec<IntervalQ>,
}

impl CycleSet {
    pub fn is_empty(&self) -> bool {
        self.isolated.is_empty() && self.swapped_segments.is_empty()
    }

    /// Isolated cycles plus the cycles through swapped-segment endpoints,
    /// sorted and deduplicated.
    pub fn representative_cycles(&self, f: &PLMap) -> Vec<TwoCycle> {
        let mut out = self.isolated.clone();
        for seg in &self.swapped_segments {
            for e in [seg.lo(), seg.hi()] {
                let fe = f.at(e);
                if &fe != e {
                    out.push(TwoCycle::new(e.clone(), fe));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

pub fn two_cycles(f: &PLMap) -> Result<CycleSet> {
    let f2 = f.iterate(2)?;
    Ok(two_cycles_with(f, &fixed_set(f), &fixed_set(&f2)))
}

fn two_cycles_with(f: &PLMap, fix1: &FixedSet, fix2: &FixedSet) -> CycleSet {
    let mut isolated: Vec<TwoCycle> = fix2
        .points
        .iter()
        .filter(|p| !fix1.contains(p))
        .map(|p| TwoCycle::new(p.clone(), f.at(p)))
        .collect();
    isolated.sort();
    isolated.dedup();
    let swapped_segments = fix2
        .segments
        .iter()
        .filter(|j| !fix1.segments.iter().any(|s| s.contains_interval(j)))
        .cloned()
        .collect();
    CycleSet { isolated, swapped_segments }
}

/// Whether `f` has a periodic point of period greater than two, decided as
/// `Fix(f⁴) != Fix(f²)`.
pub fn has_period_gt2(f: &PLMap) -> Result<bool> {
    Ok(period_four_witness(f)?.is_some())
}

/// A point of exact period four, when one exists. These are the points of
/// period two for `f²`.
pub fn period_four_witness(f: &PLMap) -> Result<Option<Rational>> {
    Ok(two_cycle_witness(&f.iterate(2)?))
}

/// A point `x` with `h(h(x)) = x != h(x)`, found as an off-diagonal meeting
/// of the graph of `h` with its mirror image, so `h²` is never built.
pub fn two_cycle_witness(h: &PLMap) -> Option<Rational> {
    let segs: Vec<_> = h.segments().collect();
    let approx = |r: &Rational| r.to_f64().unwrap_or(0.0);
    let slack = 1e-9;
    let ranges: Vec<(f64, f64)> = segs
        .iter()
        .map(|p| {
            let (lo, hi) = p.value_range();
            (approx(lo) - slack, approx(hi) + slack)
        })
        .collect();
    let xs = h.breakpoints();
    for q in &segs {
        // Mirrored, q covers x in its value range and y in [q.x0, q.x1].
        let (qmin, qmax) = q.value_range();
        let (ylo, yhi) = (approx(q.x0) - slack, approx(q.x1) + slack);
        let first = xs.partition_point(|(x, _)| x < qmin).saturating_sub(1);
        let last = xs.partition_point(|(x, _)| x <= qmax).min(segs.len());
        for i in first..last {
            if ranges[i].1 < ylo || ranges[i].0 > yhi {
                continue;
            }
            let p = &segs[i];
            if p.x1 < qmin || p.x0 > qmax {
                continue;
            }
            if let Some(x) = mirrored_crossing(p, q, qmin, qmax) {
                return Some(x);
            }
        }
    }
    None
}

/// An `x` with `y = p(x)` and `x = q(y)`, `x != y`, both on their pieces.
fn mirrored_crossing(p: &Segment<'_>, q: &Segment<'_>, qmin: &Rational, qmax: &Rational) -> Option<Rational> {
    let sp = p.slope();
    let sq = q.slope();
    let det = one() - &sp * &sq;
    if det != zero() {
        let y = (p.y0 + &sp * (q.y0 - &sq * q.x0 - p.x0)) / det;
        let x = q.y0 + &sq * (&y - q.x0);
        let on_p = &x >= p.x0 && &x <= p.x1;
        let on_q = &y >= q.x0 && &y <= q.x1;
        return (on_p && on_q && x != y).then_some(x);
    }
    // Parallel; only a common line gives crossings.
    if q.x0 != &(p.y0 + &sp * (q.y0 - p.x0)) {
        return None;
    }
    let lo = std::cmp::max(p.x0, qmin).clone();
    let hi = std::cmp::min(p.x1, qmax).clone();
    if lo > hi {
        return None;
    }
    let mid = half(&lo, &hi);
    [lo, mid, hi].into_iter().find(|x| p.eval(x) != *x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedPointKind {
    S,
    N,
    M,
    W,
    Accumulation,
}

impl FixedPointKind {
    pub fn label(self) -> &'static str {
        match self {
            FixedPointKind::S => "S",
            FixedPointKind::N => "N",
            FixedPointKind::M => "M",
            FixedPointKind::W => "W",
            FixedPointKind::Accumulation => "accumulation",
        }
    }
}

/// The local type of a fixed point and the interval `[c, e]` witnessing it.
/// For accumulation points the witness is the fixed segment ending at the
/// point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointType {
    pub point: Rational,
    pub kind: FixedPointKind,
    pub witness: IntervalQ,
}

pub fn classify_fixed_point(f: &PLMap, d: &Rational) -> Result<FixedPointType> {
    classify_in(f, &fixed_set(f), d)
}

fn sign_vs_diagonal(f: &PLMap, x: &Rational) -> Ordering {
    f.at(x).cmp(x)
}

pub(crate) fn classify_in(f: &PLMap, fix: &FixedSet, d: &Rational) -> Result<FixedPointType> {
    if let Some(seg) = fix.segments.iter().find(|s| s.contains(d)) {
        if d == seg.lo() || d == seg.hi() {
            return Ok(FixedPointType {
                point: d.clone(),
                kind: FixedPointKind::Accumulation,
                witness: seg.clone(),
            });
        }
        return Err(Error::NotIsolatedFixedPoint(d.clone()));
    }
    if fix.points.binary_search(d).is_err() {
        return Err(Error::NotIsolatedFixedPoint(d.clone()));
    }
    let elements = fix.elements();
    let c = elements.iter().rev().find(|e| e.hi() < d).map_or_else(zero, |e| e.hi().clone());
    let e = elements.iter().find(|e| e.lo() > d).map_or_else(one, |e| e.lo().clone());
    // No fixed point lies strictly between c and d, so the sign of f(x) - x
    // is constant there and the midpoint decides it.
    let left = (&c < d).then(|| sign_vs_diagonal(f, &half(&c, d)));
    let right = (d < &e).then(|| sign_vs_diagonal(f, &half(d, &e)));
    use Ordering::{Greater as Above, Less as Below};
    let kind = match (left, right) {
        (Some(Below), Some(Above)) => FixedPointKind::S,
        (Some(Above), Some(Below)) => FixedPointKind::N,
        (Some(Above), Some(Above)) | (None, Some(Above)) | (Some(Above), None) => FixedPointKind::M,
        _ => FixedPointKind::W,
    };
    Ok(FixedPointType { point: d.clone(), kind, witness: IntervalQ::new(c, e).unwrap() })
}

/// Types of every isolated fixed point and every segment endpoint, left to
/// right.
pub fn classify_all(f: &PLMap) -> Vec<FixedPointType> {
    let fix = fixed_set(f);
    fix.distinguished_points()
        .iter()
        .map(|d| classify_in(f, &fix, d).expect("distinguished points are classifiable"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCase {
    ALessB,
    BLessA,
}

impl BoundaryCase {
    pub fn label(self) -> &'static str {
        match self {
            BoundaryCase::ALessB => "a_less_b",
            BoundaryCase::BLessA => "b_less_a",
        }
    }
}

/// `a = max f⁻¹(0)`, `b = min f⁻¹(1)`, `a_min = min f⁻¹(0)`,
/// `b_max = max f⁻¹(1)`, and in the `b < a` case the point `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryProfile {
    pub a: Rational,
    pub b: Rational,
    pub a_min: Rational,
    pub b_max: Rational,
    pub case: BoundaryCase,
    pub r: Option<Rational>,
}

/// The boundary profile; fails with `RUndefined` when `b < a` and no point
/// qualifies as `r`.
pub fn boundary_profile(f: &PLMap) -> Result<BoundaryProfile> {
    let p = boundary_profile_partial(f)?;
    if p.case == BoundaryCase::BLessA && p.r.is_none() {
        return Err(Error::RUndefined);
    }
    Ok(p)
}

/// Like [`boundary_profile`] but leaves `r` empty instead of failing.
pub fn boundary_profile_partial(f: &PLMap) -> Result<BoundaryProfile> {
    if !f.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let zeros = f.preimage_components(&IntervalQ::point(zero()).unwrap());
    let ones = f.preimage_components(&IntervalQ::point(one()).unwrap());
    let a = zeros.last().unwrap().hi().clone();
    let a_min = zeros.first().unwrap().lo().clone();
    let b = ones.first().unwrap().lo().clone();
    let b_max = ones.last().unwrap().hi().clone();
    let case = if a < b { BoundaryCase::ALessB } else { BoundaryCase::BLessA };
    let r = match case {
        BoundaryCase::ALessB => None,
        BoundaryCase::BLessA => max_low_period_point(f, &a_min, &b_max)?,
    };
    Ok(BoundaryProfile { a, b, a_min, b_max, case, r })
}

/// `max {x in O : f(x) in O, f²(x) = x}` for the open interval `O` between
/// `p` and `q`. `None` when the set is empty or its supremum is not
/// attained.
fn max_low_period_point(f: &PLMap, p: &Rational, q: &Rational) -> Result<Option<Rational>> {
    let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
    let open = |x: &Rational| lo < x && x < hi;
    let excluded = |x: &Rational| !open(x) || !open(&f.at(x));
    let closed = IntervalQ::new(lo.clone(), hi.clone()).unwrap();
    let fix2 = fixed_set(&f.iterate(2)?);

    // Each candidate is a closed interval K; the qualifying set inside K is K
    // minus finitely many excluded points.
    let mut best: Option<(Rational, bool)> = None;
    let mut offer = |k: IntervalQ| {
        let (sup, attained) = if k.is_degenerate() {
            if excluded(k.lo()) {
                return;
            }
            (k.lo().clone(), true)
        } else {
            (k.hi().clone(), !excluded(k.hi()))
        };
        match &best {
            Some((b, _)) if *b > sup => {}
            Some((b, att)) if *b == sup => best = Some((sup, attained || *att)),
            _ => best = Some((sup, attained)),
        }
    };
    for pnt in &fix2.points {
        offer(IntervalQ::point(pnt.clone()).unwrap());
    }
    for seg in &fix2.segments {
        let Some(j) = seg.intersect(&closed) else { continue };
        for piece in f.segments() {
            let dom = IntervalQ::new(piece.x0.clone(), piece.x1.clone()).unwrap();
            let Some(within) = dom.intersect(&j) else { continue };
            let Some((a, b)) = piece.preimage(&closed) else { continue };
            let Some(k) = IntervalQ::new(a, b).unwrap().intersect(&within) else { continue };
            offer(k);
        }
    }
    Ok(best.and_then(|(x, attained)| attained.then_some(x)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NestingCheck {
    Ok,
    /// Two 2-cycles `{s, t}`, `{u, v}` with `s < u` that are not nested.
    Violation { s: Rational, t: Rational, u: Rational, v: Rational },
}

pub fn check_2cycle_nesting(f: &PLMap) -> Result<NestingCheck> {
    let cycles = two_cycles(f)?.representative_cycles(f);
    Ok(first_nesting_violation(&cycles))
}

pub(crate) fn first_nesting_violation(cycles: &[TwoCycle]) -> NestingCheck {
    for (i, c1) in cycles.iter().enumerate() {
        for c2 in &cycles[i + 1..] {
            let (outer, inner) = if c1.s <= c2.s { (c1, c2) } else { (c2, c1) };
            if outer.s == inner.s {
                continue;
            }
            if !(inner.t < outer.t) {
                return NestingCheck::Violation {
                    s: outer.s.clone(),
                    t: outer.t.clone(),
                    u: inner.s.clone(),
                    v: inner.t.clone(),
                };
            }
        }
    }
    NestingCheck::Ok
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OntoCheck {
    Ok,
    /// Two almost disjoint intervals, each mapped onto the target.
    SecondComponent(IntervalQ, IntervalQ),
}

/// Closures of the components of `f⁻¹(int I)` whose image is all of
/// `int I`, left to right.
///
/// Such a component runs between a preimage of one endpoint of `I` and a
/// preimage of the other without meeting either in between.
pub fn onto_crossings(f: &PLMap, target: &IntervalQ) -> Vec<IntervalQ> {
    if target.is_degenerate() {
        return Vec::new();
    }
    let d = target.lo().clone();
    let e = target.hi().clone();
    let mut hits: Vec<(IntervalQ, bool)> = Vec::new();
    for h in f.preimage_components(&IntervalQ::point(d).unwrap()) {
        hits.push((h, false));
    }
    for h in f.preimage_components(&IntervalQ::point(e).unwrap()) {
        hits.push((h, true));
    }
    hits.sort_by(|x, y| x.0.cmp(&y.0));
    let mut out = Vec::new();
    for w in hits.windows(2) {
        let (h0, top0) = &w[0];
        let (h1, top1) = &w[1];
        if top0 == top1 || h0.hi() >= h1.lo() {
            continue;
        }
        let gap = IntervalQ::new(h0.hi().clone(), h1.lo().clone()).unwrap();
        // Between consecutive hits f stays on one side of the target or
        // strictly inside it; only the inside case is a crossing.
        if target.contains_interior(&f.at(&gap.midpoint())) {
            out.push(gap);
        }
    }
    out
}

pub fn unique_onto_component(f: &PLMap, target: &IntervalQ) -> OntoCheck {
    let crossings = onto_crossings(f, target);
    if crossings.len() >= 2 {
        OntoCheck::SecondComponent(crossings[0].clone(), crossings[1].clone())
    } else {
        OntoCheck::Ok
    }
}
