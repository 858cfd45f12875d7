//! Continuous piecewise-linear self-maps of `[0, 1]` with rational
//! breakpoints.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::IntervalQ;
use crate::rational::{one, zero, Rational};

/// Breakpoint cap for [`PLMap::iterate`].
pub const DEFAULT_BREAKPOINT_CAP: usize = 1_000_000;

/// A continuous piecewise-linear map in canonical form: anchored at 0 and 1,
/// strictly increasing abscissae, no collinear interior breakpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PLMap {
    points: Vec<(Rational, Rational)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Increasing,
    Decreasing,
    Constant,
}

/// A maximal piece on which the map is strictly monotone or constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lap {
    pub domain: IntervalQ,
    pub direction: Direction,
}

/// One linear piece `[x0, x1] -> [y0, y1]` of a map.
#[derive(Debug, Clone, Copy)]
pub struct Segment<'a> {
    pub x0: &'a Rational,
    pub y0: &'a Rational,
    pub x1: &'a Rational,
    pub y1: &'a Rational,
}

impl Segment<'_> {
    pub fn slope(&self) -> Rational {
        (self.y1 - self.y0) / (self.x1 - self.x0)
    }

    pub fn direction(&self) -> Direction {
        match self.y1.cmp(self.y0) {
            Ordering::Greater => Direction::Increasing,
            Ordering::Less => Direction::Decreasing,
            Ordering::Equal => Direction::Constant,
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.y0 + (x - self.x0) * self.slope()
    }

    /// The abscissa where the piece takes value `y`. Requires a nonconstant
    /// piece.
    pub fn solve(&self, y: &Rational) -> Rational {
        self.x0 + (y - self.y0) * (self.x1 - self.x0) / (self.y1 - self.y0)
    }

    pub fn value_range(&self) -> (&Rational, &Rational) {
        if self.y0 <= self.y1 {
            (self.y0, self.y1)
        } else {
            (self.y1, self.y0)
        }
    }

    /// `{x in [x0, x1] : f(x) in target}`, if nonempty.
    pub fn preimage(&self, target: &IntervalQ) -> Option<(Rational, Rational)> {
        let (ymin, ymax) = self.value_range();
        if ymax < target.lo() || ymin > target.hi() {
            return None;
        }
        if ymin == ymax {
            return Some((self.x0.clone(), self.x1.clone()));
        }
        let lo_val = ymin.max(target.lo());
        let hi_val = ymax.min(target.hi());
        let a = self.solve(lo_val);
        let b = self.solve(hi_val);
        Some(if a <= b { (a, b) } else { (b, a) })
    }
}

impl PLMap {
    /// Builds a canonical map from breakpoints `(x, y)`.
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyMap);
        }
        if points[0].0 != zero() || points[points.len() - 1].0 != one() {
            return Err(Error::NotAnchored);
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::NotSorted);
        }
        if let Some((_, y)) = points.iter().find(|(_, y)| y < &zero() || y > &one()) {
            return Err(Error::OutOfRange(y.clone()));
        }
        Ok(Self::canonical(points))
    }

    /// Drops interior breakpoints where the slope does not change. The input
    /// must already be sorted and anchored.
    fn canonical(points: Vec<(Rational, Rational)>) -> Self {
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
        for p in points {
            while out.len() >= 2 {
                let (ax, ay) = &out[out.len() - 2];
                let (bx, by) = &out[out.len() - 1];
                // Collinear iff (by - ay)(px - bx) == (py - by)(bx - ax).
                if (by - ay) * (&p.0 - bx) == (&p.1 - by) * (bx - ax) {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        Self { points: out }
    }

    pub fn identity() -> Self {
        Self { points: vec![(zero(), zero()), (one(), one())] }
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment<'_>> + '_ {
        self.points.windows(2).map(|w| Segment {
            x0: &w[0].0,
            y0: &w[0].1,
            x1: &w[1].0,
            y1: &w[1].1,
        })
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if x < &zero() || x > &one() {
            return Err(Error::DomainError(x.clone()));
        }
        Ok(self.at(x))
    }

    /// Evaluation without the domain check; `x` must lie in `[0, 1]`.
    pub(crate) fn at(&self, x: &Rational) -> Rational {
        let i = self.points.partition_point(|(px, _)| px <= x);
        if i == 0 {
            return self.points[0].1.clone();
        }
        let (x0, y0) = &self.points[i - 1];
        if x0 == x || i == self.points.len() {
            return y0.clone();
        }
        let (x1, y1) = &self.points[i];
        y0 + (x - x0) * (y1 - y0) / (x1 - x0)
    }

    /// `self ∘ inner`, exactly. Fails when the result would need more than
    /// `cap` breakpoints.
    pub fn compose(&self, inner: &PLMap, cap: usize) -> Result<PLMap> {
        let outer = &self.points;
        let mut points: Vec<(Rational, Rational)> = Vec::with_capacity(inner.points.len());
        for seg in inner.segments() {
            points.push((seg.x0.clone(), self.at(seg.y0)));
            let (ymin, ymax) = seg.value_range();
            if ymin == ymax {
                continue;
            }
            // Interior crossings of the outer breakpoints; there the outer
            // value is the breakpoint's own ordinate.
            let start = outer.partition_point(|(x, _)| x <= ymin);
            let end = outer.partition_point(|(x, _)| x < ymax);
            if start < end {
                let found = outer[start..end].iter().map(|(u, v)| (seg.solve(u), v.clone()));
                if seg.direction() == Direction::Increasing {
                    points.extend(found);
                } else {
                    let mut found: Vec<_> = found.collect();
                    found.reverse();
                    points.extend(found);
                }
            }
            if points.len() > cap {
                return Err(Error::BudgetExceeded { cap });
            }
        }
        let last = &inner.points[inner.points.len() - 1].1;
        points.push((one(), self.at(last)));
        if points.len() > cap {
            return Err(Error::BudgetExceeded { cap });
        }
        Ok(Self::canonical(points))
    }

    /// The `k`-fold composition, capped at [`DEFAULT_BREAKPOINT_CAP`].
    pub fn iterate(&self, k: usize) -> Result<PLMap> {
        self.iterate_capped(k, DEFAULT_BREAKPOINT_CAP)
    }

    pub fn iterate_capped(&self, k: usize, cap: usize) -> Result<PLMap> {
        if k == 0 {
            return Err(Error::PreconditionViolated("iterate needs k >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = self.compose(&acc, cap)?;
        }
        Ok(acc)
    }

    /// The exact image `f(I)`.
    pub fn image(&self, interval: &IntervalQ) -> IntervalQ {
        let mut lo = self.at(interval.lo());
        let mut hi = lo.clone();
        let mut include = |y: Rational| {
            if y < lo {
                lo = y;
            } else if y > hi {
                hi = y;
            }
        };
        include(self.at(interval.hi()));
        for (x, y) in &self.points {
            if interval.contains_interior(x) {
                include(y.clone());
            }
        }
        IntervalQ::new(lo, hi).expect("image of a subinterval of [0, 1]")
    }

    /// Connected components of `f⁻¹(I)`, left to right.
    pub fn preimage_components(&self, interval: &IntervalQ) -> Vec<IntervalQ> {
        let mut out: Vec<(Rational, Rational)> = Vec::new();
        for seg in self.segments() {
            let Some((a, b)) = seg.preimage(interval) else { continue };
            match out.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => out.push((a, b)),
            }
        }
        out.into_iter()
            .map(|(a, b)| IntervalQ::new(a, b).expect("preimage lies in [0, 1]"))
            .collect()
    }

    /// Maximal strictly monotone or constant pieces, left to right.
    pub fn laps(&self) -> Vec<Lap> {
        let mut laps: Vec<(Rational, Rational, Direction)> = Vec::new();
        for seg in self.segments() {
            let dir = seg.direction();
            match laps.last_mut() {
                Some(last) if last.2 == dir => last.1 = seg.x1.clone(),
                _ => laps.push((seg.x0.clone(), seg.x1.clone(), dir)),
            }
        }
        laps.into_iter()
            .map(|(a, b, direction)| Lap { domain: IntervalQ::new(a, b).unwrap(), direction })
            .collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.image(&IntervalQ::unit()).is_unit()
    }

    /// Exact minimum and maximum of `f` over `I`.
    pub fn min_on(&self, interval: &IntervalQ) -> Rational {
        self.image(interval).lo().clone()
    }

    pub fn max_on(&self, interval: &IntervalQ) -> Rational {
        self.image(interval).hi().clone()
    }

    /// Breakpoint abscissae strictly inside `I`.
    pub fn breakpoints_inside<'a>(
        &'a self,
        interval: &'a IntervalQ,
    ) -> impl Iterator<Item = &'a Rational> + 'a {
        self.points.iter().map(|(x, _)| x).filter(move |x| interval.contains_interior(x))
    }

    /// Largest absolute slope; used to size sampling grids in tests and
    /// rendering.
    pub fn max_abs_slope(&self) -> Rational {
        self.segments().map(|s| s.slope().abs()).max().unwrap_or_else(Rational::zero)
    }
}

/// The largest subinterval of `within` that `h` maps onto `target`, choosing
/// the leftmost candidate. `None` when no subinterval of `within` has image
/// exactly `target`.
pub fn onto_subinterval(h: &PLMap, within: &IntervalQ, target: &IntervalQ) -> Option<IntervalQ> {
    onto_subintervals(h, within, target).into_iter().next()
}

/// All maximal candidates for [`onto_subinterval`], left to right.
pub fn onto_subintervals(h: &PLMap, within: &IntervalQ, target: &IntervalQ) -> Vec<IntervalQ> {
    h.preimage_components(target)
        .into_iter()
        .filter_map(|c| c.intersect(within))
        .filter(|c| &h.image(c) == target)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::iv;
    use crate::rational::q;

    fn map(pts: &[(i64, i64, i64, i64)]) -> PLMap {
        PLMap::new(pts.iter().map(|&(a, b, c, d)| (q(a, b), q(c, d))).collect()).unwrap()
    }

    fn tent() -> PLMap {
        map(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 0, 1)])
    }

    fn bs_f() -> PLMap {
        map(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 1, 2)])
    }

    fn fig2() -> PLMap {
        map(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 3, 4)])
    }

    #[test]
    fn construction_errors() {
        assert_eq!(PLMap::new(vec![]), Err(Error::EmptyMap));
        assert_eq!(PLMap::new(vec![(q(1, 4), q(0, 1)), (q(1, 1), q(1, 1))]), Err(Error::NotAnchored));
        assert_eq!(PLMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(1, 1))]), Err(Error::NotAnchored));
        assert_eq!(
            PLMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(1, 1)), (q(1, 2), q(0, 1)), (q(1, 1), q(1, 1))]),
            Err(Error::NotSorted)
        );
        assert_eq!(
            PLMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 1), q(3, 2))]),
            Err(Error::OutOfRange(q(3, 2)))
        );
    }

    #[test]
    fn canonical_form() {
        assert_eq!(tent().breakpoints().len(), 3);
        assert_eq!(PLMap::identity().breakpoints().len(), 2);
        let kept = map(&[(0, 1, 0, 1), (1, 4, 1, 2), (1, 2, 3, 4), (1, 1, 1, 1)]);
        assert_eq!(kept.breakpoints().len(), 4);
        let merged = map(&[(0, 1, 0, 1), (1, 4, 1, 4), (1, 2, 1, 2), (1, 1, 1, 1)]);
        assert_eq!(merged, PLMap::identity());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(tent().eval(&q(1, 3)).unwrap(), q(2, 3));
        assert_eq!(tent().eval(&q(1, 2)).unwrap(), q(1, 1));
        assert_eq!(fig2().eval(&q(5, 6)).unwrap(), q(5, 6));
        assert_eq!(tent().eval(&q(3, 2)), Err(Error::DomainError(q(3, 2))));
    }

    #[test]
    fn iterate_examples() {
        let t2 = tent().iterate(2).unwrap();
        assert_eq!(t2, map(&[(0, 1, 0, 1), (1, 4, 1, 1), (1, 2, 0, 1), (3, 4, 1, 1), (1, 1, 0, 1)]));
        assert_eq!(tent().iterate(1).unwrap(), tent());
        let g = bs_f().iterate(2).unwrap();
        assert_eq!(g, map(&[(0, 1, 0, 1), (1, 4, 1, 1), (1, 2, 1, 2), (1, 1, 1, 1)]));
        assert!(tent().iterate(0).is_err());
    }

    #[test]
    fn iterate_budget() {
        // tent^k has 2^k + 1 breakpoints.
        assert_eq!(tent().iterate_capped(4, 17).unwrap().breakpoints().len(), 17);
        assert_eq!(tent().iterate_capped(5, 17), Err(Error::BudgetExceeded { cap: 17 }));
    }

    #[test]
    fn image_examples() {
        assert_eq!(tent().image(&iv(q(1, 4), q(7, 8))), iv(q(1, 4), q(1, 1)));
        assert_eq!(PLMap::identity().image(&iv(q(1, 3), q(2, 3))), iv(q(1, 3), q(2, 3)));
        assert_eq!(tent().image(&iv(q(9, 16), q(7, 8))), iv(q(1, 4), q(7, 8)));
    }

    #[test]
    fn preimage_examples() {
        assert_eq!(
            tent().preimage_components(&iv(q(1, 4), q(7, 8))),
            vec![iv(q(1, 8), q(7, 16)), iv(q(9, 16), q(7, 8))]
        );
        assert_eq!(tent().preimage_components(&IntervalQ::unit()), vec![IntervalQ::unit()]);
        assert_eq!(bs_f().preimage_components(&iv(q(1, 2), q(1, 1))), vec![iv(q(1, 4), q(1, 1))]);
        // Outside the range of f.
        let half_map = map(&[(0, 1, 0, 1), (1, 1, 1, 2)]);
        assert!(half_map.preimage_components(&iv(q(3, 4), q(1, 1))).is_empty());
        // Degenerate target.
        assert_eq!(
            tent().preimage_components(&iv(q(1, 1), q(1, 1))),
            vec![iv(q(1, 2), q(1, 2))]
        );
    }

    #[test]
    fn laps_examples() {
        assert_eq!(
            tent().laps(),
            vec![
                Lap { domain: iv(q(0, 1), q(1, 2)), direction: Direction::Increasing },
                Lap { domain: iv(q(1, 2), q(1, 1)), direction: Direction::Decreasing },
            ]
        );
        assert_eq!(
            PLMap::identity().laps(),
            vec![Lap { domain: IntervalQ::unit(), direction: Direction::Increasing }]
        );
        let dirs: Vec<_> = bs_f().iterate(2).unwrap().laps().into_iter().map(|l| (l.domain, l.direction)).collect();
        assert_eq!(
            dirs,
            vec![
                (iv(q(0, 1), q(1, 4)), Direction::Increasing),
                (iv(q(1, 4), q(1, 2)), Direction::Decreasing),
                (iv(q(1, 2), q(1, 1)), Direction::Increasing),
            ]
        );
    }

    #[test]
    fn surjectivity() {
        assert!(tent().is_surjective());
        assert!(!map(&[(0, 1, 0, 1), (1, 1, 1, 2)]).is_surjective());
        assert!(fig2().is_surjective());
    }

    #[test]
    fn onto_subinterval_picks_leftmost() {
        let t = tent();
        let got = onto_subinterval(&t, &iv(q(1, 2), q(1, 1)), &iv(q(9, 16), q(7, 8)));
        assert_eq!(got, Some(iv(q(9, 16), q(23, 32))));
        assert_eq!(onto_subinterval(&t, &iv(q(0, 1), q(1, 8)), &iv(q(0, 1), q(1, 1))), None);
    }
}
