#![allow(dead_code)]

use arclimit::rational::q;
use arclimit::PLMap;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_a7c1;

/// A surjective map on a grid of sixteenths with 2 to 8 breakpoints.
pub fn random_surjective(rng: &mut impl Rng) -> PLMap {
    loop {
        let n = rng.gen_range(2..=8usize);
        let mut interior: Vec<i64> = (1..16).collect();
        interior.shuffle(rng);
        let mut xs: Vec<i64> = interior[..n - 2].to_vec();
        xs.push(0);
        xs.push(16);
        xs.sort();
        let mut ys: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=16)).collect();
        let lo = rng.gen_range(0..n);
        let mut hi = rng.gen_range(0..n - 1);
        if hi >= lo {
            hi += 1;
        }
        ys[lo] = 0;
        ys[hi] = 16;
        let pts = xs.iter().zip(&ys).map(|(&x, &y)| (q(x, 16), q(y, 16))).collect();
        if let Ok(f) = PLMap::new(pts) {
            return f;
        }
    }
}

pub fn random_corpus(count: usize) -> Vec<PLMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count).map(|_| random_surjective(&mut rng)).collect()
}

/// Whether some point has exact period `p`, found by following every
/// branch of `f^p` as an affine map `x -> a x + b` on a subinterval,
/// independent of map composition.
pub fn has_exact_period(f: &PLMap, p: usize) -> bool {
    use arclimit::rational::{int, one, zero};
    use arclimit::Rational;

    let bps = f.breakpoints();
    // (lo, hi, a, b, iterates along the way are affine on [lo, hi]).
    let mut branches: Vec<(Rational, Rational, Rational, Rational)> = vec![(zero(), one(), one(), zero())];
    for _ in 0..p {
        let mut next = Vec::new();
        for (lo, hi, a, b) in branches {
            let (ylo, yhi) = {
                let (u, v) = (&a * &lo + &b, &a * &hi + &b);
                if u <= v { (u, v) } else { (v, u) }
            };
            // Cut [lo, hi] where the image crosses a breakpoint of f.
            let mut cuts = vec![lo.clone(), hi.clone()];
            if a != zero() {
                for (u, _) in bps {
                    if u > &ylo && u < &yhi {
                        cuts.push((u - &b) / &a);
                    }
                }
            }
            cuts.sort();
            for w in cuts.windows(2) {
                let (x0, x1) = (&w[0], &w[1]);
                let mid_image = &a * ((x0 + x1) / int(2)) + &b;
                let i = bps.partition_point(|(x, _)| x <= &mid_image).clamp(1, bps.len() - 1) - 1;
                let (sx0, sy0) = &bps[i];
                let (sx1, sy1) = &bps[i + 1];
                let s = (sy1 - sy0) / (sx1 - sx0);
                // f(t) = sy0 + s (t - sx0) with t = a x + b.
                let na = &s * &a;
                let nb = sy0 + &s * (&b - sx0);
                next.push((x0.clone(), x1.clone(), na, nb));
            }
        }
        branches = next;
    }
    let exact = |x: &Rational| {
        let mut y = x.clone();
        for d in 1..p {
            y = f.eval(&y).unwrap();
            if &y == x {
                return d == p;
            }
        }
        f.eval(&y).unwrap() == *x
    };
    for (lo, hi, a, b) in branches {
        if a == one() && b == zero() {
            // f^p is the identity here; each f^d is affine on the branch,
            // so it fixes all of it or at most one point.
            let third = &lo + (&hi - &lo) / int(3);
            let mid = (&lo + &hi) / int(2);
            if exact(&third) || exact(&mid) {
                return true;
            }
        } else if a != one() {
            let x = &b / (one() - &a);
            if x >= lo && x <= hi && exact(&x) {
                return true;
            }
        }
    }
    false
}

pub mod strategies {
    use arclimit::rational::q;
    use arclimit::{IntervalQ, PLMap, Rational};
    use proptest::prelude::*;
    use proptest::sample::subsequence;

    fn grid_map(surjective: bool) -> impl Strategy<Value = PLMap> {
        (2..=8usize)
            .prop_flat_map(move |n| {
                (
                    subsequence((1..16i64).collect::<Vec<_>>(), n - 2),
                    proptest::collection::vec(0..=16i64, n),
                    0..n,
                    0..n - 1,
                )
            })
            .prop_filter_map("degenerate grid", move |(inner, mut ys, lo, hi)| {
                let mut xs = vec![0];
                xs.extend(inner);
                xs.push(16);
                if surjective {
                    let hi = if hi >= lo { hi + 1 } else { hi };
                    ys[lo] = 0;
                    ys[hi] = 16;
                }
                PLMap::new(xs.iter().zip(&ys).map(|(&x, &y)| (q(x, 16), q(y, 16))).collect()).ok()
            })
    }

    /// Surjective maps on a grid of sixteenths with at most 8 breakpoints.
    pub fn surjective_map() -> impl Strategy<Value = PLMap> {
        grid_map(true)
    }

    pub fn any_map() -> impl Strategy<Value = PLMap> {
        grid_map(false)
    }

    pub fn unit_rational() -> impl Strategy<Value = Rational> {
        (1..=96i64).prop_flat_map(|d| (0..=d).prop_map(move |n| q(n, d)))
    }

    pub fn interval() -> impl Strategy<Value = IntervalQ> {
        (unit_rational(), unit_rational()).prop_map(|(a, b)| IntervalQ::hull(&a, &b).unwrap())
    }

    pub fn proper_interval() -> impl Strategy<Value = IntervalQ> {
        interval().prop_filter("degenerate", |i| !i.is_degenerate())
    }
}
