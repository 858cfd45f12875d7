//! Finite-depth pieces of the inverse limit: graph complexes, projections,
//! ε-crookedness and endpoint tests, and a Hausdorff witness for
//! certificates.

use std::cmp::Ordering;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::interval::IntervalQ;
use crate::plmap::{onto_subinterval, PLMap, DEFAULT_BREAKPOINT_CAP};
use crate::rational::{int, one, zero, Rational};
use crate::splitting::{verify_certificate, SplitCertificate};

/// A point `(x_0, …, x_n)` with `f(x_{i+1}) = x_i`.
pub type Tuple = Vec<Rational>;

/// The finite graph complex `G_{0,n}(f)` as polylines parametrised by `x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitComplex {
    pub depth: usize,
    pub polylines: Vec<Vec<Tuple>>,
}

/// `(fⁿ(x), …, f(x), x)`.
pub fn orbit_tuple(f: &PLMap, n: usize, x: &Rational) -> Tuple {
    let mut out = vec![x.clone()];
    for _ in 0..n {
        let next = f.at(out.last().unwrap());
        out.push(next);
    }
    out.reverse();
    out
}

/// Breakpoints of `f, f², …, fⁿ` merged: each coordinate is affine in `x_n`
/// between consecutive values.
fn vertex_grid(f: &PLMap, n: usize) -> Result<Vec<Rational>> {
    let mut xs: Vec<Rational> = f.breakpoints().iter().map(|(x, _)| x.clone()).collect();
    let mut acc = f.clone();
    for _ in 1..n {
        acc = f.compose(&acc, DEFAULT_BREAKPOINT_CAP)?;
        xs.extend(acc.breakpoints().iter().map(|(x, _)| x.clone()));
    }
    xs.sort();
    xs.dedup();
    Ok(xs)
}

fn polyline_over(f: &PLMap, n: usize, grid: &[Rational], span: &IntervalQ) -> Vec<Tuple> {
    let mut xs: Vec<&Rational> = grid.iter().filter(|x| span.contains_interior(x)).collect();
    xs.insert(0, span.lo());
    if !span.is_degenerate() {
        xs.push(span.hi());
    }
    xs.into_iter().map(|x| orbit_tuple(f, n, x)).collect()
}

/// One polyline per lap of `fⁿ`.
pub fn graph_complex(f: &PLMap, n: usize) -> Result<OrbitComplex> {
    if n == 0 {
        return Err(Error::PreconditionViolated("depth must be at least 1".into()));
    }
    let fn_ = f.iterate(n)?;
    let grid = vertex_grid(f, n)?;
    let polylines = fn_.laps().iter().map(|lap| polyline_over(f, n, &grid, &lap.domain)).collect();
    Ok(OrbitComplex { depth: n, polylines })
}

/// Coordinates `axes` of every vertex of `G_{0,n}(f)`.
pub fn project(f: &PLMap, n: usize, axes: &[usize]) -> Result<Vec<Vec<Vec<Rational>>>> {
    if !(2..=3).contains(&axes.len()) || axes.iter().any(|&a| a > n) {
        return Err(Error::BadAxes);
    }
    let complex = graph_complex(f, n)?;
    Ok(complex
        .polylines
        .into_iter()
        .map(|line| line.into_iter().map(|t| axes.iter().map(|&a| t[a].clone()).collect()).collect())
        .collect())
}

/// Inputs to an ε-crookedness test at level `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrookednessQuery {
    pub n: usize,
    pub j_n: IntervalQ,
    pub epsilon: Rational,
    /// Orbit coordinates `p_0, p_1, …`, long enough to reach `p_{n+k}`.
    pub p: Vec<Rational>,
}

/// `x` lies in `J` and is interior relative to `[0, 1]`.
fn relatively_interior(j: &IntervalQ, x: &Rational) -> bool {
    j.contains(x) && (x > j.lo() || j.lo() == &zero()) && (x < j.hi() || j.hi() == &one())
}

fn pieces_within(h: &PLMap, target: &IntervalQ, within: &IntervalQ) -> Vec<IntervalQ> {
    h.preimage_components(target).iter().filter_map(|c| c.intersect(within)).collect()
}

/// Whether `p` separates the point sets `l` and `r` inside an interval.
fn separates(p: &Rational, l: &[IntervalQ], r: &[IntervalQ]) -> bool {
    let side = |set: &[IntervalQ]| -> Option<Ordering> {
        if set.iter().all(|c| c.hi() < p) {
            Some(Ordering::Less)
        } else if set.iter().all(|c| c.lo() > p) {
            Some(Ordering::Greater)
        } else {
            None
        }
    };
    match (side(l), side(r)) {
        (Some(a), Some(b)) => a != b,
        _ => false,
    }
}

/// True iff `p_{n+k}` does not separate the preimages of the two ε-collars
/// of `J_n` under `fᵏ` restricted to `J_{n+k}`.
pub fn epsilon_crooked(f: &PLMap, q: &CrookednessQuery, k: usize, j_nk: &IntervalQ) -> Result<bool> {
    let fk = f.iterate(k)?;
    crooked_with(&fk, q, k, j_nk)
}

fn crooked_with(fk: &PLMap, q: &CrookednessQuery, k: usize, j_nk: &IntervalQ) -> Result<bool> {
    let pre = |m: &str| Err(Error::PreconditionViolated(m.into()));
    let Some(p_nk) = q.p.get(q.n + k) else { return pre("orbit prefix too short") };
    let Some(p_n) = q.p.get(q.n) else { return pre("orbit prefix too short") };
    if q.epsilon <= zero() || &q.epsilon * int(2) >= q.j_n.len() {
        return pre("need 0 < epsilon < |J_n| / 2");
    }
    if !relatively_interior(&q.j_n, p_n) {
        return pre("p_n must be interior to J_n");
    }
    if fk.image(j_nk) != q.j_n || !j_nk.contains(p_nk) {
        return pre("J_{n+k} must map onto J_n and contain p_{n+k}");
    }
    let (a, b) = (q.j_n.lo(), q.j_n.hi());
    let low = IntervalQ::new(a.clone(), a + &q.epsilon)?;
    let high = IntervalQ::new(b - &q.epsilon, b.clone())?;
    let l = pieces_within(fk, &low, j_nk);
    let r = pieces_within(fk, &high, j_nk);
    Ok(!separates(p_nk, &l, &r))
}

/// A level and neighbourhood at which no tested `k` gave crookedness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationWitness {
    pub n: usize,
    pub j_n: IntervalQ,
    /// The last `k` tried and an admissible `J_{n+k}` that was not crooked,
    /// if any admissible one existed.
    pub k: usize,
    pub j_nk: Option<IntervalQ>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndpointVerdict {
    /// Number of `(n, J_n)` pairs that were checked.
    Pass { checked: usize },
    Fail(SeparationWitness),
}

/// Radii `ε, 2ε, 4ε` around `p`, clipped to `[0, 1]`, keeping those wide
/// enough for the query.
pub fn neighbourhood_family(p: &Rational, epsilon: &Rational) -> Vec<IntervalQ> {
    let mut out: Vec<IntervalQ> = Vec::new();
    for m in [1, 2, 4] {
        let r = epsilon * int(m);
        let lo = (p - &r).max(zero());
        let hi = (p + &r).min(one());
        let Ok(j) = IntervalQ::new(lo, hi) else { continue };
        if epsilon * int(2) < j.len() && relatively_interior(&j, p) && !out.contains(&j) {
            out.push(j);
        }
    }
    out
}

/// Finite-depth endpoint test: for every `n < depth` and every `J_n` in the
/// canonical family, some `k ≤ depth` must make every admissible
/// `(J_{n+k}, p_{n+k})` ε-crooked. Needs `p` of length at least `2·depth`.
pub fn endpoint_test(f: &PLMap, p: &[Rational], depth: usize, epsilon: &Rational) -> Result<EndpointVerdict> {
    if depth == 0 {
        return Err(Error::PreconditionViolated("depth must be at least 1".into()));
    }
    if p.len() < 2 * depth {
        return Err(Error::PreconditionViolated(format!("need {} orbit coordinates", 2 * depth)));
    }
    for i in 0..p.len() - 1 {
        if f.eval(&p[i + 1])? != p[i] {
            return Err(Error::NotAnOrbit { index: i });
        }
    }
    let mut powers = vec![f.clone()];
    for _ in 1..depth {
        let next = f.compose(powers.last().unwrap(), DEFAULT_BREAKPOINT_CAP)?;
        powers.push(next);
    }
    let mut checked = 0;
    for n in 0..depth {
        for j_n in neighbourhood_family(&p[n], epsilon) {
            let query = CrookednessQuery { n, j_n: j_n.clone(), epsilon: epsilon.clone(), p: p.to_vec() };
            let mut last = SeparationWitness { n, j_n: j_n.clone(), k: 0, j_nk: None };
            let mut found = false;
            for k in 1..=depth {
                let fk = &powers[k - 1];
                let admissible: Vec<IntervalQ> = fk
                    .preimage_components(&j_n)
                    .into_iter()
                    .filter(|c| c.contains(&p[n + k]) && fk.image(c) == j_n)
                    .collect();
                last = SeparationWitness { n, j_n: j_n.clone(), k, j_nk: None };
                if admissible.is_empty() {
                    continue;
                }
                let mut all = true;
                for c in &admissible {
                    if !crooked_with(fk, &query, k, c)? {
                        last.j_nk = Some(c.clone());
                        all = false;
                        break;
                    }
                }
                if all {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(EndpointVerdict::Fail(last));
            }
            checked += 1;
        }
    }
    Ok(EndpointVerdict::Pass { checked })
}

/// `max_i 2^-i |x_i - y_i|`.
fn weighted_dist(x: &[Rational], y: &[Rational]) -> Rational {
    let mut w = one();
    let mut best = zero();
    for (a, b) in x.iter().zip(y) {
        let d = (a - b).abs() * &w;
        if d > best {
            best = d;
        }
        w /= int(2);
    }
    best
}

/// Exact weighted-max distance from `p` to the segment `[a, b]`.
fn point_segment_dist(p: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    // max_i w_i |p_i - a_i - t (b_i - a_i)| is convex piecewise linear in t;
    // its minimum over [0, 1] sits at an end, a kink or a crossing.
    let n = p.len();
    let mut weights = Vec::with_capacity(n);
    let mut w = one();
    for _ in 0..n {
        weights.push(w.clone());
        w /= int(2);
    }
    // Each term is |c_i + t m_i| with c_i = w_i (a_i - p_i), m_i = w_i (b_i - a_i).
    let c: Vec<Rational> = (0..n).map(|i| (&a[i] - &p[i]) * &weights[i]).collect();
    let m: Vec<Rational> = (0..n).map(|i| (&b[i] - &a[i]) * &weights[i]).collect();
    let value = |t: &Rational| {
        (0..n).map(|i| (&c[i] + t * &m[i]).abs()).max().unwrap_or_else(zero)
    };
    let mut candidates = vec![zero(), one()];
    for i in 0..n {
        if m[i] != zero() {
            candidates.push(-&c[i] / &m[i]);
        }
        for j in i + 1..n {
            for s in [int(1), int(-1)] {
                let denom = &m[i] - &s * &m[j];
                if denom != zero() {
                    candidates.push((&s * &c[j] - &c[i]) / denom);
                }
            }
        }
    }
    candidates
        .into_iter()
        .filter(|t| t >= &zero() && t <= &one())
        .map(|t| value(&t))
        .min()
        .unwrap()
}

/// Lower bound on the weighted-max distance from a box to `p`; used to skip
/// segments that cannot improve the current best.
fn box_dist(p: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    let mut w = one();
    let mut best = zero();
    for i in 0..p.len() {
        let (lo, hi) = if a[i] <= b[i] { (&a[i], &b[i]) } else { (&b[i], &a[i]) };
        let d = if &p[i] < lo { lo - &p[i] } else if &p[i] > hi { &p[i] - hi } else { zero() };
        let d = d * &w;
        if d > best {
            best = d;
        }
        w /= int(2);
    }
    best
}

fn dist_to_polyline(p: &[Rational], line: &[Tuple]) -> Rational {
    if line.len() == 1 {
        return weighted_dist(p, &line[0]);
    }
    let mut best: Option<Rational> = None;
    for w in line.windows(2) {
        if let Some(b) = &best {
            if &box_dist(p, &w[0], &w[1]) >= b {
                continue;
            }
        }
        let d = point_segment_dist(p, &w[0], &w[1]);
        if best.as_ref().is_none_or(|b| &d < b) {
            best = Some(d);
        }
    }
    best.unwrap()
}

/// Vertices of the polyline plus `parts - 1` evenly spaced points inside
/// each segment.
fn refined(line: &[Tuple], parts: i64) -> Vec<Tuple> {
    let mut out = Vec::new();
    for w in line.windows(2) {
        for s in 0..parts {
            let t = Rational::new(s.into(), parts.into());
            out.push(w[0].iter().zip(&w[1]).map(|(x, y)| x + &t * (y - x)).collect());
        }
    }
    out.push(line.last().unwrap().clone());
    out
}

fn directed(from: &[Tuple], to: &[Tuple]) -> Rational {
    refined(from, 4).iter().map(|p| dist_to_polyline(p, to)).max().unwrap_or_else(zero)
}

/// For each witness index `m ≤ n`, the Hausdorff distance at depth `n`
/// between the truncation of `L(σ)` and that of the continuum `Sᵐ` built on
/// the witness `S_m`. Coordinates are weighted `2^-i`; distances are exact
/// from every refined vertex to the opposite polyline.
pub fn hausdorff_witness(f: &PLMap, cert: &SplitCertificate, n: usize) -> Result<Vec<(usize, Rational)>> {
    if n == 0 {
        return Err(Error::PreconditionViolated("depth must be at least 1".into()));
    }
    let trace = verify_certificate(f, cert, (n + 1).max(2 * cert.k + 1))?;
    let grid = vertex_grid(f, n)?;
    let terms = &trace.tight.terms;
    let base = polyline_over(f, n, &grid, &terms[n]);
    let mut out = Vec::new();
    for (m, s_m) in trace.witnesses.iter().filter(|(m, _)| *m <= n) {
        let mut top = s_m.clone();
        for _ in *m..n {
            top = onto_subinterval(f, &IntervalQ::unit(), &top).expect("surjective maps cover every interval");
        }
        let line = polyline_over(f, n, &grid, &top);
        let d = directed(&base, &line).max(directed(&line, &base));
        out.push((*m, d));
    }
    Ok(out)
}
