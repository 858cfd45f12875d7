//! Splitting-sequence certificates: construction, search, replay and
//! transfer between `f` and `f²`.
//!
//! A certificate `(A, B, D, k)` consists of two almost disjoint intervals
//! with `f(A) = f(B)` and a subinterval `D ⊆ A` with `fᵏ(D) = A`. Such a
//! pair generates a splitting sequence of order `k`: the replay in
//! [`verify_certificate`] builds its prefix term by term and checks every
//! defining condition exactly.

use rayon::prelude::*;

use crate::dynamics::period_four_witness;
use crate::error::{Error, Result};
use crate::interval::IntervalQ;
use crate::plmap::{onto_subinterval, onto_subintervals, Direction, PLMap, DEFAULT_BREAKPOINT_CAP};
use crate::rational::{fmt_frac, Rational};

pub const DEFAULT_K_MAX: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    PairOrderK,
    PeriodGt2,
    NestingViolation,
}

impl CertificateKind {
    pub fn label(self) -> &'static str {
        match self {
            CertificateKind::PairOrderK => "pair_order_k",
            CertificateKind::PeriodGt2 => "period_gt2",
            CertificateKind::NestingViolation => "nesting_violation",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "pair_order_k" => Some(CertificateKind::PairOrderK),
            "period_gt2" => Some(CertificateKind::PeriodGt2),
            "nesting_violation" => Some(CertificateKind::NestingViolation),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitCertificate {
    pub kind: CertificateKind,
    pub a: IntervalQ,
    pub b: IntervalQ,
    pub d: IntervalQ,
    pub k: usize,
    pub provenance: Option<String>,
}

impl SplitCertificate {
    fn with_provenance(mut self, kind: CertificateKind, note: String) -> Self {
        self.kind = kind;
        self.provenance = Some(note);
        self
    }
}

/// Terms `T_0 … T_n` of a tight sequence; every term past
/// `degenerate_cutoff` is nondegenerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightPrefix {
    pub terms: Vec<IntervalQ>,
    pub degenerate_cutoff: usize,
}

impl TightPrefix {
    fn from_terms(terms: Vec<IntervalQ>) -> Self {
        let degenerate_cutoff = terms.iter().rposition(|t| t.is_degenerate()).unwrap_or(0);
        Self { terms, degenerate_cutoff }
    }
}

/// A replayed prefix together with its witness intervals `(n, S_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayTrace {
    pub tight: TightPrefix,
    pub witnesses: Vec<(usize, IntervalQ)>,
}

/// Lazily computed iterates `f, f², …` under one breakpoint cap.
pub(crate) struct Iterates<'a> {
    base: &'a PLMap,
    powers: Vec<PLMap>,
    cap: usize,
}

impl<'a> Iterates<'a> {
    pub(crate) fn new(base: &'a PLMap) -> Self {
        Self { base, powers: vec![base.clone()], cap: DEFAULT_BREAKPOINT_CAP }
    }

    pub(crate) fn get(&mut self, k: usize) -> Result<&PLMap> {
        while self.powers.len() < k {
            let next = self.base.compose(self.powers.last().unwrap(), self.cap)?;
            self.powers.push(next);
        }
        Ok(&self.powers[k - 1])
    }
}

fn replay_failure(step: usize, condition: &str) -> Error {
    Error::ReplayFailure { step, condition: condition.to_string() }
}

/// Whether `(A, B)` can carry a certificate at all: both nondegenerate,
/// equal images, at most one common point.
fn is_pair(f: &PLMap, a: &IntervalQ, b: &IntervalQ) -> bool {
    !a.is_degenerate() && !b.is_degenerate() && a.almost_disjoint(b) && f.image(a) == f.image(b)
}

/// Searches `k = 1..=k_max` for `D ⊆ A` with `fᵏ(D) = A`, trying the
/// candidate pairs in order at each `k`.
pub(crate) fn complete_pairs(
    f: &PLMap,
    pairs: &[(IntervalQ, IntervalQ)],
    k_max: usize,
) -> Result<Option<SplitCertificate>> {
    let pairs: Vec<_> = pairs.iter().filter(|(a, b)| is_pair(f, a, b)).collect();
    if pairs.is_empty() {
        return Ok(None);
    }
    let mut iterates = Iterates::new(f);
    for k in 1..=k_max {
        let fk = iterates.get(k)?;
        for (a, b) in &pairs {
            if let Some(d) = onto_subinterval(fk, a, a).filter(|d| !d.is_degenerate()) {
                return Ok(Some(SplitCertificate {
                    kind: CertificateKind::PairOrderK,
                    a: a.clone(),
                    b: b.clone(),
                    d,
                    k,
                    provenance: None,
                }));
            }
        }
    }
    Ok(None)
}

/// Both orientations of each unordered pair, in order.
pub(crate) fn both_orientations(pairs: &[(IntervalQ, IntervalQ)]) -> Vec<(IntervalQ, IntervalQ)> {
    pairs.iter().flat_map(|(x, y)| [(x.clone(), y.clone()), (y.clone(), x.clone())]).collect()
}

/// The lap-pair candidates `(A, B)`: for laps `L₁ ≠ L₂` with overlapping
/// value ranges `V`, the parts of each lap mapping onto `V`. Both
/// orientations are listed; `A` is the interval that must carry `D`.
pub fn lap_pair_candidates(f: &PLMap) -> Vec<(IntervalQ, IntervalQ)> {
    let laps: Vec<_> = f.laps().into_iter().filter(|l| l.direction != Direction::Constant).collect();
    let mut out = Vec::new();
    for i in 0..laps.len() {
        for j in i + 1..laps.len() {
            let (li, lj) = (&laps[i].domain, &laps[j].domain);
            let Some(v) = f.image(li).intersect(&f.image(lj)) else { continue };
            if v.is_degenerate() {
                continue;
            }
            let (Some(ai), Some(aj)) = (onto_subinterval(f, li, &v), onto_subinterval(f, lj, &v)) else {
                continue;
            };
            out.push((ai.clone(), aj.clone()));
            out.push((aj, ai));
        }
    }
    out
}

/// First lap-pair certificate of minimal order `k ≤ k_max`.
pub fn pair_certificate_search(f: &PLMap, k_max: usize) -> Result<Option<SplitCertificate>> {
    if !f.is_surjective() {
        return Err(Error::NotSurjective);
    }
    if k_max == 0 {
        return Err(Error::PreconditionViolated("k_max must be at least 1".into()));
    }
    let candidates: Vec<_> = lap_pair_candidates(f).into_iter().filter(|(a, b)| is_pair(f, a, b)).collect();
    if candidates.is_empty() {
        return Ok(None);
    }
    let mut iterates = Iterates::new(f);
    for k in 1..=k_max {
        let fk = iterates.get(k)?;
        let found = candidates.par_iter().find_map_first(|(a, b)| {
            onto_subinterval(fk, a, a).filter(|d| !d.is_degenerate()).map(|d| SplitCertificate {
                kind: CertificateKind::PairOrderK,
                a: a.clone(),
                b: b.clone(),
                d,
                k,
                provenance: None,
            })
        });
        if let Some(cert) = found {
            check_certificate(f, &cert)?;
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Checks the static certificate conditions (no replay).
pub fn check_certificate(f: &PLMap, cert: &SplitCertificate) -> Result<()> {
    if cert.k == 0 {
        return Err(replay_failure(0, "k >= 1"));
    }
    if cert.a.is_degenerate() || cert.b.is_degenerate() || cert.d.is_degenerate() {
        return Err(replay_failure(0, "A, B, D nondegenerate"));
    }
    if f.image(&cert.a) != f.image(&cert.b) {
        return Err(replay_failure(0, "f(A) = f(B)"));
    }
    if !cert.a.almost_disjoint(&cert.b) {
        return Err(replay_failure(0, "|A ∩ B| <= 1"));
    }
    if !cert.a.contains_interval(&cert.d) {
        return Err(replay_failure(0, "D ⊆ A"));
    }
    if f.iterate(cert.k)?.image(&cert.d) != cert.a {
        return Err(replay_failure(0, "f^k(D) = A"));
    }
    Ok(())
}

/// The three orbit points `xᵢ < xⱼ < xₖ` whose middle image is extreme,
/// chosen by the case analysis on a cycle rotated to start at its minimum.
fn extreme_triple(f: &PLMap, orbit: &[Rational]) -> Option<(Rational, Rational, Rational)> {
    let m = orbit.len();
    let x = |i: usize| &orbit[i % m];
    let (x0, x1, xl, xl2) = (x(0), x(1), x(m - 1), x(m - 2));
    let f1 = f.at(x1);
    let triple = if &f1 > x1 {
        if x1 < xl {
            (x0, x1, xl)
        } else {
            (x0, xl, x1)
        }
    } else if xl < x1 {
        (x0, xl, x1)
    } else if x0 < xl2 && xl2 < x1 {
        (x0, xl2, x1)
    } else if xl < xl2 {
        (x0, xl, xl2)
    } else {
        (x0, xl2, xl)
    };
    let (i, j, k) = (triple.0.clone(), triple.1.clone(), triple.2.clone());
    let (fi, fj, fk) = (f.at(&i), f.at(&j), f.at(&k));
    let extreme = (fj > fi && fj > fk) || (fj < fi && fj < fk);
    (i < j && j < k && extreme).then_some((i, j, k))
}

/// Brute-force fallback for [`extreme_triple`] over all ordered triples.
fn any_extreme_triple(f: &PLMap, orbit: &[Rational]) -> Option<(Rational, Rational, Rational)> {
    let mut sorted = orbit.to_vec();
    sorted.sort();
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            for k in j + 1..sorted.len() {
                let (fi, fj, fk) = (f.at(&sorted[i]), f.at(&sorted[j]), f.at(&sorted[k]));
                if (fj > fi && fj > fk) || (fj < fi && fj < fk) {
                    return Some((sorted[i].clone(), sorted[j].clone(), sorted[k].clone()));
                }
            }
        }
    }
    None
}

/// A certificate built from a periodic orbit of period four, when `f` has
/// points of period greater than two.
pub fn certificate_from_period_gt2(f: &PLMap) -> Result<Option<SplitCertificate>> {
    match period_four_witness(f)? {
        Some(x) => certificate_from_period_orbit(f, x),
        None => Ok(None),
    }
}

/// As [`certificate_from_period_gt2`], starting from a known point `x` of
/// exact period four.
pub fn certificate_from_period_orbit(f: &PLMap, x: Rational) -> Result<Option<SplitCertificate>> {
    let mut orbit = vec![x];
    for _ in 1..4 {
        let next = f.at(orbit.last().unwrap());
        orbit.push(next);
    }
    let start = (0..orbit.len()).min_by(|&i, &j| orbit[i].cmp(&orbit[j])).unwrap();
    orbit.rotate_left(start);
    let triple = extreme_triple(f, &orbit).or_else(|| any_extreme_triple(f, &orbit));
    let orbit_note: Vec<String> = orbit.iter().map(fmt_frac).collect();
    let mut pairs = Vec::new();
    if let Some((xi, xj, xk)) = &triple {
        let (fi, fj, fk) = (f.at(xi), f.at(xj), f.at(xk));
        let left = IntervalQ::hull(xi, xj)?;
        let right = IntervalQ::hull(xj, xk)?;
        // The shorter of the two image intervals sits inside the longer one.
        let v_left = IntervalQ::hull(&fi, &fj)?;
        let v_right = IntervalQ::hull(&fj, &fk)?;
        let v = if v_right.contains_interval(&v_left) { v_left } else { v_right };
        for a in onto_subintervals(f, &left, &v) {
            for b in onto_subintervals(f, &right, &v) {
                pairs.push((a.clone(), b));
            }
        }
    }
    let pairs = both_orientations(&pairs);
    let note = match &triple {
        Some((i, j, k)) => format!(
            "period 4 orbit {}; points {} < {} < {}",
            orbit_note.join(" "),
            fmt_frac(i),
            fmt_frac(j),
            fmt_frac(k)
        ),
        None => format!("period 4 orbit {}", orbit_note.join(" ")),
    };
    let cert = match complete_pairs(f, &pairs, 2 * DEFAULT_K_MAX)? {
        Some(c) => Some(c.with_provenance(CertificateKind::PeriodGt2, note)),
        None => pair_certificate_search(f, DEFAULT_K_MAX)?
            .map(|c| c.with_provenance(CertificateKind::PeriodGt2, format!("{note}; lap-pair fallback"))),
    };
    if let Some(c) = &cert {
        check_certificate(f, c)?;
    }
    Ok(cert)
}

/// An order-2 style certificate from two interleaved or disjoint 2-cycles.
pub fn certificate_from_nesting_violation(
    f: &PLMap,
    s: &Rational,
    t: &Rational,
    u: &Rational,
    v: &Rational,
) -> Result<SplitCertificate> {
    let is_cycle = |p: &Rational, q: &Rational| p < q && &f.at(p) == q && &f.at(q) == p;
    if !is_cycle(s, t) || !is_cycle(u, v) {
        return Err(Error::NotAViolation);
    }
    let ((s, t), (u, v)) = if s <= u { ((s, t), (u, v)) } else { ((u, v), (s, t)) };
    if s == u || v < t {
        return Err(Error::NotAViolation);
    }
    let hull = |p: &Rational, q: &Rational| IntervalQ::hull(p, q);
    let mut pairs = Vec::new();
    let mut push = |carrier_a: IntervalQ, carrier_b: IntervalQ, target: IntervalQ| {
        if let (Some(a), Some(b)) = (onto_subinterval(f, &carrier_a, &target), onto_subinterval(f, &carrier_b, &target)) {
            pairs.push((a, b));
        }
    };
    if u < t {
        // s < u < t < v
        push(hull(s, u)?, hull(u, t)?, hull(t, v)?);
        push(hull(t, v)?, hull(u, t)?, hull(s, u)?);
    } else {
        // s < t < u < v
        push(hull(s, t)?, hull(t, u)?, hull(s, t)?);
        push(hull(u, v)?, hull(t, u)?, hull(u, v)?);
    }
    let pairs = both_orientations(&pairs);
    let note = format!("cycles {{{}, {}}} {{{}, {}}}", fmt_frac(s), fmt_frac(t), fmt_frac(u), fmt_frac(v));
    let cert = complete_pairs(f, &pairs, 2 * DEFAULT_K_MAX)?
        .ok_or_else(|| Error::PreconditionViolated(format!("no pair completes for {note}")))?
        .with_provenance(CertificateKind::NestingViolation, note);
    check_certificate(f, &cert)?;
    Ok(cert)
}

/// Replays the certificate into `n_terms` terms `T_0 … T_{n-1}` and checks
/// every tight-sequence and witness condition exactly.
///
/// `T_0 = f(A)` and `T_1 = A`; each `T_{jk+1}` is the leftmost subinterval of
/// `A` that `fᵏ` maps onto `T_{(j-1)k+1}`, and the terms in between are
/// forward images. Witnesses `S_n ⊆ B` are placed at every `n ≡ 1 (mod k)`.
/// `T_0` may be all of `[0, 1]`; the sequence from `T_1` on is proper.
pub fn verify_certificate(f: &PLMap, cert: &SplitCertificate, n_terms: usize) -> Result<ReplayTrace> {
    let k = cert.k;
    if k == 0 {
        return Err(replay_failure(0, "k >= 1"));
    }
    if n_terms < 2 * k + 1 {
        return Err(Error::PreconditionViolated(format!("need at least {} terms", 2 * k + 1)));
    }
    if cert.a.is_degenerate() || cert.b.is_degenerate() || cert.d.is_degenerate() {
        return Err(replay_failure(0, "A, B, D nondegenerate"));
    }
    if !cert.a.contains_interval(&cert.d) {
        return Err(replay_failure(0, "D ⊆ A"));
    }
    let fk = f.iterate(k)?;
    if fk.image(&cert.d) != cert.a {
        return Err(replay_failure(0, "f^k(D) = A"));
    }
    if f.image(&cert.a) != f.image(&cert.b) {
        return Err(replay_failure(0, "f(A) = f(B)"));
    }

    let mut terms = vec![f.image(&cert.a), cert.a.clone()];
    let mut anchor = cert.a.clone();
    while terms.len() < n_terms {
        let start = terms.len() - 1 + k;
        let next = onto_subinterval(&fk, &cert.a, &anchor)
            .ok_or_else(|| replay_failure(start, "f^k(T) = previous anchor inside A"))?;
        let mut block = vec![next.clone()];
        for _ in 1..k {
            let img = f.image(block.last().unwrap());
            block.push(img);
        }
        block.reverse();
        terms.extend(block);
        anchor = next;
    }
    terms.truncate(n_terms);

    let mut witnesses = Vec::new();
    for n in 1..n_terms {
        if f.image(&terms[n]) != terms[n - 1] {
            return Err(replay_failure(n, "f(T_{n}) = T_{n-1}"));
        }
        if terms[n].is_unit() {
            return Err(replay_failure(n, "T_n proper"));
        }
        if terms[n].is_degenerate() {
            return Err(replay_failure(n, "T_n nondegenerate"));
        }
        if (n - 1) % k != 0 {
            continue;
        }
        let target = f.image(&terms[n]);
        let s = onto_subinterval(f, &cert.b, &target)
            .ok_or_else(|| replay_failure(n, "S_n ⊆ B with f(S_n) = f(T_n)"))?;
        if s.is_degenerate() {
            return Err(replay_failure(n, "S_n nondegenerate"));
        }
        if !terms[n].meets_only_at_endpoints_of(&s) {
            return Err(replay_failure(n, "S_n ∩ T_n ⊆ {l_n, r_n}"));
        }
        witnesses.push((n, s));
    }
    if !cert.a.almost_disjoint(&cert.b) {
        return Err(replay_failure(0, "|A ∩ B| <= 1"));
    }
    Ok(ReplayTrace { tight: TightPrefix::from_terms(terms), witnesses })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferDirection {
    FToF2,
    F2ToF,
}

/// Moves a certificate between `f` and `g = f²`. `f` is always the base
/// map; the certificate must verify for the source side.
pub fn square_transfer(f: &PLMap, cert: &SplitCertificate, direction: TransferDirection) -> Result<SplitCertificate> {
    let g = f.iterate(2)?;
    let n_src = 20.max(2 * cert.k + 1);
    let out = match direction {
        TransferDirection::FToF2 => {
            verify_certificate(f, cert, n_src)?;
            if cert.k.is_multiple_of(2) {
                SplitCertificate { k: cert.k / 2, ..cert.clone() }
            } else {
                // D ⊆ A = fᵏ(D), so some D' ⊆ D has fᵏ(D') = D and f²ᵏ(D') = A.
                let fk = f.iterate(cert.k)?;
                let d2 = onto_subinterval(&fk, &cert.d, &cert.d)
                    .ok_or_else(|| Error::TransferFailed("no D' inside D".into()))?;
                SplitCertificate { d: d2, ..cert.clone() }
            }
        }
        TransferDirection::F2ToF => {
            verify_certificate(&g, cert, n_src)?;
            let lifted = if f.image(&cert.a) == f.image(&cert.b) {
                Some(SplitCertificate { k: 2 * cert.k, ..cert.clone() })
            } else {
                let (fa, fb) = (f.image(&cert.a), f.image(&cert.b));
                let cand = SplitCertificate { a: fa, b: fb, d: f.image(&cert.d), k: 2 * cert.k, ..cert.clone() };
                check_certificate(f, &cand).is_ok().then_some(cand)
            };
            match lifted {
                Some(c) => c,
                None => pair_certificate_search(f, (2 * cert.k).max(DEFAULT_K_MAX))?
                    .ok_or_else(|| Error::TransferFailed("no certificate for f".into()))?,
            }
        }
    };
    let target = match direction {
        TransferDirection::FToF2 => &g,
        TransferDirection::F2ToF => f,
    };
    verify_certificate(target, &out, 20.max(2 * out.k + 1))?;
    Ok(out)
}

/// Finite-depth terms `T_0 … T_{depth-1}` of the sequence generated by the
/// orbit segment `p`, level `m` and interval `I`.
///
/// The component containing `p` is chased down to level `depth - 1` and
/// projected back, so `f(T_{i+1}) = T_i` holds at every step.
pub fn generated_prefix(
    f: &PLMap,
    p: &[Rational],
    m: usize,
    interval: &IntervalQ,
    depth: usize,
) -> Result<TightPrefix> {
    if depth == 0 || m >= depth || p.len() < depth {
        return Err(Error::PreconditionViolated("need depth > m and an orbit of length >= depth".into()));
    }
    for i in 0..depth - 1 {
        if f.eval(&p[i + 1])? != p[i] {
            return Err(Error::NotAnOrbit { index: i });
        }
    }
    if interval.is_degenerate() || !interval.contains_interior(&p[m]) {
        return Err(Error::PNotInterior);
    }
    let mut current = interval.clone();
    for point in &p[m + 1..depth] {
        current = f
            .preimage_components(&current)
            .into_iter()
            .find(|c| c.contains(point))
            .expect("p lies in the preimage of the previous component");
    }
    let mut terms = vec![current];
    while terms.len() < depth {
        let img = f.image(terms.last().unwrap());
        terms.push(img);
    }
    terms.reverse();
    Ok(TightPrefix::from_terms(terms))
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
    fn interleaved() -> PLMap {
        map(&[(0, 1, 0, 1), (1, 10, 2, 5), (3, 10, 4, 5), (2, 5, 1, 10), (4, 5, 3, 10), (1, 1, 1, 1)])
    }
    fn cert(a: IntervalQ, b: IntervalQ, d: IntervalQ, k: usize) -> SplitCertificate {
        SplitCertificate { kind: CertificateKind::PairOrderK, a, b, d, k, provenance: None }
    }

    #[test]
    fn tent_figure_certificate_verifies() {
        let c = cert(iv(q(9, 16), q(7, 8)), iv(q(1, 8), q(7, 16)), iv(q(9, 16), q(23, 32)), 1);
        check_certificate(&tent(), &c).unwrap();
        let trace = verify_certificate(&tent(), &c, 21).unwrap();
        assert_eq!(trace.tight.terms.len(), 21);
        assert_eq!(trace.tight.terms[0], iv(q(1, 4), q(7, 8)));
        assert_eq!(trace.witnesses.len(), 20);
        assert!(trace.witnesses.iter().all(|(_, s)| iv(q(1, 8), q(7, 16)).contains_interval(s)));
    }

    #[test]
    fn search_on_tent_finds_order_one() {
        let c = pair_certificate_search(&tent(), 1).unwrap().unwrap();
        assert_eq!(c.k, 1);
        assert_eq!((c.a.clone(), c.b.clone(), c.d.clone()), (iv(q(0, 1), q(1, 2)), iv(q(1, 2), q(1, 1)), iv(q(0, 1), q(1, 4))));
        let trace = verify_certificate(&tent(), &c, 21).unwrap();
        assert!(trace.witnesses.iter().all(|(_, s)| c.b.contains_interval(s)));
    }

    #[test]
    fn search_on_block_schumann_finds_order_one() {
        let c = pair_certificate_search(&bs_f(), 1).unwrap().unwrap();
        assert_eq!(c.a, iv(q(1, 2), q(1, 1)));
        assert_eq!(c.b, iv(q(1, 4), q(1, 2)));
        assert_eq!(c.d, iv(q(1, 2), q(1, 1)));
        assert_eq!(c.k, 1);
        let trace = verify_certificate(&bs_f(), &c, 21).unwrap();
        let indices: Vec<usize> = trace.witnesses.iter().map(|(n, _)| *n).collect();
        assert_eq!(indices, (1..21).collect::<Vec<_>>());
        assert!(trace.witnesses.iter().all(|(_, s)| iv(q(1, 4), q(1, 2)).contains_interval(s)));
    }

    #[test]
    fn search_on_fig2_finds_nothing() {
        assert_eq!(pair_certificate_search(&fig2(), 8).unwrap(), None);
        assert_eq!(pair_certificate_search(&map(&[(0, 1, 0, 1), (1, 1, 1, 2)]), 1), Err(Error::NotSurjective));
    }

    #[test]
    fn tampered_certificate_fails_at_witness_overlap() {
        let good = pair_certificate_search(&bs_f(), 1).unwrap().unwrap();
        let bad = SplitCertificate { b: iv(q(1, 4), q(3, 4)), ..good };
        match verify_certificate(&bs_f(), &bad, 21) {
            Err(Error::ReplayFailure { step: 1, condition }) => assert!(condition.contains("S_n ∩ T_n")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn verify_rejects_static_defects() {
        let good = pair_certificate_search(&bs_f(), 1).unwrap().unwrap();
        let short = verify_certificate(&bs_f(), &good, 2);
        assert!(matches!(short, Err(Error::PreconditionViolated(_))));
        let bad_d = SplitCertificate { d: iv(q(1, 2), q(3, 4)), ..good.clone() };
        assert!(matches!(verify_certificate(&bs_f(), &bad_d, 21), Err(Error::ReplayFailure { step: 0, .. })));
        let bad_b = SplitCertificate { b: iv(q(1, 8), q(1, 4)), ..good };
        assert!(matches!(verify_certificate(&bs_f(), &bad_b, 21), Err(Error::ReplayFailure { step: 0, .. })));
    }

    #[test]
    fn period_certificate_examples() {
        let c = certificate_from_period_gt2(&tent()).unwrap().unwrap();
        assert_eq!(c.kind, CertificateKind::PeriodGt2);
        assert!(c.provenance.as_deref().unwrap().starts_with("period 4 orbit"));
        verify_certificate(&tent(), &c, 20.max(2 * c.k + 1)).unwrap();
        assert_eq!(certificate_from_period_gt2(&fig2()).unwrap(), None);
        assert_eq!(certificate_from_period_gt2(&PLMap::identity()).unwrap(), None);
    }

    #[test]
    fn extreme_triple_follows_the_case_analysis() {
        // Period-4 tent orbit 2/17 -> 4/17 -> 8/17 -> 16/17.
        let orbit = [q(2, 17), q(4, 17), q(8, 17), q(16, 17)];
        assert_eq!(extreme_triple(&tent(), &orbit), Some((q(2, 17), q(4, 17), q(16, 17))));
    }

    #[test]
    fn nesting_certificate_examples() {
        let f = interleaved();
        let c = certificate_from_nesting_violation(&f, &q(1, 10), &q(2, 5), &q(3, 10), &q(4, 5)).unwrap();
        assert_eq!(c.kind, CertificateKind::NestingViolation);
        assert!(c.k <= 2);
        verify_certificate(&f, &c, 20).unwrap();
        // Argument order does not matter.
        let c2 = certificate_from_nesting_violation(&f, &q(3, 10), &q(4, 5), &q(1, 10), &q(2, 5)).unwrap();
        assert_eq!(c, c2);
        assert_eq!(
            certificate_from_nesting_violation(&bs_f(), &q(1, 2), &q(1, 1), &q(5, 8), &q(7, 8)),
            Err(Error::NotAViolation)
        );
        assert_eq!(
            certificate_from_nesting_violation(&bs_f(), &q(1, 2), &q(1, 1), &q(1, 2), &q(1, 1)),
            Err(Error::NotAViolation)
        );
    }

    #[test]
    fn transfer_block_schumann_both_ways() {
        let f = bs_f();
        let g = f.iterate(2).unwrap();
        let c = pair_certificate_search(&f, 1).unwrap().unwrap();
        let up = square_transfer(&f, &c, TransferDirection::FToF2).unwrap();
        assert_eq!((up.a.clone(), up.d.clone(), up.k), (iv(q(1, 2), q(1, 1)), iv(q(1, 2), q(1, 1)), 1));
        assert_eq!(g.image(&up.b), up.a);
        let down = square_transfer(&f, &up, TransferDirection::F2ToF).unwrap();
        verify_certificate(&f, &down, 20).unwrap();
        let cg = pair_certificate_search(&g, 1).unwrap().unwrap();
        let back = square_transfer(&f, &cg, TransferDirection::F2ToF).unwrap();
        verify_certificate(&f, &back, 20).unwrap();
    }

    #[test]
    fn transfer_tent_to_square() {
        let f = tent();
        let c = pair_certificate_search(&f, 1).unwrap().unwrap();
        let up = square_transfer(&f, &c, TransferDirection::FToF2).unwrap();
        verify_certificate(&f.iterate(2).unwrap(), &up, 20).unwrap();
        let down = square_transfer(&f, &up, TransferDirection::F2ToF).unwrap();
        verify_certificate(&f, &down, 20).unwrap();
    }

    #[test]
    fn generated_prefix_examples() {
        let half = vec![q(1, 2); 5];
        let id = generated_prefix(&PLMap::identity(), &half, 0, &iv(q(1, 4), q(3, 4)), 5).unwrap();
        assert!(id.terms.iter().all(|t| *t == iv(q(1, 4), q(3, 4))));

        let fixed = vec![q(5, 6); 5];
        let fp = generated_prefix(&fig2(), &fixed, 0, &iv(q(3, 4), q(11, 12)), 5).unwrap();
        assert!(fp.terms.iter().all(|t| !t.is_degenerate() && t.contains(&q(5, 6))));
        for w in fp.terms.windows(2) {
            assert_eq!(fig2().image(&w[1]), w[0]);
        }

        let orbit = vec![q(2, 5), q(4, 5), q(2, 5), q(4, 5)];
        let tp = generated_prefix(&tent(), &orbit, 0, &iv(q(3, 10), q(1, 2)), 4).unwrap();
        for w in tp.terms.windows(2) {
            assert_eq!(tent().image(&w[1]), w[0]);
        }
        assert!(tp.terms.iter().zip(&orbit).all(|(t, p)| t.contains(p)));

        let not_orbit = vec![q(1, 2), q(1, 3)];
        assert_eq!(
            generated_prefix(&tent(), &not_orbit, 0, &iv(q(1, 4), q(3, 4)), 2),
            Err(Error::NotAnOrbit { index: 0 })
        );
        assert_eq!(
            generated_prefix(&PLMap::identity(), &half, 0, &iv(q(1, 2), q(3, 4)), 5),
            Err(Error::PNotInterior)
        );
    }
}
