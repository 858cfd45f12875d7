//! Built-in example maps.

use crate::decider::Outcome;
use crate::error::{Error, Result};
use crate::plmap::PLMap;
use crate::rational::{int, one, q, zero, Rational};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub map: PLMap,
    /// Known verdict, when there is one to compare against.
    pub expected: Option<Outcome>,
    pub note: &'static str,
}

fn from_pairs(pts: &[(i64, i64, i64, i64)]) -> PLMap {
    PLMap::new(pts.iter().map(|&(a, b, c, d)| (q(a, b), q(c, d))).collect()).expect("corpus maps are valid")
}

pub fn tent() -> PLMap {
    from_pairs(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 0, 1)])
}

pub fn fig2() -> PLMap {
    from_pairs(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 3, 4)])
}

pub fn bs_f() -> PLMap {
    from_pairs(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 1, 2)])
}

pub fn bs_g() -> PLMap {
    bs_f().iterate(2).expect("small square")
}

/// A PL surrogate for the Henderson map: the polygon through `(x, x²)` at
/// the nodes `0, 1/2, …, 1`, with `notches` disjoint v-shaped notches.
///
/// Notch `j` is centred at `c = 1 - 2^-(j+1)` with half-width `2^-(j+3)`,
/// so the notches accumulate toward `(1, 1)`. Its bottom sits `c²/4` below
/// the chord, which keeps the graph strictly under the diagonal on `(0, 1)`.
pub fn henderson_approximant(notches: usize) -> Result<PLMap> {
    if notches == 0 {
        return Err(Error::PreconditionViolated("notches must be at least 1".into()));
    }
    let sq = |x: &Rational| x * x;
    let pow2 = |e: usize| -> Rational { Rational::from_integer(num_bigint::BigInt::from(1u8) << e) };
    let mut points = vec![(zero(), zero()), (q(1, 2), q(1, 4))];
    for j in 1..=notches {
        let c = one() - one() / pow2(j + 1);
        let w = one() / pow2(j + 3);
        let (lo, hi) = (&c - &w, &c + &w);
        let chord = (sq(&lo) + sq(&hi)) / int(2);
        let bottom = chord - sq(&c) / int(4);
        points.push((lo.clone(), sq(&lo)));
        points.push((c, bottom));
        points.push((hi.clone(), sq(&hi)));
    }
    points.push((one(), one()));
    PLMap::new(points)
}

pub const NAMES: [&str; 6] = ["tent", "fig2", "bs_f", "bs_g", "identity", "henderson:<N>"];

/// Resolves a corpus name such as `tent` or `henderson:3`.
pub fn lookup(name: &str) -> Result<PLMap> {
    if let Some(n) = name.strip_prefix("henderson:") {
        let n: usize = n.parse().map_err(|_| Error::PreconditionViolated(format!("bad notch count `{n}`")))?;
        return henderson_approximant(n);
    }
    match name {
        "tent" => Ok(tent()),
        "fig2" => Ok(fig2()),
        "bs_f" => Ok(bs_f()),
        "bs_g" => Ok(bs_g()),
        "identity" => Ok(PLMap::identity()),
        "henderson" => henderson_approximant(3),
        _ => Err(Error::PreconditionViolated(format!("unknown corpus map `{name}`"))),
    }
}

/// The named entries; Henderson approximants at `notches`.
pub fn entries(notches: usize) -> Vec<CorpusEntry> {
    let e = |name: &str, map: PLMap, expected: Option<Outcome>, note| CorpusEntry {
        name: name.to_string(),
        map,
        expected,
        note,
    };
    let mut out = vec![
        e("tent", tent(), Some(Outcome::NotArc), "full tent map"),
        e("fig2", fig2(), Some(Outcome::Arc), "unimodal map with fixed points 0 and 5/6"),
        e("bs_f", bs_f(), Some(Outcome::NotArc), "Block-Schumann map"),
        e("bs_g", bs_g(), Some(Outcome::NotArc), "square of the Block-Schumann map"),
        e("identity", PLMap::identity(), Some(Outcome::Arc), "identity"),
    ];
    if let Ok(h) = henderson_approximant(notches) {
        out.push(e(&format!("henderson:{notches}"), h, None, "finite-notch surrogate of the Henderson map"));
    }
    out
}
