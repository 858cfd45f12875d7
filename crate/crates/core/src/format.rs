//! Text formats `plmap v1` and `splitcert v1`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::interval::IntervalQ;
use crate::plmap::PLMap;
use crate::rational::{fmt_frac, parse, Rational};
use crate::splitting::{CertificateKind, SplitCertificate};

pub const PLMAP_HEADER: &str = "plmap v1";
pub const SPLITCERT_HEADER: &str = "splitcert v1";

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn expect_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, header: &str) -> Result<()> {
    match lines.next() {
        Some((_, l)) if l.split_whitespace().collect::<Vec<_>>().join(" ") == header => Ok(()),
        Some((n, l)) => Err(perr(n, format!("expected `{header}`, found `{l}`"))),
        None => Err(perr(1, format!("missing `{header}` header"))),
    }
}

fn rational(line: usize, token: &str) -> Result<Rational> {
    parse(token).ok_or_else(|| perr(line, format!("bad rational `{token}`")))
}

pub fn read_plmap(text: &str) -> Result<PLMap> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, PLMAP_HEADER)?;
    let mut points = Vec::new();
    for (n, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [x, y] = tokens[..] else {
            return Err(perr(n, "expected `<x> <y>`"));
        };
        points.push((rational(n, x)?, rational(n, y)?));
    }
    PLMap::new(points)
}

pub fn write_plmap(f: &PLMap) -> String {
    let mut out = format!("{PLMAP_HEADER}\n");
    for (x, y) in f.breakpoints() {
        writeln!(out, "{} {}", fmt_frac(x), fmt_frac(y)).unwrap();
    }
    out
}

pub fn read_certificate(text: &str) -> Result<SplitCertificate> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, SPLITCERT_HEADER)?;
    let (mut kind, mut k, mut a, mut b, mut d, mut provenance) = (None, None, None, None, None, None);
    for (n, line) in lines {
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let interval = || -> Result<IntervalQ> {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            let [lo, hi] = tokens[..] else {
                return Err(perr(n, format!("expected `{key} <lo> <hi>`")));
            };
            IntervalQ::new(rational(n, lo)?, rational(n, hi)?).map_err(|e| perr(n, e.to_string()))
        };
        let slot_taken = match key {
            "kind" => kind
                .replace(CertificateKind::from_label(rest).ok_or_else(|| perr(n, format!("unknown kind `{rest}`")))?)
                .is_some(),
            "k" => k.replace(rest.parse::<usize>().map_err(|_| perr(n, format!("bad order `{rest}`")))?).is_some(),
            "A" => a.replace(interval()?).is_some(),
            "B" => b.replace(interval()?).is_some(),
            "D" => d.replace(interval()?).is_some(),
            "provenance" => provenance.replace(rest.to_string()).is_some(),
            _ => return Err(perr(n, format!("unknown key `{key}`"))),
        };
        if slot_taken {
            return Err(perr(n, format!("duplicate key `{key}`")));
        }
    }
    let missing = |name: &str| perr(0, format!("missing `{name}` line"));
    Ok(SplitCertificate {
        kind: kind.ok_or_else(|| missing("kind"))?,
        k: k.ok_or_else(|| missing("k"))?,
        a: a.ok_or_else(|| missing("A"))?,
        b: b.ok_or_else(|| missing("B"))?,
        d: d.ok_or_else(|| missing("D"))?,
        provenance,
    })
}

pub fn write_certificate(c: &SplitCertificate) -> String {
    let iv = |i: &IntervalQ| format!("{} {}", fmt_frac(i.lo()), fmt_frac(i.hi()));
    let mut out = format!("{SPLITCERT_HEADER}\nkind {}\nk {}\nA {}\nB {}\nD {}\n", c.kind.label(), c.k, iv(&c.a), iv(&c.b), iv(&c.d));
    if let Some(p) = &c.provenance {
        // Keep the record one line per key.
        writeln!(out, "provenance {}", p.replace(['\n', '\r', '#'], " ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::iv;
    use crate::rational::q;

    #[test]
    fn plmap_round_trip_and_comments() {
        let text = "# tent\nplmap v1\n0/1 0/1\n1/2 1/1  # peak\n\n1/1 0/1\n";
        let f = read_plmap(text).unwrap();
        assert_eq!(write_plmap(&f), "plmap v1\n0/1 0/1\n1/2 1/1\n1/1 0/1\n");
        assert_eq!(read_plmap(&write_plmap(&f)).unwrap(), f);
    }

    #[test]
    fn plmap_errors_carry_line_numbers() {
        assert_eq!(read_plmap("plmap v2\n"), Err(perr(1, "expected `plmap v1`, found `plmap v2`")));
        assert!(matches!(read_plmap("plmap v1\n0/1 0/1\n1/2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(read_plmap("plmap v1\n0 0\n1/2 x\n"), Err(Error::Parse { line: 3, .. })));
        assert_eq!(read_plmap("plmap v1\n0 0\n1/2 1\n"), Err(Error::NotAnchored));
    }

    #[test]
    fn certificate_round_trip() {
        let c = SplitCertificate {
            kind: CertificateKind::PairOrderK,
            a: iv(q(1, 2), q(1, 1)),
            b: iv(q(1, 4), q(1, 2)),
            d: iv(q(1, 2), q(1, 1)),
            k: 1,
            provenance: Some("lap pair".into()),
        };
        let text = write_certificate(&c);
        assert_eq!(text, "splitcert v1\nkind pair_order_k\nk 1\nA 1/2 1/1\nB 1/4 1/2\nD 1/2 1/1\nprovenance lap pair\n");
        assert_eq!(read_certificate(&text).unwrap(), c);
        assert_eq!(write_certificate(&read_certificate(&text).unwrap()), text);
    }

    #[test]
    fn certificate_rejects_malformed() {
        assert!(read_certificate("splitcert v1\nkind pair_order_k\nk 1\nA 1/2 1\nB 1/4 1/2\n").is_err());
        assert!(read_certificate("splitcert v1\nkind nope\n").is_err());
        assert!(read_certificate("splitcert v1\nk 1\nk 2\n").is_err());
        assert!(read_certificate("splitcert v1\nA 1 1/2\n").is_err());
    }
}
