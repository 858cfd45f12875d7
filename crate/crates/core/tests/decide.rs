mod common;

use arclimit::corpus;
use arclimit::decider::{decide, decide_unimodal, is_unimodal, ArcPath};
use arclimit::rational::q;
use arclimit::splitting::{certificate_from_period_gt2, pair_certificate_search, verify_certificate};
use arclimit::{Outcome, PLMap, SplitCertificate};
use common::strategies::surjective_map;
use proptest::prelude::*;

fn replays(f: &PLMap, c: &SplitCertificate) -> bool {
    verify_certificate(f, c, 20.max(2 * c.k + 1)).is_ok()
}

fn all_maps() -> Vec<(String, PLMap)> {
    let mut maps: Vec<(String, PLMap)> = corpus::entries(3).into_iter().map(|e| (e.name, e.map)).collect();
    maps.extend(common::random_corpus(500).into_iter().enumerate().map(|(i, f)| (format!("random {i}"), f)));
    maps
}

#[test]
fn every_returned_certificate_replays() {
    for (name, f) in all_maps() {
        if let Some(c) = pair_certificate_search(&f, 8).unwrap() {
            assert!(replays(&f, &c), "{name}: pair search");
        }
        if let Some(c) = certificate_from_period_gt2(&f).unwrap() {
            assert!(replays(&f, &c), "{name}: period certificate");
        }
        let v = decide(&f, 8, 20).unwrap();
        match v.outcome {
            Outcome::NotArc => assert!(replays(&f, v.certificate.as_ref().unwrap()), "{name}: verdict"),
            _ => assert!(v.certificate.is_none(), "{name}"),
        }
    }
}

#[test]
fn named_corpus_verdicts() {
    for e in corpus::entries(3) {
        let v = decide(&e.map, 8, 20).unwrap();
        if let Some(expected) = e.expected {
            assert_eq!(v.outcome, expected, "{}", e.name);
        }
    }
}

#[test]
fn unimodal_agreement() {
    let mut seen = 0;
    for (name, f) in all_maps().into_iter().filter(|(_, f)| is_unimodal(f)) {
        seen += 1;
        let a = decide(&f, 8, 20).unwrap();
        let b = decide_unimodal(&f).unwrap();
        if a.outcome != Outcome::Undecided && b.outcome != Outcome::Undecided {
            assert_eq!(a.outcome, b.outcome, "{name}");
        }
    }
    assert!(seen > 20, "only {seen} unimodal maps");
}

#[test]
fn fig2_takes_the_unimodal_path() {
    let v = decide(&corpus::fig2(), 8, 20).unwrap();
    assert_eq!(v.proof_record.unwrap().path, Some(ArcPath::Unimodal));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn increasing_maps_are_arcs(mut ys in proptest::collection::vec(1..16i64, 0..6)) {
        ys.sort();
        ys.dedup();
        let n = ys.len() + 1;
        let mut pts = vec![(q(0, 1), q(0, 1))];
        pts.extend(ys.iter().enumerate().map(|(i, &y)| (q(i as i64 + 1, n as i64), q(y, 16))));
        pts.push((q(1, 1), q(1, 1)));
        let f = PLMap::new(pts).unwrap();
        prop_assert_eq!(decide(&f, 8, 20).unwrap().outcome, Outcome::Arc);
    }

    #[test]
    fn decide_is_deterministic(f in surjective_map()) {
        let a = decide(&f, 8, 20).unwrap();
        let b = decide(&f, 8, 20).unwrap();
        prop_assert_eq!(a, b);
    }
}
