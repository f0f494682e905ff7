//! Replays the checked-in fuzz seeds through the same entry points the fuzz
//! targets exercise, so the seeds stay meaningful without a fuzzing toolchain.

use std::path::PathBuf;

use gabinv_core::curves::{count_points, parse_corpus, CurveModel};
use gabinv_core::literal::{parse_group, parse_orders, parse_prime_power};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(b: &[u8]) -> &str {
    std::str::from_utf8(b).unwrap()
}

#[test]
fn prime_power_seeds() {
    let mut accepted = 0;
    for (_, s) in seeds("prime_power_literal") {
        if let Ok(q) = parse_prime_power(text(&s)) {
            assert_eq!(parse_prime_power(&q.to_string()).unwrap(), q);
            accepted += 1;
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn group_seeds() {
    for (_, s) in seeds("group_literal") {
        if let Ok(g) = parse_group(text(&s)) {
            assert_eq!(parse_group(&g.to_string()).unwrap(), g);
        }
    }
}

#[test]
fn orders_seeds() {
    for (name, s) in seeds("orders_literal") {
        let ok = parse_orders(text(&s)).is_ok();
        assert_eq!(ok, name == "twos" || name == "threes", "{name}");
    }
}

#[test]
fn curve_seeds() {
    for (name, s) in seeds("curve_json") {
        match serde_json::from_slice::<CurveModel>(&s) {
            Ok(c) => {
                let again: CurveModel = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
                assert_eq!(again, c);
                count_points(&c, 1).unwrap();
            }
            Err(_) => assert_eq!(name, "singular.json"),
        }
    }
}

#[test]
fn corpus_seeds() {
    for (name, s) in seeds("corpus_json") {
        assert!(parse_corpus(text(&s)).is_ok(), "{name}");
    }
}
