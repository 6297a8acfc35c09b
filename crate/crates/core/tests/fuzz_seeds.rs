//! Replays the checked-in fuzz corpora through the round-trip properties
//! the fuzz targets assert, so they run on the stable toolchain.

use std::fs;
use std::path::PathBuf;

use piradical::factored::FactoredInteger;
use piradical::groupspec::{parse_spec, write_spec};
use piradical::perm::parse_cycles;
use piradical::primeset::PrimeSet;
use piradical::search::Certificate;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(bytes: &[u8]) -> &str {
    std::str::from_utf8(bytes).unwrap()
}

#[test]
fn cycle_seeds_round_trip() {
    let mut parsed = 0;
    for (name, data) in seeds("parse_cycles") {
        let (&degree, rest) = data.split_first().unwrap();
        let degree = degree as usize % 33;
        if let Ok(p) = parse_cycles(text(rest), degree) {
            assert_eq!(parse_cycles(&p.to_string(), degree).unwrap(), p, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 4);
}

#[test]
fn prime_set_seeds_round_trip() {
    for (name, data) in seeds("parse_prime_set") {
        let pi: PrimeSet = text(&data).parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(pi.to_string().parse::<PrimeSet>().unwrap(), pi, "{name}");
    }
}

#[test]
fn factored_seeds_round_trip() {
    for (name, data) in seeds("parse_factored") {
        let n: FactoredInteger = text(&data).parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(n.to_string().parse::<FactoredInteger>().unwrap(), n, "{name}");
    }
}

#[test]
fn group_spec_seeds_round_trip() {
    let mut parsed = 0;
    for (name, data) in seeds("parse_group_spec") {
        if let Ok(spec) = parse_spec(text(&data)) {
            assert_eq!(parse_spec(&write_spec(&spec)).unwrap(), spec, "{name}");
            spec.build().unwrap_or_else(|e| panic!("{name}: {e}"));
            parsed += 1;
        }
    }
    assert!(parsed >= 2);
}

#[test]
fn certificate_seeds_round_trip() {
    let mut parsed = 0;
    for (name, data) in seeds("certificate_json") {
        if let Ok(cert) = Certificate::from_json(text(&data)) {
            assert_eq!(Certificate::from_json(&cert.to_json()).unwrap(), cert, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 2);
}
