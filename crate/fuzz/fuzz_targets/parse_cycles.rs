#![no_main]
use libfuzzer_sys::fuzz_target;
use piradical::perm::parse_cycles;

fuzz_target!(|data: &[u8]| {
    let Some((&degree, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let degree = degree as usize % 33;
    if let Ok(p) = parse_cycles(text, degree) {
        // Printing and reparsing must give the same permutation.
        assert_eq!(parse_cycles(&p.to_string(), degree).unwrap(), p);
    }
});
