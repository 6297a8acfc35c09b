#![no_main]
use libfuzzer_sys::fuzz_target;
use piradical::groupspec::{parse_spec, write_spec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_spec(text) {
        assert_eq!(parse_spec(&write_spec(&spec)).unwrap(), spec);
        // Only build small groups so each run stays fast.
        if spec.degree <= 12 {
            let _ = spec.build();
        }
    }
});
