#![no_main]
use libfuzzer_sys::fuzz_target;
use piradical::search::Certificate;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cert) = Certificate::from_json(text) {
        assert_eq!(Certificate::from_json(&cert.to_json()).unwrap(), cert);
    }
});
