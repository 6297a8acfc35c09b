#![no_main]
use libfuzzer_sys::fuzz_target;
use piradical::factored::FactoredInteger;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(n) = text.parse::<FactoredInteger>() {
        assert_eq!(n.to_string().parse::<FactoredInteger>().unwrap(), n);
    }
});
