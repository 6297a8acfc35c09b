#![no_main]
use libfuzzer_sys::fuzz_target;
use piradical::primeset::PrimeSet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(pi) = text.parse::<PrimeSet>() {
        assert_eq!(pi.to_string().parse::<PrimeSet>().unwrap(), pi);
    }
});
