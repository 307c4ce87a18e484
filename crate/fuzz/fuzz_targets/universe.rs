#![no_main]

use libfuzzer_sys::fuzz_target;
use pirho::resources::parse_universe;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(u) = parse_universe(text) {
        assert!(!u.is_empty());
        assert_eq!(parse_universe(&u.to_string()), Ok(u));
    }
});
